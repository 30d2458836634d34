"""Exception hierarchy shared by every module of the package."""


class LatticeFTError(Exception):
    """Base class for all package errors."""


class NotALattice(LatticeFTError):
    def __init__(self, pair, reason="no unique bound"):
        self.pair = pair
        super().__init__(f"pair {pair!r} has {reason}")


class CyclicOrder(LatticeFTError):
    pass


class EmptyFamily(LatticeFTError):
    pass


class CarrierMismatch(LatticeFTError):
    pass


class KindMismatch(LatticeFTError):
    pass


class MissingNegator(LatticeFTError):
    pass


class NoClosedForm(LatticeFTError):
    pass


class UnknownPoint(LatticeFTError):
    pass


class NotNormal(LatticeFTError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"member {label!r} has an empty core")


class CoresOverlap(LatticeFTError):
    def __init__(self, point, first, second):
        self.point, self.first, self.second = point, first, second
        super().__init__(f"point {point!r} lies in the cores of {first!r} and {second!r}")


class CoresDontCover(LatticeFTError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"point {point!r} lies in no core")


class BlocksInvalid(LatticeFTError):
    pass


class ExtractionNotPartition(LatticeFTError):
    pass


class UnknownLaw(LatticeFTError):
    pass


class ParseError(LatticeFTError):
    def __init__(self, message, line=None, column=None, source=None):
        self.line, self.column, self.source = line, column, source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:{column or 0}: "
        elif where:
            where += " "
        super().__init__(where + message)


class UnsupportedFormat(LatticeFTError):
    pass
