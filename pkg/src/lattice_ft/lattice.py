"""Finite complete lattices given by a Hasse diagram, plus the real unit interval.

Elements of a :class:`TableLattice` are plain ``int`` indices into the ordered
label list; elements of :class:`UnitIntervalLattice` are floats in [0, 1].
Both carriers expose the same small protocol (``join``, ``meet``, ``le``,
``eq``, ``join_of``, ``meet_of``, ``bottom``, ``top``) so the rest of the
package can fold over either one.
"""
from __future__ import annotations

import json
from functools import cached_property, reduce
from pathlib import Path

import numpy as np

from .errors import CarrierMismatch, CyclicOrder, EmptyFamily, LatticeFTError, NotALattice, ParseError

__all__ = [
    "TableLattice",
    "UnitIntervalLattice",
    "build_table_lattice",
    "figure1_lattice",
    "chain",
    "product_lattice",
    "join_of",
    "meet_of",
    "lattice_from_json",
    "load_lattice",
]


def _transitive_closure(rel):
    closure = rel.copy()
    while True:
        step = closure | ((closure.astype(np.int64) @ closure.astype(np.int64)) > 0)
        if (step == closure).all():
            return closure
        closure = step


def _bound_table(leq, upper, labels):
    """Pairwise least upper (``upper=True``) or greatest lower bounds from ``leq``."""
    n = leq.shape[0]
    order = leq if upper else leq.T
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            bounds = np.flatnonzero(order[a] & order[b])
            best = [c for c in bounds if order[c, bounds].all()]
            if len(best) != 1:
                raise NotALattice((labels[a], labels[b]), "no least upper bound" if upper else "no greatest lower bound")
            table[a, b] = table[b, a] = best[0]
    return table


class TableLattice:
    """A finite lattice stored as an order matrix and join/meet tables.

    Instances are immutable once built; use :func:`build_table_lattice` or
    :meth:`from_leq` rather than calling the constructor with hand-made tables.
    """

    is_finite = True

    def __init__(self, labels, leq, name=None):
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels):
            raise LatticeFTError(f"duplicate labels in {labels!r}")
        if not labels:
            raise LatticeFTError("a lattice needs at least one element")
        leq = np.array(leq, dtype=bool)
        n = len(labels)
        if leq.shape != (n, n):
            raise LatticeFTError(f"order matrix has shape {leq.shape}, expected {(n, n)}")
        if not leq.diagonal().all():
            raise LatticeFTError("order matrix is not reflexive")
        off = leq & leq.T & ~np.eye(n, dtype=bool)
        if off.any():
            i, j = map(int, np.argwhere(off)[0])
            raise CyclicOrder(f"{labels[i]!r} and {labels[j]!r} lie on a cycle")
        if not (_transitive_closure(leq) == leq).all():
            raise LatticeFTError("order matrix is not transitive")
        join = _bound_table(leq, True, labels)
        meet = _bound_table(leq, False, labels)
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise NotALattice((), "no bottom or no top")
        for arr in (leq, join, meet):
            arr.setflags(write=False)
        self.labels = labels
        self.leq = leq
        self.join_table = join
        self.meet_table = meet
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self.name = name
        self._index = {l: i for i, l in enumerate(labels)}

    @classmethod
    def from_leq(cls, labels, leq, name=None):
        return cls(labels, leq, name=name)

    def __repr__(self):
        tag = self.name or "TableLattice"
        return f"<{tag} |L|={len(self)}>"

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, TableLattice)
            and other.labels == self.labels
            and bool((other.leq == self.leq).all())
        )

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    def sample(self, points=None):
        """All elements as an int array (``points`` is ignored for finite carriers)."""
        return np.arange(len(self.labels))

    # vectorised forms over numpy index arrays
    def vjoin(self, a, b):
        return self.join_table[a, b]

    def vmeet(self, a, b):
        return self.meet_table[a, b]

    def vle(self, a, b):
        return self.leq[a, b]

    def veq(self, a, b):
        return np.asarray(a) == np.asarray(b)

    @property
    def elements(self):
        return range(len(self.labels))

    def index(self, label):
        try:
            return self._index[str(label)]
        except KeyError:
            raise LatticeFTError(f"unknown element label {label!r}") from None

    def label(self, element):
        return self.labels[element]

    def check_element(self, element):
        if not isinstance(element, (int, np.integer)) or not 0 <= element < len(self.labels):
            raise CarrierMismatch(f"{element!r} is not an element of {self!r}")
        return int(element)

    def join(self, a, b):
        return int(self.join_table[a, b])

    def meet(self, a, b):
        return int(self.meet_table[a, b])

    def le(self, a, b):
        return bool(self.leq[a, b])

    def eq(self, a, b):
        return a == b

    def join_of(self, items, strict=True):
        items = list(items)
        if not items:
            if strict:
                raise EmptyFamily("join of an empty family")
            return self.bottom
        return reduce(self.join, items)

    def meet_of(self, items, strict=True):
        items = list(items)
        if not items:
            if strict:
                raise EmptyFamily("meet of an empty family")
            return self.top
        return reduce(self.meet, items)

    @cached_property
    def is_chain(self):
        return bool((self.leq | self.leq.T).all())

    def dual(self):
        """The order dual: same labels, reversed order, join and meet swapped."""
        return TableLattice(self.labels, self.leq.T, name=f"dual({self.name or 'L'})")

    def covers(self):
        """Hasse-diagram edges ``(lower, upper)`` as label pairs."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return [(self.labels[i], self.labels[j]) for i, j in np.argwhere(lt & ~between)]

    def to_json(self, tables=True):
        data = {"elements": list(self.labels), "covers": [list(c) for c in self.covers()]}
        if tables:
            lab = self.labels
            data["tables"] = {
                "join": [[lab[v] for v in row] for row in self.join_table],
                "meet": [[lab[v] for v in row] for row in self.meet_table],
                "bottom": lab[self.bottom],
                "top": lab[self.top],
            }
        return data


class UnitIntervalLattice:
    """The real interval [0, 1] with max/min; comparisons use ``epsilon``."""

    is_finite = False
    is_chain = True
    bottom = 0.0
    top = 1.0

    def __init__(self, epsilon=1e-9):
        self.epsilon = float(epsilon)
        self.name = "unit"

    def __repr__(self):
        return f"<UnitIntervalLattice eps={self.epsilon:g}>"

    def __eq__(self, other):
        return isinstance(other, UnitIntervalLattice) and other.epsilon == self.epsilon

    def __hash__(self):
        return hash(("unit", self.epsilon))

    def grid(self, points=101):
        return np.linspace(0.0, 1.0, points)

    def sample(self, points=101):
        return self.grid(101 if points is None else points)

    def vjoin(self, a, b):
        return np.maximum(a, b)

    def vmeet(self, a, b):
        return np.minimum(a, b)

    def vle(self, a, b):
        return np.asarray(a) <= np.asarray(b) + self.epsilon

    def veq(self, a, b):
        return np.abs(np.asarray(a) - np.asarray(b)) <= self.epsilon

    def label(self, element):
        return float(element)

    def index(self, label):
        return self.check_element(float(label))

    def check_element(self, element):
        value = float(element)
        if not -self.epsilon <= value <= 1.0 + self.epsilon:
            raise CarrierMismatch(f"{element!r} lies outside [0, 1]")
        return min(1.0, max(0.0, value))

    def join(self, a, b):
        return max(a, b)

    def meet(self, a, b):
        return min(a, b)

    def le(self, a, b):
        return a <= b + self.epsilon

    def eq(self, a, b):
        return abs(a - b) <= self.epsilon

    def join_of(self, items, strict=True):
        items = list(items)
        if not items:
            if strict:
                raise EmptyFamily("join of an empty family")
            return self.bottom
        return max(items)

    def meet_of(self, items, strict=True):
        items = list(items)
        if not items:
            if strict:
                raise EmptyFamily("meet of an empty family")
            return self.top
        return min(items)


def join_of(lattice, subset, strict=True):
    return lattice.join_of(subset, strict=strict)


def meet_of(lattice, subset, strict=True):
    return lattice.meet_of(subset, strict=strict)


def build_table_lattice(labels, covers, name=None):
    """Build a lattice from element labels and Hasse-diagram cover pairs.

    ``covers`` holds ``(lower, upper)`` label pairs; their reflexive-transitive
    closure is the order. Raises :class:`CyclicOrder` if the pairs contain a
    cycle and :class:`NotALattice` if some pair lacks a unique join or meet.
    """
    labels = [str(l) for l in labels]
    if len(set(labels)) != len(labels):
        raise LatticeFTError(f"duplicate labels in {labels!r}")
    index = {l: i for i, l in enumerate(labels)}
    n = len(labels)
    rel = np.eye(n, dtype=bool)
    for pair in covers:
        lo, hi = (str(p) for p in pair)
        if lo not in index or hi not in index:
            raise LatticeFTError(f"cover {pair!r} refers to an unknown label")
        if lo == hi:
            raise CyclicOrder(f"self-cover on {lo!r}")
        rel[index[lo], index[hi]] = True
    return TableLattice(labels, _transitive_closure(rel), name=name)


def figure1_lattice():
    """The eight-element lattice 0 < p < {q, r} < s < u < 1 with r < t < u."""
    labels = ["0", "p", "q", "r", "s", "t", "u", "1"]
    covers = [
        ("0", "p"), ("p", "q"), ("p", "r"), ("q", "s"), ("r", "s"),
        ("r", "t"), ("s", "u"), ("t", "u"), ("u", "1"),
    ]
    return build_table_lattice(labels, covers, name="figure1")


def chain(n):
    """The n-element chain with labels ``"0" .. str(n-1)``."""
    if n < 1:
        raise LatticeFTError("a chain needs at least one element")
    labels = [str(i) for i in range(n)]
    return build_table_lattice(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)], name=f"chain{n}")


def product_lattice(first, second):
    labels = [f"({a},{b})" for a in first.labels for b in second.labels]
    leq = np.kron(first.leq.astype(np.int64), second.leq.astype(np.int64)).astype(bool)
    return TableLattice(labels, leq, name=f"{first.name}x{second.name}")


def lattice_from_json(data, source=None):
    if not isinstance(data, dict) or "elements" not in data:
        raise ParseError("lattice JSON needs an 'elements' list", source=source)
    return build_table_lattice(data["elements"], data.get("covers", []), name=data.get("name"))


def load_lattice(ref):
    """Resolve a lattice reference: ``figure1``, ``chainN``, ``unit``, ``2x2`` or a JSON path."""
    ref = str(ref)
    if ref == "figure1":
        return figure1_lattice()
    if ref == "unit":
        return UnitIntervalLattice()
    if ref == "2x2":
        return product_lattice(chain(2), chain(2))
    if ref.startswith("chain") and ref[5:].lstrip(":").isdigit():
        return chain(int(ref[5:].lstrip(":")))
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read lattice file: {exc}", source=ref) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source=ref) from None
    return lattice_from_json(data, source=ref)
