"""Overlap and grouping maps, negators and the implicators they induce.

A connective is either an explicit |L|x|L| table of element indices (finite
carriers) or a numpy-vectorised closed form (the unit interval).  Both answer
``conn(a, b)`` for single elements and ``conn.array(a, b)`` for broadcast
arrays, which is what the validators below use to sweep whole grids at once.

Every validator returns a :class:`ValidationReport`.  Reports keep the
predicate of each checked axiom so a violation can be replayed on its witness.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path

import numpy as np

from .errors import CarrierMismatch, KindMismatch, LatticeFTError, NoClosedForm, ParseError
from .lattice import load_lattice

__all__ = [
    "KINDS",
    "BinaryConnective",
    "Negator",
    "ValidationReport",
    "closed_form",
    "standard_negator",
    "chain_reversal",
    "negator_from_labels",
    "validate_overlap",
    "validate_grouping",
    "validate_negator",
    "derive_residual",
    "derive_coresidual",
    "induced_negator",
    "check_duality",
    "connective_properties",
    "adjointness_check",
    "connective_from_json",
    "load_connective",
    "negator_from_json",
    "load_negator",
    "render",
]

KINDS = ("overlap", "grouping", "residual-implicator", "co-residual-implicator")

# cap on stored witnesses per axiom; the total count is always kept
MAX_WITNESSES = 50


def render(value, lattice):
    """Replace element indices by labels, recursively, for printing and JSON."""
    if isinstance(value, (tuple, list)):
        return [render(v, lattice) for v in value]
    if isinstance(value, bool) or not lattice.is_finite:
        return value
    if isinstance(value, (int, np.integer)):
        return lattice.label(int(value))
    return value


def _py(lattice, value):
    return int(value) if lattice.is_finite else float(value)


class BinaryConnective:
    """A binary operation on a lattice tagged with its role (``kind``)."""

    def __init__(self, lattice, kind, table=None, func=None, name=None):
        if kind not in KINDS:
            raise KindMismatch(f"unknown connective kind {kind!r}")
        self.lattice = lattice
        self.kind = kind
        self.name = name or kind
        self.table = None
        self.func = None
        if lattice.is_finite:
            if table is None:
                raise CarrierMismatch("a finite carrier needs an explicit table")
            table = np.array(table, dtype=np.int64)
            n = len(lattice)
            if table.shape != (n, n):
                raise CarrierMismatch(f"table has shape {table.shape}, expected {(n, n)}")
            if table.min() < 0 or table.max() >= n:
                raise CarrierMismatch("table entry outside the carrier")
            table.setflags(write=False)
            self.table = table
        else:
            if func is None:
                raise CarrierMismatch("the unit interval needs a closed form")
            self.func = func

    def __repr__(self):
        return f"<{self.kind} {self.name} on {self.lattice!r}>"

    def __call__(self, a, b):
        if self.table is not None:
            return int(self.table[a, b])
        return float(self.func(np.float64(a), np.float64(b)))

    def array(self, a, b):
        if self.table is not None:
            return self.table[a, b]
        return np.asarray(self.func(np.asarray(a, dtype=float), np.asarray(b, dtype=float)), dtype=float)

    def to_json(self):
        data = {"kind": self.kind, "name": self.name}
        if self.table is None:
            data["closed_form"] = self.name
            data["lattice"] = "unit"
        else:
            lab = self.lattice.labels
            data["lattice"] = self.lattice.name or self.lattice.to_json(tables=False)
            data["table"] = [[lab[v] for v in row] for row in self.table]
        return data


class Negator:
    """An order-reversing unary map with N(0)=1 and N(1)=0 (checked separately)."""

    def __init__(self, lattice, table=None, func=None, name="N"):
        self.lattice = lattice
        self.name = name
        self.table = None
        self.func = None
        if lattice.is_finite:
            if table is None:
                raise CarrierMismatch("a finite carrier needs an explicit table")
            table = np.array(table, dtype=np.int64)
            if table.shape != (len(lattice),) or table.min() < 0 or table.max() >= len(lattice):
                raise CarrierMismatch("negator table does not fit the carrier")
            table.setflags(write=False)
            self.table = table
        else:
            if func is None:
                raise CarrierMismatch("the unit interval needs a closed form")
            self.func = func

    def __repr__(self):
        return f"<Negator {self.name} on {self.lattice!r}>"

    def __call__(self, a):
        if self.table is not None:
            return int(self.table[a])
        return float(self.func(np.float64(a)))

    def array(self, a):
        if self.table is not None:
            return self.table[a]
        return np.asarray(self.func(np.asarray(a, dtype=float)), dtype=float)

    @cached_property
    def is_involutive(self):
        s = self.lattice.sample()
        return bool(self.lattice.veq(self.array(self.array(s)), s).all())

    def to_json(self):
        if self.table is None:
            return {"closed_form": self.name, "lattice": "unit"}
        lab = self.lattice.labels
        return {
            "name": self.name,
            "lattice": self.lattice.name or self.lattice.to_json(tables=False),
            "table": {lab[i]: lab[v] for i, v in enumerate(self.table)},
        }


@dataclass
class ValidationReport:
    subject: str
    violations: list
    checked_cases: int
    coverage: str = "exhaustive"
    flags: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    total_violations: int = 0
    predicates: dict = field(default_factory=dict, repr=False, compare=False)
    skipped: list = field(default_factory=list)

    @property
    def status(self):
        if self.violations:
            return "failed"
        if self.skipped and not self.checked_cases:
            return "hypothesis-not-met"
        return "passed"

    @property
    def passed(self):
        return self.status == "passed"

    def replay(self, violation):
        """Re-evaluate the axiom of ``violation`` on its witness; True means it holds."""
        axiom, witness = violation
        shape, fn = self.predicates[axiom]
        if shape == "family":
            u, fam = witness
            return bool(np.all(fn(np.asarray(u), tuple(np.asarray(v) for v in fam))))
        return bool(np.all(fn(*(np.asarray(w) for w in witness))))

    def to_json(self, lattice):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "status": self.status,
            "skipped": self.skipped,
            "checked_cases": self.checked_cases,
            "coverage": self.coverage,
            "flags": self.flags,
            "notes": self.notes,
            "total_violations": self.total_violations,
            "violations": [[a, render(w, lattice)] for a, w in self.violations],
        }

    def lines(self, lattice):
        head = {
            "passed": "passed",
            "failed": f"FAILED ({self.total_violations} violations)",
            "hypothesis-not-met": "hypothesis not met, skipped",
        }[self.status]
        out = [f"{self.subject}: {head}; {self.checked_cases} cases, {self.coverage}"]
        for key, value in self.flags.items():
            out.append(f"  {key}: {value}")
        out.extend(f"  note: {n}" for n in self.notes)
        out.extend(f"  skipped: {n}" for n in self.skipped)
        for axiom, witness in self.violations[:10]:
            out.append(f"  violates {axiom} at {render(witness, lattice)}")
        return out


class _Checker:
    """Sweeps predicates over every tuple of sample points and gathers witnesses."""

    def __init__(self, lattice, subject, points=101):
        self.lattice = lattice
        self.subject = subject
        self.sample = lattice.sample(points)
        self.checked = 0
        self.total = 0
        self.found = {}
        self.predicates = {}
        self.partial = False

    def _add(self, axiom, witness):
        self.total += 1
        bucket = self.found.setdefault(axiom, [])
        if len(bucket) < MAX_WITNESSES:
            bucket.append(witness)

    def points(self, axiom, arity, fn):
        self.predicates[axiom] = ("points", fn)
        grids = np.ix_(*[self.sample] * arity)
        ok = np.broadcast_to(np.asarray(fn(*grids), dtype=bool), (len(self.sample),) * arity)
        self.checked += ok.size
        for idx in np.argwhere(~ok):
            self._add(axiom, tuple(_py(self.lattice, self.sample[i]) for i in idx))

    def families(self, axiom, fn):
        self.predicates[axiom] = ("family", fn)
        s = self.sample
        lat = self.lattice
        if lat.is_finite:
            n = len(s)
            if n <= 8:
                fams = [c for k in range(1, n + 1) for c in itertools.combinations(range(n), k)]
            else:
                self.partial = True
                fams = list(itertools.combinations(range(n), 2)) + [tuple(range(n))]
            for fam in fams:
                ok = np.broadcast_to(np.asarray(fn(s, fam), dtype=bool), (n,))
                self.checked += n
                for i in np.flatnonzero(~ok):
                    self._add(axiom, (int(s[i]), fam))
        else:
            ok = np.broadcast_to(
                np.asarray(fn(s[:, None, None], (s[None, :, None], s[None, None, :])), dtype=bool),
                (len(s),) * 3,
            )
            self.checked += ok.size
            for i, j, k in np.argwhere(~ok):
                self._add(axiom, (float(s[i]), (float(s[j]), float(s[k]))))

    def holds(self, arity, fn):
        grids = np.ix_(*[self.sample] * arity)
        return bool(np.all(fn(*grids)))

    def report(self, flags=None, notes=None):
        violations = sorted((a, w) for a, ws in self.found.items() for w in ws)
        if not self.lattice.is_finite:
            coverage = "sampled evidence"
        elif self.partial:
            coverage = "partial"
        else:
            coverage = "exhaustive"
        return ValidationReport(
            self.subject, violations, self.checked, coverage, dict(flags or {}),
            list(notes or []), self.total, self.predicates,
        )


def _require(lattice, *objs):
    for obj in objs:
        if obj is not None and obj.lattice != lattice:
            raise CarrierMismatch(f"{obj!r} does not live on {lattice!r}")


def _require_kind(conn, kind):
    if conn.kind != kind:
        raise KindMismatch(f"expected a {kind}, got a {conn.kind}")


# ---- closed forms -------------------------------------------------------

# closed forms on [0, 1] compare with the carrier's default tolerance, so that
# values like 1 - (1 - 0.9) still count as equal to 0.9
TOL = 1e-9


def _le(u, v):
    return u <= v + TOL


def _goguen(u, v):
    below = _le(u, v)
    return np.where(below, 1.0, v / np.where(below, 1.0, u))


def _dual_goguen(u, v):
    above = _le(v, u)
    return np.where(above, 0.0, (v - u) / np.where(above, 1.0, 1.0 - u))


# name -> (kind, unit form, finite-table builder)
_CLOSED_FORMS = {
    "theta_M": ("overlap", np.minimum, lambda lat: lat.meet_table),
    "eta_M": ("grouping", np.maximum, lambda lat: lat.join_table),
    "product": ("overlap", lambda u, v: u * v, None),
    "probsum": ("grouping", lambda u, v: u + v - u * v, None),
    "goedel": ("residual-implicator", lambda u, v: np.where(_le(u, v), 1.0, v), None),
    "goguen": ("residual-implicator", _goguen, None),
    "dual-goedel": ("co-residual-implicator", lambda u, v: np.where(_le(v, u), 0.0, v), None),
    "dual-goguen": ("co-residual-implicator", _dual_goguen, None),
    "paper-ex22-residual": (
        "residual-implicator",
        lambda u, v: np.where(_le(u, v), 1.0, v),
        lambda lat: np.where(lat.leq, lat.top, np.arange(len(lat))[None, :]),
    ),
    "paper-ex22-coresidual": (
        "co-residual-implicator",
        lambda u, v: np.where(_le(u, v), 0.0, u),
        lambda lat: np.where(lat.leq, lat.bottom, np.arange(len(lat))[:, None]),
    ),
}

_ALIASES = {
    "min": "theta_M", "meet": "theta_M", "θ_M": "theta_M",
    "max": "eta_M", "join": "eta_M", "η_M": "eta_M",
    "godel": "goedel", "gödel": "goedel", "gödel-residual": "goedel",
    "probabilistic-sum": "probsum",
}

_RESIDUAL_OF = {"theta_M": "goedel", "product": "goguen"}
_CORESIDUAL_OF = {"eta_M": "dual-goedel", "probsum": "dual-goguen"}


def closed_form_names():
    return sorted(_CLOSED_FORMS)


def closed_form(name, lattice):
    """Instantiate a named connective on ``lattice``."""
    key = _ALIASES.get(name, name)
    if key not in _CLOSED_FORMS:
        raise NoClosedForm(f"no closed form called {name!r}")
    kind, unit_form, table_of = _CLOSED_FORMS[key]
    if lattice.is_finite:
        if table_of is None:
            raise CarrierMismatch(f"{key!r} is only defined on the unit interval")
        return BinaryConnective(lattice, kind, table=table_of(lattice), name=key)
    return BinaryConnective(lattice, kind, func=unit_form, name=key)


def standard_negator(lattice=None):
    from .lattice import UnitIntervalLattice

    return Negator(lattice or UnitIntervalLattice(), func=lambda u: 1.0 - u, name="standard")


def chain_reversal(lattice):
    """The order-reversing involution i -> n-1-i of a finite chain."""
    if not lattice.is_finite or not lattice.is_chain:
        raise CarrierMismatch("index reversal is only a negator on finite chains")
    order = sorted(lattice.elements, key=lambda e: int(lattice.leq[:, e].sum()))
    table = np.empty(len(order), dtype=np.int64)
    for i, e in enumerate(order):
        table[e] = order[-1 - i]
    return Negator(lattice, table=table, name="reversal")


def negator_from_labels(lattice, mapping, name="N"):
    """Build a finite negator from a ``{label: label}`` mapping."""
    table = [lattice.index(mapping[label]) for label in lattice.labels]
    return Negator(lattice, table=table, name=name)


# ---- axiom validation ---------------------------------------------------

def _connective_axioms(chk, conn, dual):
    lat = conn.lattice
    c = conn.array
    bot, top = lat.bottom, lat.top
    zero_arg, one_arg = (np.logical_and, np.logical_or) if dual else (np.logical_or, np.logical_and)
    chk.points("i", 2, lambda u, v: lat.veq(c(u, v), c(v, u)))
    chk.points("ii", 2, lambda u, v: lat.veq(c(u, v), bot) == zero_arg(lat.veq(u, bot), lat.veq(v, bot)))
    chk.points("iii", 2, lambda u, v: lat.veq(c(u, v), top) == one_arg(lat.veq(u, top), lat.veq(v, top)))
    chk.points("iv", 3, lambda u, v, w: ~lat.vle(v, w) | lat.vle(c(u, v), c(u, w)))
    chk.families(
        "v-join",
        lambda u, fam: lat.veq(c(u, reduce(lat.vjoin, fam)), reduce(lat.vjoin, [c(u, v) for v in fam])),
    )
    chk.families(
        "v-meet",
        lambda v, fam: lat.veq(c(reduce(lat.vmeet, fam), v), reduce(lat.vmeet, [c(u, v) for u in fam])),
    )


def validate_overlap(candidate, lattice, points=101):
    """Check the overlap axioms: symmetry, zero/one conditions, monotonicity, distributivity."""
    _require(lattice, candidate)
    _require_kind(candidate, "overlap")
    chk = _Checker(lattice, f"overlap {candidate.name}", points)
    _connective_axioms(chk, candidate, dual=False)
    return chk.report()


def validate_grouping(candidate, lattice, points=101):
    """Order-dual of :func:`validate_overlap`."""
    _require(lattice, candidate)
    _require_kind(candidate, "grouping")
    chk = _Checker(lattice, f"grouping {candidate.name}", points)
    _connective_axioms(chk, candidate, dual=True)
    return chk.report()


def validate_negator(candidate, lattice, points=101):
    _require(lattice, candidate)
    n = candidate.array
    bot, top = lattice.bottom, lattice.top
    chk = _Checker(lattice, f"negator {candidate.name}", points)
    chk.points("N(0)=1", 1, lambda u: ~lattice.veq(u, bot) | lattice.veq(n(u), top))
    chk.points("N(1)=0", 1, lambda u: ~lattice.veq(u, top) | lattice.veq(n(u), bot))
    chk.points("antitone", 2, lambda u, v: ~lattice.vle(u, v) | lattice.vle(n(v), n(u)))
    flags = {"involutive": chk.holds(1, lambda u: lattice.veq(n(n(u)), u))}
    if lattice.is_chain:
        strict = chk.holds(
            2, lambda u, v: ~(lattice.vle(u, v) & ~lattice.veq(u, v)) | (lattice.vle(n(v), n(u)) & ~lattice.veq(n(u), n(v)))
        )
        if not lattice.is_finite and strict:
            # continuity evidence: no jump larger than a coarse-grid step on a fine grid
            fine = np.linspace(0.0, 1.0, 10001)
            strict = bool(np.abs(np.diff(n(fine))).max() < 0.01)
        flags["strict"] = strict
    else:
        flags["strict"] = "not applicable"
    return chk.report(flags)


# ---- implicators --------------------------------------------------------

def derive_residual(theta, lattice=None):
    """I(u, v) = join of {w : theta(u, w) <= v}."""
    lattice = lattice or theta.lattice
    _require(lattice, theta)
    _require_kind(theta, "overlap")
    if not lattice.is_finite:
        key = _RESIDUAL_OF.get(theta.name)
        if key is None:
            raise NoClosedForm(f"no registered residual for {theta.name!r} on the unit interval")
        return closed_form(key, lattice)
    n = len(lattice)
    # allowed[u, v, w] = theta(u, w) <= v
    allowed = lattice.leq[theta.table[:, None, :], np.arange(n)[None, :, None]]
    table = np.empty((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(n):
            table[u, v] = lattice.join_of(np.flatnonzero(allowed[u, v]), strict=False)
    return BinaryConnective(lattice, "residual-implicator", table=table, name=f"I[{theta.name}]")


def derive_coresidual(eta, lattice=None):
    """I(u, v) = meet of {w : eta(u, w) >= v}."""
    lattice = lattice or eta.lattice
    _require(lattice, eta)
    _require_kind(eta, "grouping")
    if not lattice.is_finite:
        key = _CORESIDUAL_OF.get(eta.name)
        if key is None:
            raise NoClosedForm(f"no registered co-residual for {eta.name!r} on the unit interval")
        return closed_form(key, lattice)
    n = len(lattice)
    allowed = lattice.leq[np.arange(n)[None, :, None], eta.table[:, None, :]]
    table = np.empty((n, n), dtype=np.int64)
    for u in range(n):
        for v in range(n):
            table[u, v] = lattice.meet_of(np.flatnonzero(allowed[u, v]), strict=False)
    return BinaryConnective(lattice, "co-residual-implicator", table=table, name=f"I[{eta.name}]")


def induced_negator(implicator):
    """u -> I(u, 0) for a residual implicator, u -> I(u, 1) for a co-residual one."""
    lat = implicator.lattice
    if implicator.kind == "residual-implicator":
        second = lat.bottom
    elif implicator.kind == "co-residual-implicator":
        second = lat.top
    else:
        raise KindMismatch("induced negators come from implicators")
    name = f"N[{implicator.name}]"
    if lat.is_finite:
        return Negator(lat, table=implicator.table[:, second], name=name)
    return Negator(lat, func=lambda u: implicator.func(u, np.float64(second)), name=name)


def check_duality(theta, eta, negator, lattice, i_theta=None, i_eta=None, points=101):
    """Check that theta/eta (and optionally the implicators) are dual under ``negator``."""
    _require(lattice, theta, eta, negator, i_theta, i_eta)
    n = negator.array
    eq = lattice.veq
    chk = _Checker(lattice, f"duality of {theta.name}/{eta.name} under {negator.name}", points)
    chk.points("eta(N u, N v) = N theta(u, v)", 2, lambda u, v: eq(eta.array(n(u), n(v)), n(theta.array(u, v))))
    chk.points("theta(N u, N v) = N eta(u, v)", 2, lambda u, v: eq(theta.array(n(u), n(v)), n(eta.array(u, v))))
    notes = []
    if i_theta is not None and i_eta is not None:
        if negator.is_involutive:
            chk.points(
                "I_eta(N u, N v) = N I_theta(u, v)", 2,
                lambda u, v: eq(i_eta.array(n(u), n(v)), n(i_theta.array(u, v))),
            )
            chk.points(
                "I_theta(N u, N v) = N I_eta(u, v)", 2,
                lambda u, v: eq(i_theta.array(n(u), n(v)), n(i_eta.array(u, v))),
            )
        else:
            notes.append("implicator clause skipped: negator is not involutive")
    return chk.report({"involutive": negator.is_involutive}, notes)


def connective_properties(conn, lattice=None, points=101):
    """Flags for neutral element, deflation, inflation, exchange (or OP/NP/IP/EP)."""
    lattice = lattice or conn.lattice
    _require(lattice, conn)
    c = conn.array
    eq, le = lattice.veq, lattice.vle
    bot, top = lattice.bottom, lattice.top
    chk = _Checker(lattice, conn.name, points)
    ep = chk.holds(3, lambda u, v, w: eq(c(u, c(v, w)), c(v, c(u, w))))
    if conn.kind in ("overlap", "grouping"):
        unit = top if conn.kind == "overlap" else bot
        shifted = lambda u: c(unit, u)
        if conn.kind == "overlap":
            deflation = chk.holds(1, lambda u: le(shifted(u), u))
            inflation = chk.holds(1, lambda u: le(u, shifted(u)))
        else:
            deflation = chk.holds(1, lambda u: le(u, shifted(u)))
            inflation = chk.holds(1, lambda u: le(shifted(u), u))
        return {
            "has_neutral": chk.holds(1, lambda u: eq(shifted(u), u)),
            "deflation": deflation,
            "inflation": inflation,
            "EP": ep,
        }
    if conn.kind == "residual-implicator":
        return {
            "OP": chk.holds(2, lambda u, v: le(u, v) == eq(c(u, v), top)),
            "NP": chk.holds(1, lambda u: eq(c(top, u), u)),
            "IP": chk.holds(1, lambda u: eq(c(u, u), top)),
            "EP": ep,
        }
    return {
        "OP": chk.holds(2, lambda u, v: le(v, u) == eq(c(u, v), bot)),
        "NP": chk.holds(1, lambda u: eq(c(bot, u), u)),
        "IP": chk.holds(1, lambda u: eq(c(u, u), bot)),
        "EP": ep,
    }


def adjointness_check(conn, implicator, lattice=None, points=101):
    """theta(u,v) <= w iff u <= I(v,w); dually eta(u,v) >= w iff u >= I(v,w)."""
    lattice = lattice or conn.lattice
    _require(lattice, conn, implicator)
    c, i = conn.array, implicator.array
    le = lattice.vle
    chk = _Checker(lattice, f"adjointness of {conn.name} and {implicator.name}", points)
    if conn.kind == "overlap":
        _require_kind(implicator, "residual-implicator")
        lhs = lambda u, v, w: le(c(u, v), w)
        rhs = lambda u, v, w: le(u, i(v, w))
    elif conn.kind == "grouping":
        _require_kind(implicator, "co-residual-implicator")
        lhs = lambda u, v, w: le(w, c(u, v))
        rhs = lambda u, v, w: le(i(v, w), u)
    else:
        raise KindMismatch("adjointness pairs an overlap or grouping map with its implicator")
    chk.points("adj-forward", 3, lambda u, v, w: ~lhs(u, v, w) | rhs(u, v, w))
    chk.points("adj-backward", 3, lambda u, v, w: ~rhs(u, v, w) | lhs(u, v, w))
    return chk.report()


# ---- JSON ---------------------------------------------------------------

def _read_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", source=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source=str(path)) from None


def _lattice_of(data, lattice, source):
    if lattice is not None:
        return lattice
    ref = data.get("lattice")
    if ref is None:
        raise ParseError("no lattice given", source=source)
    if isinstance(ref, dict):
        from .lattice import lattice_from_json

        return lattice_from_json(ref, source)
    return load_lattice(ref)


def connective_from_json(data, lattice=None, source=None):
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("connective JSON needs a 'kind'", source=source)
    lattice = _lattice_of(data, lattice, source) if "table" in data else lattice
    if "closed_form" in data:
        from .lattice import UnitIntervalLattice

        conn = closed_form(data["closed_form"], lattice or UnitIntervalLattice())
        if conn.kind != data["kind"]:
            raise KindMismatch(f"{data['closed_form']!r} is a {conn.kind}, not a {data['kind']}")
        return conn
    if "table" not in data:
        raise ParseError("connective JSON needs 'table' or 'closed_form'", source=source)
    try:
        table = [[lattice.index(v) for v in row] for row in data["table"]]
    except LatticeFTError as exc:
        raise CarrierMismatch(str(exc)) from None
    return BinaryConnective(lattice, data["kind"], table=table, name=data.get("name", Path(source).stem if source else None))


def load_connective(ref, lattice, kind=None):
    """A closed-form name or a path to connective JSON."""
    key = _ALIASES.get(ref, ref)
    if key in _CLOSED_FORMS:
        conn = closed_form(key, lattice)
    else:
        conn = connective_from_json(_read_json(ref), lattice, source=str(ref))
        _require(lattice, conn)
    if kind is not None and conn.kind != kind:
        raise KindMismatch(f"{ref!r} is a {conn.kind}, expected a {kind}")
    return conn


def negator_from_json(data, lattice=None, source=None):
    if not isinstance(data, dict):
        raise ParseError("negator JSON must be an object", source=source)
    if data.get("closed_form") == "standard":
        return standard_negator(lattice)
    lattice = _lattice_of(data, lattice, source)
    table = data.get("table")
    try:
        if isinstance(table, dict):
            return negator_from_labels(lattice, table, name=data.get("name", "N"))
        if isinstance(table, list):
            return Negator(lattice, table=[lattice.index(v) for v in table], name=data.get("name", "N"))
    except (KeyError, LatticeFTError) as exc:
        raise CarrierMismatch(f"negator table does not fit the carrier: {exc}") from None
    raise ParseError("negator JSON needs a 'table'", source=source)


def load_negator(ref, lattice):
    """``standard``, ``reversal`` (finite chains), ``figure1`` (the worked-example involution) or a JSON path."""
    if ref == "standard":
        if lattice.is_finite:
            raise CarrierMismatch("the standard negator lives on the unit interval")
        return standard_negator(lattice)
    if ref == "reversal":
        return chain_reversal(lattice)
    if ref == "figure1":
        from .worked import example_negator

        return example_negator(lattice)
    neg = negator_from_json(_read_json(ref), lattice, source=str(ref))
    _require(lattice, neg)
    return neg
