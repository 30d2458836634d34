"""A registry of named algebraic laws and a harness that checks them.

Every law is a function of a :class:`LawContext` (lattice, connectives,
negator, partition, enumeration budget, seed).  A law first states its
hypotheses; if any fails the law (or the affected clause) is skipped rather
than failed.  Clauses are vectorised predicates over tuples drawn from two
pools: the lattice elements and the enumerated fuzzy sets on the universe.
Small tuple spaces are checked exhaustively, large ones on a seeded sample.

Law ids follow the numbering of the theory being checked (``L`` lemmas,
``D`` the co-residual property list, ``P`` propositions, ``C`` corollaries,
``S5.dec`` the singleton decomposition); they are identifiers only.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .connectives import (
    connective_properties,
    derive_coresidual,
    derive_residual,
    induced_negator,
    render,
    validate_negator,
)
from .enumeration import UNIT_LEVELS, enumerate_fuzzy_sets, fuzzy_set_matrix
from .errors import CarrierMismatch, LatticeFTError, UnknownLaw
from .partitions import LFuzzySet, Universe, validate_partition
from .systems import (
    check_system_duality,
    partition_from_system,
    singleton_decomposition_check,
    system_from_partition,
    validate_system,
)
from .transforms import fold

__all__ = [
    "LawContext",
    "LawReport",
    "LAWS",
    "law_ids",
    "run_law",
    "run_suite",
    "suite_json",
    "suite_table",
    "enumerate_fuzzy_sets",
    "comparison_partitions",
]

# tuple spaces up to this size are enumerated; larger ones are sampled at SAMPLE
EXHAUSTIVE_LIMIT = 1 << 18
SAMPLE = 1 << 16
MAX_WITNESSES = 20
# how many distinct partitions the system-duality converse tries
CONVERSE_VARIANTS = 6

UT, LE, UC, LR = "upper-theta", "lower-eta", "upper-coresidual", "lower-residual"


class LawContext:
    """The structures a law is evaluated on.

    Implicators default to the ones derived from ``theta`` and ``eta``.  The
    universe defaults to the partition's, or three points without one.
    """

    def __init__(self, lattice, theta, eta, negator, i_theta=None, i_eta=None, partition=None,
                 universe=None, budget=4096, seed=0, name=None):
        if budget < 1:
            raise ValueError("budget must be positive")
        self.lattice = lattice
        self.theta = theta
        self.eta = eta
        self.negator = negator
        self.i_theta = i_theta if i_theta is not None else derive_residual(theta)
        self.i_eta = i_eta if i_eta is not None else derive_coresidual(eta)
        self.partition = partition
        self.universe = universe or (partition.universe if partition is not None else Universe.of_size(3))
        self.budget = budget
        self.seed = seed
        self.name = name or "context"
        for obj in (theta, eta, negator, self.i_theta, self.i_eta, partition):
            if obj is not None and obj.lattice != lattice:
                raise CarrierMismatch(f"{obj!r} does not live on {lattice!r}")
        if partition is not None and partition.universe != self.universe:
            raise CarrierMismatch("partition and universe differ")

    @classmethod
    def figure1(cls, literal_coresidual=False, budget=4096, seed=0):
        """The eight-element example: meet/join, its involution and three-member partition."""
        from . import worked

        from .lattice import figure1_lattice

        lat = figure1_lattice()
        conns = worked.example_connectives(lat, literal_coresidual=literal_coresidual)
        return cls(
            lat, conns["theta"], conns["eta"], worked.example_negator(lat), conns["i_theta"], conns["i_eta"],
            worked.example_partition(lat), budget=budget, seed=seed,
            name="figure1" + (" (literal co-residual)" if literal_coresidual else ""),
        )

    # ---- elementwise operations ------------------------------------------
    def th(self, a, b):
        return self.theta.array(a, b)

    def et(self, a, b):
        return self.eta.array(a, b)

    def it(self, a, b):
        return self.i_theta.array(a, b)

    def ie(self, a, b):
        return self.i_eta.array(a, b)

    def n(self, a):
        return self.negator.array(a)

    def le(self, a, b):
        return self.lattice.vle(a, b)

    def eq(self, a, b):
        return self.lattice.veq(a, b)

    def join(self, a, b):
        return self.lattice.vjoin(a, b)

    def meet(self, a, b):
        return self.lattice.vmeet(a, b)

    def fold(self, values, axis, use_join):
        return fold(self.lattice, values, axis, use_join)

    @property
    def top(self):
        return self.lattice.top

    @property
    def bottom(self):
        return self.lattice.bottom

    # ---- pools -----------------------------------------------------------
    @cached_property
    def elements(self):
        return self.lattice.sample(UNIT_LEVELS)

    @cached_property
    def _fuzzy(self):
        return fuzzy_set_matrix(self.lattice, len(self.universe), self.budget, self.seed)

    @property
    def fuzzy_sets(self):
        return self._fuzzy[0]

    @property
    def fuzzy_exhaustive(self):
        return self._fuzzy[1]

    def product(self, *pools):
        """Arrays of tuples drawn from ``pools``; all of them, or a seeded sample."""
        sizes = [len(p) for p in pools]
        total = int(np.prod(sizes, dtype=object)) if pools else 1
        if total <= EXHAUSTIVE_LIMIT:
            idx = np.indices(sizes).reshape(len(sizes), -1) if pools else np.zeros((0, 1), dtype=np.int64)
            exhaustive = True
        else:
            rng = np.random.default_rng(self.seed)
            idx = np.stack([rng.integers(0, s, size=SAMPLE) for s in sizes])
            exhaustive = False
        return [p[i] for p, i in zip(pools, idx)], max(1, idx.shape[1]), exhaustive

    # ---- transforms over batches -------------------------------------------
    @property
    def members(self):
        return self.partition.matrix

    def direct(self, kind, f, members=None):
        """Components of a batch ``f[..., x]`` as ``[..., j]``."""
        a = self.members if members is None else members
        f = np.asarray(f)[..., None, :]
        if kind == UT:
            return self.fold(self.th(a, f), -1, True)
        if kind == LE:
            return self.fold(self.et(self.n(a), f), -1, False)
        if kind == UC:
            return self.fold(self.ie(self.n(a), f), -1, True)
        return self.fold(self.it(a, f), -1, False)

    def inverse(self, kind, comps, members=None):
        """Reconstruction ``[..., x]`` from components ``[..., j]`` of a direct ``kind``."""
        a = self.members if members is None else members
        c = np.asarray(comps)[..., :, None]
        if kind == UT:
            return self.fold(self.it(a, c), -2, False)
        if kind == LR:
            return self.fold(self.th(a, c), -2, True)
        if kind == UC:
            return self.fold(self.et(self.n(a), c), -2, False)
        return self.fold(self.ie(self.n(a), c), -2, True)

    def const(self, u):
        u = np.asarray(u)
        return np.broadcast_to(u[..., None], u.shape + (len(self.universe),))

    # ---- cached hypothesis predicates -------------------------------------
    @cached_property
    def props(self):
        return {
            "theta": connective_properties(self.theta),
            "eta": connective_properties(self.eta),
            "i_theta": connective_properties(self.i_theta),
            "i_eta": connective_properties(self.i_eta),
        }

    @cached_property
    def negator_flags(self):
        return validate_negator(self.negator, self.lattice).flags

    @property
    def involutive(self):
        return self.negator.is_involutive

    @cached_property
    def n_theta(self):
        return induced_negator(self.i_theta)

    @cached_property
    def n_eta(self):
        return induced_negator(self.i_eta)

    def _all_pairs(self, fn):
        e = self.elements
        return bool(np.all(fn(e[:, None], e[None, :])))

    @cached_property
    def connectives_dual(self):
        n = self.n
        return self._all_pairs(
            lambda u, v: self.eq(self.et(n(u), n(v)), n(self.th(u, v))) & self.eq(self.th(n(u), n(v)), n(self.et(u, v)))
        )

    @cached_property
    def implicators_dual(self):
        n = self.n
        return self._all_pairs(
            lambda u, v: self.eq(self.ie(n(u), n(v)), n(self.it(u, v))) & self.eq(self.it(n(u), n(v)), n(self.ie(u, v)))
        )

    @cached_property
    def double_residuation(self):
        """meet over v of I_theta(I_theta(u, v), v) equals u, for every u."""
        e = self.elements
        inner = self.it(self.it(e[:, None], e[None, :]), e[None, :])
        return bool(np.all(self.eq(self.fold(inner, 1, False), e)))

    @cached_property
    def variants(self):
        return comparison_partitions(self.partition) if self.partition is not None else []


def comparison_partitions(partition):
    """Partitions B with B >= A pointwise, each raising one off-core value of A.

    The raised value is any element strictly above the old one and below top,
    so the cores (and the index map) are unchanged.
    """
    lat = partition.lattice
    levels = lat.sample(UNIT_LEVELS)
    out = []
    base = partition.matrix
    for j in range(base.shape[0]):
        for x in range(base.shape[1]):
            old = base[j, x]
            if lat.eq(old, lat.top):
                continue
            for c in levels:
                if lat.le(old, c) and not lat.eq(old, c) and not lat.eq(c, lat.top):
                    m = base.copy()
                    m[j, x] = c
                    members = {
                        lab: LFuzzySet(partition.universe, lat, tuple(row.tolist()))
                        for lab, row in zip(partition.labels, m)
                    }
                    out.append(validate_partition(members))
    return out


@dataclass
class LawReport:
    id: str
    anchor: str
    status: str
    cases: int
    coverage: str
    violations: list = field(default_factory=list)
    unmet: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    total_violations: int = 0
    predicates: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def witness(self):
        return self.violations[0] if self.violations else None

    def replay(self, violation=None):
        """Re-evaluate a violated clause on its witness; True means the clause holds."""
        clause, args = violation or self.witness
        return bool(self.predicates[clause](*args))

    def to_json(self, lattice):
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "cases": self.cases,
            "coverage": self.coverage,
            "total_violations": self.total_violations,
            "violations": [[c, _show(w, lattice)] for c, w in self.violations],
            "unmet": self.unmet,
            "notes": self.notes,
        }


def _show(value, lattice):
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, (tuple, list)):
        return [_show(v, lattice) for v in value]
    return render(value, lattice)


class _Run:
    """Accumulates cases, witnesses and unmet hypotheses for one law."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.cases = 0
        self.total = 0
        self.found = []
        self.predicates = {}
        self.unmet = []
        self.notes = []
        self.exhaustive = True

    def need(self, description, flag, clause=None):
        if not flag:
            self.unmet.append(f"{clause}: {description}" if clause else description)
        return bool(flag)

    def needs(self, clause, *pairs):
        ok = True
        for description, flag in pairs:
            ok = self.need(description, flag, clause) and ok
        return ok

    def _witness(self, clause, args):
        self.total += 1
        if len(self.found) < MAX_WITNESSES:
            self.found.append((clause, args))

    def check(self, clause, pools, pred):
        """Evaluate ``pred`` on tuples from ``pools``; it returns a bool per case."""
        args, count, exhaustive = self.ctx.product(*pools)
        ok = np.broadcast_to(np.asarray(pred(*args), dtype=bool), (count,))
        self.cases += count
        # a pool drawn from a sampled fuzzy-set family is itself a sample
        sampled_pool = not self.ctx.fuzzy_exhaustive and any(p is self.ctx.fuzzy_sets for p in pools)
        self.exhaustive = self.exhaustive and exhaustive and not sampled_pool
        self.predicates[clause] = lambda *w: bool(np.all(pred(*(np.asarray(x)[None] for x in w))))
        for i in np.flatnonzero(~ok):
            self._witness(clause, tuple(a[i] for a in args))

    def fact(self, clause, fn):
        """A single whole-context statement such as an equivalence of flags."""
        self.cases += 1
        self.predicates[clause] = lambda: bool(fn())
        if not fn():
            self._witness(clause, ())

    def families(self, clause, pool, first, pred):
        """``pred(first_item, family)`` over families of size 2 and 3 from ``pool``.

        ``first`` is an optional extra pool paired with each family; the
        family is stacked on axis 1.
        """
        for k in (2, 3):
            pools = ([first] if first is not None else []) + [pool] * k

            def wrapped(*args, _k=k):
                head = args[:-_k]
                return pred(*head, np.stack(args[-_k:], axis=1))

            self.check(f"{clause}/{k}", pools, wrapped)

    def absorb(self, clause, report):
        """Fold a ValidationReport (systems, decomposition) into this law."""
        self.cases += report.checked_cases
        if not str(report.coverage).startswith("exhaustive"):
            self.exhaustive = False
        self.unmet.extend(f"{clause}: {s}" for s in report.skipped)
        self.notes.extend(f"{clause}: {n}" for n in report.notes)
        for axiom, witness in report.violations:
            name = f"{clause}:{axiom}"
            self.predicates[name] = lambda *w, _r=report, _a=axiom: _r.replay((_a, w))
            self._witness(name, tuple(witness))

    def report(self, law):
        if self.found:
            status = "failed"
        elif not self.cases:
            status = "hypothesis-not-met"
        else:
            status = "passed"
        ctx = self.ctx
        if not ctx.lattice.is_finite:
            coverage = f"sampled evidence ({UNIT_LEVELS}-level grid)"
        elif self.exhaustive:
            coverage = "exhaustive"
        else:
            coverage = f"sampled evidence (seed {ctx.seed})"
        return LawReport(
            law.id, law.anchor, status, self.cases, coverage, list(self.found), list(self.unmet),
            list(self.notes), self.total, self.predicates,
        )


@dataclass(frozen=True)
class Law:
    id: str
    anchor: str
    body: object
    needs_partition: bool


LAWS = {}


def _law(law_id, anchor, needs_partition=False):
    def register(fn):
        LAWS[law_id] = Law(law_id, anchor, fn, needs_partition)
        return fn
    return register


def _key(law_id):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", law_id)]


def law_ids():
    return sorted(LAWS, key=_key)


def run_law(law_id, context):
    if law_id not in LAWS:
        raise UnknownLaw(f"no law registered as {law_id!r}")
    law = LAWS[law_id]
    run = _Run(context)
    if law.needs_partition and context.partition is None:
        run.need("the context has no partition", False)
    else:
        law.body(run)
    return run.report(law)


def run_suite(context, ids=None):
    ids = law_ids() if ids is None else sorted(ids, key=_key)
    return [run_law(i, context) for i in ids]


def suite_json(reports, lattice):
    return json.dumps([r.to_json(lattice) for r in reports], indent=2)


def suite_table(reports, lattice):
    rows = [("law", "status", "cases", "coverage", "detail")]
    for r in reports:
        if r.status == "failed":
            clause, w = r.witness
            detail = f"{r.total_violations} violation{'s' if r.total_violations != 1 else ''}; first {clause} at {_show(w, lattice)}"
        elif r.unmet:
            detail = "; ".join(r.unmet)
        else:
            detail = ""
        rows.append((r.id, r.status, str(r.cases), r.coverage, detail))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row[:4], widths)) + "  " + row[4] for row in rows]
    return "\n".join(line.rstrip() for line in lines)


# =========================================================================
# connective lemmas
# =========================================================================

@_law("L2.1", "theta(u,v) <= w iff u <= I_theta(v,w);  eta(u,v) >= w iff u >= I_eta(v,w)")
def _adjoint(run):
    c, E = run.ctx, run.ctx.elements
    run.check("theta", [E, E, E], lambda u, v, w: c.le(c.th(u, v), w) == c.le(u, c.it(v, w)))
    run.check("eta", [E, E, E], lambda u, v, w: c.le(w, c.et(u, v)) == c.le(c.ie(v, w), u))


@_law("L2.2.i", "I_theta(0,0) = I_theta(1,1) = 1, I_theta(1,0) = 0")
def _l22i(run):
    c = run.ctx
    b, t = c.bottom, c.top
    run.fact("boundary", lambda: c.eq(c.it(b, b), t) and c.eq(c.it(t, t), t) and c.eq(c.it(t, b), b))


@_law("L2.2.ii", "u <= v implies I_theta(u,w) >= I_theta(v,w) and I_theta(w,u) <= I_theta(w,v)")
def _l22ii(run):
    c, E = run.ctx, run.ctx.elements
    run.check("first-antitone", [E, E, E], lambda u, v, w: ~c.le(u, v) | c.le(c.it(v, w), c.it(u, w)))
    run.check("second-monotone", [E, E, E], lambda u, v, w: ~c.le(u, v) | c.le(c.it(w, u), c.it(w, v)))


@_law("L2.2.iii", "I_theta has OP and NP iff 1 is neutral for theta")
def _l22iii(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: (p["i_theta"]["OP"] and p["i_theta"]["NP"]) == p["theta"]["has_neutral"])


@_law("L2.2.iv", "I_theta has IP iff theta is a deflation")
def _l22iv(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: p["i_theta"]["IP"] == p["theta"]["deflation"])


@_law("L2.2.v", "I_theta has EP iff theta has EP")
def _l22v(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: p["i_theta"]["EP"] == p["theta"]["EP"])


@_law("L2.3.i", "theta(u, I_theta(u,v)) <= v <= I_theta(u, theta(u,v)); I_theta(theta(u,v),0) = I_theta(u, I_theta(v,0))")
def _l23i(run):
    c, E = run.ctx, run.ctx.elements
    b = c.bottom
    run.check("modus-ponens", [E, E], lambda u, v: c.le(c.th(u, c.it(u, v)), v))
    run.check("unit", [E, E], lambda u, v: c.le(v, c.it(u, c.th(u, v))))
    run.check("negation", [E, E], lambda u, v: c.eq(c.it(c.th(u, v), b), c.it(u, c.it(v, b))))


@_law("L2.3.ii", "I_theta(u, meet v_i) = meet I_theta(u, v_i);  I_theta(join u_i, v) = meet I_theta(u_i, v)")
def _l23ii(run):
    c, E = run.ctx, run.ctx.elements
    run.families(
        "meet-second", E, E,
        lambda u, vs: c.eq(c.it(u, c.fold(vs, 1, False)), c.fold(c.it(u[:, None], vs), 1, False)),
    )
    run.families(
        "join-first", E, E,
        lambda v, us: c.eq(c.it(c.fold(us, 1, True), v), c.fold(c.it(us, v[:, None]), 1, False)),
    )


@_law("L2.3.iii", "I_theta(u, join v_i) >= join I_theta(u, v_i)")
def _l23iii(run):
    c, E = run.ctx, run.ctx.elements
    run.families(
        "join-second", E, E,
        lambda u, vs: c.le(c.fold(c.it(u[:, None], vs), 1, True), c.it(u, c.fold(vs, 1, True))),
    )


@_law("L2.3.iv", "theta has EP iff I_theta(theta(u,v),w) = I_theta(u, I_theta(v,w))")
def _l23iv(run):
    c, E = run.ctx, run.ctx.elements

    def exchange():
        g = np.ix_(E, E, E)
        return bool(np.all(c.eq(c.it(c.th(g[0], g[1]), g[2]), c.it(g[0], c.it(g[1], g[2])))))

    run.fact("equivalence", lambda: c.props["theta"]["EP"] == exchange())


# ---- the co-residual list -------------------------------------------------

@_law("D2.i", "I_eta(0,0) = I_eta(1,1) = 0, I_eta(0,1) = 1")
def _di(run):
    c = run.ctx
    b, t = c.bottom, c.top
    run.fact("boundary", lambda: c.eq(c.ie(b, b), b) and c.eq(c.ie(t, t), b) and c.eq(c.ie(b, t), t))


@_law("D2.ii", "u <= v implies I_eta(u,w) >= I_eta(v,w) and I_eta(w,u) <= I_eta(w,v)")
def _dii(run):
    c, E = run.ctx, run.ctx.elements
    run.check("first-antitone", [E, E, E], lambda u, v, w: ~c.le(u, v) | c.le(c.ie(v, w), c.ie(u, w)))
    run.check("second-monotone", [E, E, E], lambda u, v, w: ~c.le(u, v) | c.le(c.ie(w, u), c.ie(w, v)))


@_law("D2.iii", "I_eta has OP and NP iff 0 is neutral for eta")
def _diii(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: (p["i_eta"]["OP"] and p["i_eta"]["NP"]) == p["eta"]["has_neutral"])


@_law("D2.iv", "I_eta has IP iff eta is a deflation")
def _div(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: p["i_eta"]["IP"] == p["eta"]["deflation"])


@_law("D2.v", "I_eta has EP iff eta has EP")
def _dv(run):
    p = run.ctx.props
    run.fact("equivalence", lambda: p["i_eta"]["EP"] == p["eta"]["EP"])


@_law("D2.vi", "eta(u, I_eta(u,v)) >= v >= I_eta(u, eta(u,v)); I_eta(eta(u,v),1) = I_eta(u, I_eta(v,1))")
def _dvi(run):
    c, E = run.ctx, run.ctx.elements
    t = c.top
    run.check("modus-ponens", [E, E], lambda u, v: c.le(v, c.et(u, c.ie(u, v))))
    run.check("unit", [E, E], lambda u, v: c.le(c.ie(u, c.et(u, v)), v))
    run.check("negation", [E, E], lambda u, v: c.eq(c.ie(c.et(u, v), t), c.ie(u, c.ie(v, t))))


@_law("D2.vii", "I_eta(u, join v_i) = join I_eta(u, v_i);  I_eta(meet u_i, v) = join I_eta(u_i, v)")
def _dvii(run):
    c, E = run.ctx, run.ctx.elements
    run.families(
        "join-second", E, E,
        lambda u, vs: c.eq(c.ie(u, c.fold(vs, 1, True)), c.fold(c.ie(u[:, None], vs), 1, True)),
    )
    run.families(
        "meet-first", E, E,
        lambda v, us: c.eq(c.ie(c.fold(us, 1, False), v), c.fold(c.ie(us, v[:, None]), 1, True)),
    )


@_law("D2.viii", "I_eta(u, meet v_i) <= meet I_eta(u, v_i)")
def _dviii(run):
    c, E = run.ctx, run.ctx.elements
    run.families(
        "meet-second", E, E,
        lambda u, vs: c.le(c.ie(u, c.fold(vs, 1, False)), c.fold(c.ie(u[:, None], vs), 1, False)),
    )


@_law("D2.ix", "eta has EP iff I_eta(eta(u,v),w) = I_eta(u, I_eta(v,w))")
def _dix(run):
    c, E = run.ctx, run.ctx.elements

    def exchange():
        g = np.ix_(E, E, E)
        return bool(np.all(c.eq(c.ie(c.et(g[0], g[1]), g[2]), c.ie(g[0], c.ie(g[1], g[2])))))

    run.fact("equivalence", lambda: c.props["eta"]["EP"] == exchange())


# =========================================================================
# direct transforms
# =========================================================================

def _same(c, a, b):
    return c.eq(a, b).reshape(len(a), -1).all(axis=1)


def _below(c, a, b):
    return c.le(a, b).reshape(len(a), -1).all(axis=1)


@_law("P3.1", "F_up_theta[f] = N(F_low_eta[N f]);  F_low_eta[f] = N(F_up_theta[N f])", True)
def _p31(run):
    c = run.ctx
    if not run.needs(None, ("N is involutive", c.involutive), ("theta and eta are dual under N", c.connectives_dual)):
        return
    F = c.fuzzy_sets
    run.check("i", [F], lambda f: _same(c, c.direct(UT, f), c.n(c.direct(LE, c.n(f)))))
    run.check("ii", [F], lambda f: _same(c, c.direct(LE, f), c.n(c.direct(UT, c.n(f)))))


@_law("P3.2", "F_up_Ieta[f] = N(F_low_Itheta[N f]);  F_low_Itheta[f] = N(F_up_Ieta[N f])", True)
def _p32(run):
    c = run.ctx
    if not run.needs(None, ("N is involutive", c.involutive), ("I_theta and I_eta are dual under N", c.implicators_dual)):
        return
    F = c.fuzzy_sets
    run.check("i", [F], lambda f: _same(c, c.direct(UC, f), c.n(c.direct(LR, c.n(f)))))
    run.check("ii", [F], lambda f: _same(c, c.direct(LR, f), c.n(c.direct(UC, c.n(f)))))


def _over_levels(c, f, inner, kind, outer, use_join, extra):
    """fold over u of outer(F_kind[inner(f, u)], u), for a batch f[m, x].

    u ranges over the element pool plus ``extra[m, :]``, the values the fold
    is expected to reach; on a finite carrier they are already in the pool,
    on [0, 1] they may fall between grid points.
    """
    E = np.broadcast_to(c.elements, (len(f), len(c.elements)))
    u = np.concatenate([E, np.asarray(extra, dtype=E.dtype)], axis=1)  # (m, e + j)
    g = inner(f[:, None, :], u[:, :, None])  # (m, e + j, x)
    comps = c.direct(kind, g)  # (m, e + j, j)
    return c.fold(outer(comps, u[:, :, None]), 1, use_join)


@_law("P3.3", "F_low_Itheta[f] = meet_u I_theta(F_up_theta[I_theta(f,u)], u) and three companions", True)
def _p33(run):
    c = run.ctx
    base = (
        ("N is involutive", c.involutive),
        ("theta has EP", c.props["theta"]["EP"]),
        ("eta has EP", c.props["eta"]["EP"]),
        ("meet_v I_theta(I_theta(u,v),v) = u for all u", c.double_residuation),
    )
    F = c.fuzzy_sets
    if run.needs("i", *base):
        for name, kind, src in (("i-lower", LR, UT), ("i-upper", UT, LR)):
            run.check(name, [F], lambda f, _k=kind, _s=src: _same(
                c, c.direct(_k, f), _over_levels(c, f, c.it, _s, c.it, False, c.direct(_k, f))
            ))
    if run.needs("ii", *base, ("theta and eta are dual under N", c.connectives_dual),
                 ("I_theta and I_eta are dual under N", c.implicators_dual)):
        for name, kind, src in (("ii-lower", LE, UC), ("ii-upper", UC, LE)):
            run.check(name, [F], lambda f, _k=kind, _s=src: _same(
                c, c.direct(_k, f), _over_levels(c, f, c.ie, _s, c.ie, True, c.direct(_k, f))
            ))


@_law("P3.4", "F_up_theta[f] = meet_u I_theta(N(F_up_Ieta[I_eta(N f, N u)]), u) and three companions", True)
def _p34(run):
    c = run.ctx
    if not run.needs(
        None,
        ("N is involutive", c.involutive),
        ("theta has EP", c.props["theta"]["EP"]),
        ("eta has EP", c.props["eta"]["EP"]),
        ("meet_v I_theta(I_theta(u,v),v) = u for all u", c.double_residuation),
        ("theta and eta are dual under N", c.connectives_dual),
        ("I_theta and I_eta are dual under N", c.implicators_dual),
    ):
        return
    F = c.fuzzy_sets
    for name, kind, src, outer, use_join, inner in (
        ("i", UT, UC, c.it, False, c.ie),
        ("ii", UC, UT, c.ie, True, c.it),
        ("iii", LE, LR, c.ie, True, c.it),
        ("iv", LR, LE, c.it, False, c.ie),
    ):
        run.check(name, [F], lambda f, _a=(kind, src, outer, use_join, inner): _same(
            c, c.direct(_a[0], f), bridge(c, f, *_a[1:], target=c.direct(_a[0], f))
        ))
    bad = printed_bridge_failures(c)
    if bad:
        run.notes.append(
            "the variant of ii/iii with I_eta(N f, N u) inside fails on "
            + ", ".join(f"{k}: {v} sets" for k, v in bad.items())
        )


def bridge(c, f, kind, outer, use_join, inner, target=None):
    """fold over u of outer(N(F_kind[inner(N f, N u)]), u); ``target`` seeds extra u values."""
    extra = np.zeros((len(f), 0), dtype=c.elements.dtype) if target is None else target
    return _over_levels(
        c, f, lambda g, u: inner(c.n(g), c.n(u)), kind, lambda comps, u: outer(c.n(comps), u), use_join, extra
    )


def printed_bridge_failures(c):
    """How many enumerated sets break the I_eta-inside variant of the middle two bridges.

    Chaining the dualities with the double-residuation identities puts
    I_theta(N f, N u) inside those two clauses; the I_eta variant is kept here
    only to report that it does not hold.
    """
    F = c.fuzzy_sets
    out = {}
    for name, kind, src, outer in (("ii", UC, UT, c.ie), ("iii", LE, LR, c.ie)):
        ok = _same(c, c.direct(kind, F), bridge(c, F, src, outer, True, c.ie, target=c.direct(kind, F)))
        if not ok.all():
            out[name] = int((~ok).sum())
    return out


@_law("P3.5", "F_up_theta[f] = N_Itheta(F_low_Itheta[N_Itheta f]) and the converse", True)
def _p35(run):
    c = run.ctx
    if not run.need("the negator induced by I_theta is involutive", c.n_theta.is_involutive):
        return
    n, F = c.n_theta.array, c.fuzzy_sets
    run.check("i", [F], lambda f: _same(c, c.direct(UT, f), n(c.direct(LR, n(f)))))
    run.check("ii", [F], lambda f: _same(c, c.direct(LR, f), n(c.direct(UT, n(f)))))


@_law("P3.6", "F_low_eta[f] = N_Ieta(F_up_Ieta[N_Ieta f]) and the converse", True)
def _p36(run):
    c = run.ctx
    if not run.need("the negator induced by I_eta is involutive", c.n_eta.is_involutive):
        return
    n, F = c.n_eta.array, c.fuzzy_sets
    run.check("i", [F], lambda f: _same(c, c.direct(LE, f), n(c.direct(UC, n(f)))))
    run.check("ii", [F], lambda f: _same(c, c.direct(UC, f), n(c.direct(LE, n(f)))))


@_law("P3.7", "A_j <= B_j implies larger upper and smaller lower components", True)
def _p37(run):
    c = run.ctx
    if not run.need("a pointwise larger partition with the same cores exists", bool(c.variants)):
        return
    # the pool holds whole member matrices, so a witness is (f, B)
    B = np.stack([v.matrix for v in c.variants])
    F = c.fuzzy_sets
    for kind, upper in ((UT, True), (LE, False), (UC, True), (LR, False)):
        def pred(f, members, _k=kind, _u=upper):
            a, b = c.direct(_k, f), c.direct(_k, f, members)
            return _below(c, a, b) if _u else _below(c, b, a)
        run.check(kind, [F, B], pred)


def _at_cores(c, comps, f):
    """Component of the member owning each point, as [m, x]."""
    return comps[:, c.partition.k]


@_law("P3.8", "F_up_theta[f] >= theta(1, f(x_j)) at core points, and three companions", True)
def _p38(run):
    c = run.ctx
    F, t, b = c.fuzzy_sets, c.top, c.bottom
    run.check(UT, [F], lambda f: _below(c, c.th(t, f), _at_cores(c, c.direct(UT, f), f)))
    run.check(LE, [F], lambda f: _below(c, _at_cores(c, c.direct(LE, f), f), c.et(b, f)))
    run.check(UC, [F], lambda f: _below(c, c.ie(b, f), _at_cores(c, c.direct(UC, f), f)))
    run.check(LR, [F], lambda f: _below(c, _at_cores(c, c.direct(LR, f), f), c.it(t, f)))


@_law("C3.1", "with neutral elements F_up[f] >= f(x_j) >= F_low[f] at core points", True)
def _c31(run):
    c = run.ctx
    if not run.needs(None, ("1 is neutral for theta", c.props["theta"]["has_neutral"]),
                     ("0 is neutral for eta", c.props["eta"]["has_neutral"])):
        return
    F = c.fuzzy_sets
    for kind, upper in ((UT, True), (LE, False), (UC, True), (LR, False)):
        def pred(f, _k=kind, _u=upper):
            at = _at_cores(c, c.direct(_k, f), f)
            return _below(c, f, at) if _u else _below(c, at, f)
        run.check(kind, [F], pred)


@_law("P3.9", "f <= g implies F[f] <= F[g] for all four transforms", True)
def _p39(run):
    c = run.ctx
    F = c.fuzzy_sets
    for kind in (UT, LE, UC, LR):
        run.check(kind, [F, F], lambda f, g, _k=kind: ~_below(c, f, g) | _below(c, c.direct(_k, f), c.direct(_k, g)))


@_law("P3.10", "F_up_theta[theta(u,f)] = theta(u, F_up_theta[f]) and three companions", True)
def _p310(run):
    c = run.ctx
    if not run.needs(None, ("theta has EP", c.props["theta"]["EP"]), ("eta has EP", c.props["eta"]["EP"])):
        return
    E, F = c.elements, c.fuzzy_sets
    for kind, op in ((UT, c.th), (LE, c.et), (UC, c.ie), (LR, c.it)):
        run.check(
            kind, [E, F],
            lambda u, f, _k=kind, _op=op: _same(c, c.direct(_k, _op(u[:, None], f)), _op(u[:, None], c.direct(_k, f))),
        )


@_law("P3.11", "F_up[join f_k] = join F_up[f_k];  F_low[meet f_k] = meet F_low[f_k]", True)
def _p311(run):
    c = run.ctx
    for kind, use_join in ((UT, True), (UC, True), (LE, False), (LR, False)):
        run.families(
            kind, c.fuzzy_sets, None,
            lambda fs, _k=kind, _j=use_join: _same(
                c, c.direct(_k, c.fold(fs, 1, _j)), c.fold(c.direct(_k, fs), 1, _j)
            ),
        )


@_law("P3.12", "F_up_theta[u] = theta(1,u), F_low_Itheta[u] = I_theta(1,u), F_low_eta[u] = eta(meet_x N A_j(x), u), ...", True)
def _p312(run):
    c = run.ctx
    E, t, b = c.elements, c.top, c.bottom
    low = c.fold(c.n(c.members), 1, False)  # meet over x of N(A_j(x)), per j
    run.check(UT, [E], lambda u: _same(c, c.direct(UT, c.const(u)), c.th(t, u)[:, None]))
    run.check(LR, [E], lambda u: _same(c, c.direct(LR, c.const(u)), c.it(t, u)[:, None]))
    run.check(LE, [E], lambda u: _same(c, c.direct(LE, c.const(u)), c.et(low[None, :], u[:, None])))
    run.check(UC, [E], lambda u: _same(c, c.direct(UC, c.const(u)), c.ie(low[None, :], u[:, None])))
    if run.need("N is strict", c.negator_flags.get("strict") is True, "strict"):
        run.check("strict-" + LE, [E], lambda u: _same(c, c.direct(LE, c.const(u)), c.et(b, u)[:, None]))
        run.check("strict-" + UC, [E], lambda u: _same(c, c.direct(UC, c.const(u)), c.ie(b, u)[:, None]))


@_law("C3.2", "with neutral elements every transform fixes constants", True)
def _c32(run):
    c = run.ctx
    if not run.needs(None, ("1 is neutral for theta", c.props["theta"]["has_neutral"]),
                     ("0 is neutral for eta", c.props["eta"]["has_neutral"])):
        return
    for kind in (UT, LE, UC, LR):
        run.check(kind, [c.elements], lambda u, _k=kind: _same(c, c.direct(_k, c.const(u)), u[:, None]))


@_law("P3.13", "F_low_eta[u] = eta(0,u) for all u iff F_low_eta[0_X] = 0; dually for F_up_Ieta and 1_X", True)
def _p313(run):
    c = run.ctx
    E, t, b = c.elements, c.top, c.bottom
    J = np.arange(len(c.partition))
    zeros, ones = c.const(np.array([b]))[0], c.const(np.array([t]))[0]

    def eta_side(j):
        lhs = c.eq(c.direct(LE, c.const(E))[:, j], c.et(b, E)[:, None]).all(axis=0)
        rhs = c.eq(c.direct(LE, zeros[None])[0, j], b)
        return lhs == rhs

    def coresidual_side(j):
        lhs = c.eq(c.direct(UC, c.const(E))[:, j], c.ie(b, E)[:, None]).all(axis=0)
        rhs = c.eq(c.direct(UC, ones[None])[0, j], t)
        return lhs == rhs

    run.check("i", [J], eta_side)
    run.check("ii", [J], coresidual_side)


def _extremal(c, comps, terms, upper):
    """comps[m, j] is the least u with terms <= u (or the greatest v <= terms) over x."""
    E = c.elements
    if upper:
        member = c.le(terms[..., None], E).all(axis=2)  # (m, j, e): u bounds every term
        inside = c.le(terms, comps[..., None]).all(axis=2)
        extreme = (~member | c.le(comps[..., None], E)).all(axis=2)
    else:
        member = c.le(E, terms[..., None]).all(axis=2)
        inside = c.le(comps[..., None], terms).all(axis=2)
        extreme = (~member | c.le(E, comps[..., None])).all(axis=2)
    return (inside & extreme).all(axis=1)


@_law("P3.14", "F_up_theta_j[f] is the least of U_j, F_low_eta_j[f] the greatest of V_j", True)
def _p314(run):
    c = run.ctx
    a = c.members
    run.check(UT, [c.fuzzy_sets], lambda f: _extremal(c, c.direct(UT, f), c.th(a, f[:, None, :]), True))
    run.check(LE, [c.fuzzy_sets], lambda f: _extremal(c, c.direct(LE, f), c.et(c.n(a), f[:, None, :]), False))


@_law("P3.15", "F_up_Ieta_j[f] is the least of U_j, F_low_Itheta_j[f] the greatest of V_j", True)
def _p315(run):
    c = run.ctx
    a = c.members
    run.check(UC, [c.fuzzy_sets], lambda f: _extremal(c, c.direct(UC, f), c.ie(c.n(a), f[:, None, :]), True))
    run.check(LR, [c.fuzzy_sets], lambda f: _extremal(c, c.direct(LR, f), c.it(a, f[:, None, :]), False))


def _residuated(c, comps, terms, upper, test):
    """Every bound of the terms (and the component itself) passes ``test``.

    ``test(bound, terms)`` sees terms as [m, j, x, 1] and bounds as
    [..., bound] and returns bools shaped [m, j, x or 1, bound]; bounds range
    over the element pool plus the component.
    """
    E = c.elements
    if upper:
        member = c.le(terms[..., None], E).all(axis=2)
    else:
        member = c.le(E, terms[..., None]).all(axis=2)
    ok_pool = ~member | test(E[None, None, None, :], terms[..., None]).all(axis=2)
    ok_comp = test(comps[:, :, None, None], terms[..., None]).all(axis=2)
    return ok_pool.all(axis=(1, 2)) & ok_comp.all(axis=(1, 2))


@_law("P3.16", "with deflations: meet_x I_theta(theta(A_j,f), u) = 1 on U_j and I_eta(eta(N A_j,f), v) = 0 on V_j", True)
def _p316(run):
    c = run.ctx
    if not run.needs(None, ("theta is a deflation", c.props["theta"]["deflation"]),
                     ("eta is a deflation", c.props["eta"]["deflation"])):
        return
    a, F, t, b = c.members, c.fuzzy_sets, c.top, c.bottom
    run.check("i", [F], lambda f: _residuated(
        c, c.direct(UT, f), c.th(a, f[:, None, :]), True,
        lambda u, terms: c.eq(c.fold(c.it(terms, u), 2, False), t)[:, :, None, :],
    ))
    # each term vanishes, which is stronger than the meet vanishing
    run.check("ii", [F], lambda f: _residuated(
        c, c.direct(LE, f), c.et(c.n(a), f[:, None, :]), False,
        lambda v, terms: c.eq(c.ie(terms, v), b),
    ))
    run.check("least-and-greatest", [F], lambda f: _extremal(c, c.direct(UT, f), c.th(a, f[:, None, :]), True)
              & _extremal(c, c.direct(LE, f), c.et(c.n(a), f[:, None, :]), False))


@_law("P3.17", "with deflations: I_eta(u, I_eta(N A_j,f)) = 0 on U_j and meet_x I_theta(v, I_theta(A_j,f)) = 1 on V_j", True)
def _p317(run):
    c = run.ctx
    if not run.needs(None, ("theta is a deflation", c.props["theta"]["deflation"]),
                     ("eta is a deflation", c.props["eta"]["deflation"])):
        return
    a, F, t, b = c.members, c.fuzzy_sets, c.top, c.bottom
    run.check("i", [F], lambda f: _residuated(
        c, c.direct(UC, f), c.ie(c.n(a), f[:, None, :]), True,
        lambda u, terms: c.eq(c.ie(u, terms), b),
    ))
    run.check("ii", [F], lambda f: _residuated(
        c, c.direct(LR, f), c.it(a, f[:, None, :]), False,
        lambda v, terms: c.eq(c.fold(c.it(v, terms), 2, False), t)[:, :, None, :],
    ))
    run.check("least-and-greatest", [F], lambda f: _extremal(c, c.direct(UC, f), c.ie(c.n(a), f[:, None, :]), True)
              & _extremal(c, c.direct(LR, f), c.it(a, f[:, None, :]), False))


# =========================================================================
# inverse transforms
# =========================================================================

@_law("P4.1", "inverse of F_up_theta >= f >= inverse of F_low_Itheta", True)
def _p41(run):
    c, F = run.ctx, run.ctx.fuzzy_sets
    run.check("i", [F], lambda f: _below(c, f, c.inverse(UT, c.direct(UT, f))))
    run.check("ii", [F], lambda f: _below(c, c.inverse(LR, c.direct(LR, f)), f))


@_law("P4.2", "inverse of F_up_Ieta >= f;  inverse of F_low_eta <= I_eta(0, f)", True)
def _p42(run):
    c, F = run.ctx, run.ctx.fuzzy_sets
    run.check("i", [F], lambda f: _below(c, f, c.inverse(UC, c.direct(UC, f))))
    run.check("ii", [F], lambda f: _below(c, c.inverse(LE, c.direct(LE, f)), c.ie(c.bottom, f)))
    if run.need("0 is neutral for eta", c.props["eta"]["has_neutral"], "ii-neutral"):
        run.check("ii-neutral", [F], lambda f: _below(c, c.inverse(LE, c.direct(LE, f)), f))


def _stable(c, kind):
    return lambda f: _same(c, c.direct(kind, c.inverse(kind, c.direct(kind, f))), c.direct(kind, f))


@_law("P4.3", "F_up_theta and F_low_Itheta reproduce their components from their reconstructions", True)
def _p43(run):
    c, F = run.ctx, run.ctx.fuzzy_sets
    run.check("i", [F], _stable(c, UT))
    run.check("ii", [F], _stable(c, LR))


@_law("P4.4", "F_up_Ieta and F_low_eta reproduce their components from their reconstructions", True)
def _p44(run):
    c, F = run.ctx, run.ctx.fuzzy_sets
    run.check("i", [F], _stable(c, UC))
    run.check("ii", [F], _stable(c, LE))


# =========================================================================
# transformation systems
# =========================================================================

@_law("S5.dec", "f = join_x theta(f(x), 1_{x}) and its three companions")
def _s5dec(run):
    c = run.ctx
    run.absorb("decomposition", singleton_decomposition_check(
        c.lattice, c.theta, c.eta, c.negator, c.i_theta, c.i_eta, c.universe, c.budget, c.seed,
    ))


def _connective_for(c, kind):
    return {UT: c.theta, LE: c.eta, UC: c.i_eta, LR: c.i_theta}[kind]


def _round_trip(run, kind, negator):
    """A system built from the partition is valid and gives the partition back."""
    c = run.ctx
    conn = _connective_for(c, kind)
    sys = system_from_partition(c.partition, kind, conn, negator)
    run.absorb("axioms", validate_system(sys, conn, negator, c.budget, c.seed))
    try:
        back = partition_from_system(sys, negator)
    except LatticeFTError as exc:
        run.fact("partition round trip", lambda: False)
        run.notes.append(str(exc))
        return
    run.fact("partition round trip", lambda: back == c.partition)
    again = system_from_partition(back, kind, conn, negator)
    run.check("system round trip", [c.fuzzy_sets], lambda f: _same(c, again.evaluate(f), sys.evaluate(f)))


@_law("P5.1", "U is an upper system for theta iff U = F_up_theta over some partition", True)
def _p51(run):
    c = run.ctx
    if run.need("1 is neutral for theta", c.props["theta"]["has_neutral"]):
        _round_trip(run, UT, None)


@_law("P5.2", "U is an upper system for I_eta iff U = F_up_Ieta over some partition", True)
def _p52(run):
    c = run.ctx
    if run.needs(None, ("I_eta has EP", c.props["i_eta"]["EP"]),
                 ("the negator induced by I_eta is involutive", c.n_eta.is_involutive)):
        _round_trip(run, UC, c.n_eta)


@_law("P5.3", "H is a lower system for eta iff H = F_low_eta over some partition", True)
def _p53(run):
    c = run.ctx
    if run.needs(None, ("eta has EP", c.props["eta"]["EP"]), ("0 is neutral for eta", c.props["eta"]["has_neutral"]),
                 ("N is involutive", c.involutive)):
        _round_trip(run, LE, c.negator)


@_law("P5.4", "H is a lower system for I_theta iff H = F_low_Itheta over some partition", True)
def _p54(run):
    c = run.ctx
    if run.needs(None, ("I_theta has EP", c.props["i_theta"]["EP"]),
                 ("the negator induced by I_theta is involutive", c.n_theta.is_involutive)):
        _round_trip(run, LR, None)


def _system_duality(run, upper_kind, lower_kind, negator):
    """Equations hold for one shared partition; partitions that differ are told apart."""
    c = run.ctx
    up_conn, low_conn = _connective_for(c, upper_kind), _connective_for(c, lower_kind)
    upper = system_from_partition(c.partition, upper_kind, up_conn, negator)
    lower = system_from_partition(c.partition, lower_kind, low_conn, negator)
    run.absorb("shared", check_system_duality(upper, lower, negator, c.budget, c.seed))
    systems_ok = validate_system(upper, up_conn, negator, c.budget, c.seed).passed
    if not run.need("both operators are transformation systems", systems_ok, "converse"):
        return
    for i, other in enumerate(c.variants[:CONVERSE_VARIANTS]):
        lower2 = system_from_partition(other, lower_kind, low_conn, negator)
        if not validate_system(lower2, low_conn, negator, c.budget, c.seed).passed:
            run.notes.append(f"converse: variant {i} does not give a lower system")
            continue
        rep = check_system_duality(upper, lower2, negator, c.budget, c.seed)
        run.fact(f"converse/{i}", lambda _r=rep: not _r.passed)


@_law("P5.5", "shared partition iff U_theta[f] = N(H_eta[N f]) and H_eta[f] = N(U_theta[N f])", True)
def _p55(run):
    c = run.ctx
    if run.needs(None, ("N is involutive", c.involutive), ("theta and eta are dual under N", c.connectives_dual)):
        _system_duality(run, UT, LE, c.negator)


@_law("P5.6", "shared partition iff U_Ieta[f] = N(H_Itheta[N f]) and H_Itheta[f] = N(U_Ieta[N f])", True)
def _p56(run):
    c = run.ctx
    if run.needs(None, ("N is involutive", c.involutive), ("theta and eta are dual under N", c.connectives_dual),
                 ("I_theta and I_eta are dual under N", c.implicators_dual)):
        _system_duality(run, UC, LR, c.negator)


@_law("P5.7", "shared partition iff U_theta[f] = N_Itheta(H_Itheta[N_Itheta f]) and the converse", True)
def _p57(run):
    c = run.ctx
    if run.need("the negator induced by I_theta is involutive", c.n_theta.is_involutive):
        _system_duality(run, UT, LR, c.n_theta)


@_law("P5.8", "shared partition iff U_Ieta[f] = N_Ieta(H_eta[N_Ieta f]) and the converse", True)
def _p58(run):
    c = run.ctx
    if run.need("the negator induced by I_eta is involutive", c.n_eta.is_involutive):
        _system_duality(run, UC, LE, c.n_eta)
