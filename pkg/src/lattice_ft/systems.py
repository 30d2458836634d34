"""Upper and lower transformation systems and their link to partitions.

A system is an operator L^X -> L^Y together with an onto map X -> Y.  The
operator is opaque: it receives a batch of fuzzy sets as an ``(m, |X|)``
array and returns an ``(m, |Y|)`` array, so systems that do not come from a
partition can be validated too.

Upper systems (kinds ``upper-theta``, ``upper-coresidual``) must preserve
joins, commute with the connective against constants, and send 1_{x} to a set
whose only top value sits at the image of x.  Lower systems
(``lower-eta``, ``lower-residual``) satisfy the order duals.
"""
from __future__ import annotations

import numpy as np

from .connectives import _Checker, induced_negator
from .enumeration import fuzzy_set_matrix
from .errors import CarrierMismatch, ExtractionNotPartition, KindMismatch, LatticeFTError, MissingNegator
from .partitions import LFuzzySet, validate_partition
from .transforms import DIRECT_KINDS, fold

__all__ = [
    "UPPER_KINDS",
    "LOWER_KINDS",
    "TransformationSystem",
    "identity_system",
    "system_from_partition",
    "partition_from_system",
    "validate_upper_system",
    "validate_lower_system",
    "validate_system",
    "check_system_duality",
    "singleton_decomposition_check",
]

UPPER_KINDS = ("upper-theta", "upper-coresidual")
LOWER_KINDS = ("lower-eta", "lower-residual")


class TransformationSystem:
    def __init__(self, universe, index_labels, onto_map, operator, kind, lattice, negator=None, name=None):
        if kind not in DIRECT_KINDS:
            raise KindMismatch(f"unknown system kind {kind!r}")
        self.universe = universe
        self.index_labels = tuple(str(y) for y in index_labels)
        self.onto_map = {str(x): str(y) for x, y in onto_map.items()}
        if set(self.onto_map) != set(universe.points):
            raise LatticeFTError("the onto map must be defined on every point")
        if set(self.onto_map.values()) != set(self.index_labels):
            raise LatticeFTError("the map onto the index set is not surjective")
        self.operator = operator
        self.kind = kind
        self.lattice = lattice
        self.negator = negator
        self.name = name or kind

    def __repr__(self):
        return f"<TransformationSystem {self.name} |X|={len(self.universe)} |Y|={len(self.index_labels)}>"

    @property
    def is_upper(self):
        return self.kind in UPPER_KINDS

    @classmethod
    def from_function(cls, universe, index_labels, onto_map, func, kind, lattice, negator=None, name=None):
        """Wrap a per-set function ``values -> values on Y`` as a batch operator."""

        def batch(rows):
            return np.array([list(func(tuple(r.tolist()))) for r in rows])

        return cls(universe, index_labels, onto_map, batch, kind, lattice, negator, name)

    def evaluate(self, batch):
        batch = np.atleast_2d(np.asarray(batch))
        out = np.asarray(self.operator(batch))
        if out.shape != (batch.shape[0], len(self.index_labels)):
            raise LatticeFTError(f"operator returned shape {out.shape}")
        return out

    def __call__(self, f):
        values = f.array() if isinstance(f, LFuzzySet) else np.asarray(f)
        return self.evaluate(values[None, :])[0]


def identity_system(universe, lattice, kind="upper-theta", negator=None):
    onto = {x: x for x in universe.points}
    return TransformationSystem(universe, universe.points, onto, lambda b: b.copy(), kind, lattice, negator, "identity")


def system_from_partition(partition, kind, connective, negator=None):
    """The operator f -> direct_transform(kind, partition, connective, f), batched."""
    if kind not in DIRECT_KINDS:
        raise KindMismatch(f"unknown system kind {kind!r}")
    conn_kind, use_join, needs_negator = DIRECT_KINDS[kind]
    if connective.kind != conn_kind:
        raise KindMismatch(f"{kind} systems need a {conn_kind}, got a {connective.kind}")
    if connective.lattice != partition.lattice:
        raise CarrierMismatch("connective and partition live on different carriers")
    if needs_negator and negator is None:
        raise MissingNegator(f"{kind} systems need a negator")
    lattice = partition.lattice
    a = partition.matrix if not needs_negator else negator.array(partition.matrix)

    def operator(batch):
        return fold(lattice, connective.array(a[None, :, :], batch[:, None, :]), 2, use_join)

    return TransformationSystem(
        partition.universe, partition.labels, partition.index_map, operator, kind, lattice,
        negator, f"{kind}[{connective.name}]",
    )


def _unit_rows(sys, value_at, value_else):
    n = len(sys.universe)
    dtype = np.int64 if sys.lattice.is_finite else float
    rows = np.full((n, n), value_else, dtype=dtype)
    np.fill_diagonal(rows, value_at)
    return rows


def partition_from_system(sys, negator=None):
    """Recover the partition behind a system by probing it with point-supported sets.

    upper-theta:       A_y(x) = U[1_{x}](y)
    lower-eta:         A_y(x) = N(H[N(1_{x})](y))
    upper-coresidual:  A_y(x) = N(join {c : U[c at x, 0 elsewhere](y) = 0})
    lower-residual:    A_y(x) = meet {c : H[c at x, 1 elsewhere](y) = 1}

    The last two probes coincide with the single-probe formulas whenever the
    induced negator is involutive, and stay exact without that assumption.
    """
    lat = sys.lattice
    negator = negator or sys.negator
    n_x, n_y = len(sys.universe), len(sys.index_labels)
    if sys.kind == "upper-theta":
        members = sys.evaluate(_unit_rows(sys, lat.top, lat.bottom)).T
    elif sys.kind == "lower-eta":
        if negator is None:
            raise MissingNegator("extracting a lower-eta partition needs a negator")
        probe = negator.array(_unit_rows(sys, lat.top, lat.bottom))
        members = negator.array(sys.evaluate(probe)).T
    else:
        upper = sys.kind == "upper-coresidual"
        if upper and negator is None:
            raise MissingNegator("extracting an upper-coresidual partition needs a negator")
        levels = lat.sample()
        target = lat.bottom if upper else lat.top
        dtype = np.int64 if lat.is_finite else float
        members = np.empty((n_y, n_x), dtype=dtype)
        for x in range(n_x):
            rows = np.full((len(levels), n_x), target, dtype=dtype)
            rows[:, x] = levels
            hit = lat.veq(sys.evaluate(rows), target)
            for y in range(n_y):
                chosen = levels[hit[:, y]]
                if upper:
                    members[y, x] = negator(lat.join_of(chosen.tolist(), strict=False))
                else:
                    members[y, x] = lat.meet_of(chosen.tolist(), strict=False)
    try:
        part = validate_partition(
            {y: LFuzzySet(sys.universe, lat, tuple(row.tolist())) for y, row in zip(sys.index_labels, members)}
        )
    except LatticeFTError as exc:
        raise ExtractionNotPartition(f"probed members do not form a partition: {exc}") from None
    if part.index_map != sys.onto_map:
        raise ExtractionNotPartition("cores of the probed members disagree with the onto map")
    return part


def _family_pairs(m, budget, rng, size):
    if size == 2 and m * (m - 1) // 2 <= budget:
        i, j = np.triu_indices(m, 1)
        return np.stack([i, j], axis=1), True
    return rng.integers(0, m, size=(budget, size)), False


def _system_report(sys, connective, negator, budget, seed, upper):
    lat = sys.lattice
    fam, exhaustive = fuzzy_set_matrix(lat, len(sys.universe), budget, seed)
    rng = np.random.default_rng(seed)
    combine = lat.vjoin if upper else lat.vmeet
    word = "join" if upper else "meet"
    chk = _Checker(lat, f"{'upper' if upper else 'lower'} system {sys.name}")
    outs = sys.evaluate(fam)

    def rows_equal(a, b):
        return lat.veq(a, b).all(axis=-1)

    # (i) join / meet preservation on pairs and triples
    for size in (2, 3):
        idx, full = _family_pairs(len(fam), budget if size == 2 else max(1, budget // 4), rng, size)
        if size == 2:
            exhaustive = exhaustive and full
        merged = fam[idx[:, 0]]
        expected = outs[idx[:, 0]]
        for k in range(1, size):
            merged = combine(merged, fam[idx[:, k]])
            expected = combine(expected, outs[idx[:, k]])
        ok = rows_equal(sys.evaluate(merged), expected)
        chk.checked += len(ok)
        for r in np.flatnonzero(~ok):
            chk._add(f"i-{word}", tuple(tuple(fam[t].tolist()) for t in idx[r]))

    def preserves(*fs):
        fs = [np.asarray(f) for f in fs]
        merged = fs[0]
        for f in fs[1:]:
            merged = combine(merged, f)
        expected = sys(fs[0])
        for f in fs[1:]:
            expected = combine(expected, sys(f))
        return bool(lat.veq(sys(merged), expected).all())

    chk.predicates[f"i-{word}"] = ("points", preserves)

    # (ii) compatibility with constants
    def commutes(c, f):
        f = np.asarray(f)
        return bool(lat.veq(sys(connective.array(c, f)), connective.array(c, sys(f))).all())

    chk.predicates["ii"] = ("points", commutes)
    for c in lat.sample():
        ok = rows_equal(sys.evaluate(connective.array(c, fam)), connective.array(c, outs))
        chk.checked += len(ok)
        for r in np.flatnonzero(~ok):
            chk._add("ii", (c.item(), tuple(fam[r].tolist())))

    # (iii) point probes single out the image of each point
    ys = np.array([sys.index_labels.index(sys.onto_map[x]) for x in sys.universe.points])
    probes = _unit_rows(sys, lat.top, lat.bottom)
    if upper:
        seen = sys.evaluate(probes)
    else:
        seen = negator.array(sys.evaluate(negator.array(probes)))
    expect = ys[:, None] == np.arange(len(sys.index_labels))[None, :]
    ok = lat.veq(seen, lat.top) == expect
    chk.checked += ok.size

    def singles_out(x, y):
        xi = sys.universe.index(str(x))
        yi = sys.index_labels.index(str(y))
        return bool(ok_at(xi, yi))

    def ok_at(xi, yi):
        probe = probes[xi]
        value = sys(probe)[yi] if upper else negator(sys(negator.array(probe))[yi])
        return bool(lat.eq(value, lat.top)) == (sys.onto_map[sys.universe.points[xi]] == sys.index_labels[yi])

    chk.predicates["iii"] = ("points", singles_out)
    for xi, yi in np.argwhere(~ok):
        chk._add("iii", (sys.universe.points[xi], sys.index_labels[yi]))
    report = chk.report(flags={"family_size": len(fam), "seed": seed})
    report.coverage = "exhaustive" if exhaustive else f"sampled evidence (seed {seed})"
    return report


def validate_upper_system(sys, lattice, connective, budget=4096, seed=0):
    """Check join preservation, constant compatibility and point probes for an upper system."""
    if sys.kind not in UPPER_KINDS:
        raise KindMismatch(f"{sys.kind} is not an upper system kind")
    if lattice != sys.lattice or connective.lattice != lattice:
        raise CarrierMismatch("system, connective and lattice must share a carrier")
    return _system_report(sys, connective, None, budget, seed, upper=True)


def validate_lower_system(sys, lattice, connective, negator=None, budget=4096, seed=0):
    """Order dual of :func:`validate_upper_system`; the probe uses ``negator``.

    Without an explicit negator a lower-residual system is probed with the
    negator induced by ``connective`` and a lower-eta system with its own.
    """
    if sys.kind not in LOWER_KINDS:
        raise KindMismatch(f"{sys.kind} is not a lower system kind")
    if lattice != sys.lattice or connective.lattice != lattice:
        raise CarrierMismatch("system, connective and lattice must share a carrier")
    if negator is None:
        negator = induced_negator(connective) if sys.kind == "lower-residual" else sys.negator
    if negator is None:
        raise MissingNegator("lower systems are probed through a negator")
    return _system_report(sys, connective, negator, budget, seed, upper=False)


def validate_system(sys, connective, negator=None, budget=4096, seed=0):
    if sys.is_upper:
        return validate_upper_system(sys, sys.lattice, connective, budget, seed)
    return validate_lower_system(sys, sys.lattice, connective, negator, budget, seed)


def check_system_duality(upper_sys, lower_sys, negator, budget=4096, seed=0):
    """U[f] = N(H[N f]) and H[f] = N(U[N f]); if both hold, the probed partitions must agree."""
    lat = upper_sys.lattice
    chk = _Checker(lat, f"duality of {upper_sys.name} and {lower_sys.name} under {negator.name}")
    if upper_sys.universe != lower_sys.universe or upper_sys.index_labels != lower_sys.index_labels:
        raise CarrierMismatch("the systems must share X and Y")
    if not negator.is_involutive:
        report = chk.report()
        report.skipped.append(f"negator {negator.name} is not involutive")
        return report
    fam, exhaustive = fuzzy_set_matrix(lat, len(upper_sys.universe), budget, seed)
    n = negator.array
    for axiom, lhs, rhs in (
        ("U = N H N", upper_sys.evaluate(fam), n(lower_sys.evaluate(n(fam)))),
        ("H = N U N", lower_sys.evaluate(fam), n(upper_sys.evaluate(n(fam)))),
    ):
        ok = lat.veq(lhs, rhs).all(axis=1)
        chk.checked += len(ok)
        for r in np.flatnonzero(~ok):
            chk._add(axiom, (tuple(fam[r].tolist()),))
    chk.predicates["U = N H N"] = (
        "points", lambda f: bool(lat.veq(upper_sys(f), n(lower_sys(n(np.asarray(f))))).all())
    )
    chk.predicates["H = N U N"] = (
        "points", lambda f: bool(lat.veq(lower_sys(f), n(upper_sys(n(np.asarray(f))))).all())
    )
    notes = []
    if not chk.total:
        try:
            same = partition_from_system(upper_sys) == partition_from_system(lower_sys)
        except ExtractionNotPartition as exc:
            notes.append(f"partition comparison unavailable: {exc}")
        else:
            chk.checked += 1
            if not same:
                chk._add("shared partition", ())
            chk.predicates["shared partition"] = (
                "points", lambda: partition_from_system(upper_sys) == partition_from_system(lower_sys)
            )
    report = chk.report(notes=notes)
    report.coverage = "exhaustive" if exhaustive else f"sampled evidence (seed {seed})"
    return report


def singleton_decomposition_check(lattice, theta, eta, negator, i_theta=None, i_eta=None, universe=None,
                                  budget=4096, seed=0):
    """Rebuild every f from point-supported pieces in the four ways the theory allows.

    Clause (i) needs neutral elements (1 for theta, 0 for eta); clause (ii)
    needs the implicators' induced negators to be involutive.  Clauses whose
    hypotheses fail are listed in ``report.skipped``.
    """
    from .connectives import connective_properties
    from .partitions import Universe

    universe = universe or Universe.of_size(2)
    n_x = len(universe)
    fam, exhaustive = fuzzy_set_matrix(lattice, n_x, budget, seed)
    eye = np.eye(n_x, dtype=bool)
    one_x = np.where(eye, lattice.top, lattice.bottom)  # row x is 1_{x}
    chk = _Checker(lattice, "singleton decomposition")
    skipped = []

    def run(axiom, rebuild):
        # rebuild maps a batch (m, |X|) to the reconstructed batch
        ok = lattice.veq(rebuild(fam), fam).all(axis=1)
        chk.checked += len(ok)
        for r in np.flatnonzero(~ok):
            chk._add(axiom, (tuple(fam[r].tolist()),))
        chk.predicates[axiom] = ("points", lambda f: bool(lattice.veq(rebuild(np.asarray(f)[None, :])[0], f).all()))

    def pieces(conn, first, second, use_join):
        # fold over x of conn(first[:, x] broadcast, second[x, :])
        def rebuild(batch):
            vals = conn.array(first(batch)[:, :, None], second[None, :, :])
            return fold(lattice, vals, 1, use_join)
        return rebuild

    neutral = connective_properties(theta)["has_neutral"] and connective_properties(eta)["has_neutral"]
    if neutral:
        run("i-theta", pieces(theta, lambda b: b, one_x, True))
        run("i-eta", pieces(eta, lambda b: b, negator.array(one_x), False))
    else:
        skipped.append("clause (i): theta needs neutral 1 and eta neutral 0")
    if i_theta is not None and i_eta is not None:
        n_eta, n_theta = induced_negator(i_eta), induced_negator(i_theta)
        if n_eta.is_involutive and n_theta.is_involutive:
            run("ii-I_eta", pieces(i_eta, n_eta.array, one_x, True))
            run("ii-I_theta", pieces(i_theta, n_theta.array, n_theta.array(one_x), False))
        else:
            skipped.append("clause (ii): induced negators are not involutive")
    else:
        skipped.append("clause (ii): no implicators supplied")
    report = chk.report()
    report.skipped.extend(skipped)
    report.coverage = "exhaustive" if exhaustive else f"sampled evidence (seed {seed})"
    return report
