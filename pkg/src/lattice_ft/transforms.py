"""The four direct F-transforms and their matched inverses.

Direct components, for a partition {A_j} and f in L^X:

    upper-theta       F_j = join_x theta(A_j(x), f(x))
    lower-eta         F_j = meet_x eta(N(A_j(x)), f(x))
    upper-coresidual  F_j = join_x I_eta(N(A_j(x)), f(x))
    lower-residual    F_j = meet_x I_theta(A_j(x), f(x))

Each direct kind has one inverse that folds over j instead of x:

    upper-theta       -> meet_j I_theta(A_j(x), F_j)
    lower-residual    -> join_j theta(A_j(x), F_j)
    upper-coresidual  -> meet_j eta(N(A_j(x)), F_j)
    lower-eta         -> join_j I_eta(N(A_j(x)), F_j)
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CarrierMismatch, KindMismatch, MissingNegator, ParseError
from .partitions import LFuzzySet

__all__ = [
    "DIRECT_KINDS",
    "INVERSE_KINDS",
    "DirectTransformResult",
    "direct_transform",
    "inverse_transform",
    "result_from_json",
    "fold",
]

# kind -> (connective kind, folds with join?, needs negator?)
DIRECT_KINDS = {
    "upper-theta": ("overlap", True, False),
    "lower-eta": ("grouping", False, True),
    "upper-coresidual": ("co-residual-implicator", True, True),
    "lower-residual": ("residual-implicator", False, False),
}

# direct kind -> (inverse name, connective kind, folds with join?)
INVERSE_KINDS = {
    "upper-theta": ("inverse-upper-residual", "residual-implicator", False),
    "lower-residual": ("inverse-lower-overlap", "overlap", True),
    "upper-coresidual": ("inverse-upper-grouping", "grouping", False),
    "lower-eta": ("inverse-lower-coresidual", "co-residual-implicator", True),
}


def fold(lattice, values, axis, use_join):
    """Join (or meet) a 2-d array of elements along ``axis``."""
    values = np.asarray(values)
    if not lattice.is_finite:
        return values.max(axis=axis) if use_join else values.min(axis=axis)
    table = lattice.join_table if use_join else lattice.meet_table
    values = np.moveaxis(values, axis, 0)
    acc = values[0]
    for row in values[1:]:
        acc = table[acc, row]
    return acc


@dataclass(frozen=True)
class DirectTransformResult:
    kind: str
    labels: tuple
    components: tuple
    lattice: object = field(repr=False, compare=False)
    provenance: dict = field(default_factory=dict, repr=False, compare=False)

    def __getitem__(self, label):
        return self.components[self.labels.index(label)]

    def component_labels(self):
        return [self.lattice.label(c) for c in self.components]

    def array(self):
        dtype = np.int64 if self.lattice.is_finite else float
        return np.array(self.components, dtype=dtype)

    def to_json(self):
        return {"kind": self.kind, "components": dict(zip(self.labels, self.component_labels()))}


def result_from_json(data, lattice, source=None):
    if not isinstance(data, dict) or data.get("kind") not in DIRECT_KINDS or "components" not in data:
        raise ParseError("components JSON needs a direct 'kind' and 'components'", source=source)
    comps = data["components"]
    labels = tuple(comps)
    if lattice.is_finite:
        values = tuple(lattice.index(v) for v in comps.values())
    else:
        values = tuple(lattice.check_element(v) for v in comps.values())
    return DirectTransformResult(data["kind"], labels, values, lattice)


def _check(partition, connective, negator, wanted_kind, needs_negator):
    if connective.kind != wanted_kind:
        raise KindMismatch(f"this transform needs a {wanted_kind}, got a {connective.kind}")
    if connective.lattice != partition.lattice:
        raise CarrierMismatch("connective and partition live on different carriers")
    if needs_negator:
        if negator is None:
            raise MissingNegator("this transform needs a negator")
        if negator.lattice != partition.lattice:
            raise CarrierMismatch("negator and partition live on different carriers")


def _values_of(f, partition):
    if isinstance(f, LFuzzySet):
        if f.universe != partition.universe:
            raise CarrierMismatch("f and the partition have different universes")
        if f.lattice != partition.lattice:
            raise CarrierMismatch("f and the partition live on different carriers")
        return f.array()
    values = np.asarray(f)
    if values.shape != (len(partition.universe),):
        raise CarrierMismatch(f"f has shape {values.shape}, expected {(len(partition.universe),)}")
    return values


def direct_transform(kind, partition, connective, f, negator=None):
    """Components of ``f`` over ``partition``, one per member, in member order."""
    if kind not in DIRECT_KINDS:
        raise KindMismatch(f"unknown direct transform kind {kind!r}")
    conn_kind, use_join, needs_negator = DIRECT_KINDS[kind]
    _check(partition, connective, negator, conn_kind, needs_negator)
    values = _values_of(f, partition)
    a = partition.matrix
    if needs_negator:
        a = negator.array(a)
    comps = fold(partition.lattice, connective.array(a, values[None, :]), 1, use_join)
    cast = int if partition.lattice.is_finite else float
    return DirectTransformResult(
        kind,
        partition.labels,
        tuple(cast(c) for c in comps),
        partition.lattice,
        {"connective": connective.name, "negator": getattr(negator, "name", None)},
    )


def inverse_transform(components, partition, connective, negator=None, as_array=False):
    """Reconstruct an L-fuzzy set on the partition's universe from direct components."""
    kind = components.kind
    if kind not in INVERSE_KINDS:
        raise KindMismatch(f"unknown direct transform kind {kind!r}")
    _, conn_kind, use_join = INVERSE_KINDS[kind]
    needs_negator = DIRECT_KINDS[kind][2]
    _check(partition, connective, negator, conn_kind, needs_negator)
    if tuple(components.labels) != partition.labels:
        raise CarrierMismatch("components do not match the partition's members")
    a = partition.matrix
    if needs_negator:
        a = negator.array(a)
    comps = components.array()
    values = fold(partition.lattice, connective.array(a, comps[:, None]), 0, use_join)
    if as_array:
        return values
    return LFuzzySet(partition.universe, partition.lattice, tuple(values.tolist()))
