"""Finite universes, L-fuzzy sets on them, and L-fuzzy partitions.

A partition is a family of normal L-fuzzy sets whose cores (points of value
top) split the universe into disjoint blocks.  Off-core values are free.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BlocksInvalid,
    CarrierMismatch,
    CoresDontCover,
    CoresOverlap,
    LatticeFTError,
    NotNormal,
    ParseError,
    UnknownPoint,
)

__all__ = [
    "Universe",
    "LFuzzySet",
    "LFuzzyPartition",
    "characteristic_set",
    "constant_set",
    "core",
    "validate_partition",
    "block_partition",
    "equal_blocks",
    "grid_blocks",
    "profile_partition",
    "partition_from_json",
    "load_partition",
]


class Universe:
    """An ordered, nonempty set of point labels."""

    def __init__(self, points):
        points = tuple(str(p) for p in points)
        if not points:
            raise LatticeFTError("a universe needs at least one point")
        if len(set(points)) != len(points):
            raise LatticeFTError("duplicate point labels")
        self.points = points
        self._index = {p: i for i, p in enumerate(points)}

    @classmethod
    def of_size(cls, n, prefix="x"):
        return cls(f"{prefix}{i + 1}" for i in range(n))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        return isinstance(other, Universe) and other.points == self.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Universe({list(self.points)!r})"

    def index(self, point):
        try:
            return self._index[str(point)]
        except KeyError:
            raise UnknownPoint(f"{point!r} is not a point of the universe") from None


@dataclass(frozen=True, eq=False)
class LFuzzySet:
    """A map from universe points to lattice elements, stored positionally."""

    universe: Universe
    lattice: object
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.universe):
            raise CarrierMismatch(f"{len(self.values)} values for {len(self.universe)} points")
        object.__setattr__(self, "values", tuple(self.lattice.check_element(v) for v in self.values))

    @classmethod
    def from_labels(cls, universe, lattice, labels):
        return cls(universe, lattice, tuple(lattice.index(l) for l in labels))

    def __getitem__(self, point):
        return self.values[self.universe.index(point)]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, LFuzzySet)
            and other.universe == self.universe
            and other.lattice == self.lattice
            and all(self.lattice.eq(a, b) for a, b in zip(self.values, other.values))
        )

    def __hash__(self):
        # real values compare with a tolerance, so only exact carriers hash them
        return hash((self.universe, self.values if self.lattice.is_finite else None))

    def __repr__(self):
        return f"LFuzzySet({self.labels()!r})"

    def labels(self):
        return [self.lattice.label(v) for v in self.values]

    def array(self):
        dtype = np.int64 if self.lattice.is_finite else float
        return np.array(self.values, dtype=dtype)

    def le(self, other):
        return all(self.lattice.le(a, b) for a, b in zip(self.values, other.values))


def characteristic_set(universe, lattice, subset):
    members = {universe.index(p) for p in subset}
    return LFuzzySet(
        universe, lattice, tuple(lattice.top if i in members else lattice.bottom for i in range(len(universe)))
    )


def constant_set(universe, lattice, value):
    return LFuzzySet(universe, lattice, (value,) * len(universe))


def core(fuzzy_set):
    lat = fuzzy_set.lattice
    return frozenset(p for p, v in zip(fuzzy_set.universe, fuzzy_set.values) if lat.eq(v, lat.top))


class LFuzzyPartition:
    """A validated partition; build it through :func:`validate_partition`."""

    def __init__(self, universe, lattice, labels, members, cores, index_map):
        self.universe = universe
        self.lattice = lattice
        self.labels = tuple(labels)
        self.members = tuple(members)
        self.cores = cores
        self.index_map = index_map
        dtype = np.int64 if lattice.is_finite else float
        self.matrix = np.array([m.values for m in self.members], dtype=dtype)
        self.matrix.setflags(write=False)
        self.k = np.array([self.labels.index(index_map[p]) for p in universe.points], dtype=np.int64)
        self.k.setflags(write=False)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, label):
        return self.members[self.labels.index(label)]

    def __eq__(self, other):
        return (
            isinstance(other, LFuzzyPartition)
            and other.universe == self.universe
            and other.lattice == self.lattice
            and other.labels == self.labels
            and other.members == self.members
        )

    def __repr__(self):
        return f"<LFuzzyPartition |J|={len(self)} |X|={len(self.universe)}>"

    def to_json(self):
        return {
            "universe": list(self.universe.points),
            "members": {j: m.labels() for j, m in zip(self.labels, self.members)},
        }


def validate_partition(members, universe=None, lattice=None):
    """Check normality and that cores split the universe; return the partition.

    ``members`` is a mapping ``label -> LFuzzySet`` (or value sequence, when
    ``universe`` and ``lattice`` are given), or a plain list labelled A1, A2, ...
    """
    if not isinstance(members, dict):
        members = {f"A{i + 1}": m for i, m in enumerate(members)}
    if not members:
        raise LatticeFTError("a partition needs at least one member")
    sets = {}
    for label, m in members.items():
        if not isinstance(m, LFuzzySet):
            if universe is None or lattice is None:
                raise LatticeFTError("raw value lists need a universe and a lattice")
            m = LFuzzySet(universe, lattice, tuple(m))
        sets[str(label)] = m
    first = next(iter(sets.values()))
    universe = universe or first.universe
    lattice = lattice or first.lattice
    for m in sets.values():
        if m.universe != universe or m.lattice != lattice:
            raise CarrierMismatch("members live on different universes or carriers")
    cores = {}
    for label, m in sets.items():
        cores[label] = core(m)
        if not cores[label]:
            raise NotNormal(label)
    index_map = {}
    for p in universe.points:
        owners = [label for label in sets if p in cores[label]]
        if len(owners) > 1:
            raise CoresOverlap(p, owners[0], owners[1])
        if not owners:
            raise CoresDontCover(p)
        index_map[p] = owners[0]
    return LFuzzyPartition(universe, lattice, list(sets), list(sets.values()), cores, index_map)


def block_partition(universe, lattice, blocks, spread=None, width=None):
    """Top on each block and ``spread`` (default bottom) elsewhere.

    With ``width`` on the unit interval, off-block values decay as
    max(0, 1 - d/width), where d is the index distance to the nearest point of
    the block.
    """
    index_blocks = []
    seen = set()
    for block in blocks:
        idx = sorted(universe.index(p) if not isinstance(p, (int, np.integer)) else int(p) for p in block)
        if not idx:
            raise BlocksInvalid("empty block")
        if seen.intersection(idx):
            raise BlocksInvalid("blocks overlap")
        seen.update(idx)
        index_blocks.append(idx)
    if seen != set(range(len(universe))):
        raise BlocksInvalid("blocks do not cover the universe")
    if width is not None:
        positions = np.arange(len(universe))
        return profile_partition(universe, lattice, [_decay(positions, b, width) for b in index_blocks])
    spread = lattice.bottom if spread is None else spread
    rows = []
    for idx in index_blocks:
        row = [spread] * len(universe)
        for i in idx:
            row[i] = lattice.top
        rows.append(row)
    return validate_partition([LFuzzySet(universe, lattice, tuple(r)) for r in rows])


def _decay(positions, block, width):
    if width <= 0:
        raise BlocksInvalid("decay width must be positive")
    block = np.asarray(block)
    d = np.abs(positions[:, None] - block[None, :]).min(axis=1)
    return np.clip(1.0 - d / width, 0.0, 1.0)


def profile_partition(universe, lattice, profiles):
    """Partition from real-valued membership rows (unit interval only)."""
    if lattice.is_finite:
        raise CarrierMismatch("decay profiles are real-valued and need the unit interval")
    return validate_partition([LFuzzySet(universe, lattice, tuple(float(v) for v in p)) for p in profiles])


def equal_blocks(n, count):
    """Split indices 0..n-1 into ``count`` contiguous blocks; the remainder joins the last."""
    if not 1 <= count <= n:
        raise BlocksInvalid(f"cannot split {n} points into {count} blocks")
    size = n // count
    blocks = [list(range(i * size, (i + 1) * size)) for i in range(count)]
    blocks[-1].extend(range(count * size, n))
    return blocks


def grid_blocks(shape, count, width=None):
    """Tile an image of ``shape`` into count x count rectangles.

    Returns the index blocks (row-major pixel numbering) and, when ``width`` is
    given, per-block decay profiles using the Chebyshev distance to the tile.
    """
    rows, cols = shape
    row_parts = equal_blocks(rows, count)
    col_parts = equal_blocks(cols, count)
    blocks, profiles = [], []
    r = np.arange(rows)[:, None]
    c = np.arange(cols)[None, :]
    for rp in row_parts:
        for cp in col_parts:
            blocks.append([i * cols + j for i in rp for j in cp])
            if width is not None:
                dr = np.maximum(np.maximum(rp[0] - r, r - rp[-1]), 0)
                dc = np.maximum(np.maximum(cp[0] - c, c - cp[-1]), 0)
                d = np.maximum(dr, dc)
                profiles.append(np.clip(1.0 - d / width, 0.0, 1.0).ravel())
    return blocks, profiles


def partition_from_json(data, lattice, source=None):
    if not isinstance(data, dict) or "universe" not in data or "members" not in data:
        raise ParseError("partition JSON needs 'universe' and 'members'", source=source)
    universe = Universe(data["universe"])
    members = {}
    for label, values in data["members"].items():
        if lattice.is_finite:
            members[label] = LFuzzySet.from_labels(universe, lattice, values)
        else:
            members[label] = LFuzzySet(universe, lattice, tuple(float(v) for v in values))
    return validate_partition(members)


def load_partition(path, lattice):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read partition file: {exc}", source=str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source=str(path)) from None
    return partition_from_json(data, lattice, source=str(path))
