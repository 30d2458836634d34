"""Exhaustive or seeded enumeration of L-fuzzy sets on a finite universe."""
from __future__ import annotations

import numpy as np

from .partitions import LFuzzySet

__all__ = ["fuzzy_set_matrix", "enumerate_fuzzy_sets", "UNIT_LEVELS"]

# grid used as the element set of [0, 1] when enumerating
UNIT_LEVELS = 11


def fuzzy_set_matrix(lattice, n_points, budget=4096, seed=0):
    """Rows are fuzzy sets; returns ``(matrix, exhaustive)``.

    All |L|^n sets in lexicographic order when that count fits the budget,
    otherwise ``budget`` rows drawn uniformly with ``numpy.random.default_rng(seed)``.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    elems = lattice.sample(UNIT_LEVELS)
    k = len(elems)
    if k ** n_points <= budget:
        idx = np.indices((k,) * n_points).reshape(n_points, -1).T
        return elems[idx], True
    rng = np.random.default_rng(seed)
    return elems[rng.integers(0, k, size=(budget, n_points))], False


def enumerate_fuzzy_sets(lattice, universe, budget=4096, seed=0):
    matrix, _ = fuzzy_set_matrix(lattice, len(universe), budget, seed)
    for row in matrix:
        yield LFuzzySet(universe, lattice, tuple(row.tolist()))
