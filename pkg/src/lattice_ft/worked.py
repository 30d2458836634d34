"""The eight-element worked example: structures, published values, and a replay.

The setting is the ``figure1`` lattice with the meet/join connectives, the
involution 0<->1, p<->u, q<->t, r<->s, a three-point universe, and the
partition A1=(1,p,q), A2=(s,1,u), A3=(s,p,1) applied to f=(p,q,u).

The co-residual implicator used for the published numbers is the literal
closed form ``0 if u <= v else u`` (``paper-ex22-coresidual``), which is not
the meet-of-set implicator derived from the join; the residual implicator is
the derived one.  One published direct component (lower-eta, A2) disagrees
with the definition; it is listed in :data:`KNOWN_DISCREPANCIES`.
"""
from __future__ import annotations

from .connectives import closed_form, derive_coresidual, derive_residual, negator_from_labels
from .lattice import figure1_lattice
from .partitions import LFuzzySet, Universe, validate_partition
from .transforms import DirectTransformResult, direct_transform, inverse_transform

__all__ = [
    "INVOLUTION",
    "PUBLISHED_DIRECT",
    "PUBLISHED_INVERSE",
    "KNOWN_DISCREPANCIES",
    "example_negator",
    "example_partition",
    "example_signal",
    "example_connectives",
    "replay_direct",
    "replay_inverse",
]

INVOLUTION = {"0": "1", "p": "u", "q": "t", "r": "s", "s": "r", "t": "q", "u": "p", "1": "0"}
MEMBERS = {"A1": ["1", "p", "q"], "A2": ["s", "1", "u"], "A3": ["s", "p", "1"]}
SIGNAL = ["p", "q", "u"]

PUBLISHED_DIRECT = {
    "upper-theta": ["q", "u", "u"],
    "lower-eta": ["p", "r", "r"],
    "upper-coresidual": ["u", "r", "u"],
    "lower-residual": ["p", "p", "p"],
}

# keyed by the direct kind whose components feed the inverse
PUBLISHED_INVERSE = {
    "upper-theta": ["q", "u", "u"],
    "lower-residual": ["p", "p", "p"],
    "upper-coresidual": ["r", "r", "r"],
    "lower-eta": ["0", "u", "t"],
}

KNOWN_DISCREPANCIES = {("lower-eta", "A2")}


def example_negator(lattice=None):
    lattice = lattice or figure1_lattice()
    return negator_from_labels(lattice, INVOLUTION, name="involution")


def example_partition(lattice=None):
    lattice = lattice or figure1_lattice()
    universe = Universe(["x1", "x2", "x3"])
    return validate_partition({j: LFuzzySet.from_labels(universe, lattice, v) for j, v in MEMBERS.items()})


def example_signal(lattice=None, universe=None):
    lattice = lattice or figure1_lattice()
    universe = universe or Universe(["x1", "x2", "x3"])
    return LFuzzySet.from_labels(universe, lattice, SIGNAL)


def example_connectives(lattice=None, literal_coresidual=True):
    """Connectives keyed by the direct kind they serve, plus the inverse ones."""
    lattice = lattice or figure1_lattice()
    theta = closed_form("theta_M", lattice)
    eta = closed_form("eta_M", lattice)
    i_theta = derive_residual(theta)
    i_eta = closed_form("paper-ex22-coresidual", lattice) if literal_coresidual else derive_coresidual(eta)
    return {"theta": theta, "eta": eta, "i_theta": i_theta, "i_eta": i_eta}


def _direct_slots(conns):
    return {
        "upper-theta": conns["theta"],
        "lower-eta": conns["eta"],
        "upper-coresidual": conns["i_eta"],
        "lower-residual": conns["i_theta"],
    }


def _inverse_slots(conns):
    return {
        "upper-theta": conns["i_theta"],
        "lower-residual": conns["theta"],
        "upper-coresidual": conns["eta"],
        "lower-eta": conns["i_eta"],
    }


def _status(kind, label, published, computed):
    if published == computed:
        return "match"
    if (kind, label) in KNOWN_DISCREPANCIES:
        return "known-discrepancy"
    return "mismatch"


def replay_direct(lattice=None):
    """Rows (kind, member, published, computed, status) for all 12 direct components."""
    lattice = lattice or figure1_lattice()
    part = example_partition(lattice)
    neg = example_negator(lattice)
    f = example_signal(lattice, part.universe)
    rows = []
    for kind, conn in _direct_slots(example_connectives(lattice)).items():
        res = direct_transform(kind, part, conn, f, neg)
        for label, pub, got in zip(res.labels, PUBLISHED_DIRECT[kind], res.component_labels()):
            rows.append((kind, label, pub, got, _status(kind, label, pub, got)))
    return rows


def replay_inverse(lattice=None):
    """Rows (kind, point, published, computed, status) for all 12 inverse values.

    The inputs are the published direct components, not recomputed ones.
    """
    lattice = lattice or figure1_lattice()
    part = example_partition(lattice)
    neg = example_negator(lattice)
    rows = []
    for kind, conn in _inverse_slots(example_connectives(lattice)).items():
        comps = DirectTransformResult(
            kind, part.labels, tuple(lattice.index(v) for v in PUBLISHED_DIRECT[kind]), lattice
        )
        rec = inverse_transform(comps, part, conn, neg)
        for point, pub, got in zip(part.universe, PUBLISHED_INVERSE[kind], rec.labels()):
            rows.append((kind, point, pub, got, _status(kind, point, pub, got)))
    return rows
