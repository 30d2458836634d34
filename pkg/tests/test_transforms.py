import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from lattice_ft import (
    LFuzzySet,
    UnitIntervalLattice,
    Universe,
    block_partition,
    closed_form,
    constant_set,
    derive_coresidual,
    derive_residual,
    direct_transform,
    equal_blocks,
    figure1_lattice,
    inverse_transform,
    standard_negator,
)
from lattice_ft import worked
from lattice_ft.cli import run_data_path
from lattice_ft.errors import CarrierMismatch, KindMismatch, MissingNegator
from lattice_ft.transforms import result_from_json

FIG1 = figure1_lattice()
UNIT = UnitIntervalLattice()
SLOT = {"upper-theta": "theta", "lower-eta": "eta", "upper-coresidual": "i_eta", "lower-residual": "i_theta"}
INVERSE_SLOT = {"upper-theta": "i_theta", "lower-residual": "theta", "upper-coresidual": "eta", "lower-eta": "i_eta"}


def unit_conns(overlap, grouping):
    theta, eta = closed_form(overlap, UNIT), closed_form(grouping, UNIT)
    return {"theta": theta, "eta": eta, "i_theta": derive_residual(theta), "i_eta": derive_coresidual(eta)}


def test_worked_example_components():
    part = worked.example_partition(FIG1)
    neg = worked.example_negator(FIG1)
    f = worked.example_signal(FIG1)
    conns = worked.example_connectives(FIG1, literal_coresidual=True)
    got = {k: direct_transform(k, part, conns[s], f, neg).component_labels() for k, s in SLOT.items()}
    assert got == {
        "upper-theta": ["q", "u", "u"],
        "lower-eta": ["p", "p", "r"],
        "upper-coresidual": ["u", "r", "u"],
        "lower-residual": ["p", "p", "p"],
    }


@pytest.mark.parametrize("literal", [True, False])
def test_worked_example_against_the_fold_oracle(literal):
    part = worked.example_partition(FIG1)
    neg = worked.example_negator(FIG1)
    f = worked.example_signal(FIG1)
    conns = worked.example_connectives(FIG1, literal_coresidual=literal)
    le, members = FIG1.leq.tolist(), part.matrix.tolist()
    for kind, slot in SLOT.items():
        comps = direct_transform(kind, part, conns[slot], f, neg)
        assert list(comps.components) == oracles.direct(
            le, kind, conns[slot].table.tolist(), members, list(f.values), neg.table.tolist()
        )
        inv = conns[INVERSE_SLOT[kind]]
        rec = inverse_transform(comps, part, inv, neg)
        assert list(rec.values) == oracles.inverse(le, kind, inv.table.tolist(), members, list(comps.components), neg.table.tolist())


def test_errors():
    part = worked.example_partition(FIG1)
    conns = worked.example_connectives(FIG1)
    f = worked.example_signal(FIG1)
    with pytest.raises(KindMismatch):
        direct_transform("upper-theta", part, conns["eta"], f)
    with pytest.raises(MissingNegator):
        direct_transform("lower-eta", part, conns["eta"], f)
    with pytest.raises(KindMismatch):
        direct_transform("sideways", part, conns["theta"], f)
    with pytest.raises(CarrierMismatch):
        direct_transform("upper-theta", part, conns["theta"], LFuzzySet(Universe.of_size(2), FIG1, (0, 0)))
    comps = direct_transform("upper-theta", part, conns["theta"], f)
    with pytest.raises(KindMismatch):
        inverse_transform(comps, part, conns["theta"])


def test_components_json_round_trip():
    part = worked.example_partition(FIG1)
    comps = direct_transform("upper-theta", part, worked.example_connectives(FIG1)["theta"], worked.example_signal(FIG1))
    again = result_from_json(json.loads(json.dumps(comps.to_json())), FIG1)
    assert again == comps


def test_constant_signal_with_neutral_elements():
    comps, recon, summary, _ = run_data_path(np.full(64, 0.5), "upper-theta", 4)
    assert comps.components == (0.5,) * 4
    assert (recon == 0.5).all() and summary["sandwich"]


def test_ramp_components_match_the_unit_fold_oracle():
    ramp = np.linspace(0, 1, 64)
    comps, recon, summary, part = run_data_path(ramp, "upper-theta", 8)
    want = oracles.unit_direct("upper-theta", closed_form("theta_M", UNIT), part.matrix.tolist(), ramp.tolist())
    assert list(comps.components) == want
    assert (recon >= ramp - 1e-9).all() and summary["sandwich"]
    # with crisp blocks the upper component is the block maximum
    crisp = block_partition(Universe.of_size(64), UNIT, equal_blocks(64, 8))
    top = direct_transform("upper-theta", crisp, closed_form("theta_M", UNIT), ramp)
    assert list(top.components) == [ramp[8 * j + 7] for j in range(8)]


@st.composite
def unit_signals(draw):
    n = draw(st.integers(2, 12))
    f = draw(st.lists(st.floats(0, 1), min_size=n, max_size=n))
    blocks = draw(st.integers(1, n))
    width = draw(st.one_of(st.none(), st.floats(0.5, 5)))
    return np.array(f), blocks, width


@given(unit_signals(), st.sampled_from([("theta_M", "eta_M"), ("product", "probsum")]))
def test_unit_sandwich_and_stability(signal, pair):
    f, blocks, width = signal
    conns = unit_conns(*pair)
    neg = standard_negator(UNIT)
    u = Universe.of_size(len(f))
    part = block_partition(u, UNIT, equal_blocks(len(f), blocks), width=width)
    rec = {}
    for kind in SLOT:
        comps = direct_transform(kind, part, conns[SLOT[kind]], f, neg)
        rec[kind] = inverse_transform(comps, part, conns[INVERSE_SLOT[kind]], neg, as_array=True)
        again = direct_transform(kind, part, conns[SLOT[kind]], rec[kind], neg)
        assert np.allclose(again.components, comps.components, atol=1e-9)
    assert UNIT.vle(rec["lower-residual"], f).all() and UNIT.vle(f, rec["upper-theta"]).all()
    assert UNIT.vle(rec["lower-eta"], f).all() and UNIT.vle(f, rec["upper-coresidual"]).all()


@given(st.lists(st.floats(0, 1), min_size=3, max_size=3), st.sampled_from(["theta_M", "product"]))
def test_unit_transforms_match_the_oracle(f, overlap):
    conns = unit_conns(overlap, "eta_M" if overlap == "theta_M" else "probsum")
    neg = standard_negator(UNIT)
    part = block_partition(Universe.of_size(3), UNIT, [[0], [1, 2]], width=2.0)
    for kind, slot in SLOT.items():
        got = direct_transform(kind, part, conns[slot], np.array(f), neg)
        assert list(got.components) == oracles.unit_direct(kind, conns[slot], part.matrix.tolist(), f, neg)


def test_constant_sets_pass_through():
    part = worked.example_partition(FIG1)
    conns = worked.example_connectives(FIG1, literal_coresidual=False)
    for e in FIG1.elements:
        comps = direct_transform("upper-theta", part, conns["theta"], constant_set(part.universe, FIG1, e))
        assert comps.components == (e,) * 3
