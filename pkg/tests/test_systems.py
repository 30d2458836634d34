import numpy as np
import pytest

from lattice_ft import (
    TransformationSystem,
    Universe,
    block_partition,
    chain,
    chain_reversal,
    check_system_duality,
    closed_form,
    derive_coresidual,
    derive_residual,
    figure1_lattice,
    partition_from_system,
    singleton_decomposition_check,
    system_from_partition,
    validate_system,
)
from lattice_ft import worked
from lattice_ft.errors import ExtractionNotPartition, KindMismatch, MissingNegator
from lattice_ft.lawcheck import comparison_partitions
from lattice_ft.systems import identity_system

FIG1 = figure1_lattice()
CONNS = worked.example_connectives(FIG1, literal_coresidual=False)
NEG = worked.example_negator(FIG1)
PART = worked.example_partition(FIG1)
SLOT = {"upper-theta": "theta", "lower-eta": "eta", "upper-coresidual": "i_eta", "lower-residual": "i_theta"}


@pytest.mark.parametrize("kind", ["upper-theta", "lower-eta"])
def test_partition_systems_validate(kind):
    sys = system_from_partition(PART, kind, CONNS[SLOT[kind]], NEG)
    report = validate_system(sys, CONNS[SLOT[kind]], NEG)
    assert report.passed and report.flags["family_size"] == 512


@pytest.mark.parametrize("kind", ["upper-coresidual", "lower-residual"])
def test_implicator_systems_validate_on_the_boolean_chain(kind):
    # the implicator kinds need EP and involutive induced negators, which a
    # two-element chain has and figure1 lacks
    lat = chain(2)
    theta, eta = closed_form("theta_M", lat), closed_form("eta_M", lat)
    conns = {"i_theta": derive_residual(theta), "i_eta": derive_coresidual(eta)}
    part = block_partition(Universe.of_size(3), lat, [[0, 1], [2]])
    sys = system_from_partition(part, kind, conns[SLOT[kind]], chain_reversal(lat))
    assert validate_system(sys, conns[SLOT[kind]], chain_reversal(lat)).passed


def test_implicator_systems_fail_on_figure1():
    sys = system_from_partition(PART, "upper-coresidual", CONNS["i_eta"], NEG)
    assert validate_system(sys, CONNS["i_eta"], NEG).status == "failed"


@pytest.mark.parametrize("kind", list(SLOT))
def test_extraction_recovers_the_partition(kind):
    sys = system_from_partition(PART, kind, CONNS[SLOT[kind]], NEG)
    assert partition_from_system(sys, NEG) == PART


def test_identity_system_is_the_crisp_partition():
    sys = identity_system(PART.universe, FIG1)
    assert validate_system(sys, CONNS["theta"]).passed
    assert partition_from_system(sys).matrix.tolist() == np.where(np.eye(3, dtype=bool), FIG1.top, FIG1.bottom).tolist()


def test_a_constant_operator_is_not_a_system():
    top = FIG1.top
    sys = TransformationSystem.from_function(
        PART.universe, ["y"], {x: "y" for x in PART.universe.points}, lambda f: (top,), "upper-theta", FIG1,
    )
    report = validate_system(sys, CONNS["theta"])
    assert report.status == "failed"
    assert all(not report.replay(v) for v in report.violations[:5])


def test_extraction_rejects_non_partitions():
    sys = TransformationSystem(
        PART.universe, PART.labels, PART.index_map,
        lambda batch: np.zeros((len(batch), 3), dtype=np.int64), "upper-theta", FIG1,
    )
    with pytest.raises(ExtractionNotPartition):
        partition_from_system(sys)


def test_system_construction_errors():
    with pytest.raises(KindMismatch):
        system_from_partition(PART, "upper-theta", CONNS["eta"])
    with pytest.raises(MissingNegator):
        system_from_partition(PART, "lower-eta", CONNS["eta"])


def test_duality_of_matched_systems():
    upper = system_from_partition(PART, "upper-theta", CONNS["theta"], NEG)
    lower = system_from_partition(PART, "lower-eta", CONNS["eta"], NEG)
    assert check_system_duality(upper, lower, NEG).passed
    # raising one off-core value breaks the duality
    other = system_from_partition(comparison_partitions(PART)[0], "lower-eta", CONNS["eta"], NEG)
    assert check_system_duality(upper, other, NEG).status == "failed"


def test_duality_needs_an_involutive_negator():
    strong = type(NEG)(FIG1, table=[FIG1.top] + [FIG1.bottom] * 7, name="strong")
    upper = system_from_partition(PART, "upper-theta", CONNS["theta"], NEG)
    lower = system_from_partition(PART, "lower-eta", CONNS["eta"], NEG)
    report = check_system_duality(upper, lower, strong)
    assert report.status == "hypothesis-not-met"


def test_singleton_decomposition():
    report = singleton_decomposition_check(
        FIG1, CONNS["theta"], CONNS["eta"], NEG, CONNS["i_theta"], CONNS["i_eta"], Universe.of_size(3)
    )
    assert report.passed
    # the induced negators of meet/join on figure1 are not involutive
    assert report.skipped == ["clause (ii): induced negators are not involutive"]
    lat = chain(2)
    theta, eta = closed_form("theta_M", lat), closed_form("eta_M", lat)
    full = singleton_decomposition_check(lat, theta, eta, chain_reversal(lat), derive_residual(theta), derive_coresidual(eta))
    assert full.passed and not full.skipped
