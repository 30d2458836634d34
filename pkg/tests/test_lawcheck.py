import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_ft import (
    LawContext,
    LFuzzySet,
    Negator,
    Universe,
    chain,
    chain_reversal,
    closed_form,
    enumerate_fuzzy_sets,
    figure1_lattice,
    law_ids,
    run_law,
    run_suite,
    suite_json,
    suite_table,
    validate_partition,
)
from lattice_ft.errors import UnknownLaw
from lattice_ft.lawcheck import LAWS, UC, UT, bridge, comparison_partitions, printed_bridge_failures

FIG1 = figure1_lattice()


def strong_negator(lat):
    return Negator(lat, table=[lat.top] + [lat.bottom] * (len(lat) - 1), name="strong")


def test_registry_order_and_size():
    ids = law_ids()
    assert len(ids) == len(LAWS) == 51
    assert ids[:3] == ["C3.1", "C3.2", "D2.i"]
    assert ids.index("P3.9") < ids.index("P3.10") < ids.index("P3.17")
    assert all(LAWS[i].anchor for i in ids)


def test_unknown_law():
    with pytest.raises(UnknownLaw):
        run_law("P9.9", LawContext.figure1())


def test_sandwich_law_is_exhaustive_on_figure1():
    report = run_law("P4.1", LawContext.figure1())
    assert report.status == "passed" and report.coverage == "exhaustive" and report.cases >= 512


def test_duality_laws_are_gated_on_involution():
    ctx = LawContext.figure1()
    gated = LawContext(FIG1, ctx.theta, ctx.eta, strong_negator(FIG1), partition=ctx.partition)
    report = run_law("P3.1", gated)
    assert report.status == "hypothesis-not-met" and report.unmet == ["N is involutive"]


def test_literal_coresidual_breaks_adjointness_with_a_replayable_witness():
    report = run_law("L2.1", LawContext.figure1(literal_coresidual=True))
    assert report.status == "failed"
    clause, witness = report.witness
    assert clause == "eta"
    assert report.replay() is False


def test_every_failed_witness_fails_again():
    ctx = LawContext.figure1(literal_coresidual=True)
    failed = [r for r in run_suite(ctx) if r.status == "failed"]
    assert failed
    for r in failed:
        assert all(r.replay(v) is False for v in r.violations), r.id


def test_clean_context_has_no_failures():
    reports = run_suite(LawContext.figure1())
    statuses = {r.id: r.status for r in reports}
    assert "failed" not in statuses.values()
    assert {i for i, s in statuses.items() if s == "hypothesis-not-met"} == {"P3.5", "P3.6", "P5.2", "P5.4", "P5.7", "P5.8"}


def test_suite_output_is_deterministic():
    first = suite_json(run_suite(LawContext.figure1()), FIG1)
    second = suite_json(run_suite(LawContext.figure1()), FIG1)
    assert first == second
    parsed = json.loads(first)
    assert [r["id"] for r in parsed] == law_ids()


def test_sampled_contexts_are_seeded():
    u = Universe.of_size(6)
    part = validate_partition([LFuzzySet(u, FIG1, (7, 0, 0, 1, 0, 0)), LFuzzySet(u, FIG1, (0, 7, 7, 7, 7, 7))])
    ctx = lambda seed: LawContext(FIG1, closed_form("theta_M", FIG1), closed_form("eta_M", FIG1), strong_negator(FIG1),
                                  partition=part, budget=500, seed=seed)
    a, b = run_law("P4.1", ctx(7)), run_law("P4.1", ctx(7))
    assert a.coverage == "sampled evidence (seed 7)" and a.to_json(FIG1) == b.to_json(FIG1)


def test_enumeration():
    two = list(enumerate_fuzzy_sets(chain(2), Universe.of_size(2), budget=100))
    assert [s.values for s in two] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(list(enumerate_fuzzy_sets(FIG1, Universe.of_size(3), budget=1000))) == 512
    six = Universe.of_size(6)
    run1 = [s.values for s in enumerate_fuzzy_sets(FIG1, six, budget=500, seed=7)]
    run2 = [s.values for s in enumerate_fuzzy_sets(FIG1, six, budget=500, seed=7)]
    assert len(run1) == 500 and run1 == run2


def test_printed_bridge_variant_fails_where_the_derived_one_holds():
    ctx = LawContext.figure1()
    assert printed_bridge_failures(ctx) == {"ii": 511, "iii": 511}
    f = np.array([[0, 0, FIG1.index("p")]])
    target = ctx.direct(UC, f)
    printed = bridge(ctx, f, UT, ctx.ie, True, ctx.ie, target=target)
    derived = bridge(ctx, f, UT, ctx.ie, True, ctx.it, target=target)
    assert [FIG1.label(v) for v in target[0]] == ["0", "0", "p"]
    assert [FIG1.label(v) for v in printed[0]] == ["0", "0", "0"]
    assert (derived == target).all()
    assert run_law("P3.4", ctx).status == "passed"


def test_comparison_partitions_raise_one_off_core_value():
    part = LawContext.figure1().partition
    variants = comparison_partitions(part)
    assert variants
    for v in variants:
        diff = v.matrix != part.matrix
        assert diff.sum() == 1
        assert FIG1.vle(part.matrix, v.matrix).all()
        assert v.cores == part.cores


def test_table_rendering():
    table = suite_table([run_law("L2.1", LawContext.figure1(literal_coresidual=True))], FIG1)
    header, row = table.splitlines()
    assert header.split()[:4] == ["law", "status", "cases", "coverage"]
    assert row.startswith("L2.1") and "failed" in row and "violations; first eta at" in row


@st.composite
def chain_contexts(draw):
    n = draw(st.integers(2, 5))
    size = draw(st.integers(1, 3))
    lat = chain(n)
    owner = draw(st.lists(st.integers(0, size - 1), min_size=size, max_size=size))
    blocks = sorted(set(owner))
    rows = []
    for j in blocks:
        rows.append(tuple(lat.top if owner[x] == j else draw(st.integers(0, n - 2)) for x in range(size)))
    part = validate_partition([LFuzzySet(Universe.of_size(size), lat, r) for r in rows])
    return LawContext(lat, closed_form("theta_M", lat), closed_form("eta_M", lat), chain_reversal(lat), partition=part)


@settings(max_examples=15)
@given(chain_contexts())
def test_laws_hold_on_random_chain_contexts(ctx):
    ids = ["P3.1", "P3.2", "P3.3", "P3.4", "P3.9", "P3.10", "P4.1", "P4.2", "P4.3", "P4.4", "P5.5"]
    for report in run_suite(ctx, ids):
        assert report.status != "failed", (report.id, report.witness)
