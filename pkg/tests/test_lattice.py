import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from lattice_ft import (
    UnitIntervalLattice,
    build_table_lattice,
    chain,
    figure1_lattice,
    join_of,
    load_lattice,
    meet_of,
    product_lattice,
)
from lattice_ft.errors import CarrierMismatch, CyclicOrder, EmptyFamily, NotALattice, ParseError
from lattice_ft.lattice import lattice_from_json

FIG1_LABELS = ["0", "p", "q", "r", "s", "t", "u", "1"]
FIG1_COVERS = [("0", "p"), ("p", "q"), ("p", "r"), ("q", "s"), ("r", "s"), ("r", "t"), ("s", "u"), ("t", "u"), ("u", "1")]

LATTICES = [chain(2), chain(4), figure1_lattice(), product_lattice(chain(2), chain(3))]


def test_figure1_tables_match_brute_force_bounds():
    lat = figure1_lattice()
    le = oracles.leq_from_covers(FIG1_LABELS, FIG1_COVERS)
    assert lat.leq.tolist() == le
    assert lat.join_table.tolist() == oracles.join_table(le)
    assert lat.meet_table.tolist() == oracles.meet_table(le)
    assert lat.label(lat.bottom) == "0" and lat.label(lat.top) == "1"


def test_figure1_incomparable_pairs():
    lat = figure1_lattice()
    q, r, s, t, u = (lat.index(x) for x in "qrstu")
    assert lat.label(lat.join(q, r)) == "s" and lat.label(lat.meet(q, r)) == "p"
    assert lat.label(lat.join(s, t)) == "u" and lat.label(lat.meet(s, t)) == "r"
    assert lat.label(lat.join(q, t)) == "u"
    assert not lat.is_chain


def test_chain_and_product():
    c = chain(5)
    assert c.is_chain and c.bottom == 0 and c.top == 4
    sq = product_lattice(chain(2), chain(2))
    assert len(sq) == 4 and not sq.is_chain
    a, b = sq.index("(0,1)"), sq.index("(1,0)")
    assert sq.label(sq.join(a, b)) == "(1,1)" and sq.label(sq.meet(a, b)) == "(0,0)"


def test_not_a_lattice_and_cycles():
    # two maximal elements: no top, and a and b have no join
    with pytest.raises(NotALattice):
        build_table_lattice(["0", "a", "b"], [("0", "a"), ("0", "b")])
    # bowtie: a, b both below c and d, so {a, b} has two minimal upper bounds
    with pytest.raises(NotALattice):
        build_table_lattice(
            ["0", "a", "b", "c", "d", "1"],
            [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")],
        )
    with pytest.raises(CyclicOrder):
        build_table_lattice(["a", "b"], [("a", "b"), ("b", "a")])


def test_folds_over_subsets():
    lat = figure1_lattice()
    idx = [lat.index(x) for x in "qrt"]
    assert lat.label(join_of(lat, idx)) == "u"
    assert lat.label(meet_of(lat, idx)) == "p"
    assert join_of(lat, [], strict=False) == lat.bottom
    assert meet_of(lat, [], strict=False) == lat.top
    with pytest.raises(EmptyFamily):
        join_of(lat, [])


def test_unit_interval_carrier():
    u = UnitIntervalLattice()
    assert u.epsilon == 1e-9
    assert u.join_of([0.2, 0.7, 0.1]) == 0.7 and u.meet_of([0.2, 0.7]) == 0.2
    assert u.eq(1 - (1 - 0.9), 0.9) and u.le(0.3 + 1e-12, 0.3)
    assert not u.le(0.31, 0.3)
    with pytest.raises(CarrierMismatch):
        u.check_element(1.5)
    with pytest.raises(CarrierMismatch):
        figure1_lattice().check_element(0.5)


def test_json_round_trip_and_loading(tmp_path):
    lat = figure1_lattice()
    again = lattice_from_json(lat.to_json())
    assert again == lat
    path = tmp_path / "fig1.json"
    path.write_text('{"elements": ["0", "1"], "covers": [["0", "1"]]}')
    assert load_lattice(path) == chain(2).__class__(["0", "1"], [[True, True], [False, True]])
    assert load_lattice("chain4") == chain(4)
    assert load_lattice("figure1") == lat
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": ["0",\n  ]}')
    with pytest.raises(ParseError) as info:
        load_lattice(bad)
    assert info.value.line == 2


def test_dual_swaps_tables():
    lat = figure1_lattice()
    d = lat.dual()
    assert (d.join_table == lat.meet_table).all() and d.top == lat.bottom


@given(st.sampled_from(LATTICES), st.data())
def test_lattice_laws(lat, data):
    n = len(lat)
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert lat.join(a, b) == lat.join(b, a) and lat.meet(a, b) == lat.meet(b, a)
    assert lat.join(a, lat.join(b, c)) == lat.join(lat.join(a, b), c)
    assert lat.meet(a, lat.meet(b, c)) == lat.meet(lat.meet(a, b), c)
    assert lat.join(a, a) == a and lat.meet(a, a) == a
    assert lat.join(a, lat.meet(a, b)) == a and lat.meet(a, lat.join(a, b)) == a
    assert lat.le(lat.bottom, a) and lat.le(a, lat.top)
    assert lat.le(a, b) == (lat.join(a, b) == b)


@given(st.lists(st.floats(0, 1), min_size=2, max_size=6))
def test_unit_folds_are_max_and_min(values):
    u = UnitIntervalLattice()
    assert u.join_of(values) == max(values) and u.meet_of(values) == min(values)
    assert np.all(u.vle(u.meet_of(values), np.array(values)))
