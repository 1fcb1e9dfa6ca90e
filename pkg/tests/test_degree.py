import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logahoric.degree import (
    HypothesisWarning,
    LeviDecomposition,
    ParabolicBundleGlobal,
    character_line_degree,
    deg_root_stack,
    determinant,
    line_connection_exists,
    par_deg,
    set_partitions,
    split_decompositions,
    weil_atiyah_check,
)
from logahoric.errors import InvalidDatum, InvalidDecomposition

WEIGHTS = [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4)]


def line(degree, weights, genus=1):
    return ParabolicBundleGlobal.from_weights(1, degree, {f"x{i}": [w] for i, w in enumerate(weights)}, genus=genus)


def test_par_deg_examples():
    assert par_deg(line(0, [F(1, 2)])) == F(1, 2)
    assert par_deg(line(-1, [F(1, 2), F(1, 2)])) == 0
    assert par_deg(ParabolicBundleGlobal.from_weights(3, 5, {"p": [0, 0, 0]})) == 5
    assert deg_root_stack(line(2, [F(1, 3)])) == F(7, 3)


def test_par_deg_counts_multiplicity():
    b = ParabolicBundleGlobal.from_weights(3, -1, {"p": [F(1, 3), F(1, 3), 0]})
    assert par_deg(b) == F(-1, 3)


def test_line_criterion_examples():
    assert line_connection_exists(line(-1, [F(1, 2), F(1, 2)]))
    assert not line_connection_exists(line(0, [F(1, 2)]))
    assert line_connection_exists(ParabolicBundleGlobal(1, 0))
    with pytest.raises(InvalidDatum):
        line_connection_exists(ParabolicBundleGlobal(2, 0))


def test_bundle_validation():
    with pytest.raises(InvalidDatum):
        ParabolicBundleGlobal.from_weights(1, 0, {"p": [1]})
    with pytest.raises(InvalidDatum):
        ParabolicBundleGlobal.from_weights(2, 0, {"p": [0]})
    with pytest.raises(InvalidDatum):
        ParabolicBundleGlobal(2, 1, line_degrees=(0, 0))


def test_local_weights_keep_frame_order():
    b = ParabolicBundleGlobal.from_weights(3, 0, {"p": [0, F(1, 2), F(1, 4)]})
    assert b.local_weights("p") == (0, F(1, 2), F(1, 4))
    assert dict(b.points)["p"].weights == (2, 1, 0)


def two_lines(d1, w1, d2, w2):
    return ParabolicBundleGlobal.from_weights(
        2, d1 + d2, {"p": [w1, w2]}, line_degrees=(d1, d2), genus=1
    )


def test_character_degree_examples():
    b = two_lines(0, F(1, 2), -1, F(1, 2))
    split = LeviDecomposition(((0,), (1,)), (0, -1))
    whole = LeviDecomposition(((0, 1),), (-1,))
    assert character_line_degree(b, split, (0, 0)) == 0
    assert character_line_degree(b, whole, (1,)) == par_deg(b) == 0
    assert character_line_degree(b, split, (1, 0)) == F(1, 2)
    assert character_line_degree(b, split, (0, 1)) == F(-1, 2)
    assert character_line_degree(b, split, (1, 1)) == 0
    c = two_lines(1, F(1, 3), 1, F(1, 3))
    assert character_line_degree(c, LeviDecomposition(((0,), (1,)), (1, 1)), (1, -1)) == 0


def test_determinant_moves_integer_part_into_degree():
    b = ParabolicBundleGlobal.from_weights(2, 0, {"p": [F(3, 4), F(1, 2)]})
    det = determinant(b)
    assert det.degree == 1 and det.local_weights("p") == (F(1, 4),)
    assert par_deg(det) == par_deg(b)


def test_invalid_decompositions():
    b = two_lines(0, 0, 0, 0)
    with pytest.raises(InvalidDecomposition):
        LeviDecomposition(((0,), (1,)), (0,))
    with pytest.raises(InvalidDecomposition):
        character_line_degree(b, LeviDecomposition(((0,), (0,)), (0, 0)), (1, 0))
    with pytest.raises(InvalidDecomposition):
        character_line_degree(b, LeviDecomposition(((0,), (1,)), (1, 0)), (1, 0))
    with pytest.raises(InvalidDecomposition):
        character_line_degree(b, LeviDecomposition(((0,), (1,)), (0, 0)), (1,))


def test_set_partitions_are_bell_numbers():
    assert [sum(1 for _ in set_partitions(range(n))) for n in range(6)] == [1, 1, 2, 5, 15, 52]
    b = ParabolicBundleGlobal.from_weights(3, 0, {"p": [0, 0, 0]}, line_degrees=(0, 0, 0))
    assert len(split_decompositions(b)) == 5
    assert split_decompositions(ParabolicBundleGlobal(3, 0)) == []


def test_criterion_witness():
    bad = two_lines(0, F(1, 2), -1, F(1, 2))
    report = weil_atiyah_check(bad)
    assert not report.verdict
    witnesses = {(v.decomposition.blocks, v.character, v.degree) for v in report.violations}
    assert witnesses == {(((0,), (1,)), (1, 0), F(1, 2)), (((0,), (1,)), (0, 1), F(-1, 2))}
    # L1 of degree -1 with weight 1/2 at two points, L2 trivial
    good = ParabolicBundleGlobal.from_weights(
        2, -1, {"p": [F(1, 2), 0], "q": [F(1, 2), 0]}, line_degrees=(-1, 0), genus=1
    )
    ok = weil_atiyah_check(good)
    assert ok.verdict
    assert {l.decomposition.blocks for l in ok.lines} == {((0, 1),), ((0,), (1,))}


def test_supplied_decomposition_and_characters():
    b = ParabolicBundleGlobal.from_weights(2, 0, {"p": [F(1, 2), F(1, 2)]}, genus=2)
    d = LeviDecomposition(((0,), (1,)), (1, -1), "mine")
    report = weil_atiyah_check(b, [d], characters={0: [(1, 1), (2, -1)]})
    lines = [(l.decomposition.name, l.character, l.degree) for l in report.lines]
    assert lines == [("mine", (1, 1), F(1)), ("mine", (2, -1), F(7, 2)), ("whole", (1,), F(1))]


def test_hypothesis_warnings():
    with pytest.warns(HypothesisWarning):
        weil_atiyah_check(line(0, [F(1, 2)], genus=None))
    with pytest.warns(HypothesisWarning):
        weil_atiyah_check(line(0, [F(1, 2)], genus=0))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        weil_atiyah_check(line(0, [F(1, 2), F(1, 2)], genus=0))
        weil_atiyah_check(line(0, [], genus=3))


# -- properties -------------------------------------------------------------

weight = st.sampled_from(WEIGHTS)


@given(st.integers(-3, 3), st.lists(weight, max_size=3), st.integers(-3, 3), st.lists(weight, max_size=3))
def test_additivity(d1, w1, d2, w2):
    labels = [f"x{i}" for i in range(3)]
    w1 = w1 + [F(0)] * (3 - len(w1))
    w2 = w2 + [F(0)] * (3 - len(w2))
    l1 = ParabolicBundleGlobal.from_weights(1, d1, {lbl: [a] for lbl, a in zip(labels, w1)})
    l2 = ParabolicBundleGlobal.from_weights(1, d2, {lbl: [b] for lbl, b in zip(labels, w2)})
    e = ParabolicBundleGlobal.from_weights(
        2, d1 + d2, {lbl: [a, b] for lbl, a, b in zip(labels, w1, w2)}, line_degrees=(d1, d2)
    )
    assert par_deg(e) == par_deg(l1) + par_deg(l2)
    split = LeviDecomposition(((0,), (1,)), (d1, d2))
    assert character_line_degree(e, split, (1, 0)) == par_deg(l1)
    assert character_line_degree(e, split, (0, 1)) == par_deg(l2)


@given(st.integers(1, 4), st.integers(-5, 5), st.data())
def test_determinant_consistency(rank, degree, data):
    pts = {f"x{i}": data.draw(st.lists(weight, min_size=rank, max_size=rank)) for i in range(data.draw(st.integers(0, 3)))}
    b = ParabolicBundleGlobal.from_weights(rank, degree, pts)
    det = determinant(b)
    assert det.rank == 1
    assert par_deg(det) == par_deg(b)
    whole = LeviDecomposition((tuple(range(rank)),), (degree,))
    assert character_line_degree(b, whole, (1,)) == par_deg(b)


@given(st.integers(-4, 4), st.integers(-3, 3), st.integers(-3, 3), weight, weight)
def test_character_scaling(k, d1, d2, w1, w2):
    e = two_lines(d1, w1, d2, w2)
    split = LeviDecomposition(((0,), (1,)), (d1, d2))
    a, b = character_line_degree(e, split, (1, 0)), character_line_degree(e, split, (0, 1))
    assert character_line_degree(e, split, (k, 0)) == k * a
    assert character_line_degree(e, split, (k, -k)) == k * (a - b)


@given(st.integers(-3, 3), st.lists(weight, max_size=3))
def test_rank_one_criterion_is_line_criterion(degree, ws):
    b = line(degree, ws)
    assert weil_atiyah_check(b).verdict == line_connection_exists(b)
