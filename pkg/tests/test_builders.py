import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from rowpivot import ALL_STRATEGIES, DistanceMatrix, Simplex, build_rips, run_strategy, validate_filtration
from rowpivot.builders import ParseError, parse_explicit_filtration, parse_lower_distance_matrix, parse_point_cloud


def test_parse_explicit():
    f = parse_explicit_filtration("0\n1\n0 1\n")
    assert f.simplices == (Simplex((0,)), Simplex((1,)), Simplex((0, 1)))
    assert f.values is None


def test_parse_explicit_missing_faces():
    with pytest.raises(ValueError, match="missing faces"):
        parse_explicit_filtration("0 1\n")


def test_parse_explicit_blank_lines_and_grades():
    f = parse_explicit_filtration("0 @ 0\n1 @ 0\n\n0 1 @ 2.5\n\n\n")
    assert len(f) == 3 and f.values == (0.0, 0.0, 2.5)


@pytest.mark.parametrize("text, line", [("0\nx\n", 2), ("0 @ abc\n", 1), ("0\n0 0\n", 2)])
def test_parse_explicit_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_explicit_filtration(text)
    assert info.value.line == line


def test_parse_explicit_partial_grades():
    with pytest.raises(ParseError):
        parse_explicit_filtration("0 @ 1\n1\n")


def test_parse_lower_distance_matrix():
    dm = parse_lower_distance_matrix("1\n")
    assert dm.n == 2 and dm(0, 1) == 1
    dm = parse_lower_distance_matrix("1, 1, 1")
    assert dm.n == 3 and all(dm(p, q) == 1 for p in range(3) for q in range(3) if p != q)
    dm = parse_lower_distance_matrix("1\n2 3\n")
    assert (dm(1, 0), dm(0, 2), dm(2, 1)) == (1, 2, 3)
    assert dm(2, 2) == 0


@pytest.mark.parametrize("text", ["1 2", "-1", "nan", "1 inf 2", "a"])
def test_parse_lower_distance_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_lower_distance_matrix(text)


def test_point_cloud():
    dm = parse_point_cloud("0 0\n3 4\n")
    assert dm.n == 2 and dm(0, 1) == 5.0
    with pytest.raises(ParseError):
        parse_point_cloud("0 0\n1\n")


def test_rips_two_points():
    f = build_rips(DistanceMatrix(2, (1.0,)), max_dim=1, threshold=2)
    assert [s.vertices for s in f.simplices] == [(0,), (1,), (0, 1)]
    assert f.values == (0.0, 0.0, 1.0)


def test_rips_threshold_drops_edges():
    f = build_rips(DistanceMatrix(3, (1.0, 1.0, 1.0)), max_dim=2, threshold=0.5)
    assert [s.dimension for s in f.simplices] == [0, 0, 0]


def test_rips_triangle_barcode():
    f = build_rips(DistanceMatrix(3, (1.0, 1.0, 1.0)), max_dim=2, threshold=1)
    assert len(f) == 7
    for s in ALL_STRATEGIES:
        assert run_strategy(f, s).barcode.to_text() == "0 1 inf\n0 2 4\n0 3 5\n1 6 7\n"


def test_rips_full_simplex_when_unbounded():
    dm = DistanceMatrix.from_points([(0,), (1,), (3,), (7,)])
    f = build_rips(dm, max_dim=3)
    assert len(f) == 15


def _random_dm(seed, n):
    rng = random.Random(seed)
    return DistanceMatrix(n, tuple(round(rng.uniform(0, 3), 1) for _ in range(n * (n - 1) // 2)))


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 7), st.integers(0, 3), st.sampled_from([0.5, 1.5, 2.5, math.inf]))
def test_rips_is_valid_and_monotone(seed, n, max_dim, threshold):
    dm = _random_dm(seed, n)
    f = build_rips(dm, max_dim, threshold)
    assert validate_filtration(f) is None
    assert list(f.values) == sorted(f.values)
    for s, grade in zip(f.simplices, f.values):
        assert s.dimension <= max_dim
        diam = max((dm(p, q) for p in s for q in s), default=0.0)
        assert grade == diam <= threshold
