"""Metric validation, exact scalars, and the isometry checker."""

from fractions import Fraction

import pytest

from conftest import l1_points, path_metric
from rectiplane.metric import (
    MetricError,
    NegativeOrZeroOffDiagonal,
    NonzeroDiagonal,
    NotSymmetric,
    OpCounter,
    PlanePoint,
    TriangleViolation,
    format_scalar,
    is_between,
    l1_distance,
    ops,
    parse_scalar,
    validate_metric,
    verify_isometric,
)


def test_parse_scalar():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar(" 7 ") == 7
    assert parse_scalar("-5/2") == Fraction(-5, 2)
    assert parse_scalar("2.5") == Fraction(5, 2)


def test_format_scalar():
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert format_scalar(Fraction(8, 4)) == "2"
    assert format_scalar(-7) == "-7"


@pytest.mark.parametrize("value", [Fraction(0), Fraction(22, 7), Fraction(-9, 13), 41])
def test_scalar_round_trip(value):
    assert parse_scalar(format_scalar(value)) == value


def test_rejects_asymmetric():
    with pytest.raises(NotSymmetric) as err:
        validate_metric([[0, 1], [2, 0]])
    assert (err.value.i, err.value.j) == (0, 1)
    assert "dist[0][1]" in str(err.value)


def test_rejects_nonzero_diagonal():
    with pytest.raises(NonzeroDiagonal) as err:
        validate_metric([[1, 2], [2, 0]])
    assert err.value.i == 0


def test_rejects_zero_off_diagonal():
    with pytest.raises(NegativeOrZeroOffDiagonal) as err:
        validate_metric([[0, 0], [0, 0]])
    assert (err.value.i, err.value.j) == (0, 1)


def test_rejects_triangle_violation():
    with pytest.raises(TriangleViolation) as err:
        validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    e = err.value
    assert (e.i, e.j, e.k) == (0, 1, 2)
    assert "dist[0][2]" in str(e)


def test_rejects_non_square():
    with pytest.raises(MetricError):
        validate_metric([[0, 1], [1, 0], [2, 2]])


def test_validate_accepts_and_returns_space():
    ms = validate_metric([[0, 2, 3], [2, 0, 5], [3, 5, 0]], labels=["a", "b", "c"])
    assert ms.n == 3
    assert ms.d(1, 2) == 5
    assert ms.labels == ["a", "b", "c"]
    assert ms.index_of("c") == 2


def test_from_points_exact_fractions():
    ms, pts = l1_points([("1/4", "0"), ("3/4", "1/2"), ("-2", "5")])
    assert ms.d(0, 1) == Fraction(1, 2) + Fraction(1, 2)
    assert ms.d(0, 2) == Fraction(9, 4) + 5
    assert ms.d(1, 2) == Fraction(11, 4) + Fraction(9, 2)
    assert l1_distance(pts[0], pts[2]) == ms.d(0, 2)


def test_default_labels_are_indices():
    ms, _ = l1_points([(0, 0), (1, 0)])
    assert ms.labels == ["0", "1"]


def test_row_and_submatrix():
    ms = path_metric([3, 4, 5])
    assert ms.row(0) == [0, 3, 7, 12]
    sub = ms.submatrix([0, 2, 3])
    assert sub.n == 3
    assert sub.d(0, 1) == 7
    assert sub.d(1, 2) == 5
    assert sub.labels == ["0", "2", "3"]


def test_is_between():
    ms = path_metric([3, 4])
    assert is_between(0, 1, 2, ms)
    assert not is_between(1, 0, 2, ms)


def test_verify_isometric_pass():
    ms, pts = l1_points([(0, 0), (4, 0), (4, 2), (0, 2)])
    ok, witness = verify_isometric(pts, ms)
    assert ok and witness is None


def test_verify_isometric_first_violation():
    ms, pts = l1_points([(0, 0), (4, 0), (4, 2), (0, 2)])
    broken = list(pts)
    broken[2] = PlanePoint(Fraction(5), Fraction(2))
    ok, witness = verify_isometric(broken, ms)
    assert not ok
    # Row-major order: (0,2) fails before (1,2) and (2,3).
    assert witness == (0, 2)


def test_verify_isometric_size_mismatch():
    ms, pts = l1_points([(0, 0), (1, 1)])
    with pytest.raises(MetricError):
        verify_isometric(pts[:1], ms)


def test_huge_coordinates_stay_exact():
    # Forces the object-dtype fallback past the int64 safety margin.
    big = 1 << 62
    ms, pts = l1_points([(0, 0), (big, 0), (big, big)])
    assert ms.d(0, 2) == 2 * big
    ok, _ = verify_isometric(pts, ms)
    assert ok
    bad = [pts[0], pts[1], PlanePoint(Fraction(big), Fraction(big + 1))]
    ok, witness = verify_isometric(bad, ms)
    assert not ok and witness == (0, 2)


def test_op_counter():
    c = OpCounter()
    c.add(3)
    c.add(4)
    assert c.value == 7
    c.reset()
    assert c.value == 0


def test_global_ops_grow_on_verify():
    ms, pts = l1_points([(0, 0), (1, 0), (2, 0)])
    before = ops.value
    verify_isometric(pts, ms)
    assert ops.value > before
