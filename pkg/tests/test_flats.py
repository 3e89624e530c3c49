from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlb.exactnum import Interval, RadicalSum
from vlb.flats import (
    AxisAlignedFlat,
    Metric,
    flats_intersect,
    intersecting_pairs,
    lp_diff_box,
    lp_diff_exact,
    lp_dist_pth_power,
    make_point,
    sq_dist_flat_flat,
    sq_dist_point_flat,
)

flat = AxisAlignedFlat.from_values


def test_point_to_line_examples():
    line = flat("L", [None, 1, 0])
    assert sq_dist_point_flat(make_point([5, 1, 0]), line) == 0
    assert sq_dist_point_flat(make_point([5, 2, 3]), line) == 10
    x = make_point([0, RadicalSum.sqrt(2), 0])
    assert sq_dist_point_flat(x, flat("M", [None, 0, 0])) == 2


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        sq_dist_point_flat(make_point([0, 0]), flat("L", [None, 1, 0]))


def test_flat_metadata():
    f = flat("b1.F2_3", [None, 3, F(1, 17)])
    assert f.family == "b1.F2"
    assert f.flat_dim == 1
    assert f.value(0) is None and f.value(2) == F(1, 17)
    assert f.translated([1, 1, 1]).values() == [None, 4, F(18, 17)]


def test_metric_parse():
    assert Metric.parse("euclidean") == Metric.euclidean()
    assert Metric.parse("l1") == Metric.l1()
    assert Metric.parse("lp:4") == Metric.lp(4)
    assert Metric.parse("lp:3/2").p == F(3, 2)
    for bad in ("linf", "lp:0", "lp:1/2", "foo"):
        with pytest.raises(ValueError):
            Metric.parse(bad)


def test_lp_powers():
    line = flat("L", [None, 1, 0])
    x = make_point([0, 3, -1])
    assert lp_dist_pth_power(x, line, Metric.l1()) == 3
    assert lp_dist_pth_power(x, line, Metric.lp(3)) == 9
    assert lp_dist_pth_power(x, line, Metric.lp(4)) == 17
    iv = lp_dist_pth_power(x, line, Metric.lp(F(3, 2)), F(1, 10**15))
    assert isinstance(iv, Interval)
    assert float(iv.lower) <= 2 ** 1.5 + 1 <= float(iv.upper)


def test_diff_cancels_shared_coordinates():
    a = flat("A", [None, 1, 0])
    b = flat("B", [None, 2, 0])
    x = make_point([7, RadicalSum.sqrt(3), 100])
    # the shared coordinate 2 plays no role: (s3-2)^2 - (s3-1)^2 = 3 - 2 s3
    assert lp_diff_exact(x, b, a) == 3 - 2 * RadicalSum.sqrt(3)
    box = [Interval.point(F(7)), RadicalSum.sqrt(3).to_interval(F(1, 10**20)), Interval.point(F(100))]
    assert lp_diff_box(box, b, a, Metric.euclidean()).contains(3 - 2 * RadicalSum.sqrt(3))


def test_intersections():
    h = flat("H_1", [None, 1])
    v = flat("V_1", [1, None])
    assert flats_intersect(h, v)
    assert not flats_intersect(flat("A_1", [1, None, 0]), flat("B_1", [None, 1, F(1, 17)]))
    assert sq_dist_flat_flat(flat("A_1", [1, None, 0]), flat("B_1", [None, 1, F(1, 17)])) == F(1, 289)
    assert intersecting_pairs([h, v, flat("H_2", [None, 2])]) == [("H_1", "V_1"), ("V_1", "H_2")]


def _numeric_flat_distance(f, g):
    """min over both flats' free coordinates, solved by numpy least squares."""
    d = f.dimension
    p = np.array([float(v) if v is not None else 0.0 for v in f.values()])
    q = np.array([float(v) if v is not None else 0.0 for v in g.values()])
    cols = [np.eye(d)[k] for k in sorted(f.free)] + [-np.eye(d)[k] for k in sorted(g.free)]
    if not cols:
        return float(np.sum((p - q) ** 2))
    A = np.stack(cols, axis=1)
    u, *_ = np.linalg.lstsq(A, q - p, rcond=None)
    r = p + A @ u - q
    return float(r @ r)


coord_values = st.one_of(st.none(), st.fractions(min_value=-5, max_value=5, max_denominator=8))


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=6).flatmap(
    lambda d: st.tuples(*[st.lists(coord_values, min_size=d, max_size=d)
                          .filter(lambda v: any(x is not None for x in v))] * 2)))
def test_flat_distance_matches_least_squares(pair):
    f, g = flat("f", pair[0]), flat("g", pair[1])
    exact = sq_dist_flat_flat(f, g)
    assert abs(float(exact) - _numeric_flat_distance(f, g)) < 1e-9
    assert flats_intersect(f, g) == (exact == 0)


def test_point_distance_matches_numpy():
    rng = np.random.default_rng(7)
    for _ in range(200):
        d = int(rng.integers(2, 7))
        vals = [None if rng.random() < 0.4 else F(int(rng.integers(-9, 10)), 4) for _ in range(d)]
        vals[0] = vals[0] if vals[0] is not None else F(1)
        x = [F(int(rng.integers(-40, 41)), 8) for _ in range(d)]
        f = flat("f", vals)
        num = sum((float(xi) - float(v)) ** 2 for xi, v in zip(x, vals) if v is not None)
        assert abs(float(sq_dist_point_flat(make_point(x), f)) - num) < 1e-9
