from fractions import Fraction as F

import pytest

from vlb.constructions import (
    Certificate,
    Construction,
    aggregate,
    apply_metric,
    gen_grid2,
    gen_grid3_perturbed,
    gen_hypergrid,
    gen_quad4,
    gen_quint5,
)
from vlb.constructions.base import INTERVAL
from vlb.exactnum import Interval
from vlb.flats import Metric
from vlb.verify import (
    EXACT_PASS,
    FAIL,
    INTERVAL_PASS,
    CertificateError,
    check_bound,
    verify_certificate,
    verify_construction,
)


def test_quint5_all_exact():
    rep = verify_construction(gen_quint5(2, F(1, 17)))
    assert rep.ok and rep.exact_passed == 16
    assert rep.summary().startswith("16/16 exact")


def test_shifted_witness_fails():
    c = gen_quint5(2, F(1, 17))
    cert = c.certificates[0]
    w = list(cert.witness)
    w[4] = w[4] + F(1, 1000)
    v = verify_certificate(c, Certificate(cert.tuple, tuple(w)))
    assert v.status == FAIL and "equidistance" in v.reason


def test_tuple_missing_a_tying_site_fails():
    c = gen_quint5(2, F(1, 17))
    cert = c.certificates[0]
    v = verify_certificate(c, Certificate(cert.tuple[:3], cert.witness))
    assert v.status == FAIL and "dominance" in v.reason and "ties" in v.reason


@pytest.mark.parametrize("coord", range(5))
def test_any_coordinate_perturbation_fails(coord):
    c = gen_quint5(2, F(1, 17))
    for cert in c.certificates[:4]:
        w = list(cert.witness)
        w[coord] = w[coord] + F(1, 1000)
        assert verify_certificate(c, Certificate(cert.tuple, tuple(w))).status == FAIL


def test_bad_references():
    c = gen_grid2(2)
    with pytest.raises(CertificateError):
        verify_certificate(c, Certificate(("H_1", "X_9"), (F(0), F(0))))
    with pytest.raises(CertificateError):
        verify_certificate(c, Certificate(("H_1", "V_1"), (F(0),)))


def test_quad4_report():
    rep = verify_construction(gen_quad4(3, F(1, 25)))
    assert rep.ok and rep.passed == 27 and not rep.intersecting_pairs
    assert (rep.bound.required, rep.bound.achieved) == (27, 27)


def test_grid_reports_intersections_but_passes():
    rep = verify_construction(gen_grid2(3))
    assert rep.passed == 9 and len(rep.intersecting_pairs) == 9
    assert rep.ok  # the grid does not claim disjointness


def test_claimed_disjointness_is_enforced():
    c = gen_grid2(2).replace(claims_non_intersecting=True)
    assert not verify_construction(c).ok


def test_empty_construction():
    rep = verify_construction(Construction(3, (), ()))
    assert rep.total == 0 and rep.distinct_count == 0 and rep.bound is None


@pytest.mark.parametrize("count, n, d, ok", [(16, 2, 5, True), (8, 2, 5, False), (9, 3, 2, True)])
def test_check_bound(count, n, d, ok):
    assert check_bound(count, n, d) is ok


def test_count_only_passing_tuples():
    c = gen_quad4(2, F(1, 17))
    bad = c.certificates[0]
    w = list(bad.witness)
    w[0] += 1
    c2 = c.replace(certificates=(Certificate(bad.tuple, tuple(w)),) + c.certificates[1:])
    rep = verify_construction(c2)
    assert rep.distinct_count == 7 and not rep.bound.passed and not rep.ok
    assert "FAIL {A_1, B_1, C_1}" in rep.summary()


def test_parallel_report_identical():
    c = gen_quint5(3, F(1, 25))
    assert verify_construction(c, jobs=1) == verify_construction(c, jobs=2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("rule", [lambda n: F(1, 8 * n + 1), lambda n: F(1, 16 * n)])
def test_completeness_on_families(n, rule):
    eps = rule(n)
    families = [gen_grid2(n), gen_grid3_perturbed(n, eps), gen_quad4(n, eps), gen_hypergrid(2, n)]
    if n <= 3:
        families.append(gen_quint5(n, eps))
    if n <= 2:
        families.append(aggregate(gen_grid3_perturbed(n, eps), gen_grid2(n)))
    for c in families:
        rep = verify_construction(c)
        assert rep.exact_passed == rep.total == len(c.certificates)


def test_shrinking_epsilon_keeps_passing():
    for q in (25, 50, 100, 1000, 10**6):
        assert verify_construction(gen_quad4(3, F(1, q))).ok


@pytest.mark.parametrize("kind", ["grid2", "grid3p", "quad4", "quint5"])
def test_interval_mode_agrees_with_exact(kind):
    boxes = apply_metric(kind, 2, Metric.euclidean(), mode="interval")
    exact = apply_metric(kind, 2, Metric.euclidean())
    rb, re_ = verify_construction(boxes), verify_construction(exact)
    assert rb.interval_passed == rb.total and re_.exact_passed == re_.total
    assert {t for t, _ in rb.verdicts} == {t for t, _ in re_.verdicts}
    for cert in boxes.certificates:
        point = next(e for e in exact.certificates if e.tuple == cert.tuple).witness
        assert all(iv.contains(x) for iv, x in zip(cert.witness, point))


def test_interval_box_missing_the_root_fails():
    c = apply_metric("quad4", 2, Metric.lp(4))
    cert = c.certificates[0]
    moved = tuple(Interval(iv.lower + F(1, 10**6), iv.upper + F(1, 10**6)) if iv.width else iv
                  for iv in cert.witness)
    assert verify_certificate(c, Certificate(cert.tuple, moved, INTERVAL)).status == FAIL
    assert verify_certificate(c, cert).status == INTERVAL_PASS


def test_wide_box_fails_dominance():
    c = apply_metric("grid3p", 2, Metric.lp(4))
    cert = c.certificates[0]
    wide = tuple(Interval(iv.lower - 1, iv.upper + 1) for iv in cert.witness)
    v = verify_certificate(c, Certificate(cert.tuple, wide, INTERVAL))
    assert v.status == FAIL


def test_exact_mode_refuses_boxes():
    c = apply_metric("grid2", 2, Metric.lp(4))
    rep = verify_construction(c, mode="exact")
    assert rep.passed == 0
    assert verify_construction(c, mode="interval").ok


def test_exact_witness_checked_exactly_in_interval_mode():
    c = gen_quad4(2, F(1, 17))
    rep = verify_construction(c, mode="interval")
    assert {v.status for _, v in rep.verdicts} == {EXACT_PASS}
