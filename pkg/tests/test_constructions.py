from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vlb.constructions import (
    aggregate,
    decompose,
    gen_grid2,
    gen_grid3_perturbed,
    gen_hypergrid,
    gen_quad4,
    gen_quint5,
    plan,
    plan_kflat,
    required_exponent,
)
from vlb.constructions.blocks import GRID, BlockSpec, assemble
from vlb.constructions.generators import quint5_witness
from vlb.exactnum import RadicalSum
from vlb.flats import sq_dist_flat_flat, sq_dist_point_flat
from vlb.verify import verify_construction


def test_grid2_single():
    c = gen_grid2(1)
    assert len(c.sites) == 2 and len(c.certificates) == 1
    w = c.certificates[0].witness
    assert w == (F(5, 4), F(5, 4))
    for s in c.sites:
        assert sq_dist_point_flat(w, s) == F(1, 16)
    assert not c.claims_non_intersecting


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_count_laws(n):
    eps = F(1, 8 * n + 1)
    assert len(gen_grid2(n).certificates) == n**2
    assert len(gen_grid3_perturbed(n, eps).certificates) == n**2
    assert len(gen_quad4(n, eps).certificates) == n**3
    assert len(gen_quint5(n, eps).certificates) == n**4
    assert len(gen_hypergrid(2, n).certificates) == n**3


def test_grid3p_single_pair():
    eps = F(1, 9)
    c = gen_grid3_perturbed(1, eps)
    assert c.certificates[0].witness == (1, 1, eps / 2)


def test_quint5_witness_equidistant():
    eps = F(1, 16)
    x = quint5_witness(1, 1, 1, 1, eps)
    sites = gen_quint5(1, eps).site_map()
    assert sq_dist_point_flat(x, sites["A_1"]) - sq_dist_point_flat(x, sites["B_1"]) == 0
    assert sq_dist_flat_flat(sites["A_1"], sites["B_1"]) == F(1, 256)


@pytest.mark.parametrize("bad", [F(0), F(1, 16), F(1, 2), F(-1, 20)])
def test_epsilon_precondition(bad):
    with pytest.raises(ValueError, match="0 < eps < 1/\\(8n\\)"):
        gen_quad4(2, bad)


def test_n_precondition():
    with pytest.raises(ValueError):
        gen_grid2(0)


def test_hypergrid_k1_is_grid2_up_to_labels():
    h, g = gen_hypergrid(1, 3), gen_grid2(3)
    assert sorted(map(repr, (s.values() for s in h.sites))) == sorted(map(repr, (s.values() for s in g.sites)))
    assert sorted(c.witness for c in h.certificates) == sorted(c.witness for c in g.certificates)


def _shape(c):
    return [tuple(s.values()) for s in c.sites], [c_.witness for c_ in c.certificates]


def test_quint5_equals_two_perturbed_grid_blocks():
    for n in (1, 2, 3):
        eps = F(1, 8 * n + 1)
        assert _shape(assemble([BlockSpec(GRID, 1)] * 2, n, eps)) == _shape(gen_quint5(n, eps))


def test_unperturbed_assembly_equals_nested_aggregate():
    n = 2
    g = gen_hypergrid(1, n)
    nested = aggregate(aggregate(g, g, prefixes=("b1", "b2")), g, prefixes=("", "b3"))
    flat = assemble([BlockSpec(GRID, 1)] * 3, n, F(1, 17), perturb=False)
    assert [tuple(s.values()) for s in nested.sites] == [tuple(s.values()) for s in flat.sites]
    assert sorted(c.witness for c in nested.certificates) == sorted(c.witness for c in flat.certificates)


def test_aggregate_grid_grid_skeleton():
    n = 2
    c = aggregate(gen_grid2(n), gen_grid2(n))
    assert c.dimension == 5 and len(c.sites) == 4 * n
    assert len(c.certificates) == n**4
    rep = verify_construction(c)
    assert rep.all_certificates_pass and rep.intersecting_pairs


@pytest.mark.parametrize("P, Q", [
    (lambda: gen_grid2(2), lambda: gen_quad4(2)),
    (lambda: gen_grid3_perturbed(3), lambda: gen_grid2(2)),
    (lambda: gen_hypergrid(2, 2), lambda: gen_grid3_perturbed(2)),
])
def test_aggregate_product_law(P, Q):
    p, q = P(), Q()
    c = aggregate(p, q)
    assert c.dimension == p.dimension + q.dimension + 1
    assert len(c.certificates) == len(p.certificates) * len(q.certificates)
    assert verify_construction(c).all_certificates_pass


def test_aggregate_metric_mismatch():
    from vlb.constructions import apply_metric
    from vlb.flats import Metric

    with pytest.raises(ValueError, match="metric"):
        aggregate(gen_grid2(2), apply_metric("grid2", 2, Metric.l1()))


@pytest.mark.parametrize("d", range(2, 31))
def test_plan_exponent_law(d):
    p = decompose(d)
    assert p.exponent == required_exponent(d) == -(-2 * d // 3)
    assert p.consumed_dimension <= d


def test_plan_examples():
    assert decompose(5).blocks == ("GRID2", "GRID2")
    assert decompose(7).blocks == ("QUAD4", "GRID2")
    assert decompose(3).blocks == ("GRID3P",)
    with pytest.raises(ValueError):
        decompose(1)


def test_plan_slack_coordinates_are_zero():
    p, c = plan(6, 2)
    assert p.slack == 1 and c.dimension == 6
    assert all(s.value(5) == 0 for s in c.sites)


def test_kflat_shape():
    c = plan_kflat(2, 2, 2)
    assert c.dimension == 7 and len(c.certificates) == 64
    assert plan_kflat(1, 2, 3).dimension == 5
    assert len(plan_kflat(1, 2, 3).certificates) == 3**4


def test_kflat_exponent_ratio_grows():
    ratios = [((c * (2 + 1)) / (c * (2 + 2) - 1)) for c in (1, 2, 4, 8, 64)]
    assert ratios == sorted(ratios, reverse=True) and abs(ratios[-1] - 3 / 4) < 0.01


@pytest.mark.parametrize("gen", [
    lambda n, e: gen_grid3_perturbed(n, e),
    lambda n, e: gen_quad4(n, e),
    lambda n, e: gen_quint5(n, e),
    lambda n, e: plan(7, n, e)[1],
    lambda n, e: plan_kflat(2, 2, n, e),
])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_non_intersection(gen, n):
    c = gen(n, F(1, 8 * n + 1))
    assert c.claims_non_intersecting
    assert all(sq_dist_flat_flat(a, b) > 0 for a, b in combinations(c.sites, 2))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(9, 60))
def test_generated_certificates_verify(n, q):
    if q <= 8 * n:
        q = 8 * n + 1
    eps = F(1, q)
    for c in (gen_grid3_perturbed(n, eps), gen_quad4(n, eps), gen_quint5(min(n, 2), eps)):
        rep = verify_construction(c)
        assert rep.ok, rep.summary()
        assert len({cert.labels for cert in c.certificates}) == len(c.certificates)


def test_witness_coordinates_are_radicals():
    c = gen_quad4(2, F(1, 17))
    assert all(isinstance(x, RadicalSum) for cert in c.certificates for x in cert.witness)
