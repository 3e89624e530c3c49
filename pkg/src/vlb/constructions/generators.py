"""Explicit constructions for lines (and hyperplanes) with many Voronoi tuples.

Index ranges are 1..n for every family and all sites are axis-aligned.  Each
generator emits one exact certificate per tuple it claims, in canonical order.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..exactnum import RadicalSum
from ..flats import AxisAlignedFlat
from .base import Certificate, Construction, check_epsilon, check_n

QUARTER = Fraction(1, 4)


def _sqrt(q) -> RadicalSum:
    return RadicalSum.sqrt(q)


def gen_grid2(n: int) -> Construction:
    """Square grid of 2n lines in the plane; n^2 tuples {H_i, V_j}."""
    check_n(n)
    H = {i: AxisAlignedFlat.from_values(f"H_{i}", [None, i]) for i in range(1, n + 1)}
    V = {j: AxisAlignedFlat.from_values(f"V_{j}", [j, None]) for j in range(1, n + 1)}
    certs = [
        Certificate((H[i].label, V[j].label), (j + QUARTER, i + QUARTER))
        for i, j in product(range(1, n + 1), repeat=2)
    ]
    return Construction(2, tuple(H.values()) + tuple(V.values()), tuple(certs),
                        generator="grid2", params={"n": n})


def gen_grid3_perturbed(n: int, eps=None) -> Construction:
    """The planar grid lifted to R^3 with the second family raised by eps."""
    check_n(n)
    eps = check_epsilon(n, eps)
    A = [AxisAlignedFlat.from_values(f"A_{i}", [i, None, 0]) for i in range(1, n + 1)]
    B = [AxisAlignedFlat.from_values(f"B_{j}", [None, j, eps]) for j in range(1, n + 1)]
    certs = [
        Certificate((f"A_{i}", f"B_{j}"), (i, j, eps / 2))
        for i, j in product(range(1, n + 1), repeat=2)
    ]
    return Construction(3, tuple(A + B), tuple(certs), generator="grid3p",
                        params={"n": n, "epsilon": eps}, claims_non_intersecting=True)


def gen_quad4(n: int, eps=None) -> Construction:
    """Three families of lines in R^4 with n^3 tuples {A_i, B_j, C_k}.

    Witness ``(i + sqrt(2 eps k - eps^2), j, k, (j^2 - k^2 + 1)/2)``; its squared
    distance to each of the three lines is ``k^2 + x4^2``.
    """
    check_n(n)
    eps = check_epsilon(n, eps)
    rng = range(1, n + 1)
    A = [AxisAlignedFlat.from_values(f"A_{i}", [i, None, eps, 0]) for i in rng]
    B = [AxisAlignedFlat.from_values(f"B_{j}", [None, j, 0, 0]) for j in rng]
    C = [AxisAlignedFlat.from_values(f"C_{k}", [None, 0, k, 1]) for k in rng]
    certs = []
    for i, j, k in product(rng, repeat=3):
        x1 = i + _sqrt(2 * eps * k - eps * eps)
        x4 = Fraction(j * j - k * k + 1, 2)
        certs.append(Certificate((f"A_{i}", f"B_{j}", f"C_{k}"), (x1, j, k, x4)))
    return Construction(4, tuple(A + B + C), tuple(certs), generator="quad4",
                        params={"n": n, "epsilon": eps}, claims_non_intersecting=True)


def quint5_witness(i: int, j: int, k: int, l: int, eps: Fraction) -> tuple[RadicalSum, ...]:
    x1 = RadicalSum.rational(i)
    x2 = j + _sqrt(2 * k * eps - eps * eps)
    x3 = RadicalSum.rational(k)
    x4 = l + _sqrt(2 * i * eps - eps * eps)
    x5 = (1 + x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4) / 2
    return (x1, x2, x3, x4, x5)


def gen_quint5(n: int, eps=None) -> Construction:
    """Four families of pairwise disjoint lines in R^5 with n^4 tuples."""
    check_n(n)
    eps = check_epsilon(n, eps)
    rng = range(1, n + 1)
    A = [AxisAlignedFlat.from_values(f"A_{i}", [i, None, 0, 0, 0]) for i in rng]
    B = [AxisAlignedFlat.from_values(f"B_{j}", [None, j, eps, 0, 0]) for j in rng]
    C = [AxisAlignedFlat.from_values(f"C_{k}", [0, 0, k, None, 1]) for k in rng]
    D = [AxisAlignedFlat.from_values(f"D_{l}", [eps, 0, None, l, 1]) for l in rng]
    certs = [
        Certificate((f"A_{i}", f"B_{j}", f"C_{k}", f"D_{l}"), quint5_witness(i, j, k, l, eps))
        for i, j, k, l in product(rng, repeat=4)
    ]
    return Construction(5, tuple(A + B + C + D), tuple(certs), generator="quint5",
                        params={"n": n, "epsilon": eps}, claims_non_intersecting=True)


def gen_hypergrid(k: int, n: int) -> Construction:
    """Grid of (k+1)n axis-parallel hyperplanes in R^{k+1}; n^{k+1} tuples.

    Family ``F{f}`` fixes coordinate f (1-based) to its member index.
    """
    check_n(n)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"flat dimension k must be a positive integer, got {k!r}")
    d = k + 1
    sites = []
    for f in range(d):
        for i in range(1, n + 1):
            values = [None] * d
            values[f] = i
            sites.append(AxisAlignedFlat.from_values(f"F{f + 1}_{i}", values))
    certs = [
        Certificate(tuple(f"F{f + 1}_{i}" for f, i in enumerate(idx)), tuple(i + QUARTER for i in idx))
        for idx in product(range(1, n + 1), repeat=d)
    ]
    return Construction(d, tuple(sites), tuple(certs), generator="hypergrid",
                        params={"n": n, "flat_dim": k})
