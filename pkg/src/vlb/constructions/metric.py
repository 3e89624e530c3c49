"""Re-solve the template witnesses under an L^p metric.

The site layout is unchanged except that, for L^1, the last coordinate
separating the two groups of quad4/quint5 becomes ``M = d*n + 1``: with the
original value 1 the cross-group difference is constant outside ``[0, 1]``
and may never vanish.

Witness coordinates are solved one axis at a time, each from a pair of tuple
sites whose distance difference only involves already solved axes and the
current one.  Under L^1 every difference is piecewise linear with rational
kinks, so roots are exact rationals.  Under other metrics each root is
enclosed by certified bisection and the certificate is a box.

The within-block offset ``delta`` solves ``delta^p = k^p - (k - eps)^p``.  The
witness stays closer to its own line than to the neighbouring one only while
``delta < 1/2``; the mean value theorem gives ``delta^p <= p n^(p-1) eps``, so
eps must stay below ``1 / (P 2^P n^(P-1))`` with ``P = max(ceil(p), 2)``.  For
p = 2 this is the familiar ``1/(8n)``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import ceil
from typing import Sequence

from ..exactnum import Interval, RadicalSum
from ..flats import EUCLIDEAN, AxisAlignedFlat, Metric, lp_diff_box, lp_diff_exact
from ..settings import default_width
from .base import EXACT, INTERVAL, Certificate, Construction, check_n
from .generators import gen_grid2, gen_grid3_perturbed, gen_quad4, gen_quint5
from .solve import bits_for_width, certified_root, expand_bracket, linear_piece_root

TEMPLATES = ("grid2", "grid3p", "quad4", "quint5")
_DIMS = {"grid2": 2, "grid3p": 3, "quad4": 4, "quint5": 5}
_EXACT_GENERATORS = {"grid2": gen_grid2, "grid3p": gen_grid3_perturbed, "quad4": gen_quad4, "quint5": gen_quint5}


def epsilon_bound(n: int, metric: Metric) -> Fraction:
    """Exclusive upper bound on eps for the L^p variants."""
    P = max(ceil(metric.p), 2)
    return Fraction(1, P * 2**P * n ** (P - 1))


def default_metric_epsilon(n: int, metric: Metric) -> Fraction:
    return Fraction(1, epsilon_bound(n, metric).denominator + 1)


def l1_separator(d: int, n: int) -> Fraction:
    return Fraction(d * n + 1)


def _sites(kind: str, n: int, eps: Fraction, sep: Fraction) -> list[AxisAlignedFlat]:
    rng = range(1, n + 1)
    f = AxisAlignedFlat.from_values
    if kind == "grid2":
        return [f(f"H_{i}", [None, i]) for i in rng] + [f(f"V_{j}", [j, None]) for j in rng]
    if kind == "grid3p":
        return [f(f"A_{i}", [i, None, 0]) for i in rng] + [f(f"B_{j}", [None, j, eps]) for j in rng]
    if kind == "quad4":
        return ([f(f"A_{i}", [i, None, eps, 0]) for i in rng]
                + [f(f"B_{j}", [None, j, 0, 0]) for j in rng]
                + [f(f"C_{k}", [None, 0, k, sep]) for k in rng])
    return ([f(f"A_{i}", [i, None, 0, 0, 0]) for i in rng]
            + [f(f"B_{j}", [None, j, eps, 0, 0]) for j in rng]
            + [f(f"C_{k}", [0, 0, k, None, sep]) for k in rng]
            + [f(f"D_{l}", [eps, 0, None, l, sep]) for l in rng])


HALF = Fraction(1, 2)


def _recipes(kind: str, n: int, eps: Fraction, sep: Fraction):
    """Per tuple: labels, base point (None = unknown), solve steps.

    A step is ``(axis, site, other_site, bracket)``; bracket ``None`` means
    search outward from ``sep/2``.
    """
    rng = range(1, n + 1)
    if kind == "grid2":
        for i, j in product(rng, repeat=2):
            yield (f"H_{i}", f"V_{j}"), [j + Fraction(1, 4), None], [(1, f"H_{i}", f"V_{j}", (i, i + HALF))]
    elif kind == "grid3p":
        for i, j in product(rng, repeat=2):
            yield (f"A_{i}", f"B_{j}"), [i, j, None], [(2, f"A_{i}", f"B_{j}", (Fraction(0), eps))]
    elif kind == "quad4":
        for i, j, k in product(rng, repeat=3):
            yield ((f"A_{i}", f"B_{j}", f"C_{k}"), [None, j, k, None],
                   [(0, f"A_{i}", f"B_{j}", (i, i + HALF)), (3, f"B_{j}", f"C_{k}", None)])
    else:
        for i, j, k, l in product(rng, repeat=4):
            yield ((f"A_{i}", f"B_{j}", f"C_{k}", f"D_{l}"), [i, None, k, None, None],
                   [(1, f"A_{i}", f"B_{j}", (j, j + HALF)), (3, f"C_{k}", f"D_{l}", (l, l + HALF)),
                    (4, f"A_{i}", f"C_{k}", None)])


def _solve_exact_l1(sites, base, steps, sep) -> tuple[RadicalSum, ...]:
    metric = Metric.l1()
    x: list = list(base)
    for axis, a, b, bracket in steps:
        fa, fb = sites[a], sites[b]

        def g(t: Fraction, axis=axis, fa=fa, fb=fb) -> Fraction:
            pt = [RadicalSum.coerce(t if c == axis else x[c] if x[c] is not None else 0) for c in range(len(x))]
            return lp_diff_exact(tuple(pt), fa, fb, metric).as_fraction()

        if bracket is None:
            lo, hi = expand_bracket(lambda t: Interval.point(g(t)), sep / 2)
        else:
            lo, hi = (Fraction(v) for v in bracket)
        kinks = sorted({v for v in (fa.value(axis), fb.value(axis)) if v is not None and lo < v < hi})
        x[axis] = linear_piece_root(g, [lo, *kinks, hi])
    return tuple(RadicalSum.coerce(v) for v in x)


def _solve_box(sites, base, steps, metric: Metric, width: Fraction, sep) -> tuple[Interval, ...]:
    bits = bits_for_width(width)
    # earlier axes feed later ones, so solve them much tighter
    inner = width / (1 << 40)
    box: list = [None if v is None else Interval.point(v) for v in base]
    for pos, (axis, a, b, bracket) in enumerate(steps):
        fa, fb = sites[a], sites[b]
        w = width if pos == len(steps) - 1 else inner

        def g(t: Fraction, axis=axis, fa=fa, fb=fb) -> Interval:
            trial = [Interval.point(t) if c == axis else (v if v is not None else Interval.point(0))
                     for c, v in enumerate(box)]
            return lp_diff_box(trial, fa, fb, metric, bits)

        if bracket is None:
            lo, hi = expand_bracket(g, sep / 2)
        else:
            lo, hi = bracket
        box[axis] = certified_root(g, lo, hi, w)
    return tuple(box)


def apply_metric(kind: str, n: int, metric: Metric = EUCLIDEAN, eps=None, *, mode: str = "auto",
                 width=None) -> Construction:
    """Build ``kind`` (grid2, grid3p, quad4, quint5) under ``metric``.

    ``mode='auto'`` gives exact certificates when the witnesses are exactly
    representable (Euclidean, L^1) and interval boxes otherwise;
    ``mode='interval'`` always produces boxes.
    """
    check_n(n)
    if kind not in TEMPLATES:
        raise ValueError(f"no metric template for {kind!r}; choose from {', '.join(TEMPLATES)}")
    if mode not in ("auto", EXACT, INTERVAL):
        raise ValueError(f"unknown mode {mode!r}")
    if metric.kind == "euclidean" and mode != INTERVAL:
        gen = _EXACT_GENERATORS[kind]
        return gen(n) if kind == "grid2" else gen(n, eps)
    if mode == EXACT and metric.kind == "lp":
        raise ValueError(f"witnesses under {metric} are not exactly representable; use interval mode")

    bound = epsilon_bound(n, metric)
    if eps is None:
        eps = default_metric_epsilon(n, metric)
    eps = Fraction(eps)
    if not (0 < eps < bound):
        raise ValueError(f"epsilon must satisfy 0 < eps < {bound} for {metric} with n = {n}, got {eps}")
    d = _DIMS[kind]
    sep = l1_separator(d, n) if metric.kind == "l1" and kind in ("quad4", "quint5") else Fraction(1)
    sites = _sites(kind, n, eps, sep)
    smap = {s.label: s for s in sites}
    w = Fraction(width) if width is not None else default_width()

    certs = []
    for labels, base, steps in _recipes(kind, n, eps, sep):
        base = [None if v is None else Fraction(v) for v in base]
        if metric.kind == "l1" and mode != INTERVAL:
            certs.append(Certificate(labels, _solve_exact_l1(smap, base, steps, sep), EXACT))
        else:
            certs.append(Certificate(labels, _solve_box(smap, base, steps, metric, w, sep), INTERVAL))
    params = {"n": n, "epsilon": eps, "template": kind}
    if sep != 1:
        params["separator"] = sep
    return Construction(d, tuple(sites), tuple(certs), metric=metric, generator=f"{kind}",
                        params=params, claims_non_intersecting=kind != "grid2")
