"""Product of two constructions in R^{p+q+1}.

P's sites become ``(x, 0...0, 0)`` and Q's become ``(0...0, y, s)`` (``s`` = 1
by default).  On the line ``(x, y, t)`` through a witness ``x`` of P and ``y``
of Q, the p-th power distance to P's tuple is ``D_A + |y|^p + |t|^p`` and to
Q's tuple ``|x|^p + D_B + |t - s|^p``.  For p = 2 the difference is affine in t
and vanishes at::

    t* = (s^2 + D_B + |x|^2 - D_A - |y|^2) / (2 s)

For other p it is monotone in t and its root is enclosed by bisection.  Sites
outside either tuple stay strictly farther for every t, so each pair of input
certificates yields a certificate of the product.
"""
from __future__ import annotations

from fractions import Fraction

from ..exactnum import Interval, RadicalSum
from ..flats import AxisAlignedFlat, lp_box_power, lp_dist_pth_power, sq_dist_point_flat
from .base import EXACT, INTERVAL, Certificate, Construction
from ..settings import default_width
from .solve import bits_for_width, certified_root, expand_bracket, linear_piece_root


def _embed(site: AxisAlignedFlat, before: int, after: int, last: Fraction, prefix: str) -> AxisAlignedFlat:
    values = [Fraction(0)] * before + site.values() + [Fraction(0)] * after + [last]
    return AxisAlignedFlat.from_values(f"{prefix}.{site.label}", values)


def aggregate(P: Construction, Q: Construction, *, separator=1, prefixes=("p", "q"),
              width=None) -> Construction:
    if P.metric != Q.metric:
        raise ValueError(f"metric mismatch: {P.metric} vs {Q.metric}")
    metric = P.metric
    sep = Fraction(separator)
    if sep <= 0:
        raise ValueError("separator value must be positive")
    dp, dq = P.dimension, Q.dimension
    pa, pb = prefixes
    sites = tuple(_embed(s, 0, dq, Fraction(0), pa) for s in P.sites) + \
        tuple(_embed(s, dp, 0, sep, pb) for s in Q.sites)
    psites, qsites = P.site_map(), Q.site_map()

    all_exact = all(c.mode == EXACT for c in P.certificates + Q.certificates)
    certs = []
    if all_exact and metric.kind == "euclidean":
        pinfo = [(c, sq_dist_point_flat(c.witness, psites[c.tuple[0]]),
                  sum((x * x for x in c.witness), RadicalSum())) for c in P.certificates]
        qinfo = [(c, sq_dist_point_flat(c.witness, qsites[c.tuple[0]]),
                  sum((y * y for y in c.witness), RadicalSum())) for c in Q.certificates]
        for cp, dA, xx in pinfo:
            for cq, dB, yy in qinfo:
                t = (sep * sep + dB + xx - dA - yy) / (2 * sep)
                certs.append(_combine(cp, cq, (t,), pa, pb, EXACT))
    elif all_exact and metric.kind == "l1" and _rational_witnesses(P, Q):
        for cp in P.certificates:
            x = cp.witness
            dA = lp_dist_pth_power(x, psites[cp.tuple[0]], metric).as_fraction()
            xx = sum(abs(c.as_fraction()) for c in x)
            for cq in Q.certificates:
                y = cq.witness
                dB = lp_dist_pth_power(y, qsites[cq.tuple[0]], metric).as_fraction()
                yy = sum(abs(c.as_fraction()) for c in y)
                c0 = dA + yy - xx - dB
                # g(t) = c0 + |t| - |t - s| is flat outside [0, s]
                t = linear_piece_root(lambda t: c0 + abs(t) - abs(t - sep), [Fraction(0), sep])
                certs.append(_combine(cp, cq, (t,), pa, pb, EXACT))
    else:
        w = Fraction(width) if width is not None else default_width()
        bits = bits_for_width(w)
        for cp in P.certificates:
            xb = tuple(Interval.coerce(v) if not isinstance(v, RadicalSum) else v.enclose(bits) for v in cp.witness)
            dA = lp_box_power(xb, psites[cp.tuple[0]], metric, bits)
            xx = _norm_power(xb, metric, bits)
            for cq in Q.certificates:
                yb = tuple(Interval.coerce(v) if not isinstance(v, RadicalSum) else v.enclose(bits) for v in cq.witness)
                dB = lp_box_power(yb, qsites[cq.tuple[0]], metric, bits)
                yy = _norm_power(yb, metric, bits)
                c0 = dA + yy - xx - dB

                def g(t: Fraction, c0=c0) -> Interval:
                    return (c0 + abs(Interval.point(t)).pow_rational(metric.p, bits)
                            - abs(Interval.point(t - sep)).pow_rational(metric.p, bits))

                lo, hi = expand_bracket(g, sep / 2)
                t = certified_root(g, lo, hi, w)
                certs.append(_combine(cp, cq, (t,), pa, pb, INTERVAL, xb, yb))

    params = {"blocks": [P.generator, Q.generator], "separator": sep}
    if P.n is not None and P.n == Q.n:
        params["n"] = P.n
    if "epsilon" in P.params or "epsilon" in Q.params:
        params["epsilon"] = P.params.get("epsilon", Q.params.get("epsilon"))
    return Construction(dp + dq + 1, sites, tuple(certs), metric=metric, generator="aggregate",
                        params=params,
                        claims_non_intersecting=P.claims_non_intersecting and Q.claims_non_intersecting)


def _rational_witnesses(P: Construction, Q: Construction) -> bool:
    return all(v.is_rational() for c in P.certificates + Q.certificates for v in c.witness)


def _norm_power(box, metric, bits) -> Interval:
    total = Interval.point(0)
    for v in box:
        total = total + abs(v).pow_rational(metric.p, bits)
    return total


def _combine(cp: Certificate, cq: Certificate, tail, pa: str, pb: str, mode: str,
             xb=None, yb=None) -> Certificate:
    labels = tuple(f"{pa}.{s}" for s in cp.tuple) + tuple(f"{pb}.{s}" for s in cq.tuple)
    if mode == EXACT:
        witness = tuple(cp.witness) + tuple(cq.witness) + tuple(tail)
    else:
        witness = tuple(xb) + tuple(yb) + tuple(tail)
    return Certificate(labels, witness, mode)
