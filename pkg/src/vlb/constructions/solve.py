"""Certified one-dimensional root enclosure.

``g`` maps a rational point to an Interval enclosing the true function value
(other inputs of the function may themselves be intervals).  A bracket is
accepted only when the enclosures at both ends exclude zero with opposite
signs, so by continuity a root lies inside.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from ..exactnum import Interval

IntervalFn = Callable[[Fraction], Interval]


class NoRootError(ValueError):
    pass


def _strict(iv: Interval) -> int:
    s = iv.sign()
    return 0 if s is None else s


def expand_bracket(g: IntervalFn, center: Fraction, step: Fraction = Fraction(1),
                   max_doublings: int = 200) -> tuple[Fraction, Fraction]:
    for _ in range(max_doublings):
        lo, hi = center - step, center + step
        slo, shi = _strict(g(lo)), _strict(g(hi))
        if slo and shi and slo == -shi:
            return lo, hi
        step *= 2
    raise NoRootError("no sign change found while expanding the bracket")


def certified_root(g: IntervalFn, lo, hi, width) -> Interval:
    """Bisect ``[lo, hi]`` down to ``width`` keeping certified opposite end signs."""
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    slo, shi = _strict(g(lo)), _strict(g(hi))
    if not (slo and shi and slo == -shi):
        raise NoRootError(f"no certified sign change on [{float(lo)}, {float(hi)}]")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _strict(g(mid))
        if s == slo:
            lo = mid
        elif s == shi:
            hi = mid
        else:
            # root at or extremely close to mid; try a tight bracket around it
            q = width / 4
            if _strict(g(mid - q)) == slo and _strict(g(mid + q)) == shi:
                return Interval(mid - q, mid + q)
            raise NoRootError("could not separate the root from the bisection midpoint")
    return Interval(lo, hi)


def linear_piece_root(g: Callable[[Fraction], Fraction], points: list[Fraction]) -> Fraction:
    """Exact root of a continuous piecewise-linear ``g`` whose kinks are in ``points``.

    ``points`` must be sorted, include every kink in range and start/end with a
    sign change.
    """
    vals = [g(x) for x in points]
    for (a, ga), (b, gb) in zip(zip(points, vals), zip(points[1:], vals[1:])):
        if ga == 0:
            return a
        if (ga < 0) != (gb < 0) or gb == 0:
            return a - ga * (b - a) / (gb - ga)
    raise NoRootError("piecewise-linear function has no sign change on the given points")


def bits_for_width(width: Fraction, extra: int = 80) -> int:
    """Binary precision comfortably finer than ``width``."""
    w = Fraction(width)
    bits = 0
    while Fraction(1, 1 << bits) > w:
        bits += 1
    return bits + extra
