"""Axis-aligned flats, metrics and point/flat distances.

Coordinates are 0-based throughout.  A flat fixes some coordinates to exact
rationals and leaves the rest free, so the closest point of the flat to ``x``
simply copies ``x`` in every free coordinate.  Any L^p distance to the flat
is therefore a sum over the fixed coordinates, and all comparisons can be
done on p-th powers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .exactnum import Interval, RadicalSum, to_fraction

Point = tuple[RadicalSum, ...]
Box = tuple[Interval, ...]
Coordinate = Union[RadicalSum, Interval]


def make_point(coords: Iterable) -> Point:
    return tuple(RadicalSum.coerce(c) for c in coords)


@dataclass(frozen=True)
class Metric:
    """L^p metric, 1 <= p < inf.  ``p == 2`` is the Euclidean metric."""

    p: Fraction = Fraction(2)

    def __post_init__(self):
        p = to_fraction(self.p)
        if p < 1:
            raise ValueError(f"L^p needs p >= 1, got {p}")
        object.__setattr__(self, "p", p)

    @classmethod
    def euclidean(cls) -> "Metric":
        return cls(Fraction(2))

    @classmethod
    def l1(cls) -> "Metric":
        return cls(Fraction(1))

    @classmethod
    def lp(cls, p) -> "Metric":
        p = to_fraction(p)
        if p <= 1:
            raise ValueError("lp metric needs p > 1 (use l1 for p = 1)")
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Metric":
        t = text.strip().lower()
        if t in ("euclidean", "l2"):
            return cls.euclidean()
        if t == "l1":
            return cls.l1()
        if t in ("linf", "lp:inf", "l-inf"):
            raise ValueError("the L-infinity metric is not supported")
        if t.startswith("lp:"):
            return cls.lp(t[3:])
        raise ValueError(f"unknown metric {text!r} (expected euclidean, lp:P or l1)")

    @property
    def kind(self) -> str:
        if self.p == 2:
            return "euclidean"
        if self.p == 1:
            return "l1"
        return "lp"

    @property
    def is_integer(self) -> bool:
        return self.p.denominator == 1

    def __str__(self) -> str:
        if self.kind == "lp":
            return f"lp:{self.p}"
        return self.kind


EUCLIDEAN = Metric.euclidean()


@dataclass(frozen=True)
class AxisAlignedFlat:
    dimension: int
    free: frozenset[int]
    fixed: tuple[tuple[int, Fraction], ...]
    label: str
    _fixed_map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        free = frozenset(int(c) for c in self.free)
        fixed = tuple(sorted((int(c), to_fraction(v)) for c, v in self.fixed))
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "fixed", fixed)
        keys = [c for c, _ in fixed]
        if len(set(keys)) != len(keys):
            raise ValueError(f"{self.label}: coordinate fixed twice")
        if free & set(keys) or free | set(keys) != set(range(self.dimension)):
            raise ValueError(f"{self.label}: free and fixed coordinates must partition 0..{self.dimension - 1}")
        if len(keys) == 0:
            raise ValueError(f"{self.label}: a flat must fix at least one coordinate")
        object.__setattr__(self, "_fixed_map", dict(fixed))

    @classmethod
    def from_values(cls, label: str, values: Sequence) -> "AxisAlignedFlat":
        """Build from a coordinate list, ``None`` marking a free slot."""
        free = [i for i, v in enumerate(values) if v is None]
        fixed = [(i, v) for i, v in enumerate(values) if v is not None]
        return cls(len(values), frozenset(free), tuple(fixed), label)

    @property
    def flat_dim(self) -> int:
        return len(self.free)

    @property
    def fixed_map(self) -> Mapping[int, Fraction]:
        return self._fixed_map

    @property
    def family(self) -> str:
        return self.label.rsplit("_", 1)[0]

    def value(self, coord: int) -> Fraction | None:
        return self._fixed_map.get(coord)

    def translated(self, shift: Sequence) -> "AxisAlignedFlat":
        fixed = tuple((c, v + to_fraction(shift[c])) for c, v in self.fixed)
        return AxisAlignedFlat(self.dimension, self.free, fixed, self.label)

    def relabeled(self, label: str) -> "AxisAlignedFlat":
        return AxisAlignedFlat(self.dimension, self.free, self.fixed, label)

    def values(self) -> list:
        return [self._fixed_map.get(i) for i in range(self.dimension)]

    def __str__(self) -> str:
        body = ",".join("*" if v is None else str(v) for v in self.values())
        return f"{self.label}=({body})"


def _check_dim(x: Sequence, f: AxisAlignedFlat) -> None:
    if len(x) != f.dimension:
        raise ValueError(f"dimension mismatch: point has {len(x)} coordinates, {f.label} lives in R^{f.dimension}")


def sq_dist_point_flat(x: Point, f: AxisAlignedFlat) -> RadicalSum:
    _check_dim(x, f)
    total = RadicalSum()
    for c, v in f.fixed:
        diff = x[c] - v
        total = total + diff * diff
    return total


def _exact_abs_pow(diff: RadicalSum, p: int) -> RadicalSum:
    if p % 2 == 0:
        return diff**p
    return abs(diff) ** p


def lp_dist_pth_power(x: Point, f: AxisAlignedFlat, metric: Metric = EUCLIDEAN, width_bound=None):
    """p-th power of the L^p distance from ``x`` to ``f``.

    Exact (a RadicalSum) for integer p.  For fractional p an Interval of width at
    most ``width_bound`` (default 2**-64) is returned.
    """
    _check_dim(x, f)
    if metric.is_integer:
        p = int(metric.p)
        total = RadicalSum()
        for c, v in f.fixed:
            total = total + _exact_abs_pow(x[c] - v, p)
        return total
    bound = to_fraction(width_bound) if width_bound is not None else Fraction(1, 1 << 64)
    bits = 64
    while True:
        box = tuple(xi.enclose(bits) for xi in x)
        enc = lp_box_power(box, f, metric, bits)
        if enc.width <= bound:
            return enc
        bits *= 2


def lp_box_power(box: Sequence[Coordinate], f: AxisAlignedFlat, metric: Metric = EUCLIDEAN, bits: int = 128) -> Interval:
    """Enclosure of the p-th power distance over a box of coordinates."""
    _check_dim(box, f)
    total = Interval.point(0)
    for c, v in f.fixed:
        total = total + _abs_pow_interval(Interval.coerce(box[c]) - v, metric.p, bits)
    return total


def _abs_pow_interval(d: Interval, p: Fraction, bits: int) -> Interval:
    return abs(d).pow_rational(p, bits)


def _differing_coords(f: AxisAlignedFlat, g: AxisAlignedFlat) -> list[int]:
    # coordinates where the two flats contribute different terms
    return [c for c in range(f.dimension) if f.value(c) != g.value(c)]


def lp_diff_box(box: Sequence[Coordinate], f: AxisAlignedFlat, g: AxisAlignedFlat,
                metric: Metric = EUCLIDEAN, bits: int = 128) -> Interval:
    """Enclosure of ``dist_p(x, f)**p - dist_p(x, g)**p`` over a box.

    Coordinates where both flats agree cancel symbolically, which keeps the
    enclosure tight.
    """
    _check_dim(box, f)
    _check_dim(box, g)
    total = Interval.point(0)
    for c in _differing_coords(f, g):
        xc = Interval.coerce(box[c])
        vf, vg = f.value(c), g.value(c)
        if vf is not None:
            total = total + _abs_pow_interval(xc - vf, metric.p, bits)
        if vg is not None:
            total = total - _abs_pow_interval(xc - vg, metric.p, bits)
    return total


def lp_diff_exact(x: Point, f: AxisAlignedFlat, g: AxisAlignedFlat, metric: Metric = EUCLIDEAN,
                  squares: Sequence[RadicalSum] | None = None) -> RadicalSum:
    """Exact ``dist_p(x, f)**p - dist_p(x, g)**p`` for integer p.

    For p = 2 the squares ``x_c**2`` may be passed in precomputed; every term is
    then expanded as ``x_c**2 - 2 v x_c + v**2`` and needs no radical products.
    """
    if not metric.is_integer:
        raise ValueError(f"exact distances need an integer exponent, metric is {metric}")
    _check_dim(x, f)
    _check_dim(x, g)
    p = int(metric.p)
    if p == 2:
        return _sq_diff(x, f, g, squares)
    total = RadicalSum()
    for c in _differing_coords(f, g):
        vf, vg = f.value(c), g.value(c)
        if vf is not None:
            total = total + _exact_abs_pow(x[c] - vf, p)
        if vg is not None:
            total = total - _exact_abs_pow(x[c] - vg, p)
    return total


def _sq_diff(x: Point, f: AxisAlignedFlat, g: AxisAlignedFlat, squares) -> RadicalSum:
    weighted: list = []
    const = Fraction(0)
    for c in _differing_coords(f, g):
        vf, vg = f.value(c), g.value(c)
        if vf is not None and vg is not None:
            # (x - vf)^2 - (x - vg)^2 = 2 (vg - vf) x + vf^2 - vg^2
            weighted.append((2 * (vg - vf), x[c]))
            const += vf * vf - vg * vg
            continue
        sq = squares[c] if squares is not None else x[c] * x[c]
        if vf is not None:
            weighted += [(Fraction(1), sq), (-2 * vf, x[c])]
            const += vf * vf
        else:
            weighted += [(Fraction(-1), sq), (2 * vg, x[c])]
            const -= vg * vg
    return RadicalSum.combine(weighted, const)


def sq_dist_flat_flat(f: AxisAlignedFlat, g: AxisAlignedFlat) -> Fraction:
    """Squared Euclidean distance between two axis-aligned flats (0 iff they meet)."""
    if f.dimension != g.dimension:
        raise ValueError(f"dimension mismatch between {f.label} and {g.label}")
    total = Fraction(0)
    for c, v in f.fixed:
        w = g.value(c)
        if w is not None:
            total += (v - w) ** 2
    return total


def flats_intersect(f: AxisAlignedFlat, g: AxisAlignedFlat) -> bool:
    return sq_dist_flat_flat(f, g) == 0


def intersecting_pairs(sites: Sequence[AxisAlignedFlat]) -> list[tuple[str, str]]:
    out = []
    for i, f in enumerate(sites):
        for g in sites[i + 1 :]:
            if flats_intersect(f, g):
                out.append((f.label, g.label))
    return out
