"""Certificate checking.

Exact mode compares p-th power distances as exact RadicalSums: every tuple site
must tie with the reference site and every other site must be strictly
farther.

Interval mode works on a witness box.  Dominance must hold over the whole box.
Existence of an equidistant point inside the box is proven with the
Poincare-Miranda theorem: pick a spanning tree of tuple-site pairs and assign
each pair its own non-degenerate box axis such that the pair's distance
difference has opposite strict signs on the two faces of the box orthogonal
to that axis (evaluated over the full extent of all other axes).  The
one-dimensional case is the intermediate value theorem along the free
direction of an aggregation.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..constructions.base import EXACT, INTERVAL, Certificate, Construction, required_exponent
from ..constructions.solve import bits_for_width
from ..exactnum import Interval, RadicalSum
from ..flats import AxisAlignedFlat, intersecting_pairs, lp_diff_box, lp_diff_exact

EXACT_PASS = "exact-pass"
INTERVAL_PASS = "interval-pass"
FAIL = "fail"


class CertificateError(ValueError):
    """Certificate does not fit the construction (unknown site, wrong dimension)."""


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def __str__(self) -> str:
        return self.status if self.reason is None else f"{self.status}: {self.reason}"


@dataclass(frozen=True)
class BoundCheck:
    n: int
    d: int
    required: int
    achieved: int
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    verdicts: tuple[tuple[tuple[str, ...], Verdict], ...]
    intersecting_pairs: tuple[tuple[str, str], ...]
    distinct_count: int
    bound: BoundCheck | None
    claims_non_intersecting: bool = False
    elapsed: float = field(default=0.0, compare=False)

    @property
    def total(self) -> int:
        return len(self.verdicts)

    @property
    def passed(self) -> int:
        return sum(v.passed for _, v in self.verdicts)

    @property
    def exact_passed(self) -> int:
        return sum(v.status == EXACT_PASS for _, v in self.verdicts)

    @property
    def interval_passed(self) -> int:
        return sum(v.status == INTERVAL_PASS for _, v in self.verdicts)

    @property
    def failures(self) -> list[tuple[tuple[str, ...], Verdict]]:
        return [(t, v) for t, v in self.verdicts if not v.passed]

    @property
    def all_certificates_pass(self) -> bool:
        return self.passed == self.total

    @property
    def ok(self) -> bool:
        if not self.all_certificates_pass:
            return False
        if self.bound is not None and not self.bound.passed:
            return False
        return not (self.claims_non_intersecting and self.intersecting_pairs)

    def summary(self) -> str:
        lines = []
        if self.interval_passed and not self.exact_passed:
            lines.append(f"{self.passed}/{self.total} interval")
        elif self.interval_passed:
            lines.append(f"{self.passed}/{self.total} certified ({self.exact_passed} exact, {self.interval_passed} interval)")
        else:
            lines.append(f"{self.passed}/{self.total} exact")
        lines.append(f"distinct certified tuples: {self.distinct_count}")
        if self.intersecting_pairs:
            lines.append(f"intersecting site pairs: {len(self.intersecting_pairs)}")
        else:
            lines.append("intersecting site pairs: none")
        if self.bound is not None:
            b = self.bound
            lines.append(f"bound n^ceil(2d/3): n={b.n} d={b.d} required={b.required} "
                         f"achieved={b.achieved} {'PASS' if b.passed else 'FAIL'}")
        for tup, v in self.failures:
            lines.append(f"FAIL {{{', '.join(tup)}}}: {v.reason}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "certificates": [{"tuple": list(t), "status": v.status, "reason": v.reason} for t, v in self.verdicts],
            "total": self.total,
            "passed": self.passed,
            "exact_passed": self.exact_passed,
            "interval_passed": self.interval_passed,
            "intersecting_pairs": [list(p) for p in self.intersecting_pairs],
            "claims_non_intersecting": self.claims_non_intersecting,
            "distinct_count": self.distinct_count,
            "bound": None if self.bound is None else {
                "n": self.bound.n, "d": self.bound.d, "required": self.bound.required,
                "achieved": self.bound.achieved, "pass": self.bound.passed,
            },
            "ok": self.ok,
        }


def check_bound(count: int, n: int, d: int) -> bool:
    """True iff ``count >= n**ceil(2d/3)`` (integer arithmetic only)."""
    return count >= n ** required_exponent(d)


def _resolve(c: Construction, cert: Certificate) -> tuple[list[AxisAlignedFlat], list[AxisAlignedFlat]]:
    sites = c.site_map()
    unknown = [s for s in cert.tuple if s not in sites]
    if unknown:
        raise CertificateError(f"certificate references unknown sites {unknown}")
    if len(cert.witness) != c.dimension:
        raise CertificateError(f"witness dimension {len(cert.witness)} != {c.dimension}")
    inside = [sites[s] for s in cert.tuple]
    members = cert.labels
    outside = [s for s in c.sites if s.label not in members]
    return inside, outside


def _verify_exact(c: Construction, cert: Certificate, inside, outside) -> Verdict:
    if not c.metric.is_integer:
        return Verdict(FAIL, f"exact witnesses cannot be checked under {c.metric}; use an interval box")
    x = tuple(RadicalSum.coerce(v) for v in cert.witness)
    squares = tuple(v * v for v in x) if c.metric.p == 2 else None
    ref = inside[0]
    for s in inside[1:]:
        if lp_diff_exact(x, s, ref, c.metric, squares).sign() != 0:
            return Verdict(FAIL, f"equidistance broken between {ref.label} and {s.label}")
    for s in outside:
        sgn = lp_diff_exact(x, s, ref, c.metric, squares).sign()
        if sgn <= 0:
            what = "ties" if sgn == 0 else "is closer"
            return Verdict(FAIL, f"dominance violated: {s.label} {what}")
    return Verdict(EXACT_PASS)


def _face(box: Sequence[Interval], axis: int, value: Fraction) -> list[Interval]:
    out = list(box)
    out[axis] = Interval.point(value)
    return out


def _edge_axes(box, a, b, axes, metric, bits) -> set:
    """Axes along which the pair's difference changes sign across the box."""
    if not any(a.value(k) != b.value(k) for k in range(a.dimension)):
        return {None}
    good = set()
    for ax in axes:
        lo = lp_diff_box(_face(box, ax, box[ax].lower), a, b, metric, bits).sign()
        hi = lp_diff_box(_face(box, ax, box[ax].upper), a, b, metric, bits).sign()
        if lo in (-1, 1) and hi == -lo:
            good.add(ax)
    return good


def _miranda_assignment(inside, box, metric, bits):
    axes = [k for k, iv in enumerate(box) if iv.width > 0]
    m = len(inside) - 1
    edges = [(i, j) for i, j in combinations(range(len(inside)), 2)]
    cache: dict = {}

    def valid(e):
        if e not in cache:
            cache[e] = _edge_axes(box, inside[e[0]], inside[e[1]], axes, metric, bits)
        return cache[e]

    def find(comp, i):
        while comp[i] != i:
            i = comp[i]
        return i

    def search(pos, comp, used, chosen):
        if len(chosen) == m:
            return chosen
        if pos == len(edges) or len(edges) - pos < m - len(chosen):
            return None
        i, j = edges[pos]
        ri, rj = find(comp, i), find(comp, j)
        if ri != rj:
            for ax in sorted(valid(edges[pos]), key=lambda a: -1 if a is None else a):
                if ax is not None and ax in used:
                    continue
                comp2 = list(comp)
                comp2[ri] = rj
                got = search(pos + 1, comp2, used | ({ax} - {None}), chosen + [(edges[pos], ax)])
                if got is not None:
                    return got
        return search(pos + 1, comp, used, chosen)

    return search(0, list(range(len(inside))), frozenset(), [])


def _verify_interval(c: Construction, cert: Certificate, inside, outside) -> Verdict:
    box = cert.witness
    widths = [iv.width for iv in box if iv.width > 0]
    bits = bits_for_width(min(widths) if widths else Fraction(1, 10**30), extra=64)
    ref = inside[0]
    for s in outside:
        sgn = lp_diff_box(box, s, ref, c.metric, bits).sign()
        if sgn != 1:
            return Verdict(FAIL, f"dominance not certified over the box: {s.label}")
    if _miranda_assignment(inside, box, c.metric, bits) is None:
        return Verdict(FAIL, "no sign-change certificate for an equidistant point inside the box")
    return Verdict(INTERVAL_PASS)


def verify_certificate(c: Construction, cert: Certificate, mode: str | None = None) -> Verdict:
    """Check one certificate; raises CertificateError when it does not fit ``c``.

    ``mode='exact'`` refuses box witnesses.  Point witnesses are always checked
    exactly, which is at least as strong as any interval test.
    """
    inside, outside = _resolve(c, cert)
    if cert.mode == EXACT:
        return _verify_exact(c, cert, inside, outside)
    if mode == EXACT:
        return Verdict(FAIL, "box witness cannot be checked in exact mode")
    return _verify_interval(c, cert, inside, outside)


def _safe_verify(c: Construction, cert: Certificate, mode) -> Verdict:
    try:
        return verify_certificate(c, cert, mode)
    except CertificateError as exc:
        return Verdict(FAIL, str(exc))


def _verify_chunk(args) -> list[Verdict]:
    c, certs, mode = args
    return [_safe_verify(c, cert, mode) for cert in certs]


def verify_construction(c: Construction, mode: str | None = None, jobs: int = 1) -> VerificationReport:
    start = time.perf_counter()
    certs = list(c.certificates)
    if jobs > 1 and len(certs) > 1:
        size = -(-len(certs) // jobs)
        chunks = [(c, certs[i : i + size], mode) for i in range(0, len(certs), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = [v for part in pool.map(_verify_chunk, chunks) for v in part]
    else:
        verdicts = _verify_chunk((c, certs, mode))
    pairs = tuple(intersecting_pairs(c.sites))
    distinct = len({cert.labels for cert, v in zip(certs, verdicts) if v.passed})
    bound = None
    n = c.params.get("n")
    if isinstance(n, int) and n >= 1 and c.dimension >= 2:
        req = n ** required_exponent(c.dimension)
        bound = BoundCheck(n, c.dimension, req, distinct, distinct >= req)
    return VerificationReport(
        verdicts=tuple((cert.tuple, v) for cert, v in zip(certs, verdicts)),
        intersecting_pairs=pairs,
        distinct_count=distinct,
        bound=bound,
        claims_non_intersecting=c.claims_non_intersecting,
        elapsed=time.perf_counter() - start,
    )
