from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

from ..exactnum import Interval, RadicalSum, to_fraction
from ..flats import EUCLIDEAN, AxisAlignedFlat, Metric

EXACT = "exact"
INTERVAL = "interval"


def natural_key(label: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", label)]


def tuple_key(labels: Sequence[str]):
    return [natural_key(s) for s in labels]


@dataclass(frozen=True)
class Certificate:
    """A site tuple together with a witness point (exact) or box (interval)."""

    tuple: tuple[str, ...]
    witness: tuple[Union[RadicalSum, Interval], ...]
    mode: str = EXACT

    def __post_init__(self):
        labels = tuple(sorted(set(self.tuple), key=natural_key))
        if len(labels) != len(self.tuple):
            raise ValueError(f"repeated label in certificate tuple {self.tuple}")
        if len(labels) < 2:
            raise ValueError("a certificate needs at least two sites")
        if self.mode not in (EXACT, INTERVAL):
            raise ValueError(f"unknown certificate mode {self.mode!r}")
        if self.mode == EXACT:
            witness = tuple(RadicalSum.coerce(c) for c in self.witness)
        else:
            witness = tuple(Interval.coerce(c) for c in self.witness)
        object.__setattr__(self, "tuple", labels)
        object.__setattr__(self, "witness", witness)

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self.tuple)


@dataclass(frozen=True)
class Construction:
    dimension: int
    sites: tuple[AxisAlignedFlat, ...]
    certificates: tuple[Certificate, ...]
    metric: Metric = EUCLIDEAN
    generator: str = "custom"
    params: dict[str, Any] = field(default_factory=dict)
    claims_non_intersecting: bool = False

    def __post_init__(self):
        sites = tuple(self.sites)
        labels = [s.label for s in sites]
        if len(set(labels)) != len(labels):
            raise ValueError("site labels must be unique")
        for s in sites:
            if s.dimension != self.dimension:
                raise ValueError(f"site {s.label} is not in R^{self.dimension}")
        known = set(labels)
        for cert in self.certificates:
            missing = cert.labels - known
            if missing:
                raise ValueError(f"certificate references unknown sites {sorted(missing)}")
            if len(cert.witness) != self.dimension:
                raise ValueError(f"witness for {cert.tuple} has dimension {len(cert.witness)}, expected {self.dimension}")
        certs = tuple(sorted(self.certificates, key=lambda c: tuple_key(c.tuple)))
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "certificates", certs)

    @property
    def n(self) -> int | None:
        return self.params.get("n")

    def site_map(self) -> dict[str, AxisAlignedFlat]:
        return {s.label: s for s in self.sites}

    def without_certificate(self, labels: Sequence[str]) -> "Construction":
        drop = frozenset(labels)
        kept = tuple(c for c in self.certificates if c.labels != drop)
        return self.replace(certificates=kept)

    def replace(self, **changes) -> "Construction":
        data = dict(
            dimension=self.dimension,
            sites=self.sites,
            certificates=self.certificates,
            metric=self.metric,
            generator=self.generator,
            params=dict(self.params),
            claims_non_intersecting=self.claims_non_intersecting,
        )
        data.update(changes)
        return Construction(**data)


def default_epsilon(n: int) -> Fraction:
    return Fraction(1, 8 * n + 1)


def check_epsilon(n: int, eps) -> Fraction:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if eps is None:
        return default_epsilon(n)
    eps = to_fraction(eps)
    if not (0 < eps < Fraction(1, 8 * n)):
        raise ValueError(f"epsilon must satisfy 0 < eps < 1/(8n) = 1/{8 * n}, got {eps}")
    return eps


def check_n(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return n


def required_exponent(d: int) -> int:
    """ceil(2d/3) in integer arithmetic."""
    return -(-2 * d // 3)
