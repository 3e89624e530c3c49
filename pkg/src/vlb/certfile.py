"""Certificate files (format ``vlb/1``).

JSON document, self-contained: sites, witnesses and the metric are stored
exactly, so a reader can verify without re-running any generator.

Encodings
  rational     ``"num/den"``
  radical sum  list of ``["num/den", radicand]`` pairs (empty list = 0)
  interval     ``["lo", "hi"]`` rationals
  site         ``{"label", "free": [coords], "fixed": [[coord, rational], ...]}``
  certificate  ``{"tuple": [labels], "mode": "exact"|"interval", "witness": [...]}``

Coordinates are 0-based.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import __version__
from .constructions.base import EXACT, INTERVAL, Certificate, Construction
from .exactnum import Interval, RadicalSum, format_rational, parse_rational
from .flats import AxisAlignedFlat, Metric

FORMAT = "vlb/1"
_RATIONAL_PARAMS = {"epsilon", "separator"}


class MalformedFile(ValueError):
    pass


def _enc_param(v: Any) -> Any:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, (list, tuple)):
        return [_enc_param(x) for x in v]
    return v


def _enc_radical(x: RadicalSum) -> list:
    return [[format_rational(c), m] for c, m in x.pairs()]


def _enc_interval(x: Interval) -> list:
    return [format_rational(x.lower), format_rational(x.upper)]


def to_document(c: Construction) -> dict:
    eps = c.params.get("epsilon")
    return {
        "format": FORMAT,
        "generator": {"name": c.generator, "params": {k: _enc_param(v) for k, v in c.params.items()}},
        "dimension": c.dimension,
        "metric": str(c.metric),
        "n": c.params.get("n"),
        "epsilon": None if eps is None else format_rational(Fraction(eps)),
        "claims": {"non_intersecting": c.claims_non_intersecting},
        "created_by": f"vlb {__version__}",
        "sites": [
            {"label": s.label, "free": sorted(s.free), "fixed": [[k, format_rational(v)] for k, v in s.fixed]}
            for s in c.sites
        ],
        "certificates": [
            {
                "tuple": list(cert.tuple),
                "mode": cert.mode,
                "witness": [_enc_radical(x) if cert.mode == EXACT else _enc_interval(x) for x in cert.witness],
            }
            for cert in c.certificates
        ],
    }


def dumps(c: Construction) -> str:
    return json.dumps(to_document(c), indent=1) + "\n"


def write(c: Construction, path) -> None:
    Path(path).write_text(dumps(c))


def _rational(v) -> Fraction:
    if not isinstance(v, str):
        raise MalformedFile(f"expected a rational string, got {v!r}")
    try:
        return parse_rational(v)
    except ValueError as exc:
        raise MalformedFile(str(exc)) from exc


def _dec_radical(v) -> RadicalSum:
    if not isinstance(v, list):
        raise MalformedFile(f"bad radical encoding {v!r}")
    pairs = []
    for item in v:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], int) and item[1] >= 1):
            raise MalformedFile(f"bad radical term {item!r}")
        pairs.append((_rational(item[0]), item[1]))
    return RadicalSum(pairs)


def _dec_interval(v) -> Interval:
    if not (isinstance(v, list) and len(v) == 2):
        raise MalformedFile(f"bad interval encoding {v!r}")
    lo, hi = _rational(v[0]), _rational(v[1])
    if lo > hi:
        raise MalformedFile(f"empty interval {v!r}")
    return Interval(lo, hi)


def _dec_param(key: str, v: Any) -> Any:
    if key in _RATIONAL_PARAMS and isinstance(v, str):
        return _rational(v)
    return v


def from_document(doc: Any) -> Construction:
    try:
        if not isinstance(doc, dict) or doc.get("format") != FORMAT:
            raise MalformedFile(f"not a {FORMAT} document")
        d = doc["dimension"]
        if not isinstance(d, int) or d < 1:
            raise MalformedFile("dimension must be a positive integer")
        metric = Metric.parse(doc["metric"])
        sites = []
        for s in doc["sites"]:
            fixed = [(int(k), _rational(v)) for k, v in s["fixed"]]
            sites.append(AxisAlignedFlat(d, frozenset(int(k) for k in s["free"]), tuple(fixed), str(s["label"])))
        certs = []
        for cd in doc["certificates"]:
            mode = cd["mode"]
            if mode == EXACT:
                witness = tuple(_dec_radical(x) for x in cd["witness"])
            elif mode == INTERVAL:
                witness = tuple(_dec_interval(x) for x in cd["witness"])
            else:
                raise MalformedFile(f"unknown certificate mode {mode!r}")
            certs.append(Certificate(tuple(cd["tuple"]), witness, mode))
        gen = doc.get("generator", {})
        params = {k: _dec_param(k, v) for k, v in gen.get("params", {}).items()}
        return Construction(d, tuple(sites), tuple(certs), metric=metric, generator=gen.get("name", "custom"),
                            params=params, claims_non_intersecting=bool(doc.get("claims", {}).get("non_intersecting")))
    except MalformedFile:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedFile(f"malformed certificate file: {exc}") from exc


def loads(text: str) -> Construction:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFile(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def read(path) -> Construction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedFile(f"cannot read {path}: {exc}") from exc
    return loads(text)
