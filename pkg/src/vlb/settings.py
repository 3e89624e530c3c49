import os
from fractions import Fraction

from .exactnum import parse_rational

DEFAULT_WIDTH = Fraction(1, 10**30)


def default_width() -> Fraction:
    """Interval width target; ``VLB_PRECISION`` (e.g. ``1e-40``) overrides it."""
    raw = os.environ.get("VLB_PRECISION")
    if not raw:
        return DEFAULT_WIDTH
    w = parse_rational(raw)
    if w <= 0:
        raise ValueError("VLB_PRECISION must be positive")
    return w
