"""Closed-form assembly of several blocks into one construction.

Block ``b`` occupies its own coordinates; blocks after the first also own one
separator coordinate, placed right after the block.  This is exactly the
layout produced by repeatedly aggregating the blocks left to right, so
unperturbed assemblies coincide with nested :func:`aggregate` calls.

Grid blocks (hyperplane grids, the planar grid being the k = 1 case) intersect
internally.  When ``perturb`` is set and there are at least two blocks, family
``f`` of a grid block is shifted by ``(f-1)*eps/k`` in the *anchor* coordinate
of the cyclically next block.  The anchor is a coordinate where every witness of
that block takes a positive integer value ``v``; the shifted family then stays
equidistant when its own witness coordinate moves off the grid line by
``sqrt(2*v*e - e*e)``, ``e`` the shift.  Distinct shifts keep every pair of
families of a block disjoint, and separators keep different blocks disjoint.

Separator values ``t_b`` equalize the per-block common distances::

    t_b = (s^2 + r_b - r_0 + |w_0|^2 - |w_b|^2) / (2 s)

where ``w_b`` is block b's local witness, ``r_b`` its squared local distance to
the block's tuple, and ``s`` the separator value of the block's sites.  This
comes from writing both squared distances as functions of the separator
coordinates; everything except ``t_b`` cancels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from ..exactnum import RadicalSum
from ..flats import AxisAlignedFlat
from .base import Certificate, Construction

GRID = "grid"
GRID3P = "grid3p"
QUAD4 = "quad4"
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class BlockSpec:
    kind: str
    k: int = 1  # flat dimension for grid blocks

    @property
    def dim(self) -> int:
        return {GRID: self.k + 1, GRID3P: 3, QUAD4: 4}[self.kind]

    @property
    def families(self) -> tuple[str, ...]:
        if self.kind == GRID:
            return tuple(f"F{f + 1}" for f in range(self.k + 1))
        if self.kind == GRID3P:
            return ("A", "B")
        return ("A", "B", "C")

    @property
    def exponent(self) -> int:
        return len(self.families)

    @property
    def anchor(self) -> int:
        """Local coordinate holding an integer witness value (>= 1)."""
        return 1 if self.kind == QUAD4 else 0


def _local_sites(spec: BlockSpec, n: int, eps: Fraction) -> list[list[list]]:
    """Per family, per member (1..n): local coordinate values, None = free."""
    fams = []
    if spec.kind == GRID:
        for f in range(spec.k + 1):
            members = []
            for i in range(1, n + 1):
                vals: list = [None] * spec.dim
                vals[f] = i
                members.append(vals)
            fams.append(members)
    elif spec.kind == GRID3P:
        fams.append([[i, None, 0] for i in range(1, n + 1)])
        fams.append([[None, j, eps] for j in range(1, n + 1)])
    else:
        fams.append([[i, None, eps, 0] for i in range(1, n + 1)])
        fams.append([[None, j, 0, 0] for j in range(1, n + 1)])
        fams.append([[None, 0, k, 1] for k in range(1, n + 1)])
    return fams


@lru_cache(maxsize=None)
def _local_witness(spec: BlockSpec, idx: tuple[int, ...], eps: Fraction,
                   perturbed: bool, v: int | None) -> tuple[tuple[RadicalSum, ...], RadicalSum]:
    """Local witness and its squared distance to the block's first tuple site."""
    if spec.kind == GRID:
        if not perturbed:
            w = tuple(RadicalSum.rational(i + QUARTER) for i in idx)
            return w, RadicalSum.rational(Fraction(1, 16))
        coords = [RadicalSum.rational(idx[0])]
        for f in range(1, spec.k + 1):
            e = f * eps / spec.k
            coords.append(idx[f] + RadicalSum.sqrt(2 * v * e - e * e))
        return tuple(coords), RadicalSum()
    if spec.kind == GRID3P:
        i, j = idx
        w = tuple(RadicalSum.rational(c) for c in (i, j, eps / 2))
        return w, RadicalSum.rational(eps * eps / 4)
    i, j, k = idx
    x1 = i + RadicalSum.sqrt(2 * eps * k - eps * eps)
    x4 = Fraction(j * j - k * k + 1, 2)
    w = (x1, RadicalSum.rational(j), RadicalSum.rational(k), RadicalSum.rational(x4))
    return w, RadicalSum.rational(k * k + x4 * x4)


def _anchor_value(spec: BlockSpec, idx: tuple[int, ...]) -> int:
    if spec.kind == QUAD4:
        return idx[1]
    return idx[0]


def layout(specs: Sequence[BlockSpec]) -> tuple[list[int], list[int | None], int]:
    """Block offsets, separator coordinate per block (None for block 0), total dim."""
    offsets, seps, pos = [], [], 0
    for b, spec in enumerate(specs):
        offsets.append(pos)
        pos += spec.dim
        if b >= 1:
            seps.append(pos)
            pos += 1
        else:
            seps.append(None)
    return offsets, seps, pos


def assemble(specs: Sequence[BlockSpec], n: int, eps: Fraction, *, perturb: bool = True,
             slack: int = 0, separator: Fraction = Fraction(1), label_prefix: str = "b",
             generator: str = "blocks", params: dict | None = None) -> Construction:
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one block")
    c = len(specs)
    perturbed = perturb and c >= 2
    offsets, seps, used = layout(specs)
    dim = used + slack
    separator = Fraction(separator)

    def label(b: int, fam: str, i: int) -> str:
        return f"{label_prefix}{b + 1}.{fam}_{i}" if c > 1 else f"{fam}_{i}"

    sites = []
    for b, spec in enumerate(specs):
        nxt = specs[(b + 1) % c]
        shift_coord = offsets[(b + 1) % c] + nxt.anchor
        for f, (fam, members) in enumerate(zip(spec.families, _local_sites(spec, n, eps))):
            for i, local in enumerate(members, start=1):
                values: list = [Fraction(0)] * dim
                for lc, v in enumerate(local):
                    values[offsets[b] + lc] = v
                if seps[b] is not None:
                    values[seps[b]] = separator
                if perturbed and spec.kind == GRID and f > 0:
                    values[shift_coord] = f * eps / spec.k
                sites.append(AxisAlignedFlat.from_values(label(b, fam, i), values))

    per_block = [list(product(range(1, n + 1), repeat=spec.exponent)) for spec in specs]
    certs = []
    for combo in product(*per_block):
        locals_ = []
        for b, spec in enumerate(specs):
            nb = (b + 1) % c
            v = _anchor_value(specs[nb], combo[nb]) if perturbed and spec.kind == GRID else None
            locals_.append(_local_witness(spec, combo[b], eps, perturbed and spec.kind == GRID, v))
        coords: list = [RadicalSum()] * dim
        norms = []
        for b, (w, _) in enumerate(locals_):
            for lc, x in enumerate(w):
                coords[offsets[b] + lc] = x
            norms.append(sum((x * x for x in w), RadicalSum()))
        r0 = locals_[0][1]
        for b in range(1, c):
            rb = locals_[b][1]
            coords[seps[b]] = (separator * separator + rb - r0 + norms[0] - norms[b]) / (2 * separator)
        tup = tuple(label(b, spec.families[f], combo[b][f])
                    for b, spec in enumerate(specs) for f in range(spec.exponent))
        certs.append(Certificate(tup, tuple(coords)))

    disjoint = all(s.kind != GRID for s in specs) or perturbed
    p = {"n": n, "epsilon": eps, "blocks": [s.kind if s.kind != GRID else f"grid{s.k}" for s in specs]}
    if params:
        p.update(params)
    return Construction(dim, tuple(sites), tuple(certs), generator=generator, params=p,
                        claims_non_intersecting=disjoint)
