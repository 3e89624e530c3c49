"""Choose block decompositions reaching n^ceil(2d/3) tuples in R^d."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base import Construction, check_epsilon, check_n, required_exponent
from .blocks import GRID, GRID3P, QUAD4, BlockSpec, assemble
from .generators import gen_grid2, gen_hypergrid

GRID2_NAME, GRID3P_NAME, QUAD4_NAME = "GRID2", "GRID3P", "QUAD4"
_BLOCK_DIM = {GRID2_NAME: 2, GRID3P_NAME: 3, QUAD4_NAME: 4}
_BLOCK_EXP = {GRID2_NAME: 2, GRID3P_NAME: 2, QUAD4_NAME: 3}
_SPEC = {GRID2_NAME: BlockSpec(GRID, 1), GRID3P_NAME: BlockSpec(GRID3P), QUAD4_NAME: BlockSpec(QUAD4)}


@dataclass(frozen=True)
class Plan:
    target_dimension: int
    blocks: tuple[str, ...]

    @property
    def consumed_dimension(self) -> int:
        return sum(_BLOCK_DIM[b] for b in self.blocks) + len(self.blocks) - 1

    @property
    def exponent(self) -> int:
        return sum(_BLOCK_EXP[b] for b in self.blocks)

    @property
    def slack(self) -> int:
        return self.target_dimension - self.consumed_dimension

    def predicted_count(self, n: int) -> int:
        return n**self.exponent

    def describe(self) -> str:
        return (f"d={self.target_dimension} blocks=[{', '.join(self.blocks)}] "
                f"consumed={self.consumed_dimension} slack={self.slack} exponent={self.exponent}")


def decompose(d: int) -> Plan:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {d!r}")
    if d == 2:
        blocks = (GRID2_NAME,)
    elif d == 3:
        blocks = (GRID3P_NAME,)
    elif d == 4:
        blocks = (QUAD4_NAME,)
    elif d % 3 == 2:
        blocks = (GRID2_NAME,) * ((d + 1) // 3)
    elif d % 3 == 1:
        blocks = (QUAD4_NAME,) + (GRID2_NAME,) * ((d - 4) // 3)
    else:
        # no dedicated recipe for d = 3c; reuse d - 1 plus one slack axis
        blocks = decompose(d - 1).blocks
    plan = Plan(d, blocks)
    assert plan.consumed_dimension <= d and plan.exponent == required_exponent(d)
    return plan


def plan(d: int, n: int, eps=None) -> tuple[Plan, Construction]:
    check_n(n)
    p = decompose(d)
    params = {"dim": d}
    if p.blocks == (GRID2_NAME,):
        c = gen_grid2(n)
        return p, c.replace(generator="plan", params={**c.params, **params, "blocks": list(p.blocks)})
    eps = check_epsilon(n, eps)
    specs = [_SPEC[b] for b in p.blocks]
    c = assemble(specs, n, eps, perturb=True, slack=p.slack, generator="plan", params=params)
    c = c.replace(params={**c.params, "blocks": list(p.blocks)})
    return p, c


def plan_kflat(k: int, c: int, n: int, eps=None, *, perturb: bool = True) -> Construction:
    """c aggregated grids of k-flats: n^{c(k+1)} tuples in R^{c(k+2)-1}."""
    check_n(n)
    if not isinstance(c, int) or c < 1:
        raise ValueError(f"number of blocks c must be a positive integer, got {c!r}")
    if c == 1:
        return gen_hypergrid(k, n).replace(generator="kflat", params={"n": n, "flat_dim": k, "c": 1})
    eps = check_epsilon(n, eps)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"flat dimension k must be a positive integer, got {k!r}")
    return assemble([BlockSpec(GRID, k)] * c, n, Fraction(eps), perturb=perturb,
                    generator="kflat", params={"flat_dim": k, "c": c})
