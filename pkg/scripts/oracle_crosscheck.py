"""Cross-check certified tuples against the numeric sampling oracle.

For each construction the oracle rediscovers tuples from random samples
without looking at the witnesses (only their bounding box).  Extras are
tuples the oracle found but nobody certified; they should never occur.

    python scripts/oracle_crosscheck.py --samples 100000 --seed 42
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from vlb.constructions import apply_metric, gen_grid2, gen_grid3_perturbed, gen_hypergrid, gen_quad4, gen_quint5, plan
from vlb.flats import Metric
from vlb.verify import oracle_compare, oracle_discover, verify_construction

CASES = {
    "grid2 n=2": lambda: gen_grid2(2),
    "grid3p n=2": lambda: gen_grid3_perturbed(2),
    "quad4 n=2": lambda: gen_quad4(2),
    "quint5 n=2": lambda: gen_quint5(2),
    "hypergrid k=2 n=2": lambda: gen_hypergrid(2, 2),
    "plan d=7 n=2": lambda: plan(7, 2)[1],
    "quad4 L^4 n=2": lambda: apply_metric("quad4", 2, Metric.lp(4)),
    "quad4 L^1 n=2": lambda: apply_metric("quad4", 2, Metric.l1()),
}


@dataclass
class CrosscheckConfig:
    samples: int = 100_000
    seed: int = 42
    tol: float = 1e-9


def run(cfg: CrosscheckConfig) -> bool:
    ok = True
    print(f"{'construction':<20} {'certified':>9} {'found':>6} {'missing':>7} {'extra':>5} {'time_s':>7}")
    for name, make in CASES.items():
        c = make()
        start = time.perf_counter()
        res = oracle_discover(c, samples=cfg.samples, seed=cfg.seed, tol=cfg.tol)
        cmp = oracle_compare(verify_construction(c), res)
        elapsed = time.perf_counter() - start
        print(f"{name:<20} {len(c.certificates):>9} {len(res.tuples):>6} {len(cmp.missing):>7} "
              f"{len(cmp.extra):>5} {elapsed:>7.2f}")
        for t in cmp.extra:
            print(f"  extra: {{{', '.join(t)}}}")
        ok &= cmp.consistent
    return ok


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--tol", type=float, default=1e-9)
    a = ap.parse_args()
    return 0 if run(CrosscheckConfig(a.samples, a.seed, a.tol)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
