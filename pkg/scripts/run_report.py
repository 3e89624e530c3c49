"""Tabulate certified tuple counts against n^ceil(2d/3) over a grid of (d, n).

    python scripts/run_report.py --dims 2-12 --n 2,3 --out results/report.json
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from vlb.cli import EPS_RULES, parse_int_list, build_report


@dataclass
class ReportConfig:
    dims: list[int] = field(default_factory=lambda: list(range(2, 13)))
    ns: list[int] = field(default_factory=lambda: [2])
    eps_rule: str = "8n+1"
    jobs: int = 1
    timing: bool = False
    out: Path | None = None


def run(cfg: ReportConfig) -> bool:
    table = build_report(cfg.dims, cfg.ns, cfg.eps_rule, cfg.jobs)
    print(table.to_text(cfg.timing))
    if cfg.out is not None:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        meta = {k: v for k, v in asdict(cfg).items() if k != "out"}
        cfg.out.write_text(json.dumps({"config": meta, "rows": table.to_dict(cfg.timing)}, indent=1) + "\n")
        print(f"wrote {cfg.out}")
    return table.ok


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="2-12")
    ap.add_argument("--n", default="2")
    ap.add_argument("--eps-rule", choices=sorted(EPS_RULES), default="8n+1")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--timing", action="store_true")
    ap.add_argument("--out", type=Path)
    a = ap.parse_args()
    cfg = ReportConfig(parse_int_list(a.dims), parse_int_list(a.n), a.eps_rule, a.jobs, a.timing, a.out)
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    raise SystemExit(main())
