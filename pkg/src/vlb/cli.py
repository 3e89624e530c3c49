"""Command-line front end.

Exit codes: 0 success/verified, 1 verification failure, 2 malformed input or
invalid parameters.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from . import certfile
from .constructions import (
    TEMPLATES,
    apply_metric,
    decompose,
    gen_hypergrid,
    plan,
    plan_kflat,
    required_exponent,
)
from .constructions.solve import NoRootError
from .exactnum import parse_rational
from .flats import Metric
from .verify import oracle_compare, oracle_discover, verify_construction

KINDS = TEMPLATES + ("hypergrid", "kflat", "plan")
EPS_RULES = {"8n+1": lambda n: Fraction(1, 8 * n + 1), "16n": lambda n: Fraction(1, 16 * n)}


class UsageError(Exception):
    pass


def _generate(args) -> "certfile.Construction":
    metric = Metric.parse(args.metric)
    eps = parse_rational(args.epsilon) if args.epsilon is not None else None
    if args.kind in TEMPLATES:
        return apply_metric(args.kind, args.n, metric, eps, mode=args.mode or "auto")
    if metric.kind != "euclidean":
        raise UsageError(f"{args.kind} is only available with the euclidean metric")
    if args.kind == "hypergrid":
        return gen_hypergrid(args.flat_dim or 1, args.n)
    if args.kind == "kflat":
        return plan_kflat(args.flat_dim or 1, args.blocks or 1, args.n, eps)
    if args.dim is None:
        raise UsageError("plan needs --dim")
    return plan(args.dim, args.n, eps)[1]


def cmd_generate(args) -> int:
    c = _generate(args)
    text = certfile.dumps(c)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}: {len(c.sites)} sites, {len(c.certificates)} certificates in R^{c.dimension}"
              + (", intersecting sites" if not c.claims_non_intersecting else ""))
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    c = certfile.read(args.file)
    report = verify_construction(c, mode=args.mode, jobs=args.jobs)
    if args.json:
        print(json.dumps(report.to_dict(), indent=1))
    else:
        print(report.summary())
    return 0 if report.ok else 1


def cmd_plan(args) -> int:
    p = decompose(args.dim)
    print(f"dimension: {p.target_dimension}")
    print(f"blocks: {' + '.join(p.blocks)}")
    print(f"consumed dimension: {p.consumed_dimension} (slack {p.slack})")
    print(f"exponent: {p.exponent} (ceil(2d/3) = {required_exponent(args.dim)})")
    if args.n is not None:
        print(f"predicted certificates: {p.predicted_count(args.n)}")
    return 0


def cmd_oracle(args) -> int:
    c = certfile.read(args.file)
    report = verify_construction(c)
    res = oracle_discover(c, samples=args.samples, seed=args.seed, tol=args.tol)
    cmp = oracle_compare(report, res)
    print(f"discovered {len(res.tuples)} tuples from {args.samples} samples (seed {args.seed})")
    print("consistent" if cmp.consistent else "INCONSISTENT")
    print(f"missing ({len(cmp.missing)}): " + "; ".join("{" + ", ".join(t) + "}" for t in cmp.missing))
    print(f"extra ({len(cmp.extra)}): " + "; ".join("{" + ", ".join(t) + "}" for t in cmp.extra))
    return 0 if cmp.consistent else 1


@dataclass(frozen=True)
class ReportRow:
    d: int
    n: int
    certified: int | None
    required: int
    status: str
    wall_time: float


@dataclass(frozen=True)
class ReportTable:
    rows: tuple[ReportRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.status == "PASS" for r in self.rows)

    def to_text(self, timing: bool = False) -> str:
        head = ["d", "n", "certified", "required", "status"] + (["time_s"] if timing else [])
        body = []
        for r in self.rows:
            cells = [str(r.d), str(r.n), "-" if r.certified is None else str(r.certified), str(r.required), r.status]
            if timing:
                cells.append(f"{r.wall_time:.2f}")
            body.append(cells)
        widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h) for i, h in enumerate(head)]
        fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))  # noqa: E731
        return "\n".join([fmt(head)] + [fmt(row) for row in body])

    def to_dict(self, timing: bool = False) -> list[dict]:
        out = []
        for r in self.rows:
            row = {"d": r.d, "n": r.n, "certified": r.certified, "required": r.required, "status": r.status}
            if timing:
                row["time_s"] = r.wall_time
            out.append(row)
        return out


def build_report(dims, ns, eps_rule: str = "8n+1", jobs: int = 1) -> ReportTable:
    rows = []
    for d in dims:
        for n in ns:
            start = time.perf_counter()
            required = n ** required_exponent(d) if d >= 2 else 0
            try:
                _, c = plan(d, n, EPS_RULES[eps_rule](n))
                rep = verify_construction(c, jobs=jobs)
                status = "PASS" if rep.ok else "FAIL"
                count = rep.distinct_count
            except (ValueError, NoRootError) as exc:
                status, count = f"ERROR: {exc}", None
            rows.append(ReportRow(d, n, count, required, status, time.perf_counter() - start))
    return ReportTable(tuple(rows))


def parse_int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part[1:]:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def cmd_report(args) -> int:
    dims = parse_int_list(args.dims)
    ns = parse_int_list(args.n)
    if any(d < 2 for d in dims):
        raise UsageError("all dimensions must be >= 2")
    table = build_report(dims, ns, args.eps_rule, args.jobs)
    if args.json:
        print(json.dumps(table.to_dict(args.timing), indent=1))
    else:
        print(table.to_text(args.timing))
    return 0 if table.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vlb", description="Voronoi lower-bound constructions and certificate checking")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a construction and write its certificate file")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--epsilon", help='rational "p/q"; defaults to 1/(8n+1) (metric-adjusted for L^p)')
    g.add_argument("--metric", default="euclidean", help="euclidean, lp:P or l1")
    g.add_argument("--flat-dim", type=int, help="flat dimension k (hypergrid, kflat)")
    g.add_argument("--blocks", type=int, help="number of aggregated blocks c (kflat)")
    g.add_argument("--dim", type=int, help="target dimension (plan)")
    g.add_argument("--mode", choices=["auto", "exact", "interval"])
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="verify a certificate file")
    v.add_argument("file")
    v.add_argument("--mode", choices=["exact", "interval"])
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("plan", help="show the block decomposition for a dimension")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_plan)

    o = sub.add_parser("oracle", help="rediscover tuples numerically and compare with the certificates")
    o.add_argument("file")
    o.add_argument("--samples", type=int, default=100_000)
    o.add_argument("--seed", type=int, default=42)
    o.add_argument("--tol", type=float, default=1e-9)
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("report", help="tabulate certified counts against n^ceil(2d/3)")
    r.add_argument("--dims", default="2-7", help='e.g. "2-7" or "2,5,7"')
    r.add_argument("--n", default="2", help="comma-separated n values")
    r.add_argument("--eps-rule", choices=sorted(EPS_RULES), default="8n+1")
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--json", action="store_true")
    r.add_argument("--timing", action="store_true", help="add a wall-time column (not byte-reproducible)")
    r.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except certfile.MalformedFile as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, NoRootError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
