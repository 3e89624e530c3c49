"""Floating-point rediscovery of Voronoi tuples, independent of the witnesses.

Points are sampled uniformly in the bounding box of the certificate witnesses.
From each sample the nearest sites (at most one per family) form a candidate
tuple, and damped Gauss-Newton steps drive the sample to a point where the
candidate sites are equidistant.  A tuple is recorded when the distance spread
is below ``tol`` and every other site is farther by more than ``10*tol``.

Only the witness box is used from the certificates; tuple sizes default to the
certified ones.  Restricting candidates to one site per family keeps the
comparison to the kind of tuple the certificates claim: genuine cells such as
``{A_1, A_2, B_1}`` exist in these diagrams too, but are not part of any claim.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..constructions.base import Construction, natural_key
from ..exactnum import Interval
from .certify import VerificationReport


@dataclass(frozen=True)
class OracleResult:
    tuples: dict[tuple[str, ...], tuple[float, ...]]
    seed: int
    samples: int
    tol: float
    diagnostics: dict = field(default_factory=dict)

    @property
    def discovered(self) -> frozenset[tuple[str, ...]]:
        return frozenset(self.tuples)


@dataclass(frozen=True)
class OracleComparison:
    consistent: bool
    missing: tuple[tuple[str, ...], ...]
    extra: tuple[tuple[str, ...], ...]


def _site_arrays(c: Construction):
    S, d = len(c.sites), c.dimension
    mask = np.zeros((S, d), dtype=bool)
    vals = np.zeros((S, d))
    fams: dict[str, int] = {}
    fam = np.zeros(S, dtype=int)
    for s_idx, s in enumerate(c.sites):
        for k, v in s.fixed:
            mask[s_idx, k] = True
            vals[s_idx, k] = float(v)
        fam[s_idx] = fams.setdefault(s.family, len(fams))
    return mask, vals, fam, len(fams)


def _to_float(v) -> float:
    if isinstance(v, Interval):
        return float(v.midpoint)
    return float(v)


def _distances(X, mask, vals, p):
    """X (N,d); mask/vals (N,m,d) or (S,d) -> (N,m) or (N,S) distances."""
    if mask.ndim == 2:
        diff = np.abs(X[:, None, :] - vals[None, :, :]) * mask[None, :, :]
    else:
        diff = np.abs(X[:, None, :] - vals) * mask
    if p == 2.0:
        return np.sqrt(np.einsum("nsd,nsd->ns", diff, diff))
    return np.sum(diff**p, axis=2) ** (1.0 / p)


def _pick_transversal(D, fam, nfam, m):
    """Indices of the m nearest sites with pairwise distinct families; -1 rows if impossible."""
    N, S = D.shape
    order = np.argsort(D, axis=1, kind="stable")
    picked = np.full((N, m), -1, dtype=int)
    count = np.zeros(N, dtype=int)
    used = np.zeros((N, nfam), dtype=bool)
    rows = np.arange(N)
    for col in range(S):
        idx = order[:, col]
        f = fam[idx]
        take = (count < m) & ~used[rows, f]
        picked[rows[take], count[take]] = idx[take]
        used[rows[take], f[take]] = True
        count += take
    picked[count < m] = -1
    return picked


def _refine(X, tmask, tvals, p, tol, max_iter, h=1e-6, damping=1e-12):
    N, m, d = tmask.shape
    X = X.copy()
    done = np.zeros(N, dtype=bool)
    eye = np.eye(m - 1)
    for _ in range(max_iter):
        act = ~done
        if not act.any():
            break
        Xa = X[act]
        ma, va = tmask[act], tvals[act]
        dt = _distances(Xa, ma, va, p)
        g = dt[:, 1:] - dt[:, :1]
        spread = dt.max(axis=1) - dt.min(axis=1)
        J = np.empty((len(Xa), m - 1, d))
        for k in range(d):
            e = np.zeros(d)
            e[k] = h
            dp_ = _distances(Xa + e, ma, va, p)
            dm_ = _distances(Xa - e, ma, va, p)
            J[:, :, k] = ((dp_[:, 1:] - dp_[:, :1]) - (dm_[:, 1:] - dm_[:, :1])) / (2 * h)
        J = np.nan_to_num(J)
        # J J^T + damping*I is positive definite, so the batched solve cannot fail
        lam = np.linalg.solve(J @ J.transpose(0, 2, 1) + damping * eye, np.nan_to_num(g)[:, :, None])
        step = -(J.transpose(0, 2, 1) @ lam)[:, :, 0]
        step[~np.isfinite(step)] = 0.0
        new = Xa + step
        dn = _distances(new, ma, va, p)
        new_spread = dn.max(axis=1) - dn.min(axis=1)
        worse = ~(new_spread < spread)
        if worse.any():
            half = Xa[worse] + 0.5 * step[worse]
            new[worse] = half
            dn_half = _distances(half, ma[worse], va[worse], p)
            new_spread[worse] = dn_half.max(axis=1) - dn_half.min(axis=1)
        X[act] = new
        fin = new_spread < tol / 10
        idx = np.flatnonzero(act)
        done[idx[fin]] = True
    return X


def oracle_discover(c: Construction, samples: int = 100_000, seed: int = 0, tol: float = 1e-9,
                    sizes=None, max_iter: int = 40, chunk: int = 20_000) -> OracleResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    labels = [s.label for s in c.sites]
    if not c.certificates or not c.sites:
        return OracleResult({}, seed, samples, tol, {"sampled": 0})
    W = np.array([[_to_float(v) for v in cert.witness] for cert in c.certificates])
    lo, hi = W.min(axis=0), W.max(axis=0)
    mask, vals, fam, nfam = _site_arrays(c)
    p = float(c.metric.p)
    if sizes is None:
        sizes = sorted({len(cert.tuple) for cert in c.certificates})
    sizes = [m for m in sizes if 2 <= m <= nfam]

    found: dict[tuple[str, ...], tuple[float, ...]] = {}
    diag = {"sampled": 0, "candidates": 0, "accepted": 0, "not_converged": 0, "dominated": 0}
    nchunks = -(-samples // chunk)
    streams = np.random.SeedSequence(seed).spawn(nchunks)
    for ci, ss in enumerate(streams):
        N = min(chunk, samples - ci * chunk)
        rng = np.random.default_rng(ss)
        X0 = lo + (hi - lo) * rng.random((N, c.dimension))
        diag["sampled"] += N
        D0 = _distances(X0, mask, vals, p)
        for m in sizes:
            picked = _pick_transversal(D0, fam, nfam, m)
            ok = picked[:, 0] >= 0
            if not ok.any():
                continue
            P = picked[ok]
            X = _refine(X0[ok], mask[P], vals[P], p, tol, max_iter)
            D = _distances(X, mask, vals, p)
            rows = np.arange(len(P))[:, None]
            dt = D[rows, P]
            spread = dt.max(axis=1) - dt.min(axis=1)
            common = dt.mean(axis=1)
            Dx = D.copy()
            Dx[rows, P] = np.inf
            gap = Dx.min(axis=1) - common
            conv = np.isfinite(spread) & (spread < tol)
            accept = conv & (gap > 10 * tol)
            diag["candidates"] += len(P)
            diag["not_converged"] += int((~conv).sum())
            diag["dominated"] += int((conv & ~accept).sum())
            diag["accepted"] += int(accept.sum())
            for r in np.flatnonzero(accept):
                tup = tuple(sorted((labels[s] for s in P[r]), key=natural_key))
                if tup not in found:
                    found[tup] = tuple(float(v) for v in X[r])
    ordered = dict(sorted(found.items(), key=lambda kv: [natural_key(s) for s in kv[0]]))
    return OracleResult(ordered, seed, samples, tol, diag)


def oracle_compare(report: VerificationReport, result: OracleResult) -> OracleComparison:
    certified = {t for t, v in report.verdicts if v.passed}
    found = set(result.tuples)
    key = lambda t: [natural_key(s) for s in t]  # noqa: E731
    missing = tuple(sorted(certified - found, key=key))
    extra = tuple(sorted(found - certified, key=key))
    return OracleComparison(not extra, missing, extra)
