"""Constant composition codes from partitioned families and strictly optimal
frequency hopping sequences from elementary frames.

All bound arithmetic is exact (Fraction / integer ceilings); correlation
scans are exact counts vectorized over numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .families import DesignFamily, FDF, PDF, verify_pdf

__all__ = [
    "CCC",
    "FHS",
    "ccc_from_pdf",
    "ccc_bound",
    "fhs_from_elementary_fdf",
    "partial_hamming",
    "fhs_max_correlation",
    "fhs_bound",
    "verify_strictly_optimal",
]


@dataclass(frozen=True)
class CCC:
    n: int
    codewords: np.ndarray          # (M, n) symbol matrix
    composition: tuple[int, ...]   # sorted symbol counts, one per alphabet symbol
    provenance: str = ""

    @property
    def size(self) -> int:
        return self.codewords.shape[0]

    def min_distance(self, chunk: int = 64) -> int:
        """Exhaustive pairwise Hamming distance."""
        X = self.codewords
        M = X.shape[0]
        best = self.n
        for i in range(0, M, chunk):
            block = X[i:i + chunk]
            for j, row in enumerate(block):
                rest = X[i + j + 1:]
                if len(rest) == 0:
                    continue
                d = (rest != row).sum(axis=1).min()
                best = min(best, int(d))
        return best


@dataclass(frozen=True)
class FHS:
    seq: np.ndarray
    alphabet_size: int
    provenance: str = ""

    def __post_init__(self):
        s = np.asarray(self.seq)
        if s.min() < 0 or s.max() >= self.alphabet_size:
            raise ValueError("symbols out of range")
        if len(np.unique(s)) != self.alphabet_size:
            raise ValueError("every symbol must be used at least once")

    @property
    def n(self) -> int:
        return len(self.seq)


def ccc_from_pdf(pdf: DesignFamily) -> CCC:
    """One codeword per group element g: position t carries the index of the
    block containing t - g.  |G| codewords of length |G| whose composition
    is the block-size multiset."""
    if pdf.kind != PDF:
        raise ValueError("need a PDF")
    rep = verify_pdf(pdf)
    if not rep.ok:
        raise ValueError("family fails verify_pdf: " + (rep.detail or "delta condition"))
    G = pdf.group
    label = np.empty(G.order, dtype=np.int64)
    for bi, blk in enumerate(pdf.blocks):
        label[np.asarray(blk, dtype=np.int64)] = bi
    elems = G.enumerate()
    rows = []
    for g in elems:
        rows.append(label[G.sub(elems, int(g))])
    codewords = np.stack(rows)
    composition = tuple(sorted(len(b) for b in pdf.blocks))
    return CCC(G.order, codewords, composition,
               provenance=(pdf.provenance + " -> CCC") if pdf.provenance else "CCC")


def ccc_bound(n: int, d: int, composition: Sequence[int]) -> Fraction:
    """Exact rational size bound n*d / (n*d - n^2 + sum(w_i^2)); the
    denominator must be positive for the bound to apply."""
    denom = n * d - n * n + sum(w * w for w in composition)
    if denom <= 0:
        raise ValueError("bound inapplicable: nonpositive denominator")
    return Fraction(n * d, denom)


def fhs_from_elementary_fdf(fdf: DesignFamily) -> FHS:
    """Frequency hopping sequence from an elementary frame over a cyclic
    group: partition Z_kv into N and all N-translates of the base blocks,
    then let x(t) be the index of the part containing t.  N gets symbol 0;
    translated blocks are indexed by ascending minimum element."""
    if fdf.kind != FDF:
        raise ValueError("need an FDF")
    if fdf.group.kind != "cyclic":
        raise ValueError("need a cyclic group; apply crt_iso to the family first")
    k = len(fdf.blocks[0])
    n = len(fdf.subgroup)
    if fdf.lam * n != k - 1:
        raise ValueError("FDF is not elementary")
    if (fdf.group.order + 1) % (n + 1):
        raise ValueError("alphabet size (kv+1)/(k+1) is not integral")
    G = fdf.group
    sub = np.asarray(fdf.subgroup, dtype=np.int64)
    parts = []
    for blk in fdf.blocks:
        arr = np.asarray(blk, dtype=np.int64)
        for h in sub:
            parts.append(np.sort(G.add(arr, int(h))))
    parts.sort(key=lambda a: int(a[0]))
    seq = np.empty(G.order, dtype=np.int64)
    seq[sub] = 0
    for idx, part in enumerate(parts, start=1):
        seq[part] = idx
    return FHS(seq, len(parts) + 1,
               provenance=(fdf.provenance + " -> FHS") if fdf.provenance else "FHS")


def partial_hamming(x: FHS, tau: int, j: int, L: int) -> int:
    """Window coincidence count sum_{t=j}^{j+L-1} [x(t) == x(t+tau)], mod-n indices."""
    n = x.n
    if not (1 <= L <= n):
        raise ValueError("window length out of range")
    if not (0 <= tau < n and 0 <= j < n):
        raise ValueError("shift and start must lie in [0, n)")
    s = np.asarray(x.seq)
    idx = (j + np.arange(L)) % n
    return int((s[idx] == s[(idx + tau) % n]).sum())


def _window_max_by_length(x: FHS) -> np.ndarray:
    """H(X;L) for every L in [1, n]: maximum windowed coincidence count over
    all shifts tau >= 1 and all starts, via per-shift sliding sums."""
    s = np.asarray(x.seq)
    n = x.n
    out = np.zeros(n + 1, dtype=np.int64)
    Ls = np.arange(1, n + 1)
    js = np.arange(n)
    gather = js[None, :] + Ls[:, None]          # (L, j) -> j + L
    for tau in range(1, n):
        c = (s == np.roll(s, -tau)).astype(np.int64)
        cs = np.concatenate([[0], np.cumsum(np.concatenate([c, c]))])
        w = cs[gather] - cs[js][None, :]
        np.maximum(out[1:], w.max(axis=1), out=out[1:])
    return out


def fhs_max_correlation(x: FHS, L: int) -> int:
    """Exact maximum of the partial autocorrelation over tau >= 1 and all
    window starts, for one window length."""
    return int(_window_max_by_length(x)[L])


def fhs_bound(n: int, l: int, L: int) -> int:
    """ceil((L/n) * ceil((n-e)(n+e-l)/(l(n-1)))) with e = n mod l, in exact
    integer arithmetic."""
    if l < 2:
        raise ValueError("alphabet size must be >= 2")
    eps = n % l
    inner = -((-(n - eps) * (n + eps - l)) // (l * (n - 1)))
    return -((-L * inner) // n)


@dataclass(frozen=True)
class OptimalityReport:
    ok: bool
    failing_L: tuple = ()
    correlations: tuple = ()

    def __bool__(self):
        return self.ok


def verify_strictly_optimal(x: FHS) -> OptimalityReport:
    """Full scan: the windowed maximum must meet the lower bound at every
    window length L in [1, n]."""
    n = x.n
    maxima = _window_max_by_length(x)
    failing = []
    for L in range(1, n + 1):
        if maxima[L] != fhs_bound(n, x.alphabet_size, L):
            failing.append(L)
    return OptimalityReport(not failing, tuple(failing[:32]), tuple(int(m) for m in maxima[1:]))
