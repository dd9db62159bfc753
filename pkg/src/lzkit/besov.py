"""Littlewood-Paley blocks, Besov norms of logarithmic smoothness, embedding shifts."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .bandlimited import BandlimitedFunction, FamilySpec, frequency_grid
from .lznorm import lz_norm
from .nikolskii import fit_slope
from .rearrange import SampledFunction, rearrange
from .spaces import (
    INF,
    HypothesisError,
    LogPair,
    SpaceParams,
    broken_log_eval,
    close,
    ge,
    gt,
    le,
    lt,
    recip,
)

# --- partition of unity ----------------------------------------------------


def bump(t):
    """exp(-1/((t-1/2)(2-t))) on (1/2, 2), zero elsewhere."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = (t > 0.5) & (t < 2.0)
    ti = t[inside]
    out[inside] = np.exp(-1.0 / ((ti - 0.5) * (2.0 - ti)))
    return out


def phi0(r):
    """Radial profile g(r) / sum_j g(2^-j r); sums to 1 over dyadic dilates."""
    r = np.abs(np.asarray(r, dtype=float))
    out = np.zeros_like(r)
    pos = r > 0
    rp = r[pos]
    j0 = np.floor(np.log2(rp))
    den = np.zeros_like(rp)
    # at most two consecutive j contribute; the window of five is for rounding in log2
    for d in (-2, -1, 0, 1, 2):
        den += bump(np.ldexp(rp, -(j0 + d).astype(int)))
    num = bump(rp)
    out[pos] = np.where(num > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return out


def phi(k: int, r):
    return phi0(np.ldexp(np.abs(np.asarray(r, dtype=float)), -int(k)))


def psi(r):
    """1 - sum_{k>=1} phi_k."""
    r = np.abs(np.asarray(r, dtype=float))
    top = int(math.ceil(math.log2(max(float(r.max(initial=1.0)), 1.0)))) + 2
    s = np.zeros_like(r)
    for k in range(1, top + 1):
        s += phi(k, r)
    return 1.0 - s


@dataclass(frozen=True)
class PartitionFamily:
    kmin: int
    kmax: int
    grid: Optional[np.ndarray] = None
    phi0_samples: Optional[np.ndarray] = None

    def phi0(self, r):
        return phi0(r)

    def phi(self, k: int, r):
        return phi(k, r)

    def psi(self, r):
        return psi(r)

    def total(self, r):
        """psi + sum_{k>=1} phi_k at r."""
        r = np.abs(np.asarray(r, dtype=float))
        top = int(math.ceil(math.log2(max(float(r.max(initial=1.0)), 1.0)))) + 2
        s = psi(r)
        for k in range(1, top + 1):
            s = s + phi(k, r)
        return s

    def dyadic_sum(self, r):
        """sum_{k=kmin..kmax} phi_k at r."""
        s = np.zeros_like(np.asarray(r, dtype=float))
        for k in range(self.kmin, self.kmax + 1):
            s += phi(k, r)
        return s


def build_partition(kmin: int, kmax: int, grid=None, points_per_octave: int = 4) -> PartitionFamily:
    if kmax < kmin:
        raise ValueError("need kmax >= kmin")
    if grid is None:
        return PartitionFamily(kmin, kmax)
    g = np.sort(np.abs(np.asarray(grid, dtype=float)).reshape(-1))
    lo, hi = 2.0 ** (kmin - 1), 2.0 ** (kmax + 1)
    if g.size == 0 or g[0] > lo or g[-1] < hi:
        raise ValueError(f"grid must cover [{lo}, {hi}] in |xi|")
    for j in range(kmin - 1, kmax + 1):
        a, b = 2.0**j, 2.0 ** (j + 1)
        if np.count_nonzero((g >= a) & (g <= b)) < points_per_octave:
            raise ValueError(f"grid does not resolve the dyadic band [{a}, {b}]")
    return PartitionFamily(kmin, kmax, g, phi0(g))


# --- Besov norms -----------------------------------------------------------


@dataclass(frozen=True)
class BesovParams:
    """Smoothness ``sigma``, log smoothness ``gamma`` and summation exponent ``u``.

    ``gamma`` is a number for the inhomogeneous scale and a ``LogPair`` for
    the homogeneous one.
    """

    sigma: float
    gamma: object = 0
    u: float = 2
    base: SpaceParams = SpaceParams(2, 2)

    def __post_init__(self):
        object.__setattr__(self, "base", SpaceParams.of(self.base))
        if isinstance(self.gamma, (tuple, list, dict)):
            object.__setattr__(self, "gamma", LogPair.of(self.gamma))
        if not (self.u > 0):
            raise ValueError("u must be positive")
        self.base.require_nontrivial()

    @property
    def is_pair(self) -> bool:
        return isinstance(self.gamma, LogPair)


def block_weight(k: int, bp: BesovParams, homogeneous: bool) -> float:
    if homogeneous:
        g = bp.gamma if bp.is_pair else LogPair(bp.gamma, bp.gamma)
        return 2.0 ** (float(bp.sigma) * k) * broken_log_eval(g, 2.0**k)
    if bp.is_pair:
        raise ValueError("inhomogeneous norm needs a scalar gamma")
    return 2.0 ** (float(bp.sigma) * k) * (1.0 + k) ** float(bp.gamma)


def block_range(f: BandlimitedFunction, homogeneous: bool, kmax: int | None = None) -> range:
    """Dyadic indices k with 2^(k-1) <= spectral radius (and, homogeneous, 2^(k+1) >= inner radius)."""
    R = f.spectrum.max_radius()
    top = math.floor(math.log2(R)) + 1 if R > 0 else 0
    if kmax is not None:
        top = max(top, int(kmax))
    if not homogeneous:
        return range(1, top + 1)
    r0 = f.spectrum.min_radius()
    if r0 <= 0:
        raise ValueError("homogeneous norms need a spectrum bounded away from 0")
    return range(math.ceil(math.log2(r0)) - 1, top + 1)


def littlewood_paley_blocks(f: BandlimitedFunction, homogeneous: bool = False, kmax: int | None = None) -> dict:
    """Inverse transforms of phi_k f^ (and psi f^ under key ``"psi"``) as sampled functions."""
    s = f.samples
    fhat = np.fft.fftn(s.values)
    r = np.sqrt(sum(x**2 for x in np.meshgrid(*frequency_grid(s), indexing="ij")))
    out = {}
    if not homogeneous:
        out["psi"] = SampledFunction(np.fft.ifftn(psi(r) * fhat), s.spacing, s.origin)
    for k in block_range(f, homogeneous, kmax):
        out[k] = SampledFunction(np.fft.ifftn(phi(k, r) * fhat), s.spacing, s.origin)
    return out


def block_norms(f: BandlimitedFunction, base, homogeneous: bool = False, kmax: int | None = None) -> dict:
    base = SpaceParams.of(base)
    base.require_nontrivial()
    return {k: lz_norm(rearrange(b.abs()), base).value for k, b in littlewood_paley_blocks(f, homogeneous, kmax).items()}


def combine_blocks(norms: dict, bp: BesovParams, homogeneous: bool) -> float:
    terms = [block_weight(k, bp, homogeneous) * v for k, v in norms.items() if k != "psi"]
    terms = np.asarray(terms, dtype=float)
    if bp.u == INF:
        dyadic = float(terms.max(initial=0.0))
    else:
        u = float(bp.u)
        dyadic = float(np.sum(terms**u) ** (1.0 / u)) if terms.size else 0.0
    return norms.get("psi", 0.0) + dyadic


def besov_norm(f: BandlimitedFunction, bp: BesovParams, homogeneous: bool = False, kmax: int | None = None) -> float:
    return combine_blocks(block_norms(f, bp.base, homogeneous, kmax), bp, homogeneous)


# --- embedding shifts ------------------------------------------------------

COROLLARIES = ("C21", "C22", "C23", "C24", "C25", "C26", "C27", "C28", "C29")
HOMOGENEOUS = frozenset({"C22", "C24", "C25", "C27", "C29"})


def in_embedding_class(q, c, B) -> bool:
    B = LogPair.of(B)
    return (close(q, 1) and close(c, 1) and B.is_zero()) or (gt(q, 1) and q < INF)


def embedding_hypotheses(corollary: str, source, target) -> list[tuple[str, bool]]:
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    q, c, B = src.p, src.b, src.A
    p, b, A = tgt.p, tgt.b, tgt.A
    ib, ic = recip(b), recip(c)
    out = [("(q,c,B) in F", in_embedding_class(q, c, B))]
    if corollary in ("C21", "C22"):
        out.append(("q < p < inf or (p = b = inf and A = 0)", (lt(q, p) and p < INF) or (p == INF and b == INF and A.is_zero())))
    elif corollary == "C23":
        out += [("p = inf", p == INF), ("alpha0 < -1/b", lt(A.alpha0, -ib)), ("alpha_inf + 1/b != 0", not close(A.alpha_inf + ib, 0))]
    elif corollary == "C24":
        out += [("p = inf", p == INF), ("alpha0 < -1/b", lt(A.alpha0, -ib)), ("-1/b < alpha_inf", lt(-ib, A.alpha_inf))]
    elif corollary == "C25":
        out += [("p = inf", p == INF), ("alpha0 < -1/b", lt(A.alpha0, -ib)), ("alpha_inf < -1/b", lt(A.alpha_inf, -ib))]
    elif corollary in ("C26", "C27"):
        out += [
            ("q = p", close(q, p)),
            ("b <= c", le(b, c)),
            ("alpha_inf + 1/b < beta_inf + 1/c", lt(A.alpha_inf + ib, B.alpha_inf + ic)),
            ("alpha0 + 1/b > beta0 + 1/c", gt(A.alpha0 + ib, B.alpha0 + ic)),
        ]
    elif corollary in ("C28", "C29"):
        out += [
            ("q = p", close(q, p)),
            ("c <= b", le(c, b)),
            ("alpha_inf < beta_inf", lt(A.alpha_inf, B.alpha_inf)),
            ("alpha0 >= beta0", ge(A.alpha0, B.alpha0)),
        ]
    else:
        raise ValueError(f"unknown corollary {corollary!r}")
    return out


def embedding_shift(corollary: str, source_base, target_base, n: int, target_smoothness: BesovParams, check: bool = True) -> BesovParams:
    """Smoothness the source Besov space needs so that it embeds into the target one."""
    if corollary not in COROLLARIES:
        raise ValueError(f"unknown corollary {corollary!r}")
    src, tgt = SpaceParams.of(source_base), SpaceParams.of(target_base)
    homogeneous = corollary in HOMOGENEOUS
    ts = target_smoothness
    if homogeneous and not ts.is_pair:
        ts = replace(ts, gamma=LogPair(ts.gamma, ts.gamma))
    if not homogeneous and ts.is_pair:
        raise ValueError(f"{corollary} works with a scalar log smoothness")
    if src == tgt:
        return replace(ts, base=src)
    if check:
        for name, ok in embedding_hypotheses(corollary, src, tgt):
            if not ok:
                raise HypothesisError(name, corollary)
    q, c, B = src.p, src.b, src.A
    p, b, A = tgt.p, tgt.b, tgt.A
    ib, ic = recip(b), recip(c)
    sigma = ts.sigma
    if corollary in ("C21", "C22"):
        sigma = sigma + n * (recip(q) - recip(p))
    elif corollary in ("C23", "C24", "C25"):
        sigma = sigma + n * recip(q)
    g = ts.gamma
    if corollary in ("C21", "C28"):
        g = g + (A.alpha0 - B.alpha0)
    elif corollary in ("C22", "C29"):
        g = g + (A.tilde() - B.tilde())
    elif corollary == "C23":
        g = g + (A.alpha0 + ib - B.alpha0)
    elif corollary == "C24":
        g = g + (A.tilde() + ib - B.tilde())
    elif corollary == "C25":
        g = g + (LogPair(0, A.alpha0 + ib) - B.tilde())
    elif corollary == "C26":
        g = g + (A.alpha0 + ib - B.alpha0 - ic)
    elif corollary == "C27":
        g = g + (A.tilde() + ib - B.tilde() - ic)
    return replace(ts, sigma=sigma, gamma=g, base=src)


@dataclass(frozen=True)
class EmbeddingRow:
    index: int
    seed: int
    omega: float
    target_norm: float
    source_norm: float
    ratio: float


@dataclass(frozen=True)
class EmbeddingReport:
    corollary: str
    source: BesovParams
    target: BesovParams
    rows: tuple
    spread: float
    slope: float


def embedding_ratio(f: BandlimitedFunction, target: BesovParams, source: BesovParams, homogeneous: bool) -> tuple:
    tn = combine_blocks(block_norms(f, target.base, homogeneous), target, homogeneous)
    sn = combine_blocks(block_norms(f, source.base, homogeneous), source, homogeneous)
    return tn, sn, (tn / sn if sn > 0 else 0.0)


def verify_embedding(
    corollary: str,
    family: FamilySpec,
    count: int,
    seed: int,
    source_base,
    target_base,
    target_smoothness: BesovParams,
    omegas=tuple(2.0**k for k in range(1, 9)),
    shift_sigma: bool = True,
) -> EmbeddingReport:
    """Target norm over shifted-source norm for ``count`` family profiles at each omega.

    ``shift_sigma=False`` keeps the log shift but drops the power shift of sigma.
    """
    homogeneous = corollary in HOMOGENEOUS
    n = family.dim
    tgt = replace(target_smoothness, base=SpaceParams.of(target_base))
    src = embedding_shift(corollary, source_base, target_base, n, tgt)
    if not shift_sigma:
        src = replace(src, sigma=tgt.sigma)
    rows = []
    for i in range(int(count)):
        s = int(seed) + i
        for w in omegas:
            f = family.member(float(w), s)
            tn, sn, ratio = embedding_ratio(f, tgt, src, homogeneous)
            rows.append(EmbeddingRow(i, s, float(w), tn, sn, ratio))
    pos = [r.ratio for r in rows if r.ratio > 0]
    spread = max(pos) / min(pos) if pos else 1.0
    slope = fit_slope([math.log(r.omega) for r in rows if r.ratio > 0], [math.log(r.ratio) for r in rows if r.ratio > 0]) if len(set(omegas)) > 1 and pos else 0.0
    return EmbeddingReport(corollary, src, tgt, tuple(rows), spread, slope)
