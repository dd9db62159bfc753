"""Nikol'skii-type bound factors for band-limited functions in Lorentz-Zygmund spaces.

Source triples ``(q, c, B)`` are classified into F1, F0 or F_rho; the
dispatcher then picks the theorem that applies to the pair of spaces and
returns the factor G in

    ||f||_{p,b;A} <= C * G * ||f||_{q,c;B}      (supp f^ inside Omega)

split into its power, log and loglog parts.  The constant C is never
asserted; empirical checks look at slopes and boundedness only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bandlimited import BandlimitedFunction, FamilySpec, Spectrum, power_support, spectrum_measure, synthesize
from .lznorm import lz_norm
from .rearrange import rearrange
from .rng import make_rng
from .spaces import (
    INF,
    ZERO,
    HypothesisError,
    LogPair,
    SpaceParams,
    broken_log_eval,
    broken_loglog_eval,
    close,
    fmt,
    ge,
    gt,
    le,
    lt,
    recip,
)

THEOREMS = ("T4", "T5", "T6", "T7", "T8", "T9", "T10i", "T10ii", "T11", "T13", "T15", "T16", "T17i", "T17ii", "T18")
IDENTITY = "ID"


class UnclassifiedTripleError(HypothesisError):
    pass


@dataclass(frozen=True)
class TripleClass:
    tag: str  # "F0" | "F1" | "Frho"
    rho: Optional[int] = None


def in_F1(q, c, B) -> bool:
    B = LogPair.of(B)
    if close(q, 1) and close(c, 1) and B.is_zero():
        return True
    if gt(q, 1) and lt(q, 2):
        return True
    return close(q, 2) and close(c, 2) and B.is_zero()


def classify(q, c, B) -> TripleClass:
    s = SpaceParams(q, c, LogPair.of(B))
    q, c, B = s.p, s.b, s.A
    if q == INF:
        raise UnclassifiedTripleError("q < inf", "no class is defined for q = inf")
    if lt(q, 1):
        return TripleClass("F0")
    if close(q, 1):
        return TripleClass("F1", 1) if in_F1(q, c, B) else TripleClass("F0")
    if lt(q, 2):
        return TripleClass("F1", 1)
    rho = 1
    while ge(q / rho, 1):
        if in_F1(q / rho, c / rho if c != INF else INF, B * rho):
            return TripleClass("F1", 1) if rho == 1 else TripleClass("Frho", rho)
        rho += 1
    raise UnclassifiedTripleError(
        "(q/rho, c/rho, rho*B) in F1 for some integer rho",
        f"q={fmt(q)}, c={fmt(c)}, B={B}",
    )


# --- theorem table -------------------------------------------------------

_FAMILY = {
    "F1": {"power": "T4", "mixed": "T5", "neg": "T6", "same_i": "T10i", "same_ii": "T10ii", "same_c": "T11"},
    "F0": {"power": "T7", "mixed": "T8", "neg": "T9", "same_i": "T10i", "same_ii": "T10ii", "same_c": "T11"},
    "Frho": {"power": "T13", "mixed": "T15", "neg": "T16", "same_i": "T17i", "same_ii": "T17ii", "same_c": "T18"},
}


def _kind(theorem_id: str) -> str:
    for fam in _FAMILY.values():
        for kind, tid in fam.items():
            if tid == theorem_id:
                return kind
    raise KeyError(theorem_id)


def theorem_class_ok(theorem_id: str, cls: TripleClass) -> bool:
    if theorem_id in ("T4", "T5", "T6"):
        return cls.tag == "F1"
    if theorem_id in ("T7", "T8", "T9"):
        return cls.tag == "F0"
    if theorem_id in ("T10i", "T10ii", "T11"):
        return cls.tag in ("F0", "F1")
    return cls.tag == "Frho"


def hypotheses(theorem_id: str, source, target) -> list[tuple[str, bool]]:
    """Named hypotheses of a theorem, evaluated on the given spaces."""
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    q, c, B = src.p, src.b, src.A
    p, b, A = tgt.p, tgt.b, tgt.A
    ib, ic = recip(b), recip(c)
    try:
        cls = classify(q, c, B)
        cls_ok = theorem_class_ok(theorem_id, cls)
    except HypothesisError:
        cls_ok = False
    kind = _kind(theorem_id)
    out = [("source class matches theorem", cls_ok), ("target space nontrivial", tgt.nontrivial())]
    if kind == "power":
        out.append(("q < p", lt(q, p)))
        out.append(("q < p < inf or (p = b = inf and A = 0)", (lt(q, p) and p < INF) or (p == INF and b == INF and A.is_zero())))
    elif kind in ("mixed", "neg"):
        out.append(("q < p", lt(q, p)))
        out.append(("p = inf", p == INF))
        out.append(("alpha0 < -1/b", lt(A.alpha0, -ib)))
        if kind == "mixed":
            out.append(("-1/b < alpha_inf", lt(-ib, A.alpha_inf)))
        else:
            out.append(("alpha_inf < -1/b", lt(A.alpha_inf, -ib)))
    elif kind in ("same_i", "same_ii"):
        out.append(("q = p", close(q, p)))
        out.append(("b <= c", le(b, c)))
        out.append(("alpha_inf + 1/b < beta_inf + 1/c", lt(A.alpha_inf + ib, B.alpha_inf + ic)))
        if kind == "same_i":
            out.append(("alpha0 + 1/b > beta0 + 1/c", gt(A.alpha0 + ib, B.alpha0 + ic)))
        else:
            out.append(("alpha0 + 1/b = beta0 + 1/c", close(A.alpha0 + ib, B.alpha0 + ic)))
    else:
        out.append(("q = p", close(q, p)))
        out.append(("c <= b", le(c, b)))
        out.append(("alpha_inf < beta_inf", lt(A.alpha_inf, B.alpha_inf)))
        out.append(("alpha0 >= beta0", ge(A.alpha0, B.alpha0)))
    return out


def factor_exponents(theorem_id: str, source, target) -> tuple:
    """(power exponent, log pair, loglog pair) of the bound factor."""
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    q, c, B = src.p, src.b, src.A
    p, b, A = tgt.p, tgt.b, tgt.A
    ib, ic = recip(b), recip(c)
    kind = _kind(theorem_id)
    if kind == "power":
        return recip(q) - recip(p), A.tilde() - B.tilde(), ZERO
    if kind == "mixed":
        return recip(q), A.tilde() + ib - B.tilde(), ZERO
    if kind == "neg":
        return recip(q), LogPair(0, A.alpha0 + ib) - B.tilde(), ZERO
    if kind in ("same_i", "same_ii"):
        gamma = A.tilde() + ib - B.tilde() - ic
        delta = ZERO if kind == "same_i" else LogPair(0, ib - ic)
        return 0, gamma, delta
    return 0, A.tilde() - B.tilde(), ZERO


@dataclass(frozen=True)
class BoundResult:
    theorem_id: str
    base_measure: float
    power_exponent: object
    log_exponents: LogPair
    loglog_exponents: LogPair
    value: float
    requires_bounded: bool
    triple_class: Optional[TripleClass] = None

    def recompute(self) -> float:
        return bound_value(self.base_measure, self.power_exponent, self.log_exponents, self.loglog_exponents)


def bound_value(mu, power, log_pair, loglog_pair) -> float:
    return float(mu) ** float(power) * broken_log_eval(log_pair, float(mu)) * broken_loglog_eval(loglog_pair, float(mu))


def _base_measure(cls: TripleClass, omega, dim: int) -> float:
    """mu(Omega), or the measure of rho*conv(Omega) for F_rho triples.

    A bare number stands for the centred cube of that measure in R^dim.
    """
    if isinstance(omega, Spectrum):
        if cls.tag == "Frho":
            return spectrum_measure(power_support(omega, cls.rho))
        return spectrum_measure(omega)
    mu = float(omega)
    if not (0 < mu < INF):
        raise ValueError("mu(Omega) must be finite and positive")
    if cls.tag == "Frho":
        return cls.rho**dim * mu
    return mu


def _candidates(cls: TripleClass, same_q: bool) -> list[str]:
    fam = _FAMILY[cls.tag]
    if same_q:
        return [fam["same_i"], fam["same_ii"], fam["same_c"]]
    return [fam["power"], fam["mixed"], fam["neg"]]


def nikolskii_bound(source, target, omega, dim: int = 1) -> BoundResult:
    """Select the applicable theorem and return its decomposed bound factor.

    ``omega`` is a ``Spectrum`` or a positive number mu(Omega).
    """
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    if not tgt.nontrivial():
        raise HypothesisError("target space nontrivial", f"{tgt}")
    if src.p == INF:
        raise HypothesisError("q < inf")
    if gt(src.p, tgt.p):
        raise HypothesisError("q <= p", f"q={fmt(src.p)}, p={fmt(tgt.p)}")
    if close(src.p, tgt.p) and close(src.b, tgt.b) and src.A.close_to(tgt.A):
        mu = spectrum_measure(omega) if isinstance(omega, Spectrum) else float(omega)
        return BoundResult(IDENTITY, mu, 0, ZERO, ZERO, 1.0, False, None)

    cls = classify(src.p, src.b, src.A)
    base = _base_measure(cls, omega, dim)
    same_q = close(src.p, tgt.p)
    passing, misses = [], []
    for tid in _candidates(cls, same_q):
        hyp = hypotheses(tid, src, tgt)
        failed = [name for name, ok in hyp if not ok]
        if failed:
            misses.append((len(failed), tid, failed))
        else:
            power, lg, llg = factor_exponents(tid, src, tgt)
            passing.append((bound_value(base, power, lg, llg), tid, power, lg, llg))
    if not passing:
        misses.sort(key=lambda m: m[0])
        _, tid, failed = misses[0]
        raise HypothesisError(failed[0], f"nearest theorem {tid}; all failed: {', '.join(failed)}")
    value, tid, power, lg, llg = min(passing, key=lambda r: r[0])
    return BoundResult(tid, base, power, lg, llg, value, cls.tag == "F0", cls)


# --- empirical verification ----------------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    lhs: float
    rhs: float
    source_norm: float
    bound: BoundResult
    ratio: float


def verify_inequality(f: BandlimitedFunction, source, target) -> VerifyResult:
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    bound = nikolskii_bound(src, tgt, f.spectrum, f.spectrum.dim)
    fs = rearrange(f.samples.abs())
    lhs = lz_norm(fs, tgt).value
    snorm = lz_norm(fs, src).value
    if not math.isfinite(snorm):
        raise ValueError("function has infinite source norm")
    rhs = bound.value * snorm
    return VerifyResult(lhs, rhs, snorm, bound, lhs / rhs if rhs > 0 else 0.0)


def fit_slope(x, y) -> float:
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return float(np.polyfit(x, y, 1)[0])


@dataclass(frozen=True)
class SweepRow:
    omega: float
    mu_omega: float
    lhs: float
    rhs: float
    source_norm: float
    ratio: float
    bound: BoundResult


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    slope: float


def sweep(family: FamilySpec, omegas, source, target, seed: int = 0) -> SweepResult:
    """verify_inequality over a family; slope of log(lhs/source norm) against log mu(Omega)."""
    omegas = [float(w) for w in omegas]
    if len(omegas) < 3:
        raise ValueError("a sweep needs at least 3 omega values")
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    rows = []
    for w in omegas:
        f = family.member(w, seed, spaces=(src, tgt))
        r = verify_inequality(f, src, tgt)
        rows.append(SweepRow(w, spectrum_measure(f.spectrum), r.lhs, r.rhs, r.source_norm, r.ratio, r.bound))
    x = [math.log(r.mu_omega) for r in rows]
    y = [math.log(r.lhs / r.source_norm) for r in rows]
    return SweepResult(tuple(rows), fit_slope(x, y))


# --- randomized extremal search -----------------------------------------


@dataclass(frozen=True)
class ProbeResult:
    best_ratio: float
    best_coefficients: np.ndarray
    history: tuple = field(default=())


def probe_sharpness(source, target, S: Spectrum, budget: int, seed: int, period: float | None = None, grid_points: int = 512) -> ProbeResult:
    """Greedy random search over spectral coefficients in S maximising the verify ratio.

    One proposal per step; the step size adapts only on the accepted/rejected
    history, so runs with the same seed share their prefix and the best ratio
    is non-decreasing in ``budget``.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    src, tgt = SpaceParams.of(source), SpaceParams.of(target)
    if period is None:
        period = 16.0 / S.max_radius()
    rng = make_rng(seed, "probe")
    base = synthesize(S, None, period, grid_points)
    mask = base.mask
    shape = mask.shape

    def ratio_of(coef):
        f = synthesize(S, coef, period, grid_points)
        return verify_inequality(f.function, src, tgt).ratio

    best = np.where(mask, rng.standard_normal(shape) + 1j * rng.standard_normal(shape), 0.0)
    best_ratio = ratio_of(best)
    history = [best_ratio]
    step = 0.5
    for _ in range(int(budget)):
        noise = np.where(mask, rng.standard_normal(shape) + 1j * rng.standard_normal(shape), 0.0)
        scale = np.sqrt(np.mean(np.abs(best[mask]) ** 2)) if mask.any() else 1.0
        cand = best + step * scale * noise
        r = ratio_of(cand)
        if r > best_ratio:
            best, best_ratio = cand, r
            step = min(step * 1.5, 2.0)
        else:
            step = max(step * 0.85, 1e-3)
        history.append(best_ratio)
    return ProbeResult(best_ratio, best, tuple(history))
