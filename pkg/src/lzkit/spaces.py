"""Exponent pairs, broken-logarithmic weights and Lorentz-Zygmund space parameters.

Exponents given as ints, ``Fraction`` or rational strings (``"1/3"``) are kept
exact; floats stay floats.  Infinity is ``math.inf`` and ``1/inf`` is taken as 0
everywhere.  Comparisons that involve a float use an absolute tolerance of
``EPS``; purely rational comparisons are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real
from typing import Union

import numpy as np

Number = Union[int, float, Fraction]

INF = math.inf
EPS = 1e-12


class LZError(Exception):
    """Base class for errors raised by lzkit."""


class TrivialSpaceError(LZError, ValueError):
    """The requested Lorentz-Zygmund space is {0}."""


class HypothesisError(LZError):
    """A theorem or corollary hypothesis failed.

    ``condition`` names the violated condition in plain text.
    """

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = f"violated condition: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def as_exponent(x) -> Number:
    """Normalise a user supplied exponent, keeping rationals exact."""
    if isinstance(x, bool):
        raise TypeError("boolean is not an exponent")
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("inf", "+inf", "infinity", "∞"):
            return INF
        if s in ("-inf", "-infinity"):
            return -INF
        return Fraction(s)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, Real):
        return float(x)
    raise TypeError(f"cannot interpret {x!r} as an exponent")


def is_exact(*xs) -> bool:
    return all(isinstance(x, Fraction) for x in xs)


def recip(x: Number) -> Number:
    """1/x with the convention 1/inf = 0."""
    if x == INF:
        return Fraction(0)
    if isinstance(x, Fraction):
        return 1 / x
    return 1.0 / x


def close(a: Number, b: Number) -> bool:
    if a == b:
        return True
    if is_exact(a, b) or math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= EPS


def lt(a: Number, b: Number) -> bool:
    return a < b and not close(a, b)


def le(a: Number, b: Number) -> bool:
    return a < b or close(a, b)


def gt(a: Number, b: Number) -> bool:
    return lt(b, a)


def ge(a: Number, b: Number) -> bool:
    return le(b, a)


def fmt(x) -> str:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return str(x)


@dataclass(frozen=True)
class LogPair:
    """Ordered exponent pair ``(alpha0, alpha_inf)`` of a broken-log weight.

    ``alpha0`` acts on ``0 < t <= 1`` and ``alpha_inf`` on ``t > 1``.
    Supports ``+``/``-`` with pairs or scalars, scalar ``*``, and ``tilde``.
    """

    alpha0: Number = Fraction(0)
    alpha_inf: Number = Fraction(0)

    def __post_init__(self):
        a0 = as_exponent(self.alpha0)
        ai = as_exponent(self.alpha_inf)
        for a in (a0, ai):
            if isinstance(a, float) and not math.isfinite(a):
                raise ValueError("LogPair components must be finite")
        object.__setattr__(self, "alpha0", a0)
        object.__setattr__(self, "alpha_inf", ai)

    @classmethod
    def of(cls, value) -> "LogPair":
        if isinstance(value, LogPair):
            return value
        if value is None:
            return cls()
        if isinstance(value, (int, float, Fraction, str)):
            return cls(value, value)
        a0, ai = value
        return cls(a0, ai)

    def __iter__(self):
        yield self.alpha0
        yield self.alpha_inf

    def tilde(self) -> "LogPair":
        return LogPair(self.alpha_inf, self.alpha0)

    def _coerce(self, other):
        if isinstance(other, LogPair):
            return other
        return LogPair(other, other)

    def __add__(self, other) -> "LogPair":
        o = self._coerce(other)
        return LogPair(self.alpha0 + o.alpha0, self.alpha_inf + o.alpha_inf)

    __radd__ = __add__

    def __sub__(self, other) -> "LogPair":
        o = self._coerce(other)
        return LogPair(self.alpha0 - o.alpha0, self.alpha_inf - o.alpha_inf)

    def __rsub__(self, other) -> "LogPair":
        return self._coerce(other) - self

    def __neg__(self) -> "LogPair":
        return LogPair(-self.alpha0, -self.alpha_inf)

    def __mul__(self, k) -> "LogPair":
        k = as_exponent(k)
        return LogPair(self.alpha0 * k, self.alpha_inf * k)

    __rmul__ = __mul__

    def add_scalar(self, sigma) -> "LogPair":
        return self + as_exponent(sigma)

    def scale(self, k) -> "LogPair":
        return self * k

    def is_zero(self) -> bool:
        return close(self.alpha0, 0) and close(self.alpha_inf, 0)

    def close_to(self, other: "LogPair") -> bool:
        return close(self.alpha0, other.alpha0) and close(self.alpha_inf, other.alpha_inf)

    def as_floats(self) -> tuple[float, float]:
        return float(self.alpha0), float(self.alpha_inf)

    def __repr__(self) -> str:
        return f"LogPair({fmt(self.alpha0)}, {fmt(self.alpha_inf)})"


ZERO = LogPair(0, 0)


def ell(t):
    """l(t) = 1 + |ln t|."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("l(t) needs t > 0")
    return 1.0 + np.abs(np.log(t))


def broken_log_eval(A: LogPair, t):
    """Evaluate l^A(t), vectorised over ``t``."""
    A = LogPair.of(A)
    tt = np.asarray(t, dtype=float)
    if np.any(~(tt > 0)):
        raise ValueError("broken_log_eval needs t > 0")
    a0, ai = A.as_floats()
    out = np.where(tt <= 1.0, ell(tt) ** a0, ell(tt) ** ai)
    return float(out) if np.ndim(t) == 0 else out


def broken_loglog_eval(A: LogPair, t):
    """ll^A(t): ll(t) = l(l(t)) raised to alpha0 for t <= 1 and alpha_inf for t > 1."""
    A = LogPair.of(A)
    tt = np.asarray(t, dtype=float)
    if np.any(~(tt > 0)):
        raise ValueError("broken_loglog_eval needs t > 0")
    a0, ai = A.as_floats()
    ll = ell(ell(tt))
    out = np.where(tt <= 1.0, ll**a0, ll**ai)
    return float(out) if np.ndim(t) == 0 else out


def conjugate(p) -> Number:
    """Hölder conjugate p' with 1/p + 1/p' = 1."""
    p = as_exponent(p)
    if p < 1:
        raise ValueError(f"conjugate exponent needs p >= 1, got {fmt(p)}")
    if p == 1:
        return INF
    return recip(1 - recip(p))


@dataclass(frozen=True)
class SpaceParams:
    """Parameters ``(p, b, A)`` of L_{p,b;A}."""

    p: Number
    b: Number
    A: LogPair = ZERO

    def __post_init__(self):
        p = as_exponent(self.p)
        b = as_exponent(self.b)
        if not (p > 0):
            raise ValueError(f"p must lie in (0, inf], got {fmt(p)}")
        if not (b > 0):
            raise ValueError(f"b must lie in (0, inf], got {fmt(b)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "A", LogPair.of(self.A))

    @classmethod
    def of(cls, value) -> "SpaceParams":
        if isinstance(value, SpaceParams):
            return value
        if isinstance(value, dict):
            return cls(value["p"], value["b"], LogPair.of(value.get("A", (0, 0))))
        p, b, *rest = value
        return cls(p, b, LogPair.of(rest[0]) if rest else ZERO)

    @property
    def inv_p(self) -> Number:
        return recip(self.p)

    @property
    def inv_b(self) -> Number:
        return recip(self.b)

    def nontrivial(self) -> bool:
        return nontrivial(self)

    def require_nontrivial(self) -> None:
        if not nontrivial(self):
            raise TrivialSpaceError(f"L_{{{fmt(self.p)},{fmt(self.b)};{self.A}}} is trivial")

    def __repr__(self) -> str:
        return f"SpaceParams(p={fmt(self.p)}, b={fmt(self.b)}, A=({fmt(self.A.alpha0)}, {fmt(self.A.alpha_inf)}))"


def nontrivial(s: SpaceParams) -> bool:
    if s.p < INF:
        return True
    if s.b < INF:
        return lt(s.A.alpha0 + s.inv_b, 0)
    return close(s.A.alpha0, 0)


@dataclass(frozen=True)
class InterpSpec:
    """Parameters ``(theta, b, A)`` of the real interpolation functor with log factor."""

    theta: Number
    b: Number
    A: LogPair = ZERO

    def __post_init__(self):
        object.__setattr__(self, "theta", as_exponent(self.theta))
        object.__setattr__(self, "b", as_exponent(self.b))
        object.__setattr__(self, "A", LogPair.of(self.A))
        if not (0 <= self.theta <= 1):
            raise ValueError("theta must lie in [0, 1]")
        if not (self.b > 0):
            raise ValueError("b must be positive")

    def admissible(self) -> bool:
        th, b, A = self.theta, self.b, self.A
        ib = recip(b)
        if 0 < th < 1:
            return True
        if th == 0:
            return lt(A.alpha_inf + ib, 0) or (b == INF and close(A.alpha_inf, 0))
        return lt(A.alpha0 + ib, 0) or (b == INF and close(A.alpha0, 0))


def interp_params(theta, s0: SpaceParams, s1: SpaceParams, A=ZERO, b=None) -> SpaceParams:
    """Parameters of the Lorentz-Zygmund space produced by interpolating ``s0`` and ``s1``.

    For ``0 < theta < 1`` returns ``(p, b, Gamma)`` with
    ``1/p = (1-theta)/p0 + theta/p1`` and ``Gamma = A + (1-theta) A0 + theta A1``.
    ``b`` is the functor's second index (defaults to ``s0.b``).

    ``theta = 1`` with ``s1 = L_inf`` is the limiting form and returns
    ``(inf, b, A)``; it is admissible iff that space is nontrivial.
    """
    theta = as_exponent(theta)
    A = LogPair.of(A)
    b = s0.b if b is None else as_exponent(b)
    spec = InterpSpec(theta, b, A)
    s1_is_linf = s1.p == INF and s1.b == INF and s1.A.is_zero()

    if theta == 1:
        if not (s0.p < INF and s1_is_linf):
            raise HypothesisError("theta = 1 requires 0 < p0 < inf and the second space L_inf")
        if not spec.admissible():
            raise HypothesisError("alpha0 + 1/b < 0 (or b = inf, alpha0 = 0)", "limiting form at theta = 1")
        return SpaceParams(INF, b, A)
    if not (0 < theta < 1):
        raise HypothesisError("0 < theta < 1")
    if s0.p == INF:
        raise HypothesisError("0 < p0 < inf")
    if s1.p == INF:
        if not (s1.b == INF and s1.A.is_zero()):
            raise HypothesisError("p1 = b1 = inf and A1 = 0", "only L_inf is allowed as an infinite endpoint")
    elif close(s0.p, s1.p):
        raise HypothesisError("p0 != p1")
    inv_p = (1 - theta) * s0.inv_p + theta * s1.inv_p
    gamma = A + s0.A * (1 - theta) + s1.A * theta
    return SpaceParams(recip(inv_p), b, gamma)
