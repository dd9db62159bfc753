"""Step functions, sampled functions and the non-increasing rearrangement."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class StepFunction:
    """A nonnegative function given as pieces ``(value, measure)``.

    The order of pieces is the order on the line; only the canonical form
    (values strictly decreasing) is read as a rearrangement f* on
    ``(0, total_measure)``.
    """

    values: np.ndarray
    measures: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).reshape(-1)
        m = np.asarray(self.measures, dtype=float).reshape(-1)
        if v.shape != m.shape:
            raise ValueError("values and measures must have equal length")
        if v.size == 0:
            raise ValueError("a step function needs at least one piece")
        if np.any(~np.isfinite(v)) or np.any(~np.isfinite(m)):
            raise ValueError("values and measures must be finite")
        if np.any(m <= 0):
            raise ValueError("piece measures must be positive")
        v.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "measures", m)

    @classmethod
    def from_pieces(cls, pieces) -> "StepFunction":
        pieces = list(pieces)
        return cls([v for v, _ in pieces], [m for _, m in pieces])

    @classmethod
    def indicator(cls, measure: float, value: float = 1.0) -> "StepFunction":
        return cls([value], [measure])

    @property
    def total_measure(self) -> float:
        return float(np.sum(self.measures))

    @property
    def pieces(self) -> list[tuple[float, float]]:
        return list(zip(self.values.tolist(), self.measures.tolist()))

    def breakpoints(self) -> np.ndarray:
        """Cumulative measures ``0 = T0 < T1 < ... < Tm``."""
        return np.concatenate([[0.0], np.cumsum(self.measures)])

    def is_canonical(self) -> bool:
        return bool(np.all(np.diff(self.values) < 0))

    def power(self, k: float) -> "StepFunction":
        return StepFunction(self.values**k, self.measures)

    def scaled(self, c: float) -> "StepFunction":
        return StepFunction(self.values * c, self.measures)

    def __call__(self, t):
        """Evaluate the (right-continuous) step function at positions ``t`` on the line."""
        t = np.asarray(t, dtype=float)
        idx = np.searchsorted(self.breakpoints(), t, side="right") - 1
        inside = (idx >= 0) & (idx < self.values.size)
        out = np.zeros_like(t)
        out[inside] = self.values[idx[inside]]
        return out

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(self.measures, other.measures)

    def __hash__(self):
        return hash((self.values.tobytes(), self.measures.tobytes()))


@dataclass(frozen=True)
class SampledFunction:
    """Samples of a function on a uniform grid over a box in R^n (n = 1 or 2).

    Each sample stands for a cell of measure ``prod(spacing)``.
    """

    values: np.ndarray
    spacing: tuple
    origin: tuple = field(default=None)

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.ndim not in (1, 2):
            raise ValueError("only 1-D and 2-D grids are supported")
        spacing = tuple(float(h) for h in np.broadcast_to(np.asarray(self.spacing, dtype=float), (vals.ndim,)))
        if any(h <= 0 for h in spacing):
            raise ValueError("grid spacing must be positive")
        origin = self.origin
        origin = (0.0,) * vals.ndim if origin is None else tuple(float(o) for o in np.broadcast_to(origin, (vals.ndim,)))
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "origin", origin)

    @property
    def dim(self) -> int:
        return self.values.ndim

    @property
    def cell_measure(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def total_measure(self) -> float:
        return self.cell_measure * self.values.size

    @property
    def domain_box(self) -> tuple:
        return tuple((o, o + h * n) for o, h, n in zip(self.origin, self.spacing, self.values.shape))

    def abs(self) -> "SampledFunction":
        return SampledFunction(np.abs(self.values), self.spacing, self.origin)

    def scaled(self, c) -> "SampledFunction":
        return SampledFunction(self.values * c, self.spacing, self.origin)

    def power(self, k) -> "SampledFunction":
        return SampledFunction(self.values**k, self.spacing, self.origin)


def rearrange(f) -> StepFunction:
    """Non-increasing rearrangement f* of a nonnegative step or sampled function.

    Equal values are merged exactly; no tolerance is applied.
    """
    if isinstance(f, SampledFunction):
        v = np.asarray(f.values).reshape(-1)
        if np.iscomplexobj(v):
            raise ValueError("rearrange expects |f|; pass f.abs()")
        v = v.astype(float)
        if np.any(v < 0):
            raise ValueError("rearrange expects nonnegative values")
        uniq, counts = np.unique(v, return_counts=True)
        return StepFunction(uniq[::-1], (counts * f.cell_measure)[::-1])
    if isinstance(f, StepFunction):
        if np.any(f.values < 0):
            raise ValueError("rearrange expects nonnegative values")
        if f.is_canonical():
            return f
        uniq, inverse = np.unique(f.values, return_inverse=True)
        meas = np.bincount(inverse, weights=f.measures, minlength=uniq.size)
        return StepFunction(uniq[::-1], meas[::-1])
    raise TypeError(f"cannot rearrange {type(f).__name__}")


def dist_function(f: StepFunction, lam: float) -> float:
    """mu{x : f(x) > lam}."""
    return float(np.sum(f.measures[f.values > lam]))


def truncate_to_unit_set(f: StepFunction) -> StepFunction:
    """The first unit of measure of f*, i.e. f restricted to a set M with mu(M) = 1
    on which |f| >= f*(1)."""
    fs = rearrange(f)
    if fs.total_measure < 1.0:
        raise ValueError(f"total measure {fs.total_measure} < 1")
    ends = fs.breakpoints()[1:]
    n = int(np.searchsorted(ends, 1.0, side="left")) + 1
    meas = fs.measures[:n].copy()
    meas[-1] = 1.0 - (ends[n - 2] if n > 1 else 0.0)
    return StepFunction(fs.values[:n], meas)
