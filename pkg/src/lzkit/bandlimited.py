"""Band-limited test functions and spectrum arithmetic.

Two families are provided:

* ``make_sinc_power``: ``f(x) = sinc(omega x)^m`` (normalised sinc) sampled on a
  truncated symmetric grid; spectrum ``[-m omega/2, m omega/2]``.
* ``make_random_bandlimited``: trigonometric polynomials on a torus of period
  ``P`` with random complex coefficients on the lattice ``Z^n / P`` inside a
  union of boxes.  The torus stands in for R^n.

The continuous transform ``F f(xi) = int exp(-2 pi i x xi) f(x) dx`` is
approximated on a grid by the cell-weighted DFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.special import beta as beta_fn

from .rearrange import SampledFunction
from .rng import make_rng
from .spaces import INF, SpaceParams, as_exponent


@dataclass(frozen=True)
class Spectrum:
    """Finite union of closed axis-aligned boxes ``(lo, hi)`` in R^n."""

    boxes: tuple

    def __post_init__(self):
        boxes = []
        for lo, hi in self.boxes:
            lo = tuple(float(x) for x in np.atleast_1d(lo))
            hi = tuple(float(x) for x in np.atleast_1d(hi))
            if len(lo) != len(hi):
                raise ValueError("box corners have different dimensions")
            if any(h <= l for l, h in zip(lo, hi)):
                raise ValueError(f"box {lo}-{hi} has no volume")
            boxes.append((lo, hi))
        if boxes and len({len(lo) for lo, _ in boxes}) != 1:
            raise ValueError("all boxes must share one dimension")
        object.__setattr__(self, "boxes", tuple(boxes))

    @classmethod
    def interval(cls, a: float, b: float) -> "Spectrum":
        return cls((((a,), (b,)),))

    @classmethod
    def cube(cls, radius: float, dim: int = 1) -> "Spectrum":
        return cls((((-radius,) * dim, (radius,) * dim),))

    @property
    def dim(self) -> int:
        if not self.boxes:
            raise ValueError("empty spectrum")
        return len(self.boxes[0][0])

    def bounding_box(self) -> tuple:
        if not self.boxes:
            raise ValueError("empty spectrum")
        lo = np.min([b[0] for b in self.boxes], axis=0)
        hi = np.max([b[1] for b in self.boxes], axis=0)
        return tuple(lo.tolist()), tuple(hi.tolist())

    def contains(self, points) -> np.ndarray:
        """Membership of points with shape ``(..., n)`` in the closed union."""
        pts = np.asarray(points, dtype=float)
        inside = np.zeros(pts.shape[:-1], dtype=bool)
        for lo, hi in self.boxes:
            inside |= np.all((pts >= np.array(lo)) & (pts <= np.array(hi)), axis=-1)
        return inside

    def max_radius(self) -> float:
        """sup of |xi| over the spectrum."""
        return max(math.hypot(*[max(abs(l), abs(h)) for l, h in zip(lo, hi)]) for lo, hi in self.boxes)

    def min_radius(self) -> float:
        """inf of |xi| over the spectrum (0 if it touches the origin)."""
        dists = []
        for lo, hi in self.boxes:
            d = [0.0 if l <= 0 <= h else min(abs(l), abs(h)) for l, h in zip(lo, hi)]
            dists.append(math.hypot(*d))
        return min(dists)

    def scaled(self, factor: float) -> "Spectrum":
        return Spectrum(tuple((tuple(factor * x for x in lo), tuple(factor * x for x in hi)) for lo, hi in self.boxes))


def spectrum_measure(S: Spectrum) -> float:
    """Lebesgue measure of the union of boxes, by coordinate compression."""
    if not S.boxes:
        raise ValueError("empty spectrum")
    n = S.dim
    edges = [np.unique(np.concatenate([[b[0][i], b[1][i]] for b in S.boxes])) for i in range(n)]
    mids = [0.5 * (e[:-1] + e[1:]) for e in edges]
    widths = [np.diff(e) for e in edges]
    grid = np.stack(np.meshgrid(*mids, indexing="ij"), axis=-1)
    vol = widths[0]
    for w in widths[1:]:
        vol = np.multiply.outer(vol, w)
    return float(np.sum(vol[S.contains(grid)]))


def power_support(S: Spectrum, rho: int) -> Spectrum:
    """rho times the bounding box of conv(S), dilated about the origin.

    Contains the spectrum of f^rho whenever supp f^ is inside S.
    """
    if int(rho) != rho or rho < 1:
        raise ValueError("rho must be an integer >= 1")
    lo, hi = S.bounding_box()
    return Spectrum(((tuple(rho * x for x in lo), tuple(rho * x for x in hi)),))


# --- transforms ------------------------------------------------------------


def frequency_grid(f: SampledFunction) -> list[np.ndarray]:
    return [np.fft.fftfreq(n, d=h) for n, h in zip(f.values.shape, f.spacing)]


def fourier(f: SampledFunction) -> np.ndarray:
    """Cell-weighted DFT approximating F f on ``frequency_grid(f)`` (up to a phase)."""
    return np.fft.fftn(f.values) * f.cell_measure


def inverse_fourier(fhat: np.ndarray, like: SampledFunction) -> SampledFunction:
    return SampledFunction(np.fft.ifftn(fhat) / like.cell_measure, like.spacing, like.origin)


@dataclass(frozen=True)
class DFTResiduals:
    plancherel: float
    hausdorff_young: float


def dft_checks(f: SampledFunction) -> DFTResiduals:
    """Discrete Plancherel and L1 -> L_inf residuals of the cell-weighted DFT."""
    vals = np.asarray(f.values)
    l2 = math.sqrt(float(np.sum(np.abs(vals) ** 2)) * f.cell_measure)
    l1 = float(np.sum(np.abs(vals))) * f.cell_measure
    if l1 == 0.0:
        return DFTResiduals(0.0, 0.0)
    fhat = fourier(f)
    dual_cell = 1.0 / (f.total_measure)
    l2_hat = math.sqrt(float(np.sum(np.abs(fhat) ** 2)) * dual_cell)
    linf_hat = float(np.max(np.abs(fhat)))
    return DFTResiduals(abs(l2_hat - l2) / l2, max(0.0, linf_hat - l1) / l1)


# --- function families -----------------------------------------------------


@dataclass(frozen=True)
class BandlimitedFunction:
    kind: str
    omega: float
    samples: SampledFunction
    spectrum: Spectrum
    m: Optional[int] = None
    period: Optional[float] = None
    closed_form_norms: dict = field(default_factory=dict)

    def scaled(self, c: float) -> "BandlimitedFunction":
        norms = {p: abs(c) * v for p, v in self.closed_form_norms.items()}
        return BandlimitedFunction(self.kind, self.omega, self.samples.scaled(c), self.spectrum, self.m, self.period, norms)


def sinc_power_integral(n: int) -> Fraction:
    """int_R (sin(pi x)/(pi x))^n dx for integer n >= 2 (central B-spline value)."""
    if n < 2:
        raise ValueError("sinc^n is integrable only for n >= 2")
    total = sum((-1) ** k * math.comb(n, k) * Fraction(n - 2 * k, 2) ** (n - 1) for k in range(n // 2 + 1))
    return total / math.factorial(n - 1)


def sinc_power_norms(omega: float, m: int, exponents=(1, 2, 3, 4)) -> dict:
    """Exact L_p norms of sinc(omega x)^m for p with m p integral, plus p = inf."""
    out = {INF: 1.0}
    for p in exponents:
        mp = m * p
        if float(mp).is_integer() and mp >= 2:
            out[p] = (float(sinc_power_integral(int(mp))) / omega) ** (1.0 / p)
    return out


@dataclass(frozen=True)
class SincGrid:
    """Sampling of sinc powers.

    ``spaces`` lists ``(p, b)`` pairs whose quasi-norms must be insensitive to
    truncation: the envelope bound on the discarded tail's share of
    ``||f||_{p,b}^b`` stays below ``tail_tol`` (log weights are ignored).
    """

    oversample: float = 2.0
    tail_tol: float = 1e-6
    spaces: tuple = ((1, 1),)
    half_width: Optional[float] = None
    max_points: int = 1 << 24


def _tail_ratio_at_unit_x(omega, m, p, b):
    """Tail share at X = 1 and its decay exponent in X."""
    ip = 0.0 if p == INF else 1.0 / float(p)
    if m <= ip:
        raise ValueError(f"sinc^{m} does not lie in L_{{{p},{b}}}")
    if b == INF:
        t_star = 2.0 / (m * float(p) - 1.0)
        tail = t_star**ip * (math.pi * omega * (1.0 + t_star / 2.0)) ** (-m)
        ref = omega ** (-ip) * (2.0 / math.pi) ** m
        return tail / ref, m - ip
    b = float(b)
    tail = (math.pi * omega) ** (-m * b) * 2.0 ** (b * ip) * beta_fn(b * ip, m * b - b * ip)
    mp = m * float(p)
    if b == float(p) and mp.is_integer() and mp >= 2:
        ref = float(sinc_power_integral(int(mp))) / omega
    else:
        ref = (2.0 / math.pi) ** (m * b) * omega ** (-b * ip) / (b * ip)
    return tail / ref, m * b - b * ip


def sinc_half_width(omega: float, m: int, grid: SincGrid) -> float:
    X = 4.0 / omega
    for p, b in grid.spaces:
        p, b = as_exponent(p), as_exponent(b)
        if p == INF:
            continue
        r1, decay = _tail_ratio_at_unit_x(omega, m, p, b)
        X = max(X, (r1 / grid.tail_tol) ** (1.0 / decay))
    return X


def make_sinc_power(omega: float, m: int, grid: SincGrid | None = None) -> BandlimitedFunction:
    """Samples of ``(sin(pi omega x)/(pi omega x))^m`` with spectrum ``[-m omega/2, m omega/2]``."""
    grid = grid or SincGrid()
    if omega <= 0:
        raise ValueError("omega must be positive")
    if int(m) != m or m < 1:
        raise ValueError("m must be a positive integer")
    m = int(m)
    spacing = 1.0 / (grid.oversample * m * omega)
    if spacing > 1.0 / (m * omega) * (1 + 1e-12):
        raise ValueError(f"grid spacing {spacing} violates Nyquist bound {1.0 / (m * omega)}")
    X = grid.half_width if grid.half_width is not None else sinc_half_width(omega, m, grid)
    J = int(math.ceil(X / spacing))
    if 2 * J + 1 > grid.max_points:
        raise ValueError(f"sinc grid needs {2 * J + 1} points (> max_points={grid.max_points})")
    x = (np.arange(2 * J + 1) - J) * spacing
    vals = np.sinc(omega * x) ** m
    samples = SampledFunction(vals, (spacing,), (-(J + 0.5) * spacing,))
    return BandlimitedFunction(
        kind="sinc-power",
        omega=float(omega),
        samples=samples,
        spectrum=Spectrum.interval(-m * omega / 2.0, m * omega / 2.0),
        m=m,
        closed_form_norms=sinc_power_norms(omega, m),
    )


def _lattice_ranges(S: Spectrum, period: float):
    lo, hi = S.bounding_box()
    return [(math.ceil(l * period - 1e-9), math.floor(h * period + 1e-9)) for l, h in zip(lo, hi)]


@dataclass(frozen=True)
class Synthesis:
    """A trigonometric polynomial built from lattice coefficients.

    ``mask`` marks the lattice points of the bounding box of S that lie in S.
    """

    function: BandlimitedFunction
    mask: np.ndarray
    coefficients: np.ndarray


def lattice(S: Spectrum, period: float):
    """Integer lattice axes covering the bounding box of S / (1/period), and the in-S mask."""
    ranges = _lattice_ranges(S, period)
    axes = [np.arange(a, b + 1) for a, b in ranges]
    if any(ax.size == 0 for ax in axes):
        return axes, np.zeros(tuple(ax.size for ax in axes), dtype=bool)
    ks = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return axes, S.contains(ks / period)


def synthesize(S: Spectrum, coef, period: float, grid_points: int, omega: float | None = None) -> Synthesis:
    """Sample sum_k c_k exp(2 pi i k x / period) on an N^n grid of the torus.

    ``coef`` has the lattice shape; entries outside S are ignored.  ``None``
    gives the zero polynomial (useful for reading the mask).
    """
    n = S.dim
    N = int(grid_points)
    if period <= 0 or N < 2:
        raise ValueError("need period > 0 and grid_points >= 2")
    axes, mask = lattice(S, period)
    shape = mask.shape
    coef = np.zeros(shape, dtype=complex) if coef is None else np.asarray(coef, dtype=complex)
    if coef.shape != shape:
        raise ValueError(f"coefficient shape {coef.shape} does not match lattice {shape}")
    coef = np.where(mask, coef, 0.0)
    grid = np.zeros((N,) * n, dtype=complex)
    if mask.size:
        if any(max(abs(int(ax[0])), abs(int(ax[-1]))) >= N / 2 for ax in axes):
            raise ValueError(f"grid of {N} points does not resolve spectrum {S.bounding_box()} at period {period}")
        grid[np.ix_(*[np.mod(ax, N) for ax in axes])] = coef
    vals = np.fft.ifftn(grid) * N**n
    f = BandlimitedFunction(
        kind="random-spectrum",
        omega=float(omega) if omega is not None else S.max_radius(),
        samples=SampledFunction(vals, (period / N,) * n, (0.0,) * n),
        spectrum=S,
        period=float(period),
    )
    return Synthesis(f, mask, coef)


def make_random_bandlimited(S: Spectrum, seed: int, period: float, grid_points: int, omega: float | None = None) -> BandlimitedFunction:
    """Random trigonometric polynomial on the torus [0, period)^n with frequencies in S.

    Coefficients are drawn for every lattice point of the bounding box of S
    in lexicographic order and zeroed outside S, so the function depends on
    ``(S, seed, period)`` only, not on ``grid_points``.
    """
    _, mask = lattice(S, period)
    rng = make_rng(seed, "random-bandlimited")
    coef = rng.standard_normal(mask.shape) + 1j * rng.standard_normal(mask.shape)
    count = int(mask.sum())
    if count:
        coef /= math.sqrt(count)
    return synthesize(S, coef, period, grid_points, omega).function


# --- families indexed by a bandwidth ---------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    """A one-parameter family of band-limited functions indexed by ``omega``.

    ``sinc-power``: ``sinc(omega x)^m``; ``random``: a fixed random profile
    with spectrum ``[-omega, omega]^dim`` (or the 1-D annulus
    ``inner*omega <= |xi| <= omega``) on a torus of period
    ``period_scale/omega``, so members are dilates of one another.
    """

    kind: str = "sinc-power"
    m: int = 2
    oversample: float = 2.0
    tail_tol: float = 1e-6
    period_scale: float = 16.0
    grid_points: int = 1024
    dim: int = 1
    inner: float = 0.0

    def __post_init__(self):
        if self.kind not in ("sinc-power", "random"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.inner and self.dim != 1:
            raise ValueError("annulus spectra are only supported in 1-D")

    def spectrum(self, omega: float) -> Spectrum:
        if self.kind == "sinc-power":
            return Spectrum.interval(-self.m * omega / 2.0, self.m * omega / 2.0)
        if self.inner > 0:
            a = self.inner * omega
            return Spectrum((((-omega,), (-a,)), ((a,), (omega,))))
        return Spectrum.cube(omega, self.dim)

    def member(self, omega: float, seed: int = 0, spaces=((1, 1),)) -> BandlimitedFunction:
        if self.kind == "sinc-power":
            spaces = tuple((s.p, s.b) if isinstance(s, SpaceParams) else tuple(s) for s in spaces)
            return make_sinc_power(omega, self.m, SincGrid(self.oversample, self.tail_tol, spaces))
        return make_random_bandlimited(self.spectrum(omega), seed, self.period_scale / omega, self.grid_points, omega=omega)
