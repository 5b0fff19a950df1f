"""
Extraction of the CPT resonance position ``delta_0`` from the different
observables, and the small-intensity expansion

    delta_0(x) = alpha_1 x + alpha_2 x**2,   x = (rabi_1**2 + rabi_2**2) / Gamma**2.

Three extractors are provided: the zero of ``Im rho_12``, the minimum of the
absorption profile ``Im chi_1`` (roots of the derivative of its rational
form), and the minimum of the excited population. The last two are located
inside the window ``|delta| <= max(10 gamma_D, 2|delta_AC| + 10 gamma_D)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import (FitIllConditioned, NoExtremum, NoRealRootInWindow, NoZeroInWindow,
                     PolynomialIllConditioned, ResonanceAbsent)
from .model import DetuningSpec, ModelParams
from .observables import (RationalChi, appendix_b_coefficients, corrected_rational,
                          reconstruct_rational, rho_exc_from_chi)
from .steady_state import solve_steady
from .weak_coupling import gamma_d, reduced_solution, stark_shift

DEFAULT_X_GRID = (2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3)
CONTRAST_THRESHOLD = 1e-3
BACKGROUND_OFFSET = 20.0  # background detuning in units of gamma_D
SCAN_POINTS = 81
INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class ExtremumReport:
    """Located resonance position and how it was found.

    ``curvature`` is +1 for a minimum and -1 for a maximum (0 for a zero
    crossing). ``roots`` lists every real candidate as ``(delta, kind)``.
    """

    delta0: float
    curvature: int
    window: float
    method: str
    roots: tuple = ()
    diagnostics: dict = field(default_factory=dict)


def search_window(params: ModelParams) -> float:
    gd = gamma_d(params)
    return max(10 * gd, 2 * abs(stark_shift(params)) + 10 * gd)


# ---------------------------------------------------------------------------
# Im rho_12 zero

def _rho12_im(params: ModelParams, path: str, delta_common: float) -> Callable[[float], float]:
    if path == "exact":
        return lambda d: solve_steady(params, DetuningSpec(d, delta_common)).rho12.imag
    if path == "adiabatic":
        return lambda d: reduced_solution(params, DetuningSpec(d, delta_common)).rho12.imag
    raise ValueError("path must be 'exact' or 'adiabatic'")


def _scan(f: Callable[[float], float], window: float, n: int = SCAN_POINTS):
    grid = np.linspace(-window, window, n)
    return grid, np.array([f(x) for x in grid])


def shift_from_rho12(params: ModelParams, path: str = "exact",
                     delta_common: float = 0.0) -> ExtremumReport:
    """Zero of ``Im rho_12`` nearest to ``delta = 0`` inside the search window.

    Raises
    ------
    NoZeroInWindow
        If ``Im rho_12`` does not change sign in the window.
    """
    W = search_window(params)
    gd = gamma_d(params)
    f = _rho12_im(params, path, delta_common)
    grid, vals = _scan(f, W)
    brackets = [(grid[i], grid[i + 1]) for i in range(len(grid) - 1)
                if vals[i] == 0 or np.sign(vals[i]) != np.sign(vals[i + 1])]
    if not brackets:
        raise NoZeroInWindow(f"Im rho12 keeps its sign on |delta| <= {W:g}")
    roots = []
    for lo, hi in brackets:
        flo = f(lo)
        if flo == 0:
            roots.append(lo)
        elif f(hi) == 0:
            roots.append(hi)
        else:
            roots.append(brentq(f, lo, hi, xtol=1e-9 * gd, rtol=4 * np.finfo(float).eps))
    roots = sorted(set(roots), key=abs)
    return ExtremumReport(roots[0], 0, W, "bisection", tuple((r, "zero") for r in roots),
                          {"path": path, "residual": abs(f(roots[0]))})


# ---------------------------------------------------------------------------
# absorption minimum via the derivative polynomial

def _rational(params: ModelParams, source: str, component: int) -> RationalChi:
    if source == "corrected":
        return corrected_rational(params, component)
    if source == "reconstructed":
        return reconstruct_rational(params, component)
    if source == "printed":
        return appendix_b_coefficients(params, "printed", component)
    raise ValueError("source must be 'corrected', 'reconstructed' or 'printed'")


def _polish(q_scaled: np.ndarray, u: float, steps: int = 4) -> float:
    P = np.polynomial.polynomial
    dq = P.polyder(q_scaled)
    for _ in range(steps):
        d = P.polyval(u, dq)
        if d == 0:
            break
        step = P.polyval(u, q_scaled) / d
        u -= step
        if abs(step) <= 1e-15 * max(abs(u), 1.0):
            break
    return u


def chi_extremum_polynomial(params: ModelParams, component: int = 1, source: str = "corrected",
                            rational: Optional[RationalChi] = None) -> ExtremumReport:
    """Minimum of ``Im chi_g`` from the real roots of ``N' D - N D'``.

    The rational form carries a factor ``delta`` in both numerator and
    denominator, so the degree-15 derivative polynomial has a spurious
    double root at zero; it is divided out before the companion-matrix
    eigenvalues are computed in the scaled variable ``u = delta / gamma_D``.

    Raises
    ------
    NoRealRootInWindow
        If no minimum lies in the search window (the resonance is gone).
    PolynomialIllConditioned
        If the derivative polynomial is numerically zero.
    """
    chi = rational if rational is not None else _rational(params, source, component)
    P = np.polynomial.polynomial
    full = chi.extremum_polynomial()
    n, m = chi.reduced()
    q = P.polysub(P.polymul(P.polyder(n), m), P.polymul(n, P.polyder(m)))
    q = np.trim_zeros(q, "b")
    W = search_window(params)
    sigma = gamma_d(params)
    qs = q * sigma ** np.arange(len(q))
    norm = np.max(np.abs(qs)) if len(qs) else 0.0
    if norm == 0 or not np.isfinite(norm):
        raise PolynomialIllConditioned("derivative polynomial vanishes identically")
    qs = qs / norm
    k = 0
    while k < len(qs) - 1 and qs[k] == 0:
        k += 1  # exact roots at zero
    roots_u = list(P.polyroots(qs[k:])) if len(qs) - k > 1 else []
    roots_u += [0.0] * k

    n2, m2 = P.polyder(n, 2), P.polyder(m, 2)
    tol = 1e-8 * W / sigma
    found = []
    for r in roots_u:
        if abs(np.imag(r)) > max(tol, 1e-6 * abs(r)):
            continue
        u = _polish(qs, float(np.real(r))) if r != 0 else 0.0
        x = u * sigma
        curv = np.sign(P.polyval(x, n2) * P.polyval(x, m) - P.polyval(x, n) * P.polyval(x, m2))
        found.append((x, "min" if curv > 0 else "max" if curv < 0 else "flat"))
    found.sort(key=lambda t: abs(t[0]))
    inside = [r for r in found if abs(r[0]) < W and r[1] == "min"]
    if not inside:
        raise NoRealRootInWindow(f"no minimum of Im chi_{component} with |delta| < {W:g}")
    return ExtremumReport(inside[0][0], 1, W, "polynomial-roots", tuple(found),
                          {"degree": len(full) - 1, "deflated_degree": len(q) - 1,
                           "source": source if rational is None else "given",
                           "component": component})


# ---------------------------------------------------------------------------
# direct searches

def golden_section_min(f: Callable[[float], float], a: float, b: float, xtol: float) -> float:
    """Minimum of a unimodal ``f`` on ``[a, b]`` to absolute tolerance ``xtol``.

    Written out because the library golden-section routine only offers a
    relative tolerance, which never terminates sensibly for a minimum at 0.
    """
    c, d = b - INV_PHI * (b - a), a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _local_min(f: Callable[[float], float], window: float, xtol: float,
               label: str) -> tuple[float, tuple]:
    # coarse scan, then golden section around the interior minimum nearest 0
    grid, vals = _scan(f, window)
    idx = [i for i in range(1, len(grid) - 1) if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]
           and not (vals[i] == vals[i - 1] == vals[i + 1])]
    if not idx:
        raise NoExtremum(f"{label} has no interior minimum on |delta| <= {window:g}")
    idx.sort(key=lambda i: abs(grid[i]))
    i = idx[0]
    x = golden_section_min(f, grid[i - 1], grid[i + 1], xtol)
    return x, tuple((grid[j], "min") for j in idx)


def rational_profile(params: ModelParams, component: int = 1, source: str = "corrected"):
    return _rational(params, source, component)


def chi_extremum_golden(params: ModelParams, component: int = 1, source: str = "corrected",
                        rational: Optional[RationalChi] = None) -> ExtremumReport:
    """Minimum of the rational ``Im chi_g`` by direct golden-section search."""
    chi = rational if rational is not None else _rational(params, source, component)
    W = search_window(params)
    gd = gamma_d(params)
    x, cands = _local_min(chi, W, 1e-7 * gd, f"Im chi_{component}")
    return ExtremumReport(x, 1, W, "golden-section", cands, {"source": source})


def _chi_function(params: ModelParams, path: str, component: int, delta_common: float = 0.0):
    from .observables import chi_adiabatic, susceptibility
    if path == "exact":
        def f(d):
            det = DetuningSpec(d, delta_common)
            return susceptibility(params, det, solve_steady(params, det))[component - 1].imag
        return f
    if path == "adiabatic":
        return lambda d: chi_adiabatic(params, d, component, delta_common)
    raise ValueError("path must be 'exact' or 'adiabatic'")


def chi_extremum_solver(params: ModelParams, path: str = "exact", component: int = 1,
                        delta_common: float = 0.0) -> ExtremumReport:
    """Minimum of ``Im chi_g`` evaluated pointwise from a solver, by golden section."""
    W = search_window(params)
    f = _chi_function(params, path, component, delta_common)
    x, cands = _local_min(f, W, 1e-7 * gamma_d(params), f"Im chi_{component}")
    return ExtremumReport(x, 1, W, "golden-section", cands, {"path": path, "component": component})


def headline_shift(params: ModelParams, path: str = "rational") -> ExtremumReport:
    """Resonance position reported as "the" shift: the minimum of ``Im chi_1``.

    ``path="rational"`` uses the derivative-polynomial roots; ``"exact"`` and
    ``"adiabatic"`` search the pointwise solver output directly.
    """
    if path == "rational":
        return chi_extremum_polynomial(params)
    return chi_extremum_solver(params, path)


def _rho_exc_function(params: ModelParams, path: str, delta_common: float = 0.0):
    if path == "exact":
        return lambda d: _exc_exact(params, d, delta_common)
    if path == "adiabatic":
        return lambda d: reduced_solution(params, DetuningSpec(d, delta_common)).excited_population
    if path == "rational":
        c1, c2 = corrected_rational(params, 1), corrected_rational(params, 2)
        return lambda d: float(rho_exc_from_chi(params, c1(d), c2(d)))
    raise ValueError("path must be 'exact', 'adiabatic' or 'rational'")


def _exc_exact(params, d, delta_common):
    m = solve_steady(params, DetuningSpec(d, delta_common)).matrix
    return float(m[2, 2].real + m[3, 3].real)


def rho_exc_extremum(params: ModelParams, path: str = "exact",
                     delta_common: float = 0.0) -> ExtremumReport:
    """Minimum of the excited population (fluorescence dip) near ``delta = 0``.

    Raises
    ------
    NoExtremum
        If the population has no interior minimum in the search window.
    """
    W = search_window(params)
    gd = gamma_d(params)
    f = _rho_exc_function(params, path, delta_common)
    x, cands = _local_min(f, W, 1e-7 * gd, "rho_exc")
    return ExtremumReport(x, 1, W, "golden-section", cands, {"path": path})


def contrast(params: ModelParams, path: str = "exact") -> float:
    """Depth of the fluorescence dip relative to the background at ``20 gamma_D``.

    Returns 0 when there is no dip to measure.
    """
    try:
        rep = rho_exc_extremum(params, path)
    except NoExtremum:
        return 0.0
    f = _rho_exc_function(params, path)
    bg = f(BACKGROUND_OFFSET * gamma_d(params))
    if bg <= 0:
        return 0.0
    return (bg - f(rep.delta0)) / bg


# ---------------------------------------------------------------------------
# intensity expansion

@dataclass(frozen=True)
class SeriesCoeffs:
    """Fit of ``delta_0(x) = alpha1 x + alpha2 x**2`` (rates in units of Gamma).

    ``method`` is ``"lstsq"`` for a direct fit. When the shift vanishes
    identically for the given shape, both coefficients are zero and the
    ratio is the limit along ``p_2 -> p_2 +- h`` (``method = "limit"``).
    ``ratio`` is ``inf`` when ``alpha1 = 0`` but ``alpha2 != 0``.
    """

    alpha1: float
    alpha2: float
    ratio: float
    residual: float
    x_grid: tuple
    delta0: tuple
    condition: float
    method: str = "lstsq"

    @property
    def ratio_is_infinite(self) -> bool:
        return math.isinf(self.ratio)


def _delta0_headline(params: ModelParams, path: str = "rational") -> float:
    return headline_shift(params, path).delta0


def _check_grid(x_grid: Sequence[float]) -> np.ndarray:
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or len(x) < 4:
        raise ValueError("x_grid needs at least 4 points")
    if np.any(x <= 0) or np.any(x > 0.1):
        raise ValueError("x_grid must lie in (0, 0.1]")
    return x


def _fit(x: np.ndarray, y: np.ndarray):
    X = np.column_stack([x, x ** 2])
    cond = float(np.linalg.cond(X / np.linalg.norm(X, axis=0)))
    if not np.isfinite(cond) or cond > 1e10:
        raise FitIllConditioned(f"series design matrix condition {cond:.3g}")
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    return coef, float(np.linalg.norm(X @ coef - y)), cond


def series_coefficients(shape: ModelParams, ratio: float,
                        x_grid: Sequence[float] = DEFAULT_X_GRID,
                        check_contrast: bool = True, limit_step: float = 1e-3,
                        path: str = "rational") -> SeriesCoeffs:
    """Least-squares intensity expansion of the absorption-minimum shift.

    ``shape`` supplies every parameter except the drive, which is set from
    ``x`` and ``ratio = rabi_1**2 / rabi_2**2``.

    Raises
    ------
    ResonanceAbsent
        If any grid point has dip contrast below 1e-3.
    FitIllConditioned
        If the design matrix is numerically rank deficient.
    """
    x = _check_grid(x_grid)
    pts = [shape.with_drive(float(xi), ratio) for xi in x]
    if check_contrast:
        for xi, p in zip(x, pts):
            c = contrast(p, path)
            if c < CONTRAST_THRESHOLD:
                raise ResonanceAbsent(f"contrast {c:.3g} below threshold at x = {xi:g}")
    y = np.array([_delta0_headline(p, path) for p in pts])
    (a1, a2), res, cond = _fit(x, y)
    method = "lstsq"
    if np.all(y == 0):
        # the shift vanishes identically here; report the limiting ratio
        a1 = a2 = 0.0
        ratios = []
        for h in (limit_step, -limit_step):
            side = series_coefficients(shape.replace(p_2=shape.p_2 + h), ratio, x,
                                       check_contrast=False, path=path)
            ratios.append(side.ratio)
        r = 0.5 * (ratios[0] + ratios[1])
        method = "limit"
    else:
        r = a2 / a1 if a1 != 0 else math.copysign(math.inf, a2)
    return SeriesCoeffs(float(a1), float(a2), float(r), res, tuple(x), tuple(y), cond, method)


@dataclass(frozen=True)
class IntensityCurve:
    """``S(x) = delta_0(x) / 2 pi`` with the interior extremum, if any."""

    x: tuple
    delta0: tuple
    S: tuple
    extremum_index: Optional[int]

    @property
    def extremum(self) -> Optional[tuple[float, float]]:
        i = self.extremum_index
        return None if i is None else (self.x[i], self.S[i])


def shift_vs_intensity(shape: ModelParams, ratio: float,
                       x_grid: Sequence[float] = DEFAULT_X_GRID,
                       path: str = "rational") -> IntensityCurve:
    """Shift of the absorption minimum along an intensity grid.

    The flagged extremum is the interior grid point where ``S`` changes
    direction with the largest ``|S|``.
    """
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or len(x) == 0:
        raise ValueError("x_grid must be a non-empty 1-D sequence")
    if np.any(x <= 0) or (len(x) > 1 and not np.all(np.diff(x) > 0)):
        raise ValueError("x_grid must be positive and increasing")
    d0 = np.array([_delta0_headline(shape.with_drive(float(xi), ratio), path) for xi in x])
    S = d0 / (2 * math.pi)
    ext = [i for i in range(1, len(S) - 1)
           if (S[i] - S[i - 1]) * (S[i + 1] - S[i]) < 0]
    idx = max(ext, key=lambda i: abs(S[i])) if ext else None
    return IntensityCurve(tuple(x), tuple(d0), tuple(S), idx)
