"""
Measurable spectra: susceptibilities, excited-state population and the
rational strong-coupling form of the absorption profile.

Sign convention: ``chi_g = (rho_3g + p_g rho_4g) / rabi_g`` with
``rho_3g = conj(rho_g3)``. With this definition ``Im chi_g > 0`` is
absorption, the CPT resonance is a *minimum* of ``Im chi_g``, and the
excited population obeys ``rho_exc = +(2/gamma) * sum_g rabi_g**2 Im chi_g``
for uniform decay.
"""
from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath
import numpy as np

from . import _tables
from .errors import FitDegenerate, NumericalError, Unsupported, ZeroDrive
from .model import DetuningSpec, ModelParams
from .steady_state import DensityMatrix, solve_steady
from .weak_coupling import (_reduced_state, distortion_shift, gamma_d, reduced_solution,
                            stark_shift)

IDENTITY_TOL = 1e-10


def _check_drive(params: ModelParams, component: int) -> None:
    if component not in (1, 2):
        raise ValueError("component must be 1 or 2")
    if (params.rabi_1 if component == 1 else params.rabi_2) == 0:
        raise ZeroDrive(f"rabi_{component} = 0: chi_{component} is undefined")


def _chi_from_coherences(params: ModelParams, r13, r14, r23, r24, component: int):
    if component == 1:
        return (r13.conjugate() + params.p_1 * r14.conjugate()) / params.rabi_1
    return (r23.conjugate() + params.p_2 * r24.conjugate()) / params.rabi_2


def susceptibility(params: ModelParams, det, rho: DensityMatrix) -> tuple[complex, complex]:
    """Complex susceptibilities ``(chi_1, chi_2)`` of a solved state.

    Raises
    ------
    ZeroDrive
        If either component has zero Rabi frequency.
    """
    _check_drive(params, 1)
    _check_drive(params, 2)
    m = rho.matrix
    return tuple(complex(_chi_from_coherences(params, m[0, 2], m[0, 3], m[1, 2], m[1, 3], g))
                 for g in (1, 2))


def _coherence_drive_sum(params: ModelParams, m: np.ndarray) -> tuple[float, float]:
    p = params
    s3 = (p.rabi_1 * m[0, 2] + p.rabi_2 * m[1, 2]).imag
    s4 = (p.p_1 * p.rabi_1 * m[0, 3] + p.p_2 * p.rabi_2 * m[1, 3]).imag
    return s3, s4


def excited_population(params: ModelParams, rho: DensityMatrix, check: bool = True) -> float:
    """``rho_33 + rho_44`` of a steady state.

    With ``check=True`` it is compared with the expression through the
    optical coherences, ``-(2/gamma_e) Im(...)`` per excited level, which
    holds in any steady state. A mismatch above 1e-10 raises
    :class:`NumericalError`.
    """
    m = rho.matrix
    direct = float(m[2, 2].real + m[3, 3].real)
    if check:
        br = params.branching
        s3, s4 = _coherence_drive_sum(params, m)
        via = -2.0 / br.gamma_3 * s3 - 2.0 / br.gamma_4 * s4
        if abs(via - direct) > IDENTITY_TOL:
            raise NumericalError(f"excited-population identity violated by {abs(via - direct):.3g}")
    return direct


def rho_exc_from_chi(params: ModelParams, chi1_im, chi2_im):
    """``(2/gamma) (rabi_1**2 chi''_1 + rabi_2**2 chi''_2)`` (uniform decay)."""
    return 2.0 / params.gamma_exc * (params.rabi_1 ** 2 * chi1_im + params.rabi_2 ** 2 * chi2_im)


def chi_weak(params: ModelParams, delta, component: int = 1):
    """First-order absorption profile: a background minus a distorted Lorentzian dip."""
    _check_drive(params, component)
    p = params
    other = p.rabi_2 ** 2 if component == 1 else p.rabi_1 ** 2
    gd, dd = gamma_d(p), distortion_shift(p)
    eps = np.asarray(delta, dtype=float) - stark_shift(p)
    dip = other / (p.gamma_opt * gd) * (gd ** 2 + 2 * dd * eps) / (gd ** 2 + eps ** 2)
    out = other / (p.gamma_opt * p.rabi_sq_sum) - dip
    return out if out.ndim else float(out)


def chi_adiabatic(params: ModelParams, delta: float, component: int = 1,
                  delta_common: float = 0.0) -> float:
    """``Im chi_g`` from the adiabatic reduced solution."""
    _check_drive(params, component)
    r = reduced_solution(params, DetuningSpec(delta, delta_common))
    return float(_chi_from_coherences(params, r.rho13, r.rho14, r.rho23, r.rho24, component).imag)


# ---------------------------------------------------------------------------
# rational form

@dataclass(frozen=True)
class RationalChi:
    """``chi''_g = prefactor * sum A_n delta**n / sum B_n delta**n``.

    Coefficients are stored in ascending order. ``provenance`` maps each
    coefficient name (``"A0"`` ... ``"B9"``) to where it came from.
    """

    numerator: np.ndarray
    denominator: np.ndarray
    prefactor: float
    component: int = 1
    provenance: dict = field(default_factory=dict)

    def reduced(self) -> tuple[np.ndarray, np.ndarray]:
        """Numerator and denominator with the common power of ``delta`` removed."""
        n, m = np.asarray(self.numerator, float), np.asarray(self.denominator, float)
        k = 0
        while k < len(n) - 1 and n[k] == 0 and m[k] == 0:
            k += 1
        return n[k:], m[k:]

    def __call__(self, delta):
        n, m = self.reduced()
        x = np.asarray(delta, dtype=float)
        out = self.prefactor * np.polynomial.polynomial.polyval(x, n) \
            / np.polynomial.polynomial.polyval(x, m)
        return out if out.ndim else float(out)

    def extremum_polynomial(self) -> np.ndarray:
        """Ascending coefficients of ``N' D - N D'`` (degree 15 for a 7/9 form)."""
        P = np.polynomial.polynomial
        n, m = np.asarray(self.numerator, float), np.asarray(self.denominator, float)
        return P.polysub(P.polymul(P.polyder(n), m), P.polymul(n, P.polyder(m)))

    def swapped_sign(self) -> "RationalChi":
        """The same profile expressed in ``-delta`` with ``B_9`` kept fixed."""
        sgn_n = (-1.0) ** (np.arange(len(self.numerator)) + 1)
        sgn_d = (-1.0) ** (np.arange(len(self.denominator)) + 1)
        return RationalChi(self.numerator * sgn_n, self.denominator * sgn_d, self.prefactor,
                           self.component, dict(self.provenance))


def _require_rational_domain(params: ModelParams, component: int, uniform: bool) -> None:
    if params.gamma_12 != 0:
        raise Unsupported("the rational form is only available for gamma_12 = 0")
    if uniform and not params.is_uniform:
        raise Unsupported("the tabulated coefficients assume uniform decay")
    _check_drive(params, component)
    if (params.rabi_2 if component == 1 else params.rabi_1) == 0:
        raise ZeroDrive("the rational form needs both drive components")


def _table_rational(params: ModelParams, table: str, component: int) -> tuple[np.ndarray, np.ndarray]:
    fn = {"printed": _tables.printed_table, "corrected": _tables.corrected_table}.get(table)
    if fn is None:
        raise ValueError("table must be 'printed' or 'corrected'")
    p = params if component == 1 else params.swapped()
    A, B = fn(p.gamma_opt, p.omega_34, p.rabi_1, p.rabi_2, p.p_1, p.p_2)
    A, B = np.array(A, dtype=float), np.array(B, dtype=float)
    if component == 2:
        # chi''_2(delta) = chi''_1(-delta) of the swapped system
        A *= (-1.0) ** (np.arange(8) + 1)
        B *= (-1.0) ** (np.arange(10) + 1)
    return A, B


def _prefactor(params: ModelParams, component: int) -> float:
    other = params.rabi_2 if component == 1 else params.rabi_1
    return params.gamma_opt * other ** 2


def appendix_b_coefficients(params: ModelParams, table: str = "printed",
                            component: int = 1) -> RationalChi:
    """Evaluate the closed-form coefficient table.

    ``table="printed"`` evaluates the tabulated listing verbatim (the
    misprinted entries included), ``table="corrected"`` the identically
    correct forms. ``A_0`` and ``B_0`` are not tabulated; they are taken
    from :func:`reconstruct_rational`.

    Raises
    ------
    Unsupported
        For ``gamma_12 != 0`` or non-uniform decay.
    """
    _require_rational_domain(params, component, uniform=True)
    A, B = _table_rational(params, table, component)
    rec = reconstruct_rational(params, component)
    A[0], B[0] = rec.numerator[0], rec.denominator[0]
    prov = {f"A{n}": f"table:{table}" for n in range(1, 8)}
    prov.update({f"B{n}": f"table:{table}" for n in range(1, 10)})
    prov["A0"] = prov["B0"] = "reconstructed"
    return RationalChi(A, B, _prefactor(params, component), component, prov)


def corrected_rational(params: ModelParams, component: int = 1) -> RationalChi:
    """Fast exact rational form from the corrected table, with ``A_0 = B_0 = 0``.

    The vanishing of ``A_0`` and ``B_0`` is an identity of this
    normalization (it is what :func:`reconstruct_rational` returns).
    """
    _require_rational_domain(params, component, uniform=True)
    A, B = _table_rational(params, "corrected", component)
    prov = {f"A{n}": "table:corrected" for n in range(8)}
    prov.update({f"B{n}": "table:corrected" for n in range(10)})
    return RationalChi(A, B, _prefactor(params, component), component, prov)


_RECON_DPS = 50
_RANK_TOL = mpmath.mpf(10) ** -30
_FIT_TOL = 1e-20
_ZERO_TOL = mpmath.mpf(10) ** -35


def _as_mp(params: ModelParams) -> ModelParams:
    # every field must be an mpf: float*float products would round in double
    mp = mpmath.mpf
    b = params.branching
    br = type(b)(*(mp(float(v)) for v in (b.gamma_31, b.gamma_32, b.gamma_41, b.gamma_42)))
    fields = ("omega_34", "rabi_1", "rabi_2", "p_1", "p_2", "gamma_opt", "gamma_exc", "gamma_12")
    return dataclasses.replace(params, branching=br,
                               **{k: mp(float(getattr(params, k))) for k in fields})


def _chi_mp(params: ModelParams, delta, component: int):
    half = delta / 2
    _, _, r13, r14, r23, r24 = _reduced_state(params, half, -half)
    return _chi_from_coherences(params, r13, r14, r23, r24, component).imag


def _fit_rational(u, y, nn: int, nd: int):
    """Least-squares fit ``N(u)/D(u)`` with monic ``D``; returns ``(N, D, rank_ok)``."""
    rows = []
    for uk, yk in zip(u, y):
        rows.append([uk ** k for k in range(nn + 1)] + [-yk * uk ** k for k in range(nd)])
    V = mpmath.matrix(rows)
    rhs = mpmath.matrix([yk * uk ** nd for uk, yk in zip(u, y)])
    # column equilibration before judging rank
    cols = [mpmath.sqrt(sum(V[i, j] ** 2 for i in range(V.rows))) for j in range(V.cols)]
    for j in range(V.cols):
        for i in range(V.rows):
            V[i, j] /= cols[j]
    sv = mpmath.svd_r(V, compute_uv=False)
    if min(sv) <= _RANK_TOL * max(sv):
        return None
    sol, _ = mpmath.qr_solve(V, rhs)
    sol = [sol[j] / cols[j] for j in range(V.cols)]
    return sol[:nn + 1], sol[nn + 1:] + [mpmath.mpf(1)]


def _sample_points(params: ModelParams, n_samples: int) -> list:
    s = max(params.gamma_opt, params.omega_34)
    lo = max(gamma_d(params), 1e-6 * s) / 3
    mags = np.geomspace(lo, 30 * s, n_samples // 2)
    pts = np.concatenate([-mags[::-1], mags * math.sqrt(2)])  # asymmetric: no +-pairs
    return [mpmath.mpf(float(x)) for x in pts], s


def reconstruct_rational(params: ModelParams, component: int = 1, n_samples: int = 24) -> RationalChi:
    """Recover the rational profile by sampling the adiabatic solution.

    The profile is sampled at ``n_samples`` detunings (default 24) spanning
    ``gamma_D/3`` to ``30 max(Gamma, omega_34)`` on both sides, evaluated in
    50-digit arithmetic, and fitted with a degree 6/8 ratio whose leading
    denominator coefficient is 1. The fit is then written in the 7/9
    normalization ``B_9 = -(p~_1^2 rabi_1^2 + p~_2^2 rabi_2^2)`` by the common
    factor ``-delta``, which makes ``A_0 = B_0 = 0``.

    When the 6/8 fit is rank deficient (numerator and denominator share a
    factor, e.g. ``p_1 = p_2 = 0``) the lowest degree pair ``k/(k+2)`` that
    reproduces the samples is returned instead, flagged in ``provenance``.

    Raises
    ------
    FitDegenerate
        If no degree pair reproduces the samples.
    """
    _require_rational_domain(params, component, uniform=False)
    if n_samples < 20:
        raise ValueError("n_samples must be >= 20")
    pref = _prefactor(params, component)
    with mpmath.workdps(_RECON_DPS):
        p = _as_mp(params)
        a1, a2 = p.rabi_1 ** 2, p.rabi_2 ** 2
        T = (1 + p.p_1 ** 2) * a1 + (1 + p.p_2 ** 2) * a2
        mpref = _prefactor(p, component)
        pts, s = _sample_points(params, n_samples)
        s = mpmath.mpf(s)
        ys = [_chi_mp(p, x, component) / mpref for x in pts]
        check_pts = [mpmath.mpf(float(x)) * mpmath.mpf("0.731") for x in pts[::3]]
        check_ys = [_chi_mp(p, x, component) / mpref for x in check_pts]
        ymax = max(abs(y) for y in ys + check_ys)
        us = [x / s for x in pts]
        for k in range(6, -1, -1):
            fit = _fit_rational(us, ys, k, k + 2)
            if fit is None:
                continue
            Nu, Du = fit
            N = [Nu[j] * s ** (k + 2 - j) for j in range(k + 1)]
            D = [Du[j] * s ** (k + 2 - j) for j in range(k + 3)]
            err = max(abs(mpmath.polyval(N[::-1], x) / mpmath.polyval(D[::-1], x) - y)
                      for x, y in zip(check_pts, check_ys)) / ymax
            if err < _FIT_TOL:
                break
        else:
            raise FitDegenerate("no rational form of degree <= 6/8 reproduces the samples")
        # coefficients that vanish identically come out at the ~1e-50 level
        big = max(abs(c) for c in N + D)
        clean = [c if abs(c) > _ZERO_TOL * big else mpmath.mpf(0) for c in N + D]
        N, D = clean[:k + 1], clean[k + 1:]
        A = np.zeros(8)
        B = np.zeros(10)
        A[1:k + 2] = [float(-T * c) for c in N]
        B[1:k + 4] = [float(-T * c) for c in D]
    prov = {f"A{n}": "reconstructed" for n in range(8)}
    prov.update({f"B{n}": "reconstructed" for n in range(10)})
    if k < 6:
        prov["degree"] = f"reduced {k + 1}/{k + 3}"
    return RationalChi(A, B, pref, component, prov)


# ---------------------------------------------------------------------------
# spectra

@dataclass(frozen=True)
class SpectrumPoint:
    """Observables at one two-photon detuning (rates in units of ``gamma_opt``)."""

    delta: float
    chi1_im: float
    chi2_im: float
    rho_exc: float
    rho12_re: float
    rho12_im: float
    rho11: float
    rho22: float


@dataclass(frozen=True)
class Spectrum:
    """Grid of :class:`SpectrumPoint` with the solver path behind each column."""

    points: tuple[SpectrumPoint, ...]
    sources: dict

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(pt, name) for pt in self.points])

    @property
    def delta(self) -> np.ndarray:
        return self.column("delta")

    def __len__(self) -> int:
        return len(self.points)


PATHS = ("exact", "adiabatic", "rational")


def _point_exact(params: ModelParams, delta: float, delta_common: float) -> SpectrumPoint:
    rho = solve_steady(params, DetuningSpec(delta, delta_common))
    m = rho.matrix
    chi1 = _chi_from_coherences(params, m[0, 2], m[0, 3], m[1, 2], m[1, 3], 1) if params.rabi_1 else np.nan
    chi2 = _chi_from_coherences(params, m[0, 2], m[0, 3], m[1, 2], m[1, 3], 2) if params.rabi_2 else np.nan
    return SpectrumPoint(delta, float(np.imag(chi1)), float(np.imag(chi2)),
                         excited_population(params, rho), rho.rho12.real, rho.rho12.imag,
                         rho.rho11, rho.rho22)


def _point_adiabatic(params: ModelParams, delta: float, delta_common: float) -> SpectrumPoint:
    r = reduced_solution(params, DetuningSpec(delta, delta_common))
    chi = [_chi_from_coherences(params, r.rho13, r.rho14, r.rho23, r.rho24, g).imag
           if (params.rabi_1, params.rabi_2)[g - 1] else np.nan for g in (1, 2)]
    return SpectrumPoint(delta, float(chi[0]), float(chi[1]), r.excited_population,
                         r.rho12.real, r.rho12.imag, r.rho11, r.rho22)


def spectrum(params: ModelParams, det_grid: Sequence[float], path: str = "exact",
             delta_common: float = 0.0, workers: Optional[int] = None) -> Spectrum:
    """Evaluate observables on a monotone grid of two-photon detunings.

    ``path="rational"`` takes ``chi''_g`` from the exact rational form and
    ``rho_exc`` from them; the ground-state columns then come from the
    adiabatic solution. It requires ``gamma_12 = 0``, uniform decay and
    ``delta_common = 0``.
    """
    grid = np.asarray(det_grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("empty detuning grid")
    if grid.size > 1 and not (np.all(np.diff(grid) > 0) or np.all(np.diff(grid) < 0)):
        raise ValueError("detuning grid must be strictly monotone")
    if path not in PATHS:
        raise ValueError(f"path must be one of {PATHS}")
    if path == "rational" and delta_common != 0:
        raise Unsupported("the rational path needs delta_common = 0")

    point = _point_exact if path == "exact" else _point_adiabatic
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            pts = list(pool.map(lambda d: point(params, float(d), delta_common), grid))
    else:
        pts = [point(params, float(d), delta_common) for d in grid]

    cols = ("chi1_im", "chi2_im", "rho_exc", "rho12_re", "rho12_im", "rho11", "rho22")
    sources = {c: path for c in cols}
    if path == "rational":
        c1, c2 = corrected_rational(params, 1), corrected_rational(params, 2)
        y1, y2 = np.atleast_1d(c1(grid)), np.atleast_1d(c2(grid))
        pts = [SpectrumPoint(pt.delta, float(a), float(b), float(rho_exc_from_chi(params, a, b)),
                             pt.rho12_re, pt.rho12_im, pt.rho11, pt.rho22)
               for pt, a, b in zip(pts, y1, y2)]
        sources.update({c: "adiabatic" for c in ("rho12_re", "rho12_im", "rho11", "rho22")})
    return Spectrum(tuple(pts), sources)
