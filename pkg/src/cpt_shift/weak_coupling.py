"""
Analytic reduced solutions: the adiabatic 2x2 system for ``(rho_11, rho_12)``
and the first-order weak-coupling formulas for the CPT resonance shift.

The reduced system eliminates optical coherences and excited populations
under ``Omega << Gamma`` but keeps the full detuning and ``omega_34``
dependence, so it is valid in the strong-coupling regime as well. The
weak-coupling formulas additionally expand to first order in
``G = Gamma*omega_34 / (Gamma**2 + omega_34**2)`` with ``Delta_g << Gamma``.
"""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateReduction, NoZeroInWindow
from .model import DetuningSpec, ModelParams

# Flipped to -1 only by the validation suite's mutation test.
_DISTORTION_SIGN = 1.0


@contextlib.contextmanager
def mutated_distortion_sign():
    """Temporarily flip the sign of ``distortion_shift`` (sensitivity test hook)."""
    global _DISTORTION_SIGN
    old = _DISTORTION_SIGN
    _DISTORTION_SIGN = -old
    try:
        yield
    finally:
        _DISTORTION_SIGN = old


def g_factor(omega_34: float, gamma_opt: float = 1.0) -> float:
    """Dispersive weight ``Gamma*omega_34 / (Gamma**2 + omega_34**2)`` of the fourth level."""
    if not omega_34 > 0:
        raise ValueError("omega_34 must be > 0")
    if np.isinf(omega_34):
        return 0.0
    return gamma_opt * omega_34 / (gamma_opt ** 2 + omega_34 ** 2)


def gamma_d(params: ModelParams) -> float:
    """Power-broadened CPT half-width ``(rabi_1**2 + rabi_2**2)/Gamma + gamma_12``."""
    return params.rabi_sq_sum / params.gamma_opt + params.gamma_12


def stark_shift(params: ModelParams) -> float:
    """Differential dynamic Stark shift of the ground levels from level 4."""
    G = g_factor(params.omega_34, params.gamma_opt)
    p = params
    return G / p.gamma_opt * (p.p_1 ** 2 * p.rabi_1 ** 2 - p.p_2 ** 2 * p.rabi_2 ** 2)


def _kappa(params: ModelParams) -> float:
    # relative size of the dispersive admixture in rho_12
    p = params
    G = g_factor(p.omega_34, p.gamma_opt)
    return p.p_1 * p.p_2 * G * (p.rabi_2 ** 2 - p.rabi_1 ** 2) / p.rabi_sq_sum


def distortion_shift(params: ModelParams) -> float:
    """Extra shift from the line-shape distortion, ``kappa * gamma_D``."""
    return _DISTORTION_SIGN * _kappa(params) * gamma_d(params)


def weak_coupling_advisory(params: ModelParams) -> Optional[str]:
    if params.omega_34 >= 3 * params.gamma_opt or abs(params.p_1 * params.p_2) <= 0.1:
        return None
    return "weak-coupling formulas used outside omega_34 >= 3 Gamma or |p1 p2| <= 0.1"


def rho12_three_level(params: ModelParams, delta) -> np.ndarray:
    """Lorentzian ground coherence of the three-level Lambda, centred at ``delta_AC``."""
    p = params
    delta = np.asarray(delta, dtype=float)
    return -p.rabi_1 * p.rabi_2 / (
        p.gamma_opt * (gamma_d(p) + 1j * (delta - stark_shift(p))))


def rho12_weak(params: ModelParams, delta):
    """First-order ground coherence ``rho12_0 * (1 + i*kappa)``."""
    out = np.asarray(rho12_three_level(params, delta) * (1 + 1j * _DISTORTION_SIGN * _kappa(params)))
    return out if out.ndim else complex(out)


def populations_weak(params: ModelParams, delta):
    """First-order ground populations ``(rho_11, rho_22)``; they sum to 1 exactly."""
    p = params
    delta = np.asarray(delta, dtype=float)
    G = g_factor(p.omega_34, p.gamma_opt)
    s = p.rabi_sq_sum
    r0 = np.abs(rho12_three_level(p, delta)) ** 2
    corr = 2 * p.p_1 * p.p_2 * G * p.gamma_opt * (delta - stark_shift(p)) / s * r0
    rho11 = p.rabi_2 ** 2 / s + corr
    rho22 = 1.0 - rho11
    if rho11.ndim == 0:
        return float(rho11), float(rho22)
    return rho11, rho22


@dataclass(frozen=True)
class ReducedCoefficients:
    """Coefficients of ``a*rho11 + Re(b*rho12) = f``, ``c*rho11 + d*rho12 = h``."""

    a: float
    b: complex
    c: complex
    d: complex
    f: float
    h: complex
    delta_gamma_1: float
    delta_gamma_2: float


def _as_detuning(det) -> DetuningSpec:
    return det if isinstance(det, DetuningSpec) else DetuningSpec(float(det))


# The core below uses only scalar arithmetic, .conjugate() and .real/.imag, so
# it evaluates unchanged with builtin complex or with mpmath numbers.

def _denominators(params: ModelParams, D1, D2):
    G, w = params.gamma_opt, params.omega_34
    return (1j * D1 + G, 1j * (D1 - w) + G,
            1j * D2 + G, 1j * (D2 - w) + G,
            1j * (D1 - D2) + params.gamma_12)


def _coefficients(params: ModelParams, D1, D2):
    p = params
    br = p.branching
    dg1, dg2 = br.asymmetries()
    d13, d14, d23, d24, d12 = _denominators(p, D1, D2)
    o1, o2, p1, p2 = p.rabi_1, p.rabi_2, p.p_1, p.p_2
    d23c, d24c = d23.conjugate(), d24.conjugate()

    a = -(o1 ** 2 / (br.gamma_31 * d13) * (1 + p1 ** 2 * (1 - dg1) * d13 / d14)
          + o2 ** 2 / (br.gamma_32 * d23) * (1 + p2 ** 2 * (1 - dg2) * d23 / d24)).real
    b = (-o1 * o2 / (br.gamma_31 * d13) * (1 + p1 * p2 * (1 - dg1) * d13 / d14)
         + o1 * o2 / (br.gamma_32 * d23c) * (1 + p1 * p2 * (1 - dg2) * d23c / d24c))
    h = o1 * o2 / d23c * (1 + p1 * p2 * d23c / d24c)
    c = h - o1 * o2 / d13 * (1 + p1 * p2 * d13 / d14)
    d = (-o1 ** 2 / d23c * (1 + p1 ** 2 * d23c / d24c)
         - o2 ** 2 / d13 * (1 + p2 ** 2 * d13 / d14) - d12)
    f = -o2 ** 2 / br.gamma_32 * (1 / d23 * (1 + p2 ** 2 * (1 - dg2) * d23 / d24)).real
    return a, b, c, d, f, h


def _solve_2x2(a, b, c, d, f, h):
    # eliminate rho12 = (h - c*rho11)/d from the first equation
    dc = d.conjugate()
    dd = (d * dc).real
    den = (b * c * dc).real - a * dd
    scale = abs(a) * dd + abs(b * c * d)
    if d == 0 or abs(den) <= 1e-14 * scale:
        raise DegenerateReduction("reduced 2x2 system is singular")
    rho11 = ((b * h * dc).real - f * dd) / den
    return rho11, (h - c * rho11) / d


def _reduced_state(params: ModelParams, D1, D2):
    p = params
    rho11, rho12 = _solve_2x2(*_coefficients(p, D1, D2))
    rho22, rho21 = 1 - rho11, rho12.conjugate()
    d13, d14, d23, d24, _ = _denominators(p, D1, D2)
    o1, o2, p1, p2 = p.rabi_1, p.rabi_2, p.p_1, p.p_2
    r13 = -1j * (o1 * rho11 + o2 * rho12) / d13
    r14 = -1j * (p1 * o1 * rho11 + p2 * o2 * rho12) / d14
    r23 = -1j * (o1 * rho21 + o2 * rho22) / d23
    r24 = -1j * (p1 * o1 * rho21 + p2 * o2 * rho22) / d24
    return rho11, rho12, r13, r14, r23, r24


def reduced_coefficients(params: ModelParams, det: Union[DetuningSpec, float]) -> ReducedCoefficients:
    det = _as_detuning(det)
    a, b, c, d, f, h = _coefficients(params, det.delta_1, det.delta_2)
    dg1, dg2 = params.branching.asymmetries()
    return ReducedCoefficients(float(a), complex(b), complex(c), complex(d), float(f), complex(h),
                               dg1, dg2)


@dataclass(frozen=True)
class ReducedSolution:
    """Adiabatic steady state: ground block plus the slaved optical coherences."""

    rho11: float
    rho12: complex
    rho13: complex
    rho14: complex
    rho23: complex
    rho24: complex
    rho33: float
    rho44: float

    @property
    def rho22(self) -> float:
        return 1.0 - self.rho11

    @property
    def excited_population(self) -> float:
        return self.rho33 + self.rho44


def solve_reduced(coef: ReducedCoefficients) -> tuple[float, complex]:
    """Solve the mixed real/complex 2x2 system for ``(rho11, rho12)``.

    Eliminating ``rho12 = (h - c*rho11)/d`` from the first equation gives
    ``rho11 = (Re(b h d*) - f|d|**2) / (Re(b c d*) - a|d|**2)``.
    """
    rho11, rho12 = _solve_2x2(coef.a, coef.b, coef.c, coef.d, coef.f, coef.h)
    return float(rho11), complex(rho12)


def reduced_solution(params: ModelParams, det: Union[DetuningSpec, float]) -> ReducedSolution:
    """Adiabatic steady state at arbitrary ``omega_34`` and detuning."""
    det = _as_detuning(det)
    p = params
    rho11, rho12, r13, r14, r23, r24 = _reduced_state(p, det.delta_1, det.delta_2)
    o1, o2, p1, p2 = p.rabi_1, p.rabi_2, p.p_1, p.p_2
    br = p.branching
    r33 = -2.0 / br.gamma_3 * (o1 * r13 + o2 * r23).imag
    r44 = -2.0 / br.gamma_4 * (p1 * o1 * r14 + p2 * o2 * r24).imag
    return ReducedSolution(float(rho11), complex(rho12), complex(r13), complex(r14),
                           complex(r23), complex(r24), float(r33), float(r44))


@dataclass(frozen=True)
class ShiftResult:
    """Shift budget in units of ``gamma_opt``.

    ``delta0_numeric`` is the zero of ``Im rho12`` of the reduced adiabatic
    solution, located by bracketed root finding; ``residual`` is ``|Im rho12|``
    there and ``bracket`` the search window.
    """

    delta_ac: float
    delta_d: float
    gamma_d: float
    delta0_analytic: float
    delta0_numeric: Optional[float]
    method_analytic: str = "closed-form"
    method_numeric: Optional[str] = "reduced/brentq"
    residual: Optional[float] = None
    bracket: tuple[float, float] = field(default=(0.0, 0.0))


def _reduced_im_rho12(params: ModelParams, delta_common: float):
    return lambda x: reduced_solution(params, DetuningSpec(x, delta_common)).rho12.imag


def shift_weak(params: ModelParams, delta_common: float = 0.0) -> ShiftResult:
    dac, dd, gd = stark_shift(params), distortion_shift(params), gamma_d(params)
    lo, hi = dac - 10 * gd, dac + 10 * gd
    f = _reduced_im_rho12(params, delta_common)
    flo, fhi = f(lo), f(hi)
    root = residual = None
    method = "reduced/brentq"
    if flo == 0.0 or fhi == 0.0:
        root = lo if flo == 0.0 else hi
        residual = 0.0
    elif np.sign(flo) != np.sign(fhi):
        root = brentq(f, lo, hi, xtol=1e-6 * gd, rtol=4 * np.finfo(float).eps)
        residual = abs(f(root))
    elif params.rabi_1 * params.rabi_2 == 0:
        method = None  # no ground coherence at all
    else:
        raise NoZeroInWindow(f"Im rho12 has no sign change in [{lo:g}, {hi:g}]")
    return ShiftResult(dac, dd, gd, dac + dd, root, method_numeric=method,
                       residual=residual, bracket=(lo, hi))
