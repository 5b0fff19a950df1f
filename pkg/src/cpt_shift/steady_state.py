"""
Exact rotating-frame density-matrix dynamics of the double-Lambda atom.

The state is carried as a real 16-vector: the four populations followed by
the real and imaginary parts of the six coherences ``rho_12, rho_13, rho_14,
rho_23, rho_24, rho_34`` (optical and ground coherences in the rotating
frame). No adiabatic elimination is made here; this module is the reference
against which the analytic reductions are checked.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np
from scipy import linalg

from .errors import IllConditioned, SingularSystem, StepTooLarge
from .model import DetuningSpec, ModelParams

N_LEVELS = 4
DIM = N_LEVELS * N_LEVELS
COHERENCES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

STATE_LABELS = ("rho11", "rho22", "rho33", "rho44") + tuple(
    f"{part}rho{n + 1}{m + 1}" for n, m in COHERENCES for part in ("Re ", "Im "))

RESIDUAL_TOL = 1e-10
COND_LIMIT = 1e12
TRACE_ROW = 0  # the rho11 equation is replaced by sum(rho_nn) = 1


class IllConditionedWarning(RuntimeWarning):
    pass


def _real_basis() -> tuple[np.ndarray, np.ndarray]:
    """``T`` maps the real 16-vector to row-major vec(rho); ``S`` is its inverse."""
    T = np.zeros((DIM, DIM), dtype=complex)
    S = np.zeros((DIM, DIM), dtype=complex)
    for n in range(N_LEVELS):
        T[5 * n, n] = 1.0
        S[n, 5 * n] = 1.0
    for k, (n, m) in enumerate(COHERENCES):
        re, im = 4 + 2 * k, 5 + 2 * k
        nm, mn = N_LEVELS * n + m, N_LEVELS * m + n
        T[nm, re], T[nm, im] = 1.0, 1j
        T[mn, re], T[mn, im] = 1.0, -1j
        S[re, nm], S[re, mn] = 0.5, 0.5
        S[im, nm], S[im, mn] = -0.5j, 0.5j
    return T, S


_T, _S = _real_basis()


def _as_detuning(det: Union[DetuningSpec, float]) -> DetuningSpec:
    return det if isinstance(det, DetuningSpec) else DetuningSpec(float(det))


def hamiltonian(params: ModelParams, det: DetuningSpec) -> np.ndarray:
    """Rotating-frame Hamiltonian in units of hbar."""
    H = np.diag([det.delta_1, det.delta_2, 0.0, params.omega_34]).astype(complex)
    o1, o2 = params.rabi_1, params.rabi_2
    H[2, 0], H[3, 0] = -o1, -params.p_1 * o1
    H[2, 1], H[3, 1] = -o2, -params.p_2 * o2
    return np.triu(H.conj().T, 1) + np.tril(H)


def liouvillian(params: ModelParams, det: DetuningSpec) -> np.ndarray:
    """Complex superoperator acting on row-major vec(rho)."""
    H = hamiltonian(params, det)
    eye = np.eye(N_LEVELS)
    L = -1j * (np.kron(H, eye) - np.kron(eye, H.T))

    b = params.branching
    g_opt = params.gamma_opt
    dephasing = np.zeros((N_LEVELS, N_LEVELS))
    dephasing[0, 1] = params.gamma_12
    dephasing[0, 2] = dephasing[0, 3] = dephasing[1, 2] = dephasing[1, 3] = g_opt
    dephasing[2, 3] = params.excited_coherence_decay
    dephasing = dephasing + dephasing.T
    for n in range(N_LEVELS):
        for m in range(N_LEVELS):
            if n != m:
                L[4 * n + m, 4 * n + m] -= dephasing[n, m]
    p11, p22, p33, p44 = 0, 5, 10, 15
    L[p33, p33] -= b.gamma_3
    L[p44, p44] -= b.gamma_4
    L[p11, p33] += b.gamma_31
    L[p11, p44] += b.gamma_41
    L[p22, p33] += b.gamma_32
    L[p22, p44] += b.gamma_42
    return L


def generator(params: ModelParams, det: Union[DetuningSpec, float]) -> np.ndarray:
    """Real 16x16 matrix ``M`` with ``dx/dt = M x`` in the real representation."""
    Mc = _S @ liouvillian(params, _as_detuning(det)) @ _T
    return np.ascontiguousarray(Mc.real)


@dataclass(frozen=True)
class DensityMatrix:
    """4x4 rotating-frame density matrix (levels indexed from 1 in accessors)."""

    matrix: np.ndarray

    @classmethod
    def from_vector(cls, x) -> "DensityMatrix":
        vec = _T @ np.asarray(x, dtype=float)
        return cls(vec.reshape(N_LEVELS, N_LEVELS))

    @classmethod
    def pure(cls, level: int) -> "DensityMatrix":
        m = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
        m[level - 1, level - 1] = 1.0
        return cls(m)

    def to_vector(self) -> np.ndarray:
        return (_S @ self.matrix.reshape(-1)).real

    def element(self, n: int, m: int) -> complex:
        return complex(self.matrix[n - 1, m - 1])

    @property
    def populations(self) -> np.ndarray:
        return np.diag(self.matrix).real.copy()

    @property
    def rho11(self) -> float:
        return float(self.matrix[0, 0].real)

    @property
    def rho22(self) -> float:
        return float(self.matrix[1, 1].real)

    @property
    def rho12(self) -> complex:
        return complex(self.matrix[0, 1])

    @property
    def excited_population(self) -> float:
        return float(self.matrix[2, 2].real + self.matrix[3, 3].real)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def trace_error(self) -> float:
        return float(abs(np.trace(self.matrix) - 1.0))

    def min_eigenvalue(self) -> float:
        herm = 0.5 * (self.matrix + self.matrix.conj().T)
        return float(np.linalg.eigvalsh(herm)[0])

    def violations(self, herm_tol=1e-12, trace_tol=1e-12, psd_tol=1e-10) -> list[str]:
        out = []
        if self.hermiticity_error() > herm_tol:
            out.append(f"not Hermitian ({self.hermiticity_error():.3g})")
        if self.trace_error() > trace_tol:
            out.append(f"trace deviates from 1 ({self.trace_error():.3g})")
        if self.min_eigenvalue() < -psd_tol:
            out.append(f"negative eigenvalue ({self.min_eigenvalue():.3g})")
        return out


@dataclass(frozen=True)
class LinearSystem:
    """Steady-state equations with the trace constraint substituted in."""

    matrix: np.ndarray
    rhs: np.ndarray
    labels: tuple[str, ...]
    generator: np.ndarray


def build_system(params: ModelParams, det: Union[DetuningSpec, float]) -> LinearSystem:
    M = generator(params, det)
    A = M.copy()
    A[TRACE_ROW] = 0.0
    A[TRACE_ROW, :N_LEVELS] = 1.0
    rhs = np.zeros(DIM)
    rhs[TRACE_ROW] = 1.0
    labels = ["trace"] + [f"d({lab})/dt" for lab in STATE_LABELS[1:]]
    return LinearSystem(A, rhs, tuple(labels), M)


def solve_steady(params: ModelParams, det: Union[DetuningSpec, float], *,
                 strict: bool = False) -> DensityMatrix:
    """Exact steady state of the full four-level equations.

    One step of iterative refinement is applied. With ``strict=True`` an
    ill-conditioned system (condition number above 1e12 or residual above
    1e-10) raises :class:`IllConditioned`; otherwise a warning is issued and
    the solution returned.
    """
    system = build_system(params, det)
    A = system.matrix
    if not np.all(np.isfinite(A)):
        raise SingularSystem("non-finite entries in the steady-state system")
    with warnings.catch_warnings():
        warnings.simplefilter("error", linalg.LinAlgWarning)
        try:
            lu = linalg.lu_factor(A, check_finite=False)
        except (linalg.LinAlgError, linalg.LinAlgWarning) as exc:
            raise SingularSystem(f"steady-state system is singular: {exc}") from None
    if np.any(np.diag(lu[0]) == 0):
        raise SingularSystem("steady-state system is singular (degenerate drive?)")
    x = linalg.lu_solve(lu, system.rhs, check_finite=False)
    x += linalg.lu_solve(lu, system.rhs - A @ x, check_finite=False)

    residual = float(np.max(np.abs(system.generator @ x)))
    rho = DensityMatrix.from_vector(x)
    if residual > RESIDUAL_TOL:
        cond = float(np.linalg.cond(A))
        msg = f"steady-state residual {residual:.3g} (condition number {cond:.3g})"
        if strict:
            raise IllConditioned(msg, cond, rho)
        warnings.warn(msg, IllConditionedWarning, stacklevel=2)
    elif strict:
        cond = float(np.linalg.cond(A))
        if cond > COND_LIMIT:
            raise IllConditioned(f"condition number {cond:.3g}", cond, rho)
    return rho


def steady_residual(params: ModelParams, det: Union[DetuningSpec, float], rho: DensityMatrix) -> float:
    """Max-norm of the time derivative at ``rho``."""
    return float(np.max(np.abs(generator(params, det) @ rho.to_vector())))


def max_step(params: ModelParams, det: DetuningSpec) -> float:
    return 0.1 / max(params.gamma_opt, params.omega_34, abs(det.delta_1), abs(det.delta_2))


def _rk4_propagator(M: np.ndarray, h: float) -> np.ndarray:
    # one classical RK4 step of a linear autonomous system, as a matrix
    hM = h * M
    eye = np.eye(M.shape[0])
    return eye + hM @ (eye + hM @ (eye + hM @ (eye + hM / 4.0) / 3.0) / 2.0)


def _plan_steps(params, det, t_final, dt):
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    if not dt > 0:
        raise StepTooLarge("dt must be positive")
    limit = max_step(params, det)
    if dt > limit * (1 + 1e-12):
        raise StepTooLarge(f"dt={dt:g} exceeds the stability bound {limit:g}")
    n = max(int(math.ceil(t_final / dt - 1e-9)), 0)
    return n, (t_final / n if n else 0.0)


def evolve(params: ModelParams, det: Union[DetuningSpec, float], rho0: DensityMatrix,
           t_final: float, dt: float) -> DensityMatrix:
    """Fixed-step classical RK4 integration from ``rho0`` up to ``t_final``.

    The step is shortened so that an integer number of steps lands exactly on
    ``t_final``. Because the equations are linear and time independent, one
    RK4 step is a fixed matrix ``P``; ``n`` steps are applied as ``P**n`` by
    repeated squaring, which is the same recurrence evaluated in
    ``O(log n)`` matrix products.
    """
    det = _as_detuning(det)
    n, h = _plan_steps(params, det, t_final, dt)
    x = rho0.to_vector()
    if n == 0:
        return DensityMatrix.from_vector(x)
    P = _rk4_propagator(generator(params, det), h)
    while n:
        if n & 1:
            x = P @ x
        n >>= 1
        if n:
            P = P @ P
    return DensityMatrix.from_vector(x)


def iter_evolve(params: ModelParams, det: Union[DetuningSpec, float], rho0: DensityMatrix,
                dt: float, n_steps: int) -> Iterator[DensityMatrix]:
    """Yield the state after each of ``n_steps`` RK4 steps of size ``dt``."""
    det = _as_detuning(det)
    _plan_steps(params, det, dt * n_steps, dt)
    P = _rk4_propagator(generator(params, det), dt)
    x = rho0.to_vector()
    for _ in range(n_steps):
        x = P @ x
        yield DensityMatrix.from_vector(x)


def relaxation_rates(params: ModelParams, det: Union[DetuningSpec, float]) -> np.ndarray:
    """Decay rates ``-Re(lambda)`` of the generator, ascending (first is ~0)."""
    lam = np.linalg.eigvals(generator(params, det))
    return np.sort(-lam.real)
