"""
Self-check suite run by ``cpt-shift validate``.

Each check returns a :class:`CheckResult` with status ``pass``, ``fail`` or
``known-discrepancy``. The last marks a reference expectation that the model
contradicts; it is reported with the numbers behind it but does not make the
suite fail. Only ``fail`` does.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .model import DetuningSpec, ModelParams
from .observables import (appendix_b_coefficients, excited_population,
                          reconstruct_rational, rho_exc_from_chi, susceptibility)
from .shift import (DEFAULT_X_GRID, chi_extremum_polynomial, contrast, rho_exc_extremum,
                    series_coefficients, shift_from_rho12, shift_vs_intensity)
from .steady_state import DensityMatrix, evolve, max_step, relaxation_rates, solve_steady
from .weak_coupling import distortion_shift, gamma_d, mutated_distortion_sign, stark_shift

PASS, FAIL, KNOWN = "pass", "fail", "known-discrepancy"
SEED = 20240611

# drive shape of the weak-coupling line-shape example
FIG2_SHAPE = ModelParams(omega_34=10.0, rabi_1=3.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
FIG2_X, FIG2_RATIO = 1e-4, 9.0
FIG2_DELTA0 = 1.584e-5


@dataclass(frozen=True)
class CheckResult:
    key: str
    title: str
    status: str
    value: float
    limit: float
    detail: str
    seconds: float = 0.0


@dataclass(frozen=True)
class Check:
    key: str
    title: str
    run: Callable[[], tuple[str, float, float, str]]


def _fig2(omega_34: float = 10.0) -> ModelParams:
    return FIG2_SHAPE.replace(omega_34=omega_34).with_drive(FIG2_X, FIG2_RATIO)


# ---------------------------------------------------------------------------

def random_params(rng: np.random.Generator) -> tuple[ModelParams, DetuningSpec]:
    p = ModelParams(omega_34=float(rng.uniform(0.2, 20.0)),
                    rabi_1=float(rng.uniform(0.02, 0.3)), rabi_2=float(rng.uniform(0.02, 0.3)),
                    p_1=float(rng.uniform(-1.5, 1.5)), p_2=float(rng.uniform(-1.5, 1.5)),
                    gamma_12=float(rng.choice([0.0, rng.uniform(0.0, 0.01)])))
    gd = gamma_d(p)
    det = DetuningSpec(float(rng.uniform(-3, 3) * gd), float(rng.uniform(-0.3, 0.3)))
    return p, det


def oracle_gap(params: ModelParams, det: DetuningSpec) -> float:
    """Max-norm gap between the linear solve and RK4 evolution run to equilibrium."""
    rates = relaxation_rates(params, det)
    slowest = rates[rates > 1e-12 * rates[-1]][0]
    t_final = 40.0 / slowest
    rho_t = evolve(params, det, DensityMatrix.pure(1), t_final, max_step(params, det))
    rho_s = solve_steady(params, det)
    return float(np.max(np.abs(rho_t.matrix - rho_s.matrix)))


def check_oracle():
    rng = np.random.default_rng(SEED)
    gaps = [oracle_gap(*random_params(rng)) for _ in range(10)]
    worst = max(gaps)
    return (PASS if worst <= 1e-8 else FAIL), worst, 1e-8, "10 random draws, steady solve vs long RK4"


# ---------------------------------------------------------------------------

COEFF_NAMES = [f"A{n}" for n in range(1, 8)] + [f"B{n}" for n in range(1, 10)]


def random_rational_params(rng: np.random.Generator) -> ModelParams:
    return ModelParams(omega_34=float(rng.uniform(0.3, 5.0)),
                       rabi_1=float(rng.uniform(0.05, 0.3)), rabi_2=float(rng.uniform(0.05, 0.3)),
                       p_1=float(rng.uniform(-1.5, 1.5)), p_2=float(rng.uniform(-1.5, 1.5)))


def table_mismatches(params: ModelParams, table: str, rtol: float = 1e-8):
    """Coefficients of a tabulated listing that disagree with the reconstruction.

    Both sides are normalized by ``B9``. Returns ``(names, worst_relative_error)``.
    """
    rec = reconstruct_rational(params)
    ref = appendix_b_coefficients(params, table)
    num_r, den_r = rec.numerator / rec.denominator[9], rec.denominator / rec.denominator[9]
    num_t, den_t = ref.numerator / ref.denominator[9], ref.denominator / ref.denominator[9]
    got = np.concatenate([num_r[1:8], den_r[1:10]])
    want = np.concatenate([num_t[1:8], den_t[1:10]])
    err = np.abs(got - want) / np.maximum(np.maximum(np.abs(want), np.abs(got)), 1e-300)
    bad = [name for name, e in zip(COEFF_NAMES, err) if e > rtol]
    return bad, float(np.max(err))


def check_appendix():
    rng = np.random.default_rng(SEED + 1)
    draws = [random_rational_params(rng) for _ in range(5)]
    printed_bad, printed_err, corrected_err = set(), 0.0, 0.0
    for p in draws:
        bad, err = table_mismatches(p, "printed")
        printed_bad.update(bad)
        printed_err = max(printed_err, err)
        bad_c, err_c = table_mismatches(p, "corrected")
        corrected_err = max(corrected_err, err_c)
        if bad_c:
            return FAIL, err_c, 1e-8, f"corrected listing disagrees in {sorted(bad_c)}"
    b6 = "B6 reading confirmed" if "B6" not in printed_bad else "B6 reading NOT confirmed"
    if not printed_bad:
        return PASS, printed_err, 1e-8, f"printed listing matches on 5 draws; {b6}"
    names = ", ".join(n for n in COEFF_NAMES if n in printed_bad)
    return (KNOWN, printed_err, 1e-8,
            f"printed listing differs in {names} (corrected listing matches to "
            f"{corrected_err:.1e}); {b6}")


def check_corrected_table():
    rng = np.random.default_rng(SEED + 2)
    worst = max(table_mismatches(random_rational_params(rng), "corrected")[1] for _ in range(3))
    return (PASS if worst <= 1e-8 else FAIL), worst, 1e-8, "corrected listing vs reconstruction"


# ---------------------------------------------------------------------------

def weak_residual(omega_34: float) -> float:
    p = _fig2(omega_34)
    return abs(shift_from_rho12(p, "exact").delta0 - (stark_shift(p) + distortion_shift(p)))


def check_convergence():
    R = [weak_residual(w) for w in (10.0, 20.0, 40.0)]
    ratios = (R[1] / R[0], R[2] / R[1])
    worst = max(ratios)
    return ((PASS if worst <= 0.35 else FAIL), worst, 0.35,
            f"R = {R[0]:.3g}, {R[1]:.3g}, {R[2]:.3g}; ratios {ratios[0]:.3f}, {ratios[1]:.3f}")


def check_fig2():
    d0 = shift_from_rho12(_fig2(), "exact").delta0
    rel = abs(d0 - FIG2_DELTA0) / FIG2_DELTA0
    return (PASS if rel <= 0.15 else FAIL), rel, 0.15, f"delta0 = {d0:.5g} Gamma"


# ---------------------------------------------------------------------------

def check_cancellation():
    p = ModelParams(omega_34=10.0, rabi_1=1.0, rabi_2=1.0, p_1=0.7, p_2=0.7).with_drive(1e-4, 3.0)
    dac, dd = stark_shift(p), distortion_shift(p)
    closed = abs(dac + dd)
    closed_lim = 4 * np.finfo(float).eps * max(abs(dac), abs(dd))
    gd = gamma_d(p)
    exact_a = abs(shift_from_rho12(p, "exact").delta0) / gd
    q = p.replace(p_1=0.0, p_2=0.0)
    exact_b = abs(shift_from_rho12(q, "exact").delta0) / gamma_d(q)
    ok = closed <= closed_lim and exact_a <= 1e-3 and exact_b <= 1e-6
    return ((PASS if ok else FAIL), closed, closed_lim,
            f"|dAC+dD| = {closed:.3g}; |delta0|/gD = {exact_a:.2g} (p1=p2), {exact_b:.2g} (p=0)")


def fig4_params(p_1: float, p_2: float, omega_34: float) -> ModelParams:
    shape = ModelParams(omega_34=omega_34, rabi_1=1.0, rabi_2=1.0, p_1=p_1, p_2=p_2)
    return shape.with_drive(0.1, 10.0)


def check_disappearance():
    lo = contrast(fig4_params(-1.0, 1.0, 0.1))
    hi = contrast(fig4_params(-1.0, 1.0, 10.0))
    same = [contrast(fig4_params(1.0, 1.0, w)) for w in (0.1, 0.5, 1.0, 10.0)]
    ok = lo < 1e-3 and hi > 0.1 and min(same) > 0.1
    return ((PASS if ok else FAIL), lo, 1e-3,
            f"opposite signs: C(0.1) = {lo:.3g}, C(10) = {hi:.3g}; equal signs: min C = {min(same):.3g}")


# ---------------------------------------------------------------------------

FIG5_SHAPE = ModelParams(omega_34=0.5, rabi_1=1.0, rabi_2=1.0, p_1=1.0, p_2=1.0)


def fig5_row(p2_values, p_1: float = 1.0) -> np.ndarray:
    out = []
    for p2 in p2_values:
        p = FIG5_SHAPE.replace(p_1=p_1, p_2=float(p2)).with_drive(1e-4, 1.0)
        out.append(chi_extremum_polynomial(p).delta0 / gamma_d(p))
    return np.array(out)


def check_fig5():
    zero = abs(fig5_row([1.0])[0])
    p2 = np.linspace(1.25, 10.0, 36)
    row = np.abs(fig5_row(p2))
    at10, peak = row[-1], row.max()
    if zero > 1e-3:
        return FAIL, zero, 1e-3, "row p1 = 1 does not vanish at p2 = 1"
    if at10 < peak:
        return PASS, at10, peak, f"peak |delta0|/gD = {peak:.3g} at p2 = {p2[row.argmax()]:.3g}"
    return (KNOWN, at10, peak,
            f"zero at p2 = 1 holds ({zero:.1e}); |delta0|/gD grows monotonically to "
            f"{at10:.3g} at p2 = 10, no interior maximum")


def check_fig6_line():
    shape = ModelParams(omega_34=2.0, rabi_1=1.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
    on = series_coefficients(shape.replace(p_2=-2.0), 2.0)
    off = series_coefficients(shape, 2.0)
    quad = abs(on.alpha2) * max(on.x_grid) ** 2
    ok = abs(on.alpha1) <= 0.05 * abs(off.alpha1) and quad > on.residual
    return ((PASS if ok else FAIL), abs(on.alpha1 / off.alpha1), 0.05,
            f"alpha1 = {on.alpha1:.3g} vs {off.alpha1:.3g}; alpha2 x^2 = {quad:.3g} > residual {on.residual:.3g}")


def check_fig7_null():
    shape = ModelParams(omega_34=1.0, rabi_1=1.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
    curve = shift_vs_intensity(shape, 1.0, DEFAULT_X_GRID)
    worst = max(abs(s) / gamma_d(shape.with_drive(x, 1.0)) for x, s in zip(curve.x, curve.S))
    return (PASS if worst <= 1e-6 else FAIL), worst, 1e-6, "max |S|/gD over the default x grid"


def concordance_draws(n: int = 5, seed: int = SEED + 3) -> list[ModelParams]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        shape = ModelParams(omega_34=20.0, rabi_1=1.0, rabi_2=1.0,
                            p_1=float(rng.uniform(-1, 1)), p_2=float(rng.uniform(-1, 1)))
        out.append(shape.with_drive(float(rng.uniform(1e-4, 1e-3)), float(rng.uniform(0.2, 5.0))))
    return out


def concordance_excess(p: ModelParams) -> float:
    """Largest pairwise extractor gap divided by ``0.1|delta0| + 1e-3 gamma_D``."""
    d = [shift_from_rho12(p, "exact").delta0, chi_extremum_polynomial(p).delta0,
         rho_exc_extremum(p, "exact").delta0]
    bound = 0.1 * max(abs(v) for v in d) + 1e-3 * gamma_d(p)
    return max(abs(a - b) for i, a in enumerate(d) for b in d[i + 1:]) / bound


def check_concordance():
    worst = max(concordance_excess(p) for p in concordance_draws())
    return (PASS if worst <= 1.0 else FAIL), worst, 1.0, "5 draws at omega_34 = 20 Gamma"


def check_identity():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(5):
        p, det = random_params(rng)
        rho = solve_steady(p, det)
        c1, c2 = susceptibility(p, det, rho)
        direct = excited_population(p, rho, check=False)
        worst = max(worst, abs(direct - rho_exc_from_chi(p, c1.imag, c2.imag)))
    return (PASS if worst <= 1e-10 else FAIL), worst, 1e-10, "rho_exc vs chi'' identity, exact solver"


CHECKS = (
    Check("oracle", "steady solve agrees with long-time evolution", check_oracle),
    Check("appendix", "tabulated rational coefficients vs reconstruction", check_appendix),
    Check("corrected-table", "corrected rational coefficients vs reconstruction", check_corrected_table),
    Check("convergence", "weak-coupling residual shrinks at second order", check_convergence),
    Check("fig2", "weak-coupling shift at omega_34 = 10 Gamma", check_fig2),
    Check("cancellation", "shift cancels for p1 = p2 and for p = 0", check_cancellation),
    Check("disappearance", "opposite-sign dip vanishes at small omega_34", check_disappearance),
    Check("fig5", "strong-coupling shift vs p2 at omega_34 = 0.5 Gamma", check_fig5),
    Check("fig6-line", "linear coefficient vanishes on p2 W2 = -p1 W1", check_fig6_line),
    Check("fig7-null", "no shift for p1 = -p2 and equal drives", check_fig7_null),
    Check("concordance", "three extractors agree in weak coupling", check_concordance),
    Check("identity", "excited population equals the absorption sum", check_identity),
)


def _timed(check: Check) -> CheckResult:
    t0 = time.perf_counter()
    try:
        status, value, limit, detail = check.run()
    except Exception as exc:  # a crash is a failure of the check, not of the suite
        status, value, limit, detail = FAIL, math.nan, math.nan, f"{type(exc).__name__}: {exc}"
    return CheckResult(check.key, check.title, status, float(value), float(limit), detail,
                       time.perf_counter() - t0)


def run_suite(keys: Optional[list[str]] = None, mutate: bool = False,
              workers: int = 1) -> list[CheckResult]:
    """Run the checks (all by default) and return results in suite order.

    ``mutate=True`` flips the sign of the distortion shift for the duration of
    the run; the cancellation check must then fail.
    """
    chosen = [c for c in CHECKS if keys is None or c.key in keys]
    if keys is not None:
        unknown = set(keys) - {c.key for c in CHECKS}
        if unknown:
            raise KeyError(f"unknown checks: {sorted(unknown)}")
    if mutate:
        with mutated_distortion_sign():
            return [_timed(c) for c in chosen]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(_timed, chosen))
    return [_timed(c) for c in chosen]


def suite_failed(results: list[CheckResult]) -> bool:
    return any(r.status == FAIL for r in results)
