"""
Parameter space of the four-level double-Lambda model.

Levels 1 and 2 are the ground sublevels, 3 is the resonant excited sublevel
and 4 the off-resonant one, split from 3 by ``omega_34``. Component ``g`` of
the bichromatic field drives ``|g> -> |3>`` with half-Rabi frequency
``rabi_g`` and ``|g> -> |4>`` with ``p_g * rabi_g``.

All rates and frequencies are angular and expressed in units of the optical
decoherence rate ``gamma_opt`` (which defaults to 1).
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidParameters

#: Drive or detuning above this fraction of ``gamma_opt`` triggers an advisory.
ADVISORY_FRACTION = 0.3
_NORM_TOL = 1e-12


@dataclass(frozen=True)
class BranchingRatios:
    """Population-transfer rates from the excited to the ground sublevels."""

    gamma_31: float
    gamma_32: float
    gamma_41: float
    gamma_42: float

    @classmethod
    def uniform(cls, gamma_exc: float) -> "BranchingRatios":
        half = 0.5 * gamma_exc
        return cls(half, half, half, half)

    @property
    def gamma_3(self) -> float:
        return self.gamma_31 + self.gamma_32

    @property
    def gamma_4(self) -> float:
        return self.gamma_41 + self.gamma_42

    def swapped(self) -> "BranchingRatios":
        """Relabel ground states 1 <-> 2."""
        return BranchingRatios(self.gamma_32, self.gamma_31, self.gamma_42, self.gamma_41)

    def asymmetries(self) -> tuple[float, float]:
        """Branching asymmetries ``(dgamma_1, dgamma_2)``; both vanish for uniform decay."""
        r1 = self.gamma_41 / self.gamma_31
        r2 = self.gamma_42 / self.gamma_32
        return ((r1 - r2) * self.gamma_31 / self.gamma_4,
                (r2 - r1) * self.gamma_32 / self.gamma_4)


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the double-Lambda system.

    Parameters
    ----------
    omega_34 : float
        Excited-state splitting.
    rabi_1, rabi_2 : float
        Real half-Rabi frequencies of the two field components on the
        ``|g> -> |3>`` transitions.
    p_1, p_2 : float
        Dipole ratios ``d_g4 / d_g3``.
    gamma_opt : float
        Optical decoherence rate; the unit of every other rate.
    gamma_exc : float
        Radiative decay rate of both excited levels.
    gamma_12 : float
        Ground-state decoherence rate.
    branching : BranchingRatios, optional
        Decay channels. Defaults to the uniform model, every channel
        ``gamma_exc / 2``.
    gamma_34 : float, optional
        Decay of the excited-state coherence; defaults to ``2 * gamma_opt``.
    """

    omega_34: float
    rabi_1: float
    rabi_2: float
    p_1: float = 0.0
    p_2: float = 0.0
    gamma_opt: float = 1.0
    gamma_exc: float = 2.0
    gamma_12: float = 0.0
    branching: Optional[BranchingRatios] = None
    gamma_34: Optional[float] = None

    def __post_init__(self):
        if self.branching is None:
            object.__setattr__(self, "branching", BranchingRatios.uniform(self.gamma_exc))

    @property
    def rabi_sq_sum(self) -> float:
        return self.rabi_1 ** 2 + self.rabi_2 ** 2

    @property
    def intensity(self) -> float:
        """Dimensionless total intensity ``(rabi_1**2 + rabi_2**2) / gamma_opt**2``."""
        return self.rabi_sq_sum / self.gamma_opt ** 2

    @property
    def excited_coherence_decay(self) -> float:
        return 2.0 * self.gamma_opt if self.gamma_34 is None else self.gamma_34

    @property
    def is_uniform(self) -> bool:
        b = self.branching
        half = 0.5 * self.gamma_exc
        return b.gamma_31 == b.gamma_32 == b.gamma_41 == b.gamma_42 == half

    def replace(self, **changes) -> "ModelParams":
        # keep the uniform preset uniform when only gamma_exc changes
        if "gamma_exc" in changes and "branching" not in changes and self.is_uniform:
            changes["branching"] = None
        return dataclasses.replace(self, **changes)

    def swapped(self) -> "ModelParams":
        """Exchange the roles of the two field components (ground states 1 <-> 2)."""
        return dataclasses.replace(
            self, rabi_1=self.rabi_2, rabi_2=self.rabi_1, p_1=self.p_2, p_2=self.p_1,
            branching=self.branching.swapped())

    def with_drive(self, intensity: float, ratio: float) -> "ModelParams":
        """Same shape, new drive: ``rabi_1**2 + rabi_2**2 = intensity * gamma_opt**2``
        and ``rabi_1**2 / rabi_2**2 = ratio``."""
        r1, r2 = drive_from_intensity(intensity, ratio, self.gamma_opt)
        return dataclasses.replace(self, rabi_1=r1, rabi_2=r2)


def drive_from_intensity(intensity: float, ratio: float, gamma_opt: float = 1.0) -> tuple[float, float]:
    """Half-Rabi frequencies for total intensity ``x`` and ratio ``rabi_1**2 / rabi_2**2``."""
    if intensity < 0 or ratio < 0:
        raise ValueError("intensity and ratio must be non-negative")
    total = intensity * gamma_opt ** 2
    if math.isinf(ratio):
        return math.sqrt(total), 0.0
    return math.sqrt(total * ratio / (1.0 + ratio)), math.sqrt(total / (1.0 + ratio))


@dataclass(frozen=True)
class DetuningSpec:
    """Two-photon detuning ``delta`` and common one-photon detuning.

    The one-photon detunings are split symmetrically,
    ``Delta_1 = delta_common + delta/2`` and ``Delta_2 = delta_common - delta/2``.
    """

    delta: float
    delta_common: float = 0.0

    @property
    def delta_1(self) -> float:
        return self.delta_common + 0.5 * self.delta

    @property
    def delta_2(self) -> float:
        return self.delta_common - 0.5 * self.delta


@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    advisories: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self) -> None:
        if self.errors:
            raise InvalidParameters(self.errors)


def validate(params: ModelParams, det: Optional[DetuningSpec] = None) -> ValidationReport:
    """Check hard invariants and collect soft advisories. Never raises."""
    rep = ValidationReport()
    err, adv = rep.errors, rep.advisories
    values = dataclasses.asdict(params)
    values.pop("branching")
    for key, val in values.items():
        if val is not None and not math.isfinite(val):
            err.append(f"{key} is not finite")
    if err:
        return rep
    g = params.gamma_opt
    if not g > 0:
        err.append("gamma_opt must be > 0")
    if not params.gamma_exc > 0:
        err.append("gamma_exc must be > 0")
    if params.gamma_12 < 0:
        err.append("gamma_12 must be >= 0")
    if not params.omega_34 > 0:
        err.append("omega_34 must be > 0")
    if params.gamma_34 is not None and not params.gamma_34 > 0:
        err.append("gamma_34 must be > 0")
    if g < 0.5 * params.gamma_exc:
        err.append("Gamma >= gamma/2 violated: optical decoherence below the radiative limit")
    if params.rabi_sq_sum == 0:
        err.append("no drive: rabi_1 = rabi_2 = 0 leaves the steady state non-unique")

    b = params.branching
    if min(b.gamma_31, b.gamma_32, b.gamma_41, b.gamma_42) <= 0:
        err.append("branching rates must be positive")
    scale = max(abs(params.gamma_exc), 1.0)
    if abs(b.gamma_3 - params.gamma_exc) > _NORM_TOL * scale:
        err.append("branching normalization violated: gamma_31 + gamma_32 != gamma_exc")
    if abs(b.gamma_4 - params.gamma_exc) > _NORM_TOL * scale:
        err.append("branching normalization violated: gamma_41 + gamma_42 != gamma_exc")

    if g < 0.5 * (params.gamma_exc + params.gamma_12) and params.gamma_12 > 0:
        # ground dephasing must also dephase the optical coherences for complete positivity
        adv.append("positivity: gamma_opt < (gamma_exc + gamma_12)/2, the steady state "
                   "may have slightly negative eigenvalues")
    if g > 0 and max(abs(params.rabi_1), abs(params.rabi_2)) > ADVISORY_FRACTION * g:
        adv.append("adiabaticity: max(rabi) > 0.3 gamma_opt, adiabatic formulas degrade")
    if det is not None and g > 0:
        if max(abs(det.delta_1), abs(det.delta_2)) > ADVISORY_FRACTION * g:
            adv.append("one-photon detuning > 0.3 gamma_opt, small-detuning formulas degrade")
    return rep


def uniform_preset(gamma_exc: float = 2.0, gamma_opt: float = 1.0, gamma_12: float = 0.0,
                   omega_34: float = 10.0, rabi_1: float = 0.0, rabi_2: float = 0.0,
                   p_1: float = 0.0, p_2: float = 0.0) -> ModelParams:
    """Uniform relaxation model: every decay channel carries ``gamma_exc / 2``.

    Raises
    ------
    InvalidParameters
        If the resulting parameters violate a hard invariant.
    """
    params = ModelParams(omega_34=omega_34, rabi_1=rabi_1, rabi_2=rabi_2, p_1=p_1, p_2=p_2,
                         gamma_opt=gamma_opt, gamma_exc=gamma_exc, gamma_12=gamma_12)
    validate(params).raise_for_errors()
    return params
