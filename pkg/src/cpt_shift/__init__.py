"""
CPT resonance line shapes and light shifts in a four-level double-Lambda atom.

Two ground levels ``|1>, |2>`` are coupled by a bichromatic field to the
excited level ``|3>`` and, off resonance, to a second excited level ``|4>``
split by ``omega_34``. All rates are in units of the optical decoherence rate
``gamma_opt`` (``Gamma``), which defaults to 1.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .model import (BranchingRatios, DetuningSpec, ModelParams, ValidationReport,
                    drive_from_intensity, uniform_preset, validate)
from .steady_state import DensityMatrix, evolve, iter_evolve, solve_steady
from .weak_coupling import (distortion_shift, g_factor, gamma_d, populations_weak,
                            reduced_solution, rho12_three_level, rho12_weak, shift_weak,
                            stark_shift)
from .observables import (RationalChi, Spectrum, appendix_b_coefficients, chi_adiabatic,
                          chi_weak, corrected_rational, excited_population,
                          reconstruct_rational, rho_exc_from_chi, spectrum, susceptibility)
from .shift import (ExtremumReport, IntensityCurve, SeriesCoeffs, chi_extremum_golden,
                    chi_extremum_polynomial, chi_extremum_solver, contrast, headline_shift,
                    rho_exc_extremum, series_coefficients, shift_from_rho12,
                    shift_vs_intensity)
