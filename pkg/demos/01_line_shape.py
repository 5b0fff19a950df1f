"""Weak off-resonant coupling: where the CPT resonance sits and why.

Run with ``python3 demos/01_line_shape.py``. Prints numbers only; pipe the
``cpt-shift spectrum --preset fig2`` CSV into any plotting tool for the curve.
"""
import numpy as np

from cpt_shift import (ModelParams, chi_extremum_polynomial, distortion_shift, gamma_d,
                       rho12_weak, rho_exc_extremum, shift_from_rho12, solve_steady, spectrum,
                       stark_shift)

# Omega_1 = 3 Omega_2, total intensity 1e-4 Gamma^2, level 4 ten widths away
shape = ModelParams(omega_34=10.0, rabi_1=3.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
p = shape.with_drive(1e-4, 9.0)
gd = gamma_d(p)
print(f"Omega_1 = {p.rabi_1:.4g}, Omega_2 = {p.rabi_2:.4g}, gamma_D = {gd:.4g} Gamma")

# Two first-order contributions: the level shift and the line-shape distortion.
dac, dd = stark_shift(p), distortion_shift(p)
print(f"Stark shift      {dac:.4e} Gamma")
print(f"distortion shift {dd:.4e} Gamma")
print(f"sum              {dac + dd:.4e} Gamma  ({(dac + dd) / gd:.3f} gamma_D)")

# The exact 4-level steady state puts the zero of Im rho_12 close to that sum.
d0 = shift_from_rho12(p, "exact").delta0
print(f"\nexact Im rho_12 zero at {d0:.4e} Gamma")

# The three ways of reading off the resonance agree at this coupling.
print(f"absorption minimum      {chi_extremum_polynomial(p).delta0:.4e}")
print(f"fluorescence minimum    {rho_exc_extremum(p).delta0:.4e}")

# A coarse look at the line: first-order coherence against the exact one.
grid = np.linspace(-3, 3, 7) * gd
sp = spectrum(p, grid, "exact")
print("\n delta/gD    Im rho12 exact   Im rho12 first order")
for d, exact in zip(grid, sp.column("rho12_im")):
    print(f"{d / gd:8.1f}  {exact: .6e}   {rho12_weak(p, d).imag: .6e}")

# Equal dipole ratios: both shifts cancel and the resonance returns to zero.
q = shape.replace(p_2=1.0).with_drive(1e-4, 9.0)
print(f"\np_1 = p_2 = 1: Stark {stark_shift(q):.3e}, distortion {distortion_shift(q):.3e}, "
      f"exact zero {shift_from_rho12(q).delta0:.1e}")
print(f"dark state population at delta = 0: rho_11 = {solve_steady(q, 0.0).rho11:.6f} "
      f"(expected {q.rabi_2 ** 2 / q.rabi_sq_sum:.6f})")
