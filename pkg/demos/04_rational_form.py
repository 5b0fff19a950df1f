"""The absorption profile as a ratio of polynomials in delta.

In the adiabatic limit Im chi_1(delta) = N(delta)/D(delta) with a degree-7
numerator and degree-9 denominator. The coefficients can be rebuilt from the
2x2 reduced system by exact polynomial arithmetic and compared with the
tabulated closed forms.

``python3 demos/04_rational_form.py``
"""
import numpy as np

from cpt_shift import (ModelParams, appendix_b_coefficients, chi_adiabatic, corrected_rational,
                       gamma_d, reconstruct_rational)

p = ModelParams(omega_34=0.8, rabi_1=0.2, rabi_2=0.13, p_1=0.7, p_2=-0.4)
rec = reconstruct_rational(p)
printed = appendix_b_coefficients(p, "printed")
fixed = corrected_rational(p)

norm = lambda r: (r.numerator / r.denominator[9], r.denominator / r.denominator[9])
(nr, dr), (npr, dpr), (nf, df) = norm(rec), norm(printed), norm(fixed)
print("coef   reconstructed       printed             corrected")
for k in range(1, 8):
    print(f"A{k}   {nr[k]: .10e}  {npr[k]: .10e}  {nf[k]: .10e}")
for k in range(1, 10):
    print(f"B{k}   {dr[k]: .10e}  {dpr[k]: .10e}  {df[k]: .10e}")

# The corrected listing is the same function as the direct adiabatic solve;
# the printed one is not.
d = np.linspace(-1, 1, 5) * gamma_d(p)
direct = np.array([chi_adiabatic(p, x) for x in d])
print(f"\nmax relative gap to the adiabatic solve: "
      f"corrected {np.max(np.abs(fixed(d) / direct - 1)):.1e}, "
      f"printed {np.max(np.abs(printed(d) / direct - 1)):.1e}")

# Without the fourth level the common factors cancel and the degree drops.
print("p = 0:", reconstruct_rational(p.replace(p_1=0.0, p_2=0.0)).provenance["degree"])
