"""Close fourth level: shift maps, vanishing dips and the small-omega_34 row.

``python3 demos/02_strong_coupling.py``
"""
import numpy as np

from cpt_shift import ModelParams, chi_extremum_polynomial, contrast, gamma_d, stark_shift, distortion_shift

# Shift of the absorption minimum over the (p_1, p_2) plane, in units of gamma_D.
shape = ModelParams(omega_34=10.0, rabi_1=3.0, rabi_2=1.0)
p_vals = np.linspace(-1, 1, 5)
print("omega_34 = 10 Gamma, Omega_1 = 3 Omega_2: delta0 / gamma_D")
print("p1 \\ p2 " + "".join(f"{v:9.2f}" for v in p_vals))
for p1 in p_vals:
    row = []
    for p2 in p_vals:
        p = shape.replace(p_1=p1, p_2=p2).with_drive(1e-4, 9.0)
        row.append(chi_extremum_polynomial(p).delta0 / gamma_d(p))
    print(f"{p1:7.2f} " + "".join(f"{v:9.4f}" for v in row))

# The diagonal is zero, as the first-order formula says.
p = shape.replace(p_1=0.4, p_2=-0.6).with_drive(1e-4, 9.0)
print(f"\nfirst order at (0.4, -0.6): {(stark_shift(p) + distortion_shift(p)) / gamma_d(p):.4f} gamma_D")

# When the two excited levels overlap, opposite-sign dipole ratios open a
# second path that exactly undoes the dark state. A negative contrast means the
# dip has turned into a bright peak.
print("\ncontrast, Omega_1^2 = 10 Omega_2^2, x = 0.1")
print(" omega_34   p=(1,1)   p=(-1,1)")
for w in (10.0, 1.0, 0.5, 0.1):
    c = [contrast(ModelParams(omega_34=w, rabi_1=1, rabi_2=1, p_1=s, p_2=1.0).with_drive(0.1, 10.0))
         for s in (1.0, -1.0)]
    print(f"{w:8.2f}  {c[0]:8.4f}  {c[1]:9.2e}")

# Row p_1 = 1 at omega_34 = 0.5 Gamma with equal drives.
# Here the shift follows -(p_2^2 - 1)/(4 p_2 + 5) gamma_D at low intensity:
# it crosses zero at p_2 = 1 and keeps growing, with no turnover by p_2 = 10.
print("\nomega_34 = 0.5 Gamma, Omega_1 = Omega_2, p_1 = 1")
print("   p_2   delta0/gD   -(p2^2-1)/(4p2+5)")
for p2 in (0.25, 0.5, 1.0, 2.0, 4.0, 7.0, 10.0):
    p = ModelParams(omega_34=0.5, rabi_1=1, rabi_2=1, p_1=1.0, p_2=p2).with_drive(1e-4, 1.0)
    print(f"{p2:6.2f}  {chi_extremum_polynomial(p).delta0 / gamma_d(p):10.5f}  "
          f"{-(p2 ** 2 - 1) / (4 * p2 + 5):10.5f}")
