"""How the shift grows with intensity, and where its linear part disappears.

``python3 demos/03_intensity_dependence.py``
"""
import numpy as np

from cpt_shift import ModelParams, series_coefficients, shift_vs_intensity

# delta0(x) = alpha1 x + alpha2 x^2 + ...  with x = Omega_1^2 + Omega_2^2.
shape = ModelParams(omega_34=2.0, rabi_1=1.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
print("omega_34 = 2 Gamma, Omega_1^2 = 2 Omega_2^2, p_1 = 1")
print("   p_2      alpha1       alpha2      alpha2/alpha1  fit")
for p2 in (-1.0, -1.5, -2.0, -2.5, 1.0):
    s = series_coefficients(shape.replace(p_2=p2), 2.0)
    print(f"{p2:6.2f}  {s.alpha1: .4e}  {s.alpha2: .4e}  {s.ratio: .4e}  {s.method}")
# at p_2 Omega_2^2 = -p_1 Omega_1^2 the linear term is gone and only alpha2 is left

# Opposite dipole ratios with nearly balanced drives.
shape = ModelParams(omega_34=1.0, rabi_1=1.0, rabi_2=1.0, p_1=1.0, p_2=-1.0)
c = shift_vs_intensity(shape, 1.0)
print(f"\np = (1, -1), equal drives: S(x) = {np.asarray(c.S)}")

# p_2 = -0.5: as Omega_1^2/Omega_2^2 approaches 0.5 the curve bends over, and
# the turning point slides toward zero intensity.
shape = shape.replace(p_2=-0.5)
x = np.linspace(0.005, 0.2, 40)
print("\np = (1, -0.5): turning point of S(x)")
for ratio in (0.51, 0.52, 0.53, 0.55, 0.57, 0.6):
    ext = shift_vs_intensity(shape, ratio, x).extremum
    where = "none on this grid" if ext is None else f"x = {ext[0]:.3f}, S = {ext[1]: .3e}"
    print(f"  ratio {ratio:.2f}: {where}")
