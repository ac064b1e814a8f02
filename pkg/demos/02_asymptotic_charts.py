"""Asymptotic charts at both ends of a ray.

A monodromy point determines, through finitely many complex constants
("charts"), the leading behaviour of its solution both as |tau| -> 0 and
as |tau| -> infinity, on real and imaginary rays.  This script builds the
charts for a generic point, evaluates the solution and Hamiltonian
formulas, and shows the degenerate (triangular connection matrix) charts
where the oscillation dies and the cube-root solution emerges exactly.

Run:  python demos/02_asymptotic_charts.py
"""

import numpy as np

from dp3 import (
    EquationParams,
    H_large,
    H_small,
    from_branch,
    large_tau_chart,
    cross_ray_residuals,
    small_tau_chart,
    tau_function_asymptotic,
    u_imag,
    u_large,
    u_small,
)

params = EquationParams.make(1, 1.0)

g12, g21 = 0.21 + 0.1j, -0.15 + 0.05j
pt = from_branch(1, a=0.0, g11=1.05, g12=g12, g21=g21,
                 g22=(1 + g12 * g21) / 1.05)

# ----------------------------------------------------------------------
# Large-argument chart: index nu + 1 (a logarithm of the diagonal product
# of the connection matrix), weight omega, and phase constant z.
# ----------------------------------------------------------------------
lc = large_tau_chart(pt, eps1=0, params=params)
print("large-argument chart on the positive ray:")
print(f"  nu + 1 = {lc.nu_plus_1:.6f}")
print(f"  omega  = {lc.omega:.6f}")
print(f"  z      = {lc.z:.6f}")
print("  u at |tau| = 50, 200, 800:")
for m in (50.0, 200.0, 800.0):
    print(f"    {m:6.0f}: u = {u_large(lc, m):.6f}   H = {H_large(lc, m):.6f}")

# ----------------------------------------------------------------------
# Small-argument chart: exponent rho solves cos(2 pi rho) = -i s00 / 2;
# the leading power of the solution is tau^{1 - 4 Re rho}.
# ----------------------------------------------------------------------
sc = small_tau_chart(pt, eps1=0, params=params)
expo = 1.0 - 4.0 * sc.rho.real
print(f"\nsmall-argument chart: rho = {sc.rho:.6f}")
print(f"  => |u| scales like |tau|^(1 - 4 Re rho) = |tau|^{expo:.4f} at the origin:")
for m in (1e-2, 1e-4, 1e-6):
    print(f"  |tau| = {m:.0e}: u = {u_small(sc, m):.8f}  "
          f"|u|/|tau|^{expo:.3f} = {abs(u_small(sc, m)) / m ** expo:.6f}  "
          f"tau H = {m * H_small(sc, m):.6f}")

print(f"\ntau-function form at |tau| = 1e-3 (unit prefactor): "
      f"{tau_function_asymptotic(sc, 1e-3):.6e}")

# ----------------------------------------------------------------------
# The degenerate charts: when an off-diagonal entry of the (rotated)
# connection matrix vanishes, the oscillatory term collapses to a single
# exponential, and for the distinguished point below it vanishes entirely,
# leaving the exact cube-root solution.
# ----------------------------------------------------------------------
pt_alg = from_branch(1, a=0.0, g11=1, g12=0, g21=0, g22=1)
lc_alg = large_tau_chart(pt_alg, 0, params)
print(f"\ndistinguished point routes to the '{lc_alg.special}' chart:")
for m in (1.0, 8.0, 27.0):
    print(f"  u({m:4.0f}) = {u_large(lc_alg, m):.12f}   "
          f"tau^(1/3)/2 = {m ** (1 / 3) / 2:.12f}")

# ----------------------------------------------------------------------
# Imaginary rays: the same kernels evaluated on hatted data, with an
# overall factor of +-i.  Each ray has its own validity strip, so a point
# is chosen whose hatted charts are valid on both.
# ----------------------------------------------------------------------
g12i, g21i = -0.29 - 0.59j, -0.04 + 0.84j
pt_imag = from_branch(1, a=0.0, g11=1.05, g12=g12i, g21=g21i,
                      g22=(1 + g12i * g21i) / 1.05)
print("\nimaginary-ray values at |tau| = 20:")
for e1 in (1, -1):
    v = u_imag(pt_imag, e1, params, 20.0, "large")
    print(f"  arg tau = {e1:+d} pi/2: u = {v:.6f}")

# ----------------------------------------------------------------------
# Cross-ray identities: the charts on the three real rays are linked by
# four rational identities in (omega, nu + 1, a).  They need the chart
# conditions to hold on all three rays at once, so we use a point whose
# rotated connection matrices stay inside the validity strip everywhere.
# ----------------------------------------------------------------------
g12b, g21b = 0.25 + 0.53j, 0.2 - 0.44j
pt_all_rays = from_branch(1, a=0.0, g11=1.05, g12=g12b, g21=g21b,
                          g22=(1 + g12b * g21b) / 1.05)
print("\ncross-ray identity residuals:",
      np.array2string(np.array(cross_ray_residuals(pt_all_rays)), precision=2))
