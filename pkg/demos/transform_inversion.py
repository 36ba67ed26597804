"""The eigenfunction transform: Plancherel identity and inversion.

Pi f(x) = int f(lam) psi(lam, x) dlam maps L2(0, inf) to itself with
||Pi f||^2 = (pi/2) ||f||^2 and Pi^2 = (pi/2) id.  Discretized on grids,
both identities hold to about half a percent with the grids used here.
"""
import math

import numpy as np

from cauchyspec import GridFunction, pi_transform

PI = math.pi


def bump(lam):
    lam = np.asarray(lam, dtype=float)
    u = (lam - 1.0) * 2.0 - 1.0
    out = np.zeros_like(lam)
    m = (u > -1.0) & (u < 1.0)
    out[m] = np.exp(-1.0 / (1.0 - u[m] ** 2))
    return out


lam = np.linspace(1.0, 2.0, 201)
f = GridFunction.from_samples(lam, bump(lam))

dx = PI / 24.0
x_grid = np.arange(dx, 320.0, dx)
print(f"transforming a smooth bump on [1, 2] onto {x_grid.size} points "
      f"up to x = {x_grid[-1]:.0f} ...")
pif = pi_transform(f, x_grid)

ratio = pif.norm2() ** 2 / (PI / 2.0 * f.norm2() ** 2)
print(f"Plancherel: ||Pi f||^2 / ((pi/2) ||f||^2) = {ratio:.6f}"
      f"   (deviation {abs(ratio - 1):.2%})")

mu = np.linspace(1.0, 2.0, 21)
pi2 = pi_transform(pif, mu)
print("\ndouble transform vs (pi/2) f on the bump's support:")
print(f"{'mu':>6} {'Pi^2 f':>12} {'(pi/2) f':>12}")
ref = PI / 2.0 * bump(mu)
for m, a, b in zip(mu, pi2.values, ref):
    print(f"{m:6.2f} {a:12.6f} {b:12.6f}")
peak = PI / 2.0 * math.exp(-1.0)
print(f"max deviation: {np.abs(pi2.values - ref).max() / peak:.2%} of the peak")
