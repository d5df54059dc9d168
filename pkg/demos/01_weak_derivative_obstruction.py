"""Why the textbook box eigenfunctions fail as global wavefunctions.

The flat-box modes cos(n pi x/2b), sin(n pi x/2b) vanish at the walls, so
their zero extension is continuous -- but the SLOPE jumps at +-b.  One more
derivative therefore produces Dirac deltas at the walls, and a function with
delta content has infinite L2 norm.  This script walks through the toy kink
example first, then the actual box modes, and finishes with the mesh
diagnostic whose 1/h divergence certifies the obstruction numerically.
"""

import numpy as np

from boxaffine import (BoxGeometry, cq_eigenfunction_extended, discrete_second_derivative_norm,
                       flat_ramp, l2_norm_squared, weak_derivative, weak_second_derivative)


def describe(name, w):
    sq = "yes" if w.is_square_integrable else "NO"
    print(f"  {name}:")
    print(f"    deltas       : {[(d.location, round(d.coefficient, 10)) for d in w.delta_terms] or 'none'}")
    print(f"    delta-primes : {[(d.location, round(d.coefficient, 10)) for d in w.delta_prime_terms] or 'none'}")
    print(f"    in L^2       : {sq}   (norm^2 = {l2_norm_squared(w)})")


print("=" * 72)
print("1. The toy kink: f = 0 on (-1,0), f = x on (0,1)")
print("=" * 72)
toy = flat_ramp()
describe("f'  (weak first derivative)", weak_derivative(toy))
describe("f'' (weak second derivative)", weak_second_derivative(toy))
print()
print("  f'' is exactly one unit delta at the kink -- fine as a distribution,")
print("  but its squared norm is infinite, so no Hilbert space will take it.")

print()
print("=" * 72)
print("2. Zero-extended box modes (b = 1)")
print("=" * 72)
geom = BoxGeometry(b=1.0, hbar=1.0)
for n in (1, 2, 3):
    phi = cq_eigenfunction_extended(n, geom)
    describe(f"mode n={n}, second derivative", weak_second_derivative(phi))
print()
print("  Every mode carries two wall deltas; the ground mode's coefficients")
print("  +pi/2 at both walls follow from the jump of the slope there.")

print()
print("=" * 72)
print("3. Mesh certificate: h * sum |D^2_h phi_1|^2 as the mesh refines")
print("=" * 72)
phi1 = cq_eigenfunction_extended(1, geom)
hs = np.array([2.0 ** -k for k in range(6, 13)])
vals = np.array([discrete_second_derivative_norm(phi1, h) for h in hs])
print(f"  {'h':>12} {'norm':>16} {'h * norm':>12}")
for h, v in zip(hs, vals):
    print(f"  {h:12.6f} {v:16.4f} {h * v:12.6f}")
slope = np.polyfit(np.log(hs), np.log(vals), 1)[0]
print(f"\n  log-log slope = {slope:.4f}  (a genuine integral would flatten out;")
print("  slope -1 is the delta's (jump/h)^2 * h signature, so the 'integral'")
print("  of |phi''|^2 is infinite and the eigenfunction equation fails at the walls)")
