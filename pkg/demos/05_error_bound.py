"""
The error bound in action
=========================

For b in A(R^n) + R^m_+ and any u:
    dist_1(u, {x : Ax <= b}) <= H(A) * ||(Au - b)_+||_inf.
Random pairs sit well below the bound.  A pair built from the argmax set J
and its worst right-hand side reaches it.
"""
import numpy as np

import hoffman

A = hoffman.random_instance(7, 3, 3)
res = hoffman.cover_algorithm(A)
H = res.value
print("H(A) =", H, " argmax J =", res.argmax)

rng = np.random.default_rng(0)
ratios = []
for _ in range(200):
    uhat = rng.normal(size=3)
    b = A @ uhat + np.abs(rng.normal(size=7))
    u = uhat + rng.normal(scale=2, size=3)
    r = hoffman.residual(A, b, u)
    if r > 0:
        ratios.append(hoffman.distance_to_polyhedron(A, b, u) / r)
print(f"random pairs: max ratio {max(ratios):.4f}, median {np.median(ratios):.4f}")

# worst case: u = 0, b_J = the worst sign vector, other rows slack
value, y, x = hoffman.hj_vertex(A, res.argmax)
b = A @ x + 1.0
b[res.argmax.zero_based()] = y
u = np.zeros(3)
print("constructed pair ratio:",
      hoffman.distance_to_polyhedron(A, b, u) / hoffman.residual(A, b, u))
