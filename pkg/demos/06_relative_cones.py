"""
Relative constants over a cone
==============================

Restricting both u and the solutions to R = {x : Bx <= 0} can only shrink
the constant.  When the system stays onto relative to R, one LP computes it
(equations need one LP per sign orthant of the multiplier).
"""
import numpy as np

import hoffman
from hoffman import ConicReference

for n in range(1, 6):
    R = ConicReference.nonnegative_orthant(n)
    h_rel = hoffman.relative_cone_ineq(-np.eye(n), R).value
    h_eq = hoffman.relative_cone_eq(np.eye(n), ConicReference.whole_space(n)).value
    print(f"n={n}  H(-I | R^n_+) = {h_rel:.4f}   H~(I | R^n) = {h_eq:.4f}")

# A = I is not onto relative to the orthant: Ax <= -1 has no solution with x >= 0
try:
    hoffman.relative_cone_ineq(np.eye(2), ConicReference.nonnegative_orthant(2))
except hoffman.PreconditionFailed as exc:
    print("rejected:", exc)

# a difference constraint on the orthant
C = np.array([[1.0, -1.0]])
print("H~([1,-1] | R^2_+) =", hoffman.relative_cone_eq(C, ConicReference.nonnegative_orthant(2)).value)
