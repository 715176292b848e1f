"""
Four ways to the same number
============================

Covering algorithm, complementarity branch and bound, full-row-rank
enumeration and brute force on a handful of seeded random matrices with
entries in {-2, ..., 2}.
"""
import hoffman

print("seed  shape   cover     lpcc      enum      brute     steps nodes scans")
for seed in range(8):
    A = hoffman.random_instance(6 + seed % 3, 2 + seed % 3, seed)
    c = hoffman.cover_algorithm(A)
    l = hoffman.lpcc_solve(A)
    e = hoffman.enum_solve(A)
    b = hoffman.brute_force(A)
    print(f"{seed:4d}  {A.shape[0]}x{A.shape[1]}   {c.value:8.4f}  {l.value:8.4f}  {e.value:8.4f}  "
          f"{b.value:8.4f}  {c.iterations:5d} {l.nodes:5d} {e.iterations:5d}")

# when Ax < 0 is feasible a single LP is enough
A = hoffman.strictly_feasible_instance(6, 3, 0)
print("fast path:", hoffman.fast_path(A).value, " cover:", hoffman.cover_algorithm(A).value)
