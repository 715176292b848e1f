"""
Simplex family: value check against brute force
================================================

A = [I_n; -1^T].  Exhaustive classification of all 2^(n+1) row subsets gives
H = 2n - 1 (for n = 1 both rows have rho = 1, so H = 1).  Some printed
references state 2n + 1; the brute-force column settles it.
"""
import hoffman

print(" n  brute   cover   2n-1  2n+1  cover steps (n+2)  enum scans (n+1)")
for n in range(1, 8):
    A = hoffman.simplex(n)
    bf = hoffman.brute_force(A).value
    cv = hoffman.cover_algorithm(A)
    en = hoffman.enum_solve(A)
    print(f"{n:2d}  {bf:6.3f}  {cv.value:6.3f}  {2 * n - 1:4d}  {2 * n + 1:4d}"
          f"  {cv.iterations:17d}  {en.iterations:16d}")

# where the value comes from: row 1 with the all-minus row
A = hoffman.simplex(2)
r, v = hoffman.rho(A, [1, 3])
print("rho_{1,3} =", r, "with v =", v)
