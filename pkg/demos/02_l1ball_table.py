"""
Rows are all sign vectors
=========================

l1ball(n) stacks the 2^n vectors of {-1, 1}^n in lexicographic order.  The
constant grows like 1, 1, 3, 5, 9; below is the argmax set each method finds.
"""
import time

import hoffman

for n in range(1, 5):
    A = hoffman.l1ball(n)
    t = time.perf_counter()
    cov = hoffman.cover_algorithm(A)
    t_cov = time.perf_counter() - t
    t = time.perf_counter()
    bb = hoffman.lpcc_solve(A)
    t_bb = time.perf_counter() - t
    print(f"n={n}  m={A.shape[0]:2d}  H={cov.value:.4f}  cover {cov.iterations:4d} steps "
          f"{t_cov:5.2f}s  lpcc {bb.nodes:4d} nodes {t_bb:5.2f}s")
    print(f"      cover argmax J = {cov.argmax}")

# n = 5 reproduces 4594 steps but takes minutes:
#   python3 -m hoffman --generate l1ball:5 --method cover
