"""
The box family
==============

The box -1 <= x <= 1 written as Ax <= b with A = [I; -I].  Its Hoffman
constant is n, and the covering algorithm needs exactly 2^n + n steps:
one per maximal feasible sign pattern and one per opposite pair.
"""
import hoffman

for n in range(1, 9):
    res = hoffman.cover_algorithm(hoffman.box(n))
    cert = res.certificate
    print(f"n={n}  H={res.value:.4f}  |F|={len(cert.F):4d}  |I|={len(cert.I)}  "
          f"steps={res.iterations:4d}  (2^n+n = {2 ** n + n})")

# the certificate for n = 2, small enough to read
cert = hoffman.cover_algorithm(hoffman.box(2)).certificate
print("F =", list(cert.F))
print("I =", list(cert.I))   # opposite rows {k, n+k}
print(hoffman.verify_certificate(hoffman.box(2), cert))
