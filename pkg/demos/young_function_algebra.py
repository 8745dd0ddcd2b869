"""Tour of the Young-function algebra.

Walks the shipped catalog through conjugation, the inverse-function sandwich
r <= A^-1(r) conj(A)^-1(r) <= 2r, and the doubling growth conditions, and
shows the conjugate duality: A is upper-doubling iff its conjugate is
lower-doubling.
"""

import numpy as np

from orlicz_korn import young

cat = young.load_catalog()

print("catalog:", ", ".join(sorted(cat)))
print()

A = young.PowerYoung(3, 1.0 / 3.0)
At = young.conjugate(A)
print(f"conjugate of t^3/3 is {At}:")
for t in (0.5, 2.0, 7.0):
    print(f"  at t={t}: {float(At(t)):.6f}  (closed form {(2/3)*t**1.5:.6f})")
print()

print("inverse-function sandwich on r in [1e-3, 1e6]:")
rs = np.geomspace(1e-3, 1e6, 60)
for name in ("L2", "LlogL", "expL", "Linf"):
    Afun = cat[name]
    Atc = young.conjugate(Afun)
    Aeff = young.conjugate(Atc) if Atc.kind == "conjugate" else Afun
    prod = Aeff.inverse(rs) * Atc.inverse(rs) / rs
    print(f"  {name:6s}: product/r in [{prod.min():.4f}, {prod.max():.4f}]  (must sit in [1, 2])")
print()

print("growth conditions near infinity and the conjugate duality:")
print(f"{'function':18s} {'upper-doubling':>14s} {'lower-doubling':>14s}   conjugate swaps them")
for name, Afun in sorted(cat.items()):
    d2 = young.check_delta2(Afun)
    n2 = young.check_nabla2(Afun)
    Atc = young.conjugate(Afun)
    swap = (young.check_delta2(Atc).holds == n2.holds
            and young.check_nabla2(Atc).holds == d2.holds)
    print(f"{name:18s} {str(d2.holds):>14s} {str(n2.holds):>14s}   {swap}")
