"""Ext and Tor of cyclic groups, both Ext routes side by side."""

from dercat.derivedcat import ext, ext_via_hom_d, tor
from dercat.exactalg import ZZ, FPModule


def cyc(m):
    return FPModule(ZZ, (m,) if m != 1 else ())


print("m n  Hom   Ext^1  Ext^1(D)  Tor_1")
for m in (2, 4, 6):
    for n in (3, 4, 6, 9):
        A, B = cyc(m), cyc(n)
        row = [ext(A, B, 0), ext(A, B, 1), ext_via_hom_d(A, B, 1), tor(A, B, 1)]
        print(m, n, " ".join(f"{str(M):6}" for M in row))
