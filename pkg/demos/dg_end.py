"""End algebra of a complex over Q, its dual module and the Yoneda check."""

from fractions import Fraction

import numpy as np

from dercat.complexes import Complex
from dercat.dg import (
    check_dg_algebra,
    dga_cohomology,
    end_complex_as_dga,
    evaluation_map,
    free_module,
    dg_dual,
    yoneda_check,
)
from dercat.exactalg import QQ, FPModule

Q = FPModule(QQ, (0,))
X = Complex(QQ, 0, [FPModule(QQ, (0, 0)), Q], [np.array([[Fraction(1), Fraction(0)]], dtype=object)])
A = end_complex_as_dga(X)
print("dim End(X):", A.dim, "valid:", check_dg_algebra(A).valid)
print("H^n End(X):", {n: dga_cohomology(A, n) for n in range(-1, 2)})
F = free_module(A)
print("dual of the free module has dim", dg_dual(F).dim, "biduality:", evaluation_map(F).verify())
print("Yoneda (dim Hom_K, dim H^0, iso):", yoneda_check(A, F))
