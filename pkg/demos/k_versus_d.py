"""An acyclic complex whose identity is zero in D but not in K."""

import numpy as np

from dercat.complexes import ChainMap, Complex, null_homotopy
from dercat.derivedcat import is_zero_in_d
from dercat.exactalg import ZZ, FPModule

Z = FPModule(ZZ, (0,))
W = Complex(ZZ, -1, [Z, Z, FPModule(ZZ, (2,))],
            [np.array([[2]], dtype=object), np.array([[1]], dtype=object)])
ident = ChainMap.identity(W)

print("acyclic:", W.is_acyclic())
print("identity null-homotopic:", null_homotopy(ident) is not None)
print("identity zero in D:", is_zero_in_d(ident).is_zero)
