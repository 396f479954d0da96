"""The octahedron of Z -2-> Z -3-> Z and the short exact sequence it hides."""

import numpy as np

from dercat.complexes import ChainMap, Complex
from dercat.exactalg import ZZ, FPModule
from dercat.triangle import long_exact_sequence, octahedron


def mult(k):
    X = Complex.concentrated(FPModule(ZZ, (0,)))
    return ChainMap(X, X, {0: np.array([[k]], dtype=object)})


oc = octahedron(mult(2), mult(3))
print("octahedron verifies:", oc.verify())
for face in oc.faces:
    print(" face", face.name, "witness ok:", face.witness.verify())
les = long_exact_sequence(oc.delta)
for label, f in les.maps:
    if not (f.source.is_zero() and f.target.is_zero()):
        print(f" {label}: {f.source} -> {f.target}")
