"""Exact computational homological algebra over ZZ and QQ."""

from .complexes import (
    ChainMap,
    Complex,
    GradedMap,
    HomComplex,
    Homotopy,
    cohomology,
    hom_complex,
    homotopy_between,
    is_null_homotopic,
    is_quasi_iso,
    null_homotopy,
    shift,
    shift_map,
)
from .derivedcat import (
    Roof,
    compose_roofs,
    ext,
    hereditary_decompose,
    hom_d,
    is_zero_in_d,
    normal_form,
    proj_resolve,
    roof_from_map,
    roofs_equivalent,
    tor,
    triangle_from_ses,
)
from .dg import (
    DGAlgebra,
    DGMap,
    DGModule,
    check_dg_algebra,
    check_dg_module,
    dg_dual,
    end_complex_as_dga,
    opposite_algebra,
)
from .exactalg import QQ, ZZ, FPModule, ModuleMap, Ring
from .homotopycat import hom_k, weak_kernel
from .triangle import (
    Triangle,
    certify_exact,
    cone,
    fill_tr3,
    homotopy_pushout,
    long_exact_sequence,
    octahedron,
    rotate,
    tr4_double_prime,
    tr4_prime,
)

__version__ = "0.1.0"
