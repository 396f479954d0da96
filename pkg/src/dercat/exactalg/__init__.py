"""Exact linear algebra over ZZ and QQ."""

from .linalg import (
    Ring,
    SmithForm,
    block,
    block_diag,
    column,
    determinant,
    identity,
    invariant_factors,
    is_zero,
    kernel,
    lattice_basis,
    matrix,
    rank,
    smith_normal_form,
    solve,
    zeros,
)
from .modules import (
    Cokernel,
    FPModule,
    HomModule,
    Image,
    Kernel,
    ModuleMap,
    Presentation,
    Subquotient,
    TensorModule,
    describe,
    direct_sum_map,
    hom_module,
    is_exact_at,
    is_injective,
    is_isomorphism,
    is_surjective,
    kernel_image_cokernel,
    present,
    solve_linear,
    tensor_maps,
    tensor_module,
    tensor_presented,
)

ZZ = Ring.ZZ
QQ = Ring.QQ
