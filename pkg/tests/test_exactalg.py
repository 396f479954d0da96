from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dercat.exactalg import (
    QQ,
    ZZ,
    Cokernel,
    FPModule,
    HomModule,
    Kernel,
    ModuleMap,
    determinant,
    is_exact_at,
    is_injective,
    is_surjective,
    kernel,
    smith_normal_form,
    solve,
    tensor_module,
)

small = st.integers(-6, 6)


def int_matrix(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def minors_gcd(m, k):
    """gcd of all k x k minors, computed by brute force."""
    rows, cols = m.shape
    g = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            g = gcd(g, int(determinant(m[np.ix_(rs, cs)], ZZ)))
    return g


@settings(max_examples=60, deadline=None)
@given(int_matrix())
def test_smith_form_matches_minor_gcds(rows):
    m = np.array(rows, dtype=object)
    snf = smith_normal_form(m, ZZ)
    assert ((snf.u @ m @ snf.v) == snf.d).all()
    assert ((snf.u @ snf.u_inv) == np.eye(m.shape[0], dtype=object)).all()
    assert abs(determinant(snf.u, ZZ)) == 1 and abs(determinant(snf.v, ZZ)) == 1
    diag = snf.diagonal
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    prod = 1
    for k, d in enumerate(diag, start=1):
        prod *= d
        assert abs(prod) == minors_gcd(m, k)


@settings(max_examples=60, deadline=None)
@given(int_matrix(), st.lists(small, min_size=4, max_size=4))
def test_solve_and_kernel_over_z(rows, xs):
    a = np.array(rows, dtype=object)
    x = np.array(xs[:a.shape[1]], dtype=object)
    b = a @ x
    sol = solve(a, b, ZZ)
    assert sol is not None and ((a @ sol) == b).all()
    K = kernel(a, ZZ)
    assert K.shape[1] == a.shape[1] - np.linalg.matrix_rank(a.astype(float))
    assert not (a @ K).any()


def test_solve_reports_infeasibility():
    a = np.array([[2]], dtype=object)
    assert solve(a, [1], ZZ) is None
    assert solve(a, [1], QQ) == [Fraction(1, 2)]
    # 2x = 1 mod 3 is solvable, 2x = 1 mod 4 is not
    assert solve(a, [1], ZZ, moduli=[3]) is not None
    assert solve(a, [1], ZZ, moduli=[4]) is None


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 9) for n in range(1, 9)])
def test_hom_and_tensor_of_cyclics(m, n):
    A, B = FPModule.cyclic(m), FPModule.cyclic(n)
    g = gcd(m, n)
    assert HomModule(A, B).module.canonical() == FPModule.cyclic(g).canonical()
    assert tensor_module(A, B).canonical() == FPModule.cyclic(g).canonical()


def test_hom_with_free_parts():
    Z = FPModule(ZZ, (0,))
    assert HomModule(FPModule.cyclic(4), Z).module.is_zero()
    assert HomModule(Z, FPModule.cyclic(4)).module.canonical() == (0, (4,))
    assert HomModule(Z, Z).module.canonical() == (1, ())


def test_canonical_form_merges_coprime_torsion():
    assert FPModule(ZZ, (2, 3)).canonical() == (0, (6,))
    assert FPModule(ZZ, (2, 4, 0)).canonical() == (1, (2, 4))
    assert str(FPModule(ZZ, (0, 0, 2))) == "Z^2 + Z/2"


def test_rejects_bad_moduli():
    with pytest.raises(ValueError):
        FPModule(ZZ, (1,))
    with pytest.raises(ValueError):
        FPModule(QQ, (2,))


def test_multiplication_sequence_is_exact():
    Z = FPModule(ZZ, (0,))
    Z2 = FPModule(ZZ, (2,))
    two = ModuleMap(Z, Z, np.array([[2]], dtype=object))
    pi = ModuleMap(Z, Z2, np.array([[1]], dtype=object))
    assert is_injective(two) and is_surjective(pi) and is_exact_at(two, pi)
    assert Cokernel(two).module.canonical() == (0, (2,))
    assert Kernel(pi).module.canonical() == (1, ())


def test_kernel_and_cokernel_of_torsion_map():
    # Z/4 --2--> Z/4 : kernel Z/2, cokernel Z/2
    Z4 = FPModule(ZZ, (4,))
    f = ModuleMap(Z4, Z4, np.array([[2]], dtype=object))
    assert Kernel(f).module.canonical() == (0, (2,))
    assert Cokernel(f).module.canonical() == (0, (2,))
    K = Kernel(f)
    assert (f @ K.inclusion).is_zero()


def test_module_map_checks_well_definedness():
    Z2, Z4 = FPModule(ZZ, (2,)), FPModule(ZZ, (4,))
    with pytest.raises(ValueError):
        ModuleMap(Z2, Z4, np.array([[1]], dtype=object))
    ModuleMap(Z2, Z4, np.array([[2]], dtype=object))
