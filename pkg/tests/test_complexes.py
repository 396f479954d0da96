import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dercat.complexes import (
    ChainMap,
    Complex,
    HomComplex,
    homotopy_between,
    is_quasi_iso,
    null_homotopy,
    shift,
    shift_map,
    truncate,
)
from dercat.exactalg import QQ, ZZ, FPModule
from dercat.homotopycat import hom_k
from dercat.laws.generate import InstanceGenSpec, case_rng, random_chain_map, random_complex

Z = FPModule(ZZ, (0,))


def two_complex():
    return Complex(ZZ, 0, [Z, Z], [np.array([[2]], dtype=object)])


def test_cohomology_of_multiplication_by_two():
    X = two_complex()
    assert X.cohomology(0).group.is_zero()
    assert X.cohomology(1).group.canonical() == (0, (2,))


def test_rejects_nonzero_square():
    with pytest.raises(ValueError):
        Complex(ZZ, 0, [Z, Z, Z], [np.array([[1]], dtype=object), np.array([[1]], dtype=object)])


def test_zero_ends_are_trimmed():
    X = Complex(ZZ, -3, [FPModule.zero(ZZ), Z, FPModule.zero(ZZ)])
    assert X.lo == -2 and X.hi == -2
    assert X == Complex.concentrated(Z, -2)


def test_shift_convention():
    X = two_complex()
    S = shift(X, 1)
    assert S.lo == -1
    assert S.d(-1).matrix[0, 0] == -2
    assert S.cohomology(0).group.canonical() == (0, (2,))
    assert shift(shift(X, 1), -1) == X


def test_identity_of_contractible_complex_is_null_homotopic():
    C = Complex(ZZ, 0, [Z, Z], [np.array([[1]], dtype=object)])
    h = null_homotopy(ChainMap.identity(C))
    assert h is not None and h.verify()
    assert C.is_acyclic()


def test_identity_of_two_complex_is_not_null_homotopic():
    X = two_complex()
    assert null_homotopy(ChainMap.identity(X)) is None
    assert hom_k(X, X).group.canonical() == (0, (2,))


def test_chain_map_condition_is_enforced():
    X = two_complex()
    with pytest.raises(ValueError):
        ChainMap(X, X, {0: np.array([[1]], dtype=object)})


def test_quasi_iso_detection():
    X = two_complex()
    Z2 = Complex.concentrated(FPModule(ZZ, (2,)), 1)
    pi = ChainMap(X, Z2, {1: np.array([[1]], dtype=object)})
    assert is_quasi_iso(pi)
    assert not is_quasi_iso(ChainMap.zero(X, Z2))


def test_truncation_keeps_lower_cohomology():
    X = two_complex()
    T, inc = truncate(X, 0)
    assert T.cohomology(0).group == X.cohomology(0).group


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([ZZ, QQ]))
def test_hom_complex_cohomology_matches_hom_k(seed, ring):
    spec = InstanceGenSpec(ring=ring)
    rng = case_rng(seed, 0)
    X, Y = random_complex(rng, spec), random_complex(rng, spec)
    H = HomComplex(X, Y).complex
    for n in range(-2, 3):
        assert H.cohomology(n).group.canonical() == hom_k(X, shift(Y, n)).group.canonical()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_perturbing_by_a_boundary_stays_homotopic(seed):
    spec = InstanceGenSpec()
    rng = case_rng(seed, 1)
    X, Y = random_complex(rng, spec), random_complex(rng, spec)
    f = random_chain_map(rng, X, Y)
    H = HomComplex(X, Y)
    coords = [int(rng.integers(-2, 3)) for _ in range(H.complex[-1].ngens)]
    rho = H.to_graded_map(-1, coords)
    g = f + ChainMap.from_graded(Y.differential() @ rho + rho @ X.differential())
    h = homotopy_between(g, f)
    assert h is not None and h.verify()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_shift_is_a_functor_on_maps(seed):
    spec = InstanceGenSpec()
    rng = case_rng(seed, 2)
    X, Y, W = (random_complex(rng, spec) for _ in range(3))
    f, g = random_chain_map(rng, X, Y), random_chain_map(rng, Y, W)
    for k in (-1, 1, 2):
        assert shift_map(g @ f, k) == shift_map(g, k) @ shift_map(f, k)
        assert ChainMap.from_graded(shift_map(f, k))  # still a chain map
