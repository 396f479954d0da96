from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dercat.complexes import Complex, shift
from dercat.dg import (
    DGAlgebra,
    DGHomComplex,
    adjunction_dims,
    algebra_from_record,
    algebra_to_record,
    check_dg_algebra,
    check_dg_module,
    dg_dual,
    dga_cohomology,
    end_category,
    end_complex_as_dga,
    evaluation_map,
    exterior_algebra,
    free_module,
    opposite_algebra,
    random_adjunction_pair,
    random_dg_algebra,
    random_dg_module,
    random_ground_complex,
    transport_homotopy,
    yoneda_check,
)
from dercat.exactalg import QQ, ZZ, FPModule
from dercat.homotopycat import hom_k
from dg_oracle import mutations, naive_violations

Q1 = FPModule(QQ, (0,))
seeds = st.integers(0, 10 ** 6)


def rng_for(seed):
    return np.random.default_rng(seed)


def test_exterior_algebra_is_valid():
    assert check_dg_algebra(exterior_algebra(1)).valid


def test_contractible_exterior_algebra():
    # d(x) = 1 forces |x| = -1 under a degree +1 differential
    assert check_dg_algebra(exterior_algebra(-1, 1)).valid
    report = check_dg_algebra(exterior_algebra(1, 1))
    assert not report.valid
    assert {a for a, _ in report.locations()} == {"grading"}


def test_associativity_fault_names_the_triple():
    A = end_complex_as_dga(Complex.concentrated(FPModule(QQ, (0, 0))))
    m = A.mult.copy()
    m[1, 2, 3] += 1  # one extra term in a single product of matrix units
    bad = DGAlgebra(A.degrees, m, A.diff, A.unit)
    report = check_dg_algebra(bad)
    assert report.locations() == naive_violations(bad)
    triples = {loc for axiom, loc in report.locations() if axiom == "associativity"}
    assert triples and all(len(t) == 3 for t in triples)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_random_algebras_and_opposites_are_valid(seed):
    A = random_dg_algebra(rng_for(seed))
    assert check_dg_algebra(A).valid
    assert check_dg_algebra(opposite_algebra(A)).valid
    assert naive_violations(A) == set()


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_mutations_match_the_naive_oracle(seed):
    A = random_dg_algebra(rng_for(seed))
    for _, B in mutations(A):
        assert check_dg_algebra(B).locations() == naive_violations(B)


def test_end_of_a_point():
    A = end_complex_as_dga(Complex.concentrated(Q1))
    assert A.dim == 1 and A.degrees == (0,)
    assert check_dg_algebra(A).valid


def test_end_of_a_contractible_complex():
    C = Complex(QQ, 0, [Q1, Q1], [np.array([[1]], dtype=object)])
    A = end_complex_as_dga(C)
    assert check_dg_algebra(A).valid
    assert A.degrees.count(0) == 2
    # the complex is contractible, so every H^n End vanishes, H^0 included
    assert all(dga_cohomology(A, n) == 0 for n in range(-2, 3))


def test_end_rejects_integers():
    with pytest.raises(ValueError):
        end_complex_as_dga(Complex.concentrated(FPModule(ZZ, (0,))))


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_end_cohomology_is_hom_k(seed):
    X = random_ground_complex(rng_for(seed), 3)
    A = end_complex_as_dga(X)
    for n in range(-2, 3):
        assert dga_cohomology(A, n) == hom_k(X, shift(X, n)).group.ngens


def test_end_category_is_valid():
    P = Complex.concentrated(Q1, 0)
    R = Complex.concentrated(Q1, 1)
    A = end_category([P, R], ["P", "R"])
    assert check_dg_algebra(A).valid
    assert A.dim == 4


def test_dual_of_rank_one_free_module():
    F = free_module(end_complex_as_dga(Complex.concentrated(Q1)))
    D = dg_dual(F)
    assert D.degrees == (0,)
    assert check_dg_module(D).valid


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_biduality(seed):
    _, X = random_dg_module(rng_for(seed))
    assert check_dg_module(X).valid
    D = dg_dual(X)
    assert check_dg_module(D).valid
    ev = evaluation_map(X)
    assert ev.verify()
    assert ev.matrix.shape[0] == ev.matrix.shape[1]


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_adjunction_dimensions(seed):
    X, Y = random_adjunction_pair(rng_for(seed))
    a, b = adjunction_dims(X, Y)
    assert a == b


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_adjunction_transports_homotopies(seed):
    rng = rng_for(seed)
    X, Y = random_adjunction_pair(rng)
    from dercat.dg import _retarget

    DY = _retarget(dg_dual(Y), X.algebra)
    H = DGHomComplex(X, DY)
    for k in (0, 1):
        basis = H.basis.get(k - 1, [])
        if not basis:
            continue
        coeffs = [Fraction(int(rng.integers(-2, 3))) for _ in basis]
        rho = sum((c * b for c, b in zip(coeffs, basis)), np.zeros_like(basis[0]))
        assert transport_homotopy(X, Y, rho, k) is not None


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_yoneda_at_h0(seed):
    A, X = random_dg_module(rng_for(seed))
    dimk, dim0, iso = yoneda_check(A, X)
    assert dimk == dim0 and iso


def test_algebra_record_round_trip():
    A = random_dg_algebra(rng_for(3))
    B = algebra_from_record(algebra_to_record(A))
    assert B.degrees == A.degrees
    assert (B.mult == A.mult).all() and (B.diff == A.diff).all() and (B.unit == A.unit).all()
    assert B.objects == A.objects
