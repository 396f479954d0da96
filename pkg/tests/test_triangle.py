import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dercat.complexes import ChainMap, Complex, induced_map, shift
from dercat.exactalg import QQ, ZZ, FPModule
from dercat.laws.generate import InstanceGenSpec, case_rng, random_chain_map, random_complex
from dercat.triangle import (
    Triangle,
    certify_exact,
    cone,
    connecting_map,
    direct_sum_triangle,
    fill_tr3,
    homotopy_pushout,
    long_exact_sequence,
    octahedron,
    rotate,
    tr4_double_prime,
    tr4_prime,
)

Z = FPModule(ZZ, (0,))


def mult(k):
    X = Complex.concentrated(Z)
    return ChainMap(X, X, {0: np.array([[k]], dtype=object)})


def random_map(seed, ring=ZZ, salt=0):
    spec = InstanceGenSpec(ring=ring)
    rng = case_rng(seed, salt)
    X, Y = random_complex(rng, spec), random_complex(rng, spec)
    return random_chain_map(rng, X, Y)


def test_cone_of_two_has_cohomology_z2():
    C, T = cone(mult(2))
    assert C.lo == -1 and C.hi == 0
    assert C.cohomology(0).group.canonical() == (0, (2,))
    assert T.is_cone_form()
    cert = certify_exact(T)
    assert cert is not None and cert.verify()


def test_non_exact_triangle_is_rejected():
    # Z -2-> Z -> Z/2 -0-> Sigma Z is not exact in K
    X = Complex.concentrated(Z)
    Z2 = Complex.concentrated(FPModule(ZZ, (2,)))
    p = ChainMap(X, Z2, {0: np.array([[1]], dtype=object)})
    T = Triangle(mult(2), p, ChainMap.zero(Z2, shift(X, 1)))
    assert certify_exact(T) is None


def test_triangle_with_wrong_third_map_is_rejected():
    _, T = cone(mult(2))
    bad = Triangle(T.a, T.b, ChainMap.zero(T.c.source, T.c.target))
    assert certify_exact(bad) is None


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([ZZ, QQ]))
def test_rotations_and_sums_certify(seed, ring):
    f = random_map(seed, ring)
    _, T = cone(f)
    R = rotate(T)
    for tri in (R, rotate(R), rotate(rotate(R)), direct_sum_triangle(T, R)):
        cert = certify_exact(tri)
        assert cert is not None and cert.verify()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([ZZ, QQ]))
def test_les_exact_and_connecting_map(seed, ring):
    f = random_map(seed, ring)
    _, T = cone(f)
    les = long_exact_sequence(T)
    assert les.exact
    for n in range(-3, 3):
        assert connecting_map(T, n) == induced_map(f, n + 1)


def test_two_three_octahedron():
    oc = octahedron(mult(2), mult(3))
    assert oc.verify()
    assert [c.cohomology(0).group.canonical() for c in (oc.alpha.Z, oc.gamma.Z, oc.beta.Z)] == \
        [(0, (2,)), (0, (6,)), (0, (3,))]
    les = long_exact_sequence(oc.delta)
    assert les.exact
    groups = [str(f.source) for label, f in les.maps if label.startswith("H^0")]
    assert groups == ["Z/2", "Z/6", "Z/3"]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_octahedron_on_random_pairs(seed):
    spec = InstanceGenSpec()
    rng = case_rng(seed, 5)
    X, Y, W = (random_complex(rng, spec) for _ in range(3))
    oc = octahedron(random_chain_map(rng, X, Y), random_chain_map(rng, Y, W))
    assert oc.verify()


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tr3_fill_and_pushouts(seed):
    spec = InstanceGenSpec()
    rng = case_rng(seed, 6)
    X, Y, Xp = (random_complex(rng, spec) for _ in range(3))
    a, g = random_chain_map(rng, X, Y), random_chain_map(rng, X, Xp)
    sq = homotopy_pushout(a, g)
    assert sq.verify() and sq.flip().verify()
    _, T = cone(a)
    _, T2 = cone(sq.b2)
    assert fill_tr3(T, T2, g, sq.b1, sq.commutes).verify()
    assert tr4_prime(a, g).verify()
    assert tr4_double_prime(homotopy_pushout(g, a).flip(), T).verify()


def test_fill_tr3_rejects_bad_square():
    _, T = cone(mult(2))
    sq = homotopy_pushout(mult(2), mult(3))
    with pytest.raises(ValueError):
        fill_tr3(T, T, mult(1), mult(1), sq.commutes)
