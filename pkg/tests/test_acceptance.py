"""Acceptance gate: nine criteria at exact equality, each under its time limit.

Each test records one PASS/FAIL line; ``conftest.py`` prints them at the end
of the session.  Running this file directly prints them as well.
"""

import time
from math import gcd

import numpy as np
import pytest

from dercat.complexes import ChainMap, Complex, HomComplex, induced_map, is_quasi_iso, null_homotopy, shift
from dercat.derivedcat import (
    Roof,
    compose_roofs,
    ext,
    ext_via_hom_d,
    hereditary_decompose,
    hom_d,
    identity_roof,
    is_zero_in_d,
    normal_form,
    roofs_equivalent,
    tor,
)
from dercat.dg import (
    adjunction_dims,
    check_dg_algebra,
    check_dg_module,
    dg_dual,
    evaluation_map,
    random_adjunction_pair,
    random_dg_algebra,
    random_dg_module,
    yoneda_check,
)
from dercat.exactalg import QQ, ZZ, FPModule
from dercat.homotopycat import hom_k
from dercat.laws.generate import InstanceGenSpec, case_rng, random_chain_map, random_complex, random_qis
from dercat.laws.report import canonical, run_law_suite
from dercat.laws.suites import SUITES
from dercat.triangle import cone, connecting_map, long_exact_sequence, octahedron
from dg_oracle import mutations, naive_violations

RESULTS = {}
SEED = 20240607


def record(n, ok, elapsed, limit, detail):
    ok = bool(ok) and elapsed < limit
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {limit}s) {detail}"
    print(RESULTS[n])
    return ok


def cyc(m):
    return FPModule(ZZ, (m,) if m != 1 else ())


def canon(M):
    return M.canonical()


def test_1_ext_tor_tables():
    start = time.perf_counter()
    bad = []
    for m in range(1, 13):
        for n in range(1, 13):
            A, B, g = cyc(m), cyc(n), canon(cyc(gcd(m, n)))
            for k in (0, 1):
                e, e2 = ext(A, B, k), ext_via_hom_d(A, B, k)
                if canon(e) != g or canon(e2) != canon(e):
                    bad.append(("ext", m, n, k))
            if canon(tor(A, B, 1)) != g:
                bad.append(("tor", m, n, 1))
            for k in (2, 3):
                if not (ext(A, B, k).is_zero() and ext_via_hom_d(A, B, k).is_zero()):
                    bad.append(("ext", m, n, k))
    elapsed = time.perf_counter() - start
    assert record(1, not bad, elapsed, 10, f"144 pairs, mismatches {bad[:3]}"), RESULTS[1]


def test_2_hom_complex_bridge():
    start = time.perf_counter()
    bad, count = [], 0
    for ring in (ZZ, QQ):
        spec = InstanceGenSpec(ring=ring, seed=SEED)
        for case in range(200):
            rng = case_rng(SEED, case, 102)
            X, Y = random_complex(rng, spec), random_complex(rng, spec)
            H = HomComplex(X, Y).complex
            degs = list(H.degrees) or [0]
            for n in range(degs[0] - 1, degs[-1] + 2):
                if canon(H.cohomology(n).group) != canon(hom_k(X, shift(Y, n)).group):
                    bad.append((ring.value, case, n))
            count += 1
    elapsed = time.perf_counter() - start
    assert record(2, not bad, elapsed, 60, f"{count} instances, mismatches {bad[:3]}"), RESULTS[2]


def test_3_long_exact_sequence():
    start = time.perf_counter()
    bad = []
    for case in range(200):
        ring = ZZ if case % 4 else QQ
        spec = InstanceGenSpec(ring=ring, seed=SEED)
        rng = case_rng(SEED, case, 103)
        X, Y = random_complex(rng, spec), random_complex(rng, spec)
        a = random_chain_map(rng, X, Y)
        _, T = cone(a)
        les = long_exact_sequence(T)
        if not (all(les.exact_at) and les.connecting_ok and all(les.connecting_ok.values())):
            bad.append(case)
        for n in range(min(X.lo, Y.lo) - 2, max(X.hi, Y.hi) + 2):
            if connecting_map(T, n) != induced_map(a, n + 1):
                bad.append((case, n))
    elapsed = time.perf_counter() - start
    assert record(3, not bad, elapsed, 60, f"200 cone triangles, failures {bad[:3]}"), RESULTS[3]


def _mult(k):
    X = Complex.concentrated(FPModule(ZZ, (0,)))
    return ChainMap(X, X, {0: np.array([[k]], dtype=object)})


def test_4_octahedron():
    start = time.perf_counter()
    bad = []
    for case in range(100):
        ring = ZZ if case % 4 else QQ
        spec = InstanceGenSpec(ring=ring, seed=SEED)
        rng = case_rng(SEED, case, 104)
        X, Y, Z = (random_complex(rng, spec) for _ in range(3))
        try:
            oc = octahedron(random_chain_map(rng, X, Y), random_chain_map(rng, Y, Z))
            ok = oc.verify() and len(oc.faces) == 6 and len(oc.certificates) == 4
        except ArithmeticError:
            ok = False
        if not ok:
            bad.append(case)
    oc = octahedron(_mult(2), _mult(3))
    groups = [canon(t.Z.cohomology(0).group) for t in (oc.alpha, oc.gamma, oc.beta)]
    les = long_exact_sequence(oc.delta)
    h0 = [(lab, f) for lab, f in les.maps if lab.startswith("H^0")]
    fixed = (oc.verify() and groups == [(0, (2,)), (0, (6,)), (0, (3,))] and les.exact
             and [canon(f.source) for _, f in h0] == [(0, (2,)), (0, (6,)), (0, (3,))]
             and all(canon(FPModule(ZZ, ())) == canon(M) for M in
                     (oc.delta.X.cohomology(-1).group, oc.delta.Z.cohomology(1).group)))
    elapsed = time.perf_counter() - start
    assert record(4, not bad and fixed, elapsed, 120,
                  f"100 pairs (failures {bad[:3]}), (x2, x3) gives 0->Z/2->Z/6->Z/3->0: {fixed}"), RESULTS[4]


def test_5_roof_calculus():
    start = time.perf_counter()
    bad = []
    for case in range(100):
        spec = InstanceGenSpec(seed=SEED)
        rng = case_rng(SEED, case, 105)
        X, Y, W, V = (random_complex(rng, spec) for _ in range(4))

        def rand_roof(A, B):
            s = random_qis(rng, spec, B)
            return Roof(random_chain_map(rng, A, s.target), s)

        def expand(r):
            # (alpha, sigma) ~ (t alpha, t sigma) for a qis t out of the middle object
            t = random_qis(rng, spec, r.mid)
            return Roof(t @ r.alpha, t @ r.sigma)

        r1, r2, r3 = rand_roof(X, Y), rand_roof(Y, W), rand_roof(W, V)
        unit = (roofs_equivalent(compose_roofs(identity_roof(X), r1), r1)
                and roofs_equivalent(compose_roofs(r1, identity_roof(Y)), r1))
        assoc = roofs_equivalent(compose_roofs(compose_roofs(r1, r2), r3),
                                 compose_roofs(r1, compose_roofs(r2, r3)))
        e1, e2 = expand(r1), hom_d(Y, W).to_roof(normal_form(r2))
        congr = (roofs_equivalent(e1, r1) and roofs_equivalent(e2, r2)
                 and roofs_equivalent(compose_roofs(e1, e2), compose_roofs(r1, r2)))
        H = hom_d(X, Y)
        c = normal_form(r1)
        trip = H.group.is_zero_element(normal_form(H.to_roof(c)) - c)
        if not (unit and assoc and congr and trip):
            bad.append((case, unit, assoc, congr, trip))
    elapsed = time.perf_counter() - start
    assert record(5, not bad, elapsed, 60, f"100 triples, failures {bad[:3]}"), RESULTS[5]


def test_6_hereditary_decomposition():
    start = time.perf_counter()
    bad = []
    for case in range(100):
        X = random_complex(case_rng(SEED, case, 106), InstanceGenSpec(seed=SEED))
        H, r = hereditary_decompose(X)
        zero_d = all(not H.d(n).matrix.any() for n in H.degrees if H.d(n).matrix.size)
        iso = all(canon(H[n]) == canon(X.cohomology(n).group)
                  for n in range(X.lo - 1, X.hi + 2))
        if not (is_quasi_iso(r.alpha) and is_quasi_iso(r.sigma) and zero_d and iso):
            bad.append(case)
    elapsed = time.perf_counter() - start
    assert record(6, not bad, elapsed, 60, f"100 complexes over Z, failures {bad[:3]}"), RESULTS[6]


def test_7_k_versus_d_witness():
    start = time.perf_counter()
    Z = FPModule(ZZ, (0,))
    W = Complex(ZZ, -1, [Z, Z, cyc(2)], [np.array([[2]], dtype=object), np.array([[1]], dtype=object)])
    ident = ChainMap.identity(W)
    acyclic = W.is_acyclic()
    not_null = null_homotopy(ident) is None
    zero_d = is_zero_in_d(ident).is_zero
    elapsed = time.perf_counter() - start
    assert record(7, acyclic and not_null and zero_d, elapsed, 1,
                  f"acyclic={acyclic} not_null_homotopic={not_null} zero_in_D={zero_d}"), RESULTS[7]


def test_8_dg_axioms():
    start = time.perf_counter()
    bad, muts, breaking = [], 0, 0
    for case in range(50):
        A = random_dg_algebra(np.random.default_rng([SEED, case, 108]))
        if not check_dg_algebra(A).valid:
            bad.append(("valid", case))
        for _, B in mutations(A):
            muts += 1
            got, want = check_dg_algebra(B).locations(), naive_violations(B)
            breaking += bool(want)
            if got != want:
                bad.append(("mutation", case))
    for case in range(50):
        rng = np.random.default_rng([SEED, case, 208])
        _, X = random_dg_module(rng)
        D = dg_dual(X)
        if not (check_dg_module(D).valid and evaluation_map(X).verify()):
            bad.append(("biduality", case))
        P, Q = random_adjunction_pair(rng)
        a, b = adjunction_dims(P, Q)
        if a != b:
            bad.append(("adjunction", case))
    for case in range(50):
        A, X = random_dg_module(np.random.default_rng([SEED, case, 308]))
        dk, d0, iso = yoneda_check(A, X)
        if not (dk == d0 and iso):
            bad.append(("yoneda", case))
    elapsed = time.perf_counter() - start
    assert record(8, not bad, elapsed, 60,
                  f"50 algebras, {muts} mutations ({breaking} breaking) all located, "
                  f"50 duals/adjunctions, 50 Yoneda pairs; failures {bad[:3]}"), RESULTS[8]


def test_9_determinism():
    start = time.perf_counter()
    bad = []
    for name in SUITES:
        for ring in (ZZ, QQ):
            spec = InstanceGenSpec(ring=ring, seed=SEED, count=6)
            first = canonical(run_law_suite(name, spec))
            again = canonical(run_law_suite(name, spec))
            threaded = canonical(run_law_suite(name, spec, threads=4))
            if not (first == again == threaded):
                bad.append((name, ring.value))
    elapsed = time.perf_counter() - start
    assert record(9, not bad, elapsed, 300,
                  f"{len(SUITES)} suites x 2 rings, 1 vs 1 vs 4 threads; differing {bad[:3]}"), RESULTS[9]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
