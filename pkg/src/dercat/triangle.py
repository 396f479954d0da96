"""Mapping cones and exact triangles in the homotopy category.

A triangle ``X -a-> Y -b-> Z -c-> Sigma X`` counts as exact once it carries an
:class:`ExactnessCertificate`: an isomorphism in K from the mapping cone
sequence of ``a``, together with every homotopy needed to check it by matrix
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .complexes import (
    ChainMap,
    Complex,
    GradedMap,
    Homotopy,
    column_map,
    combined_window,
    direct_sum,
    homotopy_between,
    induced_map,
    null_homotopy,
    shift,
    shift_cohomology_iso,
    shift_map,
    sum_inclusion,
    sum_projection,
)
from .exactalg.linalg import block, block_diag, identity, zeros
from .exactalg.modules import ModuleMap, is_exact_at
from .linsys import MapSystem


# ---------------------------------------------------------------------------
# Mapping cones.


@dataclass(frozen=True, eq=False)
class Cone:
    """``cone(a)`` with its structure maps.

    ``ix`` (degree -1) and ``px`` (degree +1) are the graded inclusion and
    projection of the ``X^{n+1}`` summand; ``iy``/``py`` those of ``Y^n``.
    """

    a: ChainMap
    C: Complex
    incl: ChainMap
    proj: ChainMap
    ix: GradedMap
    px: GradedMap
    iy: GradedMap
    py: GradedMap


def _cone(a: ChainMap) -> Cone:
    X, Y, ring = a.source, a.target, a.ring
    sx = shift(X, 1)
    window = combined_window(sx, Y)
    mods = [X[n + 1] + Y[n] for n in window]
    diffs = []
    for n in list(window)[:-1]:
        m = block([[(-X.d(n + 1)).matrix, zeros(X[n + 2].ngens, Y[n].ngens, ring)],
                   [a[n + 1].matrix, Y.d(n).matrix]], ring)
        diffs.append(m)
    C = Complex(ring, window.start if window else 0, mods, diffs, check=False)
    ix, px, iy, py = {}, {}, {}, {}
    for n in window:
        gx, gy = X[n + 1].ngens, Y[n].ngens
        ix[n + 1] = np.concatenate([identity(gx, ring), zeros(gy, gx, ring)], axis=0)
        px[n] = np.concatenate([identity(gx, ring), zeros(gx, gy, ring)], axis=1)
        iy[n] = np.concatenate([zeros(gx, gy, ring), identity(gy, ring)], axis=0)
        py[n] = np.concatenate([zeros(gy, gx, ring), identity(gy, ring)], axis=1)
    incl = ChainMap(Y, C, iy, check=False)
    proj = ChainMap(C, sx, {n: -ModuleMap(C[n], sx[n], m) for n, m in px.items()}, check=False)
    return Cone(a, C, incl, proj,
                GradedMap(X, C, -1, ix), GradedMap(C, X, 1, px),
                GradedMap(Y, C, 0, iy), GradedMap(C, Y, 0, py))


_CONES: Dict[int, Cone] = {}


def cone_data(a: ChainMap) -> Cone:
    """Memoized :func:`_cone` keyed by object identity (maps are immutable)."""
    c = _CONES.get(id(a))
    if c is None or c.a is not a:
        c = _cone(a)
        if len(_CONES) > 4096:
            _CONES.clear()
        _CONES[id(a)] = c
    return c


# ---------------------------------------------------------------------------
# Triangles and certificates.


@dataclass(frozen=True, eq=False)
class Triangle:
    """A candidate triangle ``X -a-> Y -b-> Z -c-> Sigma X``."""

    a: ChainMap
    b: ChainMap
    c: ChainMap

    def __post_init__(self):
        if self.a.target != self.b.source or self.b.target != self.c.source:
            raise ValueError("triangle maps are not composable")
        if self.c.target != shift(self.a.source, 1):
            raise ValueError("third map must land in Sigma X")

    @property
    def X(self) -> Complex:
        return self.a.source

    @property
    def Y(self) -> Complex:
        return self.a.target

    @property
    def Z(self) -> Complex:
        return self.b.target

    def is_cone_form(self) -> bool:
        cd = cone_data(self.a)
        return (self.Z == cd.C and self.b == cd.incl and self.c == cd.proj)


@dataclass(frozen=True, eq=False)
class ExactnessCertificate:
    """Witnesses that ``(id, id, theta)`` is an isomorphism from ``cone(a)``'s sequence.

    ``h`` null-homotopes ``b o a`` and defines ``theta = (h, b)``;
    ``theta_inv`` is a homotopy inverse with ``h1: theta theta_inv ~ id_Z`` and
    ``h2: theta_inv theta ~ id_cone``; ``g: c theta ~ proj``.
    """

    triangle: Triangle
    h: Homotopy
    theta: ChainMap
    theta_inv: ChainMap
    h1: Homotopy
    h2: Homotopy
    g: Homotopy

    def verify(self) -> bool:
        T = self.triangle
        cd = cone_data(T.a)
        ok = self.h.verify() and self.h1.verify() and self.h2.verify() and self.g.verify()
        ok = ok and self.h.from_map == T.b @ T.a and self.h.to_map.is_zero()
        ok = ok and self.theta.source == cd.C and self.theta.target == T.Z
        ok = ok and self.theta @ cd.incl == T.b
        ok = ok and (self.h1.from_map == self.theta @ self.theta_inv
                     and self.h1.to_map == ChainMap.identity(T.Z))
        ok = ok and (self.h2.from_map == self.theta_inv @ self.theta
                     and self.h2.to_map == ChainMap.identity(cd.C))
        ok = ok and self.g.from_map == T.c @ self.theta and self.g.to_map == cd.proj
        return bool(ok)


def _zero_homotopy(f: ChainMap) -> Homotopy:
    return Homotopy(f, f, GradedMap(f.source, f.target, -1, {}))


def cone(a: ChainMap) -> Tuple[Complex, Triangle]:
    """``cone(a)`` and its mapping cone sequence."""
    cd = cone_data(a)
    return cd.C, Triangle(a, cd.incl, cd.proj)


def _cone_certificate(T: Triangle) -> ExactnessCertificate:
    cd = cone_data(T.a)
    idc = ChainMap.identity(cd.C)
    h = Homotopy(T.b @ T.a, ChainMap.zero(T.X, T.Z), cd.ix)
    return ExactnessCertificate(T, h, idc, idc, _zero_homotopy(idc), _zero_homotopy(idc),
                                _zero_homotopy(cd.proj))


def certify_exact(T: Triangle) -> Optional[ExactnessCertificate]:
    """Certificate of exactness, or ``None`` when the triangle is not exact in K.

    The family of comparison maps ``theta = (h, b)`` is affine in ``h``; the
    conditions on ``h`` and on ``g`` are one linear system.  If it is
    solvable, ``theta`` is a morphism of triangles from the cone sequence,
    and when ``T`` is exact every such morphism is an isomorphism, so the
    second system (homotopy inverse) decides exactness.
    """
    if T.is_cone_form():
        return _cone_certificate(T)
    cd = cone_data(T.a)
    X, Z, C = T.X, T.Z, cd.C
    sx = T.c.target
    ba = T.b @ T.a
    s1 = MapSystem(T.a.ring)
    h = s1.unknown(X, Z, -1)
    g = s1.unknown(C, sx, -1)
    s1.equation([(1, Z.differential(), h, None), (1, None, h, X.differential())], ba)
    s1.equation([(1, T.c, h, cd.px), (-1, sx.differential(), g, None), (-1, None, g, C.differential())],
                cd.proj - T.c @ T.b @ cd.py)
    sol = s1.solve()
    if sol is None:
        return None
    hmap = sol[h]
    theta = ChainMap(C, Z, (hmap @ cd.px + T.b @ cd.py).components)
    s2 = MapSystem(T.a.ring)
    tinv = s2.unknown(Z, C, 0)
    h1 = s2.unknown(Z, Z, -1)
    h2 = s2.unknown(C, C, -1)
    s2.equation([(1, C.differential(), tinv, None), (-1, None, tinv, Z.differential())],
                GradedMap(Z, C, 1, {}))
    s2.equation([(1, theta, tinv, None), (-1, Z.differential(), h1, None), (-1, None, h1, Z.differential())],
                ChainMap.identity(Z))
    s2.equation([(1, None, tinv, theta), (-1, C.differential(), h2, None), (-1, None, h2, C.differential())],
                ChainMap.identity(C))
    sol2 = s2.solve()
    if sol2 is None:
        return None
    ti = ChainMap(Z, C, sol2[tinv].components)
    cert = ExactnessCertificate(
        T,
        Homotopy(ba, ChainMap.zero(X, Z), hmap),
        theta,
        ti,
        Homotopy(theta @ ti, ChainMap.identity(Z), sol2[h1]),
        Homotopy(ti @ theta, ChainMap.identity(C), sol2[h2]),
        Homotopy(T.c @ theta, cd.proj, sol[g]),
    )
    assert cert.verify()
    return cert


def rotate(T: Triangle) -> Triangle:
    """``(b, c, -Sigma a)``."""
    return Triangle(T.b, T.c, -shift_map(T.a, 1))


def direct_sum_triangle(T1: Triangle, T2: Triangle) -> Triangle:
    from .complexes import sum_of_maps

    a = sum_of_maps([T1.a, T2.a])
    b = sum_of_maps([T1.b, T2.b])
    c0 = sum_of_maps([T1.c, T2.c])
    sx = shift(a.source, 1)
    c = ChainMap(c0.source, sx, c0.components, check=False)
    return Triangle(a, b, c)


# ---------------------------------------------------------------------------
# (TR3).


@dataclass(frozen=True, eq=False)
class TriangleMorphism:
    """``(f1, f2, f3)`` with homotopies for the three squares."""

    source: Triangle
    target: Triangle
    f1: ChainMap
    f2: ChainMap
    f3: ChainMap
    square1: Homotopy
    square2: Homotopy
    square3: Homotopy

    def verify(self) -> bool:
        S, T = self.source, self.target
        return (self.square1.verify() and self.square2.verify() and self.square3.verify()
                and self.square1.from_map == self.f2 @ S.a and self.square1.to_map == T.a @ self.f1
                and self.square2.from_map == self.f3 @ S.b and self.square2.to_map == T.b @ self.f2
                and self.square3.from_map == shift_map(self.f1, 1) @ S.c
                and self.square3.to_map == T.c @ self.f3)


def _witness(f: ChainMap, g: ChainMap) -> Homotopy:
    h = homotopy_between(f, g)
    if h is None:
        raise ArithmeticError("expected homotopy does not exist")
    return h


def fill_tr3(T: Triangle, T2: Triangle, f1: ChainMap, f2: ChainMap, h: Homotopy,
             cert: Optional[ExactnessCertificate] = None,
             cert2: Optional[ExactnessCertificate] = None) -> TriangleMorphism:
    """Complete ``(f1, f2)`` to a morphism of exact triangles.

    On cone sequences ``f3 = [[f1^{n+1}, 0], [h^{n+1}, f2^n]]``; other
    triangles are conjugated through their certificates.
    """
    cert = cert or certify_exact(T)
    cert2 = cert2 or certify_exact(T2)
    if cert is None or cert2 is None:
        raise ValueError("both triangles must be certified exact")
    if not (h.from_map == f2 @ T.a and h.to_map == T2.a @ f1 and h.verify()):
        raise ValueError("h must witness f2 o a ~ a' o f1")
    cd, cd2 = cone_data(T.a), cone_data(T2.a)
    comps = {}
    for n in cd.C.degrees:
        comps[n] = block([[f1[n + 1].matrix, zeros(f1.target[n + 1].ngens, f2.source[n].ngens, f1.ring)],
                          [h.rho[n + 1].matrix, f2[n].matrix]], f1.ring)
    f3_cone = ChainMap(cd.C, cd2.C, comps)
    if T.is_cone_form() and T2.is_cone_form():
        f3 = f3_cone
        sq2 = _zero_homotopy(f3 @ T.b)
        sq3 = _zero_homotopy(shift_map(f1, 1) @ T.c)
        return TriangleMorphism(T, T2, f1, f2, f3, h, sq2, sq3)
    f3 = cert2.theta @ f3_cone @ cert.theta_inv
    sq2 = _witness(f3 @ T.b, T2.b @ f2)
    sq3 = _witness(shift_map(f1, 1) @ T.c, T2.c @ f3)
    return TriangleMorphism(T, T2, f1, f2, f3, h, sq2, sq3)


# ---------------------------------------------------------------------------
# Homotopy cartesian squares.


@dataclass(frozen=True, eq=False)
class HomotopySquare:
    """Square ``X -f-> Y1 -b1-> Z``, ``X -g-> Y2 -b2-> Z`` with differential ``Z -> Sigma X``.

    ``commutes`` witnesses ``b1 f ~ b2 g``; ``certificate`` certifies the
    triangle ``X -(f;g)-> Y1+Y2 -(b1, -b2)-> Z -differential-> Sigma X``.
    """

    f: ChainMap
    g: ChainMap
    b1: ChainMap
    b2: ChainMap
    differential: ChainMap
    commutes: Homotopy
    certificate: ExactnessCertificate

    @property
    def triangle(self) -> Triangle:
        return self.certificate.triangle

    def verify(self) -> bool:
        return (self.commutes.verify() and self.commutes.from_map == self.b1 @ self.f
                and self.commutes.to_map == self.b2 @ self.g and self.certificate.verify())

    def flip(self) -> "HomotopySquare":
        """Swap the two legs; the differential changes sign."""
        T = self.triangle
        a = column_map([self.g, self.f])
        b = _row([self.b2, -self.b1], a.target)
        T2 = Triangle(a, b, -self.differential)
        cert = certify_exact(T2)
        if cert is None:
            raise ArithmeticError("flipped square failed to certify")
        rho = -self.commutes.rho
        return HomotopySquare(self.g, self.f, self.b2, self.b1, -self.differential,
                              Homotopy(self.b2 @ self.g, self.b1 @ self.f, rho), cert)


def _row(maps: Sequence[ChainMap], source: Complex) -> ChainMap:
    comps = {n: np.concatenate([f[n].matrix for f in maps], axis=1) for n in source.degrees}
    return ChainMap(source, maps[0].target, comps)


def homotopy_pushout(f: ChainMap, g: ChainMap) -> HomotopySquare:
    """Complete ``f: X -> Y1`` and ``g: X -> Y2`` to a homotopy cartesian square.

    ``Z = cone((f; g))`` with legs ``b1 = incl o i1`` and ``b2 = -incl o i2``;
    the differential is the cone projection.
    """
    if f.source != g.source:
        raise ValueError("maps need a common source")
    a = column_map([f, g])
    C, T = cone(a)
    Ys = [f.target, g.target]
    b1 = T.b @ sum_inclusion(Ys, 0, a.target)
    b2 = -(T.b @ sum_inclusion(Ys, 1, a.target))
    cd = cone_data(a)
    commutes = Homotopy(b1 @ f, b2 @ g, cd.ix)
    return HomotopySquare(f, g, b1, b2, T.c, commutes, _cone_certificate(T))


def parallel_leg_is_qis(sq: HomotopySquare):
    """If ``f`` is a quasi-isomorphism, so is ``b2``; returns both verdicts."""
    from .complexes import is_quasi_iso

    return bool(is_quasi_iso(sq.f)), bool(is_quasi_iso(sq.b2))


# ---------------------------------------------------------------------------
# (TR4') and (TR4'').


@dataclass(frozen=True, eq=False)
class TR4Completion:
    """Square plus a morphism of triangles ``(phi1, phi2, id_Z, Sigma phi1)``."""

    square: HomotopySquare
    top: Triangle
    bottom: Triangle
    bottom_certificate: ExactnessCertificate
    morphism: TriangleMorphism
    differential_witness: Homotopy

    def verify(self) -> bool:
        return (self.square.verify() and self.bottom_certificate.verify()
                and self.morphism.verify() and self.differential_witness.verify())


def _tr4_from_square(T: Triangle, sq: HomotopySquare, lam: ChainMap) -> TR4Completion:
    phi1, phi2, kappa = sq.g, sq.b1, sq.b2
    mu = shift_map(phi1, 1) @ T.c
    bottom = Triangle(kappa, lam, mu)
    cert = certify_exact(bottom)
    if cert is None:
        raise ArithmeticError("completion triangle failed to certify")
    sq1 = sq.commutes
    idz = ChainMap.identity(T.Z)
    m = TriangleMorphism(T, bottom, phi1, phi2, idz,
                         Homotopy(phi2 @ T.a, kappa @ phi1, sq1.rho),
                         _witness(T.b, lam @ phi2),
                         _zero_homotopy(mu))
    diff = _witness(T.c @ lam, sq.differential)
    return TR4Completion(sq, T, bottom, cert, m, diff)


def tr4_prime(alpha: ChainMap, phi: ChainMap) -> TR4Completion:
    """Complete ``alpha: X -> Y`` and ``phi: X -> X'`` as in the pushout form of the octahedral axiom."""
    C, T = cone(alpha)
    sq = homotopy_pushout(alpha, phi)
    Yp = sq.b1.target
    # Y' = cone((alpha; phi)) has summands X[+1], Y, X'; drop X'
    X = alpha.source
    comps = {}
    for n in Yp.degrees:
        gx, gy, gp = X[n + 1].ngens, alpha.target[n].ngens, phi.target[n].ngens
        comps[n] = np.concatenate([identity(gx + gy, alpha.ring), zeros(gx + gy, gp, alpha.ring)], axis=1)
    lam = ChainMap(Yp, C, comps)
    return _tr4_from_square(T, sq, lam)


def tr4_double_prime(sq: HomotopySquare, T: Triangle,
                     cert: Optional[ExactnessCertificate] = None) -> TR4Completion:
    """Given a homotopy cartesian square on ``T.a`` and an exact ``T``, complete to a morphism."""
    if sq.f is not T.a and sq.f != T.a:
        raise ValueError("square must start with the first map of the triangle")
    cert = cert or certify_exact(T)
    if cert is None:
        raise ValueError("triangle is not exact")
    # compare sq's target with the standard pushout of (a, phi1)
    std = homotopy_pushout(T.a, sq.g)
    sq_cert = sq.certificate
    std_to_sq = sq_cert.theta  # cone((f;g)) -> Y'
    sq_to_std = sq_cert.theta_inv
    X = T.a.source
    C = cone_data(T.a).C
    Ys = std.b1.target
    comps = {}
    for n in Ys.degrees:
        gx, gy, gp = X[n + 1].ngens, T.Y[n].ngens, sq.g.target[n].ngens
        comps[n] = np.concatenate([identity(gx + gy, T.a.ring), zeros(gx + gy, gp, T.a.ring)], axis=1)
    lam_std = ChainMap(Ys, C, comps)
    lam = cert.theta @ lam_std @ sq_to_std
    return _tr4_from_square(T, sq, lam)


# ---------------------------------------------------------------------------
# The octahedron.


@dataclass(frozen=True, eq=False)
class Face:
    name: str
    witness: Homotopy


@dataclass(frozen=True, eq=False)
class OctahedronDiagram:
    alpha: Triangle
    beta: Triangle
    gamma: Triangle
    delta: Triangle
    certificates: Tuple[ExactnessCertificate, ...]
    faces: Tuple[Face, ...]
    epsilon: ChainMap
    epsilon_triangle: Triangle
    epsilon_certificate: ExactnessCertificate
    epsilon_left: Homotopy
    epsilon_right: Homotopy

    def verify(self) -> bool:
        return (all(c.verify() for c in self.certificates)
                and all(f.witness.verify() for f in self.faces)
                and self.epsilon_certificate.verify()
                and self.epsilon_left.verify() and self.epsilon_right.verify())


def octahedron(a1: ChainMap, b1: ChainMap) -> OctahedronDiagram:
    """The full (TR4) diagram for ``X -a1-> Y -b1-> Z`` with the epsilon triangle."""
    if a1.target != b1.source:
        raise ValueError("maps are not composable")
    c1 = b1 @ a1
    X, Y, Z = a1.source, a1.target, b1.target
    ring = a1.ring
    U, Ta = cone(a1)
    W, Tb = cone(b1)
    V, Tc = cone(c1)
    d1 = ChainMap(U, V, {n: _blockdiag(identity(X[n + 1].ngens, ring), b1[n].matrix, ring) for n in U.degrees})
    d2 = ChainMap(V, W, {n: _blockdiag(a1[n + 1].matrix, identity(Z[n].ngens, ring), ring) for n in V.degrees})
    d3 = shift_map(Ta.b, 1) @ Tb.c
    Td = Triangle(d1, d2, d3)
    certs = tuple(certify_exact(t) for t in (Ta, Tb, Tc, Td))
    if any(c is None for c in certs):
        raise ArithmeticError("octahedron triangle failed to certify")
    faces = (
        Face("gamma1 = beta1 alpha1", _witness(Tc.a, b1 @ a1)),
        Face("delta1 alpha2 = gamma2 beta1", _witness(d1 @ Ta.b, Tc.b @ b1)),
        Face("gamma3 delta1 = alpha3", _witness(Tc.c @ d1, Ta.c)),
        Face("delta2 gamma2 = beta2", _witness(d2 @ Tc.b, Tb.b)),
        Face("beta3 delta2 = Sigma alpha1 gamma3", _witness(Tb.c @ d2, shift_map(a1, 1) @ Tc.c)),
        Face("delta3 = Sigma alpha2 beta3", _witness(d3, shift_map(Ta.b, 1) @ Tb.c)),
    )
    eps = -(shift_map(a1, 1) @ Tc.c)
    first = column_map([Ta.b, b1])
    second = _row([d1, -Tc.b], first.target)
    eps_c = ChainMap(V, shift(Y, 1), eps.components, check=False)
    Te = Triangle(first, second, eps_c)
    ecert = certify_exact(Te)
    if ecert is None:
        raise ArithmeticError("epsilon triangle failed to certify")
    left = _witness(-(shift_map(a1, 1) @ Tc.c), eps_c)
    right = _witness(eps_c, -(Tb.c @ d2))
    return OctahedronDiagram(Ta, Tb, Tc, Td, certs, faces, eps_c, Te, ecert, left, right)


def _blockdiag(a, b, ring):
    return block_diag([a, b], ring)


# ---------------------------------------------------------------------------
# Long exact sequences.


@dataclass(frozen=True, eq=False)
class LongExactSequence:
    """``... -> H^n X -> H^n Y -> H^n Z -> H^{n+1} X -> ...`` with verdicts.

    ``maps`` lists ``(label, map)`` in sequence order; ``exact_at[i]`` refers
    to the position between ``maps[i]`` and ``maps[i + 1]``.
    ``connecting_ok`` maps each degree to the verdict on ``delta^n = H^{n+1} a``
    (only filled for cone-form triangles).
    """

    maps: Tuple[Tuple[str, ModuleMap], ...]
    exact_at: Tuple[bool, ...]
    connecting_ok: Dict[int, bool]

    @property
    def exact(self) -> bool:
        return all(self.exact_at) and all(self.connecting_ok.values())


def long_exact_sequence(T: Triangle, cert: Optional[ExactnessCertificate] = None) -> LongExactSequence:
    cert = cert or certify_exact(T)
    if cert is None:
        raise ValueError("triangle is not certified exact")
    X, Y, Z = T.X, T.Y, T.Z
    window = combined_window(X, Y, Z, shift(X, 1))
    degs = range(window.start - 1, window.stop + 1) if window else range(0)
    maps = []
    for n in degs:
        maps.append((f"H^{n}a", induced_map(T.a, n)))
        maps.append((f"H^{n}b", induced_map(T.b, n)))
        cn = induced_map(T.c, n)
        maps.append((f"H^{n}c", shift_cohomology_iso(X, 1, n) @ cn))
    exact = tuple(is_exact_at(maps[i][1], maps[i + 1][1]) for i in range(len(maps) - 1))
    conn = {}
    if T.is_cone_form():
        for n in degs:
            conn[n] = connecting_map(T, n) == induced_map(T.a, n + 1)
    return LongExactSequence(tuple(maps), exact, conn)


def connecting_map(T: Triangle, n: int) -> ModuleMap:
    """Snake-lemma map ``H^{n+1} X -> H^{n+1} Y`` of ``0 -> Y -> cone -> X[+1] -> 0``.

    The quotient map used is the degreewise projection ``(x, y) -> x``.
    """
    cd = cone_data(T.a)
    X, Y, C = T.X, T.Y, cd.C
    src = X.cohomology(n + 1)
    tgt = Y.cohomology(n + 1)
    cols = zeros(tgt.group.ngens, src.group.ngens, T.a.ring)
    for j in range(src.group.ngens):
        u = src.cocycle_lift[:, j]
        lifted = cd.ix[n + 1](u)
        dz = C.d(n)(lifted)
        y = cd.py[n + 1](dz)
        cols[:, j] = tgt.class_of(y)
    return ModuleMap(src.group, tgt.group, cols)
