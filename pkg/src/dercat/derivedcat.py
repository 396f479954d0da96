"""The bounded derived category over Z or Q, via resolutions and roofs.

Morphisms ``X -> Y`` are right fractions ``X -alpha-> M <-sigma- Y`` with
``sigma`` a quasi-isomorphism.  Two roofs are equivalent exactly when their
normal forms in ``Hom_K(P_X, Y)`` agree, where ``P_X -> X`` is a projective
resolution; this is decidable by one linear solve.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .complexes import (
    ChainMap,
    Complex,
    GradedMap,
    Homotopy,
    combined_window,
    is_quasi_iso,
    null_homotopy,
    shift,
)
from .exactalg.linalg import Ring, identity, smith_normal_form, zeros
from .exactalg.modules import (
    Cokernel,
    FPModule,
    Kernel,
    ModuleMap,
    is_exact_at,
    is_injective,
    is_surjective,
    tensor_maps,
    tensor_module,
)
from .homotopycat import HomKGroup, hom_k, post_composition
from .linsys import MapSystem
from .triangle import (
    ExactnessCertificate,
    Triangle,
    cone,
    homotopy_pushout,
)


# ---------------------------------------------------------------------------
# Resolutions.


@dataclass(frozen=True, eq=False)
class ProjectiveResolution:
    P: Complex
    pi: ChainMap


def _is_free_complex(X: Complex) -> bool:
    return all(X[n].is_free() for n in X.degrees)


@functools.lru_cache(maxsize=1024)
def proj_resolve(X: Complex) -> ProjectiveResolution:
    """Degreewise free ``P`` with a quasi-isomorphism ``P -> X``.

    Built from the top degree down: ``P^n`` is a free cover of the pairs
    ``(p, x)`` in ``P^{n+1} + X^n`` with ``dp = 0`` and ``pi(p) = dx``.
    Over a hereditary ring these are free below ``lo(X)``, so the window of
    ``P`` is ``[lo(X) - 1, hi(X)]``.
    """
    if _is_free_complex(X):
        return ProjectiveResolution(X, ChainMap.identity(X))
    ring = X.ring
    hi, lo = X.hi, X.lo
    P_mods = {}
    d = {}
    pi = {}
    n = hi
    prev_rank = 0  # rank of P^{n+1}
    while True:
        prank = prev_rank
        xm = X[n]
        if prank == 0 and xm.is_zero():
            break
        if n < lo - 2:
            raise ArithmeticError("resolution did not terminate in the hereditary window")
        # Phi: P^{n+1} + X^n -> P^{n+2} + X^{n+1}, (p, x) -> (dp, pi p - dx)
        src = FPModule(ring, (0,) * prank + xm.moduli)
        p2 = P_mods.get(n + 2, 0)
        tgt = FPModule(ring, (0,) * p2 + X[n + 1].moduli)
        phi = zeros(tgt.ngens, src.ngens, ring)
        if prank:
            if p2:
                phi[:p2, :prank] = d[n + 1]
            phi[p2:, :prank] = pi.get(n + 1, zeros(X[n + 1].ngens, prank, ring))
        if xm.ngens:
            phi[p2:, prank:] = -X.d(n).matrix
        K = Kernel(ModuleMap(src, tgt, phi))
        gens = K.inclusion.matrix
        k = gens.shape[1]
        P_mods[n] = k
        d[n] = np.ascontiguousarray(gens[:prank, :])
        pi[n] = np.ascontiguousarray(gens[prank:, :])
        prev_rank = k
        n -= 1
    degs = sorted(P_mods)
    if not degs:
        P = Complex.zero(ring)
        return ProjectiveResolution(P, ChainMap.zero(P, X))
    mods = [FPModule.free(ring, P_mods[m]) for m in degs]
    diffs = [d[m] for m in degs[:-1]]
    P = Complex(ring, degs[0], mods, diffs)
    res = ProjectiveResolution(P, ChainMap(P, X, {m: pi[m] for m in degs}))
    return res


# ---------------------------------------------------------------------------
# Roofs.


@dataclass(frozen=True, eq=False)
class Roof:
    """``X -alpha-> M <-sigma- Y`` with ``sigma`` a quasi-isomorphism."""

    alpha: ChainMap
    sigma: ChainMap
    check: bool = True

    def __post_init__(self):
        if self.alpha.target != self.sigma.target:
            raise ValueError("numerator and denominator must share the middle object")
        if self.check and not is_quasi_iso(self.sigma):
            raise ValueError("denominator is not a quasi-isomorphism")

    @property
    def X(self) -> Complex:
        return self.alpha.source

    @property
    def Y(self) -> Complex:
        return self.sigma.source

    @property
    def mid(self) -> Complex:
        return self.alpha.target


def roof_from_map(f: ChainMap) -> Roof:
    return Roof(f, ChainMap.identity(f.target), check=False)


def identity_roof(X: Complex) -> Roof:
    return roof_from_map(ChainMap.identity(X))


def compose_roofs(r1: Roof, r2: Roof) -> Roof:
    """``r2 o r1``: push ``sigma1`` out along ``alpha2`` to get the new fraction."""
    if r1.Y != r2.X:
        raise ValueError("middle objects do not match")
    sq = homotopy_pushout(r1.sigma, r2.alpha)
    return Roof(sq.b1 @ r1.alpha, sq.b2 @ r2.sigma)


def lift_through_qis(sigma: ChainMap, target_map: ChainMap) -> Tuple[ChainMap, Homotopy]:
    """``psi`` with ``sigma psi ~ target_map`` for a source that is degreewise projective."""
    P, Y = target_map.source, sigma.source
    sys_ = MapSystem(sigma.ring)
    psi = sys_.unknown(P, Y, 0)
    rho = sys_.unknown(P, sigma.target, -1)
    sys_.equation([(1, Y.differential(), psi, None), (-1, None, psi, P.differential())],
                  GradedMap(P, Y, 1, {}))
    M = sigma.target
    sys_.equation([(1, sigma, psi, None), (-1, M.differential(), rho, None), (-1, None, rho, P.differential())],
                  target_map)
    sol = sys_.solve()
    if sol is None:
        raise ArithmeticError("no lift exists: the denominator is not a quasi-isomorphism")
    p = ChainMap.from_graded(sol[psi])
    return p, Homotopy(sigma @ p, target_map, sol[rho])


class DerivedHomGroup:
    """``Hom_D(X, Y) = Hom_K(P_X, Y)`` with roof converters."""

    def __init__(self, X: Complex, Y: Complex):
        self.X, self.Y = X, Y
        self.resolution = proj_resolve(X)
        self.via: HomKGroup = hom_k(self.resolution.P, Y)
        self.group = self.via.group

    def normal_form(self, r: Roof) -> np.ndarray:
        if r.X != self.X or r.Y != self.Y:
            raise ValueError("roof does not belong to this Hom group")
        psi, _ = lift_through_qis(r.sigma, r.alpha @ self.resolution.pi)
        return self.via.class_of(psi)

    def to_roof(self, coords) -> Roof:
        psi = self.via.from_class(coords)
        sq = homotopy_pushout(self.resolution.pi, psi)
        return Roof(sq.b1, sq.b2, check=False)

    def equal(self, r1: Roof, r2: Roof) -> bool:
        return self.group.is_zero_element(self.normal_form(r1) - self.normal_form(r2))


def hom_d(X: Complex, Y: Complex) -> DerivedHomGroup:
    return DerivedHomGroup(X, Y)


def normal_form(r: Roof) -> np.ndarray:
    return hom_d(r.X, r.Y).normal_form(r)


def roofs_equivalent(r1: Roof, r2: Roof) -> bool:
    if r1.X != r2.X or r1.Y != r2.Y:
        return False
    return hom_d(r1.X, r1.Y).equal(r1, r2)


@dataclass(frozen=True)
class ZeroInD:
    is_zero: bool
    witness: Optional[Homotopy]


def is_zero_in_d(phi: ChainMap) -> ZeroInD:
    """``phi`` vanishes in D iff ``phi o pi`` is null-homotopic on a resolution."""
    res = proj_resolve(phi.source)
    h = null_homotopy(phi @ res.pi)
    return ZeroInD(h is not None, h)


# ---------------------------------------------------------------------------
# Ext and Tor.


def module_complex(M: FPModule, degree: int = 0) -> Complex:
    return Complex.concentrated(M, degree)


def tensor_complex(P: Complex, B: FPModule) -> Complex:
    """``P (x) B`` for a module ``B`` placed in degree 0."""
    mods = [tensor_module(P[n], B) for n in P.degrees]
    idb = ModuleMap.identity(B)
    diffs = [tensor_maps(P.d(n), idb) for n in list(P.degrees)[:-1]]
    return Complex(P.ring, P.lo if not P.is_zero() else 0, mods, diffs, check=False)


def ext(A: FPModule, B: FPModule, n: int) -> FPModule:
    """``Ext^n(A, B) = H^n Hom(P_A, B)``."""
    from .complexes import hom_complex

    if A.ring is not B.ring:
        raise ValueError("ring mismatch")
    if n < 0:
        return FPModule.zero(A.ring)
    P = proj_resolve(module_complex(A)).P
    return hom_complex(P, module_complex(B)).cohomology(n).group


def ext_via_hom_d(A: FPModule, B: FPModule, n: int) -> FPModule:
    if n < 0:
        return FPModule.zero(A.ring)
    return hom_d(module_complex(A), shift(module_complex(B), n)).group


def tor(A: FPModule, B: FPModule, n: int) -> FPModule:
    if A.ring is not B.ring:
        raise ValueError("ring mismatch")
    if n < 0:
        return FPModule.zero(A.ring)
    P = proj_resolve(module_complex(A)).P
    return tensor_complex(P, B).cohomology(-n).group


def ext_tor(kind: str, A: FPModule, B: FPModule, n: int) -> FPModule:
    if kind == "ext":
        res = ext(A, B, n)
        other = ext_via_hom_d(A, B, n)
        if res.canonical() != other.canonical():
            raise ArithmeticError("Ext routes disagree")
        return res
    if kind == "tor":
        return tor(A, B, n)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Hereditary decomposition.


def _cocycle_projection(X: Complex, n: int) -> np.ndarray:
    """Matrix ``X^n -> H^n X`` that is the class map on cocycles and kills a complement.

    Needs ``Z^n`` to be a direct summand of the free module ``X^n``, which
    holds for free complexes over a hereditary ring.
    """
    ring = X.ring
    from .exactalg.linalg import kernel

    g = X[n].ngens
    coh = X.cohomology(n)
    if g == 0 or coh.group.ngens == 0:
        return zeros(coh.group.ngens, g, ring)
    K = kernel(X.d(n).matrix, ring) if X[n + 1].ngens else identity(g, ring)
    k = K.shape[1]
    snf = smith_normal_form(K, ring)
    # K = u_inv D v_inv with D = [I; 0] since the kernel lattice is saturated
    basis = snf.u_inv[:, :k]
    cls = zeros(coh.group.ngens, k, ring)
    for j in range(k):
        cls[:, j] = coh.class_of(basis[:, j])
    return cls @ snf.u[:k, :]


def cohomology_complex(X: Complex) -> Complex:
    """``H`` with ``H^n = H^n X`` and zero differentials."""
    degs = list(X.degrees)
    if not degs:
        return Complex.zero(X.ring)
    return Complex(X.ring, degs[0], [X.cohomology(n).group for n in degs])


def hereditary_decompose(X: Complex) -> Tuple[Complex, Roof]:
    """A roof ``X -> H`` with both legs quasi-isomorphisms, ``H`` having zero differential."""
    res = proj_resolve(X)
    P = res.P
    H = cohomology_complex(X)
    comps = {}
    for n in P.degrees:
        iso = _h_iso(res.pi, n)
        comps[n] = iso @ _cocycle_projection(P, n)
    p = ChainMap(P, H, comps)
    sq = homotopy_pushout(res.pi, p)
    r = Roof(sq.b1, sq.b2)
    if not is_quasi_iso(r.alpha):
        raise ArithmeticError("numerator leg is not a quasi-isomorphism")
    return H, r


def _h_iso(pi: ChainMap, n: int) -> np.ndarray:
    from .complexes import induced_map

    return induced_map(pi, n).matrix


# ---------------------------------------------------------------------------
# Short exact sequences.


@dataclass(frozen=True, eq=False)
class SESTriangle:
    """``A -> B -> C -gamma-> Sigma A`` in D with its comparison data.

    ``q: cone(alpha) -> C`` is the quasi-isomorphism ``(0, beta)``; the cone
    triangle of ``alpha`` carries the exactness certificate.
    """

    alpha: ChainMap
    beta: ChainMap
    gamma: Roof
    q: ChainMap
    cone_triangle: Triangle
    certificate: ExactnessCertificate
    gamma_class: np.ndarray
    ext_group: FPModule


def triangle_from_ses(alpha: ModuleMap, beta: ModuleMap) -> SESTriangle:
    from .triangle import certify_exact

    if alpha.target != beta.source:
        raise ValueError("maps are not composable")
    if not (is_injective(alpha) and is_surjective(beta) and is_exact_at(alpha, beta)):
        raise ValueError("sequence is not short exact")
    A, B, Cm = (module_complex(M) for M in (alpha.source, alpha.target, beta.target))
    a = ChainMap(A, B, {0: alpha})
    b = ChainMap(B, Cm, {0: beta})
    Cc, T = cone(a)
    q = ChainMap(Cc, Cm, {0: beta.matrix})
    if not is_quasi_iso(q):
        raise ArithmeticError("comparison map is not a quasi-isomorphism")
    sq = homotopy_pushout(q, T.c)
    gamma = Roof(sq.b1, sq.b2)
    hd = hom_d(Cm, T.c.target)
    cls = hd.normal_form(gamma)
    return SESTriangle(a, b, gamma, q, T, certify_exact(T), cls, hd.group)


def pushout_ses(alpha: ModuleMap, beta: ModuleMap, f: ModuleMap):
    """Pushout of ``0 -> A -> B -> C -> 0`` along ``f: A -> A'``."""
    from .exactalg.modules import direct_sum_map

    A2 = f.target
    B = alpha.target
    m = ModuleMap(alpha.source, A2 + B, np.concatenate([f.matrix, (-alpha).matrix], axis=0))
    cok = Cokernel(m)
    inc_a2 = ModuleMap(A2, A2 + B, np.concatenate([identity(A2.ngens, f.ring),
                                                   zeros(B.ngens, A2.ngens, f.ring)], axis=0))
    alpha2 = cok.projection @ inc_a2
    zb = ModuleMap(A2 + B, beta.target, np.concatenate([zeros(beta.target.ngens, A2.ngens, f.ring),
                                                        beta.matrix], axis=1))
    beta2 = ModuleMap(cok.module, beta.target, zb.matrix @ cok.section())
    return alpha2, beta2
