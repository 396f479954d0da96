"""Hom groups of the homotopy category, weak kernels and coherent functors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .complexes import (
    ChainMap,
    Complex,
    HomComplex,
    Homotopy,
    homotopy_between,
    row_map,
    shift,
    shift_map,
)
from .exactalg.linalg import zeros
from .exactalg.modules import Cokernel, FPModule, ModuleMap, is_exact_at, is_injective


class HomKGroup:
    """``Hom_K(X, Y)``, computed as ``H^0`` of the Hom complex."""

    def __init__(self, X: Complex, Y: Complex):
        self.X, self.Y = X, Y
        self.hom = HomComplex(X, Y)
        self._coh = self.hom.complex.cohomology(0)
        self.group: FPModule = self._coh.group
        self.basis_maps = [ChainMap.from_graded(self.hom.to_graded_map(0, self._coh.cocycle_lift[:, j]),
                                                check=False)
                           for j in range(self.group.ngens)]

    def class_of(self, f: ChainMap) -> np.ndarray:
        if f.source != self.X or f.target != self.Y:
            raise ValueError("map does not belong to this Hom group")
        return self._coh.class_of(self.hom.coords_of(f))

    def from_class(self, coords) -> ChainMap:
        coords = np.asarray(coords, dtype=object).reshape(-1)
        vec = self._coh.cocycle_lift @ coords if coords.size else zeros(self.hom.complex[0].ngens, 1,
                                                                       self.X.ring)[:, 0]
        return ChainMap.from_graded(self.hom.to_graded_map(0, vec), check=False)

    def is_zero_class(self, f: ChainMap) -> bool:
        return self.group.is_zero_element(self.class_of(f))


_HOMK = {}


def hom_k(X: Complex, Y: Complex) -> HomKGroup:
    key = (X, Y)
    g = _HOMK.get(key)
    if g is None:
        g = HomKGroup(X, Y)
        if len(_HOMK) > 2048:
            _HOMK.clear()
        _HOMK[key] = g
    return g


def post_composition(T: Complex, f: ChainMap) -> ModuleMap:
    """``Hom_K(T, f) : Hom_K(T, X) -> Hom_K(T, Y)``."""
    src, tgt = hom_k(T, f.source), hom_k(T, f.target)
    cols = zeros(tgt.group.ngens, src.group.ngens, f.ring)
    for j, b in enumerate(src.basis_maps):
        cols[:, j] = tgt.class_of(f @ b)
    return ModuleMap(src.group, tgt.group, cols)


def pre_composition(f: ChainMap, T: Complex) -> ModuleMap:
    """``Hom_K(f, T) : Hom_K(Y, T) -> Hom_K(X, T)``."""
    src, tgt = hom_k(f.target, T), hom_k(f.source, T)
    cols = zeros(tgt.group.ngens, src.group.ngens, f.ring)
    for j, b in enumerate(src.basis_maps):
        cols[:, j] = tgt.class_of(b @ f)
    return ModuleMap(src.group, tgt.group, cols)


def hom_exact_at_middle(T: Complex, f: ChainMap, g: ChainMap) -> bool:
    """Exactness of ``Hom_K(T, X) -> Hom_K(T, Y) -> Hom_K(T, Z)``."""
    return is_exact_at(post_composition(T, f), post_composition(T, g))


# ---------------------------------------------------------------------------
# Weak kernels.


def weak_kernel(f: ChainMap) -> ChainMap:
    """``W = Sigma^{-1} cone(f) -> Y``, the first map of the rotated cone triangle."""
    from .triangle import cone

    C, T = cone(f)
    W = shift(C, -1)
    return ChainMap(W, f.source, (-shift_map(T.c, -1)).components)


def weak_kernel_exact(f: ChainMap, pool: Sequence[Complex]) -> bool:
    w = weak_kernel(f)
    return all(hom_exact_at_middle(T, w, f) for T in pool)


# ---------------------------------------------------------------------------
# Coherent functors, kept as presentations ``Hom(-, X) -> Hom(-, Y) -> F -> 0``.


@dataclass(frozen=True, eq=False)
class CoherentPresentation:
    f: ChainMap

    @property
    def X(self) -> Complex:
        return self.f.source

    @property
    def Y(self) -> Complex:
        return self.f.target


@dataclass(frozen=True, eq=False)
class CoherentMorphism:
    """Maps ``x: X1 -> X2`` and ``y: Y1 -> Y2`` with ``y f1 ~ f2 x``."""

    source: CoherentPresentation
    target: CoherentPresentation
    x: ChainMap
    y: ChainMap
    square: Homotopy

    def verify(self) -> bool:
        return (self.square.verify() and self.square.from_map == self.y @ self.source.f
                and self.square.to_map == self.target.f @ self.x)


def coherent_morphism(F1: CoherentPresentation, F2: CoherentPresentation, x: ChainMap,
                      y: ChainMap) -> CoherentMorphism:
    h = homotopy_between(y @ F1.f, F2.f @ x)
    if h is None:
        raise ValueError("square does not commute up to homotopy")
    return CoherentMorphism(F1, F2, x, y, h)


def evaluate_coherent(F: CoherentPresentation, T: Complex) -> FPModule:
    return Cokernel(post_composition(T, F.f)).module


def evaluate_morphism(m: CoherentMorphism, T: Complex) -> ModuleMap:
    """``F1(T) -> F2(T)`` induced by ``y``."""
    c1 = Cokernel(post_composition(T, m.source.f))
    c2 = Cokernel(post_composition(T, m.target.f))
    y = post_composition(T, m.y)
    # the section alone need not be a homomorphism; only the composite is
    return ModuleMap(c1.module, c2.module, c2.projection.matrix @ y.matrix @ c1.section())


def coherent_kernel(m: CoherentMorphism):
    """Presentation of ``ker(F1 -> F2)`` and its morphism into ``F1``.

    ``Y0 -> X2 + Y1`` is a weak kernel of ``(f2, -y)`` and ``X0 -> X1 + Y0``
    a weak kernel of ``(f1, -y0)``.
    """
    from .complexes import sum_projection

    f1, f2, y = m.source.f, m.target.f, m.y
    s1 = row_map([f2, -y])
    w1 = weak_kernel(ChainMap.from_graded(s1, check=False))
    parts1 = [f2.source, y.source]
    y0 = sum_projection(parts1, 1, s1.source) @ w1
    s2 = row_map([f1, -y0])
    w2 = weak_kernel(ChainMap.from_graded(s2, check=False))
    parts2 = [f1.source, y0.source]
    f0 = sum_projection(parts2, 1, s2.source) @ w2
    x0 = sum_projection(parts2, 0, s2.source) @ w2
    F0 = CoherentPresentation(f0)
    return F0, coherent_morphism(F0, m.source, x0, y0)


def coherent_kernel_exact(m: CoherentMorphism, pool: Sequence[Complex]) -> bool:
    """``0 -> F0(T) -> F1(T) -> F2(T)`` exact for every ``T`` in the pool."""
    F0, inc = coherent_kernel(m)
    for T in pool:
        a = evaluate_morphism(inc, T)
        b = evaluate_morphism(m, T)
        if not (is_injective(a) and is_exact_at(a, b)):
            return False
    return True
