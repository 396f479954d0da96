"""Bounded cochain complexes, graded maps, cohomology and the Hom complex.

A :class:`Complex` stores the modules of a finite degree window together with
the differentials between consecutive ones; everything outside the window is
zero.  Zero modules at either end of the window are trimmed on construction,
so two complexes compare equal exactly when their data agree degreewise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

from .exactalg.linalg import Ring, identity, kernel as lattice_kernel, zeros
from .exactalg.modules import (
    FPModule,
    HomModule,
    ModuleMap,
    Subquotient,
    is_isomorphism,
)


class Complex:
    """A bounded cochain complex ``X^lo -> ... -> X^hi``.

    Args:
        ring: ground ring.
        lo: degree of ``modules[0]``.
        modules: the components, in increasing degree.
        diffs: ``diffs[k]`` is the differential out of ``modules[k]``; one
            fewer than ``modules`` (missing trailing entries are zero maps).
    """

    def __init__(self, ring: Ring, lo: int, modules: Sequence[FPModule],
                 diffs: Sequence = (), check: bool = True):
        modules = list(modules)
        diffs = list(diffs)
        if len(diffs) > max(len(modules) - 1, 0):
            raise ValueError("more differentials than gaps between modules")
        mats = []
        for k in range(max(len(modules) - 1, 0)):
            if k < len(diffs) and diffs[k] is not None:
                d = diffs[k]
                if not isinstance(d, ModuleMap):
                    d = ModuleMap(modules[k], modules[k + 1], np.asarray(d, dtype=object))
                if d.source != modules[k] or d.target != modules[k + 1]:
                    raise ValueError(f"differential {k} does not match the modules")
            else:
                d = ModuleMap.zero(modules[k], modules[k + 1])
            mats.append(d)
        # trim zero ends
        start = 0
        while start < len(modules) and modules[start].is_zero():
            start += 1
        stop = len(modules)
        while stop > start and modules[stop - 1].is_zero():
            stop -= 1
        self.ring = ring
        if start >= stop:
            self.lo, self.modules, self.diffs = 0, (), ()
        else:
            self.lo = lo + start
            self.modules = tuple(modules[start:stop])
            self.diffs = tuple(mats[start:stop - 1])
        for m in self.modules:
            if m.ring is not ring:
                raise ValueError("ring mismatch between complex and component")
        self._cache = {}
        if check:
            for k in range(len(self.diffs) - 1):
                if not (self.diffs[k + 1] @ self.diffs[k]).is_zero():
                    raise ValueError(f"d o d != 0 at degree {self.lo + k}")

    @property
    def hi(self) -> int:
        return self.lo + len(self.modules) - 1

    @property
    def degrees(self) -> range:
        return range(self.lo, self.lo + len(self.modules))

    def is_zero(self) -> bool:
        return not self.modules

    @classmethod
    def zero(cls, ring: Ring) -> "Complex":
        return cls(ring, 0, ())

    @classmethod
    def concentrated(cls, module: FPModule, degree: int = 0) -> "Complex":
        return cls(module.ring, degree, [module])

    @classmethod
    def from_matrices(cls, ring: Ring, lo: int, moduli: Sequence[Sequence[int]],
                      mats: Sequence) -> "Complex":
        mods = [FPModule(ring, tuple(m)) for m in moduli]
        return cls(ring, lo, mods, [np.asarray(a, dtype=object) for a in mats])

    def __getitem__(self, n: int) -> FPModule:
        if self.modules and self.lo <= n <= self.hi:
            return self.modules[n - self.lo]
        return FPModule.zero(self.ring)

    def d(self, n: int) -> ModuleMap:
        """The differential ``X^n -> X^{n+1}``."""
        if self.modules and self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return ModuleMap.zero(self[n], self[n + 1])

    def differential(self) -> "GradedMap":
        return GradedMap(self, self, 1, {n: self.d(n) for n in self.degrees})

    def key(self) -> tuple:
        return (self.ring, self.lo, tuple(m.moduli for m in self.modules),
                tuple(tuple(map(tuple, d.matrix.tolist())) for d in self.diffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def total_rank(self) -> int:
        return sum(m.ngens for m in self.modules)

    def cohomology(self, n: int) -> "CohomologyResult":
        if ("H", n) not in self._cache:
            self._cache[("H", n)] = CohomologyResult(self, n)
        return self._cache[("H", n)]

    def is_acyclic(self) -> bool:
        return all(self.cohomology(n).group.is_zero() for n in self.degrees)

    def __repr__(self) -> str:
        if not self.modules:
            return "Complex(0)"
        parts = []
        for n in self.degrees:
            parts.append(f"[{n}] {self[n]!s}")
        return f"Complex({self.ring.value}: " + " -> ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Graded maps.


class GradedMap:
    """A family of module maps ``X^n -> Y^{n+degree}``.

    Components that would start or end at a zero module are omitted; the
    accessor :meth:`__getitem__` fills them in as zero maps.
    """

    def __init__(self, source: Complex, target: Complex, degree: int,
                 components: Optional[Dict[int, ModuleMap]] = None):
        if source.ring is not target.ring:
            raise ValueError("ring mismatch")
        self.source, self.target, self.degree = source, target, degree
        comps = {}
        for n, f in (components or {}).items():
            if source[n].is_zero() or target[n + degree].is_zero():
                continue
            if not isinstance(f, ModuleMap):
                f = ModuleMap(source[n], target[n + degree], np.asarray(f, dtype=object))
            if f.source != source[n] or f.target != target[n + degree]:
                raise ValueError(f"component {n} has the wrong source or target")
            comps[n] = f
        self.components = comps

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def __getitem__(self, n: int) -> ModuleMap:
        f = self.components.get(n)
        if f is None:
            return ModuleMap.zero(self.source[n], self.target[n + self.degree])
        return f

    def _wrap(self, source, target, degree, comps):
        return GradedMap(source, target, degree, comps)

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        if other.target != self.source:
            raise ValueError("graded maps are not composable")
        comps = {n: self[n + other.degree] @ other[n] for n in other.source.degrees}
        out_deg = self.degree + other.degree
        cls = ChainMap if out_deg == 0 and isinstance(self, ChainMap) and isinstance(
            other, ChainMap) else GradedMap
        if cls is ChainMap:
            return ChainMap(other.source, self.target, comps, check=False)
        return GradedMap(other.source, self.target, out_deg, comps)

    def _combine(self, other, op):
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            raise ValueError("graded maps have different shapes")
        degs = set(self.components) | set(other.components)
        comps = {n: op(self[n], other[n]) for n in degs}
        return self._like(comps)

    def _like(self, comps):
        return GradedMap(self.source, self.target, self.degree, comps)

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return self._like({n: -f for n, f in self.components.items()})

    def __rmul__(self, c):
        return self._like({n: c * f for n, f in self.components.items()})

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.components.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        if (self.source != other.source or self.target != other.target
                or self.degree != other.degree):
            return False
        return (self - other).is_zero()

    __hash__ = None

    def commutator(self) -> "GradedMap":
        """``d_Y f - (-1)^k f d_X``: the Hom-complex differential of ``f``."""
        k = self.degree
        sign = -1 if k % 2 else 1
        return self.target.differential() @ self - sign * (self @ self.source.differential())

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {f.matrix.tolist()}" for n, f in sorted(self.components.items()))
        return f"{type(self).__name__}(deg {self.degree}; {body})"


class ChainMap(GradedMap):
    """A degree-0 graded map commuting with the differentials."""

    def __init__(self, source: Complex, target: Complex,
                 components: Optional[Dict[int, ModuleMap]] = None, check: bool = True):
        super().__init__(source, target, 0, components)
        if check:
            for n in source.degrees:
                lhs = target.d(n) @ self[n]
                rhs = self[n + 1] @ source.d(n)
                if lhs != rhs:
                    raise ValueError(f"chain map square fails at degree {n}")

    def _like(self, comps):
        return ChainMap(self.source, self.target, comps, check=False)

    @classmethod
    def identity(cls, X: Complex) -> "ChainMap":
        return cls(X, X, {n: ModuleMap.identity(X[n]) for n in X.degrees}, check=False)

    @classmethod
    def zero(cls, X: Complex, Y: Complex) -> "ChainMap":
        return cls(X, Y, {}, check=False)

    @classmethod
    def from_graded(cls, f: GradedMap, check: bool = True) -> "ChainMap":
        if f.degree != 0:
            raise ValueError("a chain map has degree 0")
        return cls(f.source, f.target, f.components, check=check)

    def on_cohomology(self, n: int) -> ModuleMap:
        return induced_map(self, n)


@dataclass(frozen=True, eq=False)
class Homotopy:
    """A witness ``from_map - to_map == d rho + rho d``."""

    from_map: ChainMap
    to_map: ChainMap
    rho: GradedMap

    def __post_init__(self):
        if self.rho.degree != -1:
            raise ValueError("a homotopy has degree -1")

    def verify(self) -> bool:
        f, g, rho = self.from_map, self.to_map, self.rho
        lhs = f - g
        rhs = f.target.differential() @ rho + rho @ f.source.differential()
        return GradedMap.__eq__(GradedMap(lhs.source, lhs.target, 0, lhs.components), rhs)

    def __getitem__(self, n: int) -> ModuleMap:
        return self.rho[n]


# ---------------------------------------------------------------------------
# Cohomology.


class CohomologyResult:
    """``H^n X = Ker d^n / Im d^{n-1}`` with a section and a class map.

    Attributes:
        group: canonical module.
        cocycle_lift: matrix whose columns are cocycles in ``X^n``
            representing the generators of ``group``.
    """

    def __init__(self, X: Complex, n: int):
        ring = X.ring
        self.complex, self.degree = X, n
        M = X[n]
        g = M.ngens
        dn = X.d(n)
        cycles = lattice_kernel(dn.matrix, ring, X[n + 1].moduli) if g else zeros(0, 0, ring)
        prev = X.d(n - 1).matrix
        bounds = np.concatenate([prev, M.relations], axis=1) if g else zeros(0, 0, ring)
        self._sq = Subquotient(ring, np.concatenate([cycles, bounds], axis=1) if g else cycles,
                               bounds)
        self.group = self._sq.module
        self.cocycle_lift = self._sq.gens

    def class_of(self, cocycle) -> np.ndarray:
        c = self._sq.coords(cocycle)
        if c is None:
            raise ValueError("vector is not a cocycle")
        return c

    def is_cocycle(self, vec) -> bool:
        return self.complex.d(self.degree)(vec) is not None and \
            self.complex[self.degree + 1].is_zero_element(self.complex.d(self.degree)(vec))


def cohomology(X: Complex, n: int) -> CohomologyResult:
    return X.cohomology(n)


def induced_map(f: GradedMap, n: int) -> ModuleMap:
    """``H^n f : H^n X -> H^{n+k} Y`` for a cocycle-preserving graded map of degree k."""
    src = f.source.cohomology(n)
    tgt = f.target.cohomology(n + f.degree)
    comp = f[n]
    cols = zeros(tgt.group.ngens, src.group.ngens, f.ring)
    for j in range(src.group.ngens):
        cols[:, j] = tgt.class_of(comp(src.cocycle_lift[:, j]))
    return ModuleMap(src.group, tgt.group, cols)


class QisReport:
    """Per-degree verdicts of :func:`is_quasi_iso`; truthy iff all pass."""

    def __init__(self, verdicts: Dict[int, bool]):
        self.verdicts = verdicts

    def __bool__(self) -> bool:
        return all(self.verdicts.values())

    @property
    def failing_degrees(self) -> list:
        return [n for n, ok in sorted(self.verdicts.items()) if not ok]

    def __repr__(self) -> str:
        return f"QisReport({bool(self)}, failing={self.failing_degrees})"


def combined_window(*complexes: Complex) -> range:
    nonzero = [X for X in complexes if not X.is_zero()]
    if not nonzero:
        return range(0)
    return range(min(X.lo for X in nonzero), max(X.hi for X in nonzero) + 1)


def is_quasi_iso(f: ChainMap) -> QisReport:
    return QisReport({n: is_isomorphism(induced_map(f, n))
                      for n in combined_window(f.source, f.target)})


# ---------------------------------------------------------------------------
# Shifts, sums, truncations.


def shift(X: Complex, k: int) -> Complex:
    """``(Sigma^k X)^n = X^{n+k}`` with differential ``(-1)^k d``."""
    sign = -1 if k % 2 else 1
    return Complex(X.ring, X.lo - k, X.modules, [sign * d for d in X.diffs], check=False)


def shift_map(f: GradedMap, k: int) -> GradedMap:
    """``Sigma^k f``, componentwise and without sign."""
    src, tgt = shift(f.source, k), shift(f.target, k)
    comps = {n - k: g for n, g in f.components.items()}
    if isinstance(f, ChainMap):
        return ChainMap(src, tgt, comps, check=False)
    return GradedMap(src, tgt, f.degree, comps)


def shift_homotopy(h: Homotopy, k: int) -> Homotopy:
    sign = -1 if k % 2 else 1
    return Homotopy(shift_map(h.from_map, k), shift_map(h.to_map, k),
                    sign * shift_map(h.rho, k))


def shift_cohomology_iso(X: Complex, k: int, i: int) -> ModuleMap:
    """The identification ``H^i(Sigma^k X) -> H^{i+k} X``."""
    sx = shift(X, k)
    src = sx.cohomology(i)
    tgt = X.cohomology(i + k)
    cols = zeros(tgt.group.ngens, src.group.ngens, X.ring)
    for j in range(src.group.ngens):
        cols[:, j] = tgt.class_of(src.cocycle_lift[:, j])
    return ModuleMap(src.group, tgt.group, cols)


def direct_sum(*complexes: Complex) -> Complex:
    ring = complexes[0].ring
    window = combined_window(*complexes)
    if not window:
        return Complex.zero(ring)
    mods = [sum((X[n] for X in complexes[1:]), complexes[0][n]) for n in window]
    from .exactalg.linalg import block_diag

    diffs = [ModuleMap(mods[i], mods[i + 1],
                       block_diag([X.d(n).matrix for X in complexes], ring))
             for i, n in enumerate(window[:-1])]
    return Complex(ring, window.start, mods, diffs, check=False)


def _offsets(mods: Sequence[FPModule]) -> list:
    out, acc = [], 0
    for m in mods:
        out.append(acc)
        acc += m.ngens
    return out


def sum_inclusion(complexes: Sequence[Complex], i: int, total: Optional[Complex] = None) -> ChainMap:
    total = total or direct_sum(*complexes)
    ring = total.ring
    comps = {}
    for n in complexes[i].degrees:
        off = _offsets([X[n] for X in complexes])[i]
        a = zeros(total[n].ngens, complexes[i][n].ngens, ring)
        a[off:off + complexes[i][n].ngens, :] = identity(complexes[i][n].ngens, ring)
        comps[n] = a
    return ChainMap(complexes[i], total, comps, check=False)


def sum_projection(complexes: Sequence[Complex], i: int, total: Optional[Complex] = None) -> ChainMap:
    total = total or direct_sum(*complexes)
    ring = total.ring
    comps = {}
    for n in complexes[i].degrees:
        off = _offsets([X[n] for X in complexes])[i]
        a = zeros(complexes[i][n].ngens, total[n].ngens, ring)
        a[:, off:off + complexes[i][n].ngens] = identity(complexes[i][n].ngens, ring)
        comps[n] = a
    return ChainMap(total, complexes[i], comps, check=False)


def sum_of_maps(maps: Sequence[GradedMap]) -> GradedMap:
    """Block-diagonal map between the direct sums of sources and targets."""
    from .exactalg.linalg import block_diag

    src = direct_sum(*[f.source for f in maps])
    tgt = direct_sum(*[f.target for f in maps])
    k = maps[0].degree
    comps = {n: block_diag([f[n].matrix for f in maps], src.ring) for n in src.degrees}
    if k == 0 and all(isinstance(f, ChainMap) for f in maps):
        return ChainMap(src, tgt, comps, check=False)
    return GradedMap(src, tgt, k, comps)


def column_map(maps: Sequence[GradedMap]) -> GradedMap:
    """``(f1; f2; ...) : X -> Y1 + Y2 + ...`` for maps with a common source."""
    ring = maps[0].ring
    tgt = direct_sum(*[f.target for f in maps])
    X = maps[0].source
    k = maps[0].degree
    comps = {}
    for n in X.degrees:
        comps[n] = np.concatenate([f[n].matrix for f in maps], axis=0) if maps else zeros(0, 0, ring)
    if k == 0 and all(isinstance(f, ChainMap) for f in maps):
        return ChainMap(X, tgt, comps, check=False)
    return GradedMap(X, tgt, k, comps)


def row_map(maps: Sequence[GradedMap]) -> GradedMap:
    """``(f1 f2 ...) : X1 + X2 + ... -> Y`` for maps with a common target."""
    src = direct_sum(*[f.source for f in maps])
    Y = maps[0].target
    k = maps[0].degree
    comps = {}
    for n in src.degrees:
        comps[n] = np.concatenate([f[n].matrix for f in maps], axis=1)
    if k == 0 and all(isinstance(f, ChainMap) for f in maps):
        return ChainMap(src, Y, comps, check=False)
    return GradedMap(src, Y, k, comps)


def truncate(X: Complex, n: int):
    """Brutal truncation ``tau_n X`` (zero below ``n``) with its inclusion into ``X``."""
    if X.is_zero() or n <= X.lo:
        return X, ChainMap.identity(X)
    if n > X.hi:
        Z = Complex.zero(X.ring)
        return Z, ChainMap.zero(Z, X)
    T = Complex(X.ring, n, X.modules[n - X.lo:], X.diffs[n - X.lo:], check=False)
    inc = ChainMap(T, X, {m: ModuleMap.identity(X[m]) for m in T.degrees}, check=False)
    return T, inc


def restrict_window(X: Complex, lo: int, hi: int) -> Complex:
    """Keep only degrees ``lo..hi`` (the brutal truncation on both sides)."""
    degs = [n for n in X.degrees if lo <= n <= hi]
    if not degs:
        return Complex.zero(X.ring)
    return Complex(X.ring, degs[0], [X[n] for n in degs], [X.d(n) for n in degs[:-1]], check=False)


# ---------------------------------------------------------------------------
# The Hom complex.


class HomComplex:
    """``Hom(X, Y)`` with ``Hom^n = prod_p Hom(X^p, Y^{p+n})``.

    The differential is ``d(phi) = d_Y phi - (-1)^n phi d_X``.  Generators of
    each degree are the basis maps of the blocks, block ``p`` after block
    ``p - 1``.
    """

    def __init__(self, X: Complex, Y: Complex):
        if X.ring is not Y.ring:
            raise ValueError("ring mismatch")
        self.X, self.Y = X, Y
        ring = X.ring
        if X.is_zero() or Y.is_zero():
            lo, hi = 0, -1
        else:
            lo, hi = Y.lo - X.hi, Y.hi - X.lo
        self.blocks: Dict[int, list] = {}
        mods = []
        for n in range(lo, hi + 1):
            blocks = []
            for p in X.degrees:
                h = HomModule(X[p], Y[p + n])
                if h.module.ngens:
                    blocks.append((p, h))
            self.blocks[n] = blocks
            mods.append(FPModule(ring, sum((h.module.moduli for _, h in blocks), ())))
        diffs = []
        for i, n in enumerate(range(lo, hi)):
            diffs.append(self._differential(n, mods[i], mods[i + 1]))
        self.complex = Complex(ring, lo, mods, diffs, check=False)

    def block_offsets(self, n: int) -> list:
        out, acc = [], 0
        for p, h in self.blocks.get(n, []):
            out.append(acc)
            acc += h.module.ngens
        return out

    def _differential(self, n, src_mod, tgt_mod) -> ModuleMap:
        ring = self.X.ring
        sign = -1 if n % 2 else 1
        a = zeros(tgt_mod.ngens, src_mod.ngens, ring)
        tgt_index = {p: (off, h) for (p, h), off in zip(self.blocks.get(n + 1, []),
                                                        self.block_offsets(n + 1))}
        for (p, h), off in zip(self.blocks[n], self.block_offsets(n)):
            # d_Y o phi lands in block p of degree n+1
            if p in tgt_index:
                toff, th = tgt_index[p]
                blk = h.operator_matrix(self.Y.d(p + n).matrix, identity(self.X[p].ngens, ring), th)
                a[toff:toff + th.module.ngens, off:off + h.module.ngens] += blk
            # -(-1)^n phi o d_X lands in block p-1
            if p - 1 in tgt_index:
                toff, th = tgt_index[p - 1]
                blk = h.operator_matrix(identity(self.Y[p + n].ngens, ring),
                                        self.X.d(p - 1).matrix, th, coeff=-sign)
                a[toff:toff + th.module.ngens, off:off + h.module.ngens] += blk
        return ModuleMap(src_mod, tgt_mod, a)

    def to_graded_map(self, n: int, coords) -> GradedMap:
        coords = list(coords)
        comps = {}
        for (p, h), off in zip(self.blocks.get(n, []), self.block_offsets(n)):
            comps[p] = h.from_coordinates(coords[off:off + h.module.ngens])
        return GradedMap(self.X, self.Y, n, comps)

    def coords_of(self, f: GradedMap) -> np.ndarray:
        n = f.degree
        out = []
        for p, h in self.blocks.get(n, []):
            out.extend(h.coordinates(f[p]))
        return self.complex[n].reduce(out)


def hom_complex(X: Complex, Y: Complex) -> Complex:
    return HomComplex(X, Y).complex


# ---------------------------------------------------------------------------
# Homotopy solving.


def null_homotopy(f: GradedMap) -> Optional[Homotopy]:
    """A verified homotopy from ``f`` to zero, or ``None`` if none exists."""
    from .linsys import MapSystem

    sys_ = MapSystem(f.ring)
    rho = sys_.unknown(f.source, f.target, -1)
    sys_.equation([(1, f.target.differential(), rho, None),
                   (1, None, rho, f.source.differential())], f)
    sol = sys_.solve()
    if sol is None:
        return None
    cf = f if isinstance(f, ChainMap) else ChainMap.from_graded(f, check=False)
    h = Homotopy(cf, ChainMap.zero(f.source, f.target), sol[rho])
    assert h.verify()
    return h


def homotopy_between(f: ChainMap, g: ChainMap) -> Optional[Homotopy]:
    h = null_homotopy(f - g)
    if h is None:
        return None
    return Homotopy(f, g, h.rho)


def is_null_homotopic(f: GradedMap) -> bool:
    return null_homotopy(f) is not None
