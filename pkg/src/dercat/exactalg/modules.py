"""Finitely presented modules over ZZ or QQ and the maps between them.

Every :class:`FPModule` is stored in diagonal form: it is the cokernel of
``diag(moduli)``, one cyclic summand per generator, with modulus 0 for a free
summand.  General presentations are brought into this shape by
:func:`present`, which also returns the comparison isomorphisms.  Over QQ all
moduli are 0 and a module is just its dimension.

Conventions for degenerate cases: a module with no generators is the zero
module, and maps into or out of it are ``0 x n`` or ``n x 0`` matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .linalg import (
    Ring,
    as_matrix,
    identity,
    kernel as lattice_kernel,
    lattice_basis,
    smith_normal_form,
    solve,
    zeros,
)


@dataclass(frozen=True)
class FPModule:
    """The module ``R^g / diag(moduli)`` with ``moduli[i] == 0`` or ``>= 2``."""

    ring: Ring
    moduli: tuple = ()

    def __post_init__(self):
        mods = tuple(int(d) for d in self.moduli)
        if any(d < 0 or d == 1 for d in mods):
            raise ValueError(f"moduli must be 0 or >= 2, got {mods}")
        if self.ring is Ring.QQ and any(mods):
            raise ValueError("modules over QQ have no torsion")
        object.__setattr__(self, "moduli", mods)

    @classmethod
    def free(cls, ring: Ring, rank: int) -> "FPModule":
        return cls(ring, (0,) * rank)

    @classmethod
    def zero(cls, ring: Ring) -> "FPModule":
        return cls(ring, ())

    @classmethod
    def cyclic(cls, n: int) -> "FPModule":
        """``ZZ/n`` (``n == 0`` gives ``ZZ``; ``n == 1`` gives the zero module)."""
        return cls(Ring.ZZ, () if n == 1 else (abs(n),))

    @property
    def ngens(self) -> int:
        return len(self.moduli)

    @property
    def relations(self) -> np.ndarray:
        """Relation matrix with one column per torsion generator."""
        tors = [i for i, d in enumerate(self.moduli) if d]
        rel = zeros(self.ngens, len(tors), self.ring)
        for k, i in enumerate(tors):
            rel[i, k] = self.moduli[i]
        return rel

    def is_zero(self) -> bool:
        return self.ngens == 0

    def is_free(self) -> bool:
        return not any(self.moduli)

    def canonical(self) -> tuple:
        """``(free_rank, (d1, d2, ...))`` with ``d1 | d2 | ...`` and ``di > 1``."""
        free_rank = sum(1 for d in self.moduli if d == 0)
        tors = [d for d in self.moduli if d]
        if len(tors) <= 1:
            return free_rank, tuple(tors)
        snf = smith_normal_form(np.diag(np.array(tors, dtype=object)).astype(object))
        return free_rank, tuple(d for d in snf.diagonal if d != 1)

    def is_isomorphic(self, other: "FPModule") -> bool:
        return self.ring is other.ring and self.canonical() == other.canonical()

    def order(self) -> Optional[int]:
        """Number of elements, or ``None`` when infinite."""
        if any(d == 0 for d in self.moduli):
            return None
        out = 1
        for d in self.moduli:
            out *= d
        return out

    def reduce(self, vec) -> np.ndarray:
        out = np.array([self.ring.coerce(x) for x in vec], dtype=object)
        for i, d in enumerate(self.moduli):
            if d:
                out[i] = out[i] % d
        return out

    def is_zero_element(self, vec) -> bool:
        return all((x % d == 0) if d else x == 0 for x, d in zip(vec, self.moduli))

    def __add__(self, other: "FPModule") -> "FPModule":
        _check_ring(self, other)
        return FPModule(self.ring, self.moduli + other.moduli)

    def __str__(self) -> str:
        return describe(self.canonical(), self.ring)


def describe(canonical: tuple, ring: Ring) -> str:
    free_rank, tors = canonical
    base = ring.value
    parts = []
    if free_rank:
        parts.append(base if free_rank == 1 else f"{base}^{free_rank}")
    parts += [f"Z/{d}" for d in tors]
    return " + ".join(parts) if parts else "0"


def _check_ring(*objs):
    rings = {o.ring for o in objs}
    if len(rings) > 1:
        raise ValueError(f"ring mismatch: {sorted(r.value for r in rings)}")


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A homomorphism given by its action on generators.

    ``matrix`` has shape ``(target.ngens, source.ngens)``.  Rows are stored
    reduced modulo the target moduli; two maps are equal when their
    difference lands in the target relation lattice.
    """

    source: FPModule
    target: FPModule
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_ring(self.source, self.target)
        ring = self.source.ring
        raw = np.asarray(self.matrix, dtype=object)
        a = as_matrix(raw, ring) if raw.size else zeros(
            self.target.ngens, self.source.ngens, ring)
        if a.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(
                f"action matrix has shape {a.shape}, expected "
                f"{(self.target.ngens, self.source.ngens)}")
        for i, d in enumerate(self.target.moduli):
            if d:
                a[i] = a[i] % d
        for j, s in enumerate(self.source.moduli):
            if s and not self.target.is_zero_element(a[:, j] * s):
                raise ValueError(
                    f"generator {j} has order {s} but its image does not; "
                    "the map is not well defined")
        a.flags.writeable = False
        object.__setattr__(self, "matrix", a)

    @property
    def ring(self) -> Ring:
        return self.source.ring

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> "ModuleMap":
        return cls(source, target, zeros(target.ngens, source.ngens, source.ring))

    @classmethod
    def identity(cls, module: FPModule) -> "ModuleMap":
        return cls(module, module, identity(module.ngens, module.ring))

    def __call__(self, vec) -> np.ndarray:
        vec = np.asarray(vec, dtype=object).reshape(-1)
        if vec.shape[0] != self.source.ngens:
            raise ValueError("coordinate length mismatch")
        if not vec.size:
            return self.target.reduce([0] * self.target.ngens)
        return self.target.reduce(self.matrix @ vec)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix
                         if other.matrix.size and self.matrix.size else
                         zeros(self.target.ngens, other.source.ngens, self.ring))

    def _same_shape(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("maps have different sources or targets")

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        self._same_shape(other)
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        self._same_shape(other)
        return ModuleMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, -self.matrix)

    def __rmul__(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix * self.ring.coerce(c))

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(self.matrix[:, j])
                   for j in range(self.source.ngens))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self) -> str:
        return f"ModuleMap({self.source} -> {self.target}, {self.matrix.tolist()})"


def direct_sum_map(blocks: Sequence[Sequence[ModuleMap]]) -> ModuleMap:
    """The block map between direct sums; ``blocks[i][j]`` goes from summand j to i."""
    from .linalg import block

    sources = [b.source for b in blocks[0]]
    targets = [row[0].target for row in blocks]
    ring = sources[0].ring if sources else targets[0].ring
    mat = block([[b.matrix for b in row] for row in blocks], ring)
    src = FPModule(ring, sum((m.moduli for m in sources), ()))
    tgt = FPModule(ring, sum((m.moduli for m in targets), ()))
    return ModuleMap(src, tgt, mat)


# ---------------------------------------------------------------------------
# Subquotients of lattices: the single engine behind kernels, images,
# cokernels and cohomology.


class Subquotient:
    """The module ``L / L0`` for lattices ``L0 <= L <= R^g``.

    Attributes:
        module: the canonical diagonal module isomorphic to ``L / L0``.
        gens: ``g x k`` matrix whose columns lie in ``L`` and represent the
            generators of ``module``.
    """

    def __init__(self, ring: Ring, lattice: np.ndarray, sublattice: np.ndarray):
        self.ring = ring
        basis = lattice_basis(lattice, ring)
        k = basis.shape[1]
        coords = zeros(k, sublattice.shape[1], ring)
        for j in range(sublattice.shape[1]):
            c = solve(basis, sublattice[:, j], ring)
            if c is None:
                raise ValueError("sublattice is not contained in the lattice")
            coords[:, j] = c
        snf = smith_normal_form(coords, ring)
        diag = snf.diagonal + [0] * (k - len(snf.diagonal))
        diag = [abs(x) for x in diag]
        keep = [i for i, dd in enumerate(diag) if dd != 1]
        self._basis = basis
        self._u = snf.u
        self._keep = keep
        self.module = FPModule(ring, tuple(int(diag[i]) for i in keep)
                               if ring is Ring.ZZ else (0,) * len(keep))
        new_gens = basis @ snf.u_inv if k else zeros(basis.shape[0], 0, ring)
        self.gens = np.ascontiguousarray(new_gens[:, keep])

    def coords(self, vec) -> Optional[np.ndarray]:
        """Coordinates in ``module`` of a vector of ``L`` (``None`` if not in ``L``)."""
        vec = np.asarray(vec, dtype=object).reshape(-1)
        c = solve(self._basis, vec, self.ring)
        if c is None:
            return None
        out = (self._u @ c)[self._keep] if c.size else np.empty(0, dtype=object)
        return self.module.reduce(out)

    def coords_matrix(self, vecs: np.ndarray) -> np.ndarray:
        out = zeros(self.module.ngens, vecs.shape[1], self.ring)
        for j in range(vecs.shape[1]):
            c = self.coords(vecs[:, j])
            if c is None:
                raise ValueError(f"column {j} does not lie in the lattice")
            out[:, j] = c
        return out


def _relation_columns(module: FPModule) -> np.ndarray:
    return module.relations


def _hstack(ring, *mats, rows):
    mats = [m for m in mats if m.shape[1]]
    if not mats:
        return zeros(rows, 0, ring)
    return np.concatenate(mats, axis=1)


class Kernel:
    """Kernel of a module map with its inclusion."""

    def __init__(self, f: ModuleMap):
        ring = f.ring
        g = f.source.ngens
        lat = lattice_kernel(f.matrix, ring, f.target.moduli) if g else zeros(0, 0, ring)
        self.sq = Subquotient(ring, lat, _relation_columns(f.source))
        self.module = self.sq.module
        self.inclusion = ModuleMap(self.module, f.source, self.sq.gens)

    def lift(self, vec) -> Optional[np.ndarray]:
        """Coordinates in the kernel of a source element (``None`` if not in it)."""
        return self.sq.coords(vec)


class Image:
    """Image of a module map as a submodule of the target."""

    def __init__(self, f: ModuleMap):
        ring = f.ring
        n = f.target.ngens
        lat = _hstack(ring, f.matrix, _relation_columns(f.target), rows=n)
        self.sq = Subquotient(ring, lat, _relation_columns(f.target))
        self.module = self.sq.module
        self.inclusion = ModuleMap(self.module, f.target, self.sq.gens)
        # source -> image, the corestriction of f
        self.corestriction = ModuleMap(f.source, self.module, self.sq.coords_matrix(
            f.matrix if f.source.ngens else zeros(n, 0, ring)))


class Cokernel:
    """Cokernel of a module map with its projection."""

    def __init__(self, f: ModuleMap):
        ring = f.ring
        n = f.target.ngens
        sub = _hstack(ring, f.matrix, _relation_columns(f.target), rows=n)
        self.sq = Subquotient(ring, identity(n, ring), sub)
        self.module = self.sq.module
        self.projection = ModuleMap(f.target, self.module,
                                    self.sq.coords_matrix(identity(n, ring)))

    def section(self) -> np.ndarray:
        """Columns lifting each cokernel generator back to the target."""
        return self.sq.gens


def kernel_image_cokernel(f: ModuleMap):
    """``(Kernel, Image, Cokernel)`` of ``f``, each carrying its structure map."""
    return Kernel(f), Image(f), Cokernel(f)


def solve_linear(f: ModuleMap, y) -> Optional[np.ndarray]:
    """Some ``x`` with ``f(x) == y`` modulo the target relations, or ``None``."""
    y = np.asarray([f.ring.coerce(t) for t in y], dtype=object)
    if y.shape[0] != f.target.ngens:
        raise ValueError(f"expected {f.target.ngens} target coordinates, got {y.shape[0]}")
    if f.source.ngens == 0:
        return np.empty(0, dtype=object) if f.target.is_zero_element(y) else None
    x = solve(f.matrix, y, f.ring, f.target.moduli)
    return None if x is None else f.source.reduce(x)


def is_injective(f: ModuleMap) -> bool:
    return Kernel(f).module.is_zero()


def is_surjective(f: ModuleMap) -> bool:
    return Cokernel(f).module.is_zero()


def is_isomorphism(f: ModuleMap) -> bool:
    return is_injective(f) and is_surjective(f)


def is_exact_at(f: ModuleMap, g: ModuleMap) -> bool:
    """Whether ``im f == ker g`` for ``f: A -> B`` and ``g: B -> C``."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    if not (g @ f).is_zero():
        return False
    ker = Kernel(g)
    return all(solve_linear(f, ker.inclusion.matrix[:, j]) is not None
               for j in range(ker.module.ngens))


# ---------------------------------------------------------------------------
# Hom and tensor.


def _hom_scale(ring: Ring, target_mod: int, source_mod: int) -> int:
    """Smallest entry a generator-to-generator map can carry (0 if none)."""
    if ring is Ring.QQ:
        return 1
    if target_mod == 0:
        return 0 if source_mod else 1
    if source_mod == 0:
        return 1
    return target_mod // gcd(target_mod, source_mod)


class HomModule:
    """``Hom(M, N)`` with every generator realized by a concrete map.

    Generator ``k`` corresponds to a pair ``(i, j)`` (target generator ``i``,
    source generator ``j``) in row-major order, and is the map sending
    generator ``j`` to ``scale * e_i``.
    """

    def __init__(self, source: FPModule, target: FPModule):
        _check_ring(source, target)
        ring = source.ring
        self.source, self.target, self.ring = source, target, ring
        pairs, scales, mods = [], [], []
        for i, n in enumerate(target.moduli):
            for j, m in enumerate(source.moduli):
                t = _hom_scale(ring, n, m)
                order = gcd(n, m) if ring is Ring.ZZ else 0
                if t == 0 or order == 1:
                    continue
                pairs.append((i, j))
                scales.append(t)
                mods.append(order)
        self.pairs = tuple(pairs)
        self.scales = tuple(scales)
        self.module = FPModule(ring, tuple(mods))

    @property
    def basis_maps(self) -> list:
        out = []
        for (i, j), t in zip(self.pairs, self.scales):
            a = zeros(self.target.ngens, self.source.ngens, self.ring)
            a[i, j] = self.ring.coerce(t)
            out.append(ModuleMap(self.source, self.target, a))
        return out

    def coordinates(self, f) -> np.ndarray:
        a = f.matrix if isinstance(f, ModuleMap) else f
        out = np.empty(len(self.pairs), dtype=object)
        for k, ((i, j), t) in enumerate(zip(self.pairs, self.scales)):
            x = a[i, j]
            n = self.target.moduli[i]
            if n:
                x %= n
            out[k] = x / t if self.ring is Ring.QQ else x // t
        return self.module.reduce(out)

    def from_coordinates(self, coords) -> ModuleMap:
        a = zeros(self.target.ngens, self.source.ngens, self.ring)
        for (i, j), t, c in zip(self.pairs, self.scales, coords):
            a[i, j] = a[i, j] + self.ring.coerce(c) * t
        return ModuleMap(self.source, self.target, a)

    def operator_matrix(self, left: np.ndarray, right: np.ndarray, out: "HomModule",
                        coeff=1) -> np.ndarray:
        """Matrix of ``phi -> coeff * left @ phi @ right`` from this Hom to ``out``."""
        ring = self.ring
        res = zeros(out.module.ngens, self.module.ngens, ring)
        c = ring.coerce(coeff)
        for k, ((i, j), t) in enumerate(zip(self.pairs, self.scales)):
            # left[:, i] * t * right[j, :]
            img = np.outer(left[:, i], right[j, :]) * (c * t)
            for kk, ((p, q), tt) in enumerate(zip(out.pairs, out.scales)):
                x = img[p, q]
                n = out.target.moduli[p]
                if n:
                    x %= n
                res[kk, k] = x / tt if ring is Ring.QQ else x // tt
        return res


def hom_module(source: FPModule, target: FPModule):
    """``(Hom(source, target), basis maps)``; see :class:`HomModule`."""
    h = HomModule(source, target)
    return h.module, h.basis_maps


class TensorModule:
    """``M (x) N`` on generator pairs ``(i, j)`` in row-major order."""

    def __init__(self, left: FPModule, right: FPModule):
        _check_ring(left, right)
        ring = left.ring
        self.left, self.right, self.ring = left, right, ring
        pairs, mods = [], []
        for i, m in enumerate(left.moduli):
            for j, n in enumerate(right.moduli):
                d = gcd(m, n) if ring is Ring.ZZ else 0
                if d == 1:
                    continue
                pairs.append((i, j))
                mods.append(d)
        self.pairs = tuple(pairs)
        self.module = FPModule(ring, tuple(mods))

    def index(self) -> dict:
        return {p: k for k, p in enumerate(self.pairs)}


def tensor_module(left: FPModule, right: FPModule) -> FPModule:
    return TensorModule(left, right).module


def tensor_maps(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    """``f (x) g`` between the tensor modules of sources and targets."""
    src = TensorModule(f.source, g.source)
    tgt = TensorModule(f.target, g.target)
    full = np.kron(f.matrix, g.matrix) if f.matrix.size and g.matrix.size else None
    a = zeros(tgt.module.ngens, src.module.ngens, f.ring)
    if full is not None:
        gn = g.target.ngens
        gs = g.source.ngens
        for r, (i, j) in enumerate(tgt.pairs):
            for c, (p, q) in enumerate(src.pairs):
                a[r, c] = full[i * gn + j, p * gs + q]
    return ModuleMap(src.module, tgt.module, a)


# ---------------------------------------------------------------------------
# General presentations.


class Presentation:
    """A module given as ``R^g / (column span of relations)``, canonicalized.

    Attributes:
        module: canonical diagonal module.
        to_canonical: ``module.ngens x g`` matrix sending old generators to
            canonical coordinates.
        from_canonical: ``g x module.ngens`` matrix sending canonical
            generators back to old coordinates.
    """

    def __init__(self, ring: Ring, generators: int, relations):
        rel = as_matrix(np.asarray(relations, dtype=object).reshape(generators, -1)
                        if generators else zeros(0, 0, ring), ring)
        self.ring = ring
        self.generators = generators
        self.relations = rel
        sq = Subquotient(ring, identity(generators, ring), rel)
        self.module = sq.module
        self.from_canonical = sq.gens
        self.to_canonical = sq.coords_matrix(identity(generators, ring))

    def map_from(self, other: "Presentation", action) -> ModuleMap:
        """Canonical form of a map given on the old generators of ``other``."""
        a = as_matrix(action, self.ring)
        return ModuleMap(other.module, self.module,
                         self.to_canonical @ a @ other.from_canonical)


def present(ring: Ring, generators: int, relations) -> Presentation:
    return Presentation(ring, generators, relations)


def tensor_presented(left: Presentation, right: Presentation) -> Presentation:
    """Tensor of two presentations: generator pairs, Kronecker relations."""
    ring = left.ring
    g, h = left.generators, right.generators
    rel = _hstack(ring,
                  np.kron(left.relations, identity(h, ring)) if left.relations.size else zeros(g * h, 0, ring),
                  np.kron(identity(g, ring), right.relations) if right.relations.size else zeros(g * h, 0, ring),
                  rows=g * h)
    return present(ring, g * h, rel)
