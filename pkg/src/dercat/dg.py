"""Finite-dimensional dg algebras, dg categories and dg modules over Q.

Structure constants are stored densely:

* algebra: ``mult[i, j, k]`` is the coefficient of ``e_k`` in ``e_i e_j``;
* module (right): ``act[i, j, k]`` is the coefficient of ``x_k`` in ``x_i a_j``;
* differentials: column ``j`` of ``diff`` is ``d(e_j)``.

A dg category with finitely many objects is a dg algebra whose basis
elements carry ``(source, target)`` labels; composable pairs multiply as
``e_i e_j = e_i o e_j`` and non-composable ones must multiply to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .complexes import ChainMap, Complex
from .exactalg.linalg import Ring, identity, kernel, solve, zeros
from .exactalg.modules import FPModule

QQ = Ring.QQ


def _q(a) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for i, x in enumerate(flat_in):
        if isinstance(x, float):
            raise TypeError("floating-point structure constant")
        flat_out[i] = Fraction(x)
    return out


@dataclass(frozen=True, eq=False)
class DGAlgebra:
    degrees: Tuple[int, ...]
    mult: np.ndarray
    diff: np.ndarray
    unit: np.ndarray
    labels: Tuple[str, ...] = ()
    objects: Optional[Tuple[Tuple[str, str], ...]] = None

    def __post_init__(self):
        n = len(self.degrees)
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "mult", _q(self.mult).reshape(n, n, n))
        object.__setattr__(self, "diff", _q(self.diff).reshape(n, n))
        object.__setattr__(self, "unit", _q(self.unit).reshape(n))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(n)))
        if len(self.labels) != n:
            raise ValueError("one label per basis element")
        if self.objects is not None and len(self.objects) != n:
            raise ValueError("one (source, target) pair per basis element")

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def product(self, x, y) -> np.ndarray:
        x, y = _q(x), _q(y)
        return np.tensordot(np.tensordot(x, self.mult, axes=([0], [0])), y, axes=([0], [0]))

    def d(self, x) -> np.ndarray:
        return self.diff @ _q(x)


@dataclass(frozen=True, eq=False)
class DGModule:
    """A right dg module over ``algebra``."""

    algebra: DGAlgebra
    degrees: Tuple[int, ...]
    act: np.ndarray
    diff: np.ndarray
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        n, na = len(self.degrees), self.algebra.dim
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        object.__setattr__(self, "act", _q(self.act).reshape(n, na, n))
        object.__setattr__(self, "diff", _q(self.diff).reshape(n, n))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i}" for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.degrees)


# ---------------------------------------------------------------------------
# Axiom checks.


@dataclass(frozen=True, order=True)
class Violation:
    axiom: str
    location: Tuple[int, ...]
    degree: int


@dataclass(frozen=True)
class DGReport:
    violations: Tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def locations(self) -> set:
        return {(v.axiom, v.location) for v in self.violations}

    def lines(self) -> List[str]:
        return [f"{v.axiom} at {v.location} (degree {v.degree})" for v in self.violations]


def _integral(*arrays):
    """Scale all arrays by one common denominator; int64 when safe."""
    den = 1
    from math import lcm

    for a in arrays:
        for x in a.reshape(-1):
            den = lcm(den, x.denominator)
    scaled = [np.vectorize(lambda x: int(x * den), otypes=[object])(a) if a.size else
              np.zeros(a.shape, dtype=object) for a in arrays]
    peak = max((max((abs(int(x)) for x in s.reshape(-1)), default=0) for s in scaled), default=0)
    n = max((max(s.shape) if s.ndim else 1 for s in scaled), default=1)
    if peak * peak * (n + 1) * (n + 1) * 4 < 2 ** 62:
        scaled = [s.astype(np.int64) for s in scaled]
    return scaled


def _nz(a) -> np.ndarray:
    return np.argwhere(a != 0)


def check_dg_algebra(A: DGAlgebra) -> DGReport:
    """Every failed axiom with the offending basis index tuple.

    Axioms: grading of ``mult``/``diff``/``unit``, ``d^2 = 0`` (location: the
    basis element), Leibniz on pairs, associativity on triples, unit laws on
    single elements, and composability for dg categories.
    """
    n = A.dim
    deg = np.array(A.degrees, dtype=np.int64)
    M, D, U = _integral(A.mult, A.diff, A.unit)
    out = []
    # grading
    for i, j, k in _nz(M):
        if deg[k] != deg[i] + deg[j]:
            out.append(Violation("grading", (int(i), int(j), int(k)), int(deg[i] + deg[j])))
    for i, j in _nz(D):
        if deg[i] != deg[j] + 1:
            out.append(Violation("grading", (int(i), int(j)), int(deg[j] + 1)))
    for (i,) in _nz(U):
        if deg[i] != 0:
            out.append(Violation("unit", (int(i),), int(deg[i])))
    if A.objects is not None:
        for i, j, k in _nz(M):
            if _composable(A.objects, i, j, k):
                continue
            out.append(Violation("composition", (int(i), int(j), int(k)), int(deg[k])))
    # d^2 = 0
    dd = D @ D
    for j in sorted({int(j) for _, j in _nz(dd)}):
        out.append(Violation("d2", (j,), int(deg[j])))
    # Leibniz: d(e_i e_j) = d(e_i) e_j + (-1)^{|i|} e_i d(e_j)
    lhs = np.tensordot(M, D, axes=([2], [1]))          # [i, j, out]
    t1 = np.tensordot(D, M, axes=([0], [0]))           # [i, j, out] : sum_l D[l,i] M[l,j,:]
    t2 = _t2(M, D)
    sign = np.where(deg % 2 == 0, 1, -1).astype(lhs.dtype if lhs.dtype != object else np.int64)
    diffl = lhs - t1 - sign[:, None, None] * t2
    for i, j in sorted({(int(i), int(j)) for i, j, _ in _nz(diffl)}):
        out.append(Violation("leibniz", (i, j), int(deg[i] + deg[j] + 1)))
    # associativity: (e_i e_j) e_k = e_i (e_j e_k)
    left = np.tensordot(M, M, axes=([2], [0]))          # [i, j, k, out]
    right = np.tensordot(M, M, axes=([1], [2]))         # [i, out, j, k] via e_i (sum M[j,k,l] e_l)
    right = np.transpose(right, (0, 2, 3, 1))
    da = left - right
    for i, j, k in sorted({(int(i), int(j), int(k)) for i, j, k, _ in _nz(da)}):
        out.append(Violation("associativity", (i, j, k), int(deg[i] + deg[j] + deg[k])))
    # unit: u e_i = e_i = e_i u (scaled by the common denominator squared)
    scale = _scale_of(A.mult, A.diff, A.unit)
    ul = np.tensordot(U, M, axes=([0], [0]))            # [i, out] = u e_i
    ur = np.tensordot(M, U, axes=([1], [0]))            # [i, out] = e_i u
    eye = np.eye(n, dtype=ul.dtype if ul.dtype != object else np.int64) * (scale * scale)
    bad = {int(i) for i, _ in _nz(ul - eye)} | {int(i) for i, _ in _nz(ur - eye)}
    for i in sorted(bad):
        out.append(Violation("unit", (i,), int(deg[i])))
    return DGReport(tuple(sorted(out)))


def _composable(objects, i, j, k) -> bool:
    """``e_i e_j = e_i o e_j`` may only hit ``e_k`` in ``Hom(source e_j, target e_i)``."""
    si, ti = objects[i]
    sj, tj = objects[j]
    return tj == si and tuple(objects[k]) == (sj, ti)


def _t2(M, D):
    out = np.tensordot(M, D, axes=([1], [0]))           # [i, k, j] = sum_l M[i,l,k] D[l,j]
    return np.transpose(out, (0, 2, 1))


def _scale_of(*arrays) -> int:
    from math import lcm

    den = 1
    for a in arrays:
        for x in a.reshape(-1):
            den = lcm(den, x.denominator)
    return den


def check_dg_module(X: DGModule) -> DGReport:
    """Grading, ``d^2``, module Leibniz, associativity and unit for a right module."""
    A = X.algebra
    degx = np.array(X.degrees, dtype=np.int64)
    dega = np.array(A.degrees, dtype=np.int64)
    M, DA, U, ACT, DX = _integral(A.mult, A.diff, A.unit, X.act, X.diff)
    s = _scale_of(A.mult, A.diff, A.unit, X.act, X.diff)
    out = []
    for i, j, k in _nz(ACT):
        if degx[k] != degx[i] + dega[j]:
            out.append(Violation("grading", (int(i), int(j), int(k)), int(degx[i] + dega[j])))
    for i, j in _nz(DX):
        if degx[i] != degx[j] + 1:
            out.append(Violation("grading", (int(i), int(j)), int(degx[j] + 1)))
    dd = DX @ DX
    for j in sorted({int(j) for _, j in _nz(dd)}):
        out.append(Violation("d2", (j,), int(degx[j])))
    # d(x_i a_j) = d(x_i) a_j + (-1)^{|x_i|} x_i d(a_j)
    lhs = np.tensordot(ACT, DX, axes=([2], [1]))
    t1 = np.tensordot(DX, ACT, axes=([0], [0]))
    t2 = np.transpose(np.tensordot(ACT, DA, axes=([1], [0])), (0, 2, 1))
    sign = np.where(degx % 2 == 0, 1, -1)
    diffl = lhs - t1 - sign[:, None, None] * t2
    for i, j in sorted({(int(i), int(j)) for i, j, _ in _nz(diffl)}):
        out.append(Violation("leibniz", (i, j), int(degx[i] + dega[j] + 1)))
    # (x_i a_j) a_k = x_i (a_j a_k)
    left = np.tensordot(ACT, ACT, axes=([2], [0]))      # [i, j, k, out]
    right = np.transpose(np.tensordot(ACT, M, axes=([1], [2])), (0, 2, 3, 1))
    da = left - right
    for i, j, k in sorted({(int(i), int(j), int(k)) for i, j, k, _ in _nz(da)}):
        out.append(Violation("associativity", (i, j, k), int(degx[i] + dega[j] + dega[k])))
    ur = np.tensordot(ACT, U, axes=([1], [0]))          # [i, out] = x_i u
    eye = np.eye(X.dim, dtype=np.int64) * (s * s)
    for i in sorted({int(i) for i, _ in _nz(ur - eye)}):
        out.append(Violation("unit", (i,), int(degx[i])))
    return DGReport(tuple(sorted(out)))


# ---------------------------------------------------------------------------
# Constructions.


def opposite_algebra(A: DGAlgebra) -> DGAlgebra:
    """``e_i * e_j = (-1)^{|i||j|} e_j e_i``, same differential."""
    deg = A.degrees
    n = A.dim
    m = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            s = -1 if (deg[i] * deg[j]) % 2 else 1
            m[i, j, :] = s * A.mult[j, i, :]
    objs = None if A.objects is None else tuple((t, s) for s, t in A.objects)
    return DGAlgebra(A.degrees, m, A.diff, A.unit, tuple(l + "^op" for l in A.labels), objs)


def _end_basis(X: Complex):
    """Elementary maps ``X^p -> X^{p+n}`` as ``(n, p, row, col)``, ordered by degree."""
    out = []
    degs = list(X.degrees)
    for n in range(-(len(degs) - 1), len(degs)) if degs else []:
        for p in degs:
            if X[p + n].ngens == 0:
                continue
            for r in range(X[p + n].ngens):
                for c in range(X[p].ngens):
                    out.append((n, p, r, c))
    return out


def _full_matrix(X: Complex):
    """Offsets of each degree in the total space of ``X``."""
    off, acc = {}, 0
    for p in X.degrees:
        off[p] = acc
        acc += X[p].ngens
    return off, acc


def end_complex_as_dga(X: Complex, objects_of: Optional[Sequence[str]] = None) -> DGAlgebra:
    """``End(X)`` with composition as product and ``d(f) = d f - (-1)^n f d``."""
    if X.ring is not QQ:
        raise ValueError("dg algebras are built over Q")
    basis = _end_basis(X)
    N = len(basis)
    off, tot = _full_matrix(X)
    # represent each basis element as a total-space matrix
    mats = []
    for n, p, r, c in basis:
        m = np.zeros((tot, tot), dtype=object)
        m[:] = Fraction(0)
        m[off[p + n] + r, off[p] + c] = Fraction(1)
        mats.append(m)
    dX = np.zeros((tot, tot), dtype=object)
    dX[:] = Fraction(0)
    for p in X.degrees:
        if X[p + 1].ngens and X[p].ngens:
            dX[off[p + 1]:off[p + 1] + X[p + 1].ngens, off[p]:off[p] + X[p].ngens] = X.d(p).matrix
    index = {b: i for i, b in enumerate(basis)}
    deg_of = {}
    for i, (n, p, r, c) in enumerate(basis):
        deg_of[i] = n

    def coords(m):
        v = np.zeros(N, dtype=object)
        v[:] = Fraction(0)
        for i, (n, p, r, c) in enumerate(basis):
            v[i] = m[off[p + n] + r, off[p] + c]
        return v

    mult = np.zeros((N, N, N), dtype=object)
    mult[:] = Fraction(0)
    for i in range(N):
        for j in range(N):
            prod = mats[i] @ mats[j]
            if any(x != 0 for x in prod.reshape(-1)):
                mult[i, j, :] = coords(prod)
    diff = np.zeros((N, N), dtype=object)
    diff[:] = Fraction(0)
    for j, (n, p, r, c) in enumerate(basis):
        s = -1 if n % 2 else 1
        diff[:, j] = coords(dX @ mats[j] - s * (mats[j] @ dX))
    unit = coords(np.vectorize(Fraction, otypes=[object])(identity(tot, QQ))) if tot else np.zeros(0, dtype=object)
    labels = tuple(f"E[{n}]{p}:{r},{c}" for n, p, r, c in basis)
    objects = None
    if objects_of is not None:
        objects = tuple((objects_of[off[p] + c], objects_of[off[p + n] + r]) for n, p, r, c in basis)
    return DGAlgebra(tuple(deg_of[i] for i in range(N)), mult, diff, unit, labels, objects)


def end_category(complexes: Sequence[Complex], names: Optional[Sequence[str]] = None) -> DGAlgebra:
    """The dg category on finitely many complexes (as an algebra with object labels)."""
    from .complexes import direct_sum

    names = list(names or [f"X{i}" for i in range(len(complexes))])
    S = direct_sum(*complexes)
    owner = []
    for p in S.degrees:
        for k, X in enumerate(complexes):
            owner.extend([names[k]] * X[p].ngens)
    return end_complex_as_dga(S, owner)


def exterior_algebra(degree: int, dx: int = 0) -> DGAlgebra:
    """``Q[x]/(x^2)`` with ``|x| = degree`` and ``d(x) = dx * 1``."""
    mult = np.zeros((2, 2, 2), dtype=object)
    mult[:] = Fraction(0)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = Fraction(1)
    diff = np.zeros((2, 2), dtype=object)
    diff[:] = Fraction(0)
    diff[0, 1] = Fraction(dx)
    return DGAlgebra((0, degree), mult, diff, [1, 0], ("1", "x"))


def change_basis(A: DGAlgebra, g: np.ndarray) -> DGAlgebra:
    """Re-express ``A`` in the basis ``e'_j = sum_k g[k, j] e_k`` (degree-preserving ``g``)."""
    g = _q(g)
    n = A.dim
    ginv = _inverse(g)
    # e'_i e'_j = sum g[a,i] g[b,j] e_a e_b ; coordinates in new basis via ginv
    t = np.tensordot(np.tensordot(g, A.mult, axes=([0], [0])), g, axes=([1], [0]))  # [i, c, j]
    t = np.transpose(t, (0, 2, 1))                     # [i, j, c]
    mult = np.tensordot(t, ginv, axes=([2], [1]))      # [i, j, k]
    diff = ginv @ A.diff @ g
    unit = ginv @ A.unit
    return DGAlgebra(A.degrees, mult, diff, unit, A.labels, A.objects)


def _inverse(g: np.ndarray) -> np.ndarray:
    n = g.shape[0]
    out = np.empty((n, n), dtype=object)
    for j in range(n):
        e = np.zeros(n, dtype=object)
        e[:] = Fraction(0)
        e[j] = Fraction(1)
        x = solve(g, e, QQ)
        if x is None:
            raise ValueError("basis change is not invertible")
        out[:, j] = x
    return out


# ---------------------------------------------------------------------------
# Modules.


def free_module(A: DGAlgebra) -> DGModule:
    """``A`` as a right module over itself."""
    return DGModule(A, A.degrees, A.mult, A.diff, tuple(A.labels))


def hom_module_over_end(V: Complex, W: Complex) -> Tuple[DGAlgebra, DGModule]:
    """``Hom(V, W)`` as a right dg module over ``End(V)`` by precomposition."""
    from .complexes import HomComplex

    A = end_complex_as_dga(V)
    H = HomComplex(V, W)
    offv, totv = _full_matrix(V)
    offw, totw = _full_matrix(W)
    basis = []
    for n in H.complex.degrees:
        for p in V.degrees:
            for r in range(W[p + n].ngens):
                for c in range(V[p].ngens):
                    basis.append((n, p, r, c))
    N = len(basis)

    def mat(b):
        n, p, r, c = b
        m = np.zeros((totw, totv), dtype=object)
        m[:] = Fraction(0)
        m[offw[p + n] + r, offv[p] + c] = Fraction(1)
        return m

    def coords(m):
        v = np.zeros(N, dtype=object)
        v[:] = Fraction(0)
        for i, (n, p, r, c) in enumerate(basis):
            v[i] = m[offw[p + n] + r, offv[p] + c]
        return v

    amats = []
    for n, p, r, c in _end_basis(V):
        m = np.zeros((totv, totv), dtype=object)
        m[:] = Fraction(0)
        m[offv[p + n] + r, offv[p] + c] = Fraction(1)
        amats.append(m)
    dV = _total_diff(V, offv, totv)
    dW = _total_diff(W, offw, totw)
    act = np.zeros((N, A.dim, N), dtype=object)
    act[:] = Fraction(0)
    diff = np.zeros((N, N), dtype=object)
    diff[:] = Fraction(0)
    for i, b in enumerate(basis):
        mb = mat(b)
        for j, am in enumerate(amats):
            act[i, j, :] = coords(mb @ am)
        s = -1 if b[0] % 2 else 1
        diff[:, i] = coords(dW @ mb - s * (mb @ dV))
    return A, DGModule(A, tuple(b[0] for b in basis), act, diff)


def _total_diff(X: Complex, off, tot):
    d = np.zeros((tot, tot), dtype=object)
    d[:] = Fraction(0)
    for p in X.degrees:
        if X[p + 1].ngens and X[p].ngens:
            d[off[p + 1]:off[p + 1] + X[p + 1].ngens, off[p]:off[p] + X[p].ngens] = X.d(p).matrix
    return d


def dg_dual(X: DGModule) -> DGModule:
    """``DX`` over the opposite algebra: ``(DX)^n = Hom(X^{-n}, Q)``.

    With dual basis ``xi_i`` (``|xi_i| = -|x_i|``): ``d(xi)(m) = (-1)^{n+1} xi(dm)``
    and ``(xi . a)(m) = (-1)^{|a|(|xi|+1)} xi(m a)``.  The action sign is
    the one that makes the module Leibniz rule hold for this differential.
    """
    A = X.algebra
    Aop = opposite_algebra(A)
    n = X.dim
    degs = tuple(-d for d in X.degrees)
    diff = np.empty((n, n), dtype=object)
    for j in range(n):
        s = -1 if (degs[j] + 1) % 2 else 1
        # d(xi_j) = sum_i c_i xi_i with c_i = (d xi_j)(x_i) = s * xi_j(d x_i) = s * X.diff[j, i]
        diff[:, j] = [s * X.diff[j, i] for i in range(n)]
    act = np.empty((n, A.dim, n), dtype=object)
    for j in range(n):
        for a in range(A.dim):
            s = -1 if (A.degrees[a] * (degs[j] + 1)) % 2 else 1
            # (xi_j . a)(x_i) = s * xi_j(x_i a) = s * X.act[i, a, j]
            act[j, a, :] = [s * X.act[i, a, j] for i in range(n)]
    return DGModule(Aop, degs, act, diff, tuple(f"D({l})" for l in X.labels))


@dataclass(frozen=True, eq=False)
class DGMap:
    """A degree-``degree`` graded map; column ``j`` is the image of basis vector ``j``."""

    source: DGModule
    target: DGModule
    matrix: np.ndarray
    degree: int = 0

    def is_homogeneous(self) -> bool:
        for i, j in _nz(self.matrix):
            if self.target.degrees[i] != self.source.degrees[j] + self.degree:
                return False
        return True

    def is_linear(self) -> bool:
        """``f(x a) = f(x) a`` for all basis ``x``, ``a``."""
        f = self.matrix
        S, T = self.source, self.target
        for a in range(S.algebra.dim):
            left = f @ S.act[:, a, :].T
            right = T.act[:, a, :].T @ f
            if (left != right).any():
                return False
        return True

    def commutes(self) -> bool:
        s = -1 if self.degree % 2 else 1
        return not (self.target.diff @ self.matrix - s * (self.matrix @ self.source.diff) != 0).any()

    def verify(self) -> bool:
        return self.is_homogeneous() and self.is_linear() and self.commutes()


def evaluation_map(X: DGModule) -> DGMap:
    """``X -> DDX``, ``x_i -> (-1)^{|x_i|} xi_i^*``; a dg isomorphism."""
    DD = dg_dual(dg_dual(X))
    n = X.dim
    m = np.zeros((n, n), dtype=object)
    m[:] = Fraction(0)
    for i, d in enumerate(X.degrees):
        m[i, i] = Fraction(_EV_SIGN(d))
    return DGMap(X, _retarget(DD, X.algebra), m)


def _EV_SIGN(d: int) -> int:
    return -1 if d % 2 else 1


def _retarget(M: DGModule, A: DGAlgebra) -> DGModule:
    """View a module over ``(A^op)^op`` as a module over ``A`` (same constants)."""
    return DGModule(A, M.degrees, M.act, M.diff, M.labels)


# ---------------------------------------------------------------------------
# Hom complexes of dg modules.


class DGHomComplex:
    """Complex of ``A``-linear graded maps ``X -> Y`` with ``D f = d f - (-1)^k f d``.

    ``basis[k]`` lists the ``A``-linear maps of degree ``k`` as matrices.
    """

    def __init__(self, X: DGModule, Y: DGModule):
        if X.algebra.dim != Y.algebra.dim:
            raise ValueError("modules over different algebras")
        self.X, self.Y = X, Y
        ks = sorted({dy - dx for dx in X.degrees for dy in Y.degrees})
        self.basis = {}
        for k in ks:
            self.basis[k] = self._linear_maps(k)
        lo = min(ks) if ks else 0
        hi = max(ks) if ks else -1
        mods, diffs = [], []
        for k in range(lo, hi + 1):
            mods.append(FPModule(QQ, (0,) * len(self.basis.get(k, []))))
        for k in range(lo, hi):
            src, tgt = self.basis.get(k, []), self.basis.get(k + 1, [])
            mat = zeros(len(tgt), len(src), QQ)
            s = -1 if k % 2 else 1
            for j, f in enumerate(src):
                Df = Y.diff @ f - s * (f @ X.diff)
                mat[:, j] = self.coords(k + 1, Df)
            diffs.append(mat)
        self.complex = Complex(QQ, lo, mods, diffs)

    def _linear_maps(self, k: int) -> List[np.ndarray]:
        X, Y = self.X, self.Y
        slots = [(i, j) for i in range(Y.dim) for j in range(X.dim)
                 if Y.degrees[i] == X.degrees[j] + k]
        if not slots:
            return []
        rows = []
        for a in range(X.algebra.dim):
            SA = X.act[:, a, :].T          # X -> X, right mult by a
            TA = Y.act[:, a, :].T
            # (f SA - TA f)[r, c] = sum_j f[r, j] SA[j, c] - sum_i TA[r, i] f[i, c]
            for r in range(Y.dim):
                for c in range(X.dim):
                    row = [Fraction(0)] * len(slots)
                    for s_idx, (i, j) in enumerate(slots):
                        v = Fraction(0)
                        if i == r:
                            v += SA[j, c]
                        if j == c:
                            v -= TA[r, i]
                        row[s_idx] = v
                    if any(row):
                        rows.append(row)
        if rows:
            K = kernel(np.array(rows, dtype=object), QQ)
        else:
            K = identity(len(slots), QQ)
        out = []
        for col in range(K.shape[1]):
            f = np.zeros((Y.dim, X.dim), dtype=object)
            f[:] = Fraction(0)
            for s_idx, (i, j) in enumerate(slots):
                f[i, j] = Fraction(K[s_idx, col])
            out.append(f)
        return out

    def coords(self, k: int, f: np.ndarray) -> np.ndarray:
        basis = self.basis.get(k, [])
        if not basis:
            return np.zeros(0, dtype=object)
        B = np.array([b.reshape(-1) for b in basis], dtype=object).T
        x = solve(B, f.reshape(-1), QQ)
        if x is None:
            raise ValueError("map is not A-linear of the given degree")
        return x

    def to_map(self, k: int, coords) -> np.ndarray:
        f = np.zeros((self.Y.dim, self.X.dim), dtype=object)
        f[:] = Fraction(0)
        for c, b in zip(coords, self.basis.get(k, [])):
            f = f + Fraction(c) * b
        return f


def hom_c_dim(X: DGModule, Y: DGModule) -> int:
    """``dim Hom_{C_dg}(X, Y)``: degree-0 cocycles of the Hom complex."""
    H = DGHomComplex(X, Y).complex
    from .exactalg.linalg import rank

    d0 = H.d(0).matrix
    return H[0].ngens - (rank(d0, QQ) if d0.size else 0)


def hom_k_dim(X: DGModule, Y: DGModule) -> int:
    H = DGHomComplex(X, Y).complex
    return H.cohomology(0).group.ngens


def underlying_complex(X: DGModule) -> Complex:
    degs = sorted(set(X.degrees))
    if not degs:
        return Complex.zero(QQ)
    idx = {d: [i for i, e in enumerate(X.degrees) if e == d] for d in degs}
    rng = range(degs[0], degs[-1] + 1)
    mods = [FPModule(QQ, (0,) * len(idx.get(n, []))) for n in rng]
    diffs = []
    for n in list(rng)[:-1]:
        src, tgt = idx.get(n, []), idx.get(n + 1, [])
        m = zeros(len(tgt), len(src), QQ)
        for a, i in enumerate(tgt):
            for b, j in enumerate(src):
                m[a, b] = X.diff[i, j]
        diffs.append(m)
    return Complex(QQ, degs[0], mods, diffs)


def adjoint(X: DGModule, Y: DGModule, chi: np.ndarray, k: int) -> np.ndarray:
    """Transport ``chi: X -> DY`` (degree ``k``) to ``Y -> DX``.

    With ``chi(x_i)(y_j) = C[j, i]`` the adjoint is ``chi'(y_j)(x_i) =
    (-1)^{|x_i||y_j|} C[j, i]`` up to the sign recorded in ``_ADJ_SIGN``.
    """
    out = np.zeros((X.dim, Y.dim), dtype=object)
    out[:] = Fraction(0)
    for j in range(Y.dim):
        for i in range(X.dim):
            out[i, j] = _ADJ_SIGN(X.degrees[i], Y.degrees[j], k) * chi[j, i]
    return out


def _ADJ_SIGN(dx: int, dy: int, k: int) -> int:
    return -1 if (dx * dy) % 2 else 1


def yoneda_check(A: DGAlgebra, X: DGModule) -> Tuple[int, int, bool]:
    """``(dim Hom_K(A^, X), dim H^0(X), evaluation at 1 is an iso on H^0)``."""
    F = free_module(A)
    H = DGHomComplex(F, X)
    dimk = H.complex.cohomology(0).group.ngens
    U = underlying_complex(X)
    dim0 = U.cohomology(0).group.ngens
    # evaluation: f -> f(1) on degree-0 cocycles, read in H^0 X
    coh = H.complex.cohomology(0)
    idx0 = [i for i, e in enumerate(X.degrees) if e == 0]
    Uc = U.cohomology(0)
    cols = zeros(Uc.group.ngens, coh.group.ngens, QQ)
    for g in range(coh.group.ngens):
        f = H.to_map(0, coh.cocycle_lift[:, g])
        v = f @ A.unit
        vec = np.array([v[i] for i in idx0], dtype=object)
        cols[:, g] = Uc.class_of(vec)
    from .exactalg.modules import ModuleMap, is_isomorphism

    ev = ModuleMap(coh.group, Uc.group, cols)
    return dimk, dim0, is_isomorphism(ev)


def adjunction_dims(X: DGModule, Y: DGModule) -> Tuple[int, int]:
    """``(dim Hom_C(X, DY), dim Hom_C(Y, DX))`` for ``X`` over ``A``, ``Y`` over ``A^op``."""
    DY = _retarget(dg_dual(Y), X.algebra)
    return hom_c_dim(X, DY), hom_c_dim(Y, dg_dual(X))


def transport_homotopy(X: DGModule, Y: DGModule, rho: np.ndarray, k: int):
    """For ``chi = D(rho)`` with ``rho: X -> DY`` of degree ``k - 1``, return
    ``(adjoint(chi), rho')`` with ``D(rho') = adjoint(chi)``, or ``None``."""
    DY = _retarget(dg_dual(Y), X.algebra)
    DX = dg_dual(X)
    s = -1 if (k - 1) % 2 else 1
    chi = DY.diff @ rho - s * (rho @ X.diff)
    target = adjoint(X, Y, chi, k)
    r = adjoint(X, Y, rho, k - 1)
    for sign in (1, -1):
        cand = sign * r
        if not (DX.diff @ cand - s * (cand @ Y.diff) != target).any():
            return target, cand
    return None


def dga_cohomology(A: DGAlgebra, n: int) -> int:
    return underlying_complex(free_module(A)).cohomology(n).group.ngens


def tensor_algebra(A: DGAlgebra, B: DGAlgebra) -> DGAlgebra:
    """``(a b)(a' b') = (-1)^{|b||a'|} (a a')(b b')``, ``d(a b) = da b + (-1)^{|a|} a db``."""
    na, nb = A.dim, B.dim
    N = na * nb
    idx = lambda i, j: i * nb + j
    mult = np.zeros((N, N, N), dtype=object)
    mult[:] = Fraction(0)
    for i in range(na):
        for j in range(nb):
            for i2 in range(na):
                for j2 in range(nb):
                    s = -1 if (B.degrees[j] * A.degrees[i2]) % 2 else 1
                    prod = np.multiply.outer(A.mult[i, i2, :], B.mult[j, j2, :]).reshape(-1)
                    mult[idx(i, j), idx(i2, j2), :] = s * prod
    diff = np.zeros((N, N), dtype=object)
    diff[:] = Fraction(0)
    for i in range(na):
        for j in range(nb):
            s = -1 if A.degrees[i] % 2 else 1
            ea = np.zeros(na, dtype=object)
            ea[:] = Fraction(0)
            ea[i] = Fraction(1)
            eb = np.zeros(nb, dtype=object)
            eb[:] = Fraction(0)
            eb[j] = Fraction(1)
            diff[:, idx(i, j)] = (np.multiply.outer(A.diff[:, i], eb) + s * np.multiply.outer(ea, B.diff[:, j])).reshape(-1)
    degs = tuple(A.degrees[i] + B.degrees[j] for i in range(na) for j in range(nb))
    labels = tuple(f"{a}*{b}" for a in A.labels for b in B.labels)
    unit = np.multiply.outer(A.unit, B.unit).reshape(-1)
    return DGAlgebra(degs, mult, diff, unit, labels)


# ---------------------------------------------------------------------------
# Random generation and serialization.


def random_ground_complex(rng, max_total: int, span: int = 3) -> Complex:
    """A random bounded complex over Q of total dimension at most ``max_total``."""
    lo = int(rng.integers(-1, 2))
    total = int(rng.integers(1, max_total + 1))
    span = int(rng.integers(1, span + 1))
    dims = [0] * span
    for _ in range(total):
        dims[int(rng.integers(0, span))] += 1
    mods = [FPModule(QQ, (0,) * d) for d in dims]
    diffs = []
    prev = None
    for k in range(span - 1):
        # d^k = r o (projection onto a complement of im d^{k-1})
        m = zeros(dims[k + 1], dims[k], QQ)
        if dims[k] and dims[k + 1]:
            from .exactalg.modules import Cokernel, ModuleMap

            src = mods[k]
            q = Cokernel(prev if prev is not None else ModuleMap.zero(FPModule.zero(QQ), src))
            r = np.array([[Fraction(int(rng.integers(-1, 2))) for _ in range(q.module.ngens)]
                          for _ in range(dims[k + 1])], dtype=object).reshape(dims[k + 1], q.module.ngens)
            m = r @ q.projection.matrix if q.module.ngens else m
        from .exactalg.modules import ModuleMap

        prev = ModuleMap(mods[k], mods[k + 1], m)
        diffs.append(m)
    return Complex(QQ, lo, mods, diffs)


def random_basis_change(rng, degrees: Sequence, objects=None) -> np.ndarray:
    """A random invertible matrix preserving degrees (and hom-spaces, for categories)."""
    n = len(degrees)
    if objects is not None:
        degrees = list(zip(degrees, objects))
    g = np.zeros((n, n), dtype=object)
    g[:] = Fraction(0)
    for i in range(n):
        g[i, i] = Fraction(int(rng.choice([1, -1, 2])))
        for j in range(i + 1, n):
            if degrees[i] == degrees[j] and rng.random() < 0.5:
                g[i, j] = Fraction(int(rng.integers(-1, 2)))
    return g


def random_dg_algebra(rng, max_total: int = 2) -> DGAlgebra:
    """A random valid dg algebra: End algebras, exterior algebras, their
    tensor products or a two-object End category, in a scrambled basis."""
    kind = int(rng.integers(0, 4))
    if kind == 0:
        A = end_complex_as_dga(random_ground_complex(rng, max_total))
    elif kind == 1:
        deg = int(rng.choice([-3, -1, 1, 3]))
        A = exterior_algebra(deg, int(rng.integers(1, 3)) if deg == -1 else 0)
    elif kind == 2:
        d1, d2 = (int(rng.choice([-1, 1])) for _ in range(2))
        A = tensor_algebra(exterior_algebra(d1, 1 if d1 == -1 and rng.random() < 0.5 else 0),
                           exterior_algebra(d2, 1 if d2 == -1 and rng.random() < 0.5 else 0))
    else:
        one = FPModule(QQ, (0,))
        X0 = Complex(QQ, int(rng.integers(-1, 2)), [one], [])
        X1 = Complex(QQ, int(rng.integers(-1, 2)), [one], [])
        A = end_category([X0, X1], ["P", "Q"])
    if rng.random() < 0.7:
        A = change_basis(A, random_basis_change(rng, A.degrees, A.objects))
    return A


def random_dg_module(rng, max_total: int = 3, V: Optional[Complex] = None) -> Tuple[DGAlgebra, DGModule]:
    """``(End(V), Hom(V, W))`` for random complexes ``V``, ``W`` over Q."""
    V = random_ground_complex(rng, 2) if V is None else V
    W = random_ground_complex(rng, max_total)
    return hom_module_over_end(V, W)


def random_adjunction_pair(rng, max_total: int = 3) -> Tuple[DGModule, DGModule]:
    """``X`` over ``End(V)`` and ``Y = D(X')`` over its opposite."""
    V = random_ground_complex(rng, 2)
    _, X = random_dg_module(rng, max_total, V)
    _, X2 = random_dg_module(rng, max_total, V)
    return X, dg_dual(X2)


def _qs(x: Fraction) -> str:
    return str(Fraction(x))


def algebra_to_record(A: DGAlgebra) -> dict:
    rec = {
        "degrees": [str(d) for d in A.degrees],
        "labels": list(A.labels),
        "unit": [_qs(x) for x in A.unit],
        "mult": [[i, j, k, _qs(A.mult[i, j, k])] for i, j, k in _nz(A.mult)],
        "diff": [[i, j, _qs(A.diff[i, j])] for i, j in _nz(A.diff)],
    }
    rec["mult"] = [[str(int(i)), str(int(j)), str(int(k)), v] for i, j, k, v in rec["mult"]]
    rec["diff"] = [[str(int(i)), str(int(j)), v] for i, j, v in rec["diff"]]
    if A.objects is not None:
        rec["objects"] = [list(o) for o in A.objects]
    return rec


def algebra_from_record(rec: dict) -> DGAlgebra:
    degs = tuple(int(d) for d in rec["degrees"])
    n = len(degs)
    mult = np.zeros((n, n, n), dtype=object)
    mult[:] = Fraction(0)
    for i, j, k, v in rec.get("mult", []):
        mult[int(i), int(j), int(k)] = Fraction(v)
    diff = np.zeros((n, n), dtype=object)
    diff[:] = Fraction(0)
    for i, j, v in rec.get("diff", []):
        diff[int(i), int(j)] = Fraction(v)
    unit = [Fraction(v) for v in rec["unit"]]
    objects = rec.get("objects")
    return DGAlgebra(degs, mult, diff, unit, tuple(rec.get("labels", ())),
                     None if objects is None else tuple(tuple(o) for o in objects))
