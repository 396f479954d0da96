"""Exact matrix kernels over the integers and the rationals.

Matrices are numpy arrays of ``dtype=object`` holding Python ``int`` or
``fractions.Fraction`` entries, so every operation is exact.  Nothing here
ever touches a float.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np


class Ring(enum.Enum):
    """The ground ring shared by every object in a computation."""

    ZZ = "Z"
    QQ = "Q"

    @property
    def is_field(self) -> bool:
        return self is Ring.QQ

    def coerce(self, x):
        if self is Ring.ZZ:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x.numerator)
            if isinstance(x, (bool, float)):
                raise TypeError(f"refusing inexact or boolean entry {x!r}")
            return int(x)
        if isinstance(x, float):
            raise TypeError(f"refusing inexact entry {x!r}")
        return Fraction(x)

    @classmethod
    def parse(cls, tag) -> "Ring":
        if isinstance(tag, Ring):
            return tag
        t = str(tag).strip().upper()
        if t in ("Z", "ZZ", "INTEGERS"):
            return cls.ZZ
        if t in ("Q", "QQ", "RATIONALS"):
            return cls.QQ
        raise ValueError(f"unknown ring {tag!r}")


def matrix(rows, ring: Ring = Ring.ZZ, shape: Optional[tuple] = None) -> np.ndarray:
    """Build an exact matrix from nested sequences."""
    rows = [list(r) for r in rows]
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    out = zeros(*shape, ring=ring)
    for i, r in enumerate(rows):
        if len(r) != shape[1]:
            raise ValueError("ragged matrix")
        for j, x in enumerate(r):
            out[i, j] = ring.coerce(x)
    return out


def zeros(rows: int, cols: int, ring: Ring = Ring.ZZ) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(0 if ring is Ring.ZZ else Fraction(0))
    return out


def identity(n: int, ring: Ring = Ring.ZZ) -> np.ndarray:
    out = zeros(n, n, ring)
    one = 1 if ring is Ring.ZZ else Fraction(1)
    for i in range(n):
        out[i, i] = one
    return out


def as_matrix(a, ring: Ring) -> np.ndarray:
    """Coerce ``a`` into an exact object matrix over ``ring`` (copying)."""
    if isinstance(a, np.ndarray) and a.ndim == 2:
        out = zeros(*a.shape, ring=ring)
        for idx, x in np.ndenumerate(a):
            out[idx] = ring.coerce(x)
        return out
    return matrix(a, ring)


def column(v, ring: Ring) -> np.ndarray:
    v = list(v)
    out = zeros(len(v), 1, ring)
    for i, x in enumerate(v):
        out[i, 0] = ring.coerce(x)
    return out


def vector(v, ring: Ring) -> np.ndarray:
    v = list(v)
    out = np.empty(len(v), dtype=object)
    for i, x in enumerate(v):
        out[i] = ring.coerce(x)
    return out


def frozen(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    a.flags.writeable = False
    return a


def is_zero(a: np.ndarray) -> bool:
    return not any(x != 0 for x in a.flat)


def block(rows: Sequence[Sequence[np.ndarray]], ring: Ring) -> np.ndarray:
    """Assemble a block matrix; blocks in a row share a height."""
    heights = [blk[0].shape[0] for blk in rows]
    widths = [b.shape[1] for b in rows[0]] if rows else []
    out = zeros(sum(heights), sum(widths), ring)
    r0 = 0
    for h, blk_row in zip(heights, rows):
        c0 = 0
        for w, b in zip(widths, blk_row):
            if b.shape != (h, w):
                raise ValueError(f"block shape {b.shape} != {(h, w)}")
            out[r0:r0 + h, c0:c0 + w] = b
            c0 += w
        r0 += h
    return out


def block_diag(blocks: Sequence[np.ndarray], ring: Ring) -> np.ndarray:
    out = zeros(sum(b.shape[0] for b in blocks), sum(b.shape[1] for b in blocks), ring)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def determinant(a: np.ndarray, ring: Ring):
    """Exact determinant by fraction-valued elimination."""
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return ring.coerce(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return ring.coerce(det)


# ---------------------------------------------------------------------------
# Column echelon form: the workhorse for solving and kernels.


class Echelon(NamedTuple):
    """``a @ v == h`` with ``v`` unimodular (invertible over the ring).

    The first ``rank`` columns of ``h`` are nonzero with strictly increasing
    pivot rows ``pivots``; the remaining columns of ``h`` vanish, so the
    matching columns of ``v`` are a basis of the kernel of ``a``.
    """

    h: np.ndarray
    v: np.ndarray
    rank: int
    pivots: tuple


def column_echelon(a: np.ndarray, ring: Ring) -> Echelon:
    m, n = a.shape
    # Work on rows of [a^T | I]; row operations here are column operations on a.
    w = np.empty((n, m + n), dtype=object)
    w[:, :m] = a.T
    w[:, m:] = identity(n, ring)
    r = 0
    pivots = []
    for c in range(m):
        if r == n:
            break
        if ring is Ring.QQ:
            p = next((i for i in range(r, n) if w[i, c] != 0), None)
            if p is None:
                continue
            if p != r:
                w[[r, p]] = w[[p, r]]
            w[r] = w[r] / w[r, c]
            for i in range(n):
                if i != r and w[i, c] != 0:
                    w[i] = w[i] - w[i, c] * w[r]
        else:
            nz = [i for i in range(r, n) if w[i, c] != 0]
            if not nz:
                continue
            while len(nz) > 1:
                p = min(nz, key=lambda i: (abs(w[i, c]), i))
                for i in nz:
                    if i != p:
                        w[i] = w[i] - (w[i, c] // w[p, c]) * w[p]
                nz = [i for i in nz if w[i, c] != 0]
            p = nz[0]
            if p != r:
                w[[r, p]] = w[[p, r]]
            if w[r, c] < 0:
                w[r] = -w[r]
            piv = w[r, c]
            for i in range(r):
                q = w[i, c] // piv
                if q:
                    w[i] = w[i] - q * w[r]
        pivots.append(c)
        r += 1
    h = np.ascontiguousarray(w[:, :m].T)
    v = np.ascontiguousarray(w[:, m:].T)
    return Echelon(h, v, r, tuple(pivots))


def solve(a: np.ndarray, b: np.ndarray, ring: Ring, moduli: Optional[Sequence[int]] = None):
    """One solution ``x`` of ``a @ x == b`` (row ``i`` taken mod ``moduli[i]``).

    A zero modulus means exact equality.  Returns ``None`` when no solution
    exists over the ring; that verdict is a proof, not a heuristic.
    """
    b = np.asarray(b, dtype=object).reshape(-1)
    m, n = a.shape
    if b.shape[0] != m:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {m}")
    if moduli is not None and ring is Ring.ZZ and any(moduli):
        extra = [i for i, d in enumerate(moduli) if d]
        aug = zeros(m, n + len(extra), ring)
        aug[:, :n] = a
        for k, i in enumerate(extra):
            aug[i, n + k] = moduli[i]
        x = solve(aug, b, ring)
        return None if x is None else x[:n]
    ech = column_echelon(a, ring)
    res = b.copy()
    z = np.empty(n, dtype=object)
    z.fill(ring.coerce(0))
    for k in range(ech.rank):
        p = ech.pivots[k]
        piv = ech.h[p, k]
        if ring is Ring.ZZ:
            if res[p] % piv:
                return None
            q = res[p] // piv
        else:
            q = res[p] / piv
        z[k] = q
        if q:
            res = res - q * ech.h[:, k]
    if any(x != 0 for x in res):
        return None
    return ech.v @ z if n else z


def kernel(a: np.ndarray, ring: Ring, moduli: Optional[Sequence[int]] = None) -> np.ndarray:
    """Columns generating ``{x : a @ x == 0}`` (rows mod ``moduli``).

    Without moduli the columns are a basis.  With moduli they generate the
    solution lattice (a basis after :func:`lattice_basis`).
    """
    m, n = a.shape
    if moduli is not None and ring is Ring.ZZ and any(moduli):
        extra = [i for i, d in enumerate(moduli) if d]
        aug = zeros(m, n + len(extra), ring)
        aug[:, :n] = a
        for k, i in enumerate(extra):
            aug[i, n + k] = moduli[i]
        return lattice_basis(kernel(aug, ring)[:n, :], ring)
    ech = column_echelon(a, ring)
    return np.ascontiguousarray(ech.v[:, ech.rank:])


def lattice_basis(gens: np.ndarray, ring: Ring) -> np.ndarray:
    """A basis (as columns) of the span of the columns of ``gens``."""
    ech = column_echelon(gens, ring)
    return np.ascontiguousarray(ech.h[:, :ech.rank])


def rank(a: np.ndarray, ring: Ring) -> int:
    return column_echelon(a, ring).rank


# ---------------------------------------------------------------------------
# Smith normal form.


class SmithForm(NamedTuple):
    """``u @ m @ v == d`` with ``u``, ``v`` invertible and ``d`` diagonal.

    ``u_inv`` is the inverse of ``u``; it is tracked alongside because the
    columns of ``u_inv`` are the new generators of a cokernel.
    """

    u: np.ndarray
    d: np.ndarray
    v: np.ndarray
    u_inv: np.ndarray

    @property
    def diagonal(self) -> list:
        k = min(self.d.shape)
        return [self.d[i, i] for i in range(k)]


def smith_normal_form(m: np.ndarray, ring: Ring = Ring.ZZ) -> SmithForm:
    """Smith normal form with deterministic pivoting.

    The pivot is the nonzero entry of smallest absolute value in the
    remaining block, ties going to the lowest row and then the lowest column.
    Over the rationals the nonzero diagonal entries are all 1.
    """
    rows, cols = m.shape
    d = as_matrix(m, ring)
    u = identity(rows, ring)
    u_inv = identity(rows, ring)
    v = identity(cols, ring)

    def row_add(i, j, q):  # row_i += q * row_j
        d[i] = d[i] + q * d[j]
        u[i] = u[i] + q * u[j]
        u_inv[:, j] = u_inv[:, j] - q * u_inv[:, i]

    def col_add(i, j, q):  # col_i += q * col_j
        d[:, i] = d[:, i] + q * d[:, j]
        v[:, i] = v[:, i] + q * v[:, j]

    def row_swap(i, j):
        d[[i, j]] = d[[j, i]]
        u[[i, j]] = u[[j, i]]
        u_inv[:, [i, j]] = u_inv[:, [j, i]]

    def col_swap(i, j):
        d[:, [i, j]] = d[:, [j, i]]
        v[:, [i, j]] = v[:, [j, i]]

    def row_scale(i, s):  # s is a unit
        d[i] = d[i] * s
        u[i] = u[i] * s
        u_inv[:, i] = u_inv[:, i] / s if ring is Ring.QQ else u_inv[:, i] * s

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i, j]
                    if x != 0 and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return SmithForm(u, d, v, u_inv)
            _, pi, pj = best
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            piv = d[t, t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i, t] != 0:
                    q = d[i, t] / piv if ring is Ring.QQ else d[i, t] // piv
                    row_add(i, t, -q)
                    dirty = dirty or d[i, t] != 0
            for j in range(t + 1, cols):
                if d[t, j] != 0:
                    q = d[t, j] / piv if ring is Ring.QQ else d[t, j] // piv
                    col_add(j, t, -q)
                    dirty = dirty or d[t, j] != 0
            if dirty:
                continue
            if ring is Ring.ZZ:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if d[i, j] % piv), None)
                if bad is not None:
                    row_add(t, bad[0], 1)
                    continue
                if piv < 0:
                    row_scale(t, -1)
            elif piv != 1:
                row_scale(t, 1 / piv)
            break
    return SmithForm(u, d, v, u_inv)


def invariant_factors(m: np.ndarray, ring: Ring = Ring.ZZ) -> list:
    """Diagonal of the Smith form of ``m`` (length ``min(m.shape)``)."""
    return smith_normal_form(m, ring).diagonal
