"""Linear systems whose unknowns are graded maps between complexes.

Each unknown ``U : A -> B`` of degree ``k`` is parametrized by its
coordinates in ``Hom(A^m, B^{m+k})`` for every ``m``.  An equation
``sum c * L o U o R == rhs`` is compared degreewise in the coordinates of
``Hom(S^n, T^{n+e})``; every coordinate is an element of a cyclic group, so
the whole system is a congruence system solved in one go.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .complexes import Complex, GradedMap
from .exactalg.linalg import Ring, identity, solve, zeros
from .exactalg.modules import HomModule


class Unknown:
    """Handle for an unknown graded map; returned by :meth:`MapSystem.unknown`."""

    def __init__(self, index: int, source: Complex, target: Complex, degree: int):
        self.index, self.source, self.target, self.degree = index, source, target, degree
        self.blocks: List[Tuple[int, HomModule]] = []
        for m in source.degrees:
            h = HomModule(source[m], target[m + degree])
            if h.module.ngens:
                self.blocks.append((m, h))
        self.offset = 0

    @property
    def nvars(self) -> int:
        return sum(h.module.ngens for _, h in self.blocks)

    def __repr__(self) -> str:
        return f"Unknown#{self.index}(deg {self.degree})"


Term = Tuple[object, Optional[GradedMap], Unknown, Optional[GradedMap]]


class MapSystem:
    """Collects unknowns and equations, then solves them jointly."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.unknowns: List[Unknown] = []
        self._rows: List[Tuple[List[Tuple[int, np.ndarray]], np.ndarray, tuple]] = []

    def unknown(self, source: Complex, target: Complex, degree: int) -> Unknown:
        u = Unknown(len(self.unknowns), source, target, degree)
        u.offset = sum(v.nvars for v in self.unknowns)
        self.unknowns.append(u)
        return u

    def equation(self, terms: Sequence[Term], rhs: GradedMap) -> None:
        """Add ``sum(c * L o U o R) == rhs``; ``None`` for ``L``/``R`` means identity."""
        S, T, e = rhs.source, rhs.target, rhs.degree
        for c, L, U, R in terms:
            rdeg = R.degree if R is not None else 0
            ldeg = L.degree if L is not None else 0
            if rdeg + U.degree + ldeg != e:
                raise ValueError("term degree does not match the right-hand side")
            if R is not None and (R.source != S or R.target != U.source):
                raise ValueError("right factor has the wrong source or target")
            if R is None and U.source != S:
                raise ValueError("unknown source differs from the equation source")
            if L is not None and (L.source != U.target or L.target != T):
                raise ValueError("left factor has the wrong source or target")
            if L is None and U.target != T:
                raise ValueError("unknown target differs from the equation target")
        for n in S.degrees:
            out = HomModule(S[n], T[n + e])
            if not out.module.ngens:
                continue
            blocks = []
            for c, L, U, R in terms:
                rdeg = R.degree if R is not None else 0
                m = n + rdeg
                ublk = next((h for mm, h in U.blocks if mm == m), None)
                if ublk is None:
                    continue
                rmat = R[n].matrix if R is not None else identity(S[n].ngens, self.ring)
                mid = m + U.degree
                lmat = L[mid].matrix if L is not None else identity(T[n + e].ngens, self.ring)
                op = ublk.operator_matrix(lmat, rmat, out, coeff=c)
                off = U.offset + sum(h.module.ngens for mm, h in U.blocks if mm < m)
                blocks.append((off, op))
            self._rows.append((blocks, out.coordinates(rhs[n]), out.module.moduli))

    def solve(self) -> Optional[Dict[Unknown, GradedMap]]:
        nvars = sum(u.nvars for u in self.unknowns)
        nrows = sum(len(mods) for _, _, mods in self._rows)
        a = zeros(nrows, nvars, self.ring)
        b = zeros(nrows, 1, self.ring)[:, 0]
        moduli: list = []
        r = 0
        for blocks, rhs, mods in self._rows:
            k = len(mods)
            for off, op in blocks:
                a[r:r + k, off:off + op.shape[1]] += op
            b[r:r + k] = rhs
            moduli.extend(mods)
            r += k
        if nrows == 0:
            x = zeros(nvars, 1, self.ring)[:, 0]
        else:
            use_mod = moduli if any(moduli) and self.ring is Ring.ZZ else None
            x = solve(a, b, self.ring, use_mod)
            if x is None:
                return None
        out = {}
        for u in self.unknowns:
            comps = {}
            off = u.offset
            for m, h in u.blocks:
                k = h.module.ngens
                comps[m] = h.from_coordinates(x[off:off + k])
                off += k
            out[u] = GradedMap(u.source, u.target, u.degree, comps)
        return out
