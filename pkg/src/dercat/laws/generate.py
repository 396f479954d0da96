"""Seeded random complexes, chain maps and quasi-isomorphisms.

Every case draws from its own generator ``SeedSequence(seed).spawn`` style
stream keyed by ``(seed, case)``, so a case can be regenerated in isolation
and the instance stream does not depend on scheduling.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator, List, Optional

import numpy as np

from ..complexes import ChainMap, Complex, HomComplex, direct_sum, sum_inclusion
from ..exactalg.linalg import Ring
from ..exactalg.modules import Cokernel, FPModule, HomModule, Kernel, ModuleMap

KINDS = ("complex", "chainMap", "composablePair", "qisMap", "roofPair")


@dataclass(frozen=True)
class InstanceGenSpec:
    ring: Ring = Ring.ZZ
    max_gens: int = 2
    span: int = 3
    max_torsion: int = 12
    seed: int = 0
    count: int = 10

    def __post_init__(self):
        if not 0 <= self.max_gens <= 4:
            raise ValueError("max_gens must lie in 0..4")
        if not 1 <= self.span <= 4:
            raise ValueError("span must lie in 1..4")
        if not 2 <= self.max_torsion <= 12:
            raise ValueError("max_torsion must lie in 2..12")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.count < 0:
            raise ValueError("count must be nonnegative")

    def to_record(self) -> dict:
        d = asdict(self)
        d["ring"] = self.ring.value
        return d


def case_rng(seed: int, case: int, salt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, case, salt]))


def _small(rng, lo=-2, hi=2) -> int:
    return int(rng.integers(lo, hi + 1))


def random_module(rng, spec: InstanceGenSpec, max_gens: Optional[int] = None) -> FPModule:
    top = spec.max_gens if max_gens is None else max_gens
    g = 0 if top == 0 or rng.random() < 0.15 else int(rng.integers(1, top + 1))
    if spec.ring is Ring.QQ:
        return FPModule(Ring.QQ, (0,) * g)
    mods = []
    for _ in range(g):
        if rng.random() < 0.35:
            mods.append(int(rng.integers(2, spec.max_torsion + 1)))
        else:
            mods.append(0)
    return FPModule(Ring.ZZ, tuple(mods))


def random_map(rng, source: FPModule, target: FPModule, density: float = 0.75) -> ModuleMap:
    h = HomModule(source, target)
    coords = [(_small(rng) if rng.random() < density else 0) for _ in range(h.module.ngens)]
    return h.from_coordinates(coords)


def random_complex(rng, spec: InstanceGenSpec, lo: Optional[int] = None) -> Complex:
    """``d^n = r o q`` with ``q`` the cokernel projection of ``d^{n-1}``; so ``d o d = 0``."""
    if lo is None:
        lo = int(rng.integers(-1, 2))
    span = 1 if spec.span == 1 or rng.random() < 0.15 else int(rng.integers(2, spec.span + 1))
    mods = [random_module(rng, spec) for _ in range(span)]
    diffs = []
    prev = None
    for k in range(span - 1):
        if prev is None:
            q = Cokernel(ModuleMap.zero(FPModule.zero(spec.ring), mods[k]))
        else:
            q = Cokernel(prev)
        r = random_map(rng, q.module, mods[k + 1])
        d = r @ q.projection
        diffs.append(d)
        prev = d
    return Complex(spec.ring, lo, mods, diffs)


def random_chain_map(rng, X: Complex, Y: Complex, density: float = 0.7) -> ChainMap:
    """A random cocycle of ``Hom(X, Y)`` in degree 0."""
    H = HomComplex(X, Y)
    d0 = H.complex.d(0)
    if not H.complex[0].ngens:
        return ChainMap.zero(X, Y)
    K = Kernel(d0)
    gens = K.inclusion.matrix
    coords = np.zeros(gens.shape[0], dtype=object)
    coords[:] = 0
    for j in range(gens.shape[1]):
        if rng.random() < density:
            coords = coords + _small(rng) * gens[:, j]
    return ChainMap.from_graded(H.to_graded_map(0, coords))


def acyclic_complex(rng, spec: InstanceGenSpec, lo: int) -> Complex:
    """``cone(id_W)`` for a random ``W``: contractible, hence acyclic."""
    from ..triangle import cone

    W = random_complex(rng, spec, lo)
    return cone(ChainMap.identity(W))[0]


def random_qis(rng, spec: InstanceGenSpec, X: Optional[Complex] = None) -> ChainMap:
    """A certified quasi-isomorphism.

    Three sources: ``X -> X + cone(id_W)`` (perturbed), the cone inclusion
    ``X -> cone(e)`` of a map ``e`` out of a contractible complex, and a
    resolution map ``P -> X``.  The last one is skipped when the source is
    prescribed.
    """
    from ..complexes import is_quasi_iso
    from ..triangle import cone

    fixed = X is not None
    X = X if fixed else random_complex(rng, spec)
    lo = X.lo if not X.is_zero() else 0
    choice = int(rng.integers(0, 2 if fixed else 3))
    if choice == 0:
        A = acyclic_complex(rng, spec, lo)
        f = _perturb(rng, sum_inclusion([X, A], 0), A)
    elif choice == 1:
        A = acyclic_complex(rng, spec, lo)
        f = cone(random_chain_map(rng, A, X))[1].b
    else:
        from ..derivedcat import proj_resolve

        f = proj_resolve(X).pi
    if not is_quasi_iso(f):
        raise AssertionError("generated map is not a quasi-isomorphism")
    return f


def _perturb(rng, inc: ChainMap, A: Complex) -> ChainMap:
    """Add a random chain map ``X -> A`` into the second summand; stays a qis."""
    X, S = inc.source, inc.target
    return inc + sum_inclusion([X, A], 1, S) @ random_chain_map(rng, X, A)


def generate_instance(spec: InstanceGenSpec, kind: str, case: int):
    rng = case_rng(spec.seed, case)
    if kind == "complex":
        return random_complex(rng, spec)
    if kind == "chainMap":
        X, Y = random_complex(rng, spec), random_complex(rng, spec)
        return random_chain_map(rng, X, Y)
    if kind == "composablePair":
        X, Y, Z = (random_complex(rng, spec) for _ in range(3))
        return random_chain_map(rng, X, Y), random_chain_map(rng, Y, Z)
    if kind == "qisMap":
        return random_qis(rng, spec)
    if kind == "roofPair":
        from ..derivedcat import Roof

        X, Y, Z = (random_complex(rng, spec) for _ in range(3))
        s1 = random_qis(rng, spec, Y)
        r1 = Roof(random_chain_map(rng, X, s1.target), s1)
        s2 = random_qis(rng, spec, Z)
        r2 = Roof(random_chain_map(rng, Y, s2.target), s2)
        return r1, r2
    raise ValueError(f"unknown instance kind {kind!r}")


def instance_stream(spec: InstanceGenSpec, kind: str) -> Iterator:
    for case in range(spec.count):
        yield generate_instance(spec, kind, case)
