"""Executable law suites.

Each suite has a builder ``(spec, case) -> instance`` and a checker
``instance -> None``.  Instances are tuples of complexes and chain maps, so
they serialize and can be replayed or shrunk without the generator.
A checker raises :class:`LawFailure` when a law is violated and
:class:`Precondition` when the instance is outside the law's hypotheses
(which only happens for shrunk or hand-made instances).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from ..complexes import (
    ChainMap,
    Complex,
    GradedMap,
    homotopy_between,
    is_quasi_iso,
    shift,
    shift_map,
)
from ..homotopycat import hom_exact_at_middle, weak_kernel
from ..triangle import (
    Triangle,
    certify_exact,
    cone,
    fill_tr3,
    homotopy_pushout,
    octahedron,
    rotate,
    tr4_double_prime,
    tr4_prime,
)
from .generate import InstanceGenSpec, case_rng, random_chain_map, random_complex, random_qis


class LawFailure(Exception):
    pass


class Precondition(Exception):
    pass


def _require(ok, message: str) -> None:
    if not ok:
        raise LawFailure(message)


def _certified(T: Triangle, name: str):
    cert = certify_exact(T)
    _require(cert is not None, f"{name} is not certified exact")
    _require(cert.verify(), f"certificate of {name} does not verify")
    return cert


def _zero_map(X: Complex, Y: Complex) -> ChainMap:
    return ChainMap.zero(X, Y)


# ---------------------------------------------------------------------------
# Builders.


def _map(spec, case):
    rng = case_rng(spec.seed, case, 1)
    X, Y = random_complex(rng, spec), random_complex(rng, spec)
    return (random_chain_map(rng, X, Y),)


def _pair(spec, case):
    rng = case_rng(spec.seed, case, 2)
    X, Y, Z = (random_complex(rng, spec) for _ in range(3))
    return random_chain_map(rng, X, Y), random_chain_map(rng, Y, Z)


def _span(spec, case):
    """Two maps out of a common source."""
    rng = case_rng(spec.seed, case, 3)
    X, Y, Xp = (random_complex(rng, spec) for _ in range(3))
    return random_chain_map(rng, X, Y), random_chain_map(rng, X, Xp)


def _tr3(spec, case):
    rng = case_rng(spec.seed, case, 4)
    X, Y, Xp, Yp = (random_complex(rng, spec) for _ in range(4))
    a = random_chain_map(rng, X, Y)
    return a, random_chain_map(rng, X, Xp), random_chain_map(rng, Y, Yp)


def _qis_pair(spec, case):
    rng = case_rng(spec.seed, case, 5)
    s1 = random_qis(rng, spec)
    return s1, random_qis(rng, spec, s1.target)


def _qis_and_map(spec, case):
    rng = case_rng(spec.seed, case, 6)
    s = random_qis(rng, spec)
    Y = random_complex(rng, spec)
    return s, random_chain_map(rng, s.source, Y)


def _qis(spec, case):
    return (random_qis(case_rng(spec.seed, case, 7), spec),)


def _ms3(spec, case):
    """``alpha``, a qis ``sigma`` out of its target, and ``beta`` with ``sigma alpha ~ sigma beta``."""
    from ..derivedcat import proj_resolve

    rng = case_rng(spec.seed, case, 8)
    if case % 2:
        # resolutions have acyclic but usually non-contractible cones
        sigma = proj_resolve(random_complex(rng, spec)).pi
        Y = sigma.source
    else:
        Y = random_complex(rng, spec)
        sigma = random_qis(rng, spec, Y)
    w = weak_kernel(sigma)
    if case % 4 == 1:
        # alpha - beta is a multiple of the weak kernel map itself
        X = w.source
        alpha = random_chain_map(rng, X, Y)
        return alpha, sigma, alpha + int(rng.integers(1, 4)) * w
    X = random_complex(rng, spec)
    alpha = random_chain_map(rng, X, Y)
    if case % 5 == 0:
        return alpha, sigma, alpha
    return alpha, sigma, alpha + w @ random_chain_map(rng, X, w.source)


def _homexact(spec, case):
    rng = case_rng(spec.seed, case, 9)
    X, Y = random_complex(rng, spec), random_complex(rng, spec)
    return random_chain_map(rng, X, Y), random_complex(rng, spec)


# ---------------------------------------------------------------------------
# Checkers.


def check_tr1(inst) -> None:
    (f,) = inst
    _, T = cone(f)
    _certified(T, "cone triangle")
    X = f.source
    Z = Complex.zero(X.ring)
    ident = Triangle(ChainMap.identity(X), _zero_map(X, Z), _zero_map(Z, shift(X, 1)))
    _certified(ident, "X -> X -> 0 triangle")


def check_tr2(inst) -> None:
    (f,) = inst
    _, T = cone(f)
    R = rotate(T)
    _certified(R, "rotated cone triangle")
    _certified(rotate(R), "twice rotated cone triangle")


def check_tr3(inst) -> None:
    a, g1, g2 = inst
    _, T = cone(a)
    sq = homotopy_pushout(a, g1)
    _, T2 = cone(sq.b2)
    m = fill_tr3(T, T2, g1, sq.b1, sq.commutes)
    _require(m.verify(), "TR3 completion between cone triangles does not verify")
    # a triangle that is not in cone form: rotate and extend along Y -> Y'
    R = rotate(T)
    sq2 = homotopy_pushout(R.a, g2)
    _, R2 = cone(sq2.b2)
    m2 = fill_tr3(R, R2, g2, sq2.b1, sq2.commutes)
    _require(m2.verify(), "TR3 completion from a rotated triangle does not verify")


def check_tr4(inst) -> None:
    a1, b1 = inst
    oc = octahedron(a1, b1)
    _require(oc.verify(), "octahedron witnesses do not verify")
    # TR4 gives TR4': complete (a1, b1 a1); TR4' gives TR4'': same data, non-standard square
    c1 = b1 @ a1
    _require(tr4_prime(a1, c1).verify(), "TR4' completion derived from the octahedron does not verify")
    sq = homotopy_pushout(c1, a1).flip()
    _require(tr4_double_prime(sq, cone(a1)[1]).verify(), "TR4'' completion does not verify")


def check_tr4_prime(inst) -> None:
    alpha, phi = inst
    _require(tr4_prime(alpha, phi).verify(), "TR4' completion does not verify")


def check_tr4_double_prime(inst) -> None:
    alpha, phi = inst
    sq = homotopy_pushout(phi, alpha).flip()
    _require(sq.verify(), "flipped square does not verify")
    _require(tr4_double_prime(sq, cone(alpha)[1]).verify(), "TR4'' completion does not verify")


def check_ms1(inst) -> None:
    s1, s2 = inst
    if not (is_quasi_iso(s1) and is_quasi_iso(s2)):
        raise Precondition("inputs must be quasi-isomorphisms")
    _require(is_quasi_iso(ChainMap.identity(s1.source)), "identity is not a quasi-isomorphism")
    _require(is_quasi_iso(s2 @ s1), "composite of quasi-isomorphisms is not one")


def check_ms2(inst) -> None:
    s, f = inst
    if not is_quasi_iso(s):
        raise Precondition("first map must be a quasi-isomorphism")
    sq = homotopy_pushout(s, f)
    _require(sq.verify(), "pushout square does not verify")
    _require(is_quasi_iso(sq.b2), "leg parallel to the quasi-isomorphism is not one")


def check_ms3(inst) -> None:
    alpha, sigma, beta = inst
    if not is_quasi_iso(sigma) or homotopy_between(sigma @ alpha, sigma @ beta) is None:
        raise Precondition("need a quasi-isomorphism sigma with sigma alpha ~ sigma beta")
    if alpha == beta:
        return  # tau = id
    from ..derivedcat import lift_through_qis

    w = weak_kernel(sigma)
    try:
        psi, _ = lift_through_qis(w, alpha - beta)
    except ArithmeticError:
        raise LawFailure("alpha - beta does not factor through the weak kernel of sigma")
    tau = weak_kernel(psi)
    _require(is_quasi_iso(tau), "tau is not a quasi-isomorphism")
    _require(homotopy_between(alpha @ tau, beta @ tau) is not None, "alpha tau and beta tau differ")


def check_ms4(inst) -> None:
    (s,) = inst
    if not is_quasi_iso(s):
        raise Precondition("input must be a quasi-isomorphism")
    for k in (1, -1, 2):
        sk = ChainMap.from_graded(shift_map(s, k), check=False)
        _require(is_quasi_iso(sk), f"shift by {k} of a quasi-isomorphism is not one")


def check_ms5(inst) -> None:
    s, a = inst
    if not is_quasi_iso(s):
        raise Precondition("first map must be a quasi-isomorphism")
    sq = homotopy_pushout(a, s)
    _require(is_quasi_iso(sq.b1), "pushout leg is not a quasi-isomorphism")
    _, T = cone(a)
    _, T2 = cone(sq.b2)
    m = fill_tr3(T, T2, s, sq.b1, sq.commutes)
    _require(m.verify(), "triangle morphism does not verify")
    _require(is_quasi_iso(m.f3), "third component is not a quasi-isomorphism")


def check_homexact(inst) -> None:
    f, T0 = inst
    _, T = cone(f)
    R = rotate(T)
    RR = rotate(R)
    for name, tri in (("Y", T), ("Z", R), ("Sigma X", RR)):
        _require(hom_exact_at_middle(T0, tri.a, tri.b), f"Hom_K(T, -) not exact at {name}")


@dataclass(frozen=True)
class Suite:
    build: Callable[[InstanceGenSpec, int], Tuple]
    check: Callable[[Tuple], None]
    summary: str


SUITES: Dict[str, Suite] = {
    "TR1": Suite(_map, check_tr1, "cones and X -> X -> 0 are exact"),
    "TR2": Suite(_map, check_tr2, "rotations of cone triangles are exact"),
    "TR3": Suite(_tr3, check_tr3, "commutative squares extend to triangle morphisms"),
    "TR4": Suite(_pair, check_tr4, "octahedra, with derived TR4' and TR4'' completions"),
    "TR4'": Suite(_span, check_tr4_prime, "pushout completion of two maps"),
    "TR4''": Suite(_span, check_tr4_double_prime, "completion from a square and a triangle"),
    "MS1": Suite(_qis_pair, check_ms1, "identities and composites of quasi-isomorphisms"),
    "MS2": Suite(_qis_and_map, check_ms2, "quasi-isomorphisms are stable under homotopy pushout"),
    "MS3": Suite(_ms3, check_ms3, "equalizing maps by a quasi-isomorphism on the source"),
    "MS4": Suite(_qis, check_ms4, "quasi-isomorphisms are stable under shifts"),
    "MS5": Suite(_qis_and_map, check_ms5, "triangle morphisms with two qis components"),
    "HOMEXACT": Suite(_homexact, check_homexact, "Hom_K(T, -) is exact on triangles"),
}
