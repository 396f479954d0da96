"""Plain-record encoding of modules, complexes and maps.

Every number is written as a decimal string (``"3"``, ``"-1/2"``) so the
records survive JSON parsers with bounded integers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .complexes import ChainMap, Complex, GradedMap, Homotopy
from .exactalg.linalg import Ring
from .exactalg.modules import FPModule, ModuleMap


def num(x) -> str:
    return str(Fraction(x)) if isinstance(x, Fraction) else str(int(x))


def parse_num(s, ring: Ring):
    return ring.coerce(Fraction(str(s)))


def matrix_to_record(m: np.ndarray) -> list:
    return [[num(x) for x in row] for row in np.asarray(m, dtype=object).tolist()]


def matrix_from_record(rows, shape, ring: Ring) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    if shape[0] and shape[1]:
        if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
            raise ValueError(f"matrix does not have shape {shape}")
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                out[i, j] = parse_num(x, ring)
    return out


def module_to_record(M: FPModule) -> dict:
    return {"ring": M.ring.value, "moduli": [num(m) for m in M.moduli]}


def module_from_record(rec: dict) -> FPModule:
    ring = Ring.parse(rec["ring"])
    return FPModule(ring, tuple(int(m) for m in rec["moduli"]))


def complex_to_record(X: Complex) -> dict:
    return {
        "ring": X.ring.value,
        "lo": num(X.lo),
        "modules": [[num(m) for m in M.moduli] for M in X.modules],
        "diffs": [matrix_to_record(d.matrix) for d in X.diffs],
    }


def complex_from_record(rec: dict) -> Complex:
    ring = Ring.parse(rec["ring"])
    mods = [FPModule(ring, tuple(int(m) for m in mm)) for mm in rec["modules"]]
    diffs = []
    for k, rows in enumerate(rec.get("diffs", [])):
        shape = (mods[k + 1].ngens, mods[k].ngens)
        diffs.append(ModuleMap(mods[k], mods[k + 1], matrix_from_record(rows, shape, ring)))
    return Complex(ring, int(rec["lo"]), mods, diffs)


def graded_to_record(f: GradedMap) -> dict:
    comps = {}
    for n in f.source.degrees:
        m = f[n].matrix
        if m.size and any(x != 0 for x in m.reshape(-1)):
            comps[num(n)] = matrix_to_record(m)
    return {"source": complex_to_record(f.source), "target": complex_to_record(f.target),
            "degree": num(f.degree), "components": comps}


def graded_from_record(rec: dict, chain: bool = True) -> GradedMap:
    X, Y = complex_from_record(rec["source"]), complex_from_record(rec["target"])
    deg = int(rec.get("degree", "0"))
    comps = {}
    for n, rows in rec.get("components", {}).items():
        n = int(n)
        comps[n] = matrix_from_record(rows, (Y[n + deg].ngens, X[n].ngens), X.ring)
    if chain and deg == 0:
        return ChainMap(X, Y, comps)
    return GradedMap(X, Y, deg, comps)


def homotopy_to_record(h: Homotopy) -> dict:
    return {"from": graded_to_record(h.from_map), "to": graded_to_record(h.to_map),
            "rho": graded_to_record(h.rho)}


def to_record(obj: Any) -> dict:
    """Tagged record for any supported value."""
    from .derivedcat import Roof

    if isinstance(obj, FPModule):
        return {"type": "module", **module_to_record(obj)}
    if isinstance(obj, Complex):
        return {"type": "complex", **complex_to_record(obj)}
    if isinstance(obj, ChainMap):
        return {"type": "map", **graded_to_record(obj)}
    if isinstance(obj, GradedMap):
        return {"type": "graded", **graded_to_record(obj)}
    if isinstance(obj, Roof):
        return {"type": "roof", "alpha": graded_to_record(obj.alpha), "sigma": graded_to_record(obj.sigma)}
    if isinstance(obj, (list, tuple)):
        return {"type": "tuple", "items": [to_record(o) for o in obj]}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_record(rec: dict) -> Any:
    from .derivedcat import Roof

    t = rec.get("type")
    if t == "module":
        return module_from_record(rec)
    if t == "complex":
        return complex_from_record(rec)
    if t == "map":
        return graded_from_record(rec)
    if t == "graded":
        return graded_from_record(rec, chain=False)
    if t == "roof":
        return Roof(graded_from_record(rec["alpha"]), graded_from_record(rec["sigma"]))
    if t == "tuple":
        return tuple(from_record(r) for r in rec["items"])
    raise ValueError(f"unknown record type {t!r}")


def dumps(rec) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(rec, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
