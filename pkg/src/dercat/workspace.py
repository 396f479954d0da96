"""The workspace file: named modules, complexes, maps, roofs and dg algebras.

A workspace is one JSON document with a mandatory format version.  Numbers
are decimal strings.  Maps and roofs refer to complexes and maps by name::

    {
      "format": "dercat-workspace", "version": "1", "ring": "Z",
      "modules":   {"A": "Z/4"},
      "complexes": {"X": {"lo": "0", "modules": [["0"], ["0"]], "diffs": [[["2"]]]}},
      "maps":      {"f": {"source": "X", "target": "X", "components": {"0": [["1"]]}}},
      "roofs":     {"r": {"alpha": "f", "sigma": "f"}},
      "dgas":      {"E": {"degrees": ["0", "1"], ...}}
    }
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Dict

from .complexes import ChainMap, Complex
from .dg import DGAlgebra, algebra_from_record, algebra_to_record, check_dg_algebra
from .exactalg.linalg import Ring
from .exactalg.modules import FPModule
from .serialize import dumps, matrix_from_record, matrix_to_record, num

FORMAT = "dercat-workspace"
VERSION = "1"


class WorkspaceError(ValueError):
    """Malformed, unresolvable or invalid workspace content."""


_TERM = re.compile(r"^\(?([ZQ])(?:/(\d+))?\)?(?:\^(\d+))?$")


def parse_module(text: str, ring: Ring = None) -> FPModule:
    """``"Z/4 + Z^2"``, ``"(Z/3)^2"``, ``"Q^3"`` or ``"0"``."""
    s = text.replace(" ", "").replace("⊕", "+").replace("ℤ", "Z").replace("ℚ", "Q")
    if ring is None:
        ring = Ring.QQ if "Q" in s else Ring.ZZ
    if s in ("", "0"):
        return FPModule.zero(ring)
    moduli = []
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m:
            raise WorkspaceError(f"cannot parse module term {term!r}")
        base, tors, power = m.group(1), m.group(2), m.group(3)
        if Ring.parse(base) is not ring:
            raise WorkspaceError(f"term {term!r} does not live over {ring.value}")
        if tors is not None and ring is Ring.QQ:
            raise WorkspaceError("torsion quotients are not allowed over Q")
        d = int(tors) if tors is not None else 0
        if tors is not None and d < 1:
            raise WorkspaceError(f"bad torsion order in {term!r}")
        if d == 1:
            continue
        moduli.extend([d] * (int(power) if power else 1))
    return FPModule(ring, tuple(moduli))


def _complex_rec(X: Complex) -> dict:
    return {"lo": num(X.lo), "modules": [[num(m) for m in M.moduli] for M in X.modules],
            "diffs": [matrix_to_record(d.matrix) for d in X.diffs]}


@dataclass
class Workspace:
    ring: Ring = Ring.ZZ
    modules: Dict[str, FPModule] = field(default_factory=dict)
    complexes: Dict[str, Complex] = field(default_factory=dict)
    maps: Dict[str, ChainMap] = field(default_factory=dict)
    map_names: Dict[str, tuple] = field(default_factory=dict)
    roofs: Dict[str, tuple] = field(default_factory=dict)
    dgas: Dict[str, DGAlgebra] = field(default_factory=dict)

    # -- lookup -------------------------------------------------------------

    def _get(self, table: dict, kind: str, name: str):
        if name not in table:
            raise WorkspaceError(f"unresolved {kind} name {name!r}")
        return table[name]

    def complex(self, name: str) -> Complex:
        return self._get(self.complexes, "complex", name)

    def map(self, name: str) -> ChainMap:
        return self._get(self.maps, "map", name)

    def module(self, name_or_literal: str) -> FPModule:
        if name_or_literal in self.modules:
            return self.modules[name_or_literal]
        try:
            return parse_module(name_or_literal, self.ring)
        except WorkspaceError:
            raise WorkspaceError(f"unresolved module name {name_or_literal!r}")

    def roof(self, name: str):
        from .derivedcat import Roof

        a, s = self._get(self.roofs, "roof", name)
        return Roof(self.map(a), self.map(s))

    def dga(self, name: str) -> DGAlgebra:
        return self._get(self.dgas, "dg algebra", name)

    # -- mutation -----------------------------------------------------------

    def add_complex(self, name: str, X: Complex) -> None:
        if X.ring is not self.ring:
            raise WorkspaceError("ring mismatch")
        self.complexes[name] = X

    def add_map(self, name: str, f: ChainMap, source: str, target: str) -> None:
        self.maps[name] = f
        self.map_names[name] = (source, target)

    # -- (de)serialization --------------------------------------------------

    def to_record(self) -> dict:
        rec = {"format": FORMAT, "version": VERSION, "ring": self.ring.value}
        if self.modules:
            rec["modules"] = {k: [num(m) for m in v.moduli] for k, v in self.modules.items()}
        if self.complexes:
            rec["complexes"] = {k: _complex_rec(v) for k, v in self.complexes.items()}
        if self.maps:
            out = {}
            for k, f in self.maps.items():
                s, t = self.map_names[k]
                comps = {}
                for n in f.source.degrees:
                    m = f[n].matrix
                    if m.size and any(x != 0 for x in m.reshape(-1)):
                        comps[num(n)] = matrix_to_record(m)
                out[k] = {"source": s, "target": t, "components": comps}
            rec["maps"] = out
        if self.roofs:
            rec["roofs"] = {k: {"alpha": a, "sigma": s} for k, (a, s) in self.roofs.items()}
        if self.dgas:
            rec["dgas"] = {k: algebra_to_record(v) for k, v in self.dgas.items()}
        return rec

    def dumps(self) -> str:
        return dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "Workspace":
        if not isinstance(rec, dict):
            raise WorkspaceError("workspace must be a JSON object")
        if rec.get("format") != FORMAT:
            raise WorkspaceError(f"missing or wrong format tag (expected {FORMAT!r})")
        if "version" not in rec:
            raise WorkspaceError("missing format version")
        if str(rec["version"]) != VERSION:
            raise WorkspaceError(f"unsupported format version {rec['version']!r}")
        try:
            ring = Ring.parse(rec.get("ring", "Z"))
        except ValueError as e:
            raise WorkspaceError(str(e))
        ws = cls(ring)
        try:
            for k, v in rec.get("modules", {}).items():
                ws.modules[k] = (parse_module(v, ring) if isinstance(v, str)
                                 else FPModule(ring, tuple(int(m) for m in v)))
            for k, v in rec.get("complexes", {}).items():
                mods = [FPModule(ring, tuple(int(m) for m in mm)) for mm in v["modules"]]
                diffs = [matrix_from_record(rows, (mods[i + 1].ngens, mods[i].ngens), ring)
                         for i, rows in enumerate(v.get("diffs", []))]
                ws.complexes[k] = Complex(ring, int(v["lo"]), mods, diffs)
            for k, v in rec.get("maps", {}).items():
                X, Y = ws.complex(v["source"]), ws.complex(v["target"])
                comps = {}
                for n, rows in v.get("components", {}).items():
                    n = int(n)
                    comps[n] = matrix_from_record(rows, (Y[n].ngens, X[n].ngens), ring)
                ws.add_map(k, ChainMap(X, Y, comps), v["source"], v["target"])
            for k, v in rec.get("roofs", {}).items():
                ws.roofs[k] = (v["alpha"], v["sigma"])
                ws.roof(k)
            for k, v in rec.get("dgas", {}).items():
                A = algebra_from_record(v)
                report = check_dg_algebra(A)
                if not report.valid:
                    raise WorkspaceError(f"dg algebra {k!r} is invalid: " + "; ".join(report.lines()))
                ws.dgas[k] = A
        except WorkspaceError:
            raise
        except (KeyError, TypeError, ValueError, ArithmeticError) as e:
            raise WorkspaceError(f"validation failed: {e}") from e
        return ws

    @classmethod
    def parse(cls, text: str) -> "Workspace":
        try:
            rec = json.loads(text)
        except json.JSONDecodeError as e:
            raise WorkspaceError(f"not valid JSON: {e}")
        return cls.from_record(rec)

    @classmethod
    def load(cls, path: str) -> "Workspace":
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.parse(fh.read())
        except OSError as e:
            raise WorkspaceError(f"cannot read workspace: {e}")

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
