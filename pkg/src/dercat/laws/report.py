"""Running suites, assembling reports, replaying and shrinking failures."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..complexes import ChainMap, Complex, GradedMap, restrict_window
from ..serialize import dumps, from_record, to_record
from .generate import InstanceGenSpec
from .suites import SUITES, LawFailure, Precondition


@dataclass(frozen=True)
class CaseFailure:
    case: int
    message: str
    instance: dict
    shrunk: bool

    def to_record(self) -> dict:
        return {"case": self.case, "message": self.message, "shrunk": self.shrunk,
                "instance": self.instance}


@dataclass(frozen=True)
class LawReport:
    suite: str
    spec: InstanceGenSpec
    cases: int
    failures: Tuple[CaseFailure, ...]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> int:
        return self.cases - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        """Canonical record; wall-clock time is deliberately left out."""
        return {"suite": self.suite, "spec": self.spec.to_record(), "cases": self.cases,
                "passed": self.passed, "failures": [f.to_record() for f in self.failures]}

    def to_text(self) -> str:
        s = self.spec
        lines = [f"suite {self.suite} ring={s.ring.value} seed={s.seed} count={s.count} "
                 f"max_gens={s.max_gens} span={s.span} max_torsion={s.max_torsion}",
                 f"{self.passed}/{self.cases} pass"]
        for f in self.failures:
            lines.append(f"FAIL case {f.case}: {f.message}" + (" (shrunk)" if f.shrunk else ""))
            lines.append("  replay: " + json.dumps({"suite": self.suite, "instance": f.instance},
                                                   sort_keys=True, separators=(",", ":")))
        return "\n".join(lines) + "\n"


def _run_check(suite: str, inst) -> Optional[str]:
    """``None`` on success, otherwise the failure message."""
    try:
        SUITES[suite].check(inst)
    except LawFailure as e:
        return str(e)
    except Precondition:
        raise
    except ArithmeticError as e:
        return f"construction failed: {e}"
    return None


def _restrict_map(f: GradedMap, X: Complex, Y: Complex) -> GradedMap:
    comps = {n: f[n].matrix for n in X.degrees if Y[n + f.degree].ngens}
    if f.degree == 0:
        return ChainMap(X, Y, comps, check=False)
    return GradedMap(X, Y, f.degree, comps)


def restrict_instance(inst, lo: int, hi: int):
    """Brutally truncate every complex of an instance to ``lo..hi``."""
    def r(obj):
        if isinstance(obj, Complex):
            return restrict_window(obj, lo, hi)
        if isinstance(obj, GradedMap):
            return _restrict_map(obj, restrict_window(obj.source, lo, hi),
                                 restrict_window(obj.target, lo, hi))
        return obj

    return tuple(r(o) for o in inst)


def _window(inst) -> Tuple[int, int]:
    degs = []
    for o in inst:
        cs = [o] if isinstance(o, Complex) else [o.source, o.target]
        for c in cs:
            degs.extend(c.degrees)
    return (min(degs), max(degs)) if degs else (0, -1)


def shrink(suite: str, inst):
    """Narrow the degree window while the instance keeps failing."""
    lo, hi = _window(inst)
    best = inst
    changed = True
    while changed and lo < hi:
        changed = False
        for nlo, nhi in ((lo + 1, hi), (lo, hi - 1)):
            cand = restrict_instance(best, nlo, nhi)
            try:
                bad = _run_check(suite, cand) is not None
            except (Precondition, ValueError):
                continue
            if bad:
                best, lo, hi, changed = cand, nlo, nhi, True
                break
    return best


def _run_case(suite: str, spec: InstanceGenSpec, case: int) -> Optional[CaseFailure]:
    inst = SUITES[suite].build(spec, case)
    msg = _run_check(suite, inst)
    if msg is None:
        return None
    small = shrink(suite, inst)
    shrunk = small is not inst
    if shrunk:
        msg = _run_check(suite, small) or msg
    return CaseFailure(case, msg, to_record(small), shrunk)


def run_law_suite(suite: str, spec: InstanceGenSpec, threads: int = 1) -> LawReport:
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    start = time.perf_counter()
    cases = range(spec.count)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: _run_case(suite, spec, c), cases))
    else:
        results = [_run_case(suite, spec, c) for c in cases]
    failures = tuple(r for r in results if r is not None)
    return LawReport(suite, spec, spec.count, failures, time.perf_counter() - start)


def replay(record: dict) -> bool:
    """Re-run a serialized counterexample; ``True`` when it still fails."""
    suite = record["suite"]
    inst = from_record(record["instance"])
    return _run_check(suite, inst) is not None


def canonical(report: LawReport) -> str:
    return dumps(report.to_record())
