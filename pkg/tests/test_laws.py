import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dercat.complexes import is_quasi_iso
from dercat.exactalg import QQ, ZZ
from dercat.laws.generate import KINDS, InstanceGenSpec, generate_instance, instance_stream
from dercat.laws.report import _window, canonical, replay, run_law_suite, shrink
from dercat.laws.suites import SUITES, LawFailure, Suite, _map
from dercat.serialize import dumps, from_record, to_record


@pytest.mark.parametrize("kwargs", [dict(max_gens=5), dict(span=0), dict(max_torsion=13),
                                    dict(seed=-1), dict(count=-1)])
def test_spec_bounds_are_enforced(kwargs):
    with pytest.raises(ValueError):
        InstanceGenSpec(**kwargs)


@pytest.mark.parametrize("kind", KINDS)
def test_generation_is_deterministic(kind):
    spec = InstanceGenSpec(seed=11, count=4)
    a = [dumps(to_record(x)) for x in instance_stream(spec, kind)]
    b = [dumps(to_record(x)) for x in instance_stream(spec, kind)]
    assert a == b


def test_cases_are_independent_of_count():
    a = generate_instance(InstanceGenSpec(seed=5, count=3), "chainMap", 2)
    b = generate_instance(InstanceGenSpec(seed=5, count=30), "chainMap", 2)
    assert dumps(to_record(a)) == dumps(to_record(b))


def test_unknown_kind_is_rejected():
    with pytest.raises(ValueError):
        generate_instance(InstanceGenSpec(), "nope", 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([ZZ, QQ]))
def test_generated_qis_are_quasi_isos(seed, ring):
    s = generate_instance(InstanceGenSpec(ring=ring, seed=seed), "qisMap", 0)
    assert is_quasi_iso(s)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from(["complex", "chainMap", "composablePair", "roofPair"]))
def test_instances_round_trip_through_records(seed, kind):
    x = generate_instance(InstanceGenSpec(seed=seed), kind, 0)
    rec = to_record(x)
    assert dumps(to_record(from_record(rec))) == dumps(rec)


@pytest.mark.parametrize("name", sorted(SUITES))
@pytest.mark.parametrize("ring", [ZZ, QQ])
def test_every_suite_passes(name, ring):
    report = run_law_suite(name, InstanceGenSpec(ring=ring, seed=3, count=6))
    assert report.ok, report.to_text()
    assert report.passed == 6


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_law_suite("TR9", InstanceGenSpec())


def test_reports_are_identical_across_threads():
    spec = InstanceGenSpec(seed=9, count=8)
    for name in ("TR3", "MS3"):
        one = canonical(run_law_suite(name, spec, threads=1))
        assert one == canonical(run_law_suite(name, spec, threads=4))
        assert one == canonical(run_law_suite(name, spec, threads=1))


def _nonzero_source(inst):
    (f,) = inst
    if not f.source.is_zero():
        raise LawFailure("source is nonzero")


def test_failures_are_shrunk_and_replayable(monkeypatch):
    monkeypatch.setitem(SUITES, "BROKEN", Suite(_map, _nonzero_source, "always fails on nonzero input"))
    report = run_law_suite("BROKEN", InstanceGenSpec(seed=1, count=5, span=4))
    assert not report.ok
    assert "FAIL case" in report.to_text()
    for fail in report.failures:
        assert replay({"suite": "BROKEN", "instance": fail.instance})
        inst = from_record(fail.instance)
        lo, hi = _window(inst)
        (f,) = inst
        assert list(f.source.degrees) and lo == hi
    inst = _map(InstanceGenSpec(seed=1, span=4), 0)
    small = shrink("BROKEN", inst)
    assert _window(small)[1] - _window(small)[0] <= _window(inst)[1] - _window(inst)[0]


def test_passing_instances_do_not_replay_as_failures():
    inst = SUITES["TR1"].build(InstanceGenSpec(seed=2), 0)
    assert not replay({"suite": "TR1", "instance": to_record(inst)})
