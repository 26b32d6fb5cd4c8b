import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from doubletangle.complex import validate
from doubletangle.ingest import (
    BUILTINS, HfkMinusData, IngestError, KnotInput, builtin_knot, pairing_fixture, parse, render,
)
from doubletangle.segments import CurveSegment, SegmentDecomposition, decompose
from randomized import random_knot


def doc(**kw):
    return json.dumps(kw)


def test_hfk_minus_document():
    inp = parse(doc(name="trefoil", tier="hfk_minus", tau=1, torsion=[1]))
    assert inp.tier == "hfk_minus"
    assert inp.payload == HfkMinusData(1, (1,))


def test_segments_document_gives_trefoil():
    text = doc(name="t", tier="segments", segments=[
        {"kind": "d", "param": 2, "delta": "0", "alex": "0"},
        {"kind": "u", "param": 1, "delta": "3/2", "alex": "1/2"},
        {"kind": "v", "param": 1, "delta": "3/2", "alex": "-1/2"},
    ])
    dec = parse(text).payload
    assert dec == decompose(builtin_knot("trefoil"))
    assert dec.render() == "d[2]\nu[1] d=3/2 a=1/2\nv[1] d=3/2 a=-1/2"


def test_unknown_label_is_a_syntax_error():
    text = doc(name="bad", tier="cfd",
               generators=[{"id": "x", "idem": "dot"}, {"id": "o", "idem": "circ"}],
               arrows=[{"from": "x", "to": "o", "labels": ["s4"]}])
    with pytest.raises(IngestError) as err:
        parse(text)
    assert err.value.kind == "syntax"
    assert "s4" in str(err.value)


def test_json_error_reports_position():
    with pytest.raises(IngestError) as err:
        parse('{"name": "x",\n  "tier": }')
    assert (err.value.line, err.value.col) == (2, 11)


def test_semantic_errors():
    d2 = doc(name="bad", tier="cfd",
             generators=[{"id": "x", "idem": "dot"}, {"id": "o", "idem": "circ"}],
             arrows=[{"from": "x", "to": "o", "labels": ["s1"]}, {"from": "o", "to": "x", "labels": ["s2"]}])
    with pytest.raises(IngestError, match="d\\^2"):
        parse(d2)
    idem = doc(name="bad", tier="cfd", generators=[{"id": "x", "idem": "a"}], arrows=[])
    with pytest.raises(IngestError, match="idempotent"):
        parse(idem)
    with pytest.raises(IngestError, match="half-integer"):
        parse(doc(name="bad", tier="segments", segments=[{"kind": "u", "param": 1, "delta": "1/3", "alex": "0"}]))
    with pytest.raises(IngestError, match="d-segments"):
        parse(doc(name="bad", tier="segments", segments=[{"kind": "d", "param": 2, "delta": "1", "alex": "0"}]))
    with pytest.raises(IngestError):
        parse(doc(name="bad", tier="hfk_minus", tau=0, torsion=[0]))
    with pytest.raises(IngestError):
        parse(doc(name="bad", tier="other"))
    with pytest.raises(IngestError):
        parse("[1, 2]")


def test_local_system_fields():
    base = dict(name="t2", tier="cfd",
                generators=[{"id": "x", "idem": "dot"}],
                arrows=[{"from": "x", "to": "x", "labels": ["s12"], "matrix": [[0, 1], [1, 0]]}])
    assert parse(doc(**base)).payload.local_dims == {("x", "x"): 2}
    base["arrows"][0]["matrix"] = [[1, 1], [1, 1]]
    with pytest.raises(IngestError, match="invertible"):
        parse(doc(**base))
    base["arrows"][0].pop("matrix")
    base["arrows"][0]["dim"] = 0
    with pytest.raises(IngestError):
        parse(doc(**base))


def test_builtin_unknot():
    c = builtin_knot("unknot").payload
    assert list(c.generators) == ["x"]
    assert c.generators["x"].grading == (0, 0)
    assert c.diff == {("x", "x"): frozenset({"s12"})}


def test_builtin_trefoil_gradings():
    c = builtin_knot("trefoil").payload
    bullets = sorted(g.grading for g in c.generators.values() if g.idem == "dot")
    assert bullets == [(1, -1), (1, 0), (1, 1)]
    assert validate(c) == []


def test_builtin_segment_knots():
    h = Fraction(1, 2)
    f8 = builtin_knot("figure8").payload
    assert f8 == SegmentDecomposition([
        CurveSegment("d", 0, (0, 0)),
        CurveSegment("u", 1, (h, h)), CurveSegment("u", 1, (h, -h)),
        CurveSegment("v", 1, (h, -h)), CurveSegment("v", 1, (h, h)),
    ])
    t34 = builtin_knot("torus_3_4").payload
    assert t34.render().splitlines() == [
        "d[6]", "u[1] d=7/2 a=5/2", "u[2] d=3 a=-1", "v[1] d=7/2 a=-5/2", "v[2] d=3 a=1",
    ]


def test_unknown_builtin():
    with pytest.raises(IngestError):
        builtin_knot("conway")


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtin_round_trip(name):
    inp = builtin_knot(name)
    assert parse(render(inp)) == inp


@pytest.mark.parametrize("i", [0, 1, -2])
def test_pairing_fixtures_are_valid(i):
    assert validate(pairing_fixture(i).payload) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_round_trip_random_cfd_and_segments(seed, graded):
    inp, dec = random_knot(seed, graded)
    assert parse(render(inp)) == inp
    seg = KnotInput("s", "segments", dec)
    assert parse(render(seg)) == seg


@given(st.integers(-20, 20), st.lists(st.integers(1, 9), max_size=6))
def test_round_trip_hfk_minus(tau, torsion):
    inp = KnotInput("h", "hfk_minus", HfkMinusData(tau, tuple(torsion)))
    assert parse(render(inp).encode()) == inp
