import json
from fractions import Fraction

import pytest

from mvlab.documents import (
    canonical_json,
    document_digest,
    encode,
    load_polytope_text,
    parse_polytope,
    rat,
    report_csv,
    report_json,
    serialize_polytope,
)
from mvlab.errors import ParseError
from mvlab.generators import cube, simplex
from mvlab.geometry import convex_hull

F = Fraction

TRIANGLE_DOC = {
    "dim": 2,
    "vertices": [[[0, 1], [0, 1]], [[1, 1], [0, 1]], [[0, 1], [1, 1]]],
}

# canonical form sorts the vertex list
CANON_TRIANGLE_DOC = {
    "dim": 2,
    "vertices": [[[0, 1], [0, 1]], [[0, 1], [1, 1]], [[1, 1], [0, 1]]],
}


def test_parse_triangle():
    assert parse_polytope(TRIANGLE_DOC) == simplex(2)


def test_parse_segment_document():
    doc = {"dim": 2, "vertices": [[[0, 1], [0, 1]], [[1, 1], [0, 1]]]}
    P = parse_polytope(doc)
    assert P.adim == 1 and len(P.vertices) == 2


def test_round_trip_canonical():
    doc = serialize_polytope(cube(2), name="sq")
    assert serialize_polytope(parse_polytope(doc), name="sq") == doc


def test_serialize_canonicalizes():
    messy = {
        "dim": 2,
        "vertices": [
            [[2, 2], [0, 5]],   # unreduced
            [[0, 1], [0, 1]],   # unsorted
            [[0, 1], [1, 1]],
        ],
    }
    got = serialize_polytope(parse_polytope(messy))
    assert got == CANON_TRIANGLE_DOC
    assert serialize_polytope(parse_polytope(got)) == got


def test_parse_errors():
    with pytest.raises(ParseError, match="zero denominator"):
        parse_polytope({"dim": 2, "vertices": [[[0, 0], [0, 1]], [[1, 1], [0, 1]]]})
    with pytest.raises(ParseError, match="denominator must be positive"):
        parse_polytope({"dim": 1, "vertices": [[[1, -2]], [[0, 1]]]})
    with pytest.raises(ParseError, match="vertices\\[0\\]"):
        parse_polytope({"dim": 2, "vertices": [[[0, 1]]]})
    with pytest.raises(ParseError, match="dim"):
        parse_polytope({"vertices": [[[0, 1], [0, 1]]]})
    with pytest.raises(ParseError):
        parse_polytope({"dim": 2, "vertices": []})
    with pytest.raises(ParseError):
        parse_polytope({"dim": 2, "vertices": [[[F(1), 1], [0, 1]], [[1, 1], [0, 1]]]})
    with pytest.raises(ParseError):
        parse_polytope([1, 2, 3])


def test_parse_dim_out_of_range():
    with pytest.raises(ParseError):
        parse_polytope({"dim": 9, "vertices": [[[0, 1]] * 9, [[1, 1]] * 9]})


def test_load_polytope_text():
    text = json.dumps({**TRIANGLE_DOC, "name": "tri"})
    P, name, digest = load_polytope_text(text)
    assert P == simplex(2) and name == "tri"
    spaced = json.dumps({**TRIANGLE_DOC, "name": "tri"}, indent=4)
    assert load_polytope_text(spaced)[2] == digest


def test_load_bad_json():
    with pytest.raises(ParseError, match="invalid JSON"):
        load_polytope_text("{not json")
    with pytest.raises(ParseError, match="name"):
        load_polytope_text(json.dumps({**TRIANGLE_DOC, "name": 7}))


def test_digest_is_format_independent():
    a = document_digest({"b": 1, "a": [1, 2]})
    b = document_digest(json.loads('{"a": [1, 2], "b": 1}'))
    assert a == b and len(a) == 64


def test_canonical_json_stable():
    assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_rat_and_encode():
    assert rat(F(2, 4)) == [1, 2]
    assert rat(3) == [3, 1]
    got = encode({"x": F(1, 3), "y": [True, None, "s"], "z": 4})
    assert got == {"x": [1, 3], "y": [True, None, "s"], "z": 4}
    assert encode(cube(2)) == serialize_polytope(cube(2))
    with pytest.raises(TypeError):
        encode(object())


def test_report_json_deterministic():
    rep = {"b": F(1, 2), "a": 1}
    assert report_json(rep) == report_json({"a": 1, "b": F(1, 2)})


def test_report_csv():
    text = report_csv({"gap": F(-1, 4), "verdict": "violated", "note": 'a,"b"'})
    lines = text.splitlines()
    assert lines[0] == "field,value,decimal_lossy"
    assert "gap,-1/4,-0.25" in lines
    assert any(line.startswith("verdict,violated") for line in lines)
    assert '"a,""b"""' in text
