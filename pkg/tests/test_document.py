import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ess import catalog as cat
from ess.document import Document, DocumentError, dumps, format_scalar, from_json, loads, parse_scalar, to_json


@pytest.mark.parametrize("s,v", [("0", 0), ("-3", -3), ("2/3", Fraction(2, 3)), ("-7/4", Fraction(-7, 4))])
def test_parse_scalar(s, v):
    assert parse_scalar(s, "x") == v


@pytest.mark.parametrize("s", ["-0", "2/4", "3/1", "0/5", "1/0", "01", "1.5", "+1", " 1", "1/-2"])
def test_parse_scalar_rejects(s):
    with pytest.raises(DocumentError):
        parse_scalar(s, "x")


def test_parse_scalar_rejects_numbers():
    with pytest.raises(DocumentError):
        parse_scalar(1, "x")


@given(st.fractions())
def test_scalar_round_trip(q):
    assert parse_scalar(format_scalar(q), "x") == q


@pytest.mark.parametrize("name", ["flat_affine_2", "parabola_flat", "nilpotent_primary"])
def test_document_round_trip(name):
    e = cat.by_name(name)
    doc = Document(e.morphism.space, e.pair, e.morphism, e.alpha)
    text = dumps(doc)
    back = loads(text)
    assert back == doc
    assert dumps(back) == text


def _parabola_json():
    e = cat.parabola_flat()
    return to_json(Document(e.morphism.space, e.pair, e.morphism, e.alpha))


def test_symmetric_gram_rejected():
    d = _parabola_json()
    d["symplectic_space"]["gram"][1][0] = "1"
    with pytest.raises(DocumentError, match="gram not skew-symmetric"):
        from_json(d)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(scalar_field="real"),
        lambda d: d.update(extra=1),
        lambda d: d["pair"].update(brackets=[[1, 0, ["0", "0"]]]),
        lambda d: d["pair"]["omega"].pop(),
        lambda d: d["morphism"].update(tau=[["1", "0"]]),
        lambda d: d["alpha"].update(tensor=[[0, 0, ["1", "0"]], [0, 0, ["1", "0"]]]),
        lambda d: d["alpha"].update(tensor=[[1, 0, ["1", "0"]]]),
        lambda d: d.pop("pair"),
    ],
)
def test_malformed_rejected(mutate):
    d = _parabola_json()
    mutate(d)
    with pytest.raises(DocumentError):
        from_json(d)


def test_not_json():
    with pytest.raises(DocumentError):
        loads("{")
    with pytest.raises(DocumentError):
        loads(json.dumps([1]))
