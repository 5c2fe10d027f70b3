import json

import pytest
from hypothesis import given

from starplane.errors import ParseError
from starplane.frontend import parse, parse_ncpoly, parse_symbol, render, render_ast, to_json_obj
from starplane.weyl import normal_form
from strategies import QUICK, laurent_symbols, ncpolys


def nf(text):
    return normal_form(parse_ncpoly(text))


@pytest.mark.parametrize("text,expected", [
    ("zb*z", "z*zb - 2*H"),
    ("comm(z^3,zb^3)", "18*H*z^2*zb^2 - 72*H^2*z*zb + 48*H^3"),
    ("(z+zb)^2", "z^2 + 2*z*zb + zb^2 - 2*H"),
    ("zi*z", "z*zi - 2*H*r2^-1"),
    ("2/3*i*H*z", "2/3*i*H*z"),
    ("0", "0"),
])
def test_render_plain(text, expected):
    assert render(nf(text)) == expected


def test_render_latex():
    assert render(nf("zb*z"), "latex") == r"z \bar{z} - 2 H"
    assert render(nf("zi*z"), "latex") == r"z z^{-1} - 2 H |z|^{-2}"


def test_json():
    obj = to_json_obj(nf("zb*z"))
    assert obj["text"] == "z*zb - 2*H"
    assert obj["terms"][1] == {"coef": {"re": "-2", "im": "0"}, "hdeg": 1, "r2": 0, "word": []}
    json.dumps(obj)


@pytest.mark.parametrize("bad,pos", [("z+", 2), ("q", 0), ("z^(1/2)", 4), ("(z", 2)])
def test_parse_errors(bad, pos):
    with pytest.raises(ParseError) as err:
        parse_ncpoly(bad)
    assert err.value.position == pos


def test_symbol_mode():
    assert render(parse_symbol("z^(1/2)*zb")) == "z^(1/2)*zb"
    assert render(parse_symbol("star(z,zb)")) == "z*zb + H"
    assert parse_symbol("zb*z") == parse_symbol("z*zb")


def test_word_mode_keeps_order():
    assert parse_ncpoly("zb*z") != parse_ncpoly("z*zb")


def test_ast_roundtrip():
    tree = parse("z*zb + 1")
    assert render_ast(tree) == "z*zb + 1"
    assert parse(render_ast(tree)) == tree


@QUICK
@given(ncpolys())
def test_render_parse_roundtrip(p):
    q = normal_form(p)
    assert nf(render(q)) == q


@QUICK
@given(laurent_symbols())
def test_symbol_roundtrip(s):
    assert parse_symbol(render(s)) == s
