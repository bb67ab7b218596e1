import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ppvgroup.algebra.field import FunctionField
from ppvgroup.catalog import EXAMPLES, example
from ppvgroup.engine.pipeline import run_pipeline
from ppvgroup.io.parser import (Add, Div, EvalError, Number, ParseError, Pow, Sub, Var, eval_expr,
                                parse_expr, parse_ratfunc)
from ppvgroup.io.render import render_ratfunc
from ppvgroup.io.report import (SCHEMA_VERSION, DocumentError, dumps, load_input, render_report_text,
                                report_to_dict)
from ppvgroup.testing import random_ratfunc, seeded

F2 = FunctionField(["t1", "t2"])


# -- parser ------------------------------------------------------------------------

def test_parse_ast():
    assert parse_expr("x^2 - 1") == Sub(Pow(Var("x"), 2), Number(Fraction(1)))
    assert parse_expr("3/4") == Div(Number(Fraction(3)), Number(Fraction(4)))
    assert parse_expr("t1/x + (t1-t2)/(x-1)", ["t1", "t2"]) == Add(
        Div(Var("t1"), Var("x")),
        Div(Sub(Var("t1"), Var("t2")), Sub(Var("x"), Number(Fraction(1)))))


def test_eval_examples(F1):
    assert parse_ratfunc("(x-1)*(x+1)/(x-1)", F1) == F1.x + 1
    assert parse_ratfunc(" x ^ ( -2 ) ", F1) == F1.x ** -2
    assert parse_ratfunc("--x", F1) == F1.x
    assert parse_ratfunc("2^-1", F1) == F1.const(Fraction(1, 2))


@pytest.mark.parametrize("text, msg, pos", [
    ("x^t1", "non-integer exponent", 2),
    ("y + 1", "unknown identifier 'y'", 0),
    ("x +", "unexpected end of input", 3),
    ("(x", "expected ')'", 2),
    ("2**x", "unexpected '*'", 2),
    ("3 x", "unexpected 'x'", 2),
    ("", "empty expression", 0),
    ("x^2^3", "chained exponents need parentheses", 3),
])
def test_parse_errors(F1, text, msg, pos):
    with pytest.raises(ParseError) as info:
        parse_ratfunc(text, F1)
    assert info.value.message == msg
    assert info.value.pos == pos
    assert info.value.pointer().splitlines()[-1] == " " * pos + "^"


@pytest.mark.parametrize("text, msg", [
    ("1/(x-x)", "division by zero"),
    ("(x-x)^-1", "division by zero"),
    ("x^20000", "exponent 20000 exceeds 10000"),
])
def test_eval_errors(F1, text, msg):
    with pytest.raises(EvalError, match=msg):
        parse_ratfunc(text, F1)


def test_unknown_identifier_at_eval(F1):
    with pytest.raises(EvalError, match="unknown identifier 't2'"):
        eval_expr(parse_expr("t2", ["t2"]), F1)


# -- rendering ----------------------------------------------------------------------

def test_render_examples(F1):
    assert render_ratfunc(F1.zero) == "0"
    assert str(F1.const(-3) / 4) == "-3/4"
    assert str(parse_ratfunc("t1/x + 1", F1)) == "(x + t1)/x"


def test_render_round_trip_random():
    rng = seeded(41)
    for _ in range(100):
        f = random_ratfunc(F2, rng)
        assert parse_ratfunc(str(f), F2) == f


_atoms = st.sampled_from(["x", "t1", "t2", "1", "2", "3", "7"])


def _exprs():
    return st.recursive(
        _atoms,
        lambda e: st.one_of(
            st.tuples(e, st.sampled_from("+-*"), e).map(lambda a: f"({a[0]}){a[1]}({a[2]})"),
            st.tuples(e, st.integers(0, 3)).map(lambda a: f"({a[0]})^{a[1]}"),
            st.tuples(e, st.sampled_from(["x", "x-1", "t1+x"])).map(lambda a: f"({a[0]})/({a[1]})"),
        ),
        max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(_exprs())
def test_round_trip_property(text):
    f = parse_ratfunc(text, F2)
    assert parse_ratfunc(str(f), F2) == f


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="xt12 0+-*/^()a.", max_size=20))
def test_parser_is_total(text):
    try:
        parse_ratfunc(text, F2)
    except (ParseError, EvalError):
        pass


# -- documents and reports --------------------------------------------------------------

@pytest.mark.parametrize("doc, msg", [
    ([], "must be a JSON object"),
    ({"equation": {"a1": "x"}}, "string fields 'a1' and 'a0'"),
    ({"parameters": "t1", "equation": {"a1": "0", "a0": "0"}}, "list of names"),
    ({"equation": {"a1": "0", "a0": "0"}, "options": {"foo": 1}}, "unknown option 'foo'"),
    ({"equation": {"a1": "0", "a0": "0"}, "options": {"max_theta_order": -1}}, "non-negative"),
    ({"equation": {"a1": "0", "a0": "y"}}, "equation.a0: unknown identifier"),
    ({"parameters": ["x"], "equation": {"a1": "0", "a0": "0"}}, "bad parameter names"),
])
def test_load_input_errors(doc, msg):
    with pytest.raises(DocumentError, match=msg):
        load_input(doc)


def test_load_input_options():
    doc = example("tetrahedral")
    doc["options"] = {"max_theta_order": 2, "assume": ["t1 generic"],
                      "semi_invariants": [{"label": "chi", "order": 2, "v": "1/(4*x)"}]}
    _, _, _, opts = load_input(doc)
    assert opts.max_theta_order == 2
    assert opts.assume == ["t1 generic"]
    assert opts.semi_invariants[0].order == 2


def test_report_schema():
    _, a1, a0, opts = load_input(example("two-param"))
    rep = run_pipeline(a1, a0, opts)
    d = json.loads(dumps(report_to_dict(rep)))
    assert sorted(d) == ["D", "G", "H", "assumptions", "case", "completeness", "coupling", "input",
                         "normalized", "parameters", "partial_reasons", "schema", "truncation"]
    assert d["schema"] == SCHEMA_VERSION
    assert d["parameters"] == ["t1", "t2"]
    assert d["case"] == "I" and d["completeness"] == "complete"
    assert d["H"]["u"] == str(rep.H.case.u)
    assert d["coupling"]["kind"] == "MultMultCoupling"
    assert len(d["coupling"]["data"]["pairs"]) == 2
    assert d["G"]["membership"] == ["a in A", "b in B", "e in D"]
    text = render_report_text(rep)
    assert text.startswith("Case I\n") and "completeness: complete" in text


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_examples_load(name):
    fld, a1, a0, _ = load_input(example(name))
    assert a1.field is fld and a0.field is fld
