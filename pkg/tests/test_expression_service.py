import pytest

from verdex.core.errors import ExpressionError
from verdex.services.expression_service import ExpressionEvaluator, evaluate


def test_virasoro_third_product(virasoro_q):
    result = evaluate(virasoro_q, "nprod(L, L, 3)")
    assert result.kind == "field"
    assert result.text == "1/2 * C"


def test_vacuum_field_is_identity(virasoro_q):
    assert evaluate(virasoro_q, "Y(vac)").text == "I"


def test_modes_and_translation(virasoro_q, boson):
    assert evaluate(virasoro_q, "mode(L, 1, fs(L))").text == "2 * L[-2]"
    assert evaluate(boson, "T(a)").text == "x2"
    assert evaluate(boson, "Tpow(a, 2)").text == "2 * x3"
    assert evaluate(boson, "fs(deriv(a, 2))").text == "x3"


def test_nested_calls_share_one_evaluator(boson):
    evaluator = ExpressionEvaluator(boson)
    assert evaluator.evaluate("fs(nprod(a, a, -1))").text == "x1^2"
    assert evaluator.evaluate("mode(nprod(a, a, -1), 1, fs(a))").text == "2 * x1"


def test_lambda_and_series(boson):
    bracket = evaluate(boson, "lambda(a, a)")
    assert bracket.kind == "lambda"
    assert bracket.text == "λ·(|0>)"
    series = evaluate(boson, "exp(a, 0, 3)")
    assert series.kind == "series"
    assert series.text == "0: x1\n1: x2\n2: x3"


@pytest.mark.parametrize(
    "text, position",
    [("frob(a)", 0), ("nprod(a, b, 1)", 9), ("nprod(a, a)", 0), ("Tpow(a, -1)", 0)],
)
def test_errors_report_positions(boson, text, position):
    with pytest.raises(ExpressionError) as excinfo:
        evaluate(boson, text)
    assert excinfo.value.position == position


def test_unparseable_text(boson):
    with pytest.raises(ExpressionError):
        evaluate(boson, "mode(a, 1")
