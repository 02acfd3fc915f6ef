from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Union

from arpeggio import EOF, NoMatch, NonTerminal, Optional, ParserPython, ZeroOrMore
from arpeggio import RegExMatch as _

from verdex.core.errors import ExpressionError, VerdexError
from verdex.models.algebra import VertexAlgebra
from verdex.models.conformal import LambdaPolynomial
from verdex.models.field import ModeField
from verdex.models.series import UniSeries, Window
from verdex.models.state import State
from verdex.services.conformal_service import lambda_bracket
from verdex.services.field_service import apply_field, field_derivative, nproduct
from verdex.services.series_service import to_text
from verdex.services.vertex_service import exp_zT, fs, state_field, translation_power


logger = logging.getLogger(__name__)

Value = Union[ModeField, State, LambdaPolynomial, UniSeries, int]


# Grammar: expression := argument EOF; argument := call | integer | name.


def integer():
    return _(r"[+-]?\d+")


def name():
    return _(r"[A-Za-z_][A-Za-z0-9_]*")


def function():
    return _(r"[A-Za-z_][A-Za-z0-9_]*(?=\s*\()")


def call():
    return function, "(", Optional(argument, ZeroOrMore(",", argument)), ")"


def argument():
    return [call, integer, name]


def expression():
    return argument, EOF


_PARSER = ParserPython(expression, ignore_case=False)
_OPERANDS = {"call", "integer", "name"}


@dataclass(frozen=True)
class EvalResult:
    kind: str
    text: str
    value: Value


def _operands(node) -> Iterator:
    """Top-level operand nodes below ``node``, whatever anonymous nesting the parser produced."""

    for child in node if isinstance(node, NonTerminal) else ():
        if child.rule_name in _OPERANDS:
            yield child
        elif isinstance(child, NonTerminal):
            yield from _operands(child)


def _callee(node) -> str:
    for child in node:
        if child.rule_name == "function":
            return child.value
    raise ExpressionError("call without a function name", node.position)


class ExpressionEvaluator:
    """Evaluates nprod/Y/fs/T/lambda/mode/deriv/exp/apply expressions in one algebra.

    Fields and states coerce into each other through fs and Y wherever an argument needs the other kind.
    """

    def __init__(self, V: VertexAlgebra) -> None:
        self.V = V
        self.functions: dict[str, tuple[int, Callable[..., Value]]] = {
            "nprod": (3, self._nprod),
            "Y": (1, lambda node, a: self._field(a, node)),
            "fs": (1, lambda node, a: self._state(a, node)),
            "T": (1, lambda node, a: V.translation(self._state(a, node))),
            "Tpow": (2, lambda node, a, m: translation_power(V, self._state(a, node), self._nonnegative(m, node))),
            "lambda": (2, lambda node, a, b: lambda_bracket(V, self._state(a, node), self._state(b, node))),
            "mode": (3, lambda node, a, n, v: self._field(a, node).apply(self._int(n, node), self._state(v, node))),
            "deriv": (2, lambda node, a, m: field_derivative(self._field(a, node), self._nonnegative(m, node))),
            "exp": (3, lambda node, a, lo, hi: exp_zT(V, self._state(a, node), self._window(lo, hi, node))),
            "apply": (
                4,
                lambda node, a, v, lo, hi: apply_field(self._field(a, node), self._state(v, node), self._window(lo, hi, node)),
            ),
        }

    def evaluate(self, text: str) -> EvalResult:
        try:
            tree = _PARSER.parse(text)
        except NoMatch as exc:
            raise ExpressionError(f"cannot parse {text!r}: {exc}", exc.position) from None
        root = next(_operands(tree))
        value = self._eval(root)
        result = EvalResult(self._kind(value), self.render(value), value)
        logger.debug("evaluated %s in %s -> %s", text, self.V.name, result.text)
        return result

    def render(self, value: Value) -> str:
        if isinstance(value, ModeField):
            return "I" if value is self.V.identity else fs(value, self.V).render()
        if isinstance(value, UniSeries):
            return to_text(value)
        if isinstance(value, int):
            return str(value)
        return value.render()

    @staticmethod
    def _kind(value: Value) -> str:
        if isinstance(value, ModeField):
            return "field"
        if isinstance(value, State):
            return "state"
        if isinstance(value, LambdaPolynomial):
            return "lambda"
        if isinstance(value, UniSeries):
            return "series"
        return "integer"

    def _eval(self, node) -> Value:
        if node.rule_name == "integer":
            return int(node.value)
        if node.rule_name == "name":
            return self._name(node.value, node)
        label = _callee(node)
        if label not in self.functions:
            raise ExpressionError(f"unknown function {label!r}", node.position)
        arity, handler = self.functions[label]
        arguments = [self._eval(child) for child in _operands(node)]
        if len(arguments) != arity:
            raise ExpressionError(f"{label} takes {arity} arguments, got {len(arguments)}", node.position)
        try:
            return handler(node, *arguments)
        except ExpressionError:
            raise
        except VerdexError as exc:
            raise ExpressionError(f"{label}: {exc}", node.position) from None

    def _name(self, label: str, node) -> Value:
        if label == "vac":
            return self.V.vacuum
        if label == "I":
            return self.V.identity
        if label in self.V.generators:
            return self.V.generators[label]
        raise ExpressionError(f"{label!r} is neither vac, I nor a generator of {self.V.name}", node.position)

    def _nprod(self, node, a: Value, b: Value, n: Value) -> ModeField:
        return nproduct(self._field(a, node), self._field(b, node), self._int(n, node))

    def _field(self, value: Value, node) -> ModeField:
        if isinstance(value, ModeField):
            return value
        if isinstance(value, State):
            return state_field(self.V, value)
        raise ExpressionError(f"expected a field or a state, got {self._kind(value)}", node.position)

    def _state(self, value: Value, node) -> State:
        if isinstance(value, State):
            return value
        if isinstance(value, ModeField):
            return fs(value, self.V)
        raise ExpressionError(f"expected a state or a field, got {self._kind(value)}", node.position)

    @staticmethod
    def _int(value: Value, node) -> int:
        if not isinstance(value, int):
            raise ExpressionError("expected an integer", node.position)
        return value

    def _nonnegative(self, value: Value, node) -> int:
        value = self._int(value, node)
        if value < 0:
            raise ExpressionError("expected a nonnegative integer", node.position)
        return value

    def _window(self, lo: Value, hi: Value, node) -> Window:
        return Window(self._int(lo, node), self._int(hi, node))


def evaluate(V: VertexAlgebra, text: str) -> EvalResult:
    return ExpressionEvaluator(V).evaluate(text)
