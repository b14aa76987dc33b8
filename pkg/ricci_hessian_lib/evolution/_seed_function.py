"""Free functions of ``λ`` prescribing ``Q`` and ``S`` on the initial line."""

from __future__ import annotations

import ast
import math
from collections.abc import Callable

import numpy as np
import sympy
from numpy.typing import NDArray

from ricci_hessian_lib._state_z import Real
from ricci_hessian_lib.exceptions import ConfigError, ValidationError


DEFAULT_Q_EXPRESSION = "1 + lam/2"
DEFAULT_S_EXPRESSION = "0.3*sin(lam)"

LAMBDA_SYMBOL = sympy.Symbol("lam", real=True)

_FUNCTIONS: dict[str, Callable[[sympy.Expr], sympy.Expr]] = {
    "sin": sympy.sin,
    "cos": sympy.cos,
    "exp": sympy.exp,
}
_CONSTANTS: dict[str, sympy.Expr] = {"pi": sympy.pi}
_VARIABLE_NAMES = ("lam", "lambda_", "λ")
_BINARY_OPERATORS: dict[type[ast.operator], Callable] = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _to_sympy(node: ast.AST, text: str) -> sympy.Expr:
    if isinstance(node, ast.Expression):
        return _to_sympy(node.body, text)
    if isinstance(node, ast.Constant) and not isinstance(node.value, bool):
        if isinstance(node.value, int):
            return sympy.Integer(node.value)
        if isinstance(node.value, float):
            return sympy.Float(node.value)
    if isinstance(node, ast.Name):
        if node.id in _VARIABLE_NAMES:
            return LAMBDA_SYMBOL
        if node.id in _CONSTANTS:
            return _CONSTANTS[node.id]
        raise ConfigError(f"Unknown name {node.id!r} in {text!r}.")
    if isinstance(node, ast.UnaryOp) and isinstance(
        node.op, (ast.USub, ast.UAdd)
    ):
        operand = _to_sympy(node.operand, text)
        return -operand if isinstance(node.op, ast.USub) else operand
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPERATORS:
        return _BINARY_OPERATORS[type(node.op)](
            _to_sympy(node.left, text), _to_sympy(node.right, text)
        )
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id in _FUNCTIONS
        and len(node.args) == 1
        and not node.keywords
    ):
        return _FUNCTIONS[node.func.id](_to_sympy(node.args[0], text))
    raise ConfigError(
        f"Unsupported construct {ast.dump(node)} in {text!r}. Expressions "
        "may only use numbers, lam, pi, + - * / (or × ÷), unary minus and "
        f"the functions {', '.join(_FUNCTIONS)}."
    )


def parse_expression(text: str) -> sympy.Expr:
    """Parses a restricted arithmetic expression in ``λ`` into sympy.

    The grammar allows numbers, the variable (``lam`` or ``λ``), ``pi``,
    ``+ - * /`` (also written ``×`` and ``÷``), unary minus, parentheses and
    the functions ``sin``, ``cos`` and ``exp``. Nothing is evaluated by
    Python itself: the text is parsed with :mod:`ast` and translated node by
    node.

    Raises:
        ConfigError: If the text is not a valid expression of the grammar.
    """
    if not isinstance(text, str) or not text.strip():
        raise ConfigError(f"Expected a nonempty expression, got {text!r}.")
    normalized = text.replace("×", "*").replace("÷", "/").replace("λ", "lam")
    try:
        tree = ast.parse(normalized.strip(), mode="eval")
    except SyntaxError as e:
        raise ConfigError(f"Could not parse expression {text!r}.") from e
    return _to_sympy(tree, text)


class SeedFunction:
    """A function of ``λ`` together with its exact derivative.

    Built either from an expression string (see :func:`parse_expression`),
    in which case derivatives and Taylor coefficients are exact, or from a
    pair of callables.

    Args:
        value:
            Vectorized callable returning the function values.
        derivative:
            Vectorized callable returning the derivative.
        expression:
            The sympy expression the callables were built from, if any.
        text:
            The original expression string, if any.
    """

    __slots__ = ("_value", "_derivative", "expression", "text")

    def __init__(
        self,
        value: Callable[[Real], Real],
        derivative: Callable[[Real], Real],
        expression: sympy.Expr | None = None,
        text: str | None = None,
    ):
        self._value = value
        self._derivative = derivative
        self.expression = expression
        self.text = text

    @classmethod
    def from_expression(cls, text: str) -> SeedFunction:
        """Creates a seed function from an expression string.

        Raises:
            ConfigError: If the expression is invalid.
        """
        expression = parse_expression(text)
        value = sympy.lambdify(LAMBDA_SYMBOL, expression, modules="numpy")
        derivative = sympy.lambdify(
            LAMBDA_SYMBOL,
            sympy.diff(expression, LAMBDA_SYMBOL),
            modules="numpy",
        )
        return cls(value, derivative, expression=expression, text=text)

    @classmethod
    def from_callables(
        cls,
        value: Callable[[Real], Real],
        derivative: Callable[[Real], Real],
    ) -> SeedFunction:
        """Creates a seed function from a function and its derivative."""
        return cls(value, derivative)

    @classmethod
    def coerce(
        cls, seed: SeedFunction | str | None, default: str
    ) -> SeedFunction:
        """Returns ``seed`` as a :class:`SeedFunction`.

        Strings are parsed and ``None`` is replaced by ``default``.
        """
        if seed is None:
            return cls.from_expression(default)
        if isinstance(seed, str):
            return cls.from_expression(seed)
        return seed

    def __call__(self, lam: Real) -> Real:
        return self._broadcast(self._value, lam)

    def derivative(self, lam: Real) -> Real:
        """Evaluates the derivative with respect to ``λ``."""
        return self._broadcast(self._derivative, lam)

    def taylor_coefficients(
        self, center: float, order: int
    ) -> NDArray[np.float64]:
        """Returns the Taylor coefficients at ``center`` through ``order``.

        Raises:
            ValidationError: If the function was built from callables.
        """
        if self.expression is None:
            raise ValidationError(
                "Taylor coefficients need a seed built from an expression."
            )
        coefficients = np.empty(order + 1)
        term = self.expression
        for k in range(order + 1):
            coefficients[k] = float(
                term.subs(LAMBDA_SYMBOL, center).evalf()
            ) / math.factorial(k)
            term = sympy.diff(term, LAMBDA_SYMBOL)
        return coefficients

    @staticmethod
    def _broadcast(func: Callable[[Real], Real], lam: Real) -> Real:
        lam_array = np.asarray(lam, dtype=float)
        values = np.asarray(func(lam_array), dtype=float) + np.zeros_like(
            lam_array
        )
        if values.ndim == 0:
            return float(values)
        return values

    def __repr__(self) -> str:
        if self.text is not None:
            return f"SeedFunction({self.text!r})"
        return "SeedFunction(<callables>)"
