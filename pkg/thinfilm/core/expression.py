"""Closed-form expressions used in run configurations.

The grammar is deliberately small: numbers, ``+ - * /``, powers (``**`` or ``^``), parentheses,
the functions ``sin``, ``cos`` and ``exp``, the constants ``pi`` and ``E`` and the variables
``x``, ``y`` and ``t``. Expressions are parsed with sympy and compiled to numpy callables.
"""
from __future__ import annotations

import re
from tokenize import TokenError

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

X, Y, T = sp.symbols("x y t", real=True)
SYMBOLS = {"x": X, "y": Y, "t": T}
FUNCTIONS = {"sin": sp.sin, "cos": sp.cos, "exp": sp.exp, "pi": sp.pi, "E": sp.E}

_ALLOWED_CHARS = re.compile(r"^[0-9A-Za-z_+\-*/^().\s]*$")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_NUMBER = re.compile(r"(?<![A-Za-z_])\d+\.?\d*(?:[eE][+-]?\d+)?|(?<![A-Za-z_])\.\d+(?:[eE][+-]?\d+)?")
_SYMPY_GLOBALS = {"Integer": sp.Integer, "Float": sp.Float, "Rational": sp.Rational,
                  "Symbol": sp.Symbol}


class Expression:
    """A parsed expression with a vectorized numpy evaluator.

    Calling the object broadcasts its arguments against each other, so constant expressions
    still return arrays of the broadcast shape.
    """

    def __init__(self, text, expr, variables):
        self.text = text
        self.expr = expr
        self.variables = tuple(variables)
        self._function = None

    @property
    def function(self):
        if self._function is None:
            symbols = [SYMBOLS[name] for name in self.variables]
            self._function = sp.lambdify(symbols, self.expr, modules="numpy")
        return self._function

    @property
    def is_zero(self):
        return self.expr == 0

    def depends_on(self, name):
        return SYMBOLS[name] in self.expr.free_symbols

    def __call__(self, *args):
        if len(args) != len(self.variables):
            raise ValueError("expression in ({}) called with {} arguments".format(
                ", ".join(self.variables), len(args)))
        arrays = np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in args])
        value = self.function(*arrays)
        return np.broadcast_to(np.asarray(value, dtype=float), arrays[0].shape).copy()

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_function"] = None
        return state

    def __eq__(self, other):
        return isinstance(other, Expression) and self.text == other.text \
            and self.variables == other.variables

    def __hash__(self):
        return hash((self.text, self.variables))

    def __repr__(self):
        return "Expression({!r})".format(self.text)


def parse_expression(text, variables=("x",)):
    """Parse ``text`` into an :class:`Expression` over ``variables``.

    Raises
    ------
    ValueError
        For characters, names or constructs outside the grammar.
    """
    if not isinstance(text, str) or not text.strip():
        raise ValueError("empty expression")
    if not _ALLOWED_CHARS.match(text):
        raise ValueError("invalid character in expression {!r}".format(text))
    for name in _IDENTIFIER.findall(_NUMBER.sub(" ", text)):
        if name not in FUNCTIONS and name not in variables:
            raise ValueError("unknown name {!r} in expression {!r} (allowed: {})".format(
                name, text, ", ".join(sorted(set(FUNCTIONS) | set(variables)))))
    local_dict = dict(FUNCTIONS)
    local_dict.update({name: SYMBOLS[name] for name in variables})
    try:
        expr = parse_expr(text, local_dict=local_dict, global_dict=dict(_SYMPY_GLOBALS),
                          transformations=standard_transformations + (convert_xor,),
                          evaluate=True)
    except (SyntaxError, TypeError, AttributeError, TokenError, sp.SympifyError) as exc:
        raise ValueError("cannot parse expression {!r}: {}".format(text, exc))
    if not isinstance(expr, sp.Expr):
        raise ValueError("expression {!r} is not arithmetic".format(text))
    if expr.has(sp.zoo, sp.nan, sp.oo, -sp.oo):
        raise ValueError("expression {!r} is not finite".format(text))
    return Expression(text.strip(), expr, variables)