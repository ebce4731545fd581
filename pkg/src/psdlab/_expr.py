"""Tiny whitelisted expression interpreter for scenario coefficient tables.

Coefficient functions a_k(x) in scenario files are written as plain
expression strings over the variable ``x``, numeric literals
(including complex like ``1j``), the arithmetic operators, and a small
set of functions.  The AST is validated before compilation, so config
files cannot execute arbitrary code.
"""

import ast

import numpy as np

_FUNCS = {
    "tanh": np.tanh,
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": np.sqrt,
    "abs": abs,
}
_NAMES = {"pi": np.pi}

_ALLOWED_NODES = (
    ast.Expression, ast.Constant, ast.Name, ast.Load, ast.Call,
    ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult, ast.Div,
    ast.Pow, ast.USub, ast.UAdd,
)


class ExpressionError(ValueError):
    pass


def compile_expr(text):
    """Compile an expression string in ``x`` into a scalar callable."""
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc}") from exc
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ExpressionError(
                f"forbidden element {type(node).__name__} in {text!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, (int, float, complex)):
            raise ExpressionError(f"non-numeric literal in {text!r}")
        if isinstance(node, ast.Name) and node.id not in ("x",) and \
                node.id not in _FUNCS and node.id not in _NAMES:
            raise ExpressionError(f"unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
                raise ExpressionError(f"call to non-whitelisted function in {text!r}")
            if node.keywords:
                raise ExpressionError("keyword arguments are not allowed")
    code = compile(tree, "<scenario-expr>", "eval")
    env = {"__builtins__": {}}
    env.update(_FUNCS)
    env.update(_NAMES)

    def f(x):
        return complex(eval(code, env, {"x": x}))

    return f
