"""The real evaluator, ground-call evaluation, and ``sublis_var``.

The tree-walking kernel is compiled with Cython when the extension is
available; set ``METAKERNEL_PURE_PYTHON=1`` to force the pure-Python kernel.
"""

from __future__ import annotations

import os
import sys
from typing import Iterable, Mapping, Union

from .core import App, NIL, QUOTE, Quote, Symbol, Term, Var
from .prims import (PRIMITIVES, PRIMITIVE_ARITY, EvalError, FuelExhausted,
                    UnknownFunction)
from . import _pyeval

DEFAULT_FUEL = 100_000

if os.environ.get("METAKERNEL_PURE_PYTHON"):
    _ceval = None
else:
    try:
        from . import _ceval
    except ImportError:
        _ceval = None

KERNEL = "cython" if _ceval is not None else "python"
_Machine = _ceval.Machine if _ceval is not None else _pyeval.Machine

# a thousand nested defined calls need more frames than the default limit
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)

__all__ = [
    "DEFAULT_FUEL", "KERNEL", "EvalError", "FuelExhausted", "UnknownFunction",
    "PRIMITIVES", "PRIMITIVE_ARITY", "is_primitive", "make_env", "evaluate",
    "evaluate_many", "magic_ev_fncall", "sublis_var", "eval_alist", "Failure",
]

Env = dict
EnvLike = Union[Mapping, Iterable, None]


def is_primitive(fn: Symbol) -> bool:
    return fn in PRIMITIVES


def make_env(env: EnvLike) -> dict:
    """Normalize a mapping or association sequence; first binding wins."""
    if env is None:
        return {}
    if isinstance(env, dict):
        return env
    if isinstance(env, Mapping):
        return dict(env)
    out: dict = {}
    for k, v in env:
        if k is NIL:
            raise ValueError("environment binds NIL")
        out.setdefault(k, v)
    return out


def _defs(w) -> dict:
    return w.eval_table() if w is not None else {}


def machine(w, fuel: int = DEFAULT_FUEL, kernel: str | None = None):
    cls = _Machine
    if kernel == "python":
        cls = _pyeval.Machine
    elif kernel == "cython":
        if _ceval is None:
            raise RuntimeError("compiled kernel is not built")
        cls = _ceval.Machine
    return cls(_defs(w), PRIMITIVES, fuel)


def evaluate(t: Term, env: EnvLike = None, w=None, fuel: int = DEFAULT_FUEL):
    """Evaluate ``t``; unbound variables are NIL.  Raises ``FuelExhausted``
    rather than ever returning a wrong value."""
    return machine(w, fuel).ev(t, make_env(env))


def evaluate_many(t: Term, envs, w=None, fuel: int = DEFAULT_FUEL, kernel=None) -> list:
    """Evaluate ``t`` under each env, with a fresh fuel budget per env."""
    m = machine(w, fuel, kernel)
    return m.ev_many(t, [make_env(e) for e in envs], fuel)


class Failure:
    """Returned by ``magic_ev_fncall`` when a call cannot be evaluated."""

    __slots__ = ("reason",)

    def __init__(self, reason: str):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"Failure({self.reason!r})"


def magic_ev_fncall(fn: Symbol, args: list, w, fuel: int = DEFAULT_FUEL):
    if type(fn) is not Symbol or fn is QUOTE:
        return Failure("not a function symbol")
    if not is_primitive(fn) and (w is None or not w.is_executable(fn)):
        return Failure(f"unknown function {fn.name}")
    arity = PRIMITIVE_ARITY.get(fn)
    if arity is None:
        arity = len(w.definitions[fn].formals)
    if arity != len(args):
        return Failure("arity mismatch")
    try:
        return evaluate(App(fn, tuple(Quote(a) for a in args)), {}, w, fuel)
    except EvalError as e:
        return Failure(str(e))


def fold_call(fn: Symbol, args: tuple) -> Term:
    prim = PRIMITIVES.get(fn)
    if prim is not None and len(args) == prim[1] and all(type(a) is Quote for a in args):
        try:
            return Quote(prim[0](*[a.value for a in args]))
        except EvalError:
            pass
    return App(fn, args)


def fold_ground(t: Term) -> Term:
    """Fold every ground primitive application, bottom-up."""
    if type(t) is not App:
        return t
    return fold_call(t.fn, tuple(fold_ground(a) for a in t.args))


def sublis_var(alist, t: Term) -> Term:
    """Substitute ``alist`` (symbol -> Term, first binding wins) into ``t``
    and fold ground calls of primitives."""
    al = make_env(alist)

    def walk(x):
        tx = type(x)
        if tx is Var:
            return al.get(x.name, x)
        if tx is Quote:
            return x
        return fold_call(x.fn, tuple(walk(a) for a in x.args))

    return walk(t)


def eval_alist(alist, env: EnvLike, w=None) -> list:
    """Evaluate the right-hand sides of a substitution, keeping order."""
    env = make_env(env)
    pairs = alist.items() if isinstance(alist, Mapping) else alist
    return [(k, evaluate(v, env, w)) for k, v in pairs]
