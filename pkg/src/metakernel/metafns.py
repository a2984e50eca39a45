"""Metafunctions: the registry, the simplification driver, and the two
shipped metafunctions (nth-of-symbol and stobj read-over-write).

Metafunctions consume facts only through the constructors in
``meta_extract``, so everything they rely on lands in the active ledger.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import App, Quote, Symbol, Term, Var
from .eval import evaluate
from .meta_extract import (Formula, Typeset, meta_extract_contextual_fact,
                           meta_extract_global_fact)
from .rewrite import MfcContext
from .typeset import TS_SYMBOL, ts_from_value
from .world import (EQUAL, NTH, UPDATE_NTH, World, WorldError, add_defun,
                    add_stobj, add_triggers, meta_extract_formula)

CAR = Symbol("CAR")
NTH_SYMBOLP_METAFN = Symbol("NTH-SYMBOLP-METAFN")
NTH_UPDATE_NTH_META_FN = Symbol("NTH-UPDATE-NTH-META-FN")
_TYPESPEC_CHECK = Symbol("TYPESPEC-CHECK")

PASS_CAP = 100


@dataclass(frozen=True)
class Metafunction:
    name: Symbol
    trigger_fns: frozenset
    apply: Callable[[Term, MfcContext, World], Term]


# ---------------------------------------------------------------------------
# nth of a symbol index


def nth_symbolp_metafn(term: Term, ctx: MfcContext, w: World) -> Term:
    """(NTH n x) to (CAR x) when n's type-set is exactly the symbols."""
    if type(term) is not App or term.fn is not NTH or len(term.args) != 2:
        return term
    n, x = term.args
    fact = meta_extract_contextual_fact(Typeset(n), ctx)
    if type(fact) is not App or fact.fn is not _TYPESPEC_CHECK:
        return term
    if ts_from_value(fact.args[0].value) == TS_SYMBOL:
        return App(CAR, (x,))
    return term


# ---------------------------------------------------------------------------
# stobj read-over-write


def _equation_parts(fn: Symbol, formula: Term):
    if (type(formula) is App and formula.fn is EQUAL and len(formula.args) == 2
            and type(formula.args[0]) is App and formula.args[0].fn is fn):
        call, body = formula.args
        if all(type(a) is Var for a in call.args):
            return [a.name for a in call.args], body
    return None


def _index(t: Term) -> Optional[int]:
    if type(t) is Quote and type(t.value) is int and t.value >= 0:
        return t.value
    return None


def fn_nth_index(fn: Symbol, formula: Term) -> Optional[int]:
    """i when ``formula`` is (EQUAL (fn x) (NTH 'i x))."""
    parts = _equation_parts(fn, formula)
    if parts is None:
        return None
    formals, body = parts
    if (len(formals) == 1 and type(body) is App and body.fn is NTH
            and len(body.args) == 2 and body.args[1] == Var(formals[0])):
        return _index(body.args[0])
    return None


def fn_update_nth_index(fn: Symbol, formula: Term) -> Optional[int]:
    """i when ``formula`` is (EQUAL (fn v x) (UPDATE-NTH 'i v x))."""
    parts = _equation_parts(fn, formula)
    if parts is None:
        return None
    formals, body = parts
    if (len(formals) == 2 and formals[0] is not formals[1]
            and type(body) is App and body.fn is UPDATE_NTH and len(body.args) == 3
            and body.args[1] == Var(formals[0]) and body.args[2] == Var(formals[1])):
        return _index(body.args[0])
    return None


def nth_update_nth_metafn(term: Term, ctx: MfcContext, w: World) -> Term:
    """(r (w v x)) to v when r and w address the same field, else (r x)."""
    if type(term) is not App or len(term.args) != 1:
        return term
    reader = term.fn
    inner = term.args[0]
    if type(inner) is not App or len(inner.args) != 2:
        return term
    writer = inner.fn
    val, x = inner.args
    i_rd = fn_nth_index(reader, meta_extract_global_fact(Formula(reader), w))
    if i_rd is None:
        return term
    i_wr = fn_update_nth_index(writer, meta_extract_global_fact(Formula(writer), w))
    if i_wr is None:
        return term
    # the reader's equation is used once more, for (reader x)
    meta_extract_global_fact(Formula(reader), w)
    if i_rd == i_wr:
        return val
    return App(reader, (x,))


def defstobj_expand(name: Symbol, fields, w: World) -> World:
    """Define a reader and an updater per field and register the readers as
    triggers of the read-over-write metafunction."""
    fields = list(fields)
    if len(set(fields)) != len(fields):
        raise WorldError("duplicate stobj field names")
    st = name
    v = Symbol("V") if name.name != "V" else Symbol("VAL")
    readers = []
    for i, fld in enumerate(fields):
        upd = Symbol("UPDATE-" + fld.name)
        w = add_defun(fld, (st,), App(NTH, (Quote(i), Var(st))), w)
        w = add_defun(upd, (v, st), App(UPDATE_NTH, (Quote(i), Var(v), Var(st))), w)
        readers.append(fld)
    w = add_triggers(NTH_UPDATE_NTH_META_FN, readers, w)
    return add_stobj(name, fields, w)


def meta_extract_alist(call: App, env, w: World) -> dict:
    """Bind the formals found in the stored equation of ``call``'s function
    to the values of its actuals."""
    formula = meta_extract_formula(call.fn, w)
    parts = _equation_parts(call.fn, formula)
    if parts is None:
        raise WorldError(f"{call.fn.name} has no definitional equation")
    formals = parts[0]
    out: dict = {}
    for f, a in zip(formals, call.args):
        out.setdefault(f, evaluate(a, env, w))
    return out


# ---------------------------------------------------------------------------
# Registry and driver


def default_registry(w: World) -> list[Metafunction]:
    return [
        Metafunction(NTH_SYMBOLP_METAFN,
                     frozenset({NTH}) | w.meta_triggers.get(NTH_SYMBOLP_METAFN, frozenset()),
                     nth_symbolp_metafn),
        Metafunction(NTH_UPDATE_NTH_META_FN,
                     w.meta_triggers.get(NTH_UPDATE_NTH_META_FN, frozenset()),
                     nth_update_nth_metafn),
    ]


def simplify(t: Term, ctx: MfcContext, registry: Optional[list] = None,
             cap: int = PASS_CAP) -> Term:
    """Innermost-first application of metafunctions to their trigger terms.
    Each change re-simplifies the node; at most ``cap`` changes are made."""
    w = ctx.world
    if registry is None:
        registry = default_registry(w)
    budget = [cap]

    def walk(x: Term) -> Term:
        if type(x) is not App:
            return x
        args = tuple(walk(a) for a in x.args)
        if args != x.args:
            x = App(x.fn, args)
        for mf in registry:
            if budget[0] <= 0:
                return x
            if x.fn in mf.trigger_fns:
                new = mf.apply(x, ctx, w)
                if new != x:
                    budget[0] -= 1
                    if ctx.trace is not None:
                        ctx.trace(mf.name, x, new)
                    return walk(new)
        return x

    return walk(t)
