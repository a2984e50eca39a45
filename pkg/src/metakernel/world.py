"""The logical world: definitions, theorems and rewrite rules.

Worlds are persistent values.  Every ``add_*`` function returns a new world
and leaves its argument untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Optional

from .core import (App, EQUAL, IFF, IMPLIES, IF, QT, QNIL, Symbol, Term, Var,
                   free_vars, show)
from .prims import PRIMITIVE_ARITY

NTH = Symbol("NTH")
UPDATE_NTH = Symbol("UPDATE-NTH")


class WorldError(ValueError):
    pass


@dataclass(frozen=True)
class Definition:
    name: Symbol
    formals: tuple
    body: Term


@dataclass(frozen=True)
class RewriteRule:
    hyps: tuple
    equiv: Symbol
    lhs: App
    rhs: Term
    backchain_limit: Optional[int] = None
    name: Optional[Symbol] = None

    def __post_init__(self):
        object.__setattr__(self, "hyps", tuple(self.hyps))


def _frozen(d: dict) -> Mapping:
    return MappingProxyType(dict(d))


@dataclass(frozen=True, eq=False)
class World:
    definitions: Mapping = field(default_factory=lambda: _frozen({}))
    theorems: Mapping = field(default_factory=lambda: _frozen({}))
    lemmas: Mapping = field(default_factory=lambda: _frozen({}))
    # defstub functions: evaluable, but their equations are not extractable
    stubs: frozenset = frozenset()
    stobjs: Mapping = field(default_factory=lambda: _frozen({}))
    # metafunction name -> trigger function symbols
    meta_triggers: Mapping = field(default_factory=lambda: _frozen({}))
    context_rules: tuple = ()
    # fault injection for negative controls: name -> formula reported
    # by meta_extract_formula in place of the true one
    formula_overrides: Mapping = field(default_factory=lambda: _frozen({}))

    def _key(self):
        return (dict(self.definitions), dict(self.theorems),
                {k: tuple(v) for k, v in self.lemmas.items()}, self.stubs,
                dict(self.stobjs), dict(self.meta_triggers), self.context_rules,
                dict(self.formula_overrides))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, World):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None

    def eval_table(self) -> dict:
        table = self.__dict__.get("_eval_table")
        if table is None:
            table = {name: (d.formals, d.body) for name, d in self.definitions.items()}
            object.__setattr__(self, "_eval_table", table)
        return table

    def is_executable(self, fn: Symbol) -> bool:
        return fn in self.definitions

    def arity(self, fn: Symbol) -> Optional[int]:
        a = PRIMITIVE_ARITY.get(fn)
        if a is not None:
            return a
        d = self.definitions.get(fn)
        return len(d.formals) if d is not None else None

    def is_name_used(self, name: Symbol) -> bool:
        return (name in self.definitions or name in self.theorems
                or name in PRIMITIVE_ARITY)

    def rules_for(self, fn: Symbol) -> tuple:
        return self.lemmas.get(fn, ())


EMPTY_WORLD = World()


def check_term(t: Term, w: World, extra: Optional[dict] = None) -> None:
    """Raise ``WorldError`` if ``t`` calls an unknown function or has an
    arity mismatch.  ``extra`` supplies arities of functions being defined."""
    if type(t) is not App:
        return
    arity = (extra or {}).get(t.fn)
    if arity is None:
        arity = w.arity(t.fn)
    if arity is None:
        raise WorldError(f"unknown function {t.fn.name} in {show(t)}")
    if arity != len(t.args):
        raise WorldError(f"{t.fn.name} expects {arity} arguments in {show(t)}")
    for a in t.args:
        check_term(a, w, extra)


def add_defun(name: Symbol, formals, body: Term, w: World, stub: bool = False) -> World:
    formals = tuple(formals)
    if w.is_name_used(name):
        raise WorldError(f"name {name.name} is already in use")
    if len(set(formals)) != len(formals):
        raise WorldError(f"duplicate formals in {name.name}")
    for v in formals:
        if v.name in ("T", "NIL") or v.is_keyword:
            raise WorldError(f"{v.name} cannot be a formal")
    extra_vars = [v for v in free_vars(body) if v not in formals]
    if extra_vars:
        raise WorldError(f"body of {name.name} mentions non-formals "
                         + " ".join(v.name for v in extra_vars))
    check_term(body, w, {name: len(formals)})
    defs = dict(w.definitions)
    defs[name] = Definition(name, formals, body)
    stubs = w.stubs | {name} if stub else w.stubs
    return replace(w, definitions=_frozen(defs), stubs=stubs)


def add_defthm(name: Symbol, formula: Term, w: World) -> World:
    if w.is_name_used(name):
        raise WorldError(f"name {name.name} is already in use")
    check_term(formula, w)
    thms = dict(w.theorems)
    thms[name] = formula
    return replace(w, theorems=_frozen(thms))


def check_rule(rule: RewriteRule, w: World) -> None:
    if type(rule.lhs) is not App:
        raise WorldError(f"left-hand side {show(rule.lhs)} is not a function application")
    if rule.equiv not in (EQUAL, IFF):
        raise WorldError(f"unsupported equivalence {show(rule.equiv)}")
    lhs_vars = set(free_vars(rule.lhs))
    loose = [v for t in (rule.rhs, *rule.hyps) for v in free_vars(t) if v not in lhs_vars]
    if loose:
        raise WorldError("free variables not bound by the left-hand side: "
                         + " ".join(sorted({v.name for v in loose})))
    for t in (rule.lhs, rule.rhs, *rule.hyps):
        check_term(t, w)
    if rule.backchain_limit is not None and rule.backchain_limit < 0:
        raise WorldError("backchain limit must be a natural number")


def add_rewrite_rule(rule: RewriteRule, w: World) -> World:
    check_rule(rule, w)
    if rule.name is not None:
        if w.is_name_used(rule.name):
            raise WorldError(f"name {rule.name.name} is already in use")
        w = add_defthm(rule.name, rewrite_rule_term(rule), w)
    lemmas = dict(w.lemmas)
    lemmas[rule.lhs.fn] = tuple(lemmas.get(rule.lhs.fn, ())) + (rule,)
    return replace(w, lemmas=_frozen(lemmas))


def add_triggers(meta_name: Symbol, fns, w: World) -> World:
    trig = dict(w.meta_triggers)
    trig[meta_name] = frozenset(trig.get(meta_name, frozenset())) | frozenset(fns)
    return replace(w, meta_triggers=_frozen(trig))


def add_stobj(name: Symbol, fields, w: World) -> World:
    stobjs = dict(w.stobjs)
    stobjs[name] = tuple(fields)
    return replace(w, stobjs=_frozen(stobjs))


def add_context_rule(rule, w: World) -> World:
    return replace(w, context_rules=w.context_rules + (rule,))


def override_formula(name: Symbol, formula: Term, w: World) -> World:
    """A world whose extraction of ``name`` lies.  Negative controls only."""
    o = dict(w.formula_overrides)
    o[name] = formula
    return replace(w, formula_overrides=_frozen(o))


# ---------------------------------------------------------------------------
# Extraction


def definitional_equation(d: Definition) -> Term:
    return App(EQUAL, (App(d.name, tuple(Var(v) for v in d.formals)), d.body))


def meta_extract_formula(name, w: World) -> Term:
    """Definitional equation of a defined function, body of a theorem,
    and ``'T`` for anything else."""
    if type(name) is not Symbol:
        return QT
    if name in w.formula_overrides:
        return w.formula_overrides[name]
    d = w.definitions.get(name)
    if d is not None:
        if name in w.stubs:
            return QT
        return definitional_equation(d)
    thm = w.theorems.get(name)
    if thm is not None:
        return thm
    return QT


def conjoin(terms) -> Term:
    terms = list(terms)
    if not terms:
        return QT
    out = terms[-1]
    for t in reversed(terms[:-1]):
        out = App(IF, (t, out, QNIL))
    return out


def rewrite_rule_term(r: RewriteRule) -> Term:
    concl = App(r.equiv, (r.lhs, r.rhs))
    if not r.hyps:
        return concl
    return App(IMPLIES, (conjoin(r.hyps), concl))


def nth_lemma(fn, n, w: World) -> Term:
    if type(fn) is not Symbol or type(n) is not int or n < 0:
        return QT
    rules = w.rules_for(fn)
    if n >= len(rules):
        return QT
    return rewrite_rule_term(rules[n])


def formals(fn: Symbol, w: World) -> tuple:
    """Formals as they appear in the stored definitional equation."""
    formula = meta_extract_formula(fn, w)
    if (type(formula) is App and formula.fn is EQUAL and len(formula.args) == 2
            and type(formula.args[0]) is App and formula.args[0].fn is fn
            and all(type(a) is Var for a in formula.args[0].args)):
        return tuple(a.name for a in formula.args[0].args)
    d = w.definitions.get(fn)
    if d is not None and fn in w.stubs:
        return d.formals
    raise WorldError(f"{show(fn)} is not a defined function")
