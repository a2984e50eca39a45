"""Conditional rewriting and the proof-context oracles (mfc-ts, mfc-rw+,
mfc-rw, mfc-ap, mfc-relieve-hyp).

All oracles are deterministic: world rules are tried in insertion order and
the first one whose hypotheses are relieved wins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import (App, EQUAL, IF, IFF, IMPLIES, NIL, NOT, QNIL, QT, Quote,
                   Symbol, Term, Var, is_ground)
from .eval import EvalError, evaluate, fold_call, make_env, sublis_var
from .linarith import linearize, refute
from .typeset import type_set_of
from .world import World

log = logging.getLogger(__name__)

DEFAULT_BACKCHAIN = 3
DEPTH_CAP = 1000


@dataclass(frozen=True)
class MfcContext:
    hyps: tuple
    world: World
    # called as trace(rule_name, before, after) on every rule application
    trace: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "hyps", tuple(self.hyps))

    def with_hyps(self, hyps) -> "MfcContext":
        return MfcContext(tuple(hyps), self.world, self.trace)


def equiv_symbol(e) -> Symbol:
    """NIL means EQUAL and T means IFF, as at the fact-constructor boundary."""
    if e is None or e is NIL or e is EQUAL:
        return EQUAL
    if e is IFF or (type(e) is Symbol and e.name == "T"):
        return IFF
    raise ValueError(f"unsupported equivalence relation {e!r}")


def match(pat: Term, t: Term, sub: Optional[dict] = None) -> Optional[dict]:
    """One-way matching of ``pat`` against ``t``."""
    sub = {} if sub is None else sub
    if type(pat) is Var:
        bound = sub.get(pat.name)
        if bound is None:
            sub[pat.name] = t
            return sub
        return sub if bound == t else None
    if type(pat) is Quote:
        return sub if pat == t else None
    if type(t) is not App or t.fn is not pat.fn or len(t.args) != len(pat.args):
        return None
    for p, a in zip(pat.args, t.args):
        if match(p, a, sub) is None:
            return None
    return sub


def mfc_ts(t: Term, ctx: MfcContext) -> int:
    return type_set_of(t, ctx)


# ---------------------------------------------------------------------------
# Rewriter


class _Budget:
    __slots__ = ("steps",)

    def __init__(self, steps):
        self.steps = steps


_IFF_ARGS = {NOT: (0,), IFF: (0, 1), IMPLIES: (0, 1)}


def _hyp_truth(t: Term, hyps) -> Optional[bool]:
    if t in hyps:
        return True
    if App(NOT, (t,)) in hyps:
        return False
    if type(t) is App and t.fn is NOT and len(t.args) == 1 and t.args[0] in hyps:
        return False
    return None


class _Rewriter:
    def __init__(self, ctx: MfcContext, budget: _Budget, backchain: int):
        self.ctx = ctx
        self.w = ctx.world
        self.hyps = set(ctx.hyps)
        self.budget = budget
        self.backchain = backchain

    def rw(self, t: Term, iff: bool) -> Term:
        if type(t) is Quote:
            return t
        if iff:
            truth = _hyp_truth(t, self.hyps)
            if truth is not None:
                return QT if truth else QNIL
        if type(t) is Var:
            return t
        if self.budget.steps <= 0:
            return t
        fn, args = t.fn, t.args
        if fn is IF and len(args) == 3:
            test = self.rw(args[0], True)
            if type(test) is Quote:
                return self.rw(args[1] if test.value is not NIL else args[2], iff)
            a = self.rw(args[1], iff)
            b = self.rw(args[2], iff)
            if a == b:
                return a
            t = App(IF, (test, a, b))
        else:
            positions = _IFF_ARGS.get(fn, ())
            new_args = tuple(self.rw(a, i in positions) for i, a in enumerate(args))
            t = fold_call(fn, new_args)
        if type(t) is not App:
            return t
        if iff:
            truth = _hyp_truth(t, self.hyps)
            if truth is not None:
                return QT if truth else QNIL
        return self.apply_rules(t, iff)

    def apply_rules(self, t: App, iff: bool) -> Term:
        for rule in self.w.rules_for(t.fn):
            if rule.equiv is IFF and not iff:
                continue
            sub = match(rule.lhs, t)
            if sub is None:
                continue
            limit = DEFAULT_BACKCHAIN if rule.backchain_limit is None else rule.backchain_limit
            remaining = min(self.backchain, limit)
            if not all(relieve(h, sub, self.ctx, remaining, self.budget) for h in rule.hyps):
                continue
            new = sublis_var(sub, rule.rhs)
            self.budget.steps -= 1
            if self.ctx.trace is not None:
                self.ctx.trace(rule.name, t, new)
            if self.budget.steps <= 0:
                return new
            return self.rw(new, iff)
        return t


def _rewrite(t: Term, ctx: MfcContext, iff: bool, budget: _Budget, backchain: int) -> Term:
    r = _Rewriter(ctx, budget, backchain)
    while True:
        new = r.rw(t, iff)
        if new == t or budget.steps <= 0:
            return new
        t = new


def rewrite(t: Term, ctx: MfcContext, equiv=EQUAL, depth: int = DEPTH_CAP) -> Term:
    """Inside-out conditional rewriting to a fixpoint, capped at ``depth``
    rule applications.  Returns the current term when the cap is reached."""
    iff = equiv_symbol(equiv) is IFF
    return _rewrite(t, ctx, iff, _Budget(depth), DEFAULT_BACKCHAIN)


def relieve(hyp: Term, alist, ctx: MfcContext, backchain: int, budget: Optional[_Budget] = None) -> bool:
    inst = sublis_var(alist, hyp)
    if type(inst) is Quote:
        return inst.value is not NIL
    if inst in ctx.hyps:
        return True
    if is_ground(inst):
        try:
            if evaluate(inst, {}, ctx.world) is not NIL:
                return True
        except EvalError:
            pass
    if backchain > 0:
        budget = budget if budget is not None else _Budget(DEPTH_CAP)
        r = _rewrite(inst, ctx, True, budget, backchain - 1)
        if type(r) is Quote and r.value is not NIL:
            return True
    return mfc_ap(App(NOT, (inst,)), ctx)


# ---------------------------------------------------------------------------
# Oracles


def mfc_rw_plus(t: Term, alist, obj, equiv, ctx: MfcContext) -> Term:
    """Rewrite the instance of ``t`` under ``alist``.  ``obj`` is advisory."""
    del obj
    return rewrite(sublis_var(alist, t), ctx, equiv)


def mfc_rw(t: Term, obj, equiv, ctx: MfcContext) -> Term:
    return mfc_rw_plus(t, {}, obj, equiv, ctx)


def mfc_ap(t: Term, ctx: MfcContext) -> bool:
    """True when ``t`` contradicts the linear content of the context."""
    goal = linearize(t)
    if goal is None:
        return False
    cs = [c for c in (linearize(h) for h in ctx.hyps) if c is not None]
    cs.append(goal)
    return refute(cs)


def mfc_relieve_hyp(hyp: Term, alist, rune, target, backptr, ctx: MfcContext) -> bool:
    """Try to establish the instance of ``hyp`` under ``alist``.
    ``rune``, ``target`` and ``backptr`` are bookkeeping and ignored."""
    del rune, target, backptr
    return relieve(hyp, make_env(alist), ctx, DEFAULT_BACKCHAIN)
