"""Bound rewriting: prove an inequality by replacing subterms at monotonic
positions with validated bounds.

Positions are tracked through BINARY-+, UNARY-- and BINARY-* (the latter
only past a factor whose sign is known).  Signs refer to arithmetic values,
so a non-rational term counts as zero.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import App, NIL, NOT, Quote, Symbol, Term, show, term_to_value
from .eval import fold_ground
from .meta_extract import Ap, RelieveHyp, meta_extract_contextual_fact
from .rewrite import MfcContext
from .typeset import (NEG_INT, NEG_RAT, POS_INT, POS_RAT, ZERO, ts_fix,
                      type_set_of)

LT = Symbol("<")
LE = Symbol("<=")
PLUS = Symbol("BINARY-+")
TIMES = Symbol("BINARY-*")
MINUS = Symbol("UNARY--")


class Sign(enum.Enum):
    NONNEG = "NONNEG"
    NONPOS = "NONPOS"
    ZERO = "ZERO"
    UNKNOWN = "UNKNOWN"


class Direction(enum.Enum):
    UP = "UP"      # looking for upper bounds
    DOWN = "DOWN"  # looking for lower bounds

    def flip(self) -> "Direction":
        return Direction.DOWN if self is Direction.UP else Direction.UP


@dataclass(frozen=True)
class BoundHint:
    """``lesser REL greater`` with REL one of < and <=.  Gives ``greater`` as
    an upper bound of ``lesser`` and ``lesser`` as a lower bound of
    ``greater``."""

    relation: Symbol
    lesser: Term
    greater: Term

    def literal(self) -> Term:
        if self.relation is LT:
            return App(LT, (self.lesser, self.greater))
        return App(NOT, (App(LT, (self.greater, self.lesser)),))

    def bound_for(self, t: Term, direction: Direction) -> Optional[Term]:
        if direction is Direction.UP and self.lesser == t:
            return self.greater
        if direction is Direction.DOWN and self.greater == t:
            return self.lesser
        return None


def hint_from_term(t: Term) -> BoundHint:
    """Accept (< a b), (<= a b) and the translated (NOT (< b a))."""
    if type(t) is App and len(t.args) == 2 and t.fn in (LT, LE):
        return BoundHint(t.fn, t.args[0], t.args[1])
    if (type(t) is App and t.fn is NOT and len(t.args) == 1 and type(t.args[0]) is App
            and t.args[0].fn is LT and len(t.args[0].args) == 2):
        b, a = t.args[0].args
        return BoundHint(LE, a, b)
    raise ValueError(f"not a bound hint: {show(t)}")


def sign_of(t: Term, ctx: MfcContext) -> Sign:
    ts = ts_fix(type_set_of(t, ctx))
    if ts == ZERO:
        return Sign.ZERO
    if ts and not ts & ~(ZERO | POS_INT | POS_RAT):
        return Sign.NONNEG
    if ts and not ts & ~(ZERO | NEG_INT | NEG_RAT):
        return Sign.NONPOS
    return Sign.UNKNOWN


def validate(hint: BoundHint, ctx: MfcContext) -> bool:
    """Establish the hint in context: first by relieve-hyp, then by linear
    arithmetic on its negation.  Both attempts are logged facts."""
    lit = hint.literal()
    fact = meta_extract_contextual_fact(
        RelieveHyp(lit, (), Symbol("REWRITE-BOUNDS"), term_to_value(lit), 0), ctx)
    if fact == lit:
        return True
    neg = App(NOT, (lit,))
    fact = meta_extract_contextual_fact(Ap(neg), ctx)
    return fact == App(NOT, (neg,))


class _Replacer:
    def __init__(self, hints, ctx: MfcContext):
        self.hints = list(hints)
        self.ctx = ctx
        self.valid: dict[int, bool] = {}

    def _hint_ok(self, i: int) -> bool:
        ok = self.valid.get(i)
        if ok is None:
            ok = validate(self.hints[i], self.ctx)
            self.valid[i] = ok
        return ok

    def whole(self, t: Term, d: Direction) -> Optional[Term]:
        for i, h in enumerate(self.hints):
            b = h.bound_for(t, d)
            if b is not None and self._hint_ok(i):
                return b
        return None

    def replace(self, t: Term, d: Direction) -> Term:
        if type(t) is Quote:
            # a constant is its own best bound
            return t
        b = self.whole(t, d)
        if b is not None:
            return b
        if type(t) is not App:
            return t
        if t.fn is PLUS and len(t.args) == 2:
            return App(PLUS, (self.replace(t.args[0], d), self.replace(t.args[1], d)))
        if t.fn is MINUS and len(t.args) == 1:
            return App(MINUS, (self.replace(t.args[0], d.flip()),))
        if t.fn is TIMES and len(t.args) == 2:
            return self.product(t, d)
        return t

    def _factor_dir(self, factor: Term, d: Direction) -> Optional[Direction]:
        s = sign_of(factor, self.ctx)
        if s is Sign.NONNEG:
            return d
        if s is Sign.NONPOS:
            return d.flip()
        return None

    def product(self, t: App, d: Direction) -> Term:
        # x*y -> x*y' needs sign(x); then x*y' -> x'*y' needs sign(y')
        x, y = t.args
        dy = self._factor_dir(x, d)
        if dy is not None:
            y = fold_ground(self.replace(y, dy))
        dx = self._factor_dir(y, d)
        if dx is not None:
            x = fold_ground(self.replace(x, dx))
        return App(TIMES, (x, y))


def bound_replace(t: Term, direction: Direction, hints, ctx: MfcContext) -> Term:
    if not hints:
        return t
    return _Replacer(hints, ctx).replace(t, direction)


@dataclass(frozen=True)
class BoundResult:
    proved: bool
    residual: Term
    # both sides after replacement and folding
    lesser: Term = None
    greater: Term = None

    def __str__(self):
        return "PROVED" if self.proved else f"UNPROVED {show(self.residual)}"


def goal_sides(goal: Term):
    """(lesser, greater, strict) of a (< l r) or (NOT (< r l)) goal."""
    if type(goal) is App and goal.fn is LT and len(goal.args) == 2:
        return goal.args[0], goal.args[1], True
    if type(goal) is App and goal.fn is LE and len(goal.args) == 2:
        return goal.args[0], goal.args[1], False
    if (type(goal) is App and goal.fn is NOT and len(goal.args) == 1
            and type(goal.args[0]) is App and goal.args[0].fn is LT
            and len(goal.args[0].args) == 2):
        r, l = goal.args[0].args
        return l, r, False
    raise ValueError(f"goal is not an inequality: {show(goal)}")


def prove_bounds(goal: Term, hints, ctx: MfcContext) -> BoundResult:
    lesser, greater, strict = goal_sides(goal)
    r = _Replacer(hints, ctx)
    if hints:
        lesser = r.replace(lesser, Direction.UP)
        greater = r.replace(greater, Direction.DOWN)
    lesser, greater = fold_ground(lesser), fold_ground(greater)
    if strict:
        residual = fold_ground(App(LT, (lesser, greater)))
    else:
        residual = fold_ground(App(NOT, (App(LT, (greater, lesser)),)))
    if type(residual) is Quote:
        return BoundResult(residual.value is not NIL, residual, lesser, greater)
    fact = meta_extract_contextual_fact(Ap(App(NOT, (residual,))), ctx)
    proved = fact == App(NOT, (App(NOT, (residual,)),))
    return BoundResult(proved, residual, lesser, greater)
