"""Context rewriting: carry a syntactic context down onto one argument
position and simplify the argument inside it.

A context rule is an equality ``lhs = rhs`` where ``rhs`` is ``lhs`` with a
single subterm abstracted to a fresh variable (the hole).  That subterm of
``lhs``, with the hole variable inside it, is the context.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import NIL, App, Symbol, Term, Var, free_vars, replace_at, show, subterm_at
from .eval import sublis_var
from .meta_extract import RelieveHyp, Rw, meta_extract_contextual_fact
from .rewrite import MfcContext, match
from .world import EQUAL

CONTEXT_RULE = Symbol("CONTEXT-RULE")
DEPTH_CAP = 200


class ContextRuleError(ValueError):
    pass


@dataclass(frozen=True)
class ContextRule:
    hyps: tuple
    lhs: Term
    rhs: Term
    hole_var: Symbol
    hole_path: tuple

    @property
    def context(self) -> Term:
        return subterm_at(self.lhs, self.hole_path)


def _diffs(a: Term, b: Term, path: tuple, out: list) -> None:
    if a == b:
        return
    if (type(a) is App and type(b) is App and a.fn is b.fn
            and len(a.args) == len(b.args)):
        for i, (x, y) in enumerate(zip(a.args, b.args)):
            _diffs(x, y, path + (i,), out)
        return
    out.append(path)


def _occurrences(v: Symbol, t: Term) -> int:
    if type(t) is Var:
        return int(t.name is v)
    if type(t) is App:
        return sum(_occurrences(v, a) for a in t.args)
    return 0


def parse_context_rule(hyps, lhs: Term, rhs: Term) -> ContextRule:
    out: list = []
    _diffs(lhs, rhs, (), out)
    if not out:
        raise ContextRuleError("lhs and rhs are identical")
    if len(out) > 1:
        raise ContextRuleError("lhs and rhs differ at more than one position")
    path = out[0]
    hole = subterm_at(rhs, path)
    if type(hole) is not Var:
        raise ContextRuleError(f"rhs side of the difference is not a variable: {show(hole)}")
    v = hole.name
    if _occurrences(v, rhs) != 1:
        raise ContextRuleError(f"hole variable {v.name} occurs more than once in the rhs")
    ctx_term = subterm_at(lhs, path)
    if _occurrences(v, lhs) != _occurrences(v, ctx_term):
        raise ContextRuleError(f"hole variable {v.name} occurs outside the context")
    if v not in free_vars(ctx_term):
        raise ContextRuleError(f"context does not contain the hole variable {v.name}")
    return ContextRule(tuple(hyps), lhs, rhs, v, path)


def _relieved(rule: ContextRule, sub: dict, ctx: MfcContext, target: Term) -> bool:
    alist = tuple(sub.items())
    for h in rule.hyps:
        fact = meta_extract_contextual_fact(
            RelieveHyp(h, alist, CONTEXT_RULE, target, 0), ctx)
        if fact != sublis_var(alist, h):
            return False
    return True


def _in_context(rule: ContextRule, sub: dict, s: Term, ctx: MfcContext,
                rules, depth: int) -> Optional[Term]:
    """Simplify ``s`` inside the rule's context; return the new hole filler
    or None when the context did not survive."""
    outer = {k: v for k, v in sub.items() if k is not rule.hole_var}
    skeleton = sublis_var(outer, rule.context)
    wrapped = sublis_var({rule.hole_var: s}, skeleton)
    inner = _simplify(wrapped, rules, ctx, depth + 1)
    fact = meta_extract_contextual_fact(Rw(inner, NIL, NIL), ctx)
    if type(fact) is not App or fact.fn is not EQUAL:
        return None
    result = fact.args[1]
    m = match(skeleton, result, {})
    if m is None or set(m) != {rule.hole_var}:
        return None
    return m[rule.hole_var]


def _simplify(t: Term, rules, ctx: MfcContext, depth: int) -> Term:
    if type(t) is not App or depth > DEPTH_CAP:
        return t
    skip = None
    for rule in rules:
        sub = match(rule.rhs, t, {})
        if sub is None or not _relieved(rule, sub, ctx, t):
            continue
        s = sub[rule.hole_var]
        new_s = _in_context(rule, sub, s, ctx, rules, depth)
        if new_s is not None and new_s != s:
            t = replace_at(t, rule.hole_path, new_s)
        skip = rule.hole_path
        break
    return _descend(t, skip, rules, ctx, depth)


def _descend(t: Term, skip: Optional[tuple], rules, ctx, depth) -> Term:
    """Simplify the arguments of ``t``, leaving the subterm at ``skip``
    alone since it was already simplified in a context."""
    if type(t) is not App:
        return t
    if skip == ():
        return t
    args = []
    for i, a in enumerate(t.args):
        if skip is not None and skip[0] == i:
            args.append(_descend(a, skip[1:], rules, ctx, depth))
        else:
            args.append(_simplify(a, rules, ctx, depth + 1))
    args = tuple(args)
    return t if args == t.args else App(t.fn, args)


def context_simplify(t: Term, rules, ctx: MfcContext) -> Term:
    """Top-down, outermost first: the first rule (in order) whose rhs
    matches a node contributes the context for its hole position."""
    return _simplify(t, list(rules), ctx, 0)
