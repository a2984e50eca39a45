"""Inputs shared by the module tests and the acceptance suite."""

from pathlib import Path

from metakernel.bound_rw import hint_from_term
from metakernel.context_rw import parse_context_rule
from metakernel.core import Symbol, parse
from metakernel.metafns import defstobj_expand
from metakernel.rewrite import MfcContext
from metakernel.world import EMPTY_WORLD, EQUAL, RewriteRule, add_defun, add_rewrite_rule

S = Symbol
SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

TEST1 = ("(fld3 (update-fld1 '1 (update-fld2 '2 (update-fld3 '3 (update-fld4 '4"
         " (update-fld3 '5 (update-fld6 '6 st)))))))")

BOUND_HYPS = ("(rationalp a)", "(rationalp b)", "(rationalp c)",
              "(<= 0 a)", "(<= a 10)", "(<= 0 b)", "(<= b 20)", "(<= 1 c)", "(<= c 30)")
BOUND_GOAL = ("(<= (+ (* a b c) (* a b) (* b c) (* a c))"
              " (+ (* 10 20 30) (* 10 20) (* 20 30) (* 10 30)))")
BOUND_HINTS = ("(<= a 10)", "(<= b 20)", "(<= c 30)")

LOGBITP_IN = "(logbitp 4 (logand (logior a b c (logapp 6 d e)) f g))"
LOGBITP_OUT = "(logbitp '4 (logand (logior a (logior b (logior c d))) (logand f g)))"

CONTEXT_RULES = (
    ("(logbitp n (logand (ash '1 (nfix n)) m))", "(logbitp n m)"),
    ("(logand n (logior a (logand n b)))", "(logand n (logior a b))"),
    ("(logand n (logand (logand n a) b))", "(logand n (logand a b))"),
)


def foo_world():
    return add_defun(S("FOO"), (S("X"),), parse("(car x)"), EMPTY_WORLD, stub=True)


def stobj_world(n=20):
    return defstobj_expand(S("ST"), [S(f"FLD{i}") for i in range(1, n + 1)], EMPTY_WORLD)


def bounds_ctx():
    return MfcContext(tuple(parse(h) for h in BOUND_HYPS), EMPTY_WORLD)


def bound_hints():
    return [hint_from_term(parse(h)) for h in BOUND_HINTS]


def logapp_world():
    rule = RewriteRule((parse("(equal (logtail m n) '0)"),), EQUAL,
                       parse("(logand n (logapp m a b))"), parse("(logand n a)"))
    return add_rewrite_rule(rule, EMPTY_WORLD)


def context_rules():
    return [parse_context_rule((), parse(l), parse(r)) for l, r in CONTEXT_RULES]
