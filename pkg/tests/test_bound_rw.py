import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from _cases import BOUND_GOAL, bound_hints, bounds_ctx
from metakernel.bound_rw import (BoundHint, Direction, LE, Sign, bound_replace, goal_sides,
                                 hint_from_term, prove_bounds, sign_of)
from metakernel.core import NIL, Quote, Symbol, mknum, parse
from metakernel.eval import evaluate, fold_ground
from metakernel.meta_extract import recording
from metakernel.properties import _bound_case
from metakernel.rewrite import MfcContext
from metakernel.world import EMPTY_WORLD

S = Symbol


def ctx(*hyps):
    return MfcContext(tuple(parse(h) for h in hyps), EMPTY_WORLD)


def hints(*ts):
    return [hint_from_term(parse(t)) for t in ts]


def test_sign_of():
    assert sign_of(parse("a"), ctx("(rationalp a)", "(not (< a '0))")) is Sign.NONNEG
    assert sign_of(parse("'-3"), ctx()) is Sign.NONPOS
    assert sign_of(parse("'0"), ctx()) is Sign.ZERO
    assert sign_of(parse("x"), ctx()) is Sign.UNKNOWN


def test_hint_forms():
    h = hint_from_term(parse("(<= a 10)"))
    assert h == BoundHint(LE, parse("a"), parse("'10"))
    assert h.bound_for(parse("a"), Direction.UP) == parse("'10")
    assert h.bound_for(parse("a"), Direction.DOWN) is None
    assert h.bound_for(parse("'10"), Direction.DOWN) == parse("a")
    with pytest.raises(ValueError):
        hint_from_term(parse("(consp a)"))


def test_subtracted_term_uses_upper_bound():
    # c < a - b follows from c < a - B when b <= B
    c = ctx("(<= b bb)")
    out = bound_replace(parse("(binary-+ a (unary-- b))"), Direction.DOWN, hints("(<= b bb)"), c)
    assert out == parse("(binary-+ a (unary-- bb))")


def test_unknown_sign_blocks_product():
    c = ctx("(<= a 10)", "(<= b 20)")
    t = parse("(binary-* a b)")
    assert bound_replace(t, Direction.UP, hints("(<= a 10)", "(<= b 20)"), c) == t


def test_unary_minus_flips():
    c = ctx("(<= 0 b)")
    out = bound_replace(parse("(unary-- b)"), Direction.UP, hints("(<= '0 b)"), c)
    assert out == parse("(unary-- '0)")


def test_unvalidated_hint_is_skipped():
    out = bound_replace(parse("a"), Direction.UP, hints("(<= a 10)"), ctx())
    assert out == parse("a")


def test_constants_are_kept():
    c = ctx("(<= a 10)")
    assert bound_replace(parse("'10"), Direction.DOWN, hints("(<= a 10)"), c) == parse("'10")


def test_three_variable_theorem():
    res = prove_bounds(parse(BOUND_GOAL), bound_hints(), bounds_ctx())
    assert res.proved and str(res) == "PROVED"
    assert res.greater == Quote(7100)
    assert fold_ground(goal_sides(parse(BOUND_GOAL))[1]) == Quote(7100)


def test_three_variable_theorem_needs_hints():
    res = prove_bounds(parse(BOUND_GOAL), [], bounds_ctx())
    assert not res.proved
    assert str(res).startswith("UNPROVED")


def test_validations_are_logged():
    with recording() as ledger:
        prove_bounds(parse(BOUND_GOAL), bound_hints(), bounds_ctx())
    assert len(ledger) >= 3
    assert all(o.kind == "CONTEXTUAL" for o in ledger.obligations)


def test_irreflexive_goal():
    res = prove_bounds(parse("(< x x)"), [], ctx())
    assert not res.proved


def test_two_factor_product():
    c = ctx("(rationalp a)", "(rationalp b)", "(<= 0 a)", "(<= 0 b)", "(<= a 10)", "(<= b 20)")
    res = prove_bounds(parse("(<= (binary-* a b) '200)"), hints("(<= a 10)", "(<= b 20)"), c)
    assert res.proved
    assert 10 * 20 == 200
    res = prove_bounds(parse("(<= (binary-* a b) '199)"), hints("(<= a 10)", "(<= b 20)"), c)
    assert not res.proved


def test_linear_goal_without_hints():
    assert prove_bounds(parse("(< a '11)"), [], ctx("(<= a 10)")).proved


def test_malformed_goal():
    with pytest.raises(ValueError):
        prove_bounds(parse("(consp x)"), [], ctx())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_empty_hints_are_conservative(seed):
    goal, hyps, _, _, _ = _bound_case(random.Random(seed))
    c = MfcContext(hyps, EMPTY_WORLD)
    for side in goal_sides(goal)[:2]:
        for d in Direction:
            assert bound_replace(side, d, [], c) == side


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_proved_goals_hold(seed):
    rng = random.Random(seed)
    goal, hyps, hs, names, ub = _bound_case(rng)
    c = MfcContext(hyps, EMPTY_WORLD)
    if not prove_bounds(goal, hs, c).proved:
        return
    for _ in range(50):
        env = {v: mknum(Fraction(rng.randint(lo * 2, hi * 2), 2)) for v, (lo, hi) in ub.items()}
        assert evaluate(goal, env) is not NIL
