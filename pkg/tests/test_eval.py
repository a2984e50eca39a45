import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metakernel import eval as ev
from metakernel.core import NIL, T, App, Cons, Quote, Symbol, Var, parse, read_value, show
from metakernel.eval import (Failure, FuelExhausted, UnknownFunction, evaluate, evaluate_many,
                             fold_ground, magic_ev_fncall, make_env, sublis_var)
from metakernel.gen import VAR_POOL, random_env, random_term, random_world, world_fns
from metakernel.properties import sublis_law, _sublis_case
from metakernel.typeset import TS_SYMBOL, ts_to_value
from metakernel.world import EMPTY_WORLD, add_defun

S = Symbol


def test_car_of_quoted_list():
    assert evaluate(parse("(car '(a b))")) is S("A")


def test_defined_function_by_stored_equation(atom_world):
    assert evaluate(parse("(atom x)"), {S("X"): Cons(1, 2)}, atom_world) is NIL
    assert evaluate(parse("(atom x)"), {S("X"): 5}, atom_world) is T


def test_typespec_check():
    ts = ts_to_value(TS_SYMBOL)
    chk = App(S("TYPESPEC-CHECK"), (Quote(ts), Var(S("X"))))
    assert evaluate(chk, {S("X"): S("FOO")}) is T
    assert evaluate(chk, {S("X"): 7}) is NIL


def test_completion_semantics():
    assert evaluate(parse("(car 5)")) is NIL
    assert evaluate(parse("(+ 'a 2)")) == 2
    assert evaluate(parse("(nfix -3)")) == 0
    assert evaluate(parse("(/ 0)")) == 0
    assert evaluate(parse("(* 1/2 4/3)")) == Fraction(2, 3)
    assert evaluate(parse("(< 'a 1)")) is T


def test_unbound_variable_is_nil():
    assert evaluate(parse("x")) is NIL


def test_bit_primitives():
    assert evaluate(parse("(logtail 6 16)")) == 0
    assert evaluate(parse("(logapp 6 d e)"), {S("D"): 70, S("E"): 1}) == (70 % 64) + 64
    assert evaluate(parse("(ash 1 (nfix 4))")) == 16
    assert evaluate(parse("(logbitp 4 16)")) is T
    assert evaluate(parse("(logand -1 5)")) == 5


def test_nth_update_nth():
    st = read_value("(10 20 30)")
    assert evaluate(parse("(nth 2 st)"), {S("ST"): st}) == 30
    assert evaluate(parse("(nth 5 st)"), {S("ST"): st}) is NIL
    assert evaluate(parse("(update-nth 4 'x nil)")) == read_value("(NIL NIL NIL NIL X)")


def test_if_is_lazy():
    w = add_defun(S("LOOP"), (S("X"),), parse("(loop x)"), EMPTY_WORLD)
    assert evaluate(parse("(if 't 1 (loop x))"), {}, w) == 1
    with pytest.raises(FuelExhausted):
        evaluate(parse("(loop x)"), {}, w)


def test_deep_recursion_runs_out_of_fuel_not_stack():
    w = add_defun(S("DOWN"), (S("N"),), parse("(if (< 0 n) (+ 1 (down (+ -1 n))) 0)"), EMPTY_WORLD)
    assert evaluate(parse("(down 900)"), {}, w) == 900
    with pytest.raises(FuelExhausted):
        evaluate(parse("(down 5000)"), {}, w)


def test_unknown_function_and_arity():
    with pytest.raises(UnknownFunction):
        evaluate(parse("(frob 1)"))
    with pytest.raises(ev.EvalError):
        evaluate(parse("(car 1 2)"))


def test_huge_shift_is_refused():
    with pytest.raises(FuelExhausted):
        evaluate(parse("(ash 1 100000000)"))


def test_magic_ev_fncall():
    assert magic_ev_fncall(S("LEN"), [read_value("(1 2 3)")], EMPTY_WORLD) == 3
    assert isinstance(magic_ev_fncall(S("UNDEFINED-FN"), [1], EMPTY_WORLD), Failure)
    assert magic_ev_fncall(S("LOGTAIL"), [6, 16], EMPTY_WORLD) == 16 >> 6 == 0
    assert not magic_ev_fncall(S("CAR"), [1, 2], EMPTY_WORLD)


def test_sublis_var_examples():
    assert sublis_var({S("X"): parse("'1")}, parse("(binary-+ x '2)")) == parse("'3")
    assert sublis_var({}, parse("(car x)")) == parse("(car x)")


def test_sublis_var_first_binding_wins():
    al = [(S("X"), parse("'1")), (S("X"), parse("'2"))]
    assert sublis_var(al, parse("x")) == parse("'1")


def test_make_env_rejects_nil_key():
    with pytest.raises(ValueError):
        make_env([(NIL, 1)])


def test_fold_ground_keeps_erroring_calls():
    t = parse("(ash 1 100000000)")
    assert fold_ground(t) == t


def test_eval_of_sublis_var_500():
    rng = random.Random(7)
    checked = 0
    while checked < 500:
        r = sublis_law(_sublis_case(rng))
        if r is None:
            continue
        assert r
        checked += 1


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_ground_folding_preserves_value(seed):
    rng = random.Random(seed)
    t = random_term(4, VAR_POOL[:3], rng)
    env = random_env(VAR_POOL[:3], rng)
    try:
        a = evaluate(t, env)
    except ev.EvalError:
        return
    assert evaluate(sublis_var({}, t), env) == a


def test_ratios_stay_normalized():
    rng = random.Random(3)
    for _ in range(300):
        t = random_term(3, VAR_POOL[:2], rng)
        try:
            v = evaluate(t, random_env(VAR_POOL[:2], rng))
        except ev.EvalError:
            continue
        if isinstance(v, Fraction):
            assert v.denominator != 1


@pytest.mark.skipif(ev.KERNEL != "cython", reason="compiled kernel not built")
def test_kernels_agree():
    rng = random.Random(11)
    for _ in range(300):
        w = random_world(rng)
        t = random_term(4, VAR_POOL[:3], rng, world_fns(w))
        envs = [random_env(VAR_POOL[:3], rng) for _ in range(4)]
        out = {}
        for k in ("python", "cython"):
            res = []
            for e in envs:
                try:
                    res.append(evaluate_many(t, [e], w, kernel=k)[0])
                except ev.EvalError as err:
                    res.append(type(err))
            out[k] = res
        assert out["python"] == out["cython"], show(t)


def test_evaluate_many_resets_fuel():
    w = add_defun(S("DOWN"), (S("N"),), parse("(if (< 0 n) (down (+ -1 n)) 0)"), EMPTY_WORLD)
    envs = [{S("N"): 200}] * 50
    assert evaluate_many(parse("(down n)"), envs, w, fuel=3000) == [0] * 50
