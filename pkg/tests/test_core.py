from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from metakernel.core import (NIL, QUOTE, App, Char, Cons, ParseError, Quote, Symbol,
                             TermError, Var, free_vars, from_list, parse, read_all,
                             read_value, replace_at, show, show_value, subterm_at,
                             term_to_value, to_list, translate, value_to_term)
from metakernel.gen import VAR_POOL, random_term, random_value

S = Symbol


def test_parse_application():
    assert parse("(nth n x)") == App(S("NTH"), (Var(S("N")), Var(S("X"))))


def test_parse_quote_abbreviation():
    assert parse("'3") == Quote(3)
    assert parse("(quote 3)") == Quote(3)


def test_parse_atom_equation():
    t = parse("(equal (atom x) (not (consp x)))")
    assert show(t) == "(EQUAL (ATOM X) (NOT (CONSP X)))"


def test_self_quoting_atoms():
    assert parse("7") == Quote(7)
    assert parse("nil") == Quote(NIL)
    assert parse("t") == Quote(S("T"))
    assert parse(":key") == Quote(S(":KEY"))
    assert parse('"ab"') == Quote("ab")


def test_print():
    assert show(App(S("CAR"), (Var(S("X")),))) == "(CAR X)"
    assert show(Quote(S("FOO"))) == "'FOO"
    assert show(Quote(Fraction(-2, 4))) == "'-1/2"


def test_symbols_are_interned_and_upcased():
    assert S("foo") is S("FOO")


def test_ratio_normalized():
    assert read_value("4/2") == 2
    assert read_value("-6/4") == Fraction(-3, 2)


def test_reader_round_trip_values():
    for text in ("(A . B)", "(1 2 . 3)", '("a\\"b" #\\Space #\\x)', "(NIL T :K)", "()"):
        v = read_value(text)
        assert read_value(show_value(v)) == v


def test_comments_are_skipped():
    vs = read_all("; line\n(a) #| block\n comment |# (b)")
    assert [show_value(v) for v in vs] == ["(A)", "(B)"]


@pytest.mark.parametrize("text", ["(a", ")", "'", "(a . )", "#|", '"abc'])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as e:
        read_all(text)
    assert e.value.line >= 1 and e.value.col >= 1


def test_no_quote_in_function_position():
    with pytest.raises((TermError, ValueError)):
        App(QUOTE, (Quote(1),))
    with pytest.raises(TermError):
        parse("(quote 1 2)")


def test_macros_expand_to_binary_forms():
    assert show(parse("(+ a b c)")) == "(BINARY-+ A (BINARY-+ B C))"
    assert show(parse("(<= a b)")) == "(NOT (< B A))"
    assert show(parse("(logand a b c)")) == "(LOGAND A (LOGAND B C))"
    assert show(parse("(and p q)")) == "(IF P Q 'NIL)"
    assert show(parse("(list 1 x)")) == "(CONS '1 (CONS X 'NIL))"


def test_free_vars_order():
    assert free_vars(parse("(nth n x)")) == [S("N"), S("X")]
    assert free_vars(parse("'3")) == []
    assert free_vars(parse("(f x (g x y))")) == [S("X"), S("Y")]


def test_paths():
    t = parse("(f a (g b c))")
    assert subterm_at(t, (1, 1)) == Var(S("C"))
    assert show(replace_at(t, (1, 0), Quote(1))) == "(F A (G '1 C))"


def test_value_term_conversion():
    v = read_value("(f 'x y)")
    t = value_to_term(v)
    assert term_to_value(t) == v
    with pytest.raises(TermError):
        value_to_term(read_value("((lambda (x) x) 1)"))


def test_cons_equality_is_structural_and_deep():
    deep = NIL
    for i in range(50_000):
        deep = Cons(i, deep)
    other = from_list(list(reversed(range(50_000))))
    assert deep == other
    assert hash(deep) == hash(other)
    assert to_list(from_list([1, 2]))[1] == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_random_terms(seed):
    t = random_term(4, VAR_POOL[:3], seed)
    assert translate(read_value(show(t))) == t


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_round_trip_random_values(seed):
    v = random_value(seed)
    assert read_value(show_value(v)) == v


def test_round_trip_thousand_terms():
    for seed in range(1000):
        t = random_term(4, VAR_POOL[:3], seed)
        assert parse(show(t)) == t


def test_char_and_string_printing():
    assert show_value(Char(" ")) == "#\\Space"
    assert show_value('a"b') == '"a\\"b"'
