import pytest

from metakernel.core import Symbol, parse, show
from metakernel.gen import random_world, world_fns
from metakernel.world import (EMPTY_WORLD, EQUAL, RewriteRule, WorldError, add_defthm,
                              add_defun, add_rewrite_rule, formals, meta_extract_formula,
                              nth_lemma, override_formula, rewrite_rule_term)

S = Symbol


def test_defun_equation(atom_world):
    assert show(meta_extract_formula(S("ATOM"), atom_world)) == "(EQUAL (ATOM X) (NOT (CONSP X)))"
    assert meta_extract_formula(S("ATOM"), atom_world) == parse("(equal (atom x) (not (consp x)))")


def test_unknown_name_gives_trivial_term(atom_world):
    assert show(meta_extract_formula(S("FROB"), atom_world)) == "'T"
    assert show(meta_extract_formula(7, atom_world)) == "'T"


def test_stobj_field_equation(stobj_world):
    assert show(meta_extract_formula(S("FLD3"), stobj_world)) == "(EQUAL (FLD3 ST) (NTH '2 ST))"


def test_theorem_formula():
    w = add_defthm(S("THM"), parse("(equal (car (cons a b)) a)"), EMPTY_WORLD)
    assert meta_extract_formula(S("THM"), w) == parse("(equal (car (cons a b)) a)")


def test_rewrite_rule_term():
    r = RewriteRule((), EQUAL, parse("(car (cons x y))"), parse("x"))
    assert show(rewrite_rule_term(r)) == "(EQUAL (CAR (CONS X Y)) X)"
    r = RewriteRule((parse("(consp x)"),), EQUAL, parse("(car (cons x y))"), parse("x"))
    assert show(rewrite_rule_term(r)) == "(IMPLIES (CONSP X) (EQUAL (CAR (CONS X Y)) X))"


def test_nth_lemma(car_cons_world):
    assert show(nth_lemma(S("CAR"), 0, car_cons_world)) == "(EQUAL (CAR (CONS X Y)) X)"
    assert show(nth_lemma(S("CAR"), 7, car_cons_world)) == "'T"
    assert show(nth_lemma(S("UNDEFINED-FN"), 0, car_cons_world)) == "'T"
    assert show(nth_lemma(S("CAR"), -1, car_cons_world)) == "'T"


def test_rule_rhs_var_must_occur_in_lhs():
    with pytest.raises(WorldError):
        add_rewrite_rule(RewriteRule((), EQUAL, parse("(car x)"), parse("y")), EMPTY_WORLD)


def test_duplicate_defun(atom_world):
    with pytest.raises(WorldError):
        add_defun(S("ATOM"), (S("X"),), parse("(not (consp x))"), atom_world)


def test_defun_rejects_bad_bodies():
    with pytest.raises(WorldError):
        add_defun(S("F"), (S("X"),), parse("y"), EMPTY_WORLD)
    with pytest.raises(WorldError):
        add_defun(S("F"), (S("X"),), parse("(g x)"), EMPTY_WORLD)
    with pytest.raises(WorldError):
        add_defun(S("CAR"), (S("X"),), parse("x"), EMPTY_WORLD)
    with pytest.raises(WorldError):
        add_defun(S("F"), (S("X"), S("X")), parse("x"), EMPTY_WORLD)


def test_formals(atom_world, stobj_world):
    assert formals(S("ATOM"), atom_world) == (S("X"),)
    assert formals(S("FLD3"), stobj_world) == (S("ST"),)
    assert formals(S("UPDATE-FLD3"), stobj_world) == (S("V"), S("ST"))
    assert formals(S("UPDATE-FLD7"), stobj_world) == (S("V"), S("ST"))


def test_worlds_are_persistent(atom_world):
    w2 = add_defun(S("G"), (S("X"),), parse("(atom x)"), atom_world)
    assert S("G") not in atom_world.definitions
    assert S("G") in w2.definitions


def test_stub_formula_is_trivial():
    w = add_defun(S("FOO"), (S("X"),), parse("(car x)"), EMPTY_WORLD, stub=True)
    assert show(meta_extract_formula(S("FOO"), w)) == "'T"
    assert w.is_executable(S("FOO"))


def test_override_is_reported(atom_world):
    bad = override_formula(S("ATOM"), parse("(equal (atom x) (consp x))"), atom_world)
    assert show(meta_extract_formula(S("ATOM"), bad)) == "(EQUAL (ATOM X) (CONSP X))"
    assert bad != atom_world


def test_random_worlds_are_well_formed():
    for seed in range(50):
        w = random_world(seed)
        for f, arity in world_fns(w):
            assert formals(f, w) is not None and len(formals(f, w)) == arity
        assert random_world(seed) == w
