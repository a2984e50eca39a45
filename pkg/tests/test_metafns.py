from metakernel.core import App, Symbol, Var, from_list, parse, read_value, show
from metakernel.meta_extract import Formula, ledger_check, recording
from metakernel.metafns import (Metafunction, defstobj_expand, fn_nth_index,
                                fn_update_nth_index, meta_extract_alist, nth_symbolp_metafn,
                                nth_update_nth_metafn, simplify)
from metakernel.rewrite import MfcContext
from metakernel.world import EMPTY_WORLD, add_defun, meta_extract_formula

S = Symbol

TEST1 = ("(fld3 (update-fld1 '1 (update-fld2 '2 (update-fld3 '3 (update-fld4 '4"
         " (update-fld3 '5 (update-fld6 '6 st)))))))")


def ctx(w, *hyps):
    return MfcContext(tuple(parse(h) for h in hyps), w)


def foo_world():
    return add_defun(S("FOO"), (S("X"),), parse("(car x)"), EMPTY_WORLD, stub=True)


def test_nth_symbolp():
    w = foo_world()
    t = parse("(nth (foo x) y)")
    assert simplify(t, ctx(w, "(symbolp (foo x))")) == parse("(car y)")
    assert simplify(t, ctx(w)) == t
    assert nth_symbolp_metafn(parse("(nth '0 y)"), ctx(w), w) == parse("(nth '0 y)")


def test_nth_symbolp_logs_one_contextual_fact():
    w = foo_world()
    with recording() as ledger:
        simplify(parse("(nth (foo x) y)"), ctx(w, "(symbolp (foo x))"))
    assert len(ledger) == 1
    assert ledger.obligations[0].kind == "CONTEXTUAL"


def test_no_trigger_unchanged(stobj_world):
    t = parse("(binary-+ (car x) (cons y '2))")
    assert simplify(t, ctx(stobj_world)) == t


def test_flip_flop_stops_at_pass_cap():
    f, g = S("F"), S("G")
    flip = Metafunction(S("FLIP"), frozenset({f}), lambda t, c, w: App(g, t.args))
    flop = Metafunction(S("FLOP"), frozenset({g}), lambda t, c, w: App(f, t.args))
    seen = []
    c = MfcContext((), EMPTY_WORLD, lambda name, a, b: seen.append(name))
    out = simplify(parse("(f x)") if False else App(f, (Var(S("X")),)), c, [flip, flop], cap=7)
    assert len(seen) == 7
    assert out == App(g, (Var(S("X")),))


def test_index_recognizers(atom_world, stobj_world):
    assert fn_nth_index(S("FLD3"), meta_extract_formula(S("FLD3"), stobj_world)) == 2
    assert fn_update_nth_index(S("UPDATE-FLD3"),
                               meta_extract_formula(S("UPDATE-FLD3"), stobj_world)) == 2
    atom_eq = meta_extract_formula(S("ATOM"), atom_world)
    assert fn_nth_index(S("ATOM"), atom_eq) is None
    assert fn_update_nth_index(S("ATOM"), atom_eq) is None


def test_read_over_write(stobj_world):
    c = ctx(stobj_world)
    assert nth_update_nth_metafn(parse("(fld3 (update-fld3 '5 st))"), c, stobj_world) == parse("'5")
    assert nth_update_nth_metafn(parse("(fld3 (update-fld1 '1 st))"), c, stobj_world) == \
        parse("(fld3 st)")


def test_test1_nest(stobj_world):
    with recording() as ledger:
        out = simplify(parse(TEST1), ctx(stobj_world))
    assert out == parse("'3")
    obls = ledger.obligations
    assert len(obls) == 9
    assert all(type(o.parsed) is Formula for o in obls)
    envs = [{S("ST"): from_list(list(range(i, i + 20)))} for i in range(20)]
    assert ledger_check(ledger, envs, stobj_world).ok


def test_triggers_cover_every_reader(stobj_world):
    trig = stobj_world.meta_triggers[S("NTH-UPDATE-NTH-META-FN")]
    assert {S(f"FLD{i}") for i in range(1, 21)} <= trig


def test_stobj_formals(stobj_world):
    assert show(meta_extract_formula(S("UPDATE-FLD7"), stobj_world)) == \
        "(EQUAL (UPDATE-FLD7 V ST) (UPDATE-NTH '6 V ST))"


def test_meta_extract_alist(stobj_world):
    st = read_value("(10 20 30)")
    assert meta_extract_alist(parse("(fld3 st)"), {S("ST"): st}, stobj_world) == {S("ST"): st}
    st = read_value("(0 0)")
    assert meta_extract_alist(parse("(update-fld1 '1 st)"), {S("ST"): st}, stobj_world) == \
        {S("V"): 1, S("ST"): st}


def test_renamed_permuted_stobj():
    names = ["PC", "ACC", "FLAGS", "SP", "IR", "MAR"]
    w = defstobj_expand(S("MACHINE"), [S(n) for n in names], EMPTY_WORLD)
    t = parse("(flags (update-pc '1 (update-acc '2 (update-flags '3 (update-sp '4"
              " (update-flags '5 (update-mar '6 machine)))))))")
    assert simplify(t, ctx(w)) == parse("'3")
    t = parse("(ir (update-pc '1 (update-acc '2 machine)))")
    assert simplify(t, ctx(w)) == parse("(ir machine)")


def test_reader_without_write_is_unchanged(stobj_world):
    t = parse("(fld3 (cons a st))")
    assert simplify(t, ctx(stobj_world)) == t
