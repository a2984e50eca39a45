"""Seeded property suites with greedy shrinking of term counterexamples.

Each suite draws ``n`` cases from a ``random.Random`` seeded by
``(seed, suite name)`` and reports the first (shrunk) failure.  The suites
are what ``metakernel selftest`` runs; the test modules call them too.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from . import eval as ev
from .bound_rw import BoundHint, LE, prove_bounds
from .context_rw import context_simplify, parse_context_rule
from .core import (EQUAL, IFF, NIL, NOT, App, Quote, Symbol, Term, Var, parse,
                   read_value, show, show_value, to_list, translate)
from .eval import EvalError, evaluate, eval_alist, sublis_var
from .gen import (VALID_CONTEXT_RULES, VALID_RULES, VAR_POOL, _bit_term, random_defuns,
                  random_env, random_int, random_number, random_scenario, random_term,
                  random_value, random_world, world_fns)
from .linarith import EQ, LE as LIN_LE, LT as LIN_LT, LinearConstraint, refute
from .meta_extract import (Ap, Fncall, Formula, Lemma, RelieveHyp, Rw, RwPlus,
                           Typeset, meta_extract_contextual_fact, meta_extract_global_fact)
from .metafns import defstobj_expand, simplify
from .rewrite import MfcContext, mfc_relieve_hyp, rewrite
from .typeset import classify, type_set_of, typespec_check
from .world import EMPTY_WORLD, RewriteRule, World, add_defun, add_rewrite_rule, meta_extract_formula

Case = object
SKIP = None


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    skipped: int = 0
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} {self.name} ({self.cases} cases, {self.skipped} skipped)"
        if self.counterexample:
            out += f"\n  counterexample: {self.counterexample}"
        return out


# ---------------------------------------------------------------------------
# Shrinking


def _subterm_candidates(t: Term):
    """Smaller variants of ``t``: each argument, then each argument replaced
    by a smaller variant or by a small constant."""
    if type(t) is not App:
        if type(t) is Quote and t.value not in (NIL, 0):
            yield Quote(NIL)
            yield Quote(0)
        return
    yield from t.args
    for i, a in enumerate(t.args):
        for small in (Quote(NIL), Quote(0)):
            if a != small:
                yield App(t.fn, t.args[:i] + (small,) + t.args[i + 1:])
        for c in _subterm_candidates(a):
            yield App(t.fn, t.args[:i] + (c,) + t.args[i + 1:])


def shrink_term(t: Term, fails: Callable[[Term], bool], budget: int = 2000) -> Term:
    """Greedy descent: take the first smaller candidate that still fails,
    until none does or the budget runs out."""
    progress = True
    while progress and budget > 0:
        progress = False
        for c in _subterm_candidates(t):
            budget -= 1
            if budget <= 0:
                break
            try:
                still = fails(c)
            except Exception:
                still = False
            if still:
                t = c
                progress = True
                break
    return t


# ---------------------------------------------------------------------------
# Suite runner


def run_property(name: str, gen: Callable[[random.Random], Case],
                 prop: Callable[[Case], Optional[bool]], n: int, seed: int = 0,
                 shrink: Optional[Callable[[Case, Callable], Case]] = None,
                 describe: Callable[[Case], str] = repr) -> SuiteResult:
    rng = random.Random(f"{seed}/{name}")
    checked = skipped = 0
    for _ in range(n):
        case = gen(rng)
        ok = prop(case)
        if ok is SKIP:
            skipped += 1
            continue
        checked += 1
        if not ok:
            if shrink is not None:
                case = shrink(case, lambda c: prop(c) is False)
            return SuiteResult(name, False, checked, skipped, describe(case))
    return SuiteResult(name, True, checked, skipped)


def _shrink_first(case, fails):
    """Shrink the term in position 0 of a tuple case."""
    t, *rest = case
    small = shrink_term(t, lambda x: fails((x, *rest)))
    return (small, *rest)


def _env_str(env: dict) -> str:
    return "{" + ", ".join(f"{k.name}: {show_value(v)}" for k, v in env.items()) + "}"


def _eval(t, env, w=None):
    try:
        return evaluate(t, env, w)
    except EvalError:
        return SKIP


def _holds(hyps, env, w) -> Optional[bool]:
    for h in hyps:
        v = _eval(h, env, w)
        if v is SKIP:
            return SKIP
        if v is NIL:
            return False
    return True


VARS3 = list(VAR_POOL[:3])

# literals over X, Y, Z that are satisfiable by the value distribution
LITERAL_POOL = tuple(parse(s) for s in (
    "(symbolp x)", "(consp x)", "(integerp y)", "(rationalp y)", "(< y '3)",
    "(< '0 y)", "(not (< y '0))", "(equal z 'a)", "(not (equal x 'nil))",
    "(consp (car x))", "(symbolp (car x))", "(< (binary-+ y z) '5)", "(integerp z)",
    "(not (consp z))", "(equal (len x) '2)",
))


def _random_hyps(rng, k=None) -> tuple:
    k = rng.randint(0, 2) if k is None else k
    return tuple(rng.sample(LITERAL_POOL, k))


# ---------------------------------------------------------------------------
# core / eval


def suite_roundtrip(n=300, seed=0) -> SuiteResult:
    def gen(rng):
        return (random_term(4, VARS3, rng),)

    def prop(case):
        t = case[0]
        back = translate(read_value(show(t)))
        return back == t

    return run_property("printer round-trip", gen, prop, n, seed, _shrink_first,
                        lambda c: show(c[0]))


def _sublis_case(rng):
    keys = rng.sample(VARS3, rng.randint(0, 3))
    alist = tuple((k, random_term(2, VARS3, rng)) for k in keys)
    t = random_term(4, VARS3, rng)
    env = random_env(VARS3, rng)
    return (t, alist, env)


def sublis_law(case) -> Optional[bool]:
    """eval(sublis_var(alist, t), a) = eval(t, bindings of alist's values in a, then a)."""
    t, alist, env = case
    try:
        lhs = evaluate(sublis_var(alist, t), env)
        vals = eval_alist(alist, env)
        env2 = dict(vals)
        for k, v in env.items():
            env2.setdefault(k, v)
        rhs = evaluate(t, env2)
    except EvalError:
        return SKIP
    return lhs == rhs


def suite_sublis_var(n=500, seed=0) -> SuiteResult:
    return run_property("eval-of-sublis-var", _sublis_case, sublis_law, n, seed, _shrink_first,
                        lambda c: f"{show(c[0])} alist={[(k.name, show(v)) for k, v in c[1]]} "
                                  f"env={_env_str(c[2])}")


def suite_ground_folding(n=300, seed=0) -> SuiteResult:
    def gen(rng):
        return (random_term(4, VARS3, rng), random_env(VARS3, rng))

    def prop(case):
        t, env = case
        a, b = _eval(sublis_var({}, t), env), _eval(t, env)
        if a is SKIP or b is SKIP:
            return SKIP
        return a == b

    return run_property("ground folding", gen, prop, n, seed, _shrink_first,
                        lambda c: f"{show(c[0])} env={_env_str(c[1])}")


def suite_kernel_agreement(n=300, seed=0) -> SuiteResult:
    """Both kernels give the same value, or both fail."""
    if ev.KERNEL != "cython":
        return SuiteResult("kernel agreement", True, 0, n, "compiled kernel not built")

    def gen(rng):
        w = random_world(rng)
        return (random_term(4, VARS3, rng, world_fns(w)), w, [random_env(VARS3, rng) for _ in range(5)])

    def run(kernel, t, w, envs):
        out = []
        for e in envs:
            try:
                out.append(ev.evaluate_many(t, [e], w, kernel=kernel)[0])
            except EvalError as err:
                out.append(type(err).__name__)
        return out

    def prop(case):
        t, w, envs = case
        return run("python", t, w, envs) == run("cython", t, w, envs)

    return run_property("kernel agreement", gen, prop, n, seed, _shrink_first,
                        lambda c: show(c[0]))


# ---------------------------------------------------------------------------
# world


def suite_definitional(n=100, seed=0) -> SuiteResult:
    def gen(rng):
        return (random_world(rng), [random_env(VARS3, rng) for _ in range(10)])

    def prop(case):
        w, envs = case
        for fn in w.definitions:
            f = meta_extract_formula(fn, w)
            for e in envs:
                v = _eval(f, e, w)
                if v is NIL:
                    return False
        return True

    return run_property("definitional soundness", gen, prop, n, seed,
                        describe=lambda c: "; ".join(
                            f"{fn.name}: {show(d.body)}" for fn, d in c[0].definitions.items()))


# ---------------------------------------------------------------------------
# typeset


def suite_typeset(n=400, seed=0) -> SuiteResult:
    def gen(rng):
        return (random_term(3, VARS3, rng), _random_hyps(rng), [random_env(VARS3, rng) for _ in range(20)])

    def prop(case):
        t, hyps, envs = case
        ctx = MfcContext(hyps, EMPTY_WORLD)
        ts = type_set_of(t, ctx)
        # adding hypotheses never grows the set
        for h in LITERAL_POOL[:4]:
            if type_set_of(t, ctx.with_hyps(hyps + (h,))) & ~ts:
                return False
        seen = False
        for e in envs:
            if _holds(hyps, e, EMPTY_WORLD) is not True:
                continue
            v = _eval(t, e)
            if v is SKIP:
                continue
            seen = True
            if not typespec_check(ts, v):
                return False
        return True if seen else SKIP

    return run_property("type-set soundness", gen, prop, n, seed, _shrink_first,
                        lambda c: f"{show(c[0])} hyps={[show(h) for h in c[1]]}")


def suite_quote_exact(n=300, seed=0) -> SuiteResult:
    ctx = MfcContext((), EMPTY_WORLD)

    def prop(case):
        v = case[0]
        ts = type_set_of(Quote(v), ctx)
        return ts == classify(v) and bin(ts).count("1") == 1

    return run_property("quote exactness", lambda rng: (random_value(rng),), prop, n, seed,
                        describe=lambda c: show_value(c[0]))


# ---------------------------------------------------------------------------
# linarith

GRID_DEN = 2
GRID_RANGE = range(-12, 13)  # numerators; points k/2 in [-6, 6]


def _scaled(c: LinearConstraint, atoms):
    """Integer row for evaluation at grid points k/GRID_DEN."""
    coeffs = c.left
    den = 1
    for x in list(coeffs.values()) + [c.constant]:
        den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    row = [int(Fraction(coeffs.get(a, 0)) * den) for a in atoms]
    return row, int(c.constant * den * GRID_DEN), c.relation


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def grid_satisfiable(cs, atoms) -> Optional[tuple]:
    """A grid point satisfying every constraint, or None.  Exact integer
    arithmetic on points with coordinates in [-6, 6] at step 1/2."""
    rows = [_scaled(c, atoms) for c in cs]
    for point in product(GRID_RANGE, repeat=len(atoms)):
        for row, k, rel in rows:
            s = k
            for a, x in zip(row, point):
                s += a * x
            if rel == LIN_LT and not s < 0:
                break
            if rel == LIN_LE and not s <= 0:
                break
            if rel == EQ and s != 0:
                break
        else:
            return tuple(Fraction(x, GRID_DEN) for x in point)
    return None


LIN_ATOMS = [Var(Symbol(s)) for s in ("X", "Y", "Z")]


def random_system(rng, n_atoms=None):
    k = rng.randint(1, 3) if n_atoms is None else n_atoms
    atoms = LIN_ATOMS[:k]
    cs = []
    for _ in range(rng.randint(2, 6)):
        coeffs = {a: rng.randint(-5, 5) for a in atoms}
        rel = rng.choice((LIN_LT, LIN_LE, LIN_LE, EQ))
        cs.append(LinearConstraint.make(rel, coeffs, rng.randint(-10, 10)))
    return cs, atoms


def witness_system(rng):
    """Constraints all satisfied at a random half-integer point."""
    k = rng.randint(1, 3)
    atoms = LIN_ATOMS[:k]
    point = {a: Fraction(rng.randint(-8, 8), 2) for a in atoms}
    cs = []
    for _ in range(rng.randint(2, 8)):
        coeffs = {a: rng.randint(-5, 5) for a in atoms}
        val = sum(c * point[a] for a, c in coeffs.items())
        rel = rng.choice((LIN_LT, LIN_LE, EQ))
        slack = Fraction(rng.randint(1 if rel == LIN_LT else 0, 6), 2)
        if rel == EQ:
            slack = 0
        cs.append(LinearConstraint.make(rel, coeffs, -val - slack))
    return cs, atoms, point


def refuted_systems(rng, count: int, max_draws: int = 100_000):
    out = []
    for _ in range(max_draws):
        if len(out) >= count:
            break
        cs, atoms = random_system(rng)
        if refute(cs):
            out.append((cs, atoms))
    return out


def suite_linarith(n=200, seed=0) -> SuiteResult:
    rng = random.Random(f"{seed}/linarith")
    for cs, atoms in refuted_systems(rng, n):
        hit = grid_satisfiable(cs, atoms)
        if hit is not None:
            return SuiteResult("linarith soundness", False, n, 0,
                               f"refuted {[str(c) for c in cs]} but satisfied at {hit}")
        extra, _ = random_system(rng, len(atoms))
        if not refute(cs + extra):
            return SuiteResult("linarith soundness", False, n, 0,
                               f"refutation not monotone: {[str(c) for c in cs]}")
    for _ in range(n):
        cs, atoms, point = witness_system(rng)
        if refute(cs):
            return SuiteResult("linarith soundness", False, n, 0,
                               f"refuted satisfiable {[str(c) for c in cs]} at {point}")
    return SuiteResult("linarith soundness", True, 2 * n)


# ---------------------------------------------------------------------------
# rewrite


def rule_world() -> World:
    w = EMPTY_WORLD
    for text in VALID_RULES:
        v = read_value(text)
        parts = list(v)
        name, hyps, equiv, lhs, rhs = parts[1:6]
        rule = RewriteRule(tuple(translate(h) for h in to_list(hyps)),
                           IFF if equiv is IFF else EQUAL,
                           translate(lhs), translate(rhs), None, name)
        w = add_rewrite_rule(rule, w)
    return w


def _redex_term(rng, depth):
    """Random terms seeded with redexes of the rule library."""
    r = rng.random()
    if depth <= 0 or r < 0.3:
        return random_term(1, VARS3, rng)
    a = _redex_term(rng, depth - 1)
    b = _redex_term(rng, depth - 1)
    s = Symbol
    forms = [
        App(s("CAR"), (App(s("CONS"), (a, b)),)),
        App(s("CDR"), (App(s("CONS"), (a, b)),)),
        App(s("NFIX"), (App(s("NFIX"), (a,)),)),
        App(EQUAL, (a, a)),
        App(NOT, (App(NOT, (a,)),)),
        App(s("LEN"), (App(s("CONS"), (a, b)),)),
        App(s("LOGAND"), (a, App(s("LOGAPP"), (Quote(rng.randint(0, 4)), b, a)))),
        App(s("IF"), (a, b, App(NOT, (b,)))),
        App(s("BINARY-+"), (a, b)),
    ]
    return rng.choice(forms)


def suite_rewrite(n=300, seed=0) -> SuiteResult:
    w = rule_world()

    def gen(rng):
        return (_redex_term(rng, 3), _random_hyps(rng), rng.random() < 0.3,
                [random_env(VARS3, rng) for _ in range(15)])

    def prop(case):
        t, hyps, iff, envs = case
        ctx = MfcContext(hyps, w)
        out = rewrite(t, ctx, IFF if iff else EQUAL)
        seen = False
        for e in envs:
            if _holds(hyps, e, w) is not True:
                continue
            a, b = _eval(t, e, w), _eval(out, e, w)
            if a is SKIP or b is SKIP:
                continue
            seen = True
            same = ((a is NIL) == (b is NIL)) if iff else a == b
            if not same:
                return False
        return True if seen else SKIP

    return run_property("rewrite preservation", gen, prop, n, seed, _shrink_first,
                        lambda c: f"{show(c[0])} hyps={[show(h) for h in c[1]]} iff={c[2]}")


def suite_relieve_hyp(n=300, seed=0) -> SuiteResult:
    w = rule_world()

    def gen(rng):
        hyps = _random_hyps(rng, rng.randint(1, 3))
        target = rng.choice(LITERAL_POOL + hyps + hyps)
        keys = rng.sample(VARS3, rng.randint(0, 2))
        alist = tuple((k, Var(rng.choice(VARS3))) for k in keys)
        return (target, hyps, alist, [random_env(VARS3, rng) for _ in range(20)])

    def prop(case):
        hyp, hyps, alist, envs = case
        ctx = MfcContext(hyps, w)
        if not mfc_relieve_hyp(hyp, alist, NIL, NIL, 0, ctx):
            return SKIP
        inst = sublis_var(alist, hyp)
        for e in envs:
            if _holds(hyps, e, w) is True and _eval(inst, e, w) is NIL:
                return False
        return True

    return run_property("relieve-hyp soundness", gen, prop, n, seed,
                        describe=lambda c: f"{show(c[0])} hyps={[show(h) for h in c[1]]}")


# ---------------------------------------------------------------------------
# meta_extract


def _random_obj(rng, w: World):
    fns = list(w.definitions) + [Symbol("CAR"), Symbol("LEN"), Symbol("NO-SUCH-FN")]
    kind = rng.randrange(9)
    term = random_term(3, VARS3, rng, world_fns(w))
    if kind == 0:
        return Formula(rng.choice(fns + [random_value(rng, 1)]))
    if kind == 1:
        return Lemma(rng.choice(fns), rng.randint(0, 3))
    if kind == 2:
        f = rng.choice(fns)
        return Fncall(f, tuple(random_value(rng, 2) for _ in range(rng.randint(0, 3))))
    if kind == 3:
        return Typeset(term)
    if kind == 4:
        keys = rng.sample(VARS3, rng.randint(0, 2))
        alist = tuple((k, random_term(2, VARS3, rng)) for k in keys)
        return RwPlus(term, alist, NIL, rng.choice((NIL, Symbol("T"))))
    if kind == 5:
        return Rw(_redex_term(rng, 3), NIL, rng.choice((NIL, Symbol("T"))))
    if kind == 6:
        return Ap(rng.choice(LITERAL_POOL + (App(NOT, (rng.choice(LITERAL_POOL),)),)))
    if kind == 7:
        keys = rng.sample(VARS3, rng.randint(0, 2))
        alist = tuple((k, Var(rng.choice(VARS3))) for k in keys)
        return RelieveHyp(rng.choice(LITERAL_POOL), alist)
    return random_value(rng)  # almost always malformed


def suite_facts(n=300, seed=0) -> SuiteResult:
    base = rule_world()

    def gen(rng):
        w = base
        for name, formals, body in random_defuns(rng, rng.randint(0, 2)):
            w = add_defun(name, formals, body, w)
        return (_random_obj(rng, w), w, _random_hyps(rng),
                [random_env(VARS3, rng) for _ in range(15)])

    def prop(case):
        obj, w, hyps, envs = case
        kind_global = isinstance(obj, (Formula, Lemma, Fncall))
        ctx = MfcContext(hyps, w)
        if kind_global:
            fact = meta_extract_global_fact(obj, w)
            # kind separation: a global request asked contextually is 'T
            if meta_extract_contextual_fact(obj, ctx) != Quote(Symbol("T")):
                return False
        else:
            fact = meta_extract_contextual_fact(obj, ctx)
        for e in envs:
            if not kind_global and _holds(hyps, e, w) is not True:
                continue
            if _eval(fact, e, w) is NIL:
                return False
        return True

    return run_property("fact soundness", gen, prop, n, seed,
                        describe=lambda c: f"{c[0]!r} hyps={[show(h) for h in c[2]]}")


# ---------------------------------------------------------------------------
# metafns


def _metafn_case(rng):
    fields = [Symbol(f"R{i}") for i in rng.sample(range(8), rng.randint(2, 5))]
    st = Symbol(rng.choice(("ST", "MEM", "S")))
    w = defstobj_expand(st, fields, EMPTY_WORLD)
    t = Var(st)
    for _ in range(rng.randint(0, 5)):
        f = rng.choice(fields)
        val = Quote(random_value(rng, 1)) if rng.random() < 0.6 else Var(rng.choice(VARS3))
        t = App(Symbol("UPDATE-" + f.name), (val, t))
    t = App(rng.choice(fields), (t,))
    hyps: tuple = ()
    if rng.random() < 0.5:
        idx = rng.choice((Var(Symbol("X")), Quote(rng.choice((NIL, Symbol("A"), 1))),
                          App(Symbol("CAR"), (Var(Symbol("X")),))))
        if rng.random() < 0.5:
            hyps = (App(Symbol("SYMBOLP"), (idx,)),)
        t = App(Symbol("NTH"), (idx, App(Symbol("CONS"), (t, Var(Symbol("Y"))))))
    return (t, w, hyps, [random_env(VARS3 + [st], rng) for _ in range(15)])


def suite_metafns(n=300, seed=0) -> SuiteResult:
    def prop(case):
        t, w, hyps, envs = case
        out = simplify(t, MfcContext(hyps, w))
        for e in envs:
            if _holds(hyps, e, w) is not True:
                continue
            a, b = _eval(t, e, w), _eval(out, e, w)
            if a is not SKIP and b is not SKIP and a != b:
                return False
        return True

    return run_property("metafunction soundness", _metafn_case, prop, n, seed,
                        describe=lambda c: f"{show(c[0])} hyps={[show(h) for h in c[2]]}")


# ---------------------------------------------------------------------------
# bound_rw


def _bound_case(rng):
    names = [Symbol(s) for s in ("A", "B", "C")[:rng.randint(1, 3)]]
    hyps, hints, ub = [], [], {}
    for v in names:
        lo = rng.randint(-3, 2)
        hi = lo + rng.randint(0, 8)
        ub[v] = (lo, hi)
        hyps += [App(Symbol("RATIONALP"), (Var(v),)),
                 App(NOT, (App(Symbol("<"), (Var(v), Quote(lo))),)),
                 App(NOT, (App(Symbol("<"), (Quote(hi), Var(v))),))]
        hints.append(BoundHint(LE, Var(v), Quote(hi)))
        hints.append(BoundHint(LE, Quote(lo), Var(v)))
    rng.shuffle(hints)
    t = _poly(rng, names, 2)
    k = Quote(rng.randint(-20, 60))
    goal = (App(NOT, (App(Symbol("<"), (k, t)),)) if rng.random() < 0.7
            else App(Symbol("<"), (t, k)))
    return (goal, tuple(hyps), tuple(hints), names, ub)


def _poly(rng, names, depth):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.8:
            return Var(rng.choice(names))
        return Quote(rng.randint(-3, 5))
    op = rng.choice(("BINARY-+", "BINARY-*", "UNARY--", "BINARY-+"))
    if op == "UNARY--":
        return App(Symbol(op), (_poly(rng, names, depth - 1),))
    return App(Symbol(op), (_poly(rng, names, depth - 1), _poly(rng, names, depth - 1)))


def suite_bounds(n=200, seed=0) -> SuiteResult:
    def prop(case):
        goal, hyps, hints, names, ub = case
        ctx = MfcContext(hyps, EMPTY_WORLD)
        res = prove_bounds(goal, list(hints), ctx)
        # with no hints the replacement is the identity
        rng = random.Random(show(goal))
        if not res.proved:
            return SKIP
        for _ in range(100):
            env = {v: random_number(rng, ub[v][0], ub[v][1]) for v in names}
            if _holds(hyps, env, EMPTY_WORLD) is not True:
                continue
            if _eval(goal, env) is NIL:
                return False
        return True

    return run_property("bound soundness", _bound_case, prop, n, seed,
                        describe=lambda c: f"{show(c[0])} hyps={[show(h) for h in c[1]]}")


# ---------------------------------------------------------------------------
# context_rw


def context_rules():
    out = []
    for text in VALID_CONTEXT_RULES:
        parts = list(read_value(text))
        out.append(parse_context_rule([translate(h) for h in to_list(parts[1])],
                                      translate(parts[2]), translate(parts[3])))
    return out


def suite_context(n=200, seed=0) -> SuiteResult:
    w = rule_world()
    rules = context_rules()
    bvars = [Symbol(s) for s in "ABCD"]

    def gen(rng):
        t = _bit_term(rng, 4, bvars)
        if rng.random() < 0.5:
            t = App(Symbol("LOGBITP"), (Quote(rng.randint(0, 6)), t))
        envs = [({v: random_int(rng) for v in bvars} if i % 2 else random_env(bvars, rng))
                for i in range(20)]
        return (t, envs)

    def prop(case):
        t, envs = case
        out = context_simplify(t, rules, MfcContext((), w))
        for e in envs:
            a, b = _eval(t, e, w), _eval(out, e, w)
            if a is not SKIP and b is not SKIP and a != b:
                return False
        return True

    return run_property("context rewriting preservation", gen, prop, n, seed, _shrink_first,
                        lambda c: show(c[0]))


# ---------------------------------------------------------------------------
# end to end


def suite_scenarios(n=50, seed=0, samples=200) -> SuiteResult:
    from .events import RunOptions, run_text

    def gen(rng):
        return (random_scenario(rng.randrange(2**32)),)

    def prop(case):
        rep = run_text(case[0], RunOptions(samples=samples, seed=seed))
        return not rep.violations

    return run_property("random scenarios", gen, prop, n, seed, describe=lambda c: c[0])


SUITES = {
    "roundtrip": suite_roundtrip,
    "sublis-var": suite_sublis_var,
    "ground-folding": suite_ground_folding,
    "kernel-agreement": suite_kernel_agreement,
    "definitional": suite_definitional,
    "typeset": suite_typeset,
    "quote-exact": suite_quote_exact,
    "linarith": suite_linarith,
    "rewrite": suite_rewrite,
    "relieve-hyp": suite_relieve_hyp,
    "facts": suite_facts,
    "metafns": suite_metafns,
    "bounds": suite_bounds,
    "context": suite_context,
    "scenarios": suite_scenarios,
}


def run_all(seed: int = 0, scale: float = 1.0, only=None) -> list[SuiteResult]:
    out = []
    for name, fn in SUITES.items():
        if only and name not in only:
            continue
        default = fn.__defaults__[0]
        out.append(fn(max(1, int(default * scale)), seed))
    return out
