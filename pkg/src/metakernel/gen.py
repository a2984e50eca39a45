"""Seeded random generators for values, terms, environments, worlds and
whole event scenarios.

Every generator takes either a seed or a ``random.Random``; equal seeds give
equal outputs.

Value distribution (``random_value``): roughly 30% small integers in
[-8, 8], 8% large integers around 2**40, 8% ratios, 16% symbols (NIL, T,
plain names and one keyword), 4% strings, 4% characters and 30% conses
(mostly proper lists of length 0-4, sometimes dotted).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (NIL, T, App, Char, Cons, Quote, Symbol, Term, Var, from_list,
                   mknum, show)
from .prims import PRIMITIVE_ARITY
from .world import EMPTY_WORLD, World, add_defun

Seed = Union[int, str, random.Random, None]

SYMBOL_POOL = tuple(Symbol(s) for s in ("A", "B", "C", "FOO", "BAR", ":KEY"))
VAR_POOL = tuple(Symbol(s) for s in ("X", "Y", "Z", "U", "V", "W"))

# primitives eligible for random terms; IF is handled separately
TERM_PRIMS = tuple(sorted(
    (f for f in PRIMITIVE_ARITY if f.name not in ("IF", "TYPESPEC-CHECK")),
    key=lambda s: s.name))


def rng_of(seed: Seed) -> random.Random:
    if isinstance(seed, random.Random):
        return seed
    return random.Random(seed)


def random_value(seed: Seed = None, depth: int = 3):
    rng = rng_of(seed)
    r = rng.random()
    if r < 0.30:
        return rng.randint(-8, 8)
    if r < 0.38:
        return rng.choice((1, -1)) * rng.randint(2**39, 2**41)
    if r < 0.46:
        return mknum(Fraction(rng.randint(-20, 20), rng.randint(2, 9)))
    if r < 0.52:
        return rng.choice((NIL, T))
    if r < 0.62:
        return rng.choice(SYMBOL_POOL)
    if r < 0.66:
        return "".join(rng.choice("ab c") for _ in range(rng.randint(0, 3)))
    if r < 0.70:
        return Char(rng.choice("az9 \n"))
    if depth <= 0:
        return NIL
    items = [random_value(rng, depth - 1) for _ in range(rng.randint(0, 4))]
    if items and rng.random() < 0.15:
        return Cons(items[0], random_value(rng, 0))
    return from_list(items)


def random_number(rng: random.Random, lo: int = -40, hi: int = 40):
    if rng.random() < 0.8:
        return rng.randint(lo, hi)
    return mknum(Fraction(rng.randint(lo * 4, hi * 4), 4))


def random_env(vars: Sequence[Symbol], seed: Seed = None, profile: str = "any",
               bounds: Optional[tuple] = None) -> dict:
    """Bind each variable.  ``profile`` is ``any`` (the value distribution),
    ``int`` (integers around 2**40 and small), or ``num`` (numbers in
    ``bounds``, default [-40, 40])."""
    rng = rng_of(seed)
    env = {}
    for v in vars:
        if profile == "int":
            env[v] = random_int(rng)
        elif profile == "num":
            lo, hi = bounds or (-40, 40)
            env[v] = random_number(rng, lo, hi)
        else:
            env[v] = random_value(rng)
    return env


def random_int(rng: random.Random) -> int:
    r = rng.random()
    if r < 0.5:
        return rng.randint(-2**40, 2**40)
    if r < 0.8:
        return rng.randint(-64, 64)
    return rng.randint(0, 2**64)


def random_term(depth: int, vars: Sequence[Symbol], seed: Seed = None,
                fns: Sequence[tuple] = ()) -> Term:
    """Terms over the primitive signature plus ``fns`` ((name, arity) pairs).
    Leaves are variables (when any) or quoted values."""
    rng = rng_of(seed)
    if depth <= 0 or rng.random() < 0.25:
        if vars and rng.random() < 0.6:
            return Var(rng.choice(list(vars)))
        return Quote(random_value(rng, 2))
    r = rng.random()
    if r < 0.12:
        return App(Symbol("IF"), tuple(random_term(depth - 1, vars, rng, fns) for _ in range(3)))
    if fns and r < 0.3:
        name, arity = rng.choice(list(fns))
    else:
        name = rng.choice(TERM_PRIMS)
        arity = PRIMITIVE_ARITY[name]
    return App(name, tuple(random_term(depth - 1, vars, rng, fns) for _ in range(arity)))


def _recursive_body(name: Symbol, x: Symbol, rng: random.Random, fns) -> Term:
    """(IF (CONSP x) (g (CAR x) (name (CDR x))) base): structural recursion."""
    rec = App(name, (App(Symbol("CDR"), (Var(x),)),))
    head = App(Symbol("CAR"), (Var(x),))
    combine = rng.choice(("CONS", "BINARY-+", "LOGIOR", "IF"))
    if combine == "IF":
        step = App(Symbol("IF"), (head, rec, Quote(rng.randint(0, 3))))
    else:
        step = App(Symbol(combine), (head, rec))
    base = random_term(1, [x], rng, fns)
    return App(Symbol("IF"), (App(Symbol("CONSP"), (Var(x),)), step, base))


def random_defuns(seed: Seed = None, count: Optional[int] = None) -> list:
    """0-3 definitions (name, formals, body); at most one is recursive."""
    rng = rng_of(seed)
    n = rng.randint(0, 3) if count is None else count
    out: list = []
    fns: list = []
    for i in range(n):
        name = Symbol(f"F{i}")
        if rng.random() < 0.3:
            x = Symbol("X")
            body = _recursive_body(name, x, rng, fns)
            formals = (x,)
        else:
            formals = tuple(VAR_POOL[:rng.randint(1, 3)])
            body = random_term(3, formals, rng, fns)
        out.append((name, formals, body))
        fns.append((name, len(formals)))
    return out


def random_world(seed: Seed = None) -> World:
    w = EMPTY_WORLD
    for name, formals, body in random_defuns(seed):
        w = add_defun(name, formals, body, w)
    return w


def world_fns(w: World) -> list:
    return [(f, len(d.formals)) for f, d in w.definitions.items()]


# ---------------------------------------------------------------------------
# Whole scenarios, as event text

# rewrite rules that hold under the evaluator's completion semantics
VALID_RULES = (
    "(defrule car-cons () equal (car (cons a b)) a)",
    "(defrule cdr-cons () equal (cdr (cons a b)) b)",
    "(defrule nfix-nfix () equal (nfix (nfix x)) (nfix x))",
    "(defrule equal-same () equal (equal x x) 't)",
    "(defrule not-not () iff (not (not x)) x)",
    "(defrule len-cons () equal (len (cons a b)) (binary-+ '1 (len b)))",
    "(defrule logand-logapp ((equal (logtail m n) '0)) equal"
    " (logand n (logapp m a b)) (logand n a))",
)

VALID_CONTEXT_RULES = (
    "(defcontext () (logbitp n (logand (ash '1 (nfix n)) m)) (logbitp n m))",
    "(defcontext () (logand n (logior a (logand n b))) (logand n (logior a b)))",
    "(defcontext () (logand n (logand (logand n a) b)) (logand n (logand a b)))",
)


def _bit_term(rng: random.Random, depth: int, vars) -> Term:
    """Nests of LOGAND/LOGIOR/LOGAPP over variables and small constants."""
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.75:
            return Var(rng.choice(vars))
        return Quote(rng.randint(-4, 40))
    op = rng.choice(("LOGAND", "LOGIOR", "LOGIOR", "LOGAPP"))
    if op == "LOGAPP":
        return App(Symbol(op), (Quote(rng.randint(0, 8)), _bit_term(rng, depth - 1, vars),
                                _bit_term(rng, depth - 1, vars)))
    return App(Symbol(op), (_bit_term(rng, depth - 1, vars), _bit_term(rng, depth - 1, vars)))


def _rw_nest(rng: random.Random, fields, base: str, depth: int) -> str:
    t = base
    for _ in range(depth):
        f = rng.choice(fields)
        v = show(Quote(random_value(rng, 1))) if rng.random() < 0.7 else rng.choice("UVW")
        t = f"(UPDATE-{f} {v} {t})"
    return f"({rng.choice(fields)} {t})"


def random_scenario(seed: Seed = None) -> str:
    """An event file exercising every event kind with random content."""
    rng = rng_of(seed)
    out: list[str] = []
    defs = random_defuns(rng)
    for name, formals, body in defs:
        out.append(f"(defun {name.name} ({' '.join(f.name for f in formals)}) {show(body)})")
    fns = [(n, len(f)) for n, f, _ in defs]
    for r in rng.sample(VALID_RULES, rng.randint(0, 3)):
        out.append(r)

    fields = [f"S{i}" for i in rng.sample(range(10), rng.randint(2, 6))]
    st = rng.choice(("ST", "MACHINE", "S"))
    out.append(f"(defstobj {st} {' '.join(fields)})")
    for _ in range(rng.randint(1, 3)):
        out.append(f"(simplify {_rw_nest(rng, fields, st, rng.randint(1, 6))})")

    out.append("(defstub g (x) t)")
    idx = rng.choice(("(g x)", "k", show(random_term(2, [Symbol("X")], rng, fns))))
    hyps = f" :hyps ((symbolp {idx}))" if rng.random() < 0.6 else ""
    out.append(f"(simplify (nth {idx} y){hyps})")
    vars = list(VAR_POOL[:3])
    out.append(f"(simplify {show(random_term(3, vars, rng, fns))})")

    for r in VALID_CONTEXT_RULES[:rng.randint(0, 3)]:
        out.append(r)
    bvars = [Symbol(s) for s in "ABCD"]
    t = _bit_term(rng, 3, bvars)
    if rng.random() < 0.5:
        t = App(Symbol("LOGBITP"), (Quote(rng.randint(0, 6)), t))
    out.append(f"(context-simplify {show(t)})")

    # bounds: 0 <= x_i <= k_i, goal sum of products against a slack bound
    ks = [rng.randint(1, 12) for _ in range(2)]
    hyp = " ".join(f"(rationalp x{i}) (<= 0 x{i}) (<= x{i} {k})" for i, k in enumerate(ks))
    slack = rng.choice((0, 0, 1, -1))
    goal = f"(<= (+ (* x0 x1) x0) {ks[0] * ks[1] + ks[0] + slack})"
    hints = " ".join(f"(<= x{i} {k})" for i, k in enumerate(ks))
    out.append(f"(prove-bounds (implies (and {hyp}) {goal}) ({hints}))")
    return "\n".join(out) + "\n"
