"""Event-file runner.

An event file is a sequence of s-expressions processed in order against an
evolving world.  After the run every logged fact, every simplification and
every user-asserted rule is checked by evaluation over seeded samples.
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional

from .bound_rw import hint_from_term, prove_bounds
from .context_rw import ContextRuleError, context_simplify, parse_context_rule
from .core import (EQUAL, IF, IFF, IMPLIES, NIL, QT, App, Cons,
                   Quote, Symbol, Term, TermError, Var, free_vars, from_list,
                   is_true_list, read_all, show, show_value, to_list, translate)
from .eval import EvalError, evaluate
from .gen import random_env
from .meta_extract import (CONTEXTUAL, Ledger, LedgerReport, Obligation,
                           fact_vars, recording)
from .metafns import defstobj_expand, simplify
from .rewrite import MfcContext, equiv_symbol
from .world import (EMPTY_WORLD, RewriteRule, World, WorldError, add_context_rule,
                    add_defthm, add_defun, add_rewrite_rule, check_term, conjoin,
                    override_formula, rewrite_rule_term)

DEFAULT_SAMPLES = 1000
# contextual checks draw at most this many candidates per wanted sample
ATTEMPT_FACTOR = 10


class EventError(Exception):
    """A semantic error in an event; names the offending event."""

    def __init__(self, index: int, event: str, msg: str):
        super().__init__(f"event {index} {event}: {msg}")
        self.index = index
        self.event = event
        self.msg = msg


@dataclass
class RunOptions:
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    trace: bool = False
    out: Optional[Callable[[str], None]] = None


@dataclass(frozen=True)
class Simplification:
    event: str
    input: Term
    output: Term
    hyps: tuple = ()
    equiv: Symbol = EQUAL


@dataclass(frozen=True)
class Claim:
    """A user-asserted formula (theorem, rewrite rule or context rule)."""

    label: str
    formula: Term


@dataclass
class CheckFailure:
    what: str
    env: dict

    def line(self) -> str:
        env = from_list([Cons(k, v) for k, v in self.env.items()])
        return f"(VIOLATION {self.what} {show_value(env)})"


@dataclass
class RunReport:
    seed: int
    samples: int
    events_processed: int = 0
    lines: list = field(default_factory=list)
    simplifications: list = field(default_factory=list)
    claims: list = field(default_factory=list)
    ledger: Optional[LedgerReport] = None
    simplification_failures: list = field(default_factory=list)
    claim_failures: list = field(default_factory=list)
    unproved: int = 0
    property_suites: dict = field(default_factory=dict)

    @property
    def obligations(self) -> int:
        return len(self.ledger.results) if self.ledger else 0

    @property
    def violations(self) -> list[str]:
        out = []
        if self.ledger:
            out += [r.sexpr() for r in self.ledger.violations]
        out += [f.line() for f in self.simplification_failures]
        out += [f.line() for f in self.claim_failures]
        out += [f"(SUITE-FAILED {n})" for n, s in sorted(self.property_suites.items())
                if not s.passed]
        return out

    @property
    def exit_code(self) -> int:
        if self.violations:
            return 1
        return 3 if self.unproved else 0

    def summary(self) -> list[str]:
        res = self.ledger.results if self.ledger else []
        vac = sum(1 for r in res if r.status == "VACUOUS")
        bad = sum(1 for r in res if r.status == "VIOLATED")
        out = [
            f"events: {self.events_processed}",
            f"obligations: {len(res)} ({len(res) - vac - bad} ok, {vac} vacuous, {bad} violated)",
            f"simplifications: {len(self.simplifications)} ({len(self.simplification_failures)} unsound)",
            f"claims: {len(self.claims)} ({len(self.claim_failures)} false)",
            f"violations: {len(self.violations)}",
        ]
        out += self.violations
        return out

    def text(self) -> str:
        head = [f"seed: {self.seed}", f"samples: {self.samples}"]
        body = list(self.lines)
        obl = self.ledger.lines() if self.ledger else []
        return "\n".join(head + body + obl + self.summary()) + "\n"


# ---------------------------------------------------------------------------
# Stubs


def _stub_templates(formals: tuple) -> list:
    s = Symbol
    if not formals:
        return [Quote(v) for v in (NIL, s("A"), 0, from_list([s("B")]))]
    x = Var(formals[0])
    y = Var(formals[-1])
    return [
        App(s("CAR"), (x,)),
        App(IF, (App(s("CONSP"), (x,)), App(s("CAR"), (x,)), y)),
        App(s("CDR"), (x,)),
        App(IF, (App(s("INTEGERP"), (x,)), App(s("BINARY-+"), (Quote(1), x)), y)),
        App(s("NTH"), (Quote(1), x)),
        App(IF, (App(s("SYMBOLP"), (x,)), x, App(s("CONS"), (x, y)))),
    ]


def stub_body(name: Symbol, formals: tuple) -> Term:
    """The hidden body of a stub, fixed by the stub's name."""
    pool = _stub_templates(formals)
    return pool[zlib.crc32(name.name.encode()) % len(pool)]


# ---------------------------------------------------------------------------
# Event parsing helpers


def conjuncts(t: Term) -> list:
    """Split an IF-encoded conjunction."""
    if type(t) is App and t.fn is IF and len(t.args) == 3 and t.args[2] == Quote(NIL):
        return conjuncts(t.args[0]) + conjuncts(t.args[1])
    if t == QT:
        return []
    return [t]


def _split_keywords(args: list) -> tuple[list, dict]:
    pos, kw = [], {}
    i = 0
    while i < len(args):
        a = args[i]
        if type(a) is Symbol and a.is_keyword:
            if i + 1 >= len(args):
                raise ValueError(f"missing value for {a.name}")
            kw[a.name] = args[i + 1]
            i += 2
        else:
            pos.append(a)
            i += 1
    return pos, kw


def _symbol(v, what: str) -> Symbol:
    if type(v) is not Symbol or v is NIL or v.name == "T" or v.is_keyword:
        raise ValueError(f"{what} must be a non-keyword symbol, got {show_value(v)}")
    return v


def _symbols(v, what: str) -> tuple:
    if not is_true_list(v):
        raise ValueError(f"{what} must be a list")
    return tuple(_symbol(x, what) for x in to_list(v))


def _terms(v, what: str) -> tuple:
    if not is_true_list(v):
        raise ValueError(f"{what} must be a list")
    return tuple(translate(x) for x in to_list(v))


def _arity(pos: list, lo: int, hi: int, head: str) -> None:
    if not lo <= len(pos) <= hi:
        want = str(lo) if lo == hi else f"{lo}-{hi}"
        raise ValueError(f"{head} takes {want} arguments, got {len(pos)}")


# ---------------------------------------------------------------------------
# Runner


class Runner:
    def __init__(self, options: RunOptions, world: World = EMPTY_WORLD):
        self.opts = options
        self.w = world
        self.ledger = Ledger()
        self.report = RunReport(options.seed, options.samples)

    def emit(self, line: str) -> None:
        self.report.lines.append(line)
        if self.opts.out is not None:
            self.opts.out(line)

    def _trace(self, name, before, after) -> None:
        label = name.name if isinstance(name, Symbol) else str(name or "REWRITE")
        self.emit(f"({label} {show(before)} -> {show(after)})")

    def ctx(self, hyps=()) -> MfcContext:
        return MfcContext(tuple(hyps), self.w, self._trace if self.opts.trace else None)

    def run(self, events: Iterable) -> RunReport:
        with recording(self.ledger):
            for i, ev in enumerate(events):
                self.event(i, ev)
                self.report.events_processed += 1
        return self.report

    def event(self, i: int, ev) -> None:
        if type(ev) is not Cons or type(ev.car) is not Symbol or not is_true_list(ev):
            raise EventError(i, show_value(ev)[:40], "an event must be a list headed by a symbol")
        head = ev.car.name
        handler = getattr(self, "ev_" + head.lower().replace("-", "_"), None)
        if handler is None:
            raise EventError(i, head, "unknown event")
        pos, kw = _split_keywords(to_list(ev.cdr))
        try:
            handler(pos, kw)
        except (ValueError, TermError, WorldError, ContextRuleError) as e:
            if isinstance(e, EventError):
                raise
            label = head
            if pos and type(pos[0]) is Symbol:
                label = f"{head} {pos[0].name}"
            raise EventError(i, label, str(e)) from e

    # --- world events

    def ev_defun(self, pos, kw):
        _arity(pos, 3, 3, "defun")
        name = _symbol(pos[0], "name")
        self.w = add_defun(name, _symbols(pos[1], "formals"), translate(pos[2]), self.w)

    def ev_defstub(self, pos, kw):
        _arity(pos, 2, 3, "defstub")
        name = _symbol(pos[0], "name")
        formals = _symbols(pos[1], "formals")
        self.w = add_defun(name, formals, stub_body(name, formals), self.w, stub=True)

    def ev_defthm(self, pos, kw):
        _arity(pos, 2, 2, "defthm")
        name = _symbol(pos[0], "name")
        formula = translate(pos[1])
        self.w = add_defthm(name, formula, self.w)
        self.report.claims.append(Claim(f"(DEFTHM {name.name})", formula))

    def ev_defrule(self, pos, kw):
        _arity(pos, 5, 5, "defrule")
        name = _symbol(pos[0], "name")
        limit = kw.get(":BACKCHAIN-LIMIT")
        if limit is not None and (type(limit) is not int or limit < 0):
            raise ValueError(":backchain-limit must be a natural number")
        rule = RewriteRule(_terms(pos[1], "hyps"), equiv_symbol(pos[2]),
                           translate(pos[3]), translate(pos[4]), limit, name)
        self.w = add_rewrite_rule(rule, self.w)
        self.report.claims.append(Claim(f"(DEFRULE {name.name})", rewrite_rule_term(rule)))

    def ev_defstobj(self, pos, kw):
        if not pos:
            raise ValueError("defstobj needs a name")
        name = _symbol(pos[0], "name")
        self.w = defstobj_expand(name, [_symbol(f, "field") for f in pos[1:]], self.w)

    def ev_defcontext(self, pos, kw):
        _arity(pos, 3, 3, "defcontext")
        hyps = _terms(pos[0], "hyps")
        lhs, rhs = translate(pos[1]), translate(pos[2])
        rule = parse_context_rule(hyps, lhs, rhs)
        self.w = add_context_rule(rule, self.w)
        n = len(self.w.context_rules)
        eq = App(EQUAL, (lhs, rhs))
        formula = App(IMPLIES, (conjoin(hyps), eq)) if hyps else eq
        self.report.claims.append(Claim(f"(DEFCONTEXT {n})", formula))

    def ev_inject_formula(self, pos, kw):
        # fault injection: make meta-extract report a false formula for a name
        _arity(pos, 2, 2, "inject-formula")
        self.w = override_formula(_symbol(pos[0], "name"), translate(pos[1]), self.w)

    # --- simplification events

    def _term(self, v) -> Term:
        t = translate(v)
        check_term(t, self.w)
        return t

    def _hyps(self, kw) -> tuple:
        hyps = _terms(kw.get(":HYPS", NIL), ":hyps")
        for h in hyps:
            check_term(h, self.w)
        return hyps

    def _record(self, event, t, out, hyps, equiv=EQUAL):
        self.report.simplifications.append(Simplification(event, t, out, tuple(hyps), equiv))

    def ev_simplify(self, pos, kw):
        _arity(pos, 1, 1, "simplify")
        t = self._term(pos[0])
        hyps = self._hyps(kw)
        mark = self.ledger.mark()
        out = simplify(t, self.ctx(hyps))
        n = len(self.ledger) - mark
        self.emit(f"(SIMPLIFY {show(t)}) => {show(out)} ; {n} obligations")
        self._record("SIMPLIFY", t, out, hyps)

    def ev_context_simplify(self, pos, kw):
        _arity(pos, 1, 1, "context-simplify")
        t = self._term(pos[0])
        hyps = self._hyps(kw)
        mark = self.ledger.mark()
        out = context_simplify(t, self.w.context_rules, self.ctx(hyps))
        n = len(self.ledger) - mark
        self.emit(f"(CONTEXT-SIMPLIFY {show(t)}) => {show(out)} ; {n} obligations")
        self._record("CONTEXT-SIMPLIFY", t, out, hyps)

    def ev_prove_bounds(self, pos, kw):
        _arity(pos, 1, 2, "prove-bounds")
        goal = self._term(pos[0])
        hyps = list(self._hyps(kw))
        if type(goal) is App and goal.fn is IMPLIES and len(goal.args) == 2:
            hyps += conjuncts(goal.args[0])
            goal = goal.args[1]
        hints = [hint_from_term(h) for h in _terms(pos[1], "hints")] if len(pos) > 1 else []
        for h in hints:
            check_term(h.literal(), self.w)
        res = prove_bounds(goal, hints, self.ctx(hyps))
        self.emit(f"(PROVE-BOUNDS {show(goal)}) => {res}")
        if res.proved:
            self._record("PROVE-BOUNDS", goal, QT, hyps, IFF)
        else:
            self.report.unproved += 1

    # --- checks

    def check(self) -> RunReport:
        s = Sampler(self.opts.seed, self.opts.samples, self.w)
        rep = self.report

        def obl_envs(i: int, o: Obligation):
            hyps = o.ctx_snapshot if o.kind == CONTEXTUAL else ()
            return s.envs(f"obligation/{i}", fact_vars(o), hyps)

        rep.ledger = self.ledger.check([], self.w, sampler=obl_envs, samples=s.n)
        for i, simp in enumerate(rep.simplifications):
            env = check_simplification(simp, s.envs(f"simplification/{i}", _simp_vars(simp), simp.hyps),
                                       self.w, s.n)
            if env is not None:
                what = f"(UNSOUND {simp.event} {show(simp.input)} {show(simp.output)})"
                rep.simplification_failures.append(CheckFailure(what, env))
        for i, c in enumerate(rep.claims):
            env = check_claim(c.formula, s.envs(f"claim/{i}", free_vars(c.formula), ()), self.w, s.n)
            if env is not None:
                rep.claim_failures.append(CheckFailure(f"(FALSE {c.label})", env))
        return rep


def _simp_vars(simp: Simplification) -> list:
    seen: dict = {}
    for t in (simp.input, simp.output, *simp.hyps):
        for v in free_vars(t):
            seen.setdefault(v, None)
    return list(seen)


def _numeric_bounds(terms) -> tuple:
    consts: list = []

    def walk(t):
        if type(t) is Quote:
            if type(t.value) in (int, Fraction) and abs(t.value) < 10**6:
                consts.append(t.value)
        elif type(t) is App:
            for a in t.args:
                walk(a)

    for t in terms:
        walk(t)
    if not consts:
        return (-40, 40)
    return (int(min(consts)) - 2, int(max(consts)) + 2)


class Sampler:
    """Per-item environment streams, each seeded from (seed, key) so that
    results do not depend on checking order."""

    def __init__(self, seed: int, n: int, w: World):
        self.seed = seed
        self.n = n
        self.w = w

    def envs(self, key: str, vars, hyps=()):
        rng = random.Random(f"{self.seed}/{key}")
        vars = list(vars)
        if not hyps:
            for _ in range(self.n):
                yield random_env(vars, rng)
            return
        bounds = _numeric_bounds(hyps)
        for i in range(self.n * ATTEMPT_FACTOR):
            profile = ("any", "num", "int")[i % 3]
            yield random_env(vars, rng, profile, bounds)


def _holds_all(hyps, env, w) -> bool:
    try:
        return all(evaluate(h, env, w) is not NIL for h in hyps)
    except EvalError:
        return False


def check_simplification(simp: Simplification, envs, w: World, want: int) -> Optional[dict]:
    """First environment (satisfying the hyps) separating input from output,
    or None."""
    checked = 0
    for env in envs:
        if simp.hyps and not _holds_all(simp.hyps, env, w):
            continue
        try:
            a = evaluate(simp.input, env, w)
            b = evaluate(simp.output, env, w)
        except EvalError:
            continue
        same = (a is not NIL) == (b is not NIL) if simp.equiv is IFF else a == b
        if not same:
            return dict(env)
        checked += 1
        if checked >= want:
            break
    return None


def check_claim(formula: Term, envs, w: World, want: int) -> Optional[dict]:
    checked = 0
    for env in envs:
        try:
            v = evaluate(formula, env, w)
        except EvalError:
            continue
        if v is NIL:
            return dict(env)
        checked += 1
        if checked >= want:
            break
    return None


def read_events(text: str) -> list:
    return read_all(text)


def run_text(text: str, options: Optional[RunOptions] = None,
             world: World = EMPTY_WORLD) -> RunReport:
    """Parse, process and check an event sequence.  Raises ``ParseError``
    or ``EventError``."""
    options = options or RunOptions()
    runner = Runner(options, world)
    runner.run(read_events(text))
    return runner.check()


def run_events(path, options: Optional[RunOptions] = None) -> RunReport:
    return run_text(Path(path).read_text(), options)
