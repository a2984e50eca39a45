"""Fact constructors and the obligation ledger.

Each constructor maps a fact request (an ``obj``) to a term that must
evaluate to true.  Malformed requests yield ``'T``.  While a ``Ledger`` is
active (see ``recording``) every constructor call is appended to it, and
``Ledger.check`` later evaluates every recorded fact.
"""

from __future__ import annotations

import contextlib
import contextvars
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

from .core import (App, Cons, EQUAL, IFF, NIL, NOT, QT, Quote, Symbol, T, Term,
                   TermError, free_vars, from_list, is_true_list, show, show_value,
                   term_to_value, to_list, value_to_term)
from .eval import (EvalError, Failure, evaluate, make_env, magic_ev_fncall,
                   sublis_var)
from .rewrite import (MfcContext, equiv_symbol, mfc_ap, mfc_relieve_hyp,
                      mfc_rw_plus, mfc_ts)
from .typeset import ts_to_value
from .world import World, WorldError, check_term, meta_extract_formula, nth_lemma

GLOBAL = "GLOBAL"
CONTEXTUAL = "CONTEXTUAL"

_TYPESPEC_CHECK = Symbol("TYPESPEC-CHECK")


# ---------------------------------------------------------------------------
# Fact requests


@dataclass(frozen=True)
class Formula:
    name: object
    kind = GLOBAL

    def to_value(self):
        return from_list([Symbol(":FORMULA"), self.name])


@dataclass(frozen=True)
class Lemma:
    fn: Symbol
    n: int
    kind = GLOBAL

    def to_value(self):
        return from_list([Symbol(":LEMMA"), self.fn, self.n])


@dataclass(frozen=True)
class Fncall:
    fn: Symbol
    args: tuple
    kind = GLOBAL

    def to_value(self):
        return from_list([Symbol(":FNCALL"), self.fn, from_list(self.args)])


@dataclass(frozen=True)
class Typeset:
    term: Term
    kind = CONTEXTUAL

    def to_value(self):
        return from_list([Symbol(":TYPESET"), term_to_value(self.term)])


def _alist_value(alist: tuple):
    return from_list([Cons(k, term_to_value(v)) for k, v in alist])


@dataclass(frozen=True)
class RwPlus:
    term: Term
    alist: tuple  # ((symbol, term), ...)
    obj: object
    equiv: Symbol
    kind = CONTEXTUAL

    def to_value(self):
        return from_list([Symbol(":RW+"), term_to_value(self.term),
                          _alist_value(self.alist), self.obj, self.equiv])


@dataclass(frozen=True)
class Rw:
    term: Term
    obj: object
    equiv: Symbol
    kind = CONTEXTUAL

    def to_value(self):
        return from_list([Symbol(":RW"), term_to_value(self.term), self.obj, self.equiv])


@dataclass(frozen=True)
class Ap:
    term: Term
    kind = CONTEXTUAL

    def to_value(self):
        return from_list([Symbol(":AP"), term_to_value(self.term)])


@dataclass(frozen=True)
class RelieveHyp:
    hyp: Term
    alist: tuple
    rune: object = NIL
    target: object = NIL
    backptr: object = 0
    kind = CONTEXTUAL

    def to_value(self):
        return from_list([Symbol(":RELIEVE-HYP"), term_to_value(self.hyp),
                          _alist_value(self.alist), self.rune, self.target,
                          self.backptr])


@dataclass(frozen=True)
class Malformed:
    value: object
    kind = None

    def to_value(self):
        return self.value


FactObj = Union[Formula, Lemma, Fncall, Typeset, RwPlus, Rw, Ap, RelieveHyp, Malformed]


def _term(v) -> Term:
    return value_to_term(v)


def _alist(v) -> tuple:
    if not is_true_list(v):
        raise TermError("substitution is not a true list")
    out = []
    for pair in to_list(v):
        if type(pair) is not Cons or type(pair.car) is not Symbol:
            raise TermError("substitution entry is not (symbol . term)")
        key = pair.car
        if key is NIL or key is T or key.is_keyword:
            raise TermError(f"substitution binds {key.name}")
        out.append((key, _term(pair.cdr)))
    return tuple(out)


def _equiv(v) -> Symbol:
    if v is NIL or v is EQUAL:
        return NIL
    if v is T or v is IFF:
        return T
    raise TermError("unsupported equivalence relation")


def parse_obj(v) -> FactObj:
    """Parse a request such as ``(:formula atom)``; any shape violation
    gives ``Malformed``."""
    if isinstance(v, (Formula, Lemma, Fncall, Typeset, RwPlus, Rw, Ap, RelieveHyp, Malformed)):
        return v
    if type(v) is not Cons or not is_true_list(v) or type(v.car) is not Symbol:
        return Malformed(v)
    tag, args = v.car.name, to_list(v.cdr)
    try:
        if tag == ":FORMULA" and len(args) == 1:
            return Formula(args[0])
        if tag == ":LEMMA" and len(args) == 2:
            fn, n = args
            if type(fn) is Symbol and type(n) is int and n >= 0:
                return Lemma(fn, n)
        elif tag == ":FNCALL" and len(args) == 2:
            fn, lst = args
            if type(fn) is Symbol and is_true_list(lst):
                return Fncall(fn, tuple(to_list(lst)))
        elif tag == ":TYPESET" and len(args) == 1:
            return Typeset(_term(args[0]))
        elif tag == ":RW+" and len(args) == 4:
            return RwPlus(_term(args[0]), _alist(args[1]), args[2], _equiv(args[3]))
        elif tag == ":RW" and len(args) == 3:
            return Rw(_term(args[0]), args[1], _equiv(args[2]))
        elif tag == ":AP" and len(args) == 1:
            return Ap(_term(args[0]))
        elif tag == ":RELIEVE-HYP" and len(args) == 5:
            return RelieveHyp(_term(args[0]), _alist(args[1]), args[2], args[3], args[4])
    except TermError:
        pass
    return Malformed(v)


def obj_value(obj) -> object:
    return obj.to_value() if hasattr(obj, "to_value") else obj


# ---------------------------------------------------------------------------
# Constructors


def _global(obj: FactObj, w: World) -> Term:
    if type(obj) is Formula:
        return meta_extract_formula(obj.name, w)
    if type(obj) is Lemma:
        return nth_lemma(obj.fn, obj.n, w)
    if type(obj) is Fncall:
        v = magic_ev_fncall(obj.fn, list(obj.args), w)
        if isinstance(v, Failure):
            return QT
        return App(EQUAL, (App(obj.fn, tuple(Quote(a) for a in obj.args)), Quote(v)))
    return QT


def _well_formed(terms, w: World) -> bool:
    try:
        for t in terms:
            check_term(t, w)
    except WorldError:
        return False
    return True


def _contextual(obj: FactObj, ctx: MfcContext) -> Term:
    w = ctx.world
    if type(obj) is Typeset:
        if not _well_formed([obj.term], w):
            return QT
        ts = mfc_ts(obj.term, ctx)
        return App(_TYPESPEC_CHECK, (Quote(ts_to_value(ts)), obj.term))
    if type(obj) in (RwPlus, Rw):
        alist = obj.alist if type(obj) is RwPlus else ()
        if not _well_formed([obj.term, *(t for _, t in alist)], w):
            return QT
        inst = sublis_var(alist, obj.term)
        rw = mfc_rw_plus(obj.term, alist, obj.obj, obj.equiv, ctx)
        return App(equiv_symbol(obj.equiv), (inst, rw))
    if type(obj) is Ap:
        if not _well_formed([obj.term], w):
            return QT
        return App(NOT, (obj.term,)) if mfc_ap(obj.term, ctx) else QT
    if type(obj) is RelieveHyp:
        if not _well_formed([obj.hyp, *(t for _, t in obj.alist)], w):
            return QT
        if mfc_relieve_hyp(obj.hyp, obj.alist, obj.rune, obj.target, obj.backptr, ctx):
            return sublis_var(obj.alist, obj.hyp)
        return QT
    return QT


def meta_extract_global_fact_plus(obj, st: World, state: World) -> Term:
    """Fact for a global request, evaluated against ``st``; ``'T`` unless
    ``st`` and ``state`` hold equal worlds."""
    parsed = parse_obj(obj)
    fact = _global(parsed, st) if st == state else QT
    _record(Obligation(obj_value(obj), parsed, fact, GLOBAL))
    return fact


def meta_extract_global_fact(obj, state: World) -> Term:
    return meta_extract_global_fact_plus(obj, state, state)


def meta_extract_contextual_fact(obj, ctx: MfcContext) -> Term:
    parsed = parse_obj(obj)
    fact = _contextual(parsed, ctx)
    _record(Obligation(obj_value(obj), parsed, fact, CONTEXTUAL, ctx.hyps))
    return fact


# ---------------------------------------------------------------------------
# Ledger


@dataclass(frozen=True)
class Obligation:
    obj: object  # the request as data
    parsed: FactObj
    fact: Term
    kind: str
    ctx_snapshot: tuple = ()


@dataclass
class ObligationResult:
    index: int
    obligation: Obligation
    checked: int = 0
    skipped: int = 0
    violation_env: Optional[dict] = None

    @property
    def status(self) -> str:
        if self.violation_env is not None:
            return "VIOLATED"
        return "OK" if self.checked else "VACUOUS"

    def sexpr(self) -> str:
        o = self.obligation
        status = self.status
        if self.violation_env is not None:
            env = from_list([Cons(k, v) for k, v in self.violation_env.items()])
            status = f"(VIOLATED {show_value(env)})"
        return f"(OBLIGATION {o.kind} {show_value(o.obj)} {show(o.fact)} {status})"


@dataclass
class LedgerReport:
    results: list

    @property
    def violations(self) -> list:
        return [r for r in self.results if r.violation_env is not None]

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self) -> list[str]:
        return [r.sexpr() for r in sorted(self.results, key=lambda r: r.index)]


def fact_vars(o: Obligation) -> list:
    """Variables an environment must bind to check ``o``."""
    seen: dict = {}
    for t in (o.fact, *o.ctx_snapshot):
        for v in free_vars(t):
            seen.setdefault(v, None)
    return list(seen)


def _holds(t: Term, env: dict, w: World) -> Optional[bool]:
    try:
        return evaluate(t, env, w) is not NIL
    except EvalError:
        return None


def check_obligation(index: int, o: Obligation, envs: Iterable[dict], w: World,
                     want: Optional[int] = None) -> ObligationResult:
    """Evaluate one fact under ``envs``.  Contextual facts are only checked
    under environments satisfying their context snapshot.  Stops early once
    ``want`` environments have been checked."""
    res = ObligationResult(index, o)
    for env in envs:
        if o.kind == CONTEXTUAL:
            ok = True
            for h in o.ctx_snapshot:
                r = _holds(h, env, w)
                if not r:
                    ok = False
                    break
            if not ok:
                continue
        r = _holds(o.fact, env, w)
        if r is None:
            res.skipped += 1
            continue
        res.checked += 1
        if not r:
            res.violation_env = dict(env)
            break
        if want is not None and res.checked >= want:
            break
    return res


class Ledger:
    """Append-only log of consumed facts."""

    def __init__(self):
        self._items: list[Obligation] = []
        self._lock = threading.Lock()

    def record(self, obl: Obligation) -> None:
        with self._lock:
            self._items.append(obl)

    @property
    def obligations(self) -> list[Obligation]:
        with self._lock:
            return list(self._items)

    def __len__(self):
        return len(self._items)

    def mark(self) -> int:
        return len(self._items)

    def since(self, mark: int) -> list[Obligation]:
        with self._lock:
            return self._items[mark:]

    def check(self, envs: list, w: World,
              sampler: Optional[Callable[[int, Obligation], Iterable[dict]]] = None,
              samples: Optional[int] = None) -> LedgerReport:
        """Check every obligation under ``envs``.  When ``sampler`` is given,
        each obligation is instead checked under ``sampler(i, obligation)``,
        which should yield environments for that obligation's variables."""
        results = []
        for i, o in enumerate(self.obligations):
            source = envs if sampler is None else sampler(i, o)
            results.append(check_obligation(i, o, source, w, samples))
        return LedgerReport(results)


_active: contextvars.ContextVar[Optional[Ledger]] = contextvars.ContextVar("ledger", default=None)


def _record(obl: Obligation) -> None:
    ledger = _active.get()
    if ledger is not None:
        ledger.record(obl)


def ledger_record(obl: Obligation, ledger: Optional[Ledger] = None) -> None:
    (ledger or _active.get() or _NullLedger).record(obl)


class _Null:
    def record(self, obl):
        pass


_NullLedger = _Null()


@contextlib.contextmanager
def recording(ledger: Optional[Ledger] = None):
    """Make ``ledger`` (or a fresh one) receive every fact constructed."""
    ledger = ledger if ledger is not None else Ledger()
    token = _active.set(ledger)
    try:
        yield ledger
    finally:
        _active.reset(token)


def active_ledger() -> Optional[Ledger]:
    return _active.get()


def ledger_check(ledger: Ledger, envs: list, w: World, **kw) -> LedgerReport:
    return ledger.check([make_env(e) for e in envs], w, **kw)
