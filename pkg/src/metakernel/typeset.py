"""Type-set lattice over eleven basic type atoms, and type-set inference.

A type-set is a bitmask.  ``TS_FULL`` (every bit) means "unknown" and
``TS_EMPTY`` means the context is contradictory.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (App, Char, Cons, NIL, NOT, EQUAL, IF, Quote, Symbol, T,
                   from_list, is_rational, Term)

ATOMS = (
    "POSITIVE-INTEGER",
    "ZERO",
    "NEGATIVE-INTEGER",
    "POSITIVE-RATIO",
    "NEGATIVE-RATIO",
    "NIL",
    "T",
    "NON-T-NON-NIL-SYMBOL",
    "CONS",
    "STRING",
    "CHARACTER",
)
_BIT = {name: 1 << i for i, name in enumerate(ATOMS)}

POS_INT = _BIT["POSITIVE-INTEGER"]
ZERO = _BIT["ZERO"]
NEG_INT = _BIT["NEGATIVE-INTEGER"]
POS_RAT = _BIT["POSITIVE-RATIO"]
NEG_RAT = _BIT["NEGATIVE-RATIO"]
TS_NIL = _BIT["NIL"]
TS_T = _BIT["T"]
OTHER_SYM = _BIT["NON-T-NON-NIL-SYMBOL"]
TS_CONS = _BIT["CONS"]
TS_STRING = _BIT["STRING"]
TS_CHAR = _BIT["CHARACTER"]

TS_EMPTY = 0
TS_FULL = (1 << len(ATOMS)) - 1
TS_SYMBOL = TS_NIL | TS_T | OTHER_SYM
TS_BOOLEAN = TS_NIL | TS_T
TS_INTEGER = POS_INT | ZERO | NEG_INT
TS_RATIONAL = TS_INTEGER | POS_RAT | NEG_RAT
TS_POSITIVE = POS_INT | POS_RAT
TS_NEGATIVE = NEG_INT | NEG_RAT
TS_NATURAL = ZERO | POS_INT
TS_NON_RATIONAL = TS_FULL & ~TS_RATIONAL


def classify(v) -> int:
    """The single atom bit that ``v`` inhabits."""
    tv = type(v)
    if tv is int:
        return POS_INT if v > 0 else NEG_INT if v < 0 else ZERO
    if tv is Fraction:
        return POS_RAT if v > 0 else NEG_RAT
    if tv is Symbol:
        return TS_NIL if v is NIL else TS_T if v is T else OTHER_SYM
    if tv is Cons:
        return TS_CONS
    if tv is str:
        return TS_STRING
    if tv is Char:
        return TS_CHAR
    raise TypeError(f"not a value: {v!r}")


def atoms_of(ts: int) -> list[str]:
    return [name for name in ATOMS if ts & _BIT[name]]


def ts_to_value(ts: int):
    """Quotable form: the atom symbols in lattice order."""
    return from_list([Symbol(a) for a in atoms_of(ts)])


def ts_from_value(v) -> int:
    """Inverse of ``ts_to_value``; unrecognized elements are ignored."""
    ts = 0
    while type(v) is Cons:
        x = v.car
        if type(x) is Symbol:
            ts |= _BIT.get(x.name, 0)
        v = v.cdr
    return ts


def ts_show(ts: int) -> str:
    return "(" + " ".join(atoms_of(ts)) + ")"


def typespec_check(ts: int, v) -> bool:
    return bool(ts & classify(v))


# ---------------------------------------------------------------------------
# Arithmetic signature tables.  Each maps atom-pairs to the atoms the result
# may take; non-rational arguments behave as zero (arithmetic completion).

_NUMERIC = (POS_INT, ZERO, NEG_INT, POS_RAT, NEG_RAT)


def _sign(a: int) -> int:
    return 1 if a & TS_POSITIVE else -1 if a & TS_NEGATIVE else 0


def _of_sign(s: int, integer: bool, ratio: bool) -> int:
    out = 0
    if s == 0:
        return ZERO if integer else 0
    if integer:
        out |= POS_INT if s > 0 else NEG_INT
    if ratio:
        out |= POS_RAT if s > 0 else NEG_RAT
    return out


def _mul1(a: int, b: int) -> int:
    sa, sb = _sign(a), _sign(b)
    if sa == 0 or sb == 0:
        return ZERO
    both_int = bool(a & TS_INTEGER) and bool(b & TS_INTEGER)
    return _of_sign(sa * sb, True, not both_int)


def _add1(a: int, b: int) -> int:
    sa, sb = _sign(a), _sign(b)
    if sa == 0:
        return b
    if sb == 0:
        return a
    ia, ib = bool(a & TS_INTEGER), bool(b & TS_INTEGER)
    if ia and ib:
        if sa == sb:
            return _of_sign(sa, True, False)
        return TS_INTEGER
    if ia != ib:
        # integer + ratio is never integral
        if sa == sb:
            return _of_sign(sa, False, True)
        return POS_RAT | NEG_RAT
    if sa == sb:
        return _of_sign(sa, True, True)
    return TS_RATIONAL


def _numeric_atoms(ts: int) -> list[int]:
    atoms = [a for a in _NUMERIC if ts & a]
    if ts & TS_NON_RATIONAL and ZERO not in atoms:
        atoms.append(ZERO)
    return atoms


def _lift2(op, x: int, y: int) -> int:
    out = 0
    for a in _numeric_atoms(x):
        for b in _numeric_atoms(y):
            out |= op(a, b)
    return out


def ts_times(x: int, y: int) -> int:
    return _lift2(_mul1, x, y)


def ts_plus(x: int, y: int) -> int:
    return _lift2(_add1, x, y)


def ts_negate(x: int) -> int:
    out = 0
    for a in _numeric_atoms(x):
        out |= {POS_INT: NEG_INT, NEG_INT: POS_INT, POS_RAT: NEG_RAT,
                NEG_RAT: POS_RAT, ZERO: ZERO}[a]
    return out


def ts_reciprocal(x: int) -> int:
    out = 0
    for a in _numeric_atoms(x):
        if a == ZERO:
            out |= ZERO
        else:
            out |= _of_sign(_sign(a), True, True)
    return out


def ts_fix(x: int) -> int:
    """Type-set of the arithmetic coercion of a value in ``x``."""
    out = x & TS_RATIONAL
    if x & TS_NON_RATIONAL:
        out |= ZERO
    return out


_BOOLEAN_FNS = {Symbol(n) for n in (
    "CONSP", "SYMBOLP", "EQUAL", "<", "IFF", "IMPLIES", "NOT", "LOGBITP",
    "TYPESPEC-CHECK", "RATIONALP", "INTEGERP")}
_INTEGER_FNS = {Symbol(n) for n in ("ASH", "LOGAND", "LOGIOR", "LOGAPP", "LOGTAIL")}
_NATURAL_FNS = {Symbol(n) for n in ("LEN", "NFIX")}
_CONS_FNS = {Symbol(n) for n in ("CONS", "ACONS", "UPDATE-NTH")}

_LT = Symbol("<")
_SYMBOLP = Symbol("SYMBOLP")
_CONSP = Symbol("CONSP")
_RATIONALP = Symbol("RATIONALP")
_INTEGERP = Symbol("INTEGERP")
_PLUS = Symbol("BINARY-+")
_TIMES = Symbol("BINARY-*")
_MINUS = Symbol("UNARY--")
_RECIP = Symbol("UNARY-/")

# One-argument recognizers: type-set when true, type-set excluded when false.
_RECOGNIZERS = {
    _SYMBOLP: TS_SYMBOL,
    _CONSP: TS_CONS,
    _RATIONALP: TS_RATIONAL,
    _INTEGERP: TS_INTEGER,
}


def _exact_singleton(ts: int) -> bool:
    # atoms that contain exactly one value
    return ts in (TS_NIL, TS_T, ZERO)


def _from_hyp(hyp: Term, t: Term, positive: bool) -> int:
    """Constraint on ``t``'s type-set contributed by one hypothesis."""
    if hyp == t:
        return (TS_FULL & ~TS_NIL) if positive else TS_NIL
    if type(hyp) is not App:
        return TS_FULL
    fn, args = hyp.fn, hyp.args
    if fn is NOT and len(args) == 1:
        return _from_hyp(args[0], t, not positive)
    if fn in _RECOGNIZERS and len(args) == 1 and args[0] == t:
        ts = _RECOGNIZERS[fn]
        return ts if positive else TS_FULL & ~ts
    if fn is EQUAL and len(args) == 2:
        a, b = args
        other = b if a == t else a if b == t else None
        if type(other) is Quote:
            single = classify(other.value)
            if positive:
                return single
            if _exact_singleton(single):
                return TS_FULL & ~single
        return TS_FULL
    if fn is _LT and len(args) == 2:
        a, b = args
        # (< c t): t > c    (< t c): t < c ; false means the opposite weak bound
        if b == t and type(a) is Quote and is_rational(a.value):
            c = a.value
            if positive and c >= 0:
                return TS_POSITIVE
            if not positive and c <= 0:
                # t <= c <= 0 after coercion
                return TS_FULL & ~TS_POSITIVE
        if a == t and type(b) is Quote and is_rational(b.value):
            c = b.value
            if positive and c <= 0:
                return TS_NEGATIVE
            if not positive and c >= 0:
                return TS_FULL & ~TS_NEGATIVE
        return TS_FULL
    return TS_FULL


def _mine(t: Term, hyps) -> int:
    ts = TS_FULL
    for h in hyps:
        ts &= _from_hyp(h, t, True)
    return ts


def _signature(t: App, hyps) -> int:
    fn, args = t.fn, t.args
    if fn in _BOOLEAN_FNS:
        return TS_BOOLEAN
    if fn in _CONS_FNS:
        return TS_CONS
    if fn in _NATURAL_FNS:
        return TS_NATURAL
    if fn in _INTEGER_FNS:
        return TS_INTEGER
    if fn is _PLUS and len(args) == 2:
        return ts_plus(_infer(args[0], hyps), _infer(args[1], hyps))
    if fn is _TIMES and len(args) == 2:
        return ts_times(_infer(args[0], hyps), _infer(args[1], hyps))
    if fn is _MINUS and len(args) == 1:
        return ts_negate(_infer(args[0], hyps))
    if fn is _RECIP and len(args) == 1:
        return ts_reciprocal(_infer(args[0], hyps))
    if fn is IF and len(args) == 3:
        return _infer(args[1], hyps) | _infer(args[2], hyps)
    return TS_FULL


def _infer(t: Term, hyps) -> int:
    if type(t) is Quote:
        base = classify(t.value)
    elif type(t) is App:
        base = _signature(t, hyps)
    else:
        base = TS_FULL
    return base & _mine(t, hyps)


def type_set_of(t: Term, ctx) -> int:
    """Sound over-approximation of the types ``t`` can take whenever every
    hypothesis of ``ctx`` holds."""
    return _infer(t, tuple(ctx.hyps))
