"""Linear arithmetic over the rationals: linearization of literals and
refutation by Fourier-Motzkin elimination.

Arithmetic in the logic coerces non-rationals to zero, so each opaque atom
stands for the coerced value of its term.  All arithmetic here is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import App, NOT, EQUAL, Quote, Symbol, Term, is_rational, show

LT, LE, EQ = "<", "<=", "="

DEFAULT_ATOM_CAP = 20
# guards memory only; systems within the atom cap stay far below it in practice
CONSTRAINT_CAP = 20000

_LT = Symbol("<")
_PLUS = Symbol("BINARY-+")
_TIMES = Symbol("BINARY-*")
_MINUS = Symbol("UNARY--")


@dataclass(frozen=True)
class LinearConstraint:
    """``sum(coeffs[atom] * atom) + constant REL 0``."""

    relation: str
    coeffs: tuple  # sorted ((atom_key, atom, coeff), ...)
    constant: Fraction

    @classmethod
    def make(cls, relation: str, coeffs: dict, constant) -> "LinearConstraint":
        items = tuple(sorted(((show(a), a, Fraction(c)) for a, c in coeffs.items() if c != 0),
                             key=lambda x: x[0]))
        return cls(relation, items, Fraction(constant))

    @property
    def left(self) -> dict:
        return {a: c for _, a, c in self.coeffs}

    def atoms(self) -> list:
        return [a for _, a, _ in self.coeffs]

    def __str__(self):
        parts = [f"{c}*{k}" for k, _, c in self.coeffs]
        parts.append(str(self.constant))
        return " + ".join(parts) + f" {self.relation} 0"


# ---------------------------------------------------------------------------
# Linearization


def _linear(t: Term) -> tuple[dict, Fraction]:
    """Polynomial of degree one: (coefficients by atom, constant)."""
    if type(t) is Quote:
        v = t.value
        return {}, Fraction(v) if is_rational(v) else Fraction(0)
    if type(t) is App:
        if t.fn is _PLUS and len(t.args) == 2:
            c1, k1 = _linear(t.args[0])
            c2, k2 = _linear(t.args[1])
            out = dict(c1)
            for a, c in c2.items():
                out[a] = out.get(a, 0) + c
            return out, k1 + k2
        if t.fn is _MINUS and len(t.args) == 1:
            c, k = _linear(t.args[0])
            return {a: -x for a, x in c.items()}, -k
        if t.fn is _TIMES and len(t.args) == 2:
            a, b = t.args
            if type(a) is Quote or type(b) is Quote:
                q, other = (a, b) if type(a) is Quote else (b, a)
                m = Fraction(q.value) if is_rational(q.value) else Fraction(0)
                c, k = _linear(other)
                return {x: m * y for x, y in c.items()}, m * k
    return {t: Fraction(1)}, Fraction(0)


def _difference(a: Term, b: Term) -> tuple[dict, Fraction]:
    ca, ka = _linear(a)
    cb, kb = _linear(b)
    out = dict(ca)
    for x, c in cb.items():
        out[x] = out.get(x, 0) - c
    return out, ka - kb


def linearize(t: Term) -> Optional[LinearConstraint]:
    """The linear content of literal ``t`` assumed true, or None if opaque."""
    positive = True
    while type(t) is App and t.fn is NOT and len(t.args) == 1:
        positive = not positive
        t = t.args[0]
    if type(t) is not App or len(t.args) != 2:
        return None
    a, b = t.args
    if t.fn is _LT:
        if positive:
            c, k = _difference(a, b)      # a - b < 0
            return LinearConstraint.make(LT, c, k)
        c, k = _difference(b, a)          # b - a <= 0
        return LinearConstraint.make(LE, c, k)
    if t.fn is EQUAL and positive:
        # equal values have equal coercions
        c, k = _difference(a, b)
        return LinearConstraint.make(EQ, c, k)
    return None


# ---------------------------------------------------------------------------
# Refutation


def _violated(rel: str, k: Fraction) -> bool:
    if rel == LT:
        return k >= 0
    if rel == LE:
        return k > 0
    return k != 0


def _normalize(rel, coeffs: dict, k):
    """Scale so the largest-keyed coefficient has absolute value one."""
    if not coeffs:
        return rel, (), k
    key = max(coeffs, key=lambda a: a)
    s = abs(coeffs[key])
    items = tuple(sorted((a, c / s) for a, c in coeffs.items()))
    if rel == EQ and items[-1][1] < 0:
        items = tuple((a, -c) for a, c in items)
        return rel, items, -k / s
    return rel, items, k / s


def _tightest(rows) -> set:
    """Among rows with the same left side keep the strongest one; the others
    are implied by it."""
    best: dict = {}
    for rel, items, k in rows:
        cur = best.get(items)
        if cur is None or k > cur[1] or (k == cur[1] and rel == LT):
            best[items] = (rel, k)
    return {(rel, items, k) for items, (rel, k) in best.items()}


def _solve_equalities(eqs: list, ineqs: list):
    """Substitute away one atom per equality.  Returns the remaining
    inequality rows, or None when an equality is contradictory."""
    eqs = [(dict(c), k) for c, k in eqs]
    ineqs = [(rel, dict(c), k) for rel, c, k in ineqs]
    while eqs:
        eqs.sort(key=lambda e: (sorted(e[0]), e[1]))
        coeffs, k = eqs.pop(0)
        if not coeffs:
            if k != 0:
                return None
            continue
        pivot = min(coeffs)
        cp = coeffs[pivot]
        # pivot = -(sum of the other terms + k) / cp

        def subst(c: dict, kk):
            x = c.pop(pivot, None)
            if x is None:
                return c, kk
            f = x / cp
            for a, y in coeffs.items():
                if a != pivot:
                    c[a] = c.get(a, 0) - f * y
            return {a: y for a, y in c.items() if y != 0}, kk - f * k

        eqs = [subst(c, kk) for c, kk in eqs]
        ineqs = [(rel, *subst(c, kk)) for rel, c, kk in ineqs]
    return {_normalize(rel, c, k) for rel, c, k in ineqs}


def refute(cs, atom_cap: int = DEFAULT_ATOM_CAP) -> bool:
    """True only if the constraints have no rational solution.  Equalities
    are solved out first; the remaining inequalities go through
    Fourier-Motzkin elimination."""
    # atoms are identified by printed form; ties in elimination order break on it
    eqs, ineqs = [], []
    for c in cs:
        if c is None:
            continue
        coeffs = {k: x for k, _, x in c.coeffs}
        if c.relation == EQ:
            eqs.append((coeffs, c.constant))
        else:
            ineqs.append((c.relation, coeffs, c.constant))
    atoms = {a for c, _ in eqs for a in c} | {a for _, c, _ in ineqs for a in c}
    if len(atoms) > atom_cap:
        return False
    rows = _solve_equalities(eqs, ineqs)
    if rows is None:
        return True
    rows = _tightest(rows)
    while True:
        live = []
        for rel, items, k in rows:
            if not items:
                if _violated(rel, k):
                    return True
            else:
                live.append((rel, items, k))
        if not live:
            return False
        counts = Counter(a for _, items, _ in live for a, _ in items)
        pivot = min(counts, key=lambda a: (counts[a], a))
        pos, neg, rest = [], [], set()
        for row in live:
            rel, items, k = row
            coeffs = dict(items)
            c = coeffs.get(pivot)
            if c is None:
                rest.add(row)
            elif c > 0:
                pos.append((rel, coeffs, k))
            else:
                neg.append((rel, coeffs, k))
        for prel, pc, pk in pos:
            cp = pc[pivot]
            for nrel, nc, nk in neg:
                cn = -nc[pivot]
                combined = {}
                for a, x in pc.items():
                    combined[a] = x * cn
                for a, x in nc.items():
                    combined[a] = combined.get(a, 0) + x * cp
                del combined[pivot]
                combined = {a: x for a, x in combined.items() if x != 0}
                rel = LT if LT in (prel, nrel) else LE
                rest.add(_normalize(rel, combined, pk * cn + nk * cp))
        rows = _tightest(rest)
        if len(rows) > CONSTRAINT_CAP:
            return False
