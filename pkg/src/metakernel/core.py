"""Values, terms, and the S-expression reader/printer.

Values are the runtime data of the logic: interned symbols, Python ``int``
for integers, ``fractions.Fraction`` for non-integral rationals, ``Char``,
``str`` for strings, and ``Cons`` cells.  Terms are ``Var``, ``Quote`` and
``App`` nodes; all of them are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union


class Symbol:
    """An interned, upper-case symbol.  Compare with ``is``."""

    __slots__ = ("name", "__weakref__")
    _table: dict[str, "Symbol"] = {}

    def __new__(cls, name: str) -> "Symbol":
        name = name.upper()
        sym = cls._table.get(name)
        if sym is None:
            sym = object.__new__(cls)
            object.__setattr__(sym, "name", name)
            cls._table[name] = sym
        return sym

    def __setattr__(self, key, value):
        raise AttributeError("symbols are immutable")

    def __reduce__(self):
        return (Symbol, (self.name,))

    def __repr__(self) -> str:
        return f"Symbol({self.name!r})"

    def __str__(self) -> str:
        return self.name

    @property
    def is_keyword(self) -> bool:
        return self.name.startswith(":")


@dataclass(frozen=True, slots=True)
class Char:
    ch: str

    def __post_init__(self):
        if len(self.ch) != 1:
            raise ValueError("a character holds exactly one code point")


class Cons:
    __slots__ = ("car", "cdr", "_hash")

    def __init__(self, car, cdr):
        object.__setattr__(self, "car", car)
        object.__setattr__(self, "cdr", cdr)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("cons cells are immutable")

    def __eq__(self, other):
        # iterative along the cdr chain so long lists do not recurse
        a, b = self, other
        while True:
            if a is b:
                return True
            if type(b) is not Cons:
                return False
            if a.car != b.car:
                return False
            a, b = a.cdr, b.cdr
            if type(a) is not Cons:
                return a == b and type(a) is type(b)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        h = self._hash
        if h is not None:
            return h
        # hash the spine back to front so long lists do not recurse
        spine = []
        x = self
        while type(x) is Cons and x._hash is None:
            spine.append(x)
            x = x.cdr
        h = x._hash if type(x) is Cons else hash(x)
        for c in reversed(spine):
            h = hash((c.car, h))
            object.__setattr__(c, "_hash", h)
        return h

    def __iter__(self) -> Iterator:
        x = self
        while type(x) is Cons:
            yield x.car
            x = x.cdr

    def __repr__(self) -> str:
        return f"Cons({self.car!r}, {self.cdr!r})"


Value = Union[Symbol, int, Fraction, Char, str, Cons]

NIL = Symbol("NIL")
T = Symbol("T")
QUOTE = Symbol("QUOTE")
IF = Symbol("IF")
NOT = Symbol("NOT")
EQUAL = Symbol("EQUAL")
IFF = Symbol("IFF")
IMPLIES = Symbol("IMPLIES")


def mknum(x) -> Union[int, Fraction]:
    """Normalize a rational: integral fractions become ``int``."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def is_rational(v) -> bool:
    return type(v) is int or type(v) is Fraction


def from_list(items: Iterable, tail=NIL):
    items = list(items)
    out = tail
    for x in reversed(items):
        out = Cons(x, out)
    return out


def to_list(v) -> list:
    """Elements of a list value, ignoring any non-NIL final tail."""
    return list(v) if type(v) is Cons else []


def is_true_list(v) -> bool:
    while type(v) is Cons:
        v = v.cdr
    return v is NIL


def truthy(v) -> bool:
    return v is not NIL


def boolean(b: bool) -> Symbol:
    return T if b else NIL


# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True, slots=True)
class Var:
    name: Symbol

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class Quote:
    value: object

    def __str__(self):
        return show(self)


@dataclass(frozen=True, slots=True)
class App:
    fn: Symbol
    args: tuple

    def __post_init__(self):
        if self.fn is QUOTE:
            raise ValueError("QUOTE is not a function symbol")
        if type(self.args) is not tuple:
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return show(self)


Term = Union[Var, Quote, App]

QT = Quote(T)
QNIL = Quote(NIL)


def app(fn: Union[str, Symbol], *args: Term) -> App:
    return App(fn if type(fn) is Symbol else Symbol(fn), args)


def free_vars(t: Term) -> list[Symbol]:
    """Variables of ``t`` in left-to-right first-occurrence order."""
    seen: dict[Symbol, None] = {}

    def walk(x):
        if type(x) is Var:
            seen.setdefault(x.name, None)
        elif type(x) is App:
            for a in x.args:
                walk(a)

    walk(t)
    return list(seen)


def is_ground(t: Term) -> bool:
    if type(t) is Var:
        return False
    if type(t) is App:
        return all(is_ground(a) for a in t.args)
    return True


def subterm_at(t: Term, path: tuple[int, ...]) -> Term:
    for i in path:
        t = t.args[i]
    return t


def replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    i = path[0]
    args = list(t.args)
    args[i] = replace_at(args[i], path[1:], new)
    return App(t.fn, tuple(args))


def term_size(t: Term) -> int:
    if type(t) is App:
        return 1 + sum(term_size(a) for a in t.args)
    return 1


# ---------------------------------------------------------------------------
# Reader


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


_DELIMS = set("()'\";")
_CHAR_NAMES = {"SPACE": " ", "NEWLINE": "\n", "TAB": "\t", "PAGE": "\f", "RUBOUT": "\x7f"}
_CHAR_PRINT = {v: k.capitalize() for k, v in _CHAR_NAMES.items()}


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, msg):
        raise ParseError(msg, self.line, self.col)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def advance(self):
        c = self.text[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def skip_ws(self):
        while self.pos < len(self.text):
            c = self.peek()
            if c.isspace():
                self.advance()
            elif c == ";":
                while self.pos < len(self.text) and self.peek() != "\n":
                    self.advance()
            elif c == "#" and self.text.startswith("#|", self.pos):
                end = self.text.find("|#", self.pos + 2)
                if end < 0:
                    self.error("unterminated block comment")
                while self.pos < end + 2:
                    self.advance()
            else:
                break

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def read(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        c = self.peek()
        if c == "(":
            return self.read_list()
        if c == ")":
            self.error("unexpected ')'")
        if c == "'":
            self.advance()
            return from_list([QUOTE, self.read()])
        if c == '"':
            return self.read_string()
        if c == "#" and self.text.startswith("#\\", self.pos):
            return self.read_char()
        return self.read_atom()

    def read_list(self):
        line, col = self.line, self.col
        self.advance()
        items = []
        tail = NIL
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                raise ParseError("unterminated list opened", line, col)
            c = self.peek()
            if c == ")":
                self.advance()
                return from_list(items, tail)
            if c == "." and (self.pos + 1 >= len(self.text)
                             or self.text[self.pos + 1].isspace()
                             or self.text[self.pos + 1] in "()"):
                if not items:
                    self.error("dot at start of list")
                self.advance()
                tail = self.read()
                self.skip_ws()
                if self.peek() != ")":
                    self.error("expected ')' after dotted tail")
                self.advance()
                return from_list(items, tail)
            items.append(self.read())

    def read_string(self):
        self.advance()
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("unterminated string")
            c = self.advance()
            if c == '"':
                return "".join(out)
            if c == "\\":
                if self.pos >= len(self.text):
                    self.error("unterminated string")
                e = self.advance()
                if e not in '"\\':
                    self.error(f"unsupported escape \\{e}")
                out.append(e)
            else:
                out.append(c)

    def read_char(self):
        self.advance()
        self.advance()
        if self.pos >= len(self.text):
            self.error("missing character after #\\")
        first = self.advance()
        name = [first]
        while self.pos < len(self.text) and not self.peek().isspace() and self.peek() not in _DELIMS:
            name.append(self.advance())
        if len(name) == 1:
            return Char(first)
        s = "".join(name).upper()
        if s not in _CHAR_NAMES:
            self.error(f"unknown character name #\\{''.join(name)}")
        return Char(_CHAR_NAMES[s])

    def read_atom(self):
        start = self.pos
        while self.pos < len(self.text) and not self.peek().isspace() and self.peek() not in _DELIMS:
            self.advance()
        tok = self.text[start:self.pos]
        if not tok:
            self.error(f"unexpected character {self.peek()!r}")
        n = _parse_number(tok)
        if n is not None:
            return n
        if "|" in tok or "#" in tok:
            self.error(f"unsupported symbol syntax {tok!r}")
        return Symbol(tok)


def _parse_number(tok: str):
    body = tok[1:] if tok[:1] in "+-" else tok
    if not body:
        return None
    if body.isdigit():
        return int(tok)
    if body.count("/") == 1:
        n, d = body.split("/")
        if n.isdigit() and d.isdigit():
            if int(d) == 0:
                return None
            return mknum(Fraction(int(tok.split("/")[0]), int(d)))
    return None


def read_all(text: str) -> list:
    """Read every S-expression in ``text`` as a list of Values."""
    r = _Reader(text)
    out = []
    while not r.at_end():
        out.append(r.read())
    return out


def read_value(text: str):
    r = _Reader(text)
    v = r.read()
    if not r.at_end():
        r.error("trailing input after expression")
    return v


# ---------------------------------------------------------------------------
# Value <-> Term


class TermError(ValueError):
    pass


def _self_quoting(v) -> bool:
    return (type(v) is not Symbol and type(v) is not Cons) or v is T or v is NIL or v.is_keyword


def value_to_term(v) -> Term:
    """Strict pseudo-term conversion: no macros, constants must be quoted
    unless self-evaluating (numbers, strings, characters, T, NIL, keywords)."""
    if type(v) is Symbol:
        if _self_quoting(v):
            return Quote(v)
        return Var(v)
    if type(v) is not Cons:
        return Quote(v)
    fn = v.car
    if fn is QUOTE:
        rest = v.cdr
        if type(rest) is not Cons or rest.cdr is not NIL:
            raise TermError("QUOTE takes exactly one argument")
        return Quote(rest.car)
    if type(fn) is not Symbol or _self_quoting(fn):
        raise TermError(f"bad function position {show(fn)}")
    if not is_true_list(v.cdr):
        raise TermError("argument list is not a true list")
    return App(fn, tuple(value_to_term(a) for a in to_list(v.cdr)))


def term_to_value(t: Term):
    if type(t) is Var:
        return t.name
    if type(t) is Quote:
        return from_list([QUOTE, t.value])
    return Cons(t.fn, from_list([term_to_value(a) for a in t.args]))


_S = Symbol


def _right_assoc(fn: Symbol, args: list, unit: Term) -> Term:
    if not args:
        return unit
    out = args[-1]
    for a in reversed(args[:-1]):
        out = App(fn, (a, out))
    return out


def _macro(head: str, args: list) -> Term | None:
    """Expand the surface macros the event language accepts."""
    if head == "+":
        if len(args) == 1:
            return App(_S("BINARY-+"), (Quote(0), args[0]))
        return _right_assoc(_S("BINARY-+"), args, Quote(0))
    if head == "*":
        if len(args) == 1:
            return App(_S("BINARY-*"), (Quote(1), args[0]))
        return _right_assoc(_S("BINARY-*"), args, Quote(1))
    if head == "-":
        if len(args) == 1:
            return App(_S("UNARY--"), (args[0],))
        if len(args) == 2:
            return App(_S("BINARY-+"), (args[0], App(_S("UNARY--"), (args[1],))))
        raise TermError("- takes one or two arguments")
    if head == "/":
        if len(args) == 1:
            return App(_S("UNARY-/"), (args[0],))
        if len(args) == 2:
            return App(_S("BINARY-*"), (args[0], App(_S("UNARY-/"), (args[1],))))
        raise TermError("/ takes one or two arguments")
    if head in ("<=", ">=", ">"):
        if len(args) != 2:
            raise TermError(f"{head} takes two arguments")
        a, b = args
        lt = _S("<")
        if head == "<=":
            return App(NOT, (App(lt, (b, a)),))
        if head == ">=":
            return App(NOT, (App(lt, (a, b)),))
        return App(lt, (b, a))
    if head == "AND":
        if not args:
            return QT
        out = args[-1]
        for a in reversed(args[:-1]):
            out = App(IF, (a, out, QNIL))
        return out
    if head == "OR":
        if not args:
            return QNIL
        out = args[-1]
        for a in reversed(args[:-1]):
            out = App(IF, (a, a, out))
        return out
    if head in ("LOGAND", "LOGIOR"):
        if len(args) >= 2:
            return _right_assoc(_S(head), args, Quote(0))
        unit = Quote(-1) if head == "LOGAND" else Quote(0)
        if not args:
            return unit
        return App(_S(head), (args[0], unit))
    if head == "LIST":
        out = QNIL
        for a in reversed(args):
            out = App(_S("CONS"), (a, out))
        return out
    return None


def translate(v) -> Term:
    """Surface syntax to Term: expands +, *, -, /, <=, >=, >, AND, OR, LIST
    and n-ary LOGAND/LOGIOR (right-associated binary calls)."""
    if type(v) is not Cons or v.car is QUOTE:
        return value_to_term(v)
    fn = v.car
    if type(fn) is not Symbol or _self_quoting(fn):
        raise TermError(f"bad function position {show(fn)}")
    if not is_true_list(v.cdr):
        raise TermError("argument list is not a true list")
    args = [translate(a) for a in to_list(v.cdr)]
    m = _macro(fn.name, args)
    if m is not None:
        return m
    return App(fn, tuple(args))


def parse(text: str) -> Term:
    """Parse one term in surface syntax."""
    return translate(read_value(text))


def parse_value(text: str):
    return read_value(text)


# ---------------------------------------------------------------------------
# Printer


def _show_atom(v) -> str:
    tv = type(v)
    if tv is Symbol:
        return v.name
    if tv is int:
        return str(v)
    if tv is Fraction:
        return f"{v.numerator}/{v.denominator}"
    if tv is str:
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if tv is Char:
        return "#\\" + _CHAR_PRINT.get(v.ch, v.ch)
    raise TypeError(f"not a value: {v!r}")


def show_value(v) -> str:
    if type(v) is not Cons:
        return _show_atom(v)
    if v.car is QUOTE and type(v.cdr) is Cons and v.cdr.cdr is NIL:
        return "'" + show_value(v.cdr.car)
    parts = []
    x = v
    while type(x) is Cons:
        parts.append(show_value(x.car))
        x = x.cdr
    if x is not NIL:
        parts.append(".")
        parts.append(show_value(x))
    return "(" + " ".join(parts) + ")"


def show(x) -> str:
    """Canonical text for a Term or Value."""
    tx = type(x)
    if tx is Var:
        return x.name.name
    if tx is Quote:
        return "'" + show_value(x.value)
    if tx is App:
        if not x.args:
            return "(" + x.fn.name + ")"
        return "(" + x.fn.name + " " + " ".join(show(a) for a in x.args) + ")"
    return show_value(x)
