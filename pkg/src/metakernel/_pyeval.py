"""Pure-Python evaluation kernel.  ``_ceval.pyx`` is the compiled twin."""

from .core import IF, NIL, Quote, Var
from .prims import EvalError, FuelExhausted, UnknownFunction

MAX_CALL_DEPTH = 1000


class Machine:
    __slots__ = ("defs", "prims", "fuel", "depth")

    def __init__(self, defs, prims, fuel):
        self.defs = defs
        self.prims = prims
        self.fuel = fuel
        self.depth = 0

    def ev(self, term, env):
        tt = type(term)
        if tt is Quote:
            return term.value
        if tt is Var:
            return env.get(term.name, NIL)
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted("evaluation fuel exhausted")
        fn = term.fn
        args = term.args
        if fn is IF:
            if len(args) != 3:
                raise EvalError("IF takes three arguments")
            if self.ev(args[0], env) is NIL:
                return self.ev(args[2], env)
            return self.ev(args[1], env)
        vals = [self.ev(a, env) for a in args]
        prim = self.prims.get(fn)
        if prim is not None:
            if len(vals) != prim[1]:
                raise EvalError(f"{fn.name} takes {prim[1]} arguments")
            return prim[0](*vals)
        d = self.defs.get(fn)
        if d is None:
            raise UnknownFunction(fn.name)
        formals, body = d
        if len(formals) != len(vals):
            raise EvalError(f"{fn.name} takes {len(formals)} arguments")
        if self.depth >= MAX_CALL_DEPTH:
            raise FuelExhausted("call depth exhausted")
        self.depth += 1
        try:
            return self.ev(body, dict(zip(formals, vals)))
        finally:
            self.depth -= 1

    def ev_many(self, term, envs, fuel):
        out = []
        for env in envs:
            self.fuel = fuel
            self.depth = 0
            out.append(self.ev(term, env))
        return out
