# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled evaluation kernel; behaviour matches ``_pyeval.Machine``."""

from . import core
from .core import App, NIL, Quote, Var
from .prims import EvalError, FuelExhausted, UnknownFunction

cdef int MAX_CALL_DEPTH = 1000

cdef object _Quote = Quote
cdef object _Var = Var
cdef object _IF = getattr(core, "IF")
cdef object _NIL = NIL


cdef class Machine:
    cdef public dict defs
    cdef public dict prims
    cdef public long long fuel
    cdef public int depth

    def __init__(self, dict defs, dict prims, long long fuel):
        self.defs = defs
        self.prims = prims
        self.fuel = fuel
        self.depth = 0

    cpdef object ev(self, object term, dict env):
        cdef object tt = type(term)
        cdef tuple args
        cdef list vals
        cdef object fn, prim, d, a, v
        cdef tuple formals
        cdef dict frame
        cdef Py_ssize_t i, n
        if tt is _Quote:
            return term.value
        if tt is _Var:
            v = env.get(term.name, _NIL)
            return v
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted("evaluation fuel exhausted")
        fn = term.fn
        args = term.args
        n = len(args)
        if fn is _IF:
            if n != 3:
                raise EvalError("IF takes three arguments")
            if self.ev(args[0], env) is _NIL:
                return self.ev(args[2], env)
            return self.ev(args[1], env)
        vals = [None] * n
        for i in range(n):
            vals[i] = self.ev(args[i], env)
        prim = self.prims.get(fn)
        if prim is not None:
            if n != <Py_ssize_t>prim[1]:
                raise EvalError(f"{fn.name} takes {prim[1]} arguments")
            return prim[0](*vals)
        d = self.defs.get(fn)
        if d is None:
            raise UnknownFunction(fn.name)
        formals = d[0]
        if len(formals) != n:
            raise EvalError(f"{fn.name} takes {len(formals)} arguments")
        frame = {}
        for i in range(n):
            frame[formals[i]] = vals[i]
        if self.depth >= MAX_CALL_DEPTH:
            raise FuelExhausted("call depth exhausted")
        self.depth += 1
        try:
            return self.ev(d[1], frame)
        finally:
            self.depth -= 1

    def ev_many(self, term, envs, long long fuel):
        cdef list out = []
        for env in envs:
            self.fuel = fuel
            self.depth = 0
            out.append(self.ev(term, env))
        return out
