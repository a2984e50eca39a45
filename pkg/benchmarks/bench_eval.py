"""Compare the compiled and pure-Python evaluation kernels.

    python3 benchmarks/bench_eval.py [--repeat N] [--envs N]
"""

import argparse
import random
import time

from metakernel import eval as ev
from metakernel.core import Symbol, parse
from metakernel.gen import random_env, random_term
from metakernel.metafns import defstobj_expand
from metakernel.world import EMPTY_WORLD, add_defun


def workloads():
    w = add_defun(Symbol("REV"), (Symbol("X"), Symbol("ACC")),
                  parse("(if (consp x) (rev (cdr x) (cons (car x) acc)) acc)"), EMPTY_WORLD)
    w = add_defun(Symbol("SUM"), (Symbol("N"),),
                  parse("(if (< 0 n) (+ n (sum (+ -1 n))) 0)"), w)
    w = defstobj_expand(Symbol("ST"), [Symbol(f"FLD{i}") for i in range(1, 21)], w)
    big = "'(" + " ".join(str(i) for i in range(200)) + ")"
    yield "recursive list reversal", parse(f"(rev {big} nil)"), w, [{}]
    yield "recursive sum to 500", parse("(sum 500)"), w, [{}]
    yield "stobj read-over-write", parse(
        "(fld3 (update-fld1 1 (update-fld2 2 (update-fld3 3 (update-fld4 4 st)))))"), w, None
    rng = random.Random(0)
    xs = [Symbol("X"), Symbol("Y"), Symbol("Z")]
    yield "random primitive terms", [random_term(5, xs, rng) for _ in range(50)], w, None


def time_kernel(kernel, term, w, envs, repeat):
    terms = term if isinstance(term, list) else [term]
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for t in terms:
            try:
                ev.evaluate_many(t, envs, w, kernel=kernel)
            except ev.EvalError:
                pass
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--envs", type=int, default=200)
    args = ap.parse_args(argv)
    if ev.KERNEL != "cython":
        print("compiled kernel not built; only the pure-Python kernel is available")
    rng = random.Random(1)
    xs = [Symbol("X"), Symbol("Y"), Symbol("Z"), Symbol("ST")]
    sampled = [random_env(xs, rng) for _ in range(args.envs)]
    print(f"{'workload':28s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for name, term, w, envs in workloads():
        envs = sampled if envs is None else envs
        py = time_kernel("python", term, w, envs, args.repeat)
        if ev.KERNEL == "cython":
            cy = time_kernel("cython", term, w, envs, args.repeat)
            print(f"{name:28s} {py:11.4f} {cy:11.4f} {py / cy:7.2f}x")
        else:
            print(f"{name:28s} {py:11.4f} {'-':>11s} {'-':>8s}")


if __name__ == "__main__":
    main()
