"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on one input with both backends (best of N) and
checks that they return identical results.
"""

import argparse
import timeit

import numpy as np

from seminf.algebra import derive_addition
from seminf.engine import _tables, assignment_columns, enumerate_term_table
from seminf.kernels import backends
from seminf.rook import brandt_b21, cn
from seminf.terms import compile_term, parse_term


def cases():
    b21 = brandt_b21().base
    c2, c3, c4 = (cn(n).base for n in (2, 3, 4))
    c3ai = c3.with_addition(derive_addition(c3, 2))
    table = enumerate_term_table(2, 5, "mul,inv")
    big = enumerate_term_table(2, 4, "mul,add")
    term = compile_term(parse_term("(x*y'+y*x)*(x+y)*x'"), ("x", "y"))
    return [
        ("first_nonassociative", "C4 (98 elements)", "first_nonassociative", (np.ascontiguousarray(c4.mul),)),
        ("semiring_violations", "C3 derived addition", "semiring_violations", (c3ai.mul, c3ai.add)),
        ("search_additions", "B21", "search_additions", (np.ascontiguousarray(b21.mul),)),
        ("search_additions", "C2 (34 elements)", "search_additions", (np.ascontiguousarray(c2.mul),)),
        ("search_additions", "C3 (62 elements)", "search_additions", (np.ascontiguousarray(c3.mul),)),
        ("eval_registers", f"B21, {len(table.terms)} terms over 2 vars", "eval_registers",
         (table.program, *_tables(b21), assignment_columns(6, 2))),
        ("eval_registers", f"C3, {len(big.terms)} terms over 2 vars", "eval_registers",
         (big.program, *_tables(c3ai), assignment_columns(62, 2))),
        ("eval_program", "C3 fingerprint of one term, 3844 points", "eval_program",
         (term, *_tables(c3ai), assignment_columns(62, 2))),
    ]


def same(a, b):
    if isinstance(a, list):
        return len(a) == len(b) and all(np.array_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    impls = backends()
    if "cython" not in impls:
        print("compiled extension not built; only the fallback is available")
    names = sorted(impls)
    header = f"{'kernel':<22} {'input':<38} " + " ".join(f"{n + ' ms':>12}" for n in names)
    if len(names) == 2:
        header += f" {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for kernel, label, fn, argv in cases():
        times = {}
        results = {}
        for name in names:
            f = getattr(impls[name], fn)
            results[name] = f(*argv)
            times[name] = min(timeit.repeat(lambda: f(*argv), number=1, repeat=args.repeat)) * 1e3
        row = f"{kernel:<22} {label:<38} " + " ".join(f"{times[n]:>12.3f}" for n in names)
        if len(names) == 2:
            row += f" {times['python'] / times['cython']:>8.1f}x"
        values = list(results.values())
        if not all(same(values[0], v) for v in values[1:]):
            row += "  RESULTS DIFFER"
        print(row)


if __name__ == "__main__":
    main()
