import itertools

import numpy as np
import pytest

from seminf import kernels
from seminf.algebra import derive_addition
from seminf.engine import assignment_columns
from seminf.terms import compile_term, parse_term

import oracles


def _table(rows):
    return np.ascontiguousarray(rows, dtype=np.int32)


def test_backend_selected():
    assert kernels.BACKEND in kernels.backends()
    assert "python" in kernels.backends()


def test_first_nonassociative(backend, b21):
    assert backend.first_nonassociative(b21.mul) is None
    # a*a = b, a*b = b, b*a = a, b*b = a
    assert backend.first_nonassociative(_table([[1, 1], [0, 0]])) == (0, 0, 0)


def test_first_nonassociative_is_lex_first(backend):
    rng = np.random.default_rng(3)
    for _ in range(50):
        mul = _table(rng.integers(0, 4, size=(4, 4)))
        expected = None
        for a, b, c in itertools.product(range(4), repeat=3):
            if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                expected = (a, b, c)
                break
        assert backend.first_nonassociative(mul) == expected


def test_semiring_violations_match(b21):
    add = derive_addition(b21, 2).table
    rng = np.random.default_rng(7)
    impls = kernels.backends()
    cases = [(b21.mul, add), (b21.mul, b21.mul)]
    cases += [(b21.mul, _table(rng.integers(0, 6, size=(6, 6)))) for _ in range(20)]
    for mul, table in cases:
        results = [impl.semiring_violations(mul, table) for impl in impls.values()]
        assert all(r == results[0] for r in results)


def test_semiring_violations_derived_passes(backend, b21):
    add = derive_addition(b21, 2).table
    assert all(v is None for v in backend.semiring_violations(b21.mul, add).values())
    bad = backend.semiring_violations(b21.mul, b21.mul)
    assert bad["add-commutative"] == (2, 3)


def test_eval_program_matches_oracle(backend, b21):
    b = b21.with_addition(derive_addition(b21, 2))
    t = parse_term("(x*y')+(y*x)*x")
    nested = ("add", ("mul", "x", ("inv", "y")), ("mul", ("mul", "y", "x"), "x"))
    prog = compile_term(t, ("x", "y"))
    cols = assignment_columns(6, 2)
    got = backend.eval_program(prog, b.mul, b.inv, b.add, cols)
    want = [oracles.eval_term(nested, {"x": x, "y": y}, b.mul, b.inv, b.add)
            for x in range(6) for y in range(6)]
    assert got.tolist() == want
    regs = backend.eval_registers(prog, b.mul, b.inv, b.add, cols)
    assert regs.shape == (len(prog), 36)
    assert regs[-1].tolist() == want


def test_search_backends_agree(b21, c2_gen):
    impls = kernels.backends()
    for mul in (b21.mul, c2_gen.base.mul, _table([[0, 0], [0, 1]])):
        found = [[t.tolist() for t in impl.search_additions(np.ascontiguousarray(mul))]
                 for impl in impls.values()]
        assert all(f == found[0] for f in found)


def test_search_first_values_partition(backend, b21):
    mul = np.ascontiguousarray(b21.mul)
    whole = [t.tolist() for t in backend.search_additions(mul)]
    parts = []
    for v in range(6):
        parts += [t.tolist() for t in backend.search_additions(mul, [v])]
    assert sorted(parts) == sorted(whole)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_matches_brute_force_on_small_semigroups(backend, n):
    for mul in oracles.all_semigroups(n):
        found = sorted(t.tolist() for t in backend.search_additions(_table(mul)))
        assert found == oracles.brute_additions(mul), mul
