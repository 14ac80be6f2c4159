import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seminf.algebra import (
    AiAdditionTable,
    FiniteAlgebra,
    aperiodic_index,
    compatibility_violation,
    derive_addition,
    find_all_ai_additions,
    idempotents,
    infimum,
    inverse_map,
    is_subuniverse,
    natural_order,
    validate_table,
    verify_ai_semiring,
)
from seminf.errors import (
    BadIndex,
    DuplicateName,
    ExponentTooSmall,
    NonAssociative,
    NonUniqueInverse,
    NotAperiodic,
)
from seminf.rook import mk

import oracles

TRIVIAL = validate_table(["e"], [[0]], "T")
Z2 = validate_table(["1", "g"], [[0, 1], [1, 0]], "Z2")
AND = validate_table(["0", "1"], [[0, 0], [0, 1]], "AND")


def semilattice_chain(n):
    return validate_table([f"s{i}" for i in range(n)],
                          [[min(a, b) for b in range(n)] for a in range(n)], f"chain{n}")


def size4_samples():
    out = [semilattice_chain(4)]
    out.append(validate_table(list("abcd"), [[a] * 4 for a in range(4)], "leftzero4"))
    out.append(validate_table(list("abcd"), [[(a + b) % 4 for b in range(4)] for a in range(4)], "Z4"))
    # 2x2 product of two-element semilattices
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    mul = [[pairs.index((min(p[0], q[0]), min(p[1], q[1]))) for q in pairs] for p in pairs]
    out.append(validate_table(list("abcd"), mul, "AND2"))
    # zero product except d*d = d
    out.append(validate_table(list("abcd"), [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]], "null"))
    return out


# ------------------------------------------------------------ validation

def test_b21_table_valid(b21):
    S = validate_table(b21.elements, b21.mul, "B21")
    assert S.size == 6
    assert TRIVIAL.size == 1


def test_nonassociative_reports_first_triple():
    with pytest.raises(NonAssociative) as info:
        validate_table(["a", "b"], [[1, 1], [0, 0]])
    assert info.value.triple == (0, 0, 0)


def test_bad_tables():
    with pytest.raises(BadIndex):
        FiniteAlgebra("S", ("a", "b"), [[0, 2], [0, 0]])
    with pytest.raises(BadIndex):
        FiniteAlgebra("S", ("a", "b"), [[0, 1]])
    with pytest.raises(DuplicateName):
        FiniteAlgebra("S", ("a", "a"), [[0, 0], [0, 0]])
    with pytest.raises(DuplicateName):
        FiniteAlgebra("S", ("a", ""), [[0, 0], [0, 0]])


def test_tables_are_read_only(b21):
    with pytest.raises(ValueError):
        b21.mul[0, 0] = 1


# -------------------------------------------------------------- inverses

def test_inverse_map_b21(b21):
    inv = inverse_map(b21)
    names = b21.elements
    assert {names[a]: names[inv[a]] for a in range(6)} == {
        "0": "0", "E": "E", "E12": "E21", "E21": "E12", "E11": "E11", "E22": "E22"}
    assert (b21.inv == inv).all()


def test_inverse_map_trivial():
    assert inverse_map(TRIVIAL).tolist() == [0]


def test_left_zero_has_many_inverses():
    left_zero = validate_table(["a", "b"], [[0, 0], [1, 1]])
    with pytest.raises(NonUniqueInverse):
        inverse_map(left_zero)
    assert oracles.inverses(left_zero.mul.tolist())[0] == [0, 1]


def test_inverse_map_matches_oracle(c2_gen):
    S = c2_gen.base
    cands = oracles.inverses(S.mul.tolist())
    assert all(len(c) == 1 for c in cands)
    assert inverse_map(S).tolist() == [c[0] for c in cands]


def test_idempotents():
    assert [TRIVIAL.elements[e] for e in idempotents(TRIVIAL)] == ["e"]
    assert idempotents(Z2) == [0]
    assert idempotents(semilattice_chain(5)) == list(range(5))


def test_idempotents_b21(b21):
    assert {b21.elements[e] for e in idempotents(b21)} == {"0", "E", "E11", "E22"}


# ----------------------------------------------------------------- order

def test_natural_order_examples(b21):
    order = natural_order(b21)
    ix = b21.index
    assert all(order(ix("0"), b) for b in range(6))
    assert order(ix("E11"), ix("E"))
    assert not order(ix("E12"), ix("E"))


@pytest.mark.parametrize("name", ["b21", "c2", "c3"])
def test_natural_order_properties(name, b21, c2_gen, c3_gen):
    S = {"b21": b21, "c2": c2_gen.base, "c3": c3_gen.base}[name]
    leq = natural_order(S).leq
    assert leq.tolist() == oracles.naive_order(S.mul.tolist())
    assert np.array_equal(leq, natural_order(S, "right").leq)
    assert leq.diagonal().all()
    assert not (leq & leq.T & ~np.eye(S.size, dtype=bool)).any()
    closure = (leq.astype(int) @ leq.astype(int)) > 0
    assert np.array_equal(closure, leq)
    assert compatibility_violation(natural_order(S)) is None


def test_infimum_examples(b21):
    order = natural_order(b21)
    ix = b21.index
    assert infimum(order, ix("E12"), ix("E21")) == ix("0")
    assert infimum(order, ix("E"), ix("E11")) == ix("E11")
    assert all(infimum(order, a, a) == a for a in range(6))


def test_infimum_missing_returns_none():
    # in a group the order is equality, so distinct elements have no lower bound
    order = natural_order(Z2)
    assert infimum(order, 0, 1) is None


def test_covers_and_dot(b21):
    order = natural_order(b21)
    names = b21.elements
    covers = {(names[a], names[b]) for a, b in order.covers()}
    assert covers == {("0", "E12"), ("0", "E21"), ("0", "E11"), ("0", "E22"),
                      ("E11", "E"), ("E22", "E")}
    dot = order.to_dot()
    assert dot.startswith('digraph "B21" {')
    assert dot.count("->") == 6
    assert 'label="E12"' in dot


# ------------------------------------------------------------ aperiodic

def test_aperiodic_index(b21):
    assert aperiodic_index(b21) == 2
    assert b21.power(b21.index("E12"), 1) != b21.power(b21.index("E12"), 2)
    assert aperiodic_index(TRIVIAL) == 1
    with pytest.raises(NotAperiodic):
        aperiodic_index(Z2)


def test_aperiodic_index_cn(c2_gen, c3_gen):
    assert aperiodic_index(c2_gen.base) == 2
    assert aperiodic_index(c3_gen.base) == 2


def test_aperiodic_index_long_chain():
    # i*j = min(i + j + 1, 4), so a^k = min(k - 1, 4) and a^5 = a^6 first
    S = validate_table(list("abcde"),
                       [[min(a + b + 1, 4) for b in range(5)] for a in range(5)])
    assert aperiodic_index(S) == 5


# ------------------------------------------------------------- addition

def test_derive_addition_examples(b21):
    add = derive_addition(b21, 2)
    ix = b21.index
    assert add.table[ix("E12"), ix("E21")] == ix("0")
    assert (add.table[ix("0")] == ix("0")).all()
    assert (add.table.diagonal() == np.arange(6)).all()
    assert add.provenance == "derived-from-power-2"


def test_derive_addition_matrix_oracle(b21_gen):
    b = b21_gen.base
    mats = [p.to_matrix() for p in b21_gen.reps]
    index = {m.tobytes(): i for i, m in enumerate(mats)}
    add = derive_addition(b, 2).table
    for a in range(6):
        for c in range(6):
            step = mats[a] @ mats[c].T
            want = step @ step @ mats[a]
            assert add[a, c] == index[want.tobytes()]


def test_derive_addition_exponent_checks(b21):
    with pytest.raises(ExponentTooSmall):
        derive_addition(b21, 1)
    with pytest.raises(ExponentTooSmall):
        derive_addition(b21, 0)


@pytest.mark.parametrize("name", ["b21", "c2", "c3"])
def test_lemma1_properties(name, b21, c2_gen, c3_gen):
    S = {"b21": b21, "c2": c2_gen.base, "c3": c3_gen.base}[name]
    index = aperiodic_index(S)
    add = derive_addition(S, index)
    for m in range(index, index + 4):
        assert derive_addition(S, m) == add
    order = natural_order(S)
    leq = order.leq.tolist()
    for a in range(S.size):
        for b in range(S.size):
            assert add.table[a, b] == oracles.naive_infimum(leq, a, b)
            assert order(add.table[a, b], a) and order(add.table[a, b], b)
    assert verify_ai_semiring(S.with_addition(add)).passed


def test_find_all_additions_examples(b21):
    found = find_all_ai_additions(b21)
    assert found == [derive_addition(b21, 2)]
    assert found[0].provenance == "found-by-search"
    tables = [t.table.tolist() for t in find_all_ai_additions(AND)]
    assert tables == [[[0, 0], [0, 1]], [[0, 1], [1, 1]]]  # AND, OR
    assert [t.table.tolist() for t in find_all_ai_additions(TRIVIAL)] == [[[0]]]


def test_find_all_additions_jobs_independent(b21, c2_gen):
    for S in (b21, c2_gen.base):
        assert find_all_ai_additions(S, jobs=1) == find_all_ai_additions(S, jobs=3)


@pytest.mark.parametrize("S", size4_samples(), ids=lambda s: s.name)
def test_search_matches_brute_force_size4(S):
    found = [t.table.tolist() for t in find_all_ai_additions(S)]
    assert found == oracles.brute_additions(S.mul.tolist())
    for t in find_all_ai_additions(S):
        assert verify_ai_semiring(S.with_addition(t)).passed


def _permuted(S, perm):
    # element perm[i] of S becomes element i
    pos = np.argsort(perm)
    mul = pos[S.mul[np.ix_(perm, perm)]]
    return FiniteAlgebra(S.name, tuple(S.elements[i] for i in perm), mul)


@settings(max_examples=15, deadline=None)
@given(st.permutations(range(6)))
def test_search_permutation_invariant(perm):
    from seminf.rook import brandt_b21
    S = brandt_b21().base
    perm = np.array(perm)
    P = _permuted(S, perm)
    pos = np.argsort(perm)
    mapped = sorted(pos[t.table[np.ix_(perm, perm)]].tolist() for t in find_all_ai_additions(S))
    assert mapped == sorted(t.table.tolist() for t in find_all_ai_additions(P))


def test_verify_ai_semiring_reports(b21):
    rep = verify_ai_semiring(b21.with_addition(derive_addition(b21, 2)))
    assert rep.passed
    assert rep.lines()[0] == "PASS add-commutative"
    bad = verify_ai_semiring(b21.with_addition(b21.mul))
    assert not bad.passed
    assert bad.results["add-commutative"] == (b21.index("E12"), b21.index("E21"))
    assert "FAIL add-commutative at (E12, E21)" in bad.lines()
    assert verify_ai_semiring(TRIVIAL.with_addition([[0]])).passed
    with pytest.raises(ValueError):
        verify_ai_semiring(b21)


def test_addition_table_equality(b21):
    a = derive_addition(b21, 2)
    assert a == AiAdditionTable(a.table.copy(), "other")
    assert a == derive_addition(b21, 3)
    assert a != AiAdditionTable(b21.mul, "other")


# ----------------------------------------------------------- subuniverse

def test_is_subuniverse(c2_gen):
    C = c2_gen.base
    assert is_subuniverse(C, mk(2, 1, c2_gen), with_inverse=True)
    assert is_subuniverse(C, range(C.size), with_inverse=True)
    zero = C.index("0")
    check = is_subuniverse(C, [i for i in range(C.size) if i != zero])
    assert not check
    assert check.violation[0] == "mul"
    c1 = C.index("c1")
    assert check.violation == ("mul", c1, c1)
    assert not is_subuniverse(C, [c1], with_inverse=False)


def test_restrict(b21):
    keep = [b21.index(e) for e in ("0", "E", "E11", "E22")]
    sub = b21.restrict(keep, name="D")
    assert sub.elements == ("0", "E", "E11", "E22")
    assert idempotents(sub) == [0, 1, 2, 3]
    with pytest.raises(BadIndex):
        b21.restrict([b21.index("E12")])
