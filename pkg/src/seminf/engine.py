"""Exhaustive identity checking over finite algebras.

The central object is the fingerprint of a term: its value under every
assignment of elements to a fixed variable list, in lexicographic order with
the last variable running fastest.  Two terms over the same variable list
form an identity of the algebra exactly when their fingerprints agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import FiniteAlgebra
from .errors import BudgetExceeded, SignatureMismatch
from .kernels import OP_ADD, OP_INV, OP_MUL, OP_VAR
from .parallel import ordered_map, split_even
from .terms import Add, Identity, Inv, Mul, Term, Var, compile_term, operations, to_text

SIGNATURE_OPS = ("mul", "inv", "add")
DEFAULT_TERM_BUDGET = 1_000_000
DEFAULT_SAMPLE_CAP = 10_000


def parse_signature(text: str | Iterable[str]) -> frozenset[str]:
    items = text.split(",") if isinstance(text, str) else list(text)
    sig = frozenset(s.strip() for s in items if s.strip())
    unknown = sig - set(SIGNATURE_OPS)
    if unknown:
        raise ValueError(f"unknown operation(s) in signature: {', '.join(sorted(unknown))}")
    return sig


def variable_names(count: int) -> tuple[str, ...]:
    base = ("x", "y", "z", "w", "u", "v")
    if count <= len(base):
        return base[:count]
    return tuple(f"x{i + 1}" for i in range(count))


def require_signature(S: FiniteAlgebra, ops: Iterable[str]) -> None:
    ops = set(ops)
    if "inv" in ops and S.inv is None:
        raise SignatureMismatch(f"{S.name} has no inverse map")
    if "add" in ops and S.add is None:
        raise SignatureMismatch(f"{S.name} has no addition table")


def _tables(S: FiniteAlgebra):
    inv = S.inv if S.inv is not None else np.zeros(1, dtype=np.int32)
    add = S.add if S.add is not None else np.zeros((1, 1), dtype=np.int32)
    return S.mul, inv, add


def assignment_columns(n: int, v: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows = variables, columns = assignments ``start..stop`` in lex order."""
    total = n ** v
    stop = total if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    cols = np.empty((v, len(idx)), dtype=np.int32)
    for i in range(v):
        cols[i] = (idx // n ** (v - 1 - i)) % n
    return cols


def decode_assignment(index: int, n: int, varlist: Sequence[str]) -> dict[str, int]:
    v = len(varlist)
    return {name: (index // n ** (v - 1 - i)) % n for i, name in enumerate(varlist)}


@dataclass(frozen=True, eq=False)
class Fingerprint:
    algebra: str
    varlist: tuple[str, ...]
    values: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, Fingerprint):
            return NotImplemented
        return self.varlist == other.varlist and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.varlist, self.values.tobytes()))


def _fingerprint_values(S: FiniteAlgebra, t: Term, varlist, jobs: int = 1) -> np.ndarray:
    require_signature(S, operations(t))
    program = compile_term(t, varlist)
    total = S.size ** len(varlist)
    if jobs <= 1 or total < 4096:
        return kernels.eval_program(program, *_tables(S), assignment_columns(S.size, len(varlist)))
    chunks = [(c[0], c[-1] + 1) for c in split_even(range(total), jobs)]
    parts = ordered_map(_program_chunk, [(program, S, len(varlist), a, b) for a, b in chunks], jobs)
    return np.concatenate(parts)


def _program_chunk(args):
    program, S, v, start, stop = args
    return kernels.eval_program(program, *_tables(S), assignment_columns(S.size, v, start, stop))


def fingerprint(S: FiniteAlgebra, t: Term, varlist: Sequence[str], jobs: int = 1) -> Fingerprint:
    varlist = tuple(varlist)
    return Fingerprint(S.name, varlist, _fingerprint_values(S, t, varlist, jobs))


@dataclass(frozen=True)
class CheckReport:
    verdict: str  # "holds" | "fails"
    counterexample: dict[str, int] | None
    evaluations: int
    lhs_value: int | None = None
    rhs_value: int | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def check_identity(S: FiniteAlgebra, identity: Identity, jobs: int = 1) -> CheckReport:
    """Evaluate both sides under all |S|^v assignments."""
    varlist = identity.variables
    require_signature(S, operations(identity.lhs) | operations(identity.rhs))
    left = _fingerprint_values(S, identity.lhs, varlist, jobs)
    right = _fingerprint_values(S, identity.rhs, varlist, jobs)
    bad = np.flatnonzero(left != right)
    total = S.size ** len(varlist)
    if not len(bad):
        return CheckReport("holds", None, total)
    i = int(bad[0])
    return CheckReport("fails", decode_assignment(i, S.size, varlist), total,
                       int(left[i]), int(right[i]))


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True, eq=False)
class TermTable:
    """All terms up to a size bound, as one straight-line program.

    ``terms[i]`` is computed by ``program[i]``; ``canonical`` lists the
    indices of terms whose variables first occur in the order x, y, z, ...
    """

    varnames: tuple[str, ...]
    signature: frozenset[str]
    max_size: int
    terms: list
    sizes: list
    program: np.ndarray
    canonical: list


def _is_canonical(t: Term, slot: dict[str, int]) -> bool:
    nxt = 0
    seen = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            if node.name not in seen:
                if slot[node.name] != nxt:
                    return False
                seen.add(node.name)
                nxt += 1
        elif isinstance(node, Inv):
            stack.append(node.child)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return True


def enumerate_term_table(nvars: int, max_size: int, signature,
                         budget: int = DEFAULT_TERM_BUDGET) -> TermTable:
    """Enumerate terms by size, then structure (Var < Inv < Mul < Add).

    Size counts variable occurrences and inversions.  Binary nodes are
    ordered by their left child, then their right child, both in this same
    order.
    """
    if nvars < 1 or max_size < 1:
        raise ValueError("need at least one variable and max_size >= 1")
    sig = parse_signature(signature)
    names = variable_names(nvars)
    slot = {nm: i for i, nm in enumerate(names)}
    terms: list = []
    sizes: list = []
    rows: list = []
    by_size: dict[int, list[int]] = {}

    def push(t, row, s):
        if len(terms) >= budget:
            raise BudgetExceeded(f"more than {budget} terms at max_size={max_size}")
        terms.append(t)
        rows.append(row)
        sizes.append(s)
        by_size[s].append(len(terms) - 1)

    for s in range(1, max_size + 1):
        by_size[s] = []
        if s == 1:
            for i, nm in enumerate(names):
                push(Var(nm), (OP_VAR, i, 0), 1)
            continue
        if "inv" in sig:
            for c in by_size[s - 1]:
                push(Inv(terms[c]), (OP_INV, c, 0), s)
        for op, cls, code in (("mul", Mul, OP_MUL), ("add", Add, OP_ADD)):
            if op not in sig:
                continue
            for ls in range(1, s):
                for a in by_size[ls]:
                    for b in by_size[s - ls]:
                        push(cls(terms[a], terms[b]), (code, a, b), s)
    canonical = [i for i, t in enumerate(terms) if _is_canonical(t, slot)]
    program = np.array(rows, dtype=np.int32).reshape(-1, 3)
    return TermTable(names, sig, max_size, terms, sizes, program, canonical)


def enumerate_terms(nvars: int, max_size: int, signature, budget: int = DEFAULT_TERM_BUDGET) -> list:
    table = enumerate_term_table(nvars, max_size, signature, budget)
    return [table.terms[i] for i in table.canonical]


def _registers_chunk(args):
    program, S, v, start, stop = args
    return kernels.eval_registers(program, *_tables(S), assignment_columns(S.size, v, start, stop))


def term_values(S: FiniteAlgebra, table: TermTable, jobs: int = 1) -> np.ndarray:
    """Fingerprints of every term in ``table``: shape (terms, |S|^vars).

    With ``jobs > 1`` the assignment space is split into contiguous slices
    evaluated in worker processes and concatenated in order.
    """
    require_signature(S, table.signature)
    v = len(table.varnames)
    total = S.size ** v
    if jobs <= 1 or total < 64:
        return kernels.eval_registers(table.program, *_tables(S), assignment_columns(S.size, v))
    chunks = [(c[0], c[-1] + 1) for c in split_even(range(total), jobs)]
    parts = ordered_map(_registers_chunk, [(table.program, S, v, a, b) for a, b in chunks], jobs)
    return np.concatenate(parts, axis=1)


def values_at(S: FiniteAlgebra, table: TermTable, varvals: np.ndarray) -> np.ndarray:
    """Values of every term in ``table`` at the given assignment columns."""
    require_signature(S, table.signature)
    return kernels.eval_registers(table.program, *_tables(S), np.ascontiguousarray(varvals, dtype=np.int32))


# ------------------------------------------------------------------ spectrum

@dataclass(frozen=True, eq=False)
class Spectrum:
    algebra: str
    table: TermTable
    classes: list  # lists of term indices into table.terms, each in enumeration order

    @property
    def representatives(self) -> list:
        return [self.table.terms[c[0]] for c in self.classes]

    def identities(self) -> list[Identity]:
        """rep = member for every non-representative member of every class."""
        out = []
        for cls in self.classes:
            rep = self.table.terms[cls[0]]
            out.extend(Identity(rep, self.table.terms[i]) for i in cls[1:])
        return out

    def identity_pairs(self) -> list[tuple[int, int]]:
        return [(cls[0], i) for cls in self.classes for i in cls[1:]]

    @property
    def term_count(self) -> int:
        return len(self.table.canonical)


def _group(values: np.ndarray, indices: Sequence[int]) -> list[list[int]]:
    # bytes keys: dict hashing plus full comparison on collision
    classes: dict[bytes, list[int]] = {}
    for i in indices:
        classes.setdefault(values[i].tobytes(), []).append(i)
    return list(classes.values())


def identity_spectrum(S: FiniteAlgebra, nvars: int, max_size: int, signature,
                      budget: int = DEFAULT_TERM_BUDGET, jobs: int = 1) -> Spectrum:
    """Partition the enumerated terms by fingerprint in ``S``."""
    table = enumerate_term_table(nvars, max_size, signature, budget)
    values = term_values(S, table, jobs)
    return Spectrum(S.name, table, _group(values, table.canonical))


@dataclass(frozen=True)
class Separation:
    identity: Identity
    counterexample: dict[str, int]
    lhs_value: int
    rhs_value: int


def find_separating_identity(A: FiniteAlgebra, B: FiniteAlgebra, nvars: int, max_size: int,
                             signature, budget: int = DEFAULT_TERM_BUDGET,
                             jobs: int = 1) -> Separation | None:
    """First identity (in enumeration order) true in A and false in B.

    For each term t, the candidate partner is the representative r of t's
    class in A; the pair is reported when r and t differ somewhere in B.
    B-fingerprints are only computed for terms in non-singleton A-classes.
    """
    table = enumerate_term_table(nvars, max_size, signature, budget)
    require_signature(B, table.signature)
    a_values = term_values(A, table, jobs)
    varlist = table.varnames
    b_cache: dict[int, np.ndarray] = {}

    def b_fp(i):
        if i not in b_cache:
            b_cache[i] = _fingerprint_values(B, table.terms[i], varlist, jobs)
        return b_cache[i]

    reps: dict[bytes, int] = {}
    for i in table.canonical:
        key = a_values[i].tobytes()
        r = reps.setdefault(key, i)
        if r == i:
            continue
        left, right = b_fp(r), b_fp(i)
        bad = np.flatnonzero(left != right)
        if len(bad):
            j = int(bad[0])
            ident = Identity(table.terms[r], table.terms[i])
            full = decode_assignment(j, B.size, varlist)
            used = ident.variables
            return Separation(ident, {v: full[v] for v in varlist if v in used},
                              int(left[j]), int(right[j]))
    return None


# ----------------------------------------------------- proof mechanics on C_n

def pigeonhole_witness(gen, values: Iterable[int] | dict) -> int | None:
    """Smallest k such that neither c_k nor its inverse is among ``values``.

    ``gen`` is the GeneratedAlgebra of C_n (its generators are c_1..c_n).
    """
    if isinstance(values, dict):
        values = values.values()
    used = {int(v) for v in values}
    inv = gen.base.inv
    for k, g in enumerate(gen.generators, start=1):
        if g not in used and int(inv[g]) not in used:
            return k
    return None


def _sample(count: int, cap: int, seed: int) -> tuple[list[int], bool]:
    if count <= cap:
        return list(range(count)), False
    rng = np.random.default_rng(seed)
    return sorted(int(i) for i in rng.choice(count, size=cap, replace=False)), True


@dataclass
class TransferReport:
    n: int
    nvars: int
    max_size: int
    seed: int
    terms: int = 0
    classes: int = 0
    identities_total: int = 0
    identities_checked: int = 0
    sampled: bool = False
    per_k: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)  # (k, identity text, counterexample)

    @property
    def passed(self) -> bool:
        return not self.violations


def identity_transfer_probe(nvars: int, max_size: int, n: int, seed: int = 0,
                            sample_cap: int = DEFAULT_SAMPLE_CAP, jobs: int = 1,
                            budget: int = DEFAULT_TERM_BUDGET) -> TransferReport:
    """Check bounded-size identities of (B21, ·, ⁻¹) on every M_k(n)."""
    from .rook import brandt_b21, cn, mk_algebra

    if n < 2:
        raise ValueError("n must be at least 2")
    b21 = brandt_b21().base
    spectrum = identity_spectrum(b21, nvars, max_size, {"mul", "inv"}, budget, jobs)
    pairs = spectrum.identity_pairs()
    chosen, sampled = _sample(len(pairs), sample_cap, seed)
    report = TransferReport(n, nvars, max_size, seed, spectrum.term_count, len(spectrum.classes),
                            len(pairs), len(chosen), sampled)
    gen = cn(n)
    table = spectrum.table
    for k in range(1, n + 1):
        M = mk_algebra(n, k, gen)
        values = term_values(M, table, jobs)
        for p in chosen:
            r, i = pairs[p]
            bad = np.flatnonzero(values[r] != values[i])
            if len(bad):
                ce = decode_assignment(int(bad[0]), M.size, table.varnames)
                ident = Identity(table.terms[r], table.terms[i])
                report.violations.append(
                    (k, to_text(ident), {v: M.elements[e] for v, e in ce.items() if v in ident.variables}))
        report.per_k[k] = len(chosen)
    return report


@dataclass
class SemiringTransferReport:
    n: int
    nvars: int
    max_size: int
    seed: int
    evaluations: int
    identities_total: int = 0
    identities_checked: int = 0
    sampled: bool = False
    witness_missing: int = 0
    outside_mk: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (self.witness_missing or self.outside_mk or self.mismatches)


def semiring_transfer_check(n: int, nvars: int, max_size: int, evaluations: int = 1000,
                            seed: int = 0, sample_cap: int = DEFAULT_SAMPLE_CAP,
                            jobs: int = 1, budget: int = DEFAULT_TERM_BUDGET) -> SemiringTransferReport:
    """Transfer bounded (+, ·)-identities of B21 to (C_n, ⊕, ·) at random points.

    For each seeded random evaluation into C_n the pigeonhole index k must
    exist, the assigned values must lie in M_k(n), and every sampled identity
    must evaluate to equal sides.
    """
    from .algebra import aperiodic_index, derive_addition
    from .rook import brandt_b21, cn, mk

    if nvars >= n:
        raise ValueError("the pigeonhole argument needs fewer variables than n")
    b21 = brandt_b21().base
    b21 = b21.with_addition(derive_addition(b21, aperiodic_index(b21)))
    spectrum = identity_spectrum(b21, nvars, max_size, {"mul", "add"}, budget, jobs)
    pairs = spectrum.identity_pairs()
    chosen, sampled = _sample(len(pairs), sample_cap, seed)
    report = SemiringTransferReport(n, nvars, max_size, seed, evaluations,
                                    len(pairs), len(chosen), sampled)
    gen = cn(n)
    C = gen.base.with_addition(derive_addition(gen.base, aperiodic_index(gen.base)))
    rng = np.random.default_rng(seed)
    points = rng.integers(0, C.size, size=(nvars, evaluations), dtype=np.int64).astype(np.int32)
    members = {k: set(mk(n, k, gen)) for k in range(1, n + 1)}
    for j in range(evaluations):
        vals = points[:, j].tolist()
        k = pigeonhole_witness(gen, vals)
        if k is None:
            report.witness_missing += 1
        elif not set(vals) <= members[k]:
            report.outside_mk += 1
    values = values_at(C, spectrum.table, points)
    for p in chosen:
        r, i = pairs[p]
        bad = np.flatnonzero(values[r] != values[i])
        if len(bad):
            ident = Identity(spectrum.table.terms[r], spectrum.table.terms[i])
            j = int(bad[0])
            report.mismatches.append(
                (to_text(ident), {v: C.elements[points[x, j]] for x, v in enumerate(spectrum.table.varnames)}))
    return report


@dataclass
class EliminationReport:
    algebra: str
    exponent: int
    terms: int = 0
    evaluations: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches


def elimination_soundness(S: FiniteAlgebra, exponent: int, nvars: int, max_size: int,
                          budget: int = DEFAULT_TERM_BUDGET) -> EliminationReport:
    """Every term over {·, ⁻¹, +} agrees with its +-free rewrite in S.

    ``S`` must carry an inverse map and the derived addition for
    ``exponent``; the rewrite is evaluated without touching ``S.add``.
    """
    from .terms import eliminate_addition

    table = enumerate_term_table(nvars, max_size, {"mul", "inv", "add"}, budget)
    values = term_values(S, table)
    plain = S.replace(add=None)
    cols = assignment_columns(S.size, nvars)
    report = EliminationReport(S.name, exponent)
    for i in table.canonical:
        t = table.terms[i]
        rewritten = eliminate_addition(t, exponent)
        got = kernels.eval_program(compile_term(rewritten, table.varnames), *_tables(plain), cols)
        report.terms += 1
        report.evaluations += len(got)
        if not np.array_equal(got, values[i]):
            report.mismatches.append(to_text(t))
    return report
