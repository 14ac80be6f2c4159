"""Bundled cross-module checks behind ``seminf verify``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    FiniteAlgebra,
    aperiodic_index,
    compatibility_violation,
    derive_addition,
    infimum,
    inverse_map,
    is_subuniverse,
    natural_order,
    verify_ai_semiring,
)
from .engine import (
    check_identity,
    elimination_soundness,
    identity_transfer_probe,
    semiring_transfer_check,
)
from .errors import SeminfError
from .rook import brandt_b21, cn, mk
from .terms import parse_identity

SUITES = ("lemma1", "lemma2", "theorem-mechanics")


@dataclass
class SuiteReport:
    name: str
    n: int
    seed: int
    rows: list = field(default_factory=list)  # (label, passed, detail)

    def add(self, label: str, passed: bool, detail: str = "") -> None:
        self.rows.append((label, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.rows)

    def lines(self) -> list[str]:
        out = []
        for label, ok, detail in self.rows:
            line = f"{'PASS' if ok else 'FAIL'}  {label}"
            out.append(f"{line}  [{detail}]" if detail else line)
        return out


def _lemma1_rows(report: SuiteReport, S: FiniteAlgebra) -> None:
    tag = S.name
    try:
        S = S.with_inverse()
    except SeminfError as exc:
        report.add(f"{tag}: unique inverses", False, str(exc))
        return
    report.add(f"{tag}: unique inverses", True, f"{S.size} elements")
    try:
        index = aperiodic_index(S)
    except SeminfError as exc:
        report.add(f"{tag}: x^n = x^(n+1) for some n", False, str(exc))
        return
    report.add(f"{tag}: x^n = x^(n+1) for some n", True, f"least n = {index}")

    derived = derive_addition(S, index)
    ai = verify_ai_semiring(S.with_addition(derived))
    bad = [line for line in ai.lines() if line.startswith("FAIL")]
    report.add(f"{tag}: (S, ⊕, ·) is an ai-semiring", ai.passed, "; ".join(bad))

    left = natural_order(S, "left")
    right = natural_order(S, "right")
    report.add(f"{tag}: a = eb and a = bf criteria agree", np.array_equal(left.leq, right.leq))
    comp = compatibility_violation(left)
    report.add(f"{tag}: order compatible with · and ⁻¹", comp is None, "" if comp is None else str(comp))

    n = S.size
    table = derived.table
    inf_ok = all(infimum(left, a, b) == table[a, b] for a in range(n) for b in range(n))
    report.add(f"{tag}: a ⊕ b is the infimum of {{a, b}}", inf_ok)
    below = all(left.leq[table[a, b], a] and left.leq[table[a, b], b]
                for a in range(n) for b in range(n))
    report.add(f"{tag}: a ⊕ b ≤ a and a ⊕ b ≤ b", below)
    stable = all(np.array_equal(derive_addition(S, m).table, table)
                 for m in range(index, index + 4))
    report.add(f"{tag}: ⊕ unchanged for exponents {index}..{index + 3}", stable)


def lemma1(n: int, seed: int = 0, jobs: int = 1) -> SuiteReport:
    report = SuiteReport("lemma1", n, seed)
    _lemma1_rows(report, brandt_b21().base)
    _lemma1_rows(report, cn(n).base)
    return report


def lemma2(n: int, seed: int = 0, jobs: int = 1) -> SuiteReport:
    report = SuiteReport("lemma2", n, seed)
    gen = cn(n)
    C = gen.base
    try:
        inverse_map(C)
        report.add(f"C{n}: unique inverses", True, f"{C.size} elements")
    except SeminfError as exc:
        report.add(f"C{n}: unique inverses", False, str(exc))
    res = check_identity(C, parse_identity("x*x = x*x*x"), jobs=jobs)
    detail = f"{res.evaluations} evaluations"
    if not res.holds:
        detail = f"fails at x = {C.elements[res.counterexample['x']]}"
    report.add(f"C{n} satisfies x*x = x*x*x", res.holds, detail)
    for k in range(1, n + 1):
        subset = mk(n, k, gen)
        check = is_subuniverse(C, subset, with_inverse=True)
        detail = f"{len(subset)} elements"
        if not check:
            detail = f"violation {check.violation}"
        report.add(f"M{k}({n}) closed under · and ⁻¹", bool(check), detail)
        report.add(f"|M{k}({n})| = |C{n}| - 2", len(subset) == C.size - 2,
                   f"{len(subset)} vs {C.size}")
    return report


def theorem_mechanics(n: int, seed: int = 0, jobs: int = 1, nvars: int | None = None,
                      max_size: int = 5, evaluations: int = 1000) -> SuiteReport:
    report = SuiteReport("theorem-mechanics", n, seed)
    nvars = min(2, n - 1) if nvars is None else nvars

    b21 = brandt_b21().base
    index = aperiodic_index(b21)
    b21_ai = b21.with_addition(derive_addition(b21, index))
    elim = elimination_soundness(b21_ai, index, nvars, max_size)
    report.add("⊕-elimination agrees on (B21, ⊕, ·)", elim.passed,
               f"{elim.terms} terms, {elim.evaluations} evaluations, "
               f"{len(elim.mismatches)} mismatches")

    probe = identity_transfer_probe(nvars, max_size, n, seed=seed, jobs=jobs)
    report.add(f"(B21, ·, ⁻¹) identities hold in every M_k({n})", probe.passed,
               f"{probe.identities_checked} identities x {n} subsemigroups, "
               f"{len(probe.violations)} violations")

    tr = semiring_transfer_check(n, nvars, max_size, evaluations, seed=seed, jobs=jobs)
    report.add(f"pigeonhole index exists for every evaluation into C{n}", tr.witness_missing == 0,
               f"{tr.evaluations} evaluations, {tr.witness_missing} without witness")
    report.add(f"evaluated values lie in M_k({n})", tr.outside_mk == 0,
               f"{tr.outside_mk} outside")
    report.add(f"(B21, ⊕, ·) identities hold in (C{n}, ⊕, ·) at sampled points",
               not tr.mismatches,
               f"{tr.identities_checked} identities, {len(tr.mismatches)} mismatches")
    return report


def verify_suite(name: str, n: int, seed: int = 0, jobs: int = 1) -> SuiteReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    if name == "lemma1":
        return lemma1(n, seed, jobs)
    if name == "lemma2":
        return lemma2(n, seed, jobs)
    if name == "theorem-mechanics":
        return theorem_mechanics(n, seed, jobs)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
