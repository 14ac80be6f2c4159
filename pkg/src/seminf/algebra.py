"""Finite algebras given by Cayley tables.

Elements are identified by their index into ``FiniteAlgebra.elements``;
names are labels only.  An algebra always has a multiplication table and may
carry an inversion map and an addition table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadIndex,
    DuplicateName,
    ExponentTooSmall,
    NoInverse,
    NonAssociative,
    NonUniqueInverse,
    NotAperiodic,
)
from .parallel import ordered_map, split_even


def _frozen_table(table, shape, what: str) -> np.ndarray:
    arr = np.array(table, dtype=np.int64)
    if arr.shape != shape:
        raise BadIndex(f"{what} table has shape {arr.shape}, expected {shape}")
    n = shape[0]
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise BadIndex(f"{what} table refers to an element index outside 0..{n - 1}")
    arr = arr.astype(np.int32)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """A finite set with ``mul`` and optional ``inv`` / ``add`` tables.

    Construction checks table shapes, index ranges and element names, but not
    associativity; use :func:`validate_table` for that.
    """

    name: str
    elements: tuple[str, ...]
    mul: np.ndarray
    inv: np.ndarray | None = None
    add: np.ndarray | None = None

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise BadIndex("an algebra needs at least one element")
        seen = set()
        for e in elements:
            if not isinstance(e, str) or not e or any(ch.isspace() for ch in e) or "#" in e:
                raise DuplicateName(f"invalid element name {e!r}")
            if e in seen:
                raise DuplicateName(f"duplicate element name {e!r}")
            seen.add(e)
        n = len(elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "mul", _frozen_table(self.mul, (n, n), "mul"))
        if self.inv is not None:
            object.__setattr__(self, "inv", _frozen_table(self.inv, (n,), "inv"))
        if self.add is not None:
            object.__setattr__(self, "add", _frozen_table(self.add, (n, n), "add"))

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        ops = "·" + (",⁻¹" if self.inv is not None else "") + (",+" if self.add is not None else "")
        return f"FiniteAlgebra({self.name!r}, size={self.size}, ops=({ops}))"

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise BadIndex(f"no element named {name!r} in {self.name}") from None

    def product(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = int(self.mul[out, x])
        return int(out)

    def power(self, x: int, k: int) -> int:
        out = x
        for _ in range(k - 1):
            out = int(self.mul[out, x])
        return out

    def replace(self, **changes) -> FiniteAlgebra:
        fields = dict(name=self.name, elements=self.elements, mul=self.mul,
                      inv=self.inv, add=self.add)
        fields.update(changes)
        return FiniteAlgebra(**fields)

    def with_inverse(self) -> FiniteAlgebra:
        """This algebra with its unique-inverse map attached."""
        if self.inv is not None:
            return self
        return self.replace(inv=inverse_map(self))

    def with_addition(self, table) -> FiniteAlgebra:
        if isinstance(table, AiAdditionTable):
            table = table.table
        return self.replace(add=table)

    def restrict(self, subset: Iterable[int], name: str | None = None) -> FiniteAlgebra:
        """The subalgebra on ``subset`` (kept in increasing index order)."""
        keep = sorted(set(int(i) for i in subset))
        pos = {old: new for new, old in enumerate(keep)}
        sel = np.array(keep)

        def remap(arr):
            try:
                return np.vectorize(pos.__getitem__, otypes=[np.int32])(arr)
            except KeyError as exc:
                raise BadIndex(f"subset is not closed: {self.elements[exc.args[0]]} escapes") from None

        mul = remap(self.mul[np.ix_(sel, sel)])
        inv = remap(self.inv[sel]) if self.inv is not None else None
        add = remap(self.add[np.ix_(sel, sel)]) if self.add is not None else None
        return FiniteAlgebra(name or f"{self.name}|{len(keep)}",
                             tuple(self.elements[i] for i in keep), mul, inv, add)

    def same_tables(self, other: FiniteAlgebra) -> bool:
        def eq(x, y):
            return (x is None and y is None) or (
                x is not None and y is not None and np.array_equal(x, y))

        return (self.elements == other.elements and eq(self.mul, other.mul)
                and eq(self.inv, other.inv) and eq(self.add, other.add))


def validate_table(elements: Sequence[str], mul, name: str = "S") -> FiniteAlgebra:
    """Build a FiniteAlgebra, raising NonAssociative on the first bad triple."""
    alg = FiniteAlgebra(name, tuple(elements), mul)
    bad = kernels.first_nonassociative(alg.mul)
    if bad is not None:
        raise NonAssociative(*bad, names=alg.elements)
    return alg


def inverse_map(S: FiniteAlgebra) -> np.ndarray:
    """The map a -> a⁻¹; every element must have exactly one inverse."""
    mul = S.mul
    n = S.size
    out = np.empty(n, dtype=np.int32)
    ys = np.arange(n)
    for a in range(n):
        # y with a y a = a and y a y = y
        ok = (mul[mul[a, ys], a] == a) & (mul[mul[ys, a], ys] == ys)
        cands = np.flatnonzero(ok)
        if len(cands) == 0:
            raise NoInverse(a, S.elements[a])
        if len(cands) > 1:
            raise NonUniqueInverse(a, int(cands[0]), int(cands[1]), names=S.elements)
        out[a] = cands[0]
    return out


def idempotents(S: FiniteAlgebra) -> list[int]:
    return [int(a) for a in np.flatnonzero(np.diagonal(S.mul) == np.arange(S.size))]


@dataclass(frozen=True, eq=False)
class NaturalOrder:
    """The natural partial order a ≤ b iff a = eb for an idempotent e."""

    algebra: FiniteAlgebra
    leq: np.ndarray

    def __call__(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def lower_bounds(self, a: int, b: int) -> list[int]:
        return [int(c) for c in np.flatnonzero(self.leq[:, a] & self.leq[:, b])]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (a, b) with a < b and nothing strictly between them."""
        less = self.leq & ~np.eye(len(self.leq), dtype=bool)
        out = []
        for a, b in zip(*np.nonzero(less)):
            between = less[a] & less[:, b]
            if not between.any():
                out.append((int(a), int(b)))
        return out

    def to_dot(self) -> str:
        names = self.algebra.elements
        lines = [f'digraph "{self.algebra.name}" {{', "  rankdir=BT;"]
        for i, e in enumerate(names):
            lines.append(f'  n{i} [label="{e}"];')
        for a, b in self.covers():
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def natural_order(S: FiniteAlgebra, side: str = "left") -> NaturalOrder:
    """Compute ≤ from idempotent witnesses.

    ``side="left"`` uses a = e·b, ``side="right"`` uses a = b·f; on an inverse
    semigroup both give the same relation.
    """
    if S.inv is None:
        inverse_map(S)  # raises if S is not an inverse semigroup
    n = S.size
    leq = np.zeros((n, n), dtype=bool)
    cols = np.arange(n)
    for e in idempotents(S):
        if side == "left":
            leq[S.mul[e, cols], cols] = True
        else:
            leq[S.mul[cols, e], cols] = True
    leq.setflags(write=False)
    return NaturalOrder(S, leq)


def compatibility_violation(order: NaturalOrder) -> tuple | None:
    """First a ≤ b (with witness c) breaking ca ≤ cb, ac ≤ bc or a⁻¹ ≤ b⁻¹."""
    S = order.algebra
    inv = S.inv if S.inv is not None else inverse_map(S)
    leq = order.leq
    for a, b in zip(*np.nonzero(leq)):
        a, b = int(a), int(b)
        left = np.flatnonzero(~leq[S.mul[:, a], S.mul[:, b]])
        if len(left):
            return ("left", a, b, int(left[0]))
        right = np.flatnonzero(~leq[S.mul[a], S.mul[b]])
        if len(right):
            return ("right", a, b, int(right[0]))
        if not leq[inv[a], inv[b]]:
            return ("inv", a, b)
    return None


def infimum(order: NaturalOrder, a: int, b: int) -> int | None:
    lower = order.lower_bounds(a, b)
    for g in lower:
        if all(order.leq[c, g] for c in lower):
            return g
    return None


def aperiodic_index(S: FiniteAlgebra) -> int:
    """Smallest n >= 1 with x^n = x^(n+1) for every x."""
    n = S.size
    powers = np.arange(n)
    need = 1
    # powers holds x^k; find per-element first k with x^k == x^(k+1)
    done = np.zeros(n, dtype=bool)
    for k in range(1, n + 1):
        nxt = S.mul[powers, np.arange(n)]
        newly = (~done) & (nxt == powers)
        if newly.any():
            need = k
            done |= newly
        if done.all():
            return need
        powers = nxt
    bad = int(np.flatnonzero(~done)[0])
    raise NotAperiodic(f"{S.elements[bad]} generates a nontrivial subgroup; "
                       f"no n <= {n} satisfies x^n = x^(n+1)")


@dataclass(frozen=True, eq=False)
class AiAdditionTable:
    table: np.ndarray
    provenance: str
    exponent: int | None = None

    def __eq__(self, other):
        if not isinstance(other, AiAdditionTable):
            return NotImplemented
        return np.array_equal(self.table, other.table)

    __hash__ = None


def _power_table_rows(mul: np.ndarray, base: np.ndarray, k: int) -> np.ndarray:
    out = base
    for _ in range(k - 1):
        out = mul[out, base]
    return out


def derive_addition(S: FiniteAlgebra, n: int) -> AiAdditionTable:
    """x ⊕ y = (x y⁻¹)^n x, the infimum under the natural order."""
    if n < 1:
        raise ExponentTooSmall("the exponent must be at least 1")
    xs = np.arange(S.size)
    lhs = _power_table_rows(S.mul, xs, n)
    rhs = S.mul[lhs, xs]
    if not np.array_equal(lhs, rhs):
        x = int(np.flatnonzero(lhs != rhs)[0])
        raise ExponentTooSmall(f"x^{n} != x^{n + 1} at x = {S.elements[x]}")
    inv = S.inv if S.inv is not None else inverse_map(S)
    a = xs[:, None]
    b = xs[None, :]
    ab = S.mul[a, inv[b]]
    table = S.mul[_power_table_rows(S.mul, ab, n), np.broadcast_to(a, ab.shape)]
    table = np.ascontiguousarray(table, dtype=np.int32)
    table.setflags(write=False)
    return AiAdditionTable(table, f"derived-from-power-{n}", n)


def _search_chunk(args):
    mul, values = args
    return kernels.search_additions(mul, values)


def find_all_ai_additions(S: FiniteAlgebra, jobs: int = 1) -> list[AiAdditionTable]:
    """Every addition making (S, +, ·) an additively idempotent semiring.

    Backtracking over the upper triangle of the table with propagation of
    the distributive and associative laws.  Output is sorted by flattened
    table and does not depend on ``jobs``.
    """
    mul = np.ascontiguousarray(S.mul)
    if S.size < 2 or jobs <= 1:
        tables = kernels.search_additions(mul)
    else:
        chunks = split_even(range(S.size), jobs)
        parts = ordered_map(_search_chunk, [(mul, c) for c in chunks], jobs)
        tables = [t for part in parts for t in part]
    tables.sort(key=lambda t: tuple(t.ravel().tolist()))
    out = []
    for t in tables:
        t = np.ascontiguousarray(t, dtype=np.int32)
        t.setflags(write=False)
        out.append(AiAdditionTable(t, "found-by-search"))
    return out


@dataclass(frozen=True)
class SubuniverseCheck:
    ok: bool
    violation: tuple | None = None

    def __bool__(self):
        return self.ok


def is_subuniverse(S: FiniteAlgebra, subset: Iterable[int], with_inverse: bool = False) -> SubuniverseCheck:
    """Closure of ``subset`` under mul (and inv when asked).

    A failure carries ``("mul", a, b)`` or ``("inv", a)`` for the first
    offending element(s) in index order.
    """
    keep = sorted(set(int(i) for i in subset))
    member = np.zeros(S.size, dtype=bool)
    member[keep] = True
    sel = np.array(keep, dtype=np.int64)
    if len(sel):
        closed = member[S.mul[np.ix_(sel, sel)]]
        bad = np.argwhere(~closed)
        if len(bad):
            return SubuniverseCheck(False, ("mul", int(sel[bad[0][0]]), int(sel[bad[0][1]])))
    if with_inverse:
        inv = S.inv if S.inv is not None else inverse_map(S)
        for a in keep:
            if not member[inv[a]]:
                return SubuniverseCheck(False, ("inv", a))
    return SubuniverseCheck(True)


@dataclass(frozen=True)
class SemiringReport:
    algebra: str
    elements: tuple[str, ...]
    results: dict  # axiom -> counterexample tuple or None

    @property
    def passed(self) -> bool:
        return all(v is None for v in self.results.values())

    def lines(self) -> list[str]:
        out = []
        for axiom, bad in self.results.items():
            if bad is None:
                out.append(f"PASS {axiom}")
            else:
                out.append(f"FAIL {axiom} at ({', '.join(self.elements[i] for i in bad)})")
        return out


def verify_ai_semiring(S: FiniteAlgebra) -> SemiringReport:
    if S.add is None:
        raise ValueError(f"{S.name} has no addition table")
    results = kernels.semiring_violations(S.mul, S.add)
    return SemiringReport(S.name, S.elements, {k: results[k] for k in kernels.AXIOMS})
