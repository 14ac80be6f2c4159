"""Rook matrices as partial injections, and the algebras they generate.

A zero-one m×m matrix with at most one 1 in each row and column is stored as
the partial map column -> row: an entry 1 at (i, j) means j ↦ i.  With that
orientation ``compose(p, q)`` is the matrix product ``p·q``.  Indices in the
public constructors are 1-based like matrix entries; ``images`` is 0-based
with -1 for an undefined column.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import FiniteAlgebra
from .errors import ClosureBudgetExceeded, DimensionMismatch

DEFAULT_BUDGET = 1_000_000


@dataclass(frozen=True, order=True)
class PartialInjection:
    m: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if self.m < 1 or len(images) != self.m:
            raise ValueError(f"need exactly m={self.m} images, got {len(images)}")
        rows = [x for x in images if x != -1]
        if any(not 0 <= x < self.m for x in rows):
            raise ValueError(f"image out of range in {images}")
        if len(set(rows)) != len(rows):
            raise ValueError(f"not injective: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_pairs(cls, m: int, pairs) -> PartialInjection:
        """Build from 1-based (column, row) pairs."""
        images = [-1] * m
        for col, row in pairs:
            if not (1 <= col <= m and 1 <= row <= m):
                raise ValueError(f"entry ({row},{col}) outside a {m}x{m} matrix")
            if images[col - 1] != -1:
                raise ValueError(f"column {col} mapped twice")
            images[col - 1] = row - 1
        return cls(m, tuple(images))

    @classmethod
    def from_matrix(cls, matrix) -> PartialInjection:
        mat = np.asarray(matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("rook matrix must be square")
        if not np.isin(mat, (0, 1)).all() or (mat.sum(0) > 1).any() or (mat.sum(1) > 1).any():
            raise ValueError("not a rook matrix")
        rows, cols = np.nonzero(mat)
        return cls.from_pairs(len(mat), [(int(c) + 1, int(r) + 1) for r, c in zip(rows, cols)])

    def pairs(self) -> list[tuple[int, int]]:
        """Defined (column, row) pairs, 1-based, by increasing column."""
        return [(j + 1, i + 1) for j, i in enumerate(self.images) if i != -1]

    def to_matrix(self) -> np.ndarray:
        mat = np.zeros((self.m, self.m), dtype=np.int64)
        for col, row in self.pairs():
            mat[row - 1, col - 1] = 1
        return mat

    @property
    def rank(self) -> int:
        return sum(1 for x in self.images if x != -1)

    def __mul__(self, other: PartialInjection) -> PartialInjection:
        return compose(self, other)

    def __add__(self, other: PartialInjection) -> PartialInjection:
        # sum of rook matrices with disjoint supports
        if self.m != other.m:
            raise DimensionMismatch(f"{self.m} vs {other.m}")
        images = list(self.images)
        for j, i in enumerate(other.images):
            if i == -1:
                continue
            if images[j] != -1:
                raise ValueError("matrix units overlap")
            images[j] = i
        return PartialInjection(self.m, tuple(images))


def compose(p: PartialInjection, q: PartialInjection) -> PartialInjection:
    """The matrix product p·q, i.e. first q then p."""
    if p.m != q.m:
        raise DimensionMismatch(f"cannot compose {p.m}x{p.m} with {q.m}x{q.m}")
    pim = p.images
    return PartialInjection(p.m, tuple(-1 if j == -1 else pim[j] for j in q.images))


def transpose(p: PartialInjection) -> PartialInjection:
    out = [-1] * p.m
    for j, i in enumerate(p.images):
        if i != -1:
            out[i] = j
    return PartialInjection(p.m, tuple(out))


def identity(m: int) -> PartialInjection:
    return PartialInjection(m, tuple(range(m)))


def zero(m: int) -> PartialInjection:
    return PartialInjection(m, (-1,) * m)


def matrix_unit(m: int, i: int, j: int) -> PartialInjection:
    """E_ij: the single entry 1 at row i, column j."""
    return PartialInjection.from_pairs(m, [(j, i)])


def ck_generator(n: int, k: int) -> PartialInjection:
    """c_k = E_{k+1,k} + E_{n+k,n+k+1} in dimension 2n+1."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    m = 2 * n + 1
    return matrix_unit(m, k + 1, k) + matrix_unit(m, n + k, n + k + 1)


@dataclass(frozen=True, eq=False)
class GeneratedAlgebra:
    base: FiniteAlgebra
    reps: tuple[PartialInjection, ...]
    generators: tuple[int, ...]

    def index_of(self, p: PartialInjection) -> int:
        return self._lookup()[p]

    def _lookup(self):
        cache = self.__dict__.get("_index")
        if cache is None:
            cache = {p: i for i, p in enumerate(self.reps)}
            object.__setattr__(self, "_index", cache)
        return cache

    def __len__(self):
        return len(self.reps)

    def reordered(self, order: Sequence[int], names: Sequence[str] | None = None,
                  name: str | None = None) -> GeneratedAlgebra:
        """Same algebra with elements listed as ``order`` (old indices)."""
        order = list(order)
        if sorted(order) != list(range(len(self.reps))):
            raise ValueError("order must be a permutation of the element indices")
        pos = np.empty(len(order), dtype=np.int64)
        pos[order] = np.arange(len(order))
        sel = np.array(order)
        b = self.base
        mul = pos[b.mul[np.ix_(sel, sel)]]
        inv = pos[b.inv[sel]] if b.inv is not None else None
        add = pos[b.add[np.ix_(sel, sel)]] if b.add is not None else None
        names = tuple(names) if names is not None else tuple(b.elements[i] for i in order)
        base = FiniteAlgebra(name or b.name, names, mul, inv, add)
        return GeneratedAlgebra(base, tuple(self.reps[i] for i in order),
                                tuple(int(pos[g]) for g in self.generators))


def generate_closure(gens: Sequence[PartialInjection], with_inverses: bool = True,
                     adjoin_identity: bool = False, budget: int = DEFAULT_BUDGET,
                     gen_names: Sequence[str] | None = None,
                     name: str = "S") -> GeneratedAlgebra:
    """Breadth-first closure of ``gens`` under composition.

    Elements are numbered in discovery order: the identity first when
    adjoined, then the generators, then their transposes, then products
    ``a·g`` as the queue is drained.  Each element is named by the shortest
    word that reached it, letters joined by ``.``; the empty map is ``0``
    and the identity map ``1``.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    m = gens[0].m
    if any(g.m != m for g in gens):
        raise DimensionMismatch("generators have different dimensions")
    gen_names = list(gen_names) if gen_names is not None else [f"g{i + 1}" for i in range(len(gens))]

    letters = list(zip(gens, gen_names))
    if with_inverses:
        letters += [(transpose(g), f"{nm}'") for g, nm in zip(gens, gen_names)]

    index: dict[PartialInjection, int] = {}
    reps: list[PartialInjection] = []
    words: list[str] = []

    def add(p, word):
        if p in index:
            return index[p]
        if len(reps) >= budget:
            raise ClosureBudgetExceeded(f"closure exceeds {budget} elements")
        index[p] = len(reps)
        reps.append(p)
        words.append(word)
        return index[p]

    if adjoin_identity:
        add(identity(m), "1")
    gen_idx = [add(g, nm) for g, nm in letters[: len(gens)]]
    queue = deque(add(g, nm) for g, nm in letters)
    queue = deque(dict.fromkeys(queue))
    while queue:
        a = queue.popleft()
        pa, wa = reps[a], words[a]
        for g, nm in letters:
            p = compose(pa, g)
            if p not in index:
                queue.append(add(p, f"{wa}.{nm}"))

    n = len(reps)
    names = []
    for p, w in zip(reps, words):
        if p.rank == 0:
            names.append("0")
        elif p == identity(m):
            names.append("1")
        else:
            names.append(w)
    mul = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(reps):
        pim = p.images
        for j, q in enumerate(reps):
            mul[i, j] = index[PartialInjection(m, tuple(-1 if c == -1 else pim[c] for c in q.images))]
    inv = None
    transposes = [transpose(p) for p in reps]
    if all(t in index for t in transposes):
        inv = np.array([index[t] for t in transposes], dtype=np.int32)
    base = FiniteAlgebra(name, tuple(names), mul, inv)
    return GeneratedAlgebra(base, tuple(reps), tuple(gen_idx))


def brandt_b21() -> GeneratedAlgebra:
    """The six-element Brandt monoid on 2×2 rook matrices.

    Elements in the order 0, E, E12, E21, E11, E22.
    """
    e12, e21 = matrix_unit(2, 1, 2), matrix_unit(2, 2, 1)
    gen = generate_closure([e12, e21], with_inverses=True, adjoin_identity=True,
                           gen_names=["E12", "E21"], name="B21")
    wanted = [zero(2), identity(2), e12, e21, matrix_unit(2, 1, 1), matrix_unit(2, 2, 2)]
    order = [gen.index_of(p) for p in wanted]
    return gen.reordered(order, names=["0", "E", "E12", "E21", "E11", "E22"])


def cn(n: int, budget: int = DEFAULT_BUDGET) -> GeneratedAlgebra:
    """The inverse semigroup generated by c_1, ..., c_n (no identity adjoined)."""
    if n < 2:
        raise ValueError(f"C_n is defined for n >= 2, got {n}")
    gens = [ck_generator(n, k) for k in range(1, n + 1)]
    return generate_closure(gens, with_inverses=True, adjoin_identity=False, budget=budget,
                            gen_names=[f"c{k}" for k in range(1, n + 1)], name=f"C{n}")


def mk(n: int, k: int, algebra: GeneratedAlgebra | None = None) -> list[int]:
    """Indices of M_k(n) = C_n minus {c_k, c_k⁻¹}, as a subset of ``cn(n)``."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    alg = algebra if algebra is not None else cn(n)
    g = alg.generators[k - 1]
    drop = {g, int(alg.base.inv[g])}
    return [i for i in range(len(alg)) if i not in drop]


def mk_algebra(n: int, k: int, algebra: GeneratedAlgebra | None = None) -> FiniteAlgebra:
    alg = algebra if algebra is not None else cn(n)
    return alg.base.restrict(mk(n, k, alg), name=f"M{k}_{n}")


def format_matrices(names: Sequence[str], reps: Sequence[PartialInjection]) -> str:
    """``%matrices`` section: one ``NAME: col->row ...`` line per element."""
    width = max(len(e) for e in names)
    lines = ["%matrices"]
    for e, p in zip(names, reps):
        body = " ".join(f"{c}->{r}" for c, r in p.pairs())
        lines.append(f"{e + ':':<{width + 1}} {body}".rstrip())
    return "\n".join(lines) + "\n"
