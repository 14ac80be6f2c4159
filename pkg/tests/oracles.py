"""Independent reference implementations used by the tests.

Nothing here imports seminf: closures use dense 0/1 matrices, additions
are found by brute force and axioms are checked with plain loops.
"""

import itertools

import numpy as np


# ---------------------------------------------------------------- matrices

def unit(m, i, j):
    a = np.zeros((m, m), dtype=np.int64)
    a[i - 1, j - 1] = 1
    return a


def ck_matrix(n, k):
    m = 2 * n + 1
    return unit(m, k + 1, k) + unit(m, n + k, n + k + 1)


def naive_closure(gens, with_transposes=True, with_identity=False):
    """Set of matrices (as bytes) generated under products; no ordering tricks."""
    m = gens[0].shape[0]
    seeds = list(gens)
    if with_transposes:
        seeds += [g.T.copy() for g in gens]
    if with_identity:
        seeds.append(np.eye(m, dtype=np.int64))
    found = {g.tobytes(): g for g in seeds}
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for a in current:
            for b in current:
                c = a @ b
                key = c.tobytes()
                if key not in found:
                    found[key] = c
                    changed = True
    return found


# ----------------------------------------------------------------- tables

def is_associative(mul):
    n = len(mul)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    return False
    return True


def inverses(mul):
    """For each a, the list of y with a y a = a and y a y = y."""
    n = len(mul)
    return [[y for y in range(n)
             if mul[mul[a][y]][a] == a and mul[mul[y][a]][y] == y] for a in range(n)]


def is_ai_semiring(mul, add):
    n = len(mul)
    r = range(n)
    for a in r:
        if add[a][a] != a:
            return False
        for b in r:
            if add[a][b] != add[b][a]:
                return False
            for c in r:
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    return False
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    return False
                if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
                    return False
    return True


def brute_additions(mul):
    """Every ai-semiring addition, by trying all symmetric idempotent tables."""
    n = len(mul)
    cells = [(a, b) for a in range(n) for b in range(a + 1, n)]
    out = []
    for values in itertools.product(range(n), repeat=len(cells)):
        add = [[a if a == b else None for b in range(n)] for a in range(n)]
        for (a, b), v in zip(cells, values):
            add[a][b] = add[b][a] = v
        if is_ai_semiring(mul, add):
            out.append(add)
    out.sort(key=lambda t: [x for row in t for x in row])
    return out


def all_semigroups(n):
    """Every associative table on {0..n-1} (labelled, so isomorphic copies repeat)."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        mul = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if is_associative(mul):
            out.append(mul)
    return out


def naive_order(mul):
    """a <= b iff a = e b for some idempotent e."""
    n = len(mul)
    idem = [e for e in range(n) if mul[e][e] == e]
    return [[any(mul[e][b] == a for e in idem) for b in range(n)] for a in range(n)]


def naive_infimum(leq, a, b):
    n = len(leq)
    lower = [c for c in range(n) if leq[c][a] and leq[c][b]]
    tops = [g for g in lower if all(leq[c][g] for c in lower)]
    return tops[0] if tops else None


# ------------------------------------------------------------------ terms

def eval_term(t, env, mul, inv=None, add=None):
    """Evaluate a nested-tuple term: "x" | ("inv", t) | ("mul"|"add", l, r)."""
    if isinstance(t, str):
        return env[t]
    if t[0] == "inv":
        return inv[eval_term(t[1], env, mul, inv, add)]
    left = eval_term(t[1], env, mul, inv, add)
    right = eval_term(t[2], env, mul, inv, add)
    return (mul if t[0] == "mul" else add)[left][right]
