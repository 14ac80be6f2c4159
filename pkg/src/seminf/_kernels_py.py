"""Pure-Python (numpy-assisted) versions of the hot kernels.

Every function here has a twin with the same name and signature in the
compiled ``_ckernels`` extension; ``seminf.kernels`` picks one at import.
Tables are 2-d ``int32`` arrays of element indices.
"""

import numpy as np

OP_VAR, OP_INV, OP_MUL, OP_ADD = 0, 1, 2, 3

AXIOMS = (
    "add-commutative",
    "add-idempotent",
    "add-associative",
    "left-distributive",
    "right-distributive",
)


def first_nonassociative(mul):
    """Lexicographically first (a, b, c) with (ab)c != a(bc), or None."""
    mul = np.asarray(mul)
    for a in range(len(mul)):
        left = mul[mul[a]]          # [b, c] -> (ab)c
        right = mul[a][mul]         # [b, c] -> a(bc)
        bad = np.argwhere(left != right)
        if len(bad):
            return (a, int(bad[0][0]), int(bad[0][1]))
    return None


def semiring_violations(mul, add):
    """First counterexample for each ai-semiring axiom, keyed as in AXIOMS.

    Tuples read: commutative (a, b): a+b != b+a; idempotent (a,): a+a != a;
    associative (a, b, c); left-distributive (a, b, c): a(b+c) != ab+ac;
    right-distributive (a, b, c): (a+b)c != ac+bc.
    """
    mul = np.asarray(mul)
    add = np.asarray(add)
    n = len(mul)
    out = dict.fromkeys(AXIOMS)

    bad = np.argwhere(add != add.T)
    if len(bad):
        out["add-commutative"] = (int(bad[0][0]), int(bad[0][1]))
    bad = np.flatnonzero(np.diagonal(add) != np.arange(n))
    if len(bad):
        out["add-idempotent"] = (int(bad[0]),)

    for a in range(n):
        if out["add-associative"] is None:
            bad = np.argwhere(add[add[a]] != add[a][add])
            if len(bad):
                out["add-associative"] = (a, int(bad[0][0]), int(bad[0][1]))
        if out["left-distributive"] is None:
            # a(b+c) vs ab + ac
            lhs = mul[a][add]
            rhs = add[np.ix_(mul[a], mul[a])]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                out["left-distributive"] = (a, int(bad[0][0]), int(bad[0][1]))
        if out["right-distributive"] is None:
            # (a+b)c vs ac + bc, with a fixed
            lhs = mul[add[a]]                  # [b, c] -> (a+b)c
            rhs = add[mul[a][None, :], mul]    # [b, c] -> ac + bc
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                out["right-distributive"] = (a, int(bad[0][0]), int(bad[0][1]))
    return out


def eval_program(program, mul, inv, add, varvals):
    """Run a straight-line term program over a batch of assignments.

    ``program`` rows are (op, x, y); register i holds the value of row i and
    the last register is the result.  ``varvals[v]`` is the value column of
    variable v, one entry per assignment.
    """
    regs = []
    for op, x, y in np.asarray(program).tolist():
        if op == OP_VAR:
            regs.append(varvals[x])
        elif op == OP_INV:
            regs.append(inv[regs[x]])
        elif op == OP_MUL:
            regs.append(mul[regs[x], regs[y]])
        else:
            regs.append(add[regs[x], regs[y]])
    return np.ascontiguousarray(regs[-1], dtype=np.int32)


def eval_registers(program, mul, inv, add, varvals):
    """Like eval_program but returns every register: shape (rows, assignments)."""
    prog = np.asarray(program)
    out = np.empty((len(prog), np.shape(varvals)[1]), dtype=np.int32)
    for i, (op, x, y) in enumerate(prog.tolist()):
        if op == OP_VAR:
            out[i] = varvals[x]
        elif op == OP_INV:
            out[i] = inv[out[x]]
        elif op == OP_MUL:
            out[i] = mul[out[x], out[y]]
        else:
            out[i] = add[out[x], out[y]]
    return out


class _Search:
    # backtracking state; add[a][b] == -1 means unassigned
    def __init__(self, mul):
        self.mul = [list(row) for row in np.asarray(mul).tolist()]
        self.n = n = len(self.mul)
        self.add = [[-1] * n for _ in range(n)]
        for a in range(n):
            self.add[a][a] = a
        self.trail = []
        self.cells = [(a, b) for a in range(n) for b in range(a + 1, n)]

    def assign(self, a, b, v, queue):
        if a == b:
            return v == a
        cur = self.add[a][b]
        if cur >= 0:
            return cur == v
        self.add[a][b] = self.add[b][a] = v
        self.trail.append((a, b))
        queue.append((a, b))
        return True

    def outer(self, u, z, x, w, queue):
        # enforce add[u][z] == add[x][w]
        add = self.add
        p, q = add[u][z], add[x][w]
        if p >= 0:
            return self.assign(x, w, p, queue)
        if q >= 0:
            return self.assign(u, z, q, queue)
        return True

    def propagate(self, queue):
        mul, add, n = self.mul, self.add, self.n
        while queue:
            a, b = queue.pop()
            v = add[a][b]
            for c in range(n):
                mc = mul[c]
                if not self.assign(mc[a], mc[b], mc[v], queue):
                    return False
                if not self.assign(mul[a][c], mul[b][c], mul[v][c], queue):
                    return False
            for x, y in ((a, b), (b, a)):
                # (x+y)+z == x+(y+z) with x+y known
                for z in range(n):
                    w = add[y][z]
                    if w >= 0 and not self.outer(v, z, x, w, queue):
                        return False
                # (x'+x)+y == x'+(x+y) with x+y as the inner right cell
                for x2 in range(n):
                    u = add[x2][x]
                    if u >= 0 and not self.outer(u, y, x2, v, queue):
                        return False
        return True

    def undo(self, mark):
        add = self.add
        while len(self.trail) > mark:
            a, b = self.trail.pop()
            add[a][b] = add[b][a] = -1

    def complete(self):
        table = np.array(self.add, dtype=np.int32)
        return all(v is None for v in semiring_violations(self.mul, table).values())

    def run(self, first_values=None):
        found = []
        self._descend(0, first_values, found)
        return found

    def _descend(self, start, restrict, found):
        add = self.add
        i = start
        while i < len(self.cells) and add[self.cells[i][0]][self.cells[i][1]] >= 0:
            i += 1
        if i == len(self.cells):
            if self.complete():
                found.append(np.array(add, dtype=np.int32))
            return
        a, b = self.cells[i]
        for v in (range(self.n) if restrict is None else restrict):
            mark = len(self.trail)
            queue = []
            if self.assign(a, b, v, queue) and self.propagate(queue):
                self._descend(i + 1, None, found)
            self.undo(mark)


def search_additions(mul, first_values=None):
    """All semilattice additions over which ``mul`` distributes.

    Tables come out in lexicographic order of their flattened entries.
    ``first_values`` restricts the values tried at the first branching cell,
    which lets callers split the search tree into independent parts.
    """
    return _Search(mul).run(first_values)
