# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see _kernels_py for the contracts."""

import numpy as np
from libc.stdlib cimport malloc, free

cdef enum:
    OP_VAR = 0
    OP_INV = 1
    OP_MUL = 2
    OP_ADD = 3

AXIOMS = (
    "add-commutative",
    "add-idempotent",
    "add-associative",
    "left-distributive",
    "right-distributive",
)


def _i32(table):
    return np.ascontiguousarray(table, dtype=np.int32)


def first_nonassociative(mul):
    cdef const int[:, ::1] m = _i32(mul)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    with nogil:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if m[m[a, b], c] != m[a, m[b, c]]:
                        with gil:
                            return (a, b, c)
    return None


def semiring_violations(mul, add):
    cdef const int[:, ::1] m = _i32(mul)
    cdef const int[:, ::1] s = _i32(add)
    cdef Py_ssize_t n = m.shape[0], a, b, c
    out = dict.fromkeys(AXIOMS)
    for a in range(n):
        for b in range(n):
            if s[a, b] != s[b, a]:
                out["add-commutative"] = (a, b)
                break
        if out["add-commutative"] is not None:
            break
    for a in range(n):
        if s[a, a] != a:
            out["add-idempotent"] = (a,)
            break
    cdef bint want_assoc = True, want_left = True, want_right = True
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if want_assoc and s[s[a, b], c] != s[a, s[b, c]]:
                    out["add-associative"] = (a, b, c)
                    want_assoc = False
                if want_left and m[a, s[b, c]] != s[m[a, b], m[a, c]]:
                    out["left-distributive"] = (a, b, c)
                    want_left = False
                if want_right and m[s[a, b], c] != s[m[a, c], m[b, c]]:
                    out["right-distributive"] = (a, b, c)
                    want_right = False
            if not (want_assoc or want_left or want_right):
                return out
    return out


def eval_program(program, mul, inv, add, varvals):
    cdef const int[:, ::1] prog = _i32(program)
    cdef const int[:, ::1] m = _i32(mul)
    cdef const int[::1] iv = _i32(inv)
    cdef const int[:, ::1] s = _i32(add)
    cdef const int[:, ::1] vv = _i32(varvals)
    cdef Py_ssize_t length = prog.shape[0], count = vv.shape[1], i, j
    result = np.empty(count, dtype=np.int32)
    cdef int[::1] res = result
    cdef int *regs = <int *> malloc(max(length, 1) * sizeof(int))
    cdef int op
    if regs == NULL:
        raise MemoryError()
    try:
        with nogil:
            for j in range(count):
                for i in range(length):
                    op = prog[i, 0]
                    if op == OP_VAR:
                        regs[i] = vv[prog[i, 1], j]
                    elif op == OP_INV:
                        regs[i] = iv[regs[prog[i, 1]]]
                    elif op == OP_MUL:
                        regs[i] = m[regs[prog[i, 1]], regs[prog[i, 2]]]
                    else:
                        regs[i] = s[regs[prog[i, 1]], regs[prog[i, 2]]]
                res[j] = regs[length - 1]
    finally:
        free(regs)
    return result


def eval_registers(program, mul, inv, add, varvals):
    cdef const int[:, ::1] prog = _i32(program)
    cdef const int[:, ::1] m = _i32(mul)
    cdef const int[::1] iv = _i32(inv)
    cdef const int[:, ::1] s = _i32(add)
    cdef const int[:, ::1] vv = _i32(varvals)
    cdef Py_ssize_t length = prog.shape[0], count = vv.shape[1], i, j
    cdef int op, x, y
    result = np.empty((length, count), dtype=np.int32)
    cdef int[:, ::1] out = result
    with nogil:
        for i in range(length):
            op = prog[i, 0]
            x = prog[i, 1]
            y = prog[i, 2]
            if op == OP_VAR:
                for j in range(count):
                    out[i, j] = vv[x, j]
            elif op == OP_INV:
                for j in range(count):
                    out[i, j] = iv[out[x, j]]
            elif op == OP_MUL:
                for j in range(count):
                    out[i, j] = m[out[x, j], out[y, j]]
            else:
                for j in range(count):
                    out[i, j] = s[out[x, j], out[y, j]]
    return result


cdef class _Search:
    cdef int n
    cdef int[:, ::1] mul
    cdef int[:, ::1] add
    cdef int *trail          # pairs (a, b)
    cdef Py_ssize_t trail_len
    cdef int *queue          # pairs (a, b)
    cdef Py_ssize_t queue_len
    cdef Py_ssize_t cap
    cdef int[:, ::1] cells
    cdef list found

    def __cinit__(self, mul):
        self.mul = np.array(mul, dtype=np.int32, copy=True)
        self.n = self.mul.shape[0]
        n = self.n
        table = np.full((n, n), -1, dtype=np.int32)
        for a in range(n):
            table[a, a] = a
        self.add = table
        self.cap = max(n * n, 1)
        self.trail = <int *> malloc(2 * self.cap * sizeof(int))
        self.queue = <int *> malloc(2 * self.cap * sizeof(int))
        if self.trail == NULL or self.queue == NULL:
            raise MemoryError()
        self.trail_len = 0
        self.queue_len = 0
        cells = [(a, b) for a in range(n) for b in range(a + 1, n)]
        self.cells = np.array(cells, dtype=np.int32).reshape(-1, 2)
        self.found = []

    def __dealloc__(self):
        free(self.trail)
        free(self.queue)

    cdef inline bint assign(self, int a, int b, int v) nogil:
        cdef int cur
        if a == b:
            return v == a
        cur = self.add[a, b]
        if cur >= 0:
            return cur == v
        self.add[a, b] = v
        self.add[b, a] = v
        self.trail[2 * self.trail_len] = a
        self.trail[2 * self.trail_len + 1] = b
        self.trail_len += 1
        self.queue[2 * self.queue_len] = a
        self.queue[2 * self.queue_len + 1] = b
        self.queue_len += 1
        return True

    cdef inline bint outer(self, int u, int z, int x, int w) nogil:
        cdef int p = self.add[u, z], q = self.add[x, w]
        if p >= 0:
            return self.assign(x, w, p)
        if q >= 0:
            return self.assign(u, z, q)
        return True

    cdef bint propagate(self) nogil:
        cdef int a, b, v, c, z, w, u, x, y, x2, side
        cdef int n = self.n
        while self.queue_len > 0:
            self.queue_len -= 1
            a = self.queue[2 * self.queue_len]
            b = self.queue[2 * self.queue_len + 1]
            v = self.add[a, b]
            for c in range(n):
                if not self.assign(self.mul[c, a], self.mul[c, b], self.mul[c, v]):
                    return False
                if not self.assign(self.mul[a, c], self.mul[b, c], self.mul[v, c]):
                    return False
            for side in range(2):
                if side == 0:
                    x = a
                    y = b
                else:
                    x = b
                    y = a
                for z in range(n):
                    w = self.add[y, z]
                    if w >= 0 and not self.outer(v, z, x, w):
                        return False
                for x2 in range(n):
                    u = self.add[x2, x]
                    if u >= 0 and not self.outer(u, y, x2, v):
                        return False
        return True

    cdef void undo(self, Py_ssize_t mark) nogil:
        cdef int a, b
        while self.trail_len > mark:
            self.trail_len -= 1
            a = self.trail[2 * self.trail_len]
            b = self.trail[2 * self.trail_len + 1]
            self.add[a, b] = -1
            self.add[b, a] = -1

    cdef bint complete(self):
        cdef int n = self.n, a, b, c
        cdef int[:, ::1] m = self.mul
        cdef int[:, ::1] s = self.add
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if s[s[a, b], c] != s[a, s[b, c]]:
                        return False
                    if m[a, s[b, c]] != s[m[a, b], m[a, c]]:
                        return False
                    if m[s[a, b], c] != s[m[a, c], m[b, c]]:
                        return False
        return True

    cdef void descend(self, Py_ssize_t start, object restrict):
        cdef Py_ssize_t i = start, ncells = self.cells.shape[0], mark
        cdef int a, b, v
        while i < ncells and self.add[self.cells[i, 0], self.cells[i, 1]] >= 0:
            i += 1
        if i == ncells:
            if self.complete():
                self.found.append(np.array(self.add, dtype=np.int32))
            return
        a = self.cells[i, 0]
        b = self.cells[i, 1]
        values = range(self.n) if restrict is None else restrict
        for v in values:
            mark = self.trail_len
            self.queue_len = 0
            if self.assign(a, b, v) and self.propagate():
                self.descend(i + 1, None)
            self.undo(mark)

    def run(self, first_values=None):
        self.descend(0, first_values)
        return self.found


def search_additions(mul, first_values=None):
    return _Search(mul).run(first_values)
