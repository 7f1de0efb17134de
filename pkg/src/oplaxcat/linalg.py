"""Exact linear algebra over prime fields.

Vectors are columns; a subspace is a matrix whose columns form a basis.
All integrals computed by the bimodule backend reduce to the kernels and
cokernels here, so this module keeps everything deterministic: reduced
echelon forms fix canonical bases and canonical sections of quotients.
"""

from __future__ import annotations

import numpy as np


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Arithmetic mod a prime, with a precomputed inverse table."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.inv = np.array(
            [0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)

    def mat(self, entries, shape=None):
        a = np.asarray(entries, dtype=np.int64) % self.p
        if shape is not None:
            a = a.reshape(shape)
        return a

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def zeros(self, r, c):
        return np.zeros((r, c), dtype=np.int64)

    def matmul(self, a, b):
        return (a @ b) % self.p

    def rref(self, a):
        """Row-reduced echelon form and its pivot columns."""
        a = a.copy() % self.p
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            pool = np.nonzero(a[r:, c])[0]
            if pool.size == 0:
                continue
            pr = r + int(pool[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            a[r] = (a[r] * self.inv[a[r, c]]) % self.p
            others = np.nonzero(a[:, c])[0]
            others = others[others != r]
            if others.size:
                a[others] = (a[others] - np.outer(a[others, c], a[r])) % self.p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, a):
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def kernel(self, a):
        """Columns form a canonical basis of ker(a)."""
        rows, cols = a.shape
        red, pivots = self.rref(a)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for i, pc in enumerate(pivots):
                basis[pc, j] = (-red[i, fc]) % self.p
        return basis

    def cokernel(self, a):
        """Projection onto coker(a) and its dimension.

        The projection q satisfies q a = 0 and is surjective with
        rank(q) = rows(a) - rank(a).
        """
        q = self.kernel(a.T).T
        return q, q.shape[0]

    def tensor(self, a, b):
        return np.kron(a, b) % self.p

    def solve(self, a, b):
        """Solve a x = b columnwise; None when inconsistent."""
        b = b.reshape(b.shape[0], -1) if b.ndim == 1 else b
        rows, cols = a.shape
        aug = np.concatenate([a % self.p, b % self.p], axis=1)
        red, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = red[i, cols:]
        return x

    def section(self, q):
        """Canonical right inverse of a surjective matrix."""
        s = self.solve(q, self.eye(q.shape[0]))
        assert s is not None, "section of a non-surjective matrix"
        return s

    def column_space(self, a):
        """Canonical basis (as columns) of the column span."""
        red, pivots = self.rref(a.T)
        return red[:len(pivots)].T.copy()

    def in_span(self, basis, v):
        return self.solve(basis, v) is not None

    def contains(self, big, small):
        """Every column of ``small`` lies in the span of ``big``."""
        return self.solve(big, small) is not None

    def intersect(self, u, w):
        """Basis of the intersection of two column-span subspaces."""
        if u.shape[1] == 0 or w.shape[1] == 0:
            return self.zeros(u.shape[0], 0)
        k = self.kernel(np.concatenate([u, -w % self.p], axis=1))
        return self.column_space(self.matmul(u, k[:u.shape[1]]))

    def sum_of_subspaces(self, u, w):
        return self.column_space(np.concatenate([u, w], axis=1))

    def equal_subspaces(self, u, w):
        return (self.rank(u) == self.rank(w)
                and self.contains(u, w) and self.contains(w, u))


F2 = PrimeField(2)
F3 = PrimeField(3)


def rank_oracle(field, a):
    """Independent rank computation by greedy row elimination.

    Kept deliberately separate from rref so kernel/cokernel dimensions
    can be cross-checked against a second implementation.
    """
    a = a.copy() % field.p
    rank = 0
    rows, cols = a.shape
    used = set()
    for c in range(cols):
        pivot = next((r for r in range(rows)
                      if r not in used and a[r, c] != 0), None)
        if pivot is None:
            continue
        used.add(pivot)
        rank += 1
        inv = field.inv[a[pivot, c]]
        prow = (a[pivot] * inv) % field.p
        for r in range(rows):
            if r != pivot and a[r, c]:
                a[r] = (a[r] - a[r, c] * prow) % field.p
    return rank
