"""Exact integer lattices: Hermite and Smith normal forms, membership,
intersection and coset bookkeeping for subgroups of Z^d.

Vectors are plain tuples of Python ints; nothing here ever touches a
fixed-width integer type.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = list[list[int]]


def vec(coords: Iterable[int]) -> Vector:
    return tuple(int(c) for c in coords)


def add(u: Sequence[int], v: Sequence[int]) -> Vector:
    _same_dim(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    _same_dim(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(k: int, v: Sequence[int]) -> Vector:
    return tuple(k * a for a in v)


def neg(v: Sequence[int]) -> Vector:
    return tuple(-a for a in v)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    _same_dim(u, v)
    return sum(a * b for a, b in zip(u, v))


def zero(dim: int) -> Vector:
    return (0,) * dim


def vsum(vectors: Iterable[Sequence[int]], dim: int) -> Vector:
    total = [0] * dim
    for v in vectors:
        if len(v) != dim:
            raise ValueError(f"dimension mismatch: expected {dim}, got {len(v)}")
        for i, a in enumerate(v):
            total[i] += a
    return tuple(total)


def _same_dim(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    if any(len(row) != inner for row in a):
        raise ValueError("shape mismatch in matmul")
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for row in a]


@dataclass(frozen=True)
class IntegerLattice:
    """A subgroup of Z^dim, stored by its row-style Hermite normal form.

    The basis is canonical, so dataclass equality is subgroup equality.
    Build instances with :meth:`from_generators`; the raw constructor
    trusts its input.
    """

    dim: int
    basis: tuple[Vector, ...] = ()

    @classmethod
    def from_generators(cls, rows: Iterable[Sequence[int]], dim: int | None = None) -> "IntegerLattice":
        return hnf(rows, dim)[0]

    @classmethod
    def zero(cls, dim: int) -> "IntegerLattice":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "IntegerLattice":
        return cls(dim, tuple(tuple(r) for r in identity(dim)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(row) if a) for row in self.basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo the lattice.

        Each pivot coordinate ends up in ``[0, pivot)``; two vectors get the
        same answer exactly when their difference lies in the lattice.
        """
        if len(v) != self.dim:
            raise ValueError(f"dimension mismatch: lattice dim {self.dim}, vector dim {len(v)}")
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            q = out[p] // row[p]
            if q:
                for j in range(p, self.dim):
                    out[j] -= q * row[j]
        return tuple(out)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence[int]) -> Vector:
        """Integer coefficients of ``v`` in the canonical basis."""
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        rest = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            q, r = divmod(rest[p], row[p])
            if r:
                raise ValueError(f"{tuple(v)} is not in the lattice")
            coeffs.append(q)
            for j in range(p, self.dim):
                rest[j] -= q * row[j]
        if any(rest):
            raise ValueError(f"{tuple(v)} is not in the lattice")
        return tuple(coeffs)

    def join(self, other: "IntegerLattice | Iterable[Sequence[int]]") -> "IntegerLattice":
        rows = other.basis if isinstance(other, IntegerLattice) else list(other)
        return IntegerLattice.from_generators(list(self.basis) + list(rows), self.dim)

    def intersect(self, other: "IntegerLattice") -> "IntegerLattice":
        return lattice_intersect(self, other)

    def is_sublattice_of(self, other: "IntegerLattice") -> bool:
        return all(other.contains(row) for row in self.basis)

    def order_of(self, v: Sequence[int]) -> int | None:
        """Order of ``v`` in Z^dim / self, or None when it has infinite order."""
        line = IntegerLattice.from_generators([v], self.dim)
        if line.rank == 0:
            return 1
        meet = lattice_intersect(self, line)
        if meet.rank == 0:
            return None
        return abs(line.coordinates(meet.basis[0])[0])

    def quotient_invariants(self) -> tuple[int, ...]:
        """Invariant factors of Z^dim / self; zeros stand for free summands."""
        if self.rank == 0:
            return (0,) * self.dim
        d, _, _ = snf([list(r) for r in self.basis])
        diag = [d[i][i] for i in range(min(self.rank, self.dim))]
        return tuple(x for x in diag if x != 1) + (0,) * (self.dim - self.rank)

    def coset_representatives(self, sub: "IntegerLattice") -> list[Vector]:
        """Representatives of self / sub for a finite-index sublattice."""
        if sub.dim != self.dim:
            raise ValueError("dimension mismatch")
        if sub.rank != self.rank or not sub.is_sublattice_of(self):
            raise ValueError("not a finite-index sublattice")
        if self.rank == 0:
            return [zero(self.dim)]
        coords, _ = hnf([self.coordinates(r) for r in sub.basis], self.rank)
        ranges = [range(coords.basis[i][i]) for i in range(self.rank)]
        reps = []
        for c in product(*ranges):
            reps.append(vsum((scale(ci, row) for ci, row in zip(c, self.basis)), self.dim))
        return reps

    def index_in(self, other: "IntegerLattice") -> int | None:
        """[other : self] when finite, else None."""
        if self.rank != other.rank or not self.is_sublattice_of(other):
            return None
        if self.rank == 0:
            return 1
        coords, _ = hnf([other.coordinates(r) for r in self.basis], other.rank)
        out = 1
        for i in range(other.rank):
            out *= coords.basis[i][i]
        return out


def _check_rows(rows: list[list[int]], dim: int | None) -> int:
    if dim is None:
        if not rows:
            raise ValueError("dim is required for an empty generator list")
        dim = len(rows[0])
    if dim < 0:
        raise ValueError("dim must be nonnegative")
    for r in rows:
        if len(r) != dim:
            raise ValueError(f"dimension mismatch: expected {dim}, got {len(r)}")
    return dim


def hnf(rows: Iterable[Sequence[int]], dim: int | None = None) -> tuple[IntegerLattice, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(lattice, U)`` with ``U`` unimodular and ``U @ rows`` equal to
    the canonical basis followed by zero rows.
    """
    a = [[int(x) for x in r] for r in rows]
    dim = _check_rows(a, dim)
    m = len(a)
    u = identity(m)

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def axpy(i: int, q: int, j: int) -> None:
        # row_i -= q * row_j
        ai, aj, ui, uj = a[i], a[j], u[i], u[j]
        for k in range(dim):
            ai[k] -= q * aj[k]
        for k in range(m):
            ui[k] -= q * uj[k]

    r = 0
    for col in range(dim):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if a[i][col]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(a[i][col]))
            swap(r, piv)
            clean = True
            for i in range(r + 1, m):
                if a[i][col]:
                    axpy(i, a[i][col] // a[r][col], r)
                    if a[i][col]:
                        clean = False
            if clean:
                break
        if not a[r][col]:
            continue
        if a[r][col] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][col] // a[r][col]
            if q:
                axpy(i, q, r)
        r += 1
    return IntegerLattice(dim, tuple(tuple(row) for row in a[:r])), u


def snf(matrix: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D`` with unimodular ``left``, ``right`` such that
    ``left @ D @ right == matrix``. Diagonal entries are nonnegative and each
    divides the next; zeros come last.
    """
    a = [[int(x) for x in r] for r in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    if any(len(r) != n for r in a):
        raise ValueError("ragged matrix")
    left = identity(m)   # inverse of the accumulated row operations
    right = identity(n)  # inverse of the accumulated column operations

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in left:
            row[i], row[j] = row[j], row[i]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        right[i], right[j] = right[j], right[i]

    def row_axpy(i: int, q: int, j: int) -> None:
        # row_i -= q row_j; inverse is row_i += q row_j, i.e. left col_j += q col_i
        for k in range(n):
            a[i][k] -= q * a[j][k]
        for row in left:
            row[j] += q * row[i]

    def col_axpy(i: int, q: int, j: int) -> None:
        # col_i -= q col_j; inverse on the right: right row_j += q row_i
        for row in a:
            row[i] -= q * row[j]
        for k in range(n):
            right[j][k] += q * right[i][k]

    def row_neg(i: int) -> None:
        a[i] = [-x for x in a[i]]
        for row in left:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            cells = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
            if not cells:
                break
            _, i, j = min(cells)
            row_swap(t, i)
            col_swap(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    row_axpy(i, a[i][t] // p, t)
                    dirty = dirty or bool(a[i][t])
            for j in range(t + 1, n):
                if a[t][j]:
                    col_axpy(j, a[t][j] // p, t)
                    dirty = dirty or bool(a[t][j])
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            # pull a non-multiple into row t and go again
            row_axpy(t, -1, bad)
        if t < m and t < n and a[t][t] < 0:
            row_neg(t)
    return a, left, right


def lattice_contains(lattice: IntegerLattice, v: Sequence[int]) -> bool:
    return lattice.contains(v)


def lattice_intersect(l1: IntegerLattice, l2: IntegerLattice) -> IntegerLattice:
    if l1.dim != l2.dim:
        raise ValueError(f"dimension mismatch: {l1.dim} vs {l2.dim}")
    if l1.rank == 0 or l2.rank == 0:
        return IntegerLattice.zero(l1.dim)
    stacked = [list(r) for r in l1.basis] + [[-x for x in r] for r in l2.basis]
    h, u = hnf(stacked, l1.dim)
    kernel = u[h.rank:]
    r1 = l1.rank
    meet = [vsum((scale(c, row) for c, row in zip(k[:r1], l1.basis)), l1.dim) for k in kernel]
    return IntegerLattice.from_generators(meet, l1.dim)


def lattice_equal(l1: IntegerLattice, l2: IntegerLattice) -> bool:
    if l1.dim != l2.dim:
        raise ValueError(f"dimension mismatch: {l1.dim} vs {l2.dim}")
    return l1.basis == l2.basis
