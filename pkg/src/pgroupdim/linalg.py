"""Exact linear algebra over the prime field F_p.

Subspaces are kept in reduced row echelon form, which is a canonical
form: two generating sets with the same span produce identical bases,
so subspace equality is plain basis equality.  All entries are residues
0..p-1 and every operation reduces eagerly; nothing here ever touches
floating point.

Intersections use the block (Zassenhaus) construction so the same
elimination routine serves everything.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .errors import ContainmentError, DimensionMismatchError, ParameterError

_SMALL_PRIMES = {3, 5, 7, 11, 13, 17, 19, 23}


def check_odd_prime(p: int) -> None:
    if p in _SMALL_PRIMES:
        return
    if p < 3 or p % 2 == 0:
        raise ParameterError(f"modulus must be an odd prime, got {p}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ParameterError(f"modulus must be an odd prime, got {p}")
        d += 2


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n, stored as a canonical rref basis.

    Invariants: every basis row has length ambient_dim, entries in
    0..p-1, pivot entries 1 with zeros above and below, and strictly
    increasing pivot columns.
    """

    ambient_dim: int
    p: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...] = field(repr=False, default=())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains(self, v) -> bool:
        """Membership of a single vector, by elimination against the basis."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector length {len(v)} != ambient dimension {self.ambient_dim}"
            )
        res = kernels.reduce_vec(list(v), [list(r) for r in self.basis], list(self.pivots), self.p)
        return not any(res)

    def reduce(self, v) -> tuple[int, ...]:
        """Residue of v modulo this subspace (canonical coset representative)."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector length {len(v)} != ambient dimension {self.ambient_dim}"
            )
        return tuple(
            kernels.reduce_vec(list(v), [list(r) for r in self.basis], list(self.pivots), self.p)
        )

    def contains_space(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains(row) for row in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return rref(list(self.basis) + list(other.basis), self.p, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Block elimination: rows (u | u) for u in self and (w | 0) for w
        in other; rows whose left half vanishes carry the intersection in
        the right half."""
        self._check_compatible(other)
        d = self.ambient_dim
        block = [list(r) + list(r) for r in self.basis]
        block += [list(r) + [0] * d for r in other.basis]
        rows, _ = kernels.rref(block, self.p)
        inter = [r[d:] for r in rows if not any(r[:d])]
        return rref(inter, self.p, d)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise DimensionMismatchError(
                f"ambient mismatch: ({self.ambient_dim}, p={self.p}) vs "
                f"({other.ambient_dim}, p={other.p})"
            )

    def vectors(self):
        """Iterate over every vector in the span (p^dim of them)."""
        p, d = self.p, self.ambient_dim
        n = self.dim
        coeffs = [0] * n
        while True:
            v = [0] * d
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j in range(d):
                        v[j] = (v[j] + c * row[j]) % p
            yield tuple(v)
            i = 0
            while i < n and coeffs[i] == p - 1:
                coeffs[i] = 0
                i += 1
            if i == n:
                return
            coeffs[i] += 1


def rref(rows, p: int, n: int) -> Subspace:
    """Canonical reduced row echelon basis of the span of the given rows."""
    check_odd_prime(p)
    for r in rows:
        if len(r) != n:
            raise DimensionMismatchError(f"row length {len(r)} != ambient dimension {n}")
    basis, pivots = kernels.rref([list(r) for r in rows], p)
    return Subspace(n, p, tuple(tuple(r) for r in basis), tuple(pivots))


def zero_subspace(p: int, n: int) -> Subspace:
    return rref([], p, n)


def full_subspace(p: int, n: int) -> Subspace:
    return rref([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, n)


def contains(space: Subspace, v) -> bool:
    return space.contains(v)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    return a.sum(b)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    return a.intersect(b)


def quotient_logorder(s: Subspace, t: Subspace) -> int:
    """log_p of the index |S : T| for nested subspaces T <= S."""
    if not s.contains_space(t):
        raise ContainmentError("quotient requires T <= S")
    return s.dim - t.dim


class MutableBasis:
    """Incremental rref basis for closure loops.

    add() reduces the vector against the current rows and inserts the
    residue (normalized, back-substituted) if it is nonzero; it returns
    the inserted row, or None when the vector was already in the span.
    snapshot() yields a canonical Subspace.
    """

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.rows: list[list[int]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, vec) -> bool:
        return not any(kernels.reduce_vec(list(vec), self.rows, self.pivots, self.p))

    def add(self, vec):
        p = self.p
        res = kernels.reduce_vec(list(vec), self.rows, self.pivots, self.p)
        col = next((j for j, x in enumerate(res) if x), -1)
        if col < 0:
            return None
        inv = pow(res[col], p - 2, p)
        if inv != 1:
            res = [(x * inv) % p for x in res]
        # eliminate the new pivot column from existing rows, keep order
        for i, row in enumerate(self.rows):
            f = row[col]
            if f:
                self.rows[i] = [(a - f * b) % p for a, b in zip(row, res)]
        at = next((i for i, c in enumerate(self.pivots) if c > col), len(self.pivots))
        self.rows.insert(at, res)
        self.pivots.insert(at, col)
        return tuple(res)

    def snapshot(self) -> Subspace:
        return Subspace(self.n, self.p, tuple(tuple(r) for r in self.rows), tuple(self.pivots))
