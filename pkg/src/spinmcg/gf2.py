"""Exact linear algebra over GF(2) using int bitsets.

Rows are Python ints; bit j is column j.  Addition is XOR.  All bases are
kept in canonical reduced echelon form so subspace equality is structural
equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import NotASubspace


def _lsb(x: int) -> int:
    """Index of the least significant set bit."""
    return (x & -x).bit_length() - 1


def _rref(rows: Iterable[int]) -> Tuple[int, ...]:
    """Reduced row echelon form, rows ordered by pivot column."""
    basis: dict[int, int] = {}  # pivot column -> row; pivot columns are unit columns
    for row in rows:
        for p, b in basis.items():
            if (row >> p) & 1:
                row ^= b
        if not row:
            continue
        p = _lsb(row)
        for q, other in basis.items():
            if (other >> p) & 1:
                basis[q] = other ^ row
        basis[p] = row
    return tuple(basis[p] for p in sorted(basis))


@dataclass(frozen=True)
class F2Matrix:
    """Bit-packed matrix; rows[i] holds row i, bit j is column j."""

    rows: Tuple[int, ...]
    n_cols: int

    @staticmethod
    def from_dense(dense: Sequence[Sequence[int]], n_cols: Optional[int] = None) -> "F2Matrix":
        if n_cols is None:
            n_cols = len(dense[0]) if dense else 0
        packed = []
        for row in dense:
            r = 0
            for j, v in enumerate(row):
                if v & 1:
                    r |= 1 << j
            packed.append(r)
        return F2Matrix(tuple(packed), n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "F2Matrix":
        cols = [0] * self.n_cols
        for i, row in enumerate(self.rows):
            while row:
                j = _lsb(row)
                cols[j] |= 1 << i
                row &= row - 1
        return F2Matrix(tuple(cols), self.n_rows)

    def apply(self, vec: int) -> int:
        """Matrix times column vector; returns a bitset over rows."""
        out = 0
        for i, row in enumerate(self.rows):
            if (row & vec).bit_count() & 1:
                out |= 1 << i
        return out


@dataclass(frozen=True)
class F2Subspace:
    """Subspace given by a reduced echelon basis of row vectors."""

    ambient_dim: int
    basis: Tuple[int, ...]

    @staticmethod
    def from_vectors(vectors: Iterable[int], ambient_dim: int) -> "F2Subspace":
        return F2Subspace(ambient_dim, _rref(vectors))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(_lsb(b) for b in self.basis)

    def reduce(self, vec: int) -> int:
        """Residual of vec after reduction against the basis."""
        for b in self.basis:
            if (vec >> _lsb(b)) & 1:
                vec ^= b
        return vec

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def coordinates(self, vec: int) -> Tuple[int, ...]:
        """Coefficients of vec in the echelon basis; vec must lie in the span."""
        residual = vec
        coeffs = []
        for b in self.basis:
            c = (residual >> _lsb(b)) & 1
            coeffs.append(c)
            if c:
                residual ^= b
        if residual:
            raise NotASubspace("vector outside subspace")
        return tuple(coeffs)

    def is_subspace_of(self, other: "F2Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)


def rank(m: F2Matrix) -> int:
    return len(_rref(m.rows))


def kernel_basis(m: F2Matrix) -> F2Subspace:
    """Canonical echelon basis of the right null space."""
    reduced = _rref(m.rows)
    pivots = [_lsb(r) for r in reduced]
    pivot_set = set(pivots)
    vectors = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for r, p in zip(reduced, pivots):
            if (r >> free) & 1:
                vec |= 1 << p
        vectors.append(vec)
    return F2Subspace.from_vectors(vectors, m.n_cols)


def image_basis(m: F2Matrix) -> F2Subspace:
    """Canonical echelon basis of the column space."""
    return F2Subspace.from_vectors(m.transpose().rows, m.n_rows)


def left_kernel(m: F2Matrix) -> F2Subspace:
    """Combinations x of the rows with x . rows = 0.

    Forward elimination with combination tracking; rows that reduce to
    zero leave their combination behind.  Avoids transposing when n_cols
    is much larger than n_rows.
    """
    pivots: dict[int, Tuple[int, int]] = {}  # pivot column -> (row, combo)
    combos = []
    for i, row in enumerate(m.rows):
        combo = 1 << i
        while row:
            p = _lsb(row)
            hit = pivots.get(p)
            if hit is None:
                pivots[p] = (row, combo)
                break
            row ^= hit[0]
            combo ^= hit[1]
        else:
            combos.append(combo)
    return F2Subspace.from_vectors(combos, m.n_rows)


def row_space(m: F2Matrix) -> F2Subspace:
    return F2Subspace.from_vectors(m.rows, m.n_cols)


def quotient_dim(sub: F2Subspace, ambient: F2Subspace) -> int:
    if sub.ambient_dim != ambient.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    if not sub.is_subspace_of(ambient):
        raise NotASubspace("claimed subspace is not contained in ambient")
    return ambient.dim - sub.dim


def subspace_sum(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    return F2Subspace.from_vectors(a.basis + b.basis, a.ambient_dim)


def subspace_intersection(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    """Intersection via the left kernel of the stacked basis matrix."""
    if a.ambient_dim != b.ambient_dim:
        raise NotASubspace("ambient dimensions differ")
    stacked = F2Matrix(a.basis + b.basis, a.ambient_dim)
    left_ker = kernel_basis(stacked.transpose())
    vectors = []
    for combo in left_ker.basis:
        vec = 0
        for i in range(len(a.basis)):
            if (combo >> i) & 1:
                vec ^= a.basis[i]
        vectors.append(vec)
    return F2Subspace.from_vectors(vectors, a.ambient_dim)


def span_solve(vectors: Sequence[int], target: int) -> Optional[Tuple[int, F2Subspace]]:
    """Solve XOR of c-selected vectors == target.

    Returns (combination bitset, kernel of the combination map) or None
    when target is outside the span.  One forward elimination pass with
    combination tracking; no transposition of wide rows.
    """
    pivots: dict[int, Tuple[int, int]] = {}
    kernel_combos = []
    for i, row in enumerate(vectors):
        combo = 1 << i
        while row:
            p = _lsb(row)
            hit = pivots.get(p)
            if hit is None:
                pivots[p] = (row, combo)
                break
            row ^= hit[0]
            combo ^= hit[1]
        else:
            kernel_combos.append(combo)
    combo = 0
    while target:
        p = _lsb(target)
        hit = pivots.get(p)
        if hit is None:
            return None
        target ^= hit[0]
        combo ^= hit[1]
    return combo, F2Subspace.from_vectors(kernel_combos, len(vectors))


def express_in_span(vectors: Sequence[int], target: int) -> Optional[int]:
    """A combination bitset c with XOR of c-selected vectors == target.

    Returns None when target is outside the span.  Deterministic but not
    canonical; callers needing canonical coset representatives should
    reduce against a kernel basis.
    """
    solved = span_solve(vectors, target)
    return None if solved is None else solved[0]


def solve(m: F2Matrix, target: int) -> Optional[Tuple[int, F2Subspace]]:
    """Solve m @ x = target.

    Returns (particular solution, kernel) or None when inconsistent.
    Both live in the column index space of m.
    """
    aug_rows = []
    for i, row in enumerate(m.rows):
        bit = (target >> i) & 1
        aug_rows.append(row | (bit << m.n_cols))
    reduced = _rref(aug_rows)
    particular = 0
    for r in reduced:
        p = _lsb(r)
        if p == m.n_cols:
            return None
        if (r >> m.n_cols) & 1:
            particular |= 1 << p
    return particular, kernel_basis(m)
