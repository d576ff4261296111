"""Hopf-algebra kernels and the square-collapse functor A(V, xi).

The kernel of a map f of commutative cocommutative Hopf algebras is
computed degreewise through the cotensor condition: x lies in the kernel
iff f(x) = 0 and (id (x) f) of the reduced coproduct of x vanishes.  The
functor A(V, xi) is the free commutative algebra on V modulo x^2 = xi(x);
rewriting every square terminates in the square-free monomial basis, so
its graded dimensions agree with those of the exterior algebra on V.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

from . import gf2
from .algebra import QAlgebra


class SquareFreeQuotient:
    """The quotient Hopf map A -> A/(g^2 : g generator).

    The target is an exterior algebra and the induced map on
    indecomposables is the identity, which is all the kernel computation
    sees of the once-looped boundary map.
    """

    def __init__(self, model: QAlgebra):
        self.source = model
        self.target_label = f"{model.space} mod squares"

    def target_basis(self, degree: int) -> List:
        return [
            m
            for m in self.source.basis(degree).monomials
            if all(m[i] != m[i + 1] for i in range(len(m) - 1))
        ]

    def target_dim(self, degree: int) -> int:
        return len(self.target_basis(degree))

    def matrix(self, degree: int) -> gf2.F2Matrix:
        """Coordinate matrix; apply() sends source vectors to target vectors."""
        basis = self.source.basis(degree)
        index = {m: i for i, m in enumerate(self.target_basis(degree))}
        rows = []
        for m in self.target_basis(degree):
            # projection: target coordinate m reads off source coordinate m
            rows.append(1 << basis.index[m])
        return gf2.F2Matrix(tuple(rows), basis.dim)


def hopf_kernel_dims(f, max_degree: int) -> List[int]:
    """Degreewise dimensions of the Hopf kernel of f.

    f provides .source (a QAlgebra), .target_dim(n) and .matrix(n); the
    kernel in degree n is the space of x with f(x) = 0 and
    (id (x) f) psi-bar(x) = 0.  Degree zero always contributes 1.
    """
    model: QAlgebra = f.source
    dims = [1]
    for n in range(1, max_degree + 1):
        basis = model.basis(n)
        f_n = f.matrix(n)
        blocks = []  # (left degree, offset, f-matrix at complementary degree)
        offset = f.target_dim(n)
        for k in range(1, n):
            blocks.append((k, offset, f.matrix(n - k)))
            offset += model.dim(k) * f.target_dim(n - k)
        rows = []
        for mono in basis.monomials:
            x = model.from_monos([mono])
            vec = f_n.apply(1 << basis.index[mono])
            for l_mono, r_mono in model.reduced_coproduct(x):
                k = model.mono_degree(l_mono)
                blk = blocks[k - 1]
                _, off, fk = blk
                fr = fk.apply(1 << model.basis(n - k).index[r_mono])
                width = f.target_dim(n - k)
                pos = off + model.basis(k).index[l_mono] * width
                vec ^= fr << pos
            rows.append(vec)
        matrix = gf2.F2Matrix(tuple(rows), max(offset, 1))
        dims.append(gf2.left_kernel(matrix).dim)
    return dims


def squares_dims(model: QAlgebra, max_degree: int) -> List[int]:
    """Dimensions of the subalgebra of squares xi(A) <= A."""
    return [
        model.dim(n // 2) if n % 2 == 0 else 0 for n in range(max_degree + 1)
    ]


@dataclass(frozen=True)
class AFunctorPresentation:
    """A graded vector space V with a squaring map xi: V_n -> V_2n.

    Generators are indexed 0..len(degrees)-1; xi maps a generator to an
    F2 sum of generators of doubled degree.
    """

    degrees: Tuple[int, ...]
    xi: Dict[int, Tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for i, targets in self.xi.items():
            for j in targets:
                if self.degrees[j] != 2 * self.degrees[i]:
                    raise ValueError("xi must double degrees")
        if any(d <= 0 for d in self.degrees):
            raise ValueError("generator degrees must be positive")

    def dims(self, max_degree: int) -> List[int]:
        """Graded dimensions of A(V, xi): square-free monomial counts."""
        return exterior_dims(self.degrees, max_degree)

    def sv_monomials(self, degree: int) -> List[Tuple[int, ...]]:
        """All polynomial monomials of the given degree, as index tuples."""
        out: List[Tuple[int, ...]] = []

        def extend(partial: Tuple[int, ...], remaining: int, start: int) -> None:
            if remaining == 0:
                out.append(partial)
                return
            for i in range(start, len(self.degrees)):
                d = self.degrees[i]
                if d <= remaining:
                    extend(partial + (i,), remaining - d, i)

        extend((), degree, 0)
        return out

    def reduce(self, mono: Sequence[int]) -> FrozenSet[Tuple[int, ...]]:
        """Normal form of a monomial in the square-free basis."""
        stack = [tuple(sorted(mono))]
        acc: set = set()
        while stack:
            m = stack.pop()
            rep = None
            for i in range(len(m) - 1):
                if m[i] == m[i + 1]:
                    rep = i
                    break
            if rep is None:
                acc.symmetric_difference_update({m})
                continue
            g = m[rep]
            rest = m[:rep] + m[rep + 2:]
            for target in self.xi.get(g, ()):
                stack.append(tuple(sorted(rest + (target,))))
        return frozenset(acc)

    def brute_dims(self, max_degree: int) -> List[int]:
        """dim SV_n / (x^2 - xi x) by explicit ideal rank (test oracle)."""
        dims = [1]
        for n in range(1, max_degree + 1):
            monos = self.sv_monomials(n)
            index = {m: i for i, m in enumerate(monos)}
            ideal_rows = []
            for g, gdeg in enumerate(self.degrees):
                if 2 * gdeg > n:
                    continue
                for cof in self.sv_monomials(n - 2 * gdeg):
                    vec = 1 << index[tuple(sorted(cof + (g, g)))]
                    for target in self.xi.get(g, ()):
                        vec ^= 1 << index[tuple(sorted(cof + (target,)))]
                    ideal_rows.append(vec)
            rank = gf2.rank(gf2.F2Matrix(tuple(ideal_rows), len(monos)))
            dims.append(len(monos) - rank)
        return dims


def exterior_dims(degrees: Sequence[int], max_degree: int) -> List[int]:
    """Coefficients of prod (1 + t^d) through max_degree."""
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for d in degrees:
        if d > max_degree:
            continue
        for n in range(max_degree, d - 1, -1):
            coeffs[n] += coeffs[n - d]
    return coeffs


def polynomial_dims(degrees: Sequence[int], max_degree: int) -> List[int]:
    """Coefficients of prod 1/(1 - t^d) through max_degree."""
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    for d in degrees:
        if d > max_degree:
            continue
        for n in range(d, max_degree + 1):
            coeffs[n] += coeffs[n - d]
    return coeffs


def convolve(a: Sequence[int], b: Sequence[int], max_degree: int) -> List[int]:
    out = [0] * (max_degree + 1)
    for i, ai in enumerate(a[: max_degree + 1]):
        if not ai:
            continue
        for j, bj in enumerate(b[: max_degree + 1 - i]):
            out[i + j] += ai * bj
    return out
