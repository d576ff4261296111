"""The free commutative algebra model of H_*(Q X_+) over F2.

For each base space the model is the free commutative algebra on the
positive-degree generator set {Q^I x : I admissible, e(I) > deg x}.  For
spaces with a degree-zero class the coproduct is computed in the larger
algebra where that class is a polynomial variable (it is the group-like
[1] of the zeroth homology), and then normalized to the degree-zero
component by sending that variable to 1 in each tensor factor.  This is
exactly translation to the base component, so dimensions, primitives and
the dual Steenrod action below agree with the homology of the base
component.

Dyer-Lashof applications are kept in normal form: instability collapses
Q^s x to 0 or x^2 at the edge, inadmissible compositions are rewritten
through the Adem relations, and the dual Steenrod action commutes past
Q-operations through the Nishida relations

    Sq^a_* Q^r = sum_b C(r-a, a-2b) Q^(r-a+b) Sq^b_*.

A `reduced` model drops the whole index-zero family (the model of the
based space rather than the space with disjoint basepoint).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import gf2
from .errors import ParityMismatch, SpaceMismatch
from .spaces import (
    binom_mod2,
    check_space,
    class_degree,
    class_prefix,
    coproduct as base_coproduct,
    has_degree_zero_class,
    lambda_sq_index,
    steenrod_dual,
)
from .words import Word, generator_set, is_admissible

DEFAULT_MAX_DEGREE = 12
HARD_MAX_DEGREE = 20

Gen = Tuple[Word, int]  # (Dyer-Lashof word, base class index)
Mono = Tuple[Gen, ...]  # factors sorted by generator key
Monos = FrozenSet[Mono]
TensorPairs = FrozenSet[Tuple[Mono, Mono]]

_EMPTY: Monos = frozenset()
_UNIT: Monos = frozenset({()})


def _xor(acc: set, items: Iterable) -> None:
    acc.symmetric_difference_update(items)


@dataclass(frozen=True)
class Element:
    """An F2 linear combination of monomials in one algebra model."""

    model: "QAlgebra"
    monos: Monos

    def __add__(self, other: "Element") -> "Element":
        if self.model is not other.model:
            raise SpaceMismatch("elements live in different models")
        return Element(self.model, self.monos ^ other.monos)

    def __mul__(self, other: "Element") -> "Element":
        return self.model.product(self, other)

    def __bool__(self) -> bool:
        return bool(self.monos)

    def is_homogeneous(self) -> bool:
        return len({self.model.mono_degree(m) for m in self.monos}) <= 1

    @property
    def degree(self) -> Optional[int]:
        degs = {self.model.mono_degree(m) for m in self.monos}
        if len(degs) != 1:
            return None
        return degs.pop()

    def __str__(self) -> str:
        return self.model.render(self)

    __repr__ = __str__


@dataclass(frozen=True)
class DegreeBasis:
    """Ordered monomial basis of one graded piece, with coordinates."""

    space: str
    degree: int
    monomials: Tuple[Mono, ...]
    index: Dict[Mono, int] = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.monomials)


class QAlgebra:
    """One model: a space tag plus the reduced/unreduced choice.

    Instances are interned via get_model; identity comparison is safe.
    """

    def __init__(self, space: str, reduced: bool = False):
        check_space(space)
        if not has_degree_zero_class(space):
            reduced = False  # already based and connected
        self.space = space
        self.reduced = reduced
        self.key = (space, reduced)
        self._q_gen: Dict[Tuple[int, Gen], Monos] = {}
        self._sq_gen: Dict[Tuple[int, Gen], Monos] = {}
        self._psi_gen_full: Dict[Gen, TensorPairs] = {}
        self._psi_gen: Dict[Gen, TensorPairs] = {}
        self._psi_mono: Dict[Mono, TensorPairs] = {}
        self._basis: Dict[int, DegreeBasis] = {}
        self._gens: Dict[int, List[Gen]] = {}
        self._primitives: Dict[int, gf2.F2Subspace] = {}
        self._psi_rows: Dict[int, Tuple[int, ...]] = {}
        self._q_unit: Dict[Tuple[int, int], FrozenSet[Tuple[Mono, int]]] = {}

    # ----- generators and degrees -----

    def gen_degree(self, gen: Gen) -> int:
        return class_degree(self.space, gen[1]) + sum(gen[0])

    def gen_key(self, gen: Gen) -> Tuple[int, int, Word]:
        return (self.gen_degree(gen), gen[1], gen[0])

    def mono_degree(self, mono: Mono) -> int:
        return sum(self.gen_degree(g) for g in mono)

    def generators(self, max_degree: int) -> List[Gen]:
        """Positive-degree generators of the model, ordered canonically."""
        out: List[Gen] = []
        for d in range(1, max_degree + 1):
            out.extend(self.generators_in_degree(d))
        return out

    def generators_in_degree(self, degree: int) -> List[Gen]:
        if degree not in self._gens:
            gens = []
            for qg in generator_set(self.space, degree, positive_only=True):
                if qg.degree != degree:
                    continue
                if self.reduced and qg.index == 0:
                    continue
                gens.append((qg.word, qg.index))
            gens.sort(key=self.gen_key)
            self._gens[degree] = gens
        return self._gens[degree]

    # ----- element constructors -----

    def zero(self) -> Element:
        return Element(self, _EMPTY)

    def unit(self) -> Element:
        return Element(self, _UNIT)

    def from_monos(self, monos: Iterable[Mono]) -> Element:
        acc: set = set()
        _xor(acc, monos)
        return Element(self, frozenset(acc))

    def gen_element(self, word: Word, index: int) -> Element:
        """Normal form of the (possibly inadmissible) application Q^word x."""
        if self.reduced and index == 0:
            raise ValueError("reduced model has no index-zero classes")
        word = tuple(word)
        if is_admissible(word) and self._gen_is_valid((word, index)):
            return Element(self, frozenset({((word, index),)}))
        return self.q_word(word, self.base(index))

    def base(self, index: int) -> Element:
        if self.reduced and index == 0:
            raise ValueError("reduced model has no degree-zero class")
        return Element(self, frozenset({(((), index),)}))

    def _gen_is_valid(self, gen: Gen) -> bool:
        word, index = gen
        from .words import excess

        return excess(word) > class_degree(self.space, index)

    # ----- product -----

    def mono_mul(self, a: Mono, b: Mono) -> Mono:
        return tuple(sorted(a + b, key=self.gen_key))

    def product(self, x: Element, y: Element) -> Element:
        if x.model is not self or y.model is not self:
            raise SpaceMismatch("operands belong to a different model")
        acc: set = set()
        for m in x.monos:
            for n in y.monos:
                _xor(acc, {self.mono_mul(m, n)})
        return Element(self, frozenset(acc))

    def frobenius(self, x: Element) -> Element:
        return self.product(x, x)

    # ----- Dyer-Lashof action -----

    def q_gen_apply(self, s: int, gen: Gen) -> Monos:
        """Normal form of Q^s applied to a single generator."""
        key = (s, gen)
        cached = self._q_gen.get(key)
        if cached is not None:
            return cached
        d = self.gen_degree(gen)
        if s < d:
            result: Monos = _EMPTY
        elif s == d:
            result = frozenset({self.mono_mul((gen,), (gen,))})
        else:
            word, index = gen
            if not word or s <= 2 * word[0]:
                result = frozenset({(((s,) + word, index),)})
            else:
                inner: Gen = (word[1:], index)
                acc: set = set()
                from .words import adem_word

                for outer, mid in adem_word(s, word[0]):
                    _xor(acc, self.q_apply_monos(outer, self.q_gen_apply(mid, inner)))
                result = frozenset(acc)
        self._q_gen[key] = result
        return result

    def q_mono_apply(self, s: int, mono: Mono) -> Monos:
        """Cartan formula along the factors of a monomial."""
        if not mono:
            return _UNIT if s == 0 else _EMPTY
        state: Dict[int, set] = {0: {()}}
        for g in mono:
            nxt: Dict[int, set] = {}
            gdeg = self.gen_degree(g)
            for spent, partial in state.items():
                for i in range(gdeg, s - spent + 1):  # Q^i g = 0 below the degree
                    piece = self.q_gen_apply(i, g)
                    if not piece:
                        continue
                    bucket = nxt.setdefault(spent + i, set())
                    for m in partial:
                        for p in piece:
                            _xor(bucket, {self.mono_mul(m, p)})
            state = nxt
            if not state:
                return _EMPTY
        return frozenset(state.get(s, set()))

    def q_apply_monos(self, s: int, monos: Monos) -> Monos:
        if s < 0:
            return _EMPTY
        acc: set = set()
        for m in monos:
            _xor(acc, self.q_mono_apply(s, m))
        return frozenset(acc)

    def q_apply(self, s: int, x: Element) -> Element:
        return Element(self, self.q_apply_monos(s, x.monos))

    def q_word(self, word: Sequence[int], x: Element) -> Element:
        out = x
        for s in reversed(tuple(word)):
            out = self.q_apply(s, out)
        return out

    # ----- coproduct -----

    def _is_unit_gen(self, gen: Gen) -> bool:
        return not gen[0] and class_degree(self.space, gen[1]) == 0

    def _eta_mono(self, mono: Mono) -> Mono:
        return tuple(g for g in mono if not self._is_unit_gen(g))

    def psi_gen_full(self, gen: Gen) -> TensorPairs:
        """Coproduct before component normalization.

        The degree-zero base class is treated as a polynomial variable
        here, so that Q-operations can act through the Cartan formula.
        """
        cached = self._psi_gen_full.get(gen)
        if cached is not None:
            return cached
        word, index = gen
        acc: set = set()
        if not word:
            if self.space == "sigma-cp-inf":
                _xor(acc, {((gen,), ()), ((), (gen,))})
            else:
                for i, j in base_coproduct(self.space, index):
                    left: Mono = (((), i),)
                    right: Mono = (((), j),)
                    if self.reduced:
                        left = self._eta_mono(left)
                        right = self._eta_mono(right)
                    _xor(acc, {(left, right)})
        else:
            s = word[0]
            inner: Gen = (word[1:], index)
            for l_mono, r_mono in self.psi_gen_full(inner):
                for i in range(s + 1):
                    lefts = self.q_mono_apply(i, l_mono)
                    if not lefts:
                        continue
                    rights = self.q_mono_apply(s - i, r_mono)
                    if not rights:
                        continue
                    for lm in lefts:
                        for rm in rights:
                            _xor(acc, {(lm, rm)})
        result = frozenset(acc)
        self._psi_gen_full[gen] = result
        return result

    def psi_gen(self, gen: Gen) -> TensorPairs:
        """Component-normalized coproduct of one generator."""
        cached = self._psi_gen.get(gen)
        if cached is not None:
            return cached
        acc: set = set()
        for l_mono, r_mono in self.psi_gen_full(gen):
            _xor(acc, {(self._eta_mono(l_mono), self._eta_mono(r_mono))})
        result = frozenset(acc)
        self._psi_gen[gen] = result
        return result

    def psi_mono(self, mono: Mono) -> TensorPairs:
        cached = self._psi_mono.get(mono)
        if cached is not None:
            return cached
        acc: set = {((), ())}
        for g in mono:
            piece = self.psi_gen(g)
            nxt: set = set()
            for l1, r1 in acc:
                for l2, r2 in piece:
                    _xor(nxt, {(self.mono_mul(l1, l2), self.mono_mul(r1, r2))})
            acc = nxt
        result = frozenset(acc)
        self._psi_mono[mono] = result
        return result

    def coproduct(self, x: Element) -> TensorPairs:
        acc: set = set()
        for m in x.monos:
            _xor(acc, self.psi_mono(m))
        return frozenset(acc)

    def reduced_coproduct(self, x: Element) -> TensorPairs:
        """Middle part of the coproduct: both tensor factors positive."""
        return frozenset(
            (l, r) for (l, r) in self.coproduct(x) if l and r
        )

    def is_primitive(self, x: Element) -> bool:
        return not self.reduced_coproduct(x)

    # ----- dual Steenrod action -----

    def sq_gen_apply(self, a: int, gen: Gen) -> Monos:
        key = (a, gen)
        cached = self._sq_gen.get(key)
        if cached is not None:
            return cached
        if a == 0:
            result: Monos = frozenset({(gen,)})
        else:
            word, index = gen
            if not word:
                acc: set = set()
                for idx, coeff in steenrod_dual(self.space, a, index).items():
                    if coeff:
                        _xor(acc, {(((), idx),)})
                result = frozenset(acc)
            else:
                r = word[0]
                inner: Gen = (word[1:], index)
                acc = set()
                for b in range(a // 2 + 1):
                    if not binom_mod2(r - a, a - 2 * b):
                        continue
                    t = r - a + b
                    if t < 0:
                        continue
                    _xor(acc, self.q_apply_monos(t, self.sq_gen_apply(b, inner)))
                result = frozenset(acc)
        self._sq_gen[key] = result
        return result

    def sq_mono_apply(self, a: int, mono: Mono) -> Monos:
        if not mono:
            return _UNIT if a == 0 else _EMPTY
        state: Dict[int, set] = {0: {()}}
        for g in mono:
            nxt: Dict[int, set] = {}
            for spent, partial in state.items():
                for b in range(a - spent + 1):
                    piece = self.sq_gen_apply(b, g)
                    if not piece:
                        continue
                    bucket = nxt.setdefault(spent + b, set())
                    for m in partial:
                        for p in piece:
                            _xor(bucket, {self.mono_mul(m, p)})
            state = nxt
            if not state:
                return _EMPTY
        return frozenset(state.get(a, set()))

    def sq_star(self, a: int, x: Element) -> Element:
        acc: set = set()
        for m in x.monos:
            _xor(acc, self.sq_mono_apply(a, m))
        return Element(self, frozenset(acc))

    def lambda_op(self, kind: str, x: Element, *, strict: bool = True) -> Element:
        """λ, λ' or λ'' on a homogeneous element.

        With strict=True a parity mismatch raises; otherwise these
        operations are zero on the wrong parity (the convention used by
        the loop space models).
        """
        if not x.monos:
            return self.zero()
        deg = x.degree
        if deg is None:
            raise ValueError("lambda operations need homogeneous input")
        k = lambda_sq_index(kind, deg)
        if k is None:
            if strict:
                raise ParityMismatch(f"{kind} undefined in degree {deg}")
            return self.zero()
        return self.sq_star(k, x)

    # ----- degreewise bases and coordinates -----

    def basis(self, degree: int) -> DegreeBasis:
        if degree not in self._basis:
            if degree == 0:
                monos: List[Mono] = [()]
            else:
                gens = self.generators(degree)
                monos = []
                # descending DFS keeps the monomial tuples canonical
                def extend(partial: Mono, remaining: int, start: int) -> None:
                    if remaining == 0:
                        monos.append(partial)
                        return
                    for i in range(start, len(gens)):
                        g = gens[i]
                        d = self.gen_degree(g)
                        if d > remaining:
                            break
                        extend(partial + (g,), remaining - d, i)

                extend((), degree, 0)
                monos.sort(key=lambda m: (len(m), tuple(self.gen_key(g) for g in m)))
            self._basis[degree] = DegreeBasis(
                self.space, degree, tuple(monos), {m: i for i, m in enumerate(monos)}
            )
        return self._basis[degree]

    def dim(self, degree: int) -> int:
        return self.basis(degree).dim

    def to_vector(self, x: Element, degree: int) -> int:
        basis = self.basis(degree)
        vec = 0
        for m in x.monos:
            vec |= 1 << basis.index[m]
        return vec

    def from_vector(self, vec: int, degree: int) -> Element:
        basis = self.basis(degree)
        monos = []
        while vec:
            i = (vec & -vec).bit_length() - 1
            monos.append(basis.monomials[i])
            vec &= vec - 1
        return self.from_monos(monos)

    def tensor_offsets(self, degree: int) -> List[Tuple[int, int, int]]:
        """(left degree, offset, block width) for the middle tensor blocks."""
        out = []
        offset = 0
        for k in range(1, degree):
            width = self.dim(k) * self.dim(degree - k)
            out.append((k, offset, width))
            offset += width
        return out

    def tensor_dim(self, degree: int) -> int:
        return sum(w for (_, _, w) in self.tensor_offsets(degree))

    def tensor_vector(self, pairs: TensorPairs, degree: int) -> int:
        offsets = {k: off for (k, off, _) in self.tensor_offsets(degree)}
        vec = 0
        for l_mono, r_mono in pairs:
            ld = self.mono_degree(l_mono)
            rd = self.mono_degree(r_mono)
            if ld == 0 or rd == 0:
                continue
            if ld + rd != degree:
                raise ValueError("inhomogeneous tensor pair")
            pos = (
                offsets[ld]
                + self.basis(ld).index[l_mono] * self.dim(rd)
                + self.basis(rd).index[r_mono]
            )
            vec ^= 1 << pos
        return vec

    # ----- honest Dyer-Lashof action on base-component classes -----
    #
    # An A-monomial M stands for the base-component class u^-c(M) M, where
    # u is the group-like degree-zero class and c(M) its component.  The
    # Q-operations do not commute with that translation; the honest action
    # tracks a net (possibly negative) power of u alongside each monomial.
    # Negative powers obey the Cartan recursion obtained from Q^s(1) = 0.

    def component(self, mono: Mono) -> int:
        return sum(1 << len(g[0]) for g in mono)

    def _q_unit_power(self, s: int, z: int) -> FrozenSet[Tuple[Mono, int]]:
        """Q^s applied to u^z, as monomial/unit-power pairs."""
        key = (s, z)
        cached = self._q_unit.get(key)
        if cached is not None:
            return cached
        if s == 0:
            result = frozenset({((), 2 * z)})
        elif z == 0:
            result = frozenset()
        elif z > 0:
            acc: set = set()
            for i in range(s + 1):
                left: FrozenSet[Tuple[Mono, int]]
                if i == 0:
                    left = frozenset({((), 2)})
                else:
                    left = frozenset({((((i,), 0),), 0)})
                for lm, lz in left:
                    for rm, rz in self._q_unit_power(s - i, z - 1):
                        _xor(acc, {(self.mono_mul(lm, rm), lz + rz)})
            result = frozenset(acc)
        else:
            # 0 = Q^s(u u^-1): solve for Q^s(u^-1), then Cartan for z < -1
            if z == -1:
                acc = set()
                for i in range(1, s + 1):
                    qi_e0: Mono = (((i,), 0),)
                    for rm, rz in self._q_unit_power(s - i, -1):
                        _xor(acc, {(self.mono_mul(qi_e0, rm), rz - 2)})
                result = frozenset(acc)
            else:
                acc = set()
                for i in range(s + 1):
                    for lm, lz in self._q_unit_power(i, -1):
                        for rm, rz in self._q_unit_power(s - i, z + 1):
                            _xor(acc, {(self.mono_mul(lm, rm), lz + rz)})
                result = frozenset(acc)
        self._q_unit[key] = result
        return result

    def _q_laurent(self, s: int, pairs: FrozenSet[Tuple[Mono, int]]) -> FrozenSet[Tuple[Mono, int]]:
        """Q^s on a sum of (monomial, unit power) classes."""
        acc: set = set()
        for mono, z in pairs:
            state: Dict[int, set] = {0: {((), 0)}}
            factors: List = list(mono) + [None]  # None marks the u^z part
            for g in factors:
                nxt: Dict[int, set] = {}
                for spent, partial in state.items():
                    budget = s - spent
                    if g is None:
                        choices = [
                            (i, self._q_unit_power(i, z)) for i in range(budget + 1)
                        ]
                    else:
                        gdeg = self.gen_degree(g)
                        choices = [
                            (i, frozenset((m, 0) for m in self.q_gen_apply(i, g)))
                            for i in range(gdeg, budget + 1)
                        ]
                    for i, piece in choices:
                        if not piece:
                            continue
                        bucket = nxt.setdefault(spent + i, set())
                        for pm, pz in partial:
                            for qm, qz in piece:
                                _xor(bucket, {(self.mono_mul(pm, qm), pz + qz)})
                state = nxt
                if not state:
                    break
            _xor(acc, state.get(s, set()))
        return frozenset(acc)

    def honest_q_word(self, word: Sequence[int], x: Element) -> Element:
        """Q^word on a base-component class, translated back to A-coordinates.

        Every output monomial must land in the base component again; a
        leftover unit power means the input was not a base-component
        class and is reported as a hard error.
        """
        if x.model is not self:
            raise SpaceMismatch("element not in this model")
        if not has_degree_zero_class(self.space):
            return self.q_word(word, x)
        pairs: FrozenSet[Tuple[Mono, int]] = frozenset(
            (m, -self.component(m)) for m in x.monos
        )
        for s in reversed(tuple(word)):
            pairs = self._q_laurent(s, pairs)
        monos = []
        for mono, z in pairs:
            if z != -self.component(mono):
                raise ValueError("honest action left the base component")
            monos.append(mono)
        return self.from_monos(monos)

    # ----- distinguished subspaces -----

    def reduced_coproduct_rows(self, degree: int) -> Tuple[int, ...]:
        """Reduced-coproduct vectors of every basis monomial, cached."""
        cached = self._psi_rows.get(degree)
        if cached is not None:
            return cached
        rows = []
        for mono in self.basis(degree).monomials:
            x = Element(self, frozenset({mono}))
            rows.append(self.tensor_vector(self.reduced_coproduct(x), degree))
        result = tuple(rows)
        self._psi_rows[degree] = result
        return result

    def primitives(self, degree: int) -> gf2.F2Subspace:
        """Kernel of the reduced coproduct in basis coordinates."""
        if degree < 1:
            raise ValueError("primitives need degree >= 1")
        cached = self._primitives.get(degree)
        if cached is not None:
            return cached
        rows = self.reduced_coproduct_rows(degree)
        matrix = gf2.F2Matrix(rows, max(self.tensor_dim(degree), 1))
        result = gf2.left_kernel(matrix)
        self._primitives[degree] = result
        return result

    def decomposables(self, degree: int) -> gf2.F2Subspace:
        basis = self.basis(degree)
        vecs = [1 << i for i, m in enumerate(basis.monomials) if len(m) >= 2]
        return gf2.F2Subspace.from_vectors(vecs, basis.dim)

    def indecomposable_dim(self, degree: int) -> int:
        if degree < 1:
            raise ValueError("indecomposables need degree >= 1")
        return len(self.generators_in_degree(degree))

    def generator_part(self, x: Element) -> List[Gen]:
        """Single-factor monomials of x (its class modulo decomposables)."""
        return sorted((m[0] for m in x.monos if len(m) == 1), key=self.gen_key)

    # ----- rendering -----

    def render_gen(self, gen: Gen) -> str:
        word, index = gen
        ops = " ".join(f"Q^{i}" for i in word)
        base = f"{class_prefix(self.space)}_{index}"
        return f"{ops} {base}" if ops else base

    def render_mono(self, mono: Mono) -> str:
        if not mono:
            return "1"
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            power = j - i
            text = self.render_gen(mono[i])
            if " " in text and (power > 1 or len(mono) > power):
                text = f"({text})"
            parts.append(f"{text}^{power}" if power > 1 else text)
            i = j
        return "*".join(parts)

    def render(self, x: Element) -> str:
        if not x.monos:
            return "0"
        keyed = sorted(
            x.monos, key=lambda m: (self.mono_degree(m), len(m), tuple(self.gen_key(g) for g in m))
        )
        return " + ".join(self.render_mono(m) for m in keyed)


_MODELS: Dict[Tuple[str, bool], QAlgebra] = {}


def get_model(space: str, reduced: bool = False) -> QAlgebra:
    """Interned model lookup; element equality relies on this."""
    check_space(space)
    key = (space, bool(reduced) and has_degree_zero_class(space))
    if key not in _MODELS:
        _MODELS[key] = QAlgebra(*key)
    return _MODELS[key]
