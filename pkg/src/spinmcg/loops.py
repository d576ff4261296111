"""Looped models of Q RP^inf_+ and the canonical primitive basis.

The primitive subspaces carry three degree-halving operations (dual to
Sq_0 = squaring, Sq_1 and Sq_2 on cohomology indecomposables).  Looping
once replaces the cohomology by A(s^-1 Q, s^-1 Sq_1); looping twice by
A(s^-2 Coker Sq_1, s^-2 Sq_2).  Everything here is computed in homology
coordinates: the squaring map of the level-one model is the transpose of
lambda' on primitives, that of the level-two model the transpose of
lambda'' restricted to Ker(lambda').

Canonical primitives: for a label (I, i) with e(I) >= i and not all of
(I, i) even, the class has leading term Q^I e_i.  When e(I) = i the
leading term is itself a square and the class is the square of the
canonical primitive of the halved label; otherwise it is the leading
generator plus a decomposable correction solving the primitivity
equations.  In odd degrees that correction is unique; in even degrees the
solution is only unique modulo primitive squares and the engine picks the
canonical coset representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import gf2
from .algebra import Element, QAlgebra, get_model
from .errors import BasisMismatch, NonUnique, NoSolution, NotPolynomial
from .hopf import AFunctorPresentation, exterior_dims
from .words import Word, excess, is_admissible

LAMBDA_TARGET_OFFSET = {"lambda": 0, "lambda'": 1, "lambda''": 2}


@dataclass(frozen=True)
class PrimitiveLabel:
    """Label (I, i) of a canonical primitive class with leading Q^I e_i."""

    word: Word
    index: int

    def __post_init__(self):
        if not is_admissible(self.word):
            raise ValueError(f"inadmissible word {self.word}")
        if self.index < 0:
            raise ValueError("negative index")
        if excess(self.word) < self.index:
            raise ValueError(f"excess below index for {self}")
        if all(i % 2 == 0 for i in self.word) and self.index % 2 == 0:
            raise ValueError(f"all-even label {self}")

    @property
    def degree(self) -> int:
        return sum(self.word) + self.index

    def __str__(self) -> str:
        if not self.word:
            return f"p_{self.index}"
        flat = ",".join(str(i) for i in self.word + (self.index,))
        return f"p_({flat})"


def primitive_labels(degree: int, *, reduced: bool = False) -> List[PrimitiveLabel]:
    """All valid labels of the given degree, canonically ordered."""
    out = []
    for index in range(degree + 1):
        if reduced and index == 0:
            continue
        budget = degree - index
        if budget == 0:
            if index % 2:
                out.append(PrimitiveLabel((), index))
            continue
        for word in _admissible_words_of_degree(budget):
            if excess(word) < index:
                continue
            if all(i % 2 == 0 for i in word) and index % 2 == 0:
                continue
            out.append(PrimitiveLabel(word, index))
    out.sort(key=lambda l: (l.index, l.word))
    return out


@lru_cache(maxsize=None)
def _admissible_words_of_degree(total: int) -> Tuple[Word, ...]:
    """Admissible words of exact total degree, grown on the left."""
    words: List[Word] = []
    frontier: List[Word] = [(i,) for i in range(1, total + 1)]
    while frontier:
        nxt = []
        for word in frontier:
            used = sum(word)
            if used == total:
                words.append(word)
                continue
            for i in range(1, min(2 * word[0], total - used) + 1):
                nxt.append((i,) + word)
        frontier = nxt
    return tuple(sorted(words))


class CanonicalPrimitives:
    """Canonical primitive classes of one algebra model."""

    def __init__(self, model: QAlgebra):
        self.model = model
        self._cache: Dict[PrimitiveLabel, Element] = {}

    def element(self, label: PrimitiveLabel) -> Element:
        if self.model.reduced and label.index == 0:
            raise ValueError("index-zero label in reduced model")
        cached = self._cache.get(label)
        if cached is not None:
            return cached
        if label.word and excess(label.word) == label.index:
            inner = self.element(PrimitiveLabel(label.word[1:], label.index))
            result = self.model.product(inner, inner)
        else:
            result = self._solve(label)
        self._cache[label] = result
        return result

    def _solve(self, label: PrimitiveLabel) -> Element:
        model = self.model
        degree = label.degree
        lead = model.gen_element(label.word, label.index)
        target = model.tensor_vector(model.reduced_coproduct(lead), degree)
        basis = model.basis(degree)
        all_rows = model.reduced_coproduct_rows(degree)
        dec_monos = [m for m in basis.monomials if len(m) >= 2]
        rows = [all_rows[basis.index[m]] for m in dec_monos]
        # solve sum c_m psi-bar(m) = psi-bar(lead) over the decomposables
        solved = gf2.span_solve(rows, target)
        if solved is None:
            raise NoSolution(f"no primitive with leading term of {label}")
        particular, kernel = solved
        if degree % 2 and kernel.dim:
            raise NonUnique(f"unexpected tie for odd-degree label {label}")
        particular = kernel.reduce(particular)  # canonical coset representative
        correction = [dec_monos[i] for i in range(len(dec_monos)) if (particular >> i) & 1]
        result = lead + model.from_monos(correction)
        assert model.is_primitive(result)
        return result


_PRIMS: Dict[int, CanonicalPrimitives] = {}


def canonical_primitives(space: str = "rp-inf", reduced: bool = False) -> CanonicalPrimitives:
    model = get_model(space, reduced)
    if id(model) not in _PRIMS:
        _PRIMS[id(model)] = CanonicalPrimitives(model)
    return _PRIMS[id(model)]


def primitive_basis(
    degree: int, *, reduced: bool = False, model: Optional[QAlgebra] = None
) -> List[Tuple[PrimitiveLabel, Element]]:
    """Canonical primitives of one degree; checked to be a basis of PH."""
    if model is None:
        model = get_model("rp-inf", reduced)
    prims = canonical_primitives(model.space, model.reduced)
    labels = primitive_labels(degree, reduced=model.reduced)
    if degree == 0:
        return []
    pairs = [(label, prims.element(label)) for label in labels]
    vectors = [model.to_vector(el, degree) for _, el in pairs]
    span = gf2.F2Subspace.from_vectors(vectors, model.dim(degree))
    if span.dim != len(labels) or span != model.primitives(degree):
        raise BasisMismatch(
            f"labels of degree {degree} do not give a primitive basis"
        )
    return pairs


# ----- the loop tower -----


@dataclass(frozen=True)
class SquareZeroWitness:
    """A model generator with vanishing squaring map.

    model_degree is its degree in the twice-looped model; the witness
    vector is the dual primitive class upstairs (degree model_degree + 2).
    """

    model_degree: int
    witness: Element

    def __str__(self) -> str:
        return f"degree {self.model_degree} generator dual to {self.witness}"


@dataclass(frozen=True)
class PolynomialityReport:
    level: int
    polynomial: bool
    square_zero: Tuple[SquareZeroWitness, ...]


class LoopTower:
    """Primitive data of H_*(Q RP^inf_+) and its loop models through a cap."""

    def __init__(self, max_degree: int, *, reduced: bool = False):
        self.N = max_degree
        self.model = get_model("rp-inf", reduced)
        self._ph: Dict[int, gf2.F2Subspace] = {}
        self._klam: Dict[int, gf2.F2Subspace] = {}
        self._lam_image: Dict[Tuple[str, int], gf2.F2Subspace] = {}

    # -- level 0 data --

    def ph(self, n: int) -> gf2.F2Subspace:
        if n < 1:
            raise ValueError("primitive data starts in degree 1")
        if n not in self._ph:
            self._ph[n] = self.model.primitives(n)
        return self._ph[n]

    def lambda_on_vector(self, kind: str, n: int, vec: int) -> int:
        x = self.model.from_vector(vec, n)
        out = self.model.lambda_op(kind, x, strict=False)
        if not out.monos:
            return 0
        return self.model.to_vector(out, out.degree)

    def lambda_target(self, kind: str, n: int) -> Optional[int]:
        off = LAMBDA_TARGET_OFFSET[kind]
        if (n - off) % 2 or n - off < 0:
            return None
        return n - (n - off) // 2

    def lambda_image(self, kind: str, n: int) -> gf2.F2Subspace:
        """Span of lambda-kind applied to PH_n, inside the target degree."""
        key = (kind, n)
        if key not in self._lam_image:
            target = self.lambda_target(kind, n)
            if target is None:
                raise ValueError(f"{kind} undefined in degree {n}")
            vectors = [self.lambda_on_vector(kind, n, v) for v in self.ph(n).basis]
            self._lam_image[key] = gf2.F2Subspace.from_vectors(
                [v for v in vectors if v], self.model.dim(target)
            )
        return self._lam_image[key]

    def klam(self, n: int) -> gf2.F2Subspace:
        """Ker(lambda') inside PH_n; all of PH_n in even degrees."""
        if n not in self._klam:
            if n % 2 == 0:
                self._klam[n] = self.ph(n)
            else:
                target = self.lambda_target("lambda'", n)
                rows = [
                    self.lambda_on_vector("lambda'", n, v) for v in self.ph(n).basis
                ]
                matrix = gf2.F2Matrix(tuple(rows), max(self.model.dim(target), 1))
                left = gf2.left_kernel(matrix)
                vecs = []
                for combo in left.basis:
                    vec = 0
                    for i, b in enumerate(self.ph(n).basis):
                        if (combo >> i) & 1:
                            vec ^= b
                    vecs.append(vec)
                self._klam[n] = gf2.F2Subspace.from_vectors(vecs, self.model.dim(n))
        return self._klam[n]

    # -- level 1 model: A(s^-1 Q H^*, s^-1 Sq_1) in homology coordinates --

    def v1_dim(self, k: int) -> int:
        """Generators of the once-looped model in degree k (k >= 1)."""
        if k < 1:
            return 0
        return self.ph(k + 1).dim

    def v1_degrees(self, max_degree: int) -> List[int]:
        out = []
        for k in range(1, max_degree + 1):
            if k + 1 > self.N:
                break
            out.extend([k] * self.v1_dim(k))
        return out

    def level1_dims(self, max_degree: int) -> List[int]:
        if max_degree + 1 > self.N:
            raise ValueError("raise the tower cap for this range")
        return exterior_dims(self.v1_degrees(max_degree), max_degree)

    def level1_presentation(self, max_degree: int) -> AFunctorPresentation:
        """Explicit (V, xi) of the once-looped model through max_degree."""
        degrees: List[int] = []
        offset: Dict[int, int] = {}
        for k in range(1, max_degree + 1):
            if k + 1 > self.N:
                break
            offset[k] = len(degrees)
            degrees.extend([k] * self.v1_dim(k))
        xi: Dict[int, Tuple[int, ...]] = {}
        for k in sorted(offset):
            if 2 * k not in offset:
                continue
            # xi on V1_k is the transpose of lambda': PH_{2k+1} -> PH_{k+1}
            src = self.ph(2 * k + 1)
            tgt = self.ph(k + 1)
            cols: Dict[int, List[int]] = {j: [] for j in range(tgt.dim)}
            for i, v in enumerate(src.basis):
                img = self.lambda_on_vector("lambda'", 2 * k + 1, v)
                if not img:
                    continue
                for j, c in enumerate(tgt.coordinates(img)):
                    if c:
                        cols[j].append(i)
            for j, hits in cols.items():
                if hits:
                    xi[offset[k] + j] = tuple(offset[2 * k] + i for i in hits)
        return AFunctorPresentation(tuple(degrees), xi)

    # -- level 2 model: A(s^-2 Coker Sq_1, s^-2 Sq_2) --

    def v2_dim(self, k: int) -> int:
        if k < 1:
            return 0
        return self.klam(k + 2).dim

    def v2_degrees(self, max_degree: int) -> List[int]:
        out = []
        for k in range(1, max_degree + 1):
            if k + 2 > self.N:
                break
            out.extend([k] * self.v2_dim(k))
        return out

    def level2_dims(self, max_degree: int) -> List[int]:
        if max_degree + 2 > self.N:
            raise ValueError("raise the tower cap for this range")
        return exterior_dims(self.v2_degrees(max_degree), max_degree)

    def check_klam_stable(self, max_degree: int) -> None:
        """lambda'' must carry Ker(lambda') into Ker(lambda')."""
        for n in range(2, max_degree + 1, 2):
            target = self.lambda_target("lambda''", n)
            if target is None or target < 1:
                continue
            for v in self.klam(n).basis:
                img = self.lambda_on_vector("lambda''", n, v)
                if img and not self.klam(target).contains(img):
                    raise NotPolynomial(
                        f"lambda'' does not stabilize Ker(lambda') at degree {n}"
                    )

    def level2_presentation(self, max_degree: int) -> AFunctorPresentation:
        degrees: List[int] = []
        offset: Dict[int, int] = {}
        for k in range(1, max_degree + 1):
            if k + 2 > self.N:
                break
            offset[k] = len(degrees)
            degrees.extend([k] * self.v2_dim(k))
        self.check_klam_stable(min(2 * max_degree + 2, self.N))
        xi: Dict[int, Tuple[int, ...]] = {}
        for k in sorted(offset):
            if 2 * k not in offset:
                continue
            src = self.klam(2 * k + 2)
            tgt = self.klam(k + 2)
            cols: Dict[int, List[int]] = {j: [] for j in range(tgt.dim)}
            for i, v in enumerate(src.basis):
                img = self.lambda_on_vector("lambda''", 2 * k + 2, v)
                if not img:
                    continue
                for j, c in enumerate(tgt.coordinates(img)):
                    if c:
                        cols[j].append(i)
            for j, hits in cols.items():
                if hits:
                    xi[offset[k] + j] = tuple(offset[2 * k] + i for i in hits)
        return AFunctorPresentation(tuple(degrees), xi)

    def loop_model(self, level: int, max_degree: int) -> AFunctorPresentation:
        """Presentation of the level-1 or level-2 model.

        Looping requires the model one level down to be polynomial; the
        failure of that hypothesis at level 2 makes a third looping
        unavailable and raises NotPolynomial.
        """
        if level == 1:
            return self.level1_presentation(max_degree)
        if level == 2:
            if not self.polynomiality(1, max_degree).polynomial:
                raise NotPolynomial("once-looped model unexpectedly not polynomial")
            return self.level2_presentation(max_degree)
        if level == 3:
            report = self.polynomiality(2, max_degree)
            if not report.polynomial:
                raise NotPolynomial(
                    "twice-looped model is not polynomial; "
                    f"square-zero generators at degrees "
                    f"{sorted({w.model_degree for w in report.square_zero})}"
                )
        raise ValueError("levels 1 and 2 only")

    # -- polynomiality --

    def polynomiality(self, level: int, max_degree: int) -> PolynomialityReport:
        """Is the level-`level` cohomology model polynomial through the cap?

        Level 1 is polynomial iff lambda' is onto PH degreewise; level 2
        iff lambda'' restricted to Ker(lambda') is onto degreewise.  A
        failure in source degree m upstairs yields a square-zero model
        generator of degree m - level.
        """
        if level not in (1, 2):
            raise ValueError("levels 1 and 2 only")
        witnesses: List[SquareZeroWitness] = []
        shift = 1 if level == 1 else 2
        kind = "lambda'" if level == 1 else "lambda''"
        for m in range(1 + shift, max_degree + shift + 1):
            source = 2 * m - shift  # lambda-kind maps degree 2m-shift onto m
            if source > self.N:
                break
            if level == 1:
                domain = self.ph(source)
                codomain = self.ph(m)
            else:
                domain = self.klam(source)
                codomain = self.klam(m)
            image_vectors = [
                self.lambda_on_vector(kind, source, v) for v in domain.basis
            ]
            reach = gf2.F2Subspace.from_vectors(
                [v for v in image_vectors if v], codomain.ambient_dim
            )
            for v in codomain.basis:
                if not reach.contains(v):
                    witnesses.append(
                        SquareZeroWitness(m - shift, self.model.from_vector(v, m))
                    )
                    reach = gf2.subspace_sum(
                        reach, gf2.F2Subspace.from_vectors([v], reach.ambient_dim)
                    )
        return PolynomialityReport(level, not witnesses, tuple(witnesses))
