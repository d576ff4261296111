"""The maps between the Q-space homologies and their rank data.

The once-delooped boundary map is specified on the suspension classes by

    abar_r  |->  e_{2r+1} + Q^(r+1) e_r   (modulo decomposables)

and extended to all generators Q-equivariantly and to products
multiplicatively.  Two tail policies are supported: `zero` takes the
stated leading terms as is, `primitive` replaces them by the canonical
primitives with those leading terms (the suspension classes are
primitive, so an honest chain-level map must take primitive values).
All rank and dimension outputs are checked to agree across the two
policies.

The Becker-Gottlieb transfer of the sphere bundle acts by the
Pontryagin sum of the inclusion and the orientation reversal; modulo 2
it sends a_{2i} to a_i^2 and kills the odd classes.  The squaring
composite sends a doubled-word generator Q^{2I} b_i to (Q^I a_i)^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import gf2
from .algebra import Element, Gen, QAlgebra, get_model
from .errors import (
    InsufficientGeneratorData,
    NonDoubledWord,
    NoSolution,
    NotClosedUnderSquaring,
    SpaceMismatch,
)
from .loops import LoopTower, PrimitiveLabel, canonical_primitives
from .words import excess, is_admissible

TAIL_POLICIES = ("zero", "primitive")


@dataclass
class GeneratorMap:
    """A degree-preserving map given on polynomial generators.

    Extends multiplicatively over monomials; the stored values are
    expected to come from a Q-equivariant rule, which remains a testable
    property rather than an assumption.
    """

    name: str
    source: QAlgebra
    target: QAlgebra
    values: Dict[Gen, Element]
    tail_policy: str = "zero"
    _matrices: Dict[int, gf2.F2Matrix] = field(default_factory=dict, repr=False)

    def value(self, gen: Gen) -> Element:
        try:
            return self.values[gen]
        except KeyError:
            raise InsufficientGeneratorData(
                f"{self.name} lacks a value for {self.source.render_gen(gen)}"
            ) from None

    def apply(self, x: Element) -> Element:
        if x.model is not self.source:
            raise SpaceMismatch("element not in the source algebra")
        out = self.target.zero()
        for mono in x.monos:
            term = self.target.unit()
            for gen in mono:
                term = self.target.product(term, self.value(gen))
            out = out + term
        return out

    def target_dim(self, degree: int) -> int:
        return self.target.dim(degree)

    def matrix(self, degree: int) -> gf2.F2Matrix:
        """Coordinate matrix; apply() maps source vectors to target vectors."""
        if degree not in self._matrices:
            basis = self.source.basis(degree)
            images = []
            for mono in basis.monomials:
                img = self.apply(self.source.from_monos([mono]))
                images.append(self.target.to_vector(img, degree))
            self._matrices[degree] = gf2.F2Matrix(
                tuple(images), max(self.target.dim(degree), 1)
            ).transpose()
        return self._matrices[degree]

    def image_vectors(self, degree: int) -> List[int]:
        m = self.matrix(degree)
        return [m.apply(1 << j) for j in range(self.source.dim(degree))]


def check_policy(policy: str) -> None:
    if policy not in TAIL_POLICIES:
        raise ValueError(f"tail policy must be one of {TAIL_POLICIES}")


def partial_on_generator(r: int, policy: str = "primitive") -> Element:
    """Image of the degree 2r+1 suspension class under the boundary map."""
    check_policy(policy)
    if r < 0:
        raise ValueError("negative index")
    target = get_model("rp-inf")
    if policy == "zero":
        return target.gen_element((), 2 * r + 1) + target.gen_element((r + 1,), r)
    prims = canonical_primitives("rp-inf", False)
    return prims.element(PrimitiveLabel((), 2 * r + 1)) + prims.element(
        PrimitiveLabel((r + 1,), r)
    )


_TRANSFERS: Dict[Tuple[str, int], GeneratorMap] = {}


def s1_transfer(max_degree: int, policy: str = "primitive") -> GeneratorMap:
    """The boundary map H_*(Q Sigma CP^inf_+) -> H_*(Q RP^inf_+).

    Values on Q^I abar_r are the Q-word applied to the seed value of
    abar_r; products extend multiplicatively.
    """
    check_policy(policy)
    key = (policy, max_degree)
    for (pol, deg), cached in _TRANSFERS.items():
        if pol == policy and deg >= max_degree:
            return cached
    source = get_model("sigma-cp-inf")
    target = get_model("rp-inf")
    values: Dict[Gen, Element] = {}
    for gen in source.generators(max_degree):
        word, r = gen
        values[gen] = target.q_word(word, partial_on_generator(r, policy))
    fmap = GeneratorMap(f"s1-transfer[{policy}]", source, target, values, policy)
    _TRANSFERS[key] = fmap
    return fmap


@dataclass(frozen=True)
class InjectivityReport:
    policy: str
    max_degree: int
    full_ranks: Tuple[Tuple[int, int, int], ...]  # (degree, rank, source dim)
    primitive_ranks: Tuple[Tuple[int, int, int], ...]

    @property
    def injective(self) -> bool:
        return all(r == d for (_, r, d) in self.full_ranks)

    @property
    def primitive_injective(self) -> bool:
        return all(r == d for (_, r, d) in self.primitive_ranks)


def verify_partial_injective(max_degree: int, policy: str = "primitive") -> InjectivityReport:
    """Degreewise rank check of the boundary map, full and on primitives."""
    fmap = s1_transfer(max_degree, policy)
    source = fmap.source
    full = []
    prim = []
    for n in range(1, max_degree + 1):
        m = fmap.matrix(n)
        full.append((n, gf2.rank(gf2.F2Matrix(tuple(fmap.image_vectors(n)), m.n_rows)), source.dim(n)))
        ph = source.primitives(n)
        prim_images = [m.apply(v) for v in ph.basis]
        prim.append(
            (
                n,
                gf2.rank(gf2.F2Matrix(tuple(prim_images), max(fmap.target.dim(n), 1))),
                ph.dim,
            )
        )
    return InjectivityReport(policy, max_degree, tuple(full), tuple(prim))


def transfer_iota_plus_c(i: int) -> Element:
    """Becker-Gottlieb transfer value on a_i: the Pontryagin square sum."""
    if i < 0:
        raise ValueError("negative index")
    model = get_model("bspin2")
    out = model.zero()
    for r in range(i + 1):
        out = out + model.product(model.base(r), model.base(i - r))
    return out


def theorem2_composite(word: Sequence[int], i: int) -> Element:
    """Value of the squaring composite on the doubled generator Q^word b_i.

    Only defined on T_3 generators whose word is a doubling 2I; the
    output (Q^I a_i)^2 lands in the squares subalgebra.
    """
    word = tuple(word)
    if i < 0:
        raise ValueError("negative index")
    if any(s % 2 for s in word):
        raise NonDoubledWord(f"word {word} is not a doubling")
    if not is_admissible(word) or excess(word) <= 4 * i:
        raise ValueError(f"Q^{word} b_{i} is not a polynomial generator")
    half = tuple(s // 2 for s in word)
    model = get_model("bspin2")
    value = model.gen_element(half, i)
    return model.product(value, value)


def doubled_t3_generators(max_degree: int) -> List[Gen]:
    """T_3 generators with doubled words, up to the given total degree."""
    model = get_model("bspin3")
    out = []
    for gen in [((), 0)] + model.generators(max_degree):
        word, i = gen
        if all(s % 2 == 0 for s in word):
            out.append(gen)
    return out


def kernel_poincare(max_degree: int) -> List[int]:
    """Dimensions of the squares subalgebra of H_*(Q BSpin(2)_+).

    Odd degrees vanish; degree 2n counts the full algebra in degree n
    (the free commutative algebra on the squared generators).
    """
    model = get_model("bspin2")
    return [model.dim(n // 2) if n % 2 == 0 else 0 for n in range(max_degree + 1)]


# ----- the twice-looped cokernel data -----


@dataclass(frozen=True)
class CokernelReport:
    """Generating data of the image of the twice-looped homology.

    g_dims[k] is the number of model generators in degree k: the image
    of Ker(lambda') in the cokernel of the primitive-level boundary map,
    desuspended twice.  kernel_algebra_dims are the graded dimensions of
    the subalgebra they generate.
    """

    policy: str
    max_degree: int
    g_dims: Tuple[int, ...]
    kernel_algebra_dims: Tuple[int, ...]
    image_consistency: Tuple[Tuple[int, int, int], ...]  # (degree, dim Im, dim PH source)

    @property
    def consistent(self) -> bool:
        return all(a == b for (_, a, b) in self.image_consistency)


class PrimitiveBoundary:
    """The boundary map on primitives, with honest values.

    The plain Q-word extension of the seed values is only correct modulo
    decomposables: translating classes to the base component makes the
    Dyer-Lashof action pick up decomposable corrections.  Here the
    operations are applied through the Laurent-coefficient action
    (algebra.honest_q_word), which tracks the group-like unit powers
    exactly, so with the primitive tail policy every value is primitive
    on the nose.  With the zero tail policy the seeds are off by
    decomposables and the values are kept raw; all emitted dimensions
    must nevertheless agree between the two policies.
    """

    def __init__(self, max_degree: int, policy: str = "primitive"):
        check_policy(policy)
        self.policy = policy
        self.max_degree = max_degree
        self.source = get_model("sigma-cp-inf")
        self.target = get_model("rp-inf")
        self._values: Dict[Tuple[Gen, int], Element] = {}
        self._source_basis: Dict[int, List[Tuple[Gen, int]]] = {}

    # the primitives of the source are the 2^k-th powers of generators
    def source_labels(self, degree: int) -> List[Tuple[Gen, int]]:
        if degree not in self._source_basis:
            labels = []
            for gen in self.source.generators(degree):
                d = self.source.gen_degree(gen)
                total = d
                k = 0
                while total <= degree:
                    if total == degree:
                        labels.append((gen, k))
                        break
                    k += 1
                    total *= 2
            expected = self.source.primitives(degree).dim if degree >= 1 else 0
            if len(labels) != expected:
                raise NoSolution(
                    f"source primitive count mismatch in degree {degree}"
                )
            self._source_basis[degree] = labels
        return self._source_basis[degree]

    def source_element(self, label: Tuple[Gen, int]) -> Element:
        gen, k = label
        x = self.source.from_monos([(gen,)])
        for _ in range(k):
            x = self.source.product(x, x)
        return x

    def value(self, label: Tuple[Gen, int]) -> Element:
        if label in self._values:
            return self._values[label]
        gen, k = label
        if k > 0:
            inner = self.value((gen, k - 1))
            result = self.target.product(inner, inner)
        else:
            word, r = gen
            seed = partial_on_generator(r, self.policy)
            result = self.target.honest_q_word(word, seed)
            if self.policy == "primitive":
                if not self.target.is_primitive(result):
                    raise NoSolution(
                        f"honest value of {self.source.render_gen(gen)} is not primitive"
                    )
            else:
                # zero tails are off by decomposables; land in the same
                # primitive coset and take its canonical representative
                result = _primitivize(self.target, result)
        self._values[label] = result
        return result

    def image(self, degree: int) -> gf2.F2Subspace:
        vectors = [
            self.target.to_vector(self.value(label), degree)
            for label in self.source_labels(degree)
        ]
        return gf2.F2Subspace.from_vectors(vectors, self.target.dim(degree))

    def apply_primitive(self, x: Element) -> Element:
        """Value on an arbitrary primitive of the source."""
        if not x.monos:
            return self.target.zero()
        degree = x.degree
        if degree is None:
            raise ValueError("needs a homogeneous primitive")
        labels = self.source_labels(degree)
        vectors = [
            self.source.to_vector(self.source_element(l), degree) for l in labels
        ]
        combo = gf2.express_in_span(vectors, self.source.to_vector(x, degree))
        if combo is None:
            raise NoSolution("class is not primitive in the source")
        out = self.target.zero()
        for i, label in enumerate(labels):
            if (combo >> i) & 1:
                out = out + self.value(label)
        return out

    def naturality_failures(self, max_degree: int) -> List[Tuple[Gen, int]]:
        """Generators and a where Sq^a_* fails to commute with the map."""
        failures = []
        for gen in self.source.generators(max_degree):
            d = self.source.gen_degree(gen)
            x = self.source.from_monos([(gen,)])
            for a in range(1, d):
                lhs = self.target.sq_star(a, self.value((gen, 0)))
                rhs = self.apply_primitive(self.source.sq_star(a, x))
                if lhs != rhs:
                    failures.append((gen, a))
        return failures


def _primitivize(model: QAlgebra, value: Element) -> Element:
    """Canonical primitive differing from value by decomposables.

    In odd degrees the coset has a single point (there are no odd
    primitive squares); in even degrees the canonical coset
    representative is taken.
    """
    degree = value.degree
    if degree is None:
        raise ValueError("primitivize needs a homogeneous element")
    basis = model.basis(degree)
    all_rows = model.reduced_coproduct_rows(degree)
    dec = [m for m in basis.monomials if len(m) >= 2]
    rows = [all_rows[basis.index[m]] for m in dec]
    target = model.tensor_vector(model.reduced_coproduct(value), degree)
    solved = gf2.span_solve(rows, target)
    if solved is None:
        raise NoSolution("no primitive in the decomposable coset")
    particular, kernel = solved
    particular = kernel.reduce(particular)
    correction = [dec[i] for i in range(len(dec)) if (particular >> i) & 1]
    return value + model.from_monos(correction)


def cokernel_generators(
    max_degree: int, policy: str = "primitive", *, tower: Optional[LoopTower] = None
) -> CokernelReport:
    """Generators and dimensions of the twice-looped image algebra.

    Works at level-two model degrees 1..max_degree, which needs
    primitive data up to max_degree + 2.
    """
    upstairs = max_degree + 2
    boundary = PrimitiveBoundary(upstairs, policy)
    if tower is None:
        tower = LoopTower(upstairs)
    sigma = boundary.source

    g_dims = [0] * (max_degree + 1)
    consistency = []
    klam_cap: Dict[int, gf2.F2Subspace] = {}
    for n in range(1, upstairs + 1):
        image = boundary.image(n)
        consistency.append((n, image.dim, sigma.primitives(n).dim))
        if not image.is_subspace_of(tower.ph(n)):
            raise NoSolution(f"boundary image leaves the primitives in degree {n}")
        if n >= 3:
            kl = tower.klam(n)
            cap = gf2.subspace_intersection(kl, image)
            klam_cap[n] = cap
            g_dims[n - 2] = kl.dim - cap.dim

    # closure of the generating space under the model squaring: lambda''
    # must carry Ker(lambda') ∩ Im into itself
    for k in range(1, max_degree + 1):
        src_deg = 2 * k + 2
        tgt_deg = k + 2
        if src_deg not in klam_cap or tgt_deg not in klam_cap:
            continue
        for v in klam_cap[src_deg].basis:
            img = tower.lambda_on_vector("lambda''", src_deg, v)
            if img and not klam_cap[tgt_deg].contains(img):
                raise NotClosedUnderSquaring(
                    f"squaring leaves the generating space at model degree {k}"
                )

    from .hopf import exterior_dims

    degrees: List[int] = []
    for k, g in enumerate(g_dims):
        degrees.extend([k] * g)
    kernel_dims = exterior_dims(degrees, max_degree)
    return CokernelReport(
        policy, max_degree, tuple(g_dims), tuple(kernel_dims), tuple(consistency)
    )


# ----- integrity checks used by the verification suites -----


def steenrod_naturality_failures(
    fmap: GeneratorMap, max_degree: int
) -> List[Tuple[Gen, int]]:
    """Pairs (generator, a) where Sq^a_* does not commute with the map."""
    failures = []
    for gen, value in sorted(fmap.values.items(), key=lambda kv: fmap.source.gen_key(kv[0])):
        d = fmap.source.gen_degree(gen)
        if d > max_degree:
            continue
        x = fmap.source.from_monos([(gen,)])
        for a in range(1, d + 1):
            lhs = fmap.target.sq_star(a, value)
            rhs = fmap.apply(fmap.source.sq_star(a, x))
            if lhs != rhs:
                failures.append((gen, a))
    return failures


def q_equivariance_failures(
    fmap: GeneratorMap, max_degree: int
) -> List[Tuple[Tuple[Gen, ...], int]]:
    """Monomials and s where f(Q^s m) != Q^s f(m), in the checked range."""
    failures = []
    for n in range(1, max_degree + 1):
        for mono in fmap.source.basis(n).monomials:
            x = fmap.source.from_monos([mono])
            fx = fmap.apply(x)
            for s in range(1, max_degree - n + 1):
                lhs = fmap.apply(fmap.source.q_apply(s, x))
                rhs = fmap.target.q_apply(s, fx)
                if lhs != rhs:
                    failures.append((mono, s))
    return failures
