import itertools

import pytest

from spinmcg import gf2
from spinmcg.algebra import get_model
from spinmcg.errors import ParityMismatch, SpaceMismatch
from spinmcg.words import adem_normalize_word


FULL = get_model("rp-inf")
BASED = get_model("rp-inf", reduced=True)
SIGMA = get_model("sigma-cp-inf")


def e(n, model=FULL):
    return model.gen_element((), n)


def q(word, n, model=FULL):
    return model.gen_element(tuple(word), n)


def tensor(model, pairs):
    return frozenset((tuple(l), tuple(r)) for l, r in pairs)


# ----- product -----

def test_product_unit():
    x = q([2], 1)
    assert FULL.product(x, FULL.unit()) == x


def test_product_square_is_legal_monomial():
    sq = FULL.product(e(1), e(1))
    assert len(sq.monos) == 1
    (mono,) = tuple(sq.monos)
    assert mono == (((), 1), ((), 1))


def test_product_bilinear():
    x = e(1) + e(2)
    got = FULL.product(x, e(1))
    assert got == FULL.product(e(1), e(1)) + FULL.product(e(2), e(1))


def test_product_space_mismatch():
    with pytest.raises(SpaceMismatch):
        FULL.product(e(1), SIGMA.gen_element((), 0))


def test_add_space_mismatch():
    with pytest.raises(SpaceMismatch):
        e(1) + e(1, BASED)


# ----- instability and Adem normal forms -----

def test_q1_e1_is_square():
    assert q([1], 1) == e(1) * e(1)


def test_q2q1_e1_is_fourth_power():
    e1 = e(1)
    assert q([2, 1], 1) == e1 * e1 * e1 * e1


def test_q5q1_e0_is_square_of_q3():
    got = q([5, 1], 0)
    q3 = q([3], 0)
    assert got == q3 * q3


def test_q3q1_e1_vanishes():
    assert q([3, 1], 1) == FULL.zero()


def test_below_degree_vanishes():
    assert FULL.q_apply(1, e(2)) == FULL.zero()


def test_adem_confluence_inner_vs_outer():
    # same normal form whether the word is normalized first or the
    # operations are applied one at a time
    for base_idx, model in [(0, FULL), (1, FULL), (2, FULL), (1, BASED)]:
        base_deg = base_idx
        for a, b, c in itertools.product(range(1, 9), repeat=3):
            if a + b + c + base_deg > 12:
                continue
            inner_first = model.q_word((a, b, c), model.base(base_idx))
            outer = model.zero()
            for w in adem_normalize_word((a, b, c)):
                outer = outer + model.q_word(w, model.base(base_idx))
            assert inner_first == outer


# ----- coproduct -----

def test_psi_e1_primitive():
    x = e(1)
    assert FULL.is_primitive(x)
    assert BASED.is_primitive(e(1, BASED))


def test_psi_e2_value():
    got = FULL.coproduct(e(2))
    e1m = (((), 1),)
    e2m = (((), 2),)
    assert got == tensor(FULL, [(e2m, ()), (e1m, e1m), ((), e2m)])


def test_psi_multiplicative_spot():
    x = e(1)
    lhs = FULL.coproduct(x * x)
    pairs = FULL.coproduct(x)
    prod = set()
    for l1, r1 in pairs:
        for l2, r2 in pairs:
            key = (FULL.mono_mul(l1, l2), FULL.mono_mul(r1, r2))
            prod.symmetric_difference_update({key})
    assert lhs == frozenset(prod)


def test_psi_q2e1_component_normalized():
    # Q^2 e_1 (x) 1 + 1 (x) Q^2 e_1 + e_1^2 (x) Q^1 e_0 + Q^1 e_0 (x) e_1^2
    got = FULL.coproduct(q([2], 1))
    e1sq = ((((), 1)), (((), 1)))
    q1e0 = (((1,), 0),)
    q2e1 = (((2,), 1),)
    assert got == tensor(
        FULL, [(q2e1, ()), ((), q2e1), (e1sq, q1e0), (q1e0, e1sq)]
    )


def test_based_q_words_on_e1_primitive():
    for s in (2, 3, 4, 5):
        assert BASED.is_primitive(BASED.gen_element((s,), 1))


def test_suspension_generators_primitive():
    for word, idx in [((), 0), ((), 1), ((2,), 0), ((3,), 0), ((4, 2), 0)]:
        assert SIGMA.is_primitive(SIGMA.gen_element(word, idx))


def test_coassociativity_low_degrees():
    for model in (FULL, BASED, SIGMA):
        for degree in range(1, 7):
            for mono in model.basis(degree).monomials:
                x = model.from_monos([mono])
                pairs = model.coproduct(x)
                left = set()
                for l, r in pairs:
                    for l2, r2 in model.psi_mono(l):
                        left.symmetric_difference_update({(l2, r2, r)})
                right = set()
                for l, r in pairs:
                    for l2, r2 in model.psi_mono(r):
                        right.symmetric_difference_update({(l, l2, r2)})
                assert left == right


def test_counit_property():
    # terms with empty left factor reconstruct x, same on the right
    for model in (FULL, SIGMA):
        for degree in range(1, 8):
            for mono in model.basis(degree).monomials:
                x = model.from_monos([mono])
                pairs = model.coproduct(x)
                left_unit = {r for l, r in pairs if not l}
                right_unit = {l for l, r in pairs if not r}
                assert left_unit == {mono}
                assert right_unit == {mono}


# ----- frobenius -----

def test_frobenius_values():
    assert FULL.frobenius(e(1)) == e(1) * e(1)
    x, y = e(1), e(2)
    assert FULL.frobenius(x + y) == FULL.frobenius(x) + FULL.frobenius(y)
    g = q([3], 1)
    assert FULL.frobenius(g) == g * g


def test_frobenius_is_coalgebra_map():
    for degree in range(1, 6):
        for mono in FULL.basis(degree).monomials:
            x = FULL.from_monos([mono])
            lhs = FULL.coproduct(FULL.frobenius(x))
            rhs = set()
            for l, r in FULL.coproduct(x):
                rhs.symmetric_difference_update({(FULL.mono_mul(l, l), FULL.mono_mul(r, r))})
            assert lhs == frozenset(rhs)


# ----- dual Steenrod action -----

def test_lambda_q4e2():
    assert FULL.lambda_op("lambda", q([4], 2)) == q([2], 1)


def test_lambda_on_square_of_e1():
    assert FULL.lambda_op("lambda", e(1) * e(1)) == FULL.zero()


def test_lambda_parity_mismatch():
    with pytest.raises(ParityMismatch):
        FULL.lambda_op("lambda", e(3))
    assert FULL.lambda_op("lambda", e(3), strict=False) == FULL.zero()


def test_sq_star_total_is_coalgebra_map():
    for degree in range(1, 8):
        for mono in FULL.basis(degree).monomials:
            x = FULL.from_monos([mono])
            for a in range(1, degree + 1):
                lhs = FULL.coproduct(FULL.sq_star(a, x))
                rhs = set()
                for l, r in FULL.coproduct(x):
                    ld = FULL.mono_degree(l)
                    for b in range(a + 1):
                        ls = FULL.sq_mono_apply(b, l)
                        rs = FULL.sq_mono_apply(a - b, r)
                        for lm in ls:
                            for rm in rs:
                                rhs.symmetric_difference_update({(lm, rm)})
                assert lhs == frozenset(rhs)


def test_sq_star_preserves_primitives():
    p3 = e(3) + e(1) * e(2) + e(1) * e(1) * e(1)
    assert FULL.is_primitive(p3)
    assert FULL.is_primitive(FULL.sq_star(1, p3))


def test_lambda_prime_p3():
    p3 = e(3) + e(1) * e(2) + e(1) * e(1) * e(1)
    assert FULL.lambda_op("lambda'", p3) == e(1) * e(1)


# ----- bases, primitives, indecomposables -----

def test_dims_hand_counted():
    assert [FULL.dim(d) for d in range(4)] == [1, 2, 5, 12]
    assert [BASED.dim(d) for d in range(4)] == [1, 1, 2, 4]
    assert [SIGMA.dim(d) for d in range(5)] == [1, 1, 1, 3, 4]


def test_everything_primitive_in_degree_one():
    assert FULL.primitives(1).dim == FULL.dim(1) == 2


def test_ph2_full():
    prim = FULL.primitives(2)
    e1sq = FULL.to_vector(e(1) * e(1), 2)
    q1e0sq = FULL.to_vector(q([1, 1], 0), 2)
    assert prim == gf2.F2Subspace.from_vectors([e1sq, q1e0sq], FULL.dim(2))


def test_p3_in_ph3():
    p3 = e(3) + e(1) * e(2) + e(1) * e(1) * e(1)
    assert FULL.primitives(3).contains(FULL.to_vector(p3, 3))


def test_ph4_based_two_dimensional():
    prim = BASED.primitives(4)
    v1 = BASED.to_vector(q([3], 1, BASED), 4)
    v2 = BASED.to_vector(q([2, 1], 1, BASED), 4)
    assert prim == gf2.F2Subspace.from_vectors([v1, v2], BASED.dim(4))
    assert prim.dim == 2


def test_ph4_full_has_extra_class():
    assert FULL.primitives(4).dim == 3


def test_indecomposables():
    assert FULL.indecomposable_dim(2) == 2  # e_2 and Q^2 e_0
    assert SIGMA.indecomposable_dim(2) == 0
    for n in range(1, 9):
        assert FULL.indecomposable_dim(n) == len(FULL.generators_in_degree(n))


def test_primitive_decomposables_are_squares():
    # kernel of PH -> QH equals PH ∩ ξA, degreewise
    for model in (FULL, SIGMA):
        for n in range(2, 9):
            prim = model.primitives(n)
            dec = model.decomposables(n)
            if n % 2:
                squares = gf2.F2Subspace.from_vectors([], model.dim(n))
            else:
                vecs = [
                    model.to_vector(model.from_monos([model.mono_mul(m, m)]), n)
                    for m in model.basis(n // 2).monomials
                ]
                squares = gf2.F2Subspace.from_vectors(vecs, model.dim(n))
            assert gf2.subspace_intersection(prim, dec) == gf2.subspace_intersection(
                prim, squares
            )


def test_milnor_moore_on_primitively_generated_model():
    # dim PH_n = dim QH_n + dim P(ξH)_n when the algebra is primitively generated
    for n in range(1, 11):
        prim = SIGMA.primitives(n)
        qdim = SIGMA.indecomposable_dim(n)
        if n % 2:
            pxi = 0
        else:
            vecs = [
                SIGMA.to_vector(SIGMA.from_monos([SIGMA.mono_mul(m, m)]), n)
                for m in SIGMA.basis(n // 2).monomials
            ]
            squares = gf2.F2Subspace.from_vectors(vecs, SIGMA.dim(n))
            pxi = gf2.subspace_intersection(prim, squares).dim
        assert prim.dim == qdim + pxi


# ----- the word relation suite -----

def relation_pairs(model, max_degree):
    for d in range(0, max_degree + 1):
        for gen in model.generators_in_degree(d) if d else []:
            yield d, model.from_monos([(gen,)])


def test_word_relations_small():
    # λ Q^{2s} x = Q^s λ x and the four companions, degrees <= 9
    N = 9
    for d in range(1, N + 1):
        for gen in FULL.generators_in_degree(d):
            x = FULL.from_monos([(gen,)])
            for s in range(1, (N - d) // 2 + 1):
                if d % 2 == 0:
                    lhs = FULL.lambda_op("lambda", FULL.q_apply(2 * s, x), strict=False)
                    rhs = FULL.q_apply(s, FULL.lambda_op("lambda", x))
                    assert lhs == rhs
                    lam_x = FULL.lambda_op("lambda", x)
                    if not lam_x:
                        lhs = FULL.lambda_op("lambda''", FULL.q_apply(2 * s, x), strict=False)
                        rhs = FULL.q_apply(s, FULL.lambda_op("lambda''", x))
                        assert lhs == rhs
                else:
                    lhs = FULL.lambda_op("lambda'", FULL.q_apply(2 * s, x), strict=False)
                    rhs = FULL.q_apply(s, FULL.lambda_op("lambda'", x))
                    assert lhs == rhs
    # odd Q index cases
    for d in range(1, N + 1):
        for gen in FULL.generators_in_degree(d):
            x = FULL.from_monos([(gen,)])
            for s in range(1, (N - d) // 2 + 2):
                if 2 * s - 1 + d > N + 2:
                    continue
                if d % 2 == 0:
                    lam_x = FULL.lambda_op("lambda", x)
                    target = FULL.q_apply(s, lam_x)
                    coeff = (s + d // 2) % 2  # parity of deg Q^s λx
                    lhs = FULL.lambda_op("lambda'", FULL.q_apply(2 * s - 1, x), strict=False)
                    assert lhs == (target if coeff else FULL.zero())
                else:
                    lamp_x = FULL.lambda_op("lambda'", x)
                    target = FULL.q_apply(s, lamp_x)
                    coeff = (1 + s + (d + 1) // 2) % 2  # 1 + deg Q^s λ' x
                    lhs = FULL.lambda_op("lambda''", FULL.q_apply(2 * s - 1, x), strict=False)
                    assert lhs == (target if coeff else FULL.zero())


def test_rendering():
    x = q([2], 1) + e(1) * e(2) + e(1) * e(1) * e(1)
    assert str(x) == "Q^2 e_1 + e_1*e_2 + e_1^3"
    assert str(q([1], 0) * q([1], 0)) == "(Q^1 e_0)^2"
    assert str(FULL.zero()) == "0"
    assert str(FULL.unit()) == "1"


def test_psi_multiplicative_random_pairs():
    import random

    rng = random.Random(17)
    for model in (FULL, SIGMA):
        for _ in range(15):
            da = rng.randint(1, 4)
            db = rng.randint(1, 4)
            xa = model.from_monos(
                rng.sample(model.basis(da).monomials, k=min(2, model.dim(da)))
            )
            xb = model.from_monos(
                rng.sample(model.basis(db).monomials, k=min(2, model.dim(db)))
            )
            lhs = model.coproduct(xa * xb)
            rhs = set()
            for l1, r1 in model.coproduct(xa):
                for l2, r2 in model.coproduct(xb):
                    rhs.symmetric_difference_update(
                        {(model.mono_mul(l1, l2), model.mono_mul(r1, r2))}
                    )
            assert lhs == frozenset(rhs)


def test_cartan_compat_other_spaces():
    for model in (get_model("bspin2"), get_model("bspin3"), SIGMA):
        for degree in range(1, 9):
            for mono in model.basis(degree).monomials[:8]:
                x = model.from_monos([mono])
                for a in (1, 2, 4):
                    lhs = model.coproduct(model.sq_star(a, x))
                    rhs = set()
                    for l, r in model.coproduct(x):
                        for b in range(a + 1):
                            for lm in model.sq_mono_apply(b, l):
                                for rm in model.sq_mono_apply(a - b, r):
                                    rhs.symmetric_difference_update({(lm, rm)})
                    assert lhs == frozenset(rhs)


def test_normalization_preserves_degree():
    import random

    rng = random.Random(23)
    for _ in range(30):
        length = rng.randint(1, 3)
        word = tuple(rng.randint(1, 5) for _ in range(length))
        idx = rng.choice([0, 1, 2])
        value = FULL.gen_element(word, idx)
        expected = sum(word) + idx
        for mono in value.monos:
            assert FULL.mono_degree(mono) == expected
