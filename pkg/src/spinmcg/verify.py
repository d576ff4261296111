"""Named verification targets for the command line and the test suite.

Every target checks one computational statement degree by degree and
returns a structured result: individual named checks with pass/fail and
a short detail string.  Output ordering is deterministic so runs are
byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from . import gf2
from .algebra import DEFAULT_MAX_DEGREE, get_model
from .betti import corollary18_check, spin_betti
from .hopf import SquareFreeQuotient, hopf_kernel_dims
from .loops import LoopTower, PrimitiveLabel, canonical_primitives
from .maps import (
    PrimitiveBoundary,
    doubled_t3_generators,
    kernel_poincare,
    theorem2_composite,
    transfer_iota_plus_c,
    verify_partial_injective,
)
from .spaces import binom_mod2


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    details: str = ""


@dataclass(frozen=True)
class TargetResult:
    target: str
    max_degree: int
    checks: Tuple[Check, ...]
    notes: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def counts(self) -> Tuple[int, int]:
        good = sum(1 for c in self.checks if c.passed)
        return good, len(self.checks) - good

    def to_json(self) -> str:
        good, bad = self.counts()
        return json.dumps(
            {
                "target": self.target,
                "max_degree": self.max_degree,
                "passed": self.passed,
                "pass_count": good,
                "fail_count": bad,
                "checks": [
                    {"name": c.name, "passed": c.passed, "details": c.details}
                    for c in self.checks
                ],
                "notes": list(self.notes),
            },
            sort_keys=True,
        )

    def to_text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.target} "
                 f"(degrees <= {self.max_degree})"]
        for c in self.checks:
            mark = "ok" if c.passed else "FAIL"
            detail = f"  {c.details}" if c.details else ""
            lines.append(f"  {mark:>4}  {c.name}{detail}")
        for note in self.notes:
            lines.append(f"  note  {note}")
        return "\n".join(lines)


def verify_lemma36(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Base-class halving identities: λe_2r = e_r, λ'e_2r-1 = r e_r,
    λ''e_2r-2 = C(r,2) e_r."""
    model = get_model("rp-inf")
    e = lambda n: model.gen_element((), n)
    checks = []
    for r in range(0, max_degree // 2 + 1):
        got = model.lambda_op("lambda", e(2 * r))
        checks.append(Check(f"lambda e_{2*r} = e_{r}", got == e(r)))
    for r in range(1, (max_degree + 1) // 2 + 1):
        if 2 * r - 1 > max_degree:
            break
        want = e(r) if r % 2 else model.zero()
        got = model.lambda_op("lambda'", e(2 * r - 1))
        checks.append(Check(f"lambda' e_{2*r-1} = {r % 2} * e_{r}", got == want))
    for r in range(1, max_degree // 2 + 2):
        if 2 * r - 2 > max_degree or 2 * r - 2 < 2:
            continue
        want = e(r) if binom_mod2(r, 2) else model.zero()
        got = model.lambda_op("lambda''", e(2 * r - 2))
        checks.append(Check(f"lambda'' e_{2*r-2} = C({r},2) * e_{r}", got == want))
    return TargetResult("lemma3.6", max_degree, tuple(checks))


def verify_lemma37(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """The five commutation rules between the halving operations and the
    Dyer-Lashof action, on every generator within the degree envelope."""
    model = get_model("rp-inf")
    eq_counts: Dict[str, List[int]] = {k: [0, 0] for k in ("8", "10", "11", "12", "13")}
    failures: List[str] = []

    def record(eq: str, ok: bool, desc: str) -> None:
        eq_counts[eq][0 if ok else 1] += 1
        if not ok:
            failures.append(f"({eq}) {desc}")

    for d in range(0, max_degree + 1):
        gens = model.generators_in_degree(d) if d else [((), 0)]
        for gen in gens:
            x = model.from_monos([(gen,)])
            name = model.render_gen(gen)
            for s in range(1, (max_degree - d) // 2 + 1):
                if d % 2 == 0:
                    lam_x = model.lambda_op("lambda", x)
                    lhs = model.lambda_op("lambda", model.q_apply(2 * s, x), strict=False)
                    record("8", lhs == model.q_apply(s, lam_x), f"Q^{2*s} {name}")
                    if not lam_x:
                        lhs = model.lambda_op("lambda''", model.q_apply(2 * s, x), strict=False)
                        rhs = model.q_apply(s, model.lambda_op("lambda''", x))
                        record("12", lhs == rhs, f"Q^{2*s} {name}")
                else:
                    lhs = model.lambda_op("lambda'", model.q_apply(2 * s, x), strict=False)
                    rhs = model.q_apply(s, model.lambda_op("lambda'", x))
                    record("10", lhs == rhs, f"Q^{2*s} {name}")
            for s in range(1, (max_degree - d + 1) // 2 + 1):
                if 2 * s - 1 + d > max_degree:
                    continue
                if d % 2 == 0:
                    target = model.q_apply(s, model.lambda_op("lambda", x))
                    coeff = (s + d // 2) % 2
                    lhs = model.lambda_op("lambda'", model.q_apply(2 * s - 1, x), strict=False)
                    record("11", lhs == (target if coeff else model.zero()), f"Q^{2*s-1} {name}")
                else:
                    target = model.q_apply(s, model.lambda_op("lambda'", x))
                    coeff = (1 + s + (d + 1) // 2) % 2
                    lhs = model.lambda_op("lambda''", model.q_apply(2 * s - 1, x), strict=False)
                    record("13", lhs == (target if coeff else model.zero()), f"Q^{2*s-1} {name}")

    checks = []
    for eq in ("8", "10", "11", "12", "13"):
        good, bad = eq_counts[eq]
        checks.append(
            Check(f"relation ({eq})", bad == 0, f"{good} instances"
                  + (f", {bad} failures: {failures[:3]}" if bad else ""))
        )
    return TargetResult("lemma3.7", max_degree, tuple(checks))


def verify_prop38(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Surjectivity of λ on indecomposables, plus the doubling formula
    λ Q^2I e_2r = Q^I e_r on the nose."""
    model = get_model("rp-inf")
    checks = []
    for n in range(2, max_degree + 1, 2):
        gens = model.generators_in_degree(n)
        target_gens = model.generators_in_degree(n // 2)
        index = {g: i for i, g in enumerate(target_gens)}
        rows = []
        for g in gens:
            image = model.lambda_op("lambda", model.from_monos([(g,)]))
            vec = 0
            for h in model.generator_part(image):
                vec |= 1 << index[h]
            rows.append(vec)
        rank = gf2.rank(gf2.F2Matrix(tuple(rows), max(len(target_gens), 1)))
        checks.append(
            Check(
                f"lambda onto indecomposables {n} -> {n // 2}",
                rank == len(target_gens),
                f"rank {rank} of {len(target_gens)}",
            )
        )
    formula_ok = 0
    formula_bad = []
    for g in model.generators(max_degree):
        word, r = g
        if any(s % 2 for s in word) or r % 2:
            continue
        half = tuple(s // 2 for s in word)
        lhs = model.lambda_op("lambda", model.from_monos([(g,)]))
        rhs = model.gen_element(half, r // 2)
        if lhs == rhs:
            formula_ok += 1
        else:
            formula_bad.append(model.render_gen(g))
    checks.append(
        Check(
            "doubling formula lambda Q^2I e_2r = Q^I e_r",
            not formula_bad,
            f"{formula_ok} instances" + (f", failures: {formula_bad[:3]}" if formula_bad else ""),
        )
    )
    return TargetResult("prop3.8", max_degree, tuple(checks))


def verify_prop39(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Surjectivity of λ' on primitives, degreewise from each odd degree."""
    tower = LoopTower(max_degree)
    checks = []
    for n in range(3, max_degree + 1, 2):
        target = tower.lambda_target("lambda'", n)
        image = tower.lambda_image("lambda'", n)
        ph_target = tower.ph(target)
        ok = image == ph_target
        checks.append(
            Check(
                f"lambda' onto primitives {n} -> {target}",
                ok,
                f"image dim {image.dim} of {ph_target.dim}",
            )
        )
    # degree 1 is the identity on the primitive line
    image1 = tower.lambda_image("lambda'", 1)
    checks.insert(0, Check("lambda' identity in degree 1", image1 == tower.ph(1)))
    return TargetResult("prop3.9", max_degree, tuple(checks))


def verify_prop310(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """The halving defect: the witness class in Ker(lambda') that the
    second halving operation misses, in the based model."""
    model = get_model("rp-inf", reduced=True)
    prims = canonical_primitives("rp-inf", True)
    checks = []
    p3 = prims.element(PrimitiveLabel((), 3))
    p21 = prims.element(PrimitiveLabel((2,), 1))
    p11 = prims.element(PrimitiveLabel((1,), 1))
    e = lambda n: model.gen_element((), n)
    checks.append(
        Check("p_3 = e_3 + e_1 e_2 + e_1^3", p3 == e(3) + e(1) * e(2) + e(1) * e(1) * e(1))
    )
    checks.append(Check("lambda' p_3 = p_(1,1)", model.lambda_op("lambda'", p3) == p11))
    checks.append(Check("lambda' p_(2,1) = p_(1,1)", model.lambda_op("lambda'", p21) == p11))
    witness = p3 + p21
    checks.append(Check("p_(2,1) + p_3 in Ker(lambda')",
                        model.lambda_op("lambda'", witness) == model.zero()))
    ph4 = model.primitives(4)
    v1 = model.to_vector(model.gen_element((3,), 1), 4)
    v2 = model.to_vector(model.gen_element((2, 1), 1), 4)
    checks.append(
        Check(
            "PH_4 has basis {Q^3 e_1, Q^2 Q^1 e_1}",
            ph4 == gf2.F2Subspace.from_vectors([v1, v2], model.dim(4)) and ph4.dim == 2,
            f"dim {ph4.dim}",
        )
    )
    images = [
        model.lambda_op("lambda''", model.from_vector(v, 4)) for v in ph4.basis
    ]
    checks.append(
        Check("lambda'' kills PH_4", all(not img.monos for img in images))
    )
    checks.append(
        Check(
            "witness p_(2,1) + p_3 not hit by lambda''",
            bool(witness.monos) and all(not img.monos for img in images),
            "witness: p_(2,1) + p_3",
        )
    )
    return TargetResult("prop3.10", max_degree, tuple(checks),
                        notes=("witness p_(2,1) + p_3",))


def verify_cor27(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Injectivity of the boundary map, full and primitive-restricted,
    under both tail policies."""
    checks = []
    for pol in ("zero", "primitive"):
        report = verify_partial_injective(max_degree, pol)
        checks.append(
            Check(
                f"boundary injective degreewise [{pol} tails]",
                report.injective,
                "; ".join(f"{n}:{r}/{d}" for n, r, d in report.full_ranks[-3:]),
            )
        )
        checks.append(
            Check(
                f"primitive restriction injective [{pol} tails]",
                report.primitive_injective,
                "; ".join(f"{n}:{r}/{d}" for n, r, d in report.primitive_ranks[-3:]),
            )
        )
    boundary = PrimitiveBoundary(max_degree, "primitive")
    sigma = boundary.source
    honest_ok = all(
        boundary.image(n).dim == sigma.primitives(n).dim
        for n in range(1, max_degree + 1)
    )
    checks.append(Check("honest primitive-level boundary injective", honest_ok))
    nat_cap = min(max_degree, 9)
    failures = boundary.naturality_failures(nat_cap)
    checks.append(
        Check(
            f"honest boundary commutes with Sq_* (degrees <= {nat_cap})",
            not failures,
            "" if not failures else f"failures: {failures[:3]}",
        )
    )
    return TargetResult("cor2.7", max_degree, tuple(checks))


def verify_thm2(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Kernel of the once-looped boundary = squares, and the squaring
    composite through the transfer."""
    model = get_model("bspin2")
    checks = []
    surrogate = SquareFreeQuotient(model)
    kernel_dims = hopf_kernel_dims(surrogate, max_degree)
    xi_dims = kernel_poincare(max_degree)
    checks.append(
        Check(
            "Hopf kernel of the exterior-quotient surrogate = squares",
            kernel_dims == xi_dims,
            f"dims {xi_dims}",
        )
    )
    # transfer route: (iota + c) a_2i = a_i^2, odd classes die
    ok_even, ok_odd = True, True
    for i in range(0, max_degree // 4 + 1):
        a_i = model.gen_element((), i)
        if transfer_iota_plus_c(2 * i) != model.product(a_i, a_i):
            ok_even = False
    for i in range(0, (max_degree // 2 - 1) // 2 + 1):
        if transfer_iota_plus_c(2 * i + 1) != model.zero():
            ok_odd = False
    checks.append(Check("transfer value on even classes is the square", ok_even))
    checks.append(Check("transfer kills odd classes", ok_odd))
    # composite values agree with the transfer route and with the
    # Dyer-Lashof expansion of the square
    agree = True
    span_ok = True
    details = []
    by_degree: Dict[int, set] = {}
    for gen in doubled_t3_generators(max_degree):
        word, i = gen
        value = theorem2_composite(word, i)
        half = tuple(s // 2 for s in word)
        target_gen = model.gen_element(half, i)
        if value != model.product(target_gen, target_gen):
            agree = False
            details.append(f"value mismatch at Q^{word} b_{i}")
        expansion = model.q_word(word, transfer_iota_plus_c(2 * i))
        if expansion != value:
            agree = False
            details.append(f"Dyer-Lashof route differs at Q^{word} b_{i}")
        d = 2 * sum(half) + 4 * i
        by_degree.setdefault(d, set()).add((half, i))
    for d in range(1, max_degree + 1):
        squared_gens = {
            (g[0], g[1]) for g in model.generators_in_degree(d // 2)
        } if d % 2 == 0 else set()
        if by_degree.get(d, set()) != squared_gens:
            span_ok = False
            details.append(f"degree {d} span mismatch")
    checks.append(
        Check("composite maps Q^2I b_i to (Q^I a_i)^2", agree, "; ".join(details[:3]))
    )
    checks.append(
        Check("composite spans the squared generators degreewise", span_ok)
    )
    return TargetResult("thm2", max_degree, tuple(checks))


def verify_thm3(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Once-looped model: polynomial, with the square-collapse dimension law."""
    cap = min(max_degree, DEFAULT_MAX_DEGREE)
    tower = LoopTower(cap)
    level_cap = cap - 1
    checks = []
    pres = tower.level1_presentation(level_cap)
    dims = tower.level1_dims(level_cap)
    checks.append(
        Check(
            "square-collapse dims = exterior dims (once looped)",
            dims == pres.brute_dims(level_cap),
            f"dims {dims}",
        )
    )
    report = tower.polynomiality(1, level_cap)
    checks.append(Check("once-looped model polynomial", report.polynomial))
    # indecomposables of the once-looped model: generators minus squares hit
    q_dims = []
    for k in range(1, level_cap + 1):
        total = pres.degrees.count(k)
        if k % 2 == 0:
            src = [i for i, d in enumerate(pres.degrees) if d == k // 2]
            tgt = {g: j for j, g in enumerate(
                [i for i, d in enumerate(pres.degrees) if d == k])}
            rows = []
            for i in src:
                vec = 0
                for t in pres.xi.get(i, ()):
                    vec |= 1 << tgt[t]
                rows.append(vec)
            total -= gf2.rank(gf2.F2Matrix(tuple(rows), max(len(tgt), 1)))
        q_dims.append(total)
    # dual statement: indecomposables in degree k correspond to Ker(lambda')
    # upstairs in degree k+1
    expected = [tower.klam(k + 1).dim for k in range(1, level_cap + 1)]
    checks.append(
        Check(
            "once-looped indecomposables match Ker(lambda') upstairs",
            q_dims == expected,
            f"dims {q_dims}",
        )
    )
    return TargetResult("thm3", max_degree, tuple(checks))


def verify_thm4(max_degree: int = DEFAULT_MAX_DEGREE, policy: str = "primitive") -> TargetResult:
    """Twice-looped model: dimension law holds but the model is not
    polynomial; a square-zero generator is exhibited."""
    cap = min(max_degree, DEFAULT_MAX_DEGREE)
    tower = LoopTower(cap)
    level_cap = cap - 2
    checks = []
    pres = tower.level2_presentation(level_cap)
    dims = tower.level2_dims(level_cap)
    checks.append(
        Check(
            "square-collapse dims = exterior dims (twice looped)",
            dims == pres.brute_dims(level_cap),
            f"dims {dims}",
        )
    )
    report = tower.polynomiality(2, level_cap)
    checks.append(Check("twice-looped model NOT polynomial", not report.polynomial))
    based = LoopTower(max(5, min(cap, 8)), reduced=True)
    based_report = based.polynomiality(2, 2)
    prims = canonical_primitives("rp-inf", True)
    p3 = prims.element(PrimitiveLabel((), 3))
    p21 = prims.element(PrimitiveLabel((2,), 1))
    wanted = p3 + p21
    witness_ok = (
        not based_report.polynomial
        and any(
            w.model_degree == 1 and w.witness == wanted
            for w in based_report.square_zero
        )
    )
    checks.append(
        Check(
            "square-zero generator dual to p_(2,1) + p_3 exhibited",
            witness_ok,
            "model degree 1 (degree 3 upstairs, double desuspension)",
        )
    )
    return TargetResult(
        "thm4",
        max_degree,
        tuple(checks),
        notes=(
            "the exhibited square-zero generator sits in model degree 1 = "
            "(witness degree 3) - 2; its single desuspension indexing is degree 2",
        ),
    )


def verify_cor18(max_degree: int = 10, policy: str = "primitive") -> TargetResult:
    cap = min(max_degree, 10)
    report = corollary18_check(cap, policy)
    checks = [
        Check(
            f"degree {d}: {dim} <= {bound}",
            dim <= bound,
        )
        for d, dim, bound in report.rows
    ]
    return TargetResult("cor1.8", cap, tuple(checks))


TARGETS: Dict[str, Callable[[int, str], TargetResult]] = {
    "lemma3.6": verify_lemma36,
    "lemma3.7": verify_lemma37,
    "prop3.8": verify_prop38,
    "prop3.9": verify_prop39,
    "prop3.10": verify_prop310,
    "cor2.7": verify_cor27,
    "thm2": verify_thm2,
    "thm3": verify_thm3,
    "thm4": verify_thm4,
    "cor1.8": verify_cor18,
}


def run_target(target: str, max_degree: int, policy: str = "primitive") -> TargetResult:
    if target not in TARGETS:
        raise KeyError(f"unknown target {target!r}; valid: {sorted(TARGETS)}")
    return TARGETS[target](max_degree, policy)
