"""
Residual property verdicts for GBS groups
Each verdict carries a reason trace keyed by the criterion it rests on
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from gbs.algebra.abelian import AbelianInvariants, abelianization
from gbs.algebra.arithmetic import PrimeSet, is_rho_number, multiplicative_order, prime_support
from gbs.algebra.modular import (
    OTHER,
    PLUS_MINUS_ONE,
    TRIVIAL,
    ModularImage,
    ModularSubring,
    classify_modular_image,
    delta_generators,
    modular_subring,
)
from gbs.algebra.radical import (
    RadicalData,
    build_sigma_mod_mu,
    compute_radical,
    sigma_orders,
    structure_descriptor,
    verify_sigma,
)
from gbs.decide.nilpotence import ConditionResult, check_condition
from gbs.graph.core import LabeledGraph, graph_to_dict
from gbs.graph.shape import (  # noqa: F401  re-exported
    BS1N,
    CYCLIC,
    KLEIN,
    NON_SOLVABLE,
    ZXZ,
    GroupShape,
    detect_shape,
)
from gbs.utils.config import Config

logger = logging.getLogger(__name__)

RESIDUALLY_FINITE = "ResiduallyFinite"
RESIDUALLY_RHO = "ResiduallyRho"
RESIDUALLY_NILPOTENT = "ResiduallyNilpotent"
RESIDUALLY_TF_NILPOTENT = "ResiduallyTorsionFreeNilpotent"
RESIDUALLY_FREE = "ResiduallyFree"
RESIDUALLY_TF_SOLVABLE = "ResiduallyTorsionFreeSolvable"

# Criterion clauses cited in verdict traces, as "criterion:clause"
REF_SHAPE = "solvable-shape"
REF_BS_RHO_SIGNED = "bs-residual-rho:signed-loop"
REF_BS_RHO_ORDER = "bs-residual-rho:order-mod-p"
REF_BS_NILPOTENT = "bs-residual-nilpotence"
REF_LABEL_RHO_TRIVIAL = "label-rho-criterion:trivial-image"
REF_LABEL_RHO_SIGNED = "label-rho-criterion:sign-image"
REF_LABEL_RHO_LARGE = "label-rho-criterion:large-image"
REF_RHO_EQUIVALENCES = "residual-rho-equivalences"
REF_FINITE_SOLVABLE = "residual-finiteness-criterion:solvable"
REF_FINITE_IMAGE = "residual-finiteness-criterion:modular-image"
REF_NILPOTENT_PRIME = "residual-nilpotence-criterion:single-prime"
REF_NILPOTENT_ELLIPTIC = "residual-nilpotence-criterion:elliptic-inverse"
REF_NILPOTENT_LARGE = "residual-nilpotence-criterion:large-image"
REF_ELLIPTIC = "elliptic-inverse-labeling"
REF_RADICAL_QUOTIENT = "radical-quotient"
REF_FREE = "residual-freeness-criterion"
REF_TF_SOLVABLE = "torsion-free-solvable"


@dataclass(frozen=True)
class Verdict:
    """A residual property with its boolean, reason trace and witness"""

    property: str
    holds: bool
    trace: Tuple[Tuple[str, str], ...]
    witness: Dict = field(default_factory=dict)
    rho: Optional[PrimeSet] = None

    def to_dict(self) -> Dict:
        data = {
            "property": self.property,
            "holds": self.holds,
            "trace": [{"ref": ref, "reason": reason} for ref, reason in self.trace],
            "witness": dict(self.witness),
        }
        if self.rho is not None:
            data["rho"] = self.rho.describe()
        return data


@dataclass(frozen=True)
class Analysis:
    """Everything the verdicts need, computed once on the reduced graph"""

    graph: LabeledGraph
    shape: GroupShape
    image: Optional[ModularImage]
    subring: Optional[ModularSubring]
    radical: Optional[RadicalData]
    label_primes: FrozenSet[int]

    @property
    def reduced(self) -> LabeledGraph:
        return self.shape.reduced


def analyze(g: LabeledGraph) -> Analysis:
    """Reduce g and collect shape, modular image and radical"""
    shape = detect_shape(g)
    reduced = shape.reduced
    image = subring = radical = None
    if not shape.is_elementary:
        generators = delta_generators(reduced, check_elementary=False)
        image = classify_modular_image(generators)
        subring = modular_subring(generators)
        if image.within_units:
            radical = compute_radical(reduced)
    primes = frozenset()
    for label in reduced.labels():
        primes |= prime_support(label)
    return Analysis(g, shape, image, subring, radical, primes)


def _labels_are_rho(a: Analysis, rho: PrimeSet) -> bool:
    return all(is_rho_number(label, rho) for label in a.reduced.labels())


def _rho_verdict(a: Analysis, rho: PrimeSet) -> Verdict:
    kind = a.shape.kind
    if kind in (CYCLIC, ZXZ):
        return Verdict(RESIDUALLY_RHO, True,
                       ((REF_SHAPE, f"{a.shape.describe()} is residually a finite p-group for every prime p"),), rho=rho)

    if kind == KLEIN:
        holds = 2 in rho
        return Verdict(RESIDUALLY_RHO, holds,
                       ((REF_SHAPE, "group is BS(1,-1)"),
                        (REF_BS_RHO_SIGNED, "BS(m,-m) needs m a ρ-number and 2 ∈ ρ; here m = 1")),
                       {"needs_prime": 2}, rho=rho)

    if kind == BS1N:
        n = a.shape.n
        if rho.is_all:
            return Verdict(RESIDUALLY_RHO, True,
                           ((REF_SHAPE, f"group is BS(1,{n})"),
                            (REF_FINITE_SOLVABLE, "solvable GBS groups are residually finite")), rho=rho)
        for p in rho.sorted():
            if n % p == 0:
                continue
            order = multiplicative_order(n, p)
            if is_rho_number(order, rho):
                return Verdict(RESIDUALLY_RHO, True,
                               ((REF_SHAPE, f"group is BS(1,{n})"),
                                (REF_BS_RHO_ORDER, f"p = {p} does not divide {n} and the order {order} of {n} mod {p} is a ρ-number")),
                               {"prime": p, "order": order}, rho=rho)
        return Verdict(RESIDUALLY_RHO, False,
                       ((REF_SHAPE, f"group is BS(1,{n})"),
                        (REF_BS_RHO_ORDER, f"no p ∈ ρ coprime to {n} has a ρ-number multiplicative order of {n}")), rho=rho)

    trace = [(REF_SHAPE, "group is not solvable; criterion applied to the reduced graph")]
    if a.image.kind == OTHER:
        trace.append((REF_LABEL_RHO_LARGE, f"Im Δ contains {a.image.witness}, outside {{1,-1}}"))
        return Verdict(RESIDUALLY_RHO, False, tuple(trace), {"delta": str(a.image.witness)}, rho=rho)

    labels_ok = _labels_are_rho(a, rho)
    bad = sorted({lab for lab in a.reduced.labels() if not is_rho_number(lab, rho)})
    witness = {"non_rho_labels": bad} if bad else {}
    if a.image.kind == TRIVIAL:
        holds = labels_ok
        trace.append((REF_LABEL_RHO_TRIVIAL, "Im Δ = {1}: all labels must be ρ-numbers"))
    else:
        holds = labels_ok and 2 in rho
        trace.append((REF_LABEL_RHO_SIGNED, "Im Δ = {1,-1}: all labels must be ρ-numbers and 2 ∈ ρ"))
        if 2 not in rho:
            witness["needs_prime"] = 2
    trace.append((REF_RHO_EQUIVALENCES,
                  "equivalently residually a finite solvable ρ-group or a periodic ρ-group of finite exponent"))
    return Verdict(RESIDUALLY_RHO, holds, tuple(trace), witness, rho=rho)


def _finite_verdict(a: Analysis) -> Verdict:
    if a.shape.is_solvable:
        return Verdict(RESIDUALLY_FINITE, True,
                       ((REF_SHAPE, f"group {a.shape.describe()} is solvable"),
                        (REF_FINITE_SOLVABLE, "solvable GBS groups are residually finite solvable")))
    holds = a.image.within_units
    reason = ("Im Δ ⊆ {1,-1}" if holds else f"Im Δ contains {a.image.witness}, outside {{1,-1}}")
    witness = {} if holds else {"delta": str(a.image.witness)}
    return Verdict(RESIDUALLY_FINITE, holds,
                   ((REF_SHAPE, "group is not solvable"), (REF_FINITE_IMAGE, reason)), witness)


def _sigma_mod_mu_verified(a: Analysis, condition: ConditionResult) -> bool:
    s0 = build_sigma_mod_mu(a.reduced, a.radical, condition.zeta())
    ok, _ = verify_sigma(a.reduced, s0)
    return ok and sigma_orders(s0) == a.radical.mu_v


def _nilpotent_verdict(a: Analysis) -> Verdict:
    kind = a.shape.kind
    if kind in (CYCLIC, ZXZ, KLEIN):
        return Verdict(RESIDUALLY_NILPOTENT, True,
                       ((REF_SHAPE, f"group is {a.shape.describe()}"),
                        (REF_BS_NILPOTENT, "BS(1,n) with n ≠ 2 and Z are residually nilpotent")))
    if kind == BS1N:
        n = a.shape.n
        return Verdict(RESIDUALLY_NILPOTENT, n != 2,
                       ((REF_SHAPE, f"group is BS(1,{n})"),
                        (REF_BS_NILPOTENT, "BS(1,n) is residually nilpotent iff n ≠ 2")),
                       {"n": n})

    trace = [(REF_SHAPE, "group is not solvable; criterion applied to the reduced graph")]
    primes = sorted(a.label_primes)
    if a.image.kind == OTHER:
        trace.append((REF_NILPOTENT_LARGE, f"Im Δ contains {a.image.witness}, outside {{1,-1}}"))
        return Verdict(RESIDUALLY_NILPOTENT, False, tuple(trace), {"delta": str(a.image.witness)})

    if len(primes) > 1:
        trace.append((REF_NILPOTENT_PRIME, f"labels involve the primes {primes}, not a single prime"))
        return Verdict(RESIDUALLY_NILPOTENT, False, tuple(trace), {"primes": primes})

    p = primes[0] if primes else 2
    if a.image.kind == TRIVIAL:
        trace.append((REF_NILPOTENT_PRIME, f"Im Δ = {{1}} and all labels are {p}-numbers: residually a finite {p}-group"))
        return Verdict(RESIDUALLY_NILPOTENT, True, tuple(trace), {"prime": p})

    if p == 2:
        trace.append((REF_NILPOTENT_PRIME, "Im Δ = {1,-1} and all labels are 2-numbers"))
        return Verdict(RESIDUALLY_NILPOTENT, True, tuple(trace), {"prime": 2})

    condition = check_condition(a.reduced, a.radical)
    witness = {"prime": p, "gamma_prime_edges": [e.id for e in condition.gamma_prime.edges]}
    if not condition.holds:
        trace.append((REF_NILPOTENT_ELLIPTIC, f"Im Δ = {{1,-1}}, p = {p} odd: some elliptic element conjugate to its inverse lies outside C(G)"))
        trace.append((REF_ELLIPTIC, "vertex labeling of Γ′ fails"))
        witness["failure"] = condition.failure.to_dict()
        return Verdict(RESIDUALLY_NILPOTENT, False, tuple(trace), witness)

    trace.append((REF_NILPOTENT_ELLIPTIC, f"Im Δ = {{1,-1}}, p = {p} odd: elliptic elements conjugate to their inverses lie in C(G)"))
    trace.append((REF_ELLIPTIC, "vertex labeling of Γ′ completes on every component"))
    trace.append((REF_RADICAL_QUOTIENT, f"G/C(G) is residually a finite {p}-group"))
    witness["zeta"] = condition.zeta()
    witness["sigma0_verified"] = _sigma_mod_mu_verified(a, condition)
    return Verdict(RESIDUALLY_NILPOTENT, True, tuple(trace), witness)


def _free_verdicts(a: Analysis) -> List[Verdict]:
    kind = a.shape.kind
    witness: Dict = {}
    if kind == CYCLIC:
        holds = True
        trace = ((REF_SHAPE, "group is Z, which is free"),
                 (REF_FREE, "cyclic groups lie outside the criterion's hypothesis; reported directly"))
        witness["outside_hypothesis"] = True
    elif kind == ZXZ:
        holds = True
        trace = ((REF_SHAPE, "group is Z x Z"), (REF_FREE, "Z x Z is a free group times Z"))
    elif kind in (KLEIN, BS1N):
        holds = False
        trace = ((REF_SHAPE, f"group is {a.shape.describe()}"),
                 (REF_FREE, "not a direct product of a free group and Z"))
    else:
        units = all(abs(label) == 1 for label in a.reduced.labels())
        holds = units and a.image.kind == TRIVIAL
        if holds:
            reason = f"reduced graph is one vertex with {len(a.reduced.edges)} equal-sign unit loops: F x Z"
        elif not units:
            reason = "reduced graph has a label of absolute value > 1"
        else:
            reason = f"Im Δ is {a.image.kind}, not trivial"
        trace = ((REF_SHAPE, "group is not solvable"), (REF_FREE, reason))
    return [
        Verdict(RESIDUALLY_TF_NILPOTENT, holds, trace, witness),
        Verdict(RESIDUALLY_FREE, holds, trace, witness),
    ]


def _tf_solvable_verdict() -> Verdict:
    return Verdict(RESIDUALLY_TF_SOLVABLE, True,
                   ((REF_TF_SOLVABLE, "every GBS group is residually torsion-free solvable"),))


def check_residually_rho(g: LabeledGraph, rho: PrimeSet) -> Verdict:
    return _rho_verdict(analyze(g), rho)


def check_residually_finite(g: LabeledGraph) -> Verdict:
    return _finite_verdict(analyze(g))


def check_residually_nilpotent(g: LabeledGraph) -> Verdict:
    return _nilpotent_verdict(analyze(g))


def check_residually_free(g: LabeledGraph) -> Verdict:
    """Residually free; residually torsion-free nilpotent always agrees"""
    return _free_verdicts(analyze(g))[1]


def check_residually_torsion_free_nilpotent(g: LabeledGraph) -> Verdict:
    return _free_verdicts(analyze(g))[0]


@dataclass(frozen=True)
class Report:
    """Every verdict plus the data they were derived from"""

    analysis: Analysis
    verdicts: Tuple[Verdict, ...]
    rho: PrimeSet
    abelian: AbelianInvariants

    def verdict(self, prop: str) -> Verdict:
        for v in self.verdicts:
            if v.property == prop:
                return v
        raise KeyError(prop)

    def holds(self) -> Dict[str, bool]:
        return {v.property: v.holds for v in self.verdicts}

    def to_dict(self) -> Dict:
        a = self.analysis
        data = {
            "shape": a.shape.to_dict(),
            "modular_image": a.image.to_dict() if a.image else {"class": "NotDefined"},
            "modular_subring": a.subring.to_dict() if a.subring else None,
            "radical": a.radical.to_dict() if a.radical else None,
            "abelianization": self.abelian.to_dict(),
            "reduced": graph_to_dict(a.reduced),
            "reduction_trace": a.shape.trace.to_list(),
            "rho": self.rho.describe(),
            "verdicts": [v.to_dict() for v in self.verdicts],
        }
        if a.subring is not None and not a.subring.inverted_primes:
            data["modular_subring"]["note"] = "additive group of the subring is infinite cyclic"
        if a.radical is not None:
            data["structure"] = structure_descriptor(a.image.kind, a.radical.mu)
        return data


def verdicts_from_analysis(a: Analysis, rho: PrimeSet) -> Tuple[Verdict, ...]:
    return (
        _finite_verdict(a),
        _rho_verdict(a, rho),
        _nilpotent_verdict(a),
        *_free_verdicts(a),
        _tf_solvable_verdict(),
    )


def classify_all(g: LabeledGraph, rho: Optional[PrimeSet] = None) -> Report:
    """Run every check once over a shared analysis"""
    rho = rho or PrimeSet.parse(Config.DEFAULT_RHO)
    a = analyze(g)
    verdicts = verdicts_from_analysis(a, rho)
    logger.info(f"Classified {a.shape.describe()}: " +
                ", ".join(f"{v.property}={v.holds}" for v in verdicts))
    return Report(a, verdicts, rho, abelianization(a.reduced))
