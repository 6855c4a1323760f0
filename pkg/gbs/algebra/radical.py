"""
Cyclic radical computations
The common subgroup K of all edge subgroups, indices μ(v), μ and k_e,
and the explicit homomorphisms used to certify residual properties
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Dict, List, Optional, Tuple

from gbs.algebra.arithmetic import rational_lcm
from gbs.algebra.modular import PLUS_MINUS_ONE, TRIVIAL, classify_modular_image, delta_generators
from gbs.graph.core import EdgeId, LabeledGraph, VertexId, spanning_tree
from gbs.graph.normalize import is_reduced, is_t_positive
from gbs.graph.shape import detect_shape
from gbs.utils.errors import (
    ConditionFails,
    Elementary,
    InvariantViolation,
    ModularImageTooBig,
    PreconditionViolated,
)

logger = logging.getLogger(__name__)

RATIONAL_TARGET = "rational"
MODULAR_TARGET = "modular"


@dataclass(frozen=True)
class RadicalData:
    """Indices of K = ⋂ H_{εe} in the vertex and edge groups"""

    mu_v: Dict[VertexId, int]
    mu: int
    k_e: Dict[EdgeId, int]
    M: Fraction
    image_kind: str
    cyclic_radical: bool = False

    def to_dict(self) -> Dict:
        return {
            "mu_v": dict(self.mu_v),
            "mu": self.mu,
            "k_e": dict(self.k_e),
            "M": str(self.M),
            "cyclic_radical": self.cyclic_radical,
            "structure": structure_descriptor(self.image_kind, self.mu),
        }


@dataclass(frozen=True)
class SigmaHom:
    """Images of the generators g_v and t_e; modulus is None for the rational target"""

    kind: str
    vertex_images: Dict[VertexId, int]
    letter_images: Dict[EdgeId, Fraction] = field(default_factory=dict)
    modulus: Optional[int] = None

    def to_dict(self) -> Dict:
        data = {
            "kind": self.kind,
            "vertex_images": dict(self.vertex_images),
            "letter_images": {k: (f"a_{v}" if self.kind == RATIONAL_TARGET else 0)
                              for k, v in self.letter_images.items()},
        }
        if self.modulus is not None:
            data["modulus"] = self.modulus
        return data


@dataclass(frozen=True)
class Relation:
    """One defining relation of G evaluated under σ"""

    edge: EdgeId
    letter: bool
    lhs: Fraction
    rhs: Fraction
    holds: bool

    def to_dict(self) -> Dict:
        return {"edge": self.edge, "letter": self.letter,
                "lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds}


def compute_radical(g: LabeledGraph) -> RadicalData:
    """μ(v), μ and k_e through the scale potentials

    Requires a non-elementary graph with Im Δ ⊆ {1,-1}. On a reduced graph the
    subgroup K is the cyclic radical C(G).
    """
    shape = detect_shape(g)
    if shape.is_elementary:
        raise Elementary({"shape": shape.describe()})

    t = spanning_tree(g)
    image = classify_modular_image(delta_generators(g, t, check_elementary=False))
    if not image.within_units:
        raise ModularImageTooBig({"witness": str(image.witness)})

    s = t.scale
    M = rational_lcm(
        abs(label) * s[v] for e in g.edges for v, label in e.ends()
    )

    mu_v = {}
    for v in g.vertices:
        index = M / s[v]
        if index.denominator != 1:
            raise InvariantViolation({"vertex": v, "mu_v": str(index)})
        mu_v[v] = index.numerator
    mu = lcm(*mu_v.values())

    k_e = {}
    for e in g.edges:
        from_origin = Fraction(mu_v[e.origin], abs(e.label_plus))
        from_terminus = Fraction(mu_v[e.terminus], abs(e.label_minus))
        if from_origin != from_terminus or from_origin.denominator != 1:
            raise InvariantViolation({"edge": e.id, "k_origin": str(from_origin), "k_terminus": str(from_terminus)})
        k_e[e.id] = from_origin.numerator

    rad = RadicalData(mu_v, mu, k_e, M, image.kind, cyclic_radical=is_reduced(g))
    logger.debug(f"Radical: mu={mu}, mu_v={mu_v}, k_e={k_e}")
    return rad


def radical_invariant_violations(g: LabeledGraph, rad: RadicalData) -> List[str]:
    """Names of the index invariants that fail for rad on g; empty when all hold"""
    violations = []
    label_product = prod(abs(lab) for lab in g.labels())
    if label_product % rad.mu != 0:
        violations.append(f"mu {rad.mu} does not divide label product {label_product}")

    for e in g.edges:
        k = rad.k_e[e.id]
        if abs(e.label_plus) * k != rad.mu_v[e.origin]:
            violations.append(f"k_e at origin of {e.id}")
        if abs(e.label_minus) * k != rad.mu_v[e.terminus]:
            violations.append(f"k_e at terminus of {e.id}")

    s = spanning_tree(g).scale
    products = {rad.mu_v[v] * s[v] for v in g.vertices}
    if len(products) != 1:
        violations.append(f"mu(v)*s(v) not constant: {sorted(str(x) for x in products)}")

    if rad.mu != lcm(*rad.mu_v.values()):
        violations.append("mu is not the lcm of mu(v)")
    return violations


def structure_descriptor(image_kind: str, mu: int) -> str:
    """Shape of G as an extension, F a free group"""
    if image_kind == TRIVIAL:
        return f"(F x Z)-by-Z_{mu}"
    if image_kind == PLUS_MINUS_ONE:
        return f"((F x Z)-by-Z_{mu})-by-Z_2"
    return "undefined"


def build_sigma(g: LabeledGraph, rad: RadicalData) -> SigmaHom:
    """g_v ↦ μ/μ(v), t_e ↦ a_{Δ(t_e)} into the split extension of Q⁺ by the free abelian group on the a_q"""
    t = spanning_tree(g)
    if not is_t_positive(g, t):
        raise PreconditionViolated("graph is not T-positive")
    letters = dict(delta_generators(g, t, check_elementary=False))
    images = {v: rad.mu // rad.mu_v[v] for v in g.vertices}
    return SigmaHom(RATIONAL_TARGET, images, letters)


def build_sigma_mod_mu(g: LabeledGraph, rad: RadicalData, zeta: Dict[VertexId, int]) -> SigmaHom:
    """g_v ↦ ζ(v)·μ/μ(v) in Z_μ, t_e ↦ 0"""
    missing = [v for v in g.vertices if v not in zeta]
    if missing:
        raise ConditionFails({"unlabeled": missing})
    images = {v: (zeta[v] * (rad.mu // rad.mu_v[v])) % rad.mu for v in g.vertices}
    t = spanning_tree(g)
    letters = {e.id: Fraction(0) for e in g.edges if not t.is_tree_edge(e.id)}
    return SigmaHom(MODULAR_TARGET, images, letters, modulus=rad.mu)


def verify_sigma(g: LabeledGraph, s: SigmaHom) -> Tuple[bool, List[Relation]]:
    """Check every defining relation of G under s

    Returns (True, all relations) or (False, relations up to the first failing one).
    """
    relations = []
    for e in g.edges:
        letter = e.id in s.letter_images
        lhs = Fraction(e.label_plus * s.vertex_images[e.origin])
        rhs = Fraction(e.label_minus * s.vertex_images[e.terminus])
        if s.modulus is not None:
            holds = (lhs - rhs) % s.modulus == 0
        else:
            if letter:
                lhs = s.letter_images[e.id] * lhs
            holds = lhs == rhs
        relations.append(Relation(e.id, letter, lhs, rhs, holds))
        if not holds:
            logger.warning(f"Relation at edge {e.id} fails under {s.kind} sigma: {lhs} != {rhs}")
            return False, relations
    return True, relations


def sigma_orders(s: SigmaHom) -> Dict[VertexId, int]:
    """Order of each σ(g_v) in Z_μ"""
    if s.modulus is None:
        raise PreconditionViolated("orders are defined for the modular target only")
    return {v: s.modulus // gcd(x, s.modulus) for v, x in s.vertex_images.items()}
