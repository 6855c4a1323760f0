"""
Modular homomorphism data
Values of Δ on stable letters, the class of Im Δ and the subring of Q it generates
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from gbs.algebra.arithmetic import prime_support
from gbs.graph.core import EdgeId, LabeledGraph, SpanningData, spanning_tree
from gbs.graph.shape import detect_shape
from gbs.utils.errors import NotDefined

logger = logging.getLogger(__name__)

TRIVIAL = "Trivial"
PLUS_MINUS_ONE = "PlusMinusOne"
OTHER = "Other"


@dataclass(frozen=True)
class ModularImage:
    """Class of Im Δ with the generating values Δ(t_e)"""

    kind: str
    generators: Tuple[Fraction, ...] = ()
    witness: Optional[Fraction] = None

    @property
    def within_units(self) -> bool:
        """Im Δ ⊆ {1,-1}"""
        return self.kind in (TRIVIAL, PLUS_MINUS_ONE)

    def to_dict(self) -> Dict:
        data = {"class": self.kind, "generators": [str(q) for q in self.generators]}
        if self.witness is not None:
            data["witness"] = str(self.witness)
        return data


@dataclass(frozen=True)
class ModularSubring:
    """Z[1/p : p in inverted_primes]"""

    inverted_primes: FrozenSet[int] = frozenset()

    def describe(self) -> str:
        if not self.inverted_primes:
            return "Z"
        return "Z[" + ",".join(f"1/{p}" for p in sorted(self.inverted_primes)) + "]"

    def to_dict(self) -> Dict:
        return {"inverted_primes": sorted(self.inverted_primes), "ring": self.describe()}


def delta_generators(g: LabeledGraph, t: Optional[SpanningData] = None,
                     check_elementary: bool = True) -> List[Tuple[EdgeId, Fraction]]:
    """Δ(t_e) = λ(-e)·r(e(-1)) / (λ(+e)·r(e(1))) for every non-tree edge"""
    if check_elementary:
        shape = detect_shape(g)
        if shape.is_elementary:
            raise NotDefined({"shape": shape.describe()})
    t = t or spanning_tree(g)
    generators = []
    for e in g.edges:
        if t.is_tree_edge(e.id):
            continue
        value = (e.label_minus * t.signed_scale[e.terminus]) / (e.label_plus * t.signed_scale[e.origin])
        generators.append((e.id, Fraction(value)))
    return generators


def _values(generators: Sequence) -> List[Fraction]:
    return [Fraction(q[1]) if isinstance(q, tuple) else Fraction(q) for q in generators]


def classify_modular_image(generators: Sequence) -> ModularImage:
    """Trivial, PlusMinusOne, or Other with the first generator outside {1,-1}"""
    values = tuple(_values(generators))
    for q in values:
        if abs(q) != 1:
            return ModularImage(OTHER, values, q)
    if any(q == -1 for q in values):
        return ModularImage(PLUS_MINUS_ONE, values)
    return ModularImage(TRIVIAL, values)


def modular_subring(generators: Sequence) -> ModularSubring:
    """Primes dividing the numerator or denominator of some generator"""
    primes = set()
    for q in _values(generators):
        primes |= prime_support(q.numerator) | prime_support(q.denominator)
    return ModularSubring(frozenset(primes))


def modular_image(g: LabeledGraph) -> Tuple[List[Tuple[EdgeId, Fraction]], ModularImage, ModularSubring]:
    """Generators, image class and subring in one pass"""
    generators = delta_generators(g)
    image = classify_modular_image(generators)
    logger.debug(f"Modular image {image.kind} from {len(generators)} generators")
    return generators, image, modular_subring(generators)
