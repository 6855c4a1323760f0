"""
Elliptic-inverse check through vertex labelings
Edge signs ξ, the subgraph Γ′ of edges whose subgroups strictly contain the radical,
the ±1 vertex labeling and its cycle-basis oracle
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gbs.algebra.arithmetic import is_p_number, prime_support
from gbs.algebra.modular import PLUS_MINUS_ONE, classify_modular_image, delta_generators
from gbs.algebra.radical import RadicalData, compute_radical
from gbs.graph.core import (
    GraphLike,
    LabeledEdge,
    LabeledGraph,
    Subgraph,
    VertexId,
    connected_components,
    cycle_basis,
    spanning_tree,
    walk_vertices,
)
from gbs.graph.normalize import is_reduced
from gbs.utils.errors import ConditionFails, NotAPath, PreconditionViolated

logger = logging.getLogger(__name__)

NEGATIVE_LOOP = "NegativeLoop"
CONFLICT = "Conflict"

SignFunction = Callable[[LabeledEdge], int]
PickFunction = Callable[[List[VertexId]], VertexId]


def xi(e: LabeledEdge) -> int:
    """Sign of λ(+e)λ(-e)"""
    return 1 if e.label_plus * e.label_minus > 0 else -1


def xi_path(path: Sequence[LabeledEdge], sign: SignFunction = xi) -> int:
    """Product of edge signs along a path; 1 on the empty path"""
    states = walk_vertices(path)
    if states and not states[-1]:
        raise NotAPath({"edges": [e.id for e in path]})
    result = 1
    for e in path:
        result *= sign(e)
    return result


@dataclass(frozen=True)
class LabelingFailure:
    vertex: VertexId
    cause: str
    edges: Tuple[str, ...]

    def to_dict(self) -> Dict:
        return {"vertex": self.vertex, "cause": self.cause, "edges": list(self.edges)}


@dataclass(frozen=True)
class ZetaLabeling:
    """Partial ±1 vertex labeling of one component"""

    zeta: Dict[VertexId, int]
    complete: bool
    failure: Optional[LabelingFailure] = None
    order: Tuple[VertexId, ...] = ()

    def to_dict(self) -> Dict:
        data = {"zeta": dict(self.zeta), "complete": self.complete}
        if self.failure is not None:
            data["failure"] = self.failure.to_dict()
        return data


def _other_end(e: LabeledEdge, v: VertexId) -> VertexId:
    return e.terminus if e.origin == v else e.origin


def run_labeling(component: GraphLike,
                 pick: Optional[PickFunction] = None,
                 sign: SignFunction = xi) -> ZetaLabeling:
    """Label the vertices of a connected component with ±1

    pick chooses the next vertex among the candidates; by default the first
    vertex is the least one and later vertices follow discovery order.
    """
    zeta: Dict[VertexId, int] = {}
    order: List[VertexId] = []
    frontier: List[VertexId] = []

    while len(zeta) < len(component.vertices):
        # Step 1: any vertex at the start, afterwards a neighbour of a labeled one
        candidates = frontier or sorted(v for v in component.vertices if v not in zeta)
        v = pick(list(candidates)) if pick is not None else candidates[0]

        # Step 2
        for e in component.edges:
            if e.is_loop and e.origin == v and sign(e) == -1:
                logger.debug(f"Labeling stops at {v}: negative loop {e.id}")
                return ZetaLabeling(zeta, False, LabelingFailure(v, NEGATIVE_LOOP, (e.id,)), tuple(order))

        # Step 3
        incoming = [
            (e, sign(e) * zeta[_other_end(e, v)])
            for e in component.edges
            if not e.is_loop and e.touches(v) and _other_end(e, v) in zeta
        ]
        if incoming:
            first, value = incoming[0]
            for e, other_value in incoming[1:]:
                if other_value != value:
                    logger.debug(f"Labeling stops at {v}: conflict between {first.id} and {e.id}")
                    return ZetaLabeling(zeta, False, LabelingFailure(v, CONFLICT, (first.id, e.id)), tuple(order))
        else:
            value = 1

        zeta[v] = value
        order.append(v)
        if v in frontier:
            frontier.remove(v)
        for e in component.edges:
            if e.is_loop or not e.touches(v):
                continue
            w = _other_end(e, v)
            if w not in zeta and w not in frontier:
                frontier.append(w)

    return ZetaLabeling(zeta, True, None, tuple(order))


def gamma_prime(g: GraphLike, rad: RadicalData) -> Subgraph:
    """Same vertices, edges with k_e > 1"""
    return Subgraph(tuple(g.vertices), tuple(e for e in g.edges if rad.k_e[e.id] > 1))


def oracle_cycle_check(g: GraphLike, sign: SignFunction = xi) -> bool:
    """ξ = 1 on every fundamental cycle of every component"""
    for component in connected_components(g):
        t = spanning_tree(component)
        for cycle in cycle_basis(component, t):
            if xi_path(cycle, sign) != 1:
                return False
    return True


def merge_labelings(labelings: Sequence[ZetaLabeling]) -> Dict[VertexId, int]:
    """Union of complete per-component labelings"""
    zeta: Dict[VertexId, int] = {}
    for labeling in labelings:
        if not labeling.complete:
            raise ConditionFails(labeling.failure.to_dict() if labeling.failure else None)
        zeta.update(labeling.zeta)
    return zeta


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of the labeling check on every component of Γ′"""

    holds: bool
    prime: int
    gamma_prime: Subgraph
    labelings: Tuple[ZetaLabeling, ...] = field(default_factory=tuple)

    @property
    def failure(self) -> Optional[LabelingFailure]:
        for labeling in self.labelings:
            if labeling.failure is not None:
                return labeling.failure
        return None

    def zeta(self) -> Dict[VertexId, int]:
        return merge_labelings(self.labelings)

    def to_dict(self) -> Dict:
        data = {
            "holds": self.holds,
            "prime": self.prime,
            "gamma_prime_edges": [e.id for e in self.gamma_prime.edges],
            "components": [lab.to_dict() for lab in self.labelings],
        }
        return data


def condition_prime(g: LabeledGraph) -> int:
    """The single odd prime dividing the labels, or PreconditionViolated"""
    primes = sorted(set().union(*(prime_support(label) for label in g.labels())))
    if not primes or not all(is_p_number(label, primes[0]) for label in g.labels()):
        raise PreconditionViolated({"clause": "labels must be p-numbers for one prime", "primes": primes})
    p = primes[0]
    if p == 2:
        raise PreconditionViolated({"clause": "prime must be odd", "primes": [2]})
    return p


def check_condition(g: LabeledGraph,
                    rad: Optional[RadicalData] = None,
                    pick: Optional[PickFunction] = None,
                    sign: SignFunction = xi) -> ConditionResult:
    """Run the labeling on each component of Γ′; holds iff all complete"""
    if not is_reduced(g):
        raise PreconditionViolated({"clause": "graph must be reduced"})
    p = condition_prime(g)
    image = classify_modular_image(delta_generators(g))
    if image.kind != PLUS_MINUS_ONE:
        raise PreconditionViolated({"clause": "modular image must be {1,-1}", "class": image.kind})
    rad = rad or compute_radical(g)

    sub = gamma_prime(g, rad)
    labelings = tuple(run_labeling(c, pick, sign) for c in connected_components(sub))
    holds = all(lab.complete for lab in labelings)
    logger.info(f"Elliptic labeling check over {len(labelings)} components: {'holds' if holds else 'fails'}")
    return ConditionResult(holds, p, sub, labelings)
