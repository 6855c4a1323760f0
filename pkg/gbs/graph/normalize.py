"""
Graph rewriting that preserves the fundamental group
Elementary collapses, reduction, admissible sign changes and the T-positive form
"""

import logging
import random
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from gbs.graph.core import (
    EdgeId,
    LabeledEdge,
    LabeledGraph,
    SpanningData,
    VertexId,
    spanning_tree,
)
from gbs.utils.errors import IsLoop, LabelNotUnit, UnknownTarget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionStep:
    edge: EdgeId
    absorbed: VertexId
    multiplier: int

    def to_dict(self) -> Dict:
        return {"edge": self.edge, "absorbed": self.absorbed, "multiplier": self.multiplier}


@dataclass(frozen=True)
class ReductionTrace:
    """Ordered collapse steps; replaying them reproduces the reduced graph"""

    steps: Tuple[ReductionStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_list(self) -> List[Dict]:
        return [s.to_dict() for s in self.steps]


def elementary_collapse(g: LabeledGraph, edge_id: EdgeId, eps: int) -> LabeledGraph:
    """Contract e, absorbing e(ε) into e(-ε)

    Labels at every other edge end sitting on e(ε) are multiplied by λ(εe)λ(-εe).
    """
    e = g.edge(edge_id)
    if e.is_loop:
        raise IsLoop({"edge": edge_id})
    absorbed, unit = e.end(eps)
    keeper, other = e.end(-eps)
    if abs(unit) != 1:
        raise LabelNotUnit({"edge": edge_id, "eps": eps, "label": unit})
    multiplier = unit * other

    edges = []
    for f in g.edges:
        if f.id == edge_id:
            continue
        if f.touches(absorbed):
            f = LabeledEdge(
                f.id,
                keeper if f.origin == absorbed else f.origin,
                keeper if f.terminus == absorbed else f.terminus,
                f.label_plus * multiplier if f.origin == absorbed else f.label_plus,
                f.label_minus * multiplier if f.terminus == absorbed else f.label_minus,
            )
        edges.append(f)

    vertices = tuple(v for v in g.vertices if v != absorbed)
    logger.debug(f"Collapsed {edge_id}: {absorbed} absorbed into {keeper}, multiplier {multiplier}")
    return LabeledGraph(vertices, tuple(edges))


def collapsible(g: LabeledGraph) -> List[Tuple[EdgeId, int]]:
    """Every (edge, ε) admitting an elementary collapse, in scan order"""
    found = []
    for e in g.edges:
        if e.is_loop:
            continue
        for eps in (1, -1):
            if abs(e.end(eps)[1]) == 1:
                found.append((e.id, eps))
    return found


def is_reduced(g: LabeledGraph) -> bool:
    """No non-loop edge carries a label ±1"""
    return not collapsible(g)


def reduce(g: LabeledGraph, rng: Optional[random.Random] = None) -> Tuple[LabeledGraph, ReductionTrace]:
    """Collapse until reduced

    Without rng the first eligible edge in edge order is collapsed, preferring
    ε = +1; with rng each collapse is drawn uniformly among eligible ones.
    """
    steps = []
    current = g
    while True:
        options = collapsible(current)
        if not options:
            break
        edge_id, eps = rng.choice(options) if rng is not None else options[0]
        e = current.edge(edge_id)
        absorbed, unit = e.end(eps)
        steps.append(ReductionStep(edge_id, absorbed, unit * e.end(-eps)[1]))
        current = elementary_collapse(current, edge_id, eps)
    if steps:
        logger.debug(f"Reduced graph in {len(steps)} collapses")
    return current, ReductionTrace(tuple(steps))


def replay(g: LabeledGraph, trace: ReductionTrace) -> LabeledGraph:
    """Apply a recorded reduction trace to g"""
    current = g
    for step in trace.steps:
        e = current.edge(step.edge)
        current = elementary_collapse(current, step.edge, 1 if e.origin == step.absorbed else -1)
    return current


def sign_change(g: LabeledGraph, target: str, kind: str = "vertex") -> LabeledGraph:
    """Admissible sign change at a vertex (every label around it) or an edge (both labels)"""
    if kind == "vertex":
        if target not in g.vertices:
            raise UnknownTarget({"vertex": target})
        edges = tuple(
            replace(
                e,
                label_plus=-e.label_plus if e.origin == target else e.label_plus,
                label_minus=-e.label_minus if e.terminus == target else e.label_minus,
            )
            for e in g.edges
        )
        return LabeledGraph(g.vertices, edges)

    if kind == "edge":
        if not g.has_edge(target):
            raise UnknownTarget({"edge": target})
        return LabeledGraph(g.vertices, tuple(e.flipped() if e.id == target else e for e in g.edges))

    raise UnknownTarget({kind: target})


def make_t_positive(g: LabeledGraph, t: SpanningData) -> LabeledGraph:
    """Make every tree-edge label positive by sign changes from the root outwards"""
    child_of = {eid: v for v, eid in t.parent.items() if eid is not None}
    current = g
    for eid in t.tree_edges:
        child = child_of[eid]
        e = current.edge(eid)
        parent_label = e.label_minus if e.origin == child else e.label_plus
        if parent_label < 0:
            current = sign_change(current, eid, kind="edge")
            e = current.edge(eid)
        child_label = e.label_plus if e.origin == child else e.label_minus
        if child_label < 0:
            current = sign_change(current, child, kind="vertex")
    return current


def is_t_positive(g: LabeledGraph, t: SpanningData) -> bool:
    return all(
        e.label_plus > 0 and e.label_minus > 0
        for e in g.edges if t.is_tree_edge(e.id)
    )


def t_positive_form(g: LabeledGraph) -> Tuple[LabeledGraph, SpanningData]:
    """T-positive graph together with its recomputed spanning data"""
    t = spanning_tree(g)
    positive = make_t_positive(g, t)
    return positive, spanning_tree(positive)
