"""
Shape taxonomy of reduced labeled graphs
Recognizes the elementary and solvable GBS groups: Z, Z x Z, the Klein-bottle group and BS(1,n)
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

from gbs.graph.core import LabeledGraph, graph_to_dict
from gbs.graph.normalize import ReductionTrace, reduce

logger = logging.getLogger(__name__)

CYCLIC = "Cyclic"
ZXZ = "ZxZ"
KLEIN = "Klein"
BS1N = "BS1n"
NON_SOLVABLE = "NonSolvable"


@dataclass(frozen=True)
class GroupShape:
    """Shape of a reduced graph; n is set for BS1n only"""

    kind: str
    reduced: LabeledGraph
    trace: ReductionTrace = field(default_factory=ReductionTrace)
    n: Optional[int] = None

    @property
    def is_elementary(self) -> bool:
        return self.kind in (CYCLIC, ZXZ, KLEIN)

    @property
    def is_solvable(self) -> bool:
        return self.kind != NON_SOLVABLE

    def describe(self) -> str:
        if self.kind == BS1N:
            return f"BS(1,{self.n})"
        return self.kind

    def to_dict(self) -> Dict:
        data = {"kind": self.kind, "name": self.describe()}
        if self.n is not None:
            data["n"] = self.n
        if self.kind == NON_SOLVABLE:
            data["reduced"] = graph_to_dict(self.reduced)
        return data


def shape_of_reduced(reduced: LabeledGraph, trace: Optional[ReductionTrace] = None) -> GroupShape:
    """Classify an already reduced graph"""
    trace = trace or ReductionTrace()
    vertices, edges = reduced.vertices, reduced.edges

    if len(vertices) == 1 and not edges:
        return GroupShape(CYCLIC, reduced, trace)

    if len(vertices) == 1 and len(edges) == 1:
        a, b = edges[0].label_plus, edges[0].label_minus
        if abs(a) == 1 and abs(b) == 1:
            return GroupShape(ZXZ if a * b > 0 else KLEIN, reduced, trace)
        if abs(a) == 1 or abs(b) == 1:
            # unit label normalized to +1
            return GroupShape(BS1N, reduced, trace, n=a * b)

    if len(vertices) == 2 and len(edges) == 1:
        e = edges[0]
        if not e.is_loop and abs(e.label_plus) == 2 and abs(e.label_minus) == 2:
            return GroupShape(KLEIN, reduced, trace)

    return GroupShape(NON_SOLVABLE, reduced, trace)


def detect_shape(g: LabeledGraph) -> GroupShape:
    """Reduce g and classify the result"""
    reduced, trace = reduce(g)
    shape = shape_of_reduced(reduced, trace)
    logger.debug(f"Detected shape {shape.describe()} after {len(trace)} collapses")
    return shape
