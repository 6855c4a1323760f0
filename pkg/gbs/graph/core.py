"""
Labeled graph data model
Parsing, validation, serialization and the basic graph algorithms used by every other module
"""

import json
import logging
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from gbs.utils.errors import (
    DuplicateId,
    Disconnected,
    EmptyGraph,
    MalformedInput,
    ZeroLabel,
)

logger = logging.getLogger(__name__)

VertexId = str
EdgeId = str

EDGE_KEYS = ("id", "from", "to", "label_from", "label_to")


@dataclass(frozen=True)
class LabeledEdge:
    """Edge e with origin e(1), terminus e(-1) and end labels λ(+e), λ(-e)"""

    id: EdgeId
    origin: VertexId
    terminus: VertexId
    label_plus: int
    label_minus: int

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus

    def ends(self) -> Tuple[Tuple[VertexId, int], Tuple[VertexId, int]]:
        """Both edge ends as (vertex, label) pairs, origin first"""
        return (self.origin, self.label_plus), (self.terminus, self.label_minus)

    def end(self, eps: int) -> Tuple[VertexId, int]:
        """The end e(ε) with its label λ(εe)"""
        return (self.origin, self.label_plus) if eps == 1 else (self.terminus, self.label_minus)

    def touches(self, v: VertexId) -> bool:
        return self.origin == v or self.terminus == v

    def flipped(self) -> "LabeledEdge":
        """Edge sign change: both labels negated"""
        return replace(self, label_plus=-self.label_plus, label_minus=-self.label_minus)


@dataclass(frozen=True)
class LabeledGraph:
    """Validated finite connected labeled multigraph"""

    vertices: Tuple[VertexId, ...]
    edges: Tuple[LabeledEdge, ...]

    def edge(self, edge_id: EdgeId) -> LabeledEdge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def has_edge(self, edge_id: EdgeId) -> bool:
        return any(e.id == edge_id for e in self.edges)

    def labels(self) -> List[int]:
        """Every end label, two per edge"""
        return [lab for e in self.edges for lab in (e.label_plus, e.label_minus)]


@dataclass(frozen=True)
class Subgraph:
    """Unvalidated vertex/edge subset (Γ′, components); may be disconnected"""

    vertices: Tuple[VertexId, ...]
    edges: Tuple[LabeledEdge, ...]

    def labels(self) -> List[int]:
        return [lab for e in self.edges for lab in (e.label_plus, e.label_minus)]


GraphLike = Union[LabeledGraph, Subgraph]


@dataclass(frozen=True)
class SpanningData:
    """Maximal subtree T with root, parent pointers and scale potentials"""

    tree_edges: Tuple[EdgeId, ...]
    root: VertexId
    scale: Dict[VertexId, Fraction] = field(compare=True)
    signed_scale: Dict[VertexId, Fraction] = field(compare=True)
    parent: Dict[VertexId, Optional[EdgeId]] = field(compare=True)
    depth: Dict[VertexId, int] = field(compare=True)
    order: Tuple[VertexId, ...] = ()

    def is_tree_edge(self, edge_id: EdgeId) -> bool:
        return edge_id in self.tree_edges


def _fail(message: str) -> MalformedInput:
    logger.error(f"Malformed graph input: {message}")
    return MalformedInput(message)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def parse_graph(text: Union[str, bytes]) -> LabeledGraph:
    """Parse and validate the JSON graph format"""
    try:
        data = json.loads(text.decode('utf-8') if isinstance(text, bytes) else text)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise _fail(f"invalid JSON: {e}")

    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        raise _fail("top level must be an object with 'vertices' and 'edges'")
    raw_vertices, raw_edges = data["vertices"], data["edges"]
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise _fail("'vertices' and 'edges' must be arrays")
    if not all(isinstance(v, str) for v in raw_vertices):
        raise _fail("vertex identifiers must be strings")

    edges = []
    for raw in raw_edges:
        if not isinstance(raw, dict) or set(raw) != set(EDGE_KEYS):
            raise _fail(f"edge object must have exactly the keys {list(EDGE_KEYS)}: {raw}")
        if not all(isinstance(raw[k], str) for k in ("id", "from", "to")):
            raise _fail(f"edge id/from/to must be strings: {raw}")
        if not (_is_int(raw["label_from"]) and _is_int(raw["label_to"])):
            raise _fail(f"edge labels must be integers: {raw}")
        edges.append(LabeledEdge(raw["id"], raw["from"], raw["to"], raw["label_from"], raw["label_to"]))

    return build_graph(raw_vertices, edges)


def build_graph(vertices: Iterable[VertexId], edges: Iterable[LabeledEdge]) -> LabeledGraph:
    """Validate vertices and edges into a LabeledGraph"""
    vertices = tuple(vertices)
    edges = tuple(edges)

    if not vertices:
        raise EmptyGraph("graph has no vertices")
    if len(set(vertices)) != len(vertices):
        dup = sorted({v for v in vertices if vertices.count(v) > 1})
        raise DuplicateId({"vertices": dup})
    edge_ids = [e.id for e in edges]
    if len(set(edge_ids)) != len(edge_ids):
        dup = sorted({i for i in edge_ids if edge_ids.count(i) > 1})
        raise DuplicateId({"edges": dup})

    known = set(vertices)
    for e in edges:
        if e.origin not in known or e.terminus not in known:
            raise _fail(f"edge {e.id} references an unknown vertex")
        if e.label_plus == 0 or e.label_minus == 0:
            raise ZeroLabel({"edge": e.id})

    graph = LabeledGraph(vertices, edges)
    if not is_connected(graph):
        raise Disconnected({"components": [list(c.vertices) for c in connected_components(graph)]})
    return graph


def graph_to_dict(g: GraphLike) -> Dict:
    """Plain dict in the JSON graph format"""
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "from": e.origin, "to": e.terminus,
             "label_from": e.label_plus, "label_to": e.label_minus}
            for e in g.edges
        ],
    }


def serialize_graph(g: GraphLike) -> str:
    """Serialize to the JSON graph format"""
    return json.dumps(graph_to_dict(g), ensure_ascii=False)


def _nx_graph(g: GraphLike) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((e.origin, e.terminus, e.id) for e in g.edges)
    return h


def is_connected(g: GraphLike) -> bool:
    if not g.vertices:
        return False
    return nx.is_connected(_nx_graph(g))


def connected_components(g: GraphLike) -> List[Subgraph]:
    """Components with induced edges, ordered by least vertex id"""
    position = {v: i for i, v in enumerate(g.vertices)}
    components = []
    for members in nx.connected_components(_nx_graph(g)):
        vertices = tuple(sorted(members, key=position.__getitem__))
        edges = tuple(e for e in g.edges if e.origin in members)
        components.append(Subgraph(vertices, edges))
    components.sort(key=lambda c: min(c.vertices))
    return components


def spanning_tree(g: GraphLike, root: Optional[VertexId] = None) -> SpanningData:
    """Breadth-first maximal subtree with scale potentials

    The root defaults to the lexicographically least vertex; edges are scanned
    in input order and loops are never tree edges.
    """
    root = min(g.vertices) if root is None else root
    scale = {root: Fraction(1)}
    signed = {root: Fraction(1)}
    parent: Dict[VertexId, Optional[EdgeId]] = {root: None}
    depth = {root: 0}
    order = [root]
    tree_edges = []

    queue = deque([root])
    while queue:
        u = queue.popleft()
        for e in g.edges:
            if e.is_loop or not e.touches(u):
                continue
            if e.origin == u:
                w, near, far = e.terminus, e.label_plus, e.label_minus
            else:
                w, near, far = e.origin, e.label_minus, e.label_plus
            if w in parent:
                continue
            # s(far end) = s(near end)·|λ(near)|/|λ(far)|
            scale[w] = scale[u] * Fraction(abs(near), abs(far))
            signed[w] = signed[u] * Fraction(near, far)
            parent[w] = e.id
            depth[w] = depth[u] + 1
            tree_edges.append(e.id)
            order.append(w)
            queue.append(w)

    if len(order) != len(g.vertices):
        raise Disconnected({"reached": order})

    return SpanningData(tuple(tree_edges), root, scale, signed, parent, depth, tuple(order))


def _edge_lookup(g: GraphLike) -> Dict[EdgeId, LabeledEdge]:
    return {e.id: e for e in g.edges}


def tree_path(g: GraphLike, t: SpanningData, a: VertexId, b: VertexId) -> List[LabeledEdge]:
    """Tree edges walked from a to b"""
    lookup = _edge_lookup(g)

    def step_up(v: VertexId) -> Tuple[LabeledEdge, VertexId]:
        e = lookup[t.parent[v]]
        return e, (e.origin if e.terminus == v else e.terminus)

    up_a, up_b = [], []
    while t.depth[a] > t.depth[b]:
        e, a = step_up(a)
        up_a.append(e)
    while t.depth[b] > t.depth[a]:
        e, b = step_up(b)
        up_b.append(e)
    while a != b:
        e, a = step_up(a)
        up_a.append(e)
        e, b = step_up(b)
        up_b.append(e)
    return up_a + list(reversed(up_b))


def cycle_basis(g: GraphLike, t: SpanningData) -> List[Tuple[LabeledEdge, ...]]:
    """One fundamental cycle per non-tree edge

    Each cycle starts with the non-tree edge (origin to terminus) and returns
    to the origin along the tree.
    """
    basis = []
    for e in g.edges:
        if t.is_tree_edge(e.id):
            continue
        basis.append((e,) + tuple(tree_path(g, t, e.terminus, e.origin)))
    return basis


def walk_vertices(path: Sequence[LabeledEdge]) -> List[set]:
    """Possible current vertices after each step of an undirected walk; empty set if broken"""
    if not path:
        return []
    current = {path[0].origin, path[0].terminus}
    states = []
    for e in path:
        nxt = set()
        for v in current:
            if v == e.origin:
                nxt.add(e.terminus)
            if v == e.terminus:
                nxt.add(e.origin)
        current = nxt
        states.append(current)
        if not current:
            break
    return states
