"""
Graphviz DOT export for labeled graphs
"""

from typing import Dict, Iterator, Optional

from gbs.graph.core import GraphLike


def _gvquote(s: str) -> str:
    return '"{}"'.format(str(s).replace('"', r'\"'))


def _sign(value: int) -> str:
    return "+1" if value > 0 else "-1"


def dot_lines(g: GraphLike,
              zeta: Optional[Dict[str, int]] = None,
              mu: Optional[Dict[str, int]] = None) -> Iterator[str]:
    """Produce the DOT document line by line"""
    zeta = zeta or {}
    mu = mu or {}
    yield "digraph gbs {\n"
    for v in g.vertices:
        parts = [v]
        if v in zeta:
            parts.append(f"ζ={_sign(zeta[v])}")
        if v in mu:
            parts.append(f"μ={mu[v]}")
        yield "  {} [label={}];\n".format(_gvquote(v), _gvquote("\\n".join(parts)))
    for e in g.edges:
        yield "  {} -> {} [label={} id={}];\n".format(
            _gvquote(e.origin),
            _gvquote(e.terminus),
            _gvquote(f"{e.label_plus},{e.label_minus}"),
            _gvquote(e.id),
        )
    yield "}\n"


def emit_dot(g: GraphLike,
             zeta: Optional[Dict[str, int]] = None,
             mu: Optional[Dict[str, int]] = None) -> str:
    """Render g as Graphviz DOT with optional ζ and μ(v) vertex annotations"""
    return "".join(dot_lines(g, zeta, mu))
