"""
Abelianization of GBS groups via the Smith normal form
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from gbs.graph.core import GraphLike

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank x Z_{d1} x ... with 1 < d1 | d2 | ..."""

    free_rank: int
    torsion: Tuple[int, ...] = ()

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.torsion]
        return " x ".join(parts) if parts else "1"

    def to_dict(self) -> Dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "group": self.describe()}


def relation_rows(g: GraphLike) -> List[List[int]]:
    """λ(+e)·g_{e(1)} - λ(-e)·g_{e(-1)} over the vertex generators, one row per edge"""
    column = {v: i for i, v in enumerate(g.vertices)}
    rows = []
    for e in g.edges:
        row = [0] * len(g.vertices)
        row[column[e.origin]] += e.label_plus
        row[column[e.terminus]] -= e.label_minus
        rows.append(row)
    return rows


def abelianization(g: GraphLike) -> AbelianInvariants:
    """Invariants of G/[G,G]; stable letters contribute free generators"""
    letters = len(g.edges) - len(g.vertices) + 1
    rows = [row for row in relation_rows(g) if any(row)]
    if not rows:
        return AbelianInvariants(len(g.vertices) + letters)

    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.rows, snf.cols))]
    rank = sum(1 for d in diagonal if d != 0)
    torsion = tuple(sorted(d for d in diagonal if d > 1))
    result = AbelianInvariants(len(g.vertices) - rank + letters, torsion)
    logger.debug(f"Abelianization {result.describe()}")
    return result
