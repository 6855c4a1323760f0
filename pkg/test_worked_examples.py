"""
Worked examples recomputed by brute force, independently of the library,
then compared with what the library reports
"""

from fractions import Fraction
from itertools import product
from math import gcd

from gbs.algebra.abelian import abelianization
from gbs.algebra.radical import compute_radical
from gbs.decide.classify import (
    KLEIN,
    RESIDUALLY_FREE,
    RESIDUALLY_NILPOTENT,
    classify_all,
)
from gbs.decide.nilpotence import NEGATIVE_LOOP
from gbs.graph.core import LabeledEdge, build_graph

# (id, from, to, label_from, label_to)
SEGMENT_23 = (["v1", "v2"], [("e", "v1", "v2", 2, 3)])
LOOPS_9_3 = (["v"], [("l1", "v", "v", 9, 9), ("l2", "v", "v", 3, -3)])
UNIT_LOOPS = (["v"], [("l1", "v", "v", 1, 1), ("l2", "v", "v", 1, 1)])
KLEIN_SEGMENT = (["a", "b"], [("e", "a", "b", 2, 2)])


def build(example):
    vertices, edges = example
    return build_graph(vertices, [LabeledEdge(*e) for e in edges])


def brute_scales(example):
    """Scales by repeated relaxation over edges, from the first vertex"""
    vertices, edges = example
    scale = {vertices[0]: Fraction(1)}
    changed = True
    while changed:
        changed = False
        for _, u, w, a, b in edges:
            if u in scale and w not in scale:
                scale[w] = scale[u] * abs(a) / abs(b)
                changed = True
            elif w in scale and u not in scale:
                scale[u] = scale[w] * abs(b) / abs(a)
                changed = True
    return scale


def brute_indices(example):
    """Smallest common multiple found by counting up, then μ(v) and k_e"""
    vertices, edges = example
    scale = brute_scales(example)
    ends = [abs(a) * scale[u] for _, u, _, a, _ in edges] + [abs(b) * scale[w] for _, _, w, _, b in edges]
    step = min(ends)
    m = step
    while not all((m / x).denominator == 1 for x in ends):
        m += step
    mu_v = {v: int(m / scale[v]) for v in vertices}
    k_e = {i: mu_v[u] // abs(a) for i, u, _, a, _ in edges}
    return mu_v, k_e


def brute_closed_path_signs(edges, max_length=3):
    """Signs of every closed walk of loops up to max_length at a single vertex"""
    signs = set()
    for length in range(1, max_length + 1):
        for walk in product(edges, repeat=length):
            sign = 1
            for _, _, _, a, b in walk:
                sign *= 1 if a * b > 0 else -1
            signs.add(sign)
    return signs


def test_segment_2_3_indices():
    """Segment (2,3): μ = 6, μ(v) = (2,3), k = 1"""
    mu_v, k_e = brute_indices(SEGMENT_23)
    assert mu_v == {"v1": 2, "v2": 3} and k_e == {"e": 1}, f"Brute force gave {mu_v}, {k_e}"

    rad = compute_radical(build(SEGMENT_23))
    assert rad.mu_v == mu_v and rad.k_e == k_e, f"Library gave {rad.mu_v}, {rad.k_e}"
    assert rad.mu == 6, f"Expected μ = 6, got {rad.mu}"

    print("✅ test_segment_2_3_indices passed")


def test_loops_9_3_not_nilpotent():
    """Loops (9,9),(3,-3): Γ′ holds a closed path of sign -1"""
    mu_v, k_e = brute_indices(LOOPS_9_3)
    assert mu_v == {"v": 9} and k_e == {"l1": 1, "l2": 3}, f"Brute force gave {mu_v}, {k_e}"

    gamma_prime = [e for e in LOOPS_9_3[1] if k_e[e[0]] > 1]
    assert -1 in brute_closed_path_signs(gamma_prime), "A negative closed path exists in Γ′"

    verdict = classify_all(build(LOOPS_9_3)).verdict(RESIDUALLY_NILPOTENT)
    assert not verdict.holds, "Library should reject residual nilpotence"
    assert verdict.witness["failure"]["cause"] == NEGATIVE_LOOP, f"Unexpected witness {verdict.witness}"

    print("✅ test_loops_9_3_not_nilpotent passed")


def test_unit_loops_residually_free():
    """Loops (1,1),(1,1): G = F2 x Z, abelianization Z^3"""
    report = classify_all(build(UNIT_LOOPS))
    assert report.verdict(RESIDUALLY_FREE).holds, "F2 x Z is residually free"
    assert abelianization(build(UNIT_LOOPS)).describe() == "Z x Z x Z", "Relations are trivial"

    print("✅ test_unit_loops_residually_free passed")


def test_klein_segment():
    """Segment (2,2): ⟨x,y | x² = y²⟩ has abelianization Z x Z_2"""
    # One relation row (2,-2): Smith form is (gcd, 0), so rank 1 and torsion gcd
    vertices, edges = KLEIN_SEGMENT
    _, _, _, a, b = edges[0]
    torsion = gcd(a, b)
    assert torsion == 2 and len(vertices) - 1 == 1, "Hand Smith form"

    invariants = abelianization(build(KLEIN_SEGMENT))
    assert invariants.free_rank == 1 and invariants.torsion == (torsion,), f"Library gave {invariants}"

    report = classify_all(build(KLEIN_SEGMENT))
    assert report.analysis.shape.kind == KLEIN, "Shape Klein"
    assert report.verdict(RESIDUALLY_NILPOTENT).holds, "Residually nilpotent"
    assert not report.verdict(RESIDUALLY_FREE).holds, "Not residually free"

    print("✅ test_klein_segment passed")


if __name__ == "__main__":
    test_segment_2_3_indices()
    test_loops_9_3_not_nilpotent()
    test_unit_loops_residually_free()
    test_klein_segment()
    print("\n🎉 All tests passed!")
