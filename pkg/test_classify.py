"""
Tests for residual property verdicts, including the Baumslag-Solitar truth table
"""

import pytest

from gbs.algebra.arithmetic import PrimeSet
from gbs.decide.classify import (
    BS1N,
    CYCLIC,
    KLEIN,
    NON_SOLVABLE,
    RESIDUALLY_FINITE,
    RESIDUALLY_FREE,
    RESIDUALLY_NILPOTENT,
    RESIDUALLY_RHO,
    RESIDUALLY_TF_NILPOTENT,
    RESIDUALLY_TF_SOLVABLE,
    ZXZ,
    REF_BS_RHO_ORDER,
    REF_BS_RHO_SIGNED,
    REF_ELLIPTIC,
    REF_FINITE_IMAGE,
    REF_FINITE_SOLVABLE,
    REF_LABEL_RHO_LARGE,
    REF_LABEL_RHO_SIGNED,
    REF_LABEL_RHO_TRIVIAL,
    REF_NILPOTENT_ELLIPTIC,
    REF_NILPOTENT_LARGE,
    REF_NILPOTENT_PRIME,
    check_residually_finite,
    check_residually_free,
    check_residually_nilpotent,
    check_residually_rho,
    check_residually_torsion_free_nilpotent,
    classify_all,
    detect_shape,
)
from gbs.decide.nilpotence import NEGATIVE_LOOP
from gbs.graph.core import LabeledEdge, build_graph

GRID = [(m, sign * k) for m in range(1, 7) for k in range(1, 7) for sign in (1, -1)]


def graph(vertices, *edges):
    return build_graph(vertices, [LabeledEdge(*e) for e in edges])


def loop(m, n):
    return graph(["v"], ("e", "v", "v", m, n))


def loops(*pairs):
    return graph(["v"], *[(f"l{i}", "v", "v", a, b) for i, (a, b) in enumerate(pairs, start=1)])


# Independent arithmetic for the truth table


def primes_of(n):
    n, p, found = abs(n), 2, set()
    while n > 1:
        while n % p == 0:
            found.add(p)
            n //= p
        p += 1
    return found


def order_mod(n, p):
    k, power = 1, n % p
    while power != 1:
        power = power * n % p
        k += 1
    return k


def bs_residually_rho(m, n, rho):
    if 1 in (abs(m), abs(n)):
        k = m * n
        if k == 1:
            return True
        if k == -1:
            return 2 in rho
        return any(k % p != 0 and primes_of(order_mod(k, p)) <= rho for p in rho)
    if abs(m) == abs(n):
        return primes_of(m) <= rho and (n == m or 2 in rho)
    return False


def bs_residually_finite(m, n):
    return 1 in (abs(m), abs(n)) or abs(m) == abs(n)


def bs_residually_nilpotent(m, n):
    if 1 in (abs(m), abs(n)):
        return m * n != 2
    if abs(m) == abs(n):
        return len(primes_of(m)) == 1
    return False


def test_shapes():
    """Reduced shapes of small graphs"""
    assert detect_shape(graph(["v"])).kind == CYCLIC, "A point is Z"
    assert detect_shape(loop(1, 1)).kind == ZXZ, "Loop (1,1)"
    assert detect_shape(loop(1, -1)).kind == KLEIN, "Loop (1,-1)"
    assert detect_shape(graph(["a", "b"], ("e", "a", "b", 2, 2))).kind == KLEIN, "Segment (2,2)"
    assert detect_shape(graph(["a", "b"], ("e", "a", "b", -2, 2))).kind == KLEIN, "Segment (-2,2)"
    assert detect_shape(loop(2, 3)).kind == NON_SOLVABLE, "Loop (2,3)"

    bs = detect_shape(loop(3, -1))
    assert bs.kind == BS1N and bs.n == -3 and bs.describe() == "BS(1,-3)", f"Unexpected {bs}"

    path = graph(["a", "b", "c"], ("x", "a", "b", 1, 1), ("y", "b", "c", 1, 1))
    assert detect_shape(path).kind == CYCLIC, "A tree of unit edges collapses to a point"

    print("✅ test_shapes passed")


def test_residually_rho_examples():
    """Residual ρ-finiteness by shape and labels"""
    klein = loop(1, -1)
    assert not check_residually_rho(klein, PrimeSet.of(3)).holds, "Klein needs 2"
    assert check_residually_rho(klein, PrimeSet.of(2)).holds, "Klein with 2"

    for rho in (PrimeSet.all(), PrimeSet.of(2), PrimeSet.of(3), PrimeSet.of(2, 3)):
        assert not check_residually_rho(loop(2, 3), rho).holds, f"BS(2,3) fails for {rho.describe()}"

    assert check_residually_rho(loops((2, 2), (2, -2)), PrimeSet.of(2)).holds, "2-labels and 2 ∈ ρ"
    assert not check_residually_rho(loops((2, 2), (2, -2)), PrimeSet.of(3)).holds, "Labels not 3-numbers"
    assert check_residually_rho(loops((3, 3), (9, 9)), PrimeSet.of(3)).holds, "Trivial image, 3-labels"

    bs12 = loop(1, 2)
    assert not check_residually_rho(bs12, PrimeSet.of(7)).holds, "ord_7(2) = 3 is not a 7-number"
    verdict = check_residually_rho(bs12, PrimeSet.of(2, 3, 7))
    assert verdict.holds, "Some p in {2,3,7} works"
    assert verdict.witness["prime"] in (3, 7), f"Unexpected witness {verdict.witness}"
    assert verdict.to_dict()["rho"] == [2, 3, 7], "ρ is reported"

    print("✅ test_residually_rho_examples passed")


def test_residually_finite_examples():
    """Solvable or Im Δ within {1,-1}"""
    assert not check_residually_finite(loop(2, 4)).holds, "Δ = 2"
    assert check_residually_finite(loop(2, -2)).holds, "Δ = -1"
    assert check_residually_finite(loop(1, 5)).holds, "Solvable BS(1,5)"
    assert check_residually_finite(graph(["a", "b"], ("e", "a", "b", 2, 3))).holds, "Trefoil group"

    print("✅ test_residually_finite_examples passed")


def test_residually_nilpotent_examples():
    """Shape, single prime and the elliptic labeling"""
    assert not check_residually_nilpotent(loop(1, 2)).holds, "BS(1,2)"
    assert check_residually_nilpotent(loop(3, -3)).holds, "BS(3,-3)"

    verdict = check_residually_nilpotent(loops((9, 9), (3, -3)))
    assert not verdict.holds, "Negative loop in Γ′"
    assert verdict.witness["failure"]["cause"] == NEGATIVE_LOOP, f"Unexpected witness {verdict.witness}"

    verdict = check_residually_nilpotent(loops((2, 2), (4, -4)))
    assert verdict.holds and verdict.witness["prime"] == 2, f"Unexpected {verdict}"

    verdict = check_residually_nilpotent(loops((3, 3), (3, -3)))
    assert verdict.holds and verdict.witness["zeta"] == {"v": 1}, f"Unexpected {verdict.witness}"
    assert verdict.witness["sigma0_verified"], "σ₀ certifies the quotient"

    assert not check_residually_nilpotent(graph(["a", "b"], ("e", "a", "b", 2, 3))).holds, "Two primes"
    assert check_residually_nilpotent(graph(["a", "b"], ("e", "a", "b", 3, 9))).holds, "3-labels, trivial image"

    print("✅ test_residually_nilpotent_examples passed")


def test_residually_free_examples():
    """Free times Z after reduction"""
    assert check_residually_free(loops((1, 1), (1, 1))).holds, "F2 x Z"
    assert not check_residually_free(loop(1, -1)).holds, "Klein"
    assert not check_residually_free(loop(1, 3)).holds, "BS(1,3)"
    assert not check_residually_free(loops((1, 1), (1, -1))).holds, "Mixed unit loops"
    assert not check_residually_free(loops((2, 2), (3, 3))).holds, "Non-unit labels"

    point = check_residually_free(graph(["v"]))
    assert point.holds and point.witness["outside_hypothesis"], "Z is reported directly"

    for g in (loops((1, 1), (1, 1)), loop(1, -1), loop(2, 3), graph(["v"])):
        assert check_residually_free(g).holds == check_residually_torsion_free_nilpotent(g).holds, \
            "Residually free and residually torsion-free nilpotent agree"

    print("✅ test_residually_free_examples passed")


def test_classify_all_reports():
    """Every verdict in one report"""
    report = classify_all(loop(2, 3), PrimeSet.all())
    holds = report.holds()
    assert holds[RESIDUALLY_TF_SOLVABLE], "Always residually torsion-free solvable"
    assert not any(v for k, v in holds.items() if k != RESIDUALLY_TF_SOLVABLE), f"Unexpected {holds}"

    report = classify_all(loop(1, 1), PrimeSet.all())
    assert all(report.holds().values()), f"Z x Z has every property, got {report.holds()}"

    klein = classify_all(graph(["a", "b"], ("e", "a", "b", 2, 2)))
    assert klein.analysis.shape.kind == KLEIN, "Segment (2,2) is Klein"
    assert klein.verdict(RESIDUALLY_NILPOTENT).holds, "Klein is residually nilpotent"
    assert not klein.verdict(RESIDUALLY_FREE).holds, "Klein is not residually free"
    assert klein.abelian.describe() == "Z x Z_2", f"Unexpected abelianization {klein.abelian.describe()}"

    data = classify_all(loops((9, 9), (3, -3)), PrimeSet.of(3)).to_dict()
    for key in ("shape", "modular_image", "verdicts", "radical", "structure", "abelianization"):
        assert key in data, f"Report is missing {key}"
    assert data["structure"] == "((F x Z)-by-Z_9)-by-Z_2", f"Unexpected {data['structure']}"
    assert data["modular_image"]["class"] == "PlusMinusOne", "Image {1,-1}"
    assert all(v["trace"] for v in data["verdicts"]), "Every verdict carries a trace"

    elementary = classify_all(loop(1, 1)).to_dict()
    assert elementary["modular_image"] == {"class": "NotDefined"}, "Δ is undefined on elementary groups"

    print("✅ test_classify_all_reports passed")


def refs(verdict):
    return [ref for ref, _ in verdict.trace]


def test_trace_cites_the_applied_clause():
    """Traces name the clause that decided the verdict, one clause per case"""
    two = PrimeSet.of(2)
    assert REF_BS_RHO_SIGNED in refs(check_residually_rho(loop(1, -1), two)), "Klein uses the signed-loop clause"
    assert REF_BS_RHO_ORDER in refs(check_residually_rho(loop(1, 3), two)), "BS(1,3) uses the order clause"
    assert REF_FINITE_SOLVABLE in refs(check_residually_rho(loop(1, 3), PrimeSet.all())), "All primes: residually finite"

    trivial = loops((2, 2), (3, 3))
    signed = loops((9, 9), (3, -3))
    large = loop(2, 3)
    assert REF_LABEL_RHO_TRIVIAL in refs(check_residually_rho(trivial, two)), "Im Δ = {1}"
    assert REF_LABEL_RHO_SIGNED in refs(check_residually_rho(signed, two)), "Im Δ = {1,-1}"
    assert REF_LABEL_RHO_LARGE in refs(check_residually_rho(large, two)), "Im Δ outside {1,-1}"

    assert REF_FINITE_IMAGE in refs(check_residually_finite(large)), "Non-solvable finiteness goes through Im Δ"
    assert REF_FINITE_SOLVABLE in refs(check_residually_finite(loop(1, 3))), "Solvable groups are residually finite"

    assert REF_NILPOTENT_PRIME in refs(check_residually_nilpotent(trivial)), "Two primes fail the single-prime clause"
    assert REF_NILPOTENT_LARGE in refs(check_residually_nilpotent(large)), "Large image is never residually nilpotent"
    signed_refs = refs(check_residually_nilpotent(signed))
    assert REF_NILPOTENT_ELLIPTIC in signed_refs and REF_ELLIPTIC in signed_refs, f"Unexpected {signed_refs}"

    print("✅ test_trace_cites_the_applied_clause passed")


@pytest.mark.parametrize("m,n", GRID)
def test_bs_truth_table(m, n):
    """Loop (m,n) verdicts match the Baumslag-Solitar tables"""
    report = classify_all(loop(m, n), PrimeSet.all())
    assert report.verdict(RESIDUALLY_FINITE).holds == bs_residually_finite(m, n), f"RF mismatch at ({m},{n})"
    assert report.verdict(RESIDUALLY_NILPOTENT).holds == bs_residually_nilpotent(m, n), \
        f"Nilpotent mismatch at ({m},{n})"
    assert report.verdict(RESIDUALLY_TF_NILPOTENT).holds == report.verdict(RESIDUALLY_FREE).holds, \
        f"Free verdicts disagree at ({m},{n})"

    for primes in ({2}, {3}):
        verdict = check_residually_rho(loop(m, n), PrimeSet.of(*primes))
        assert verdict.property == RESIDUALLY_RHO
        assert verdict.holds == bs_residually_rho(m, n, primes), f"ρ={primes} mismatch at ({m},{n})"


if __name__ == "__main__":
    test_shapes()
    test_residually_rho_examples()
    test_residually_finite_examples()
    test_residually_nilpotent_examples()
    test_residually_free_examples()
    test_classify_all_reports()
    test_trace_cites_the_applied_clause()
    for m, n in GRID:
        test_bs_truth_table(m, n)
    print("✅ test_bs_truth_table passed")
    print("\n🎉 All tests passed!")
