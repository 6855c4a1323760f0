"""
Randomized invariant harness
Generates seeded random labeled graphs, runs the invariant checks of every module
and shrinks the first counterexample
"""

import logging
import random
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from gbs.algebra.arithmetic import PrimeSet
from gbs.algebra.modular import PLUS_MINUS_ONE
from gbs.algebra.radical import (
    build_sigma,
    compute_radical,
    radical_invariant_violations,
    verify_sigma,
)
from gbs.decide.classify import (
    RESIDUALLY_FINITE,
    RESIDUALLY_FREE,
    RESIDUALLY_NILPOTENT,
    RESIDUALLY_TF_NILPOTENT,
    RESIDUALLY_TF_SOLVABLE,
    Analysis,
    analyze,
    classify_all,
    verdicts_from_analysis,
)
from gbs.decide.nilpotence import (
    SignFunction,
    gamma_prime,
    oracle_cycle_check,
    run_labeling,
    xi,
)
from gbs.graph.core import (
    LabeledEdge,
    LabeledGraph,
    build_graph,
    connected_components,
    graph_to_dict,
)
from gbs.graph.normalize import reduce, sign_change, t_positive_form
from gbs.utils.config import Config
from gbs.utils.errors import GbsError

logger = logging.getLogger(__name__)

SUPPORTS = ((2,), (3,), (5,), (2, 3), (3, 5), (2, 5))
CHECK_RHOS = (PrimeSet.all(), PrimeSet.of(2), PrimeSet.of(3))


@dataclass
class FuzzReport:
    seed: int
    count: int
    checks: Dict[str, int] = field(default_factory=dict)
    violations: List[Dict] = field(default_factory=list)
    counterexample: Optional[Dict] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "ok": self.ok,
            "checks": dict(sorted(self.checks.items())),
            "violation_count": len(self.violations),
            "violations": self.violations,
            "counterexample": self.counterexample,
        }


def _numbers_with_support(support: Tuple[int, ...], bound: int) -> List[int]:
    numbers = [1]
    for p in support:
        numbers = sorted({x * p ** k for x in numbers for k in range(0, 8) if x * p ** k <= bound})
    return numbers


def random_graph(rng: random.Random, bounds: Dict) -> LabeledGraph:
    """Random connected labeled graph

    Two thirds of the graphs get balanced labels: every vertex gets a weight
    c(v) over a small prime support and each edge gets magnitudes k·c(w)/g and
    k·c(u)/g, which keeps Im Δ inside {1,-1}. The rest get uniform labels.
    """
    max_label = bounds["max_label"]
    n = rng.randint(1, bounds["max_vertices"])
    vertices = [f"v{i}" for i in range(1, n + 1)]

    ends = []
    for i in range(1, n):
        other = vertices[rng.randrange(i)]
        ends.append((other, vertices[i]) if rng.random() < 0.5 else (vertices[i], other))
    total = rng.randint(len(ends), max(len(ends), bounds["max_edges"]))
    while len(ends) < total:
        ends.append((rng.choice(vertices), rng.choice(vertices)))
    rng.shuffle(ends)

    balanced = rng.random() < 2 / 3
    numbers = _numbers_with_support(rng.choice(SUPPORTS), max_label)
    weight = {v: rng.choice(numbers) for v in vertices}

    edges = []
    for index, (u, w) in enumerate(ends, start=1):
        if balanced:
            g = gcd(weight[u], weight[w])
            a, b = weight[w] // g, weight[u] // g
            factors = [k for k in numbers if k * max(a, b) <= max_label]
            k = rng.choice(factors)
            plus, minus = k * a, k * b
        else:
            plus, minus = rng.randint(1, max_label), rng.randint(1, max_label)
        plus *= rng.choice((1, -1))
        minus *= rng.choice((1, -1))
        edges.append(LabeledEdge(f"e{index}", u, w, plus, minus))

    return build_graph(vertices, edges)


def random_sign_changes(g: LabeledGraph, rng: random.Random, limit: int) -> LabeledGraph:
    """Apply up to limit random admissible sign changes"""
    for _ in range(rng.randint(0, limit)):
        if g.edges and rng.random() < 0.5:
            g = sign_change(g, rng.choice(g.edges).id, kind="edge")
        else:
            g = sign_change(g, rng.choice(g.vertices), kind="vertex")
    return g


def signature(a: Analysis) -> Dict:
    """The group-invariant part of an analysis"""
    verdicts = {}
    for rho in CHECK_RHOS:
        for v in verdicts_from_analysis(a, rho):
            verdicts[f"{v.property}@{rho.describe()}"] = v.holds
    return {
        "verdicts": verdicts,
        "image": a.image.kind if a.image else None,
        "mu": a.radical.mu if a.radical else None,
    }


# Each check returns None when it passes, otherwise a detail dict


def check_metamorphic(g: LabeledGraph, rng: random.Random, bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    """Verdicts, image class and μ agree across collapse orders and sign changes"""
    base = signature(analyze(g))
    for trial in range(3):
        reduced, _ = reduce(g, rng)
        variant = signature(analyze(reduced))
        if variant != base:
            return {"variant": "collapse-order", "trial": trial, "expected": base, "got": variant,
                    "reduced": graph_to_dict(reduced)}
    for trial in range(2):
        changed = random_sign_changes(g, rng, bounds["sign_changes"])
        variant = signature(analyze(changed))
        if variant != base:
            return {"variant": "sign-change", "trial": trial, "expected": base, "got": variant,
                    "graph": graph_to_dict(changed)}
    return None


def check_verdict_constants(g: LabeledGraph, rng: random.Random, bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    """Torsion-free solvable always holds; implications between properties hold"""
    holds = classify_all(g, PrimeSet.all()).holds()
    if not holds[RESIDUALLY_TF_SOLVABLE]:
        return {"property": RESIDUALLY_TF_SOLVABLE}
    chain = (RESIDUALLY_FREE, RESIDUALLY_TF_NILPOTENT, RESIDUALLY_NILPOTENT, RESIDUALLY_FINITE)
    for stronger, weaker in zip(chain, chain[1:]):
        if holds[stronger] and not holds[weaker]:
            return {"implication": f"{stronger} => {weaker}", "holds": holds}
    if holds[RESIDUALLY_FREE] != holds[RESIDUALLY_TF_NILPOTENT]:
        return {"equivalence": f"{RESIDUALLY_FREE} <=> {RESIDUALLY_TF_NILPOTENT}", "holds": holds}
    return None


def _labeling_agrees(component, rng: random.Random, trials: int, sign: SignFunction) -> Optional[Dict]:
    expected = oracle_cycle_check(component)
    outcome = run_labeling(component, sign=sign)
    if outcome.complete != expected:
        return {"oracle": expected, "labeling": outcome.to_dict()}
    if outcome.complete:
        for e in component.edges:
            if outcome.zeta[e.origin] * outcome.zeta[e.terminus] != xi(e):
                return {"inconsistent_edge": e.id, "labeling": outcome.to_dict()}
        if outcome.zeta[outcome.order[0]] != 1:
            return {"first_label": outcome.zeta[outcome.order[0]]}
    for trial in range(trials):
        shuffled = run_labeling(component, pick=rng.choice, sign=sign)
        if shuffled.complete != expected:
            return {"oracle": expected, "order_trial": trial, "labeling": shuffled.to_dict()}
    return None


def check_labeling(g: LabeledGraph, rng: random.Random, bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    """Labeling completes exactly when ξ = 1 on every cycle, for any vertex order"""
    targets = [("graph", c) for c in connected_components(g)]
    a = analyze(g)
    if a.radical is not None:
        targets += [("gamma_prime", c) for c in connected_components(gamma_prime(a.reduced, a.radical))]
    for name, component in targets:
        detail = _labeling_agrees(component, rng, bounds["order_trials"], sign)
        if detail is not None:
            detail["target"] = name
            detail["component"] = list(component.vertices)
            return detail
    return None


def check_radical(g: LabeledGraph, rng: random.Random, bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    """Index invariants of the radical on the input and on its reduction"""
    a = analyze(g)
    if a.radical is None:
        return None
    violations = radical_invariant_violations(a.reduced, a.radical)
    violations += [f"input: {v}" for v in radical_invariant_violations(g, compute_radical(g))]
    return {"violations": violations} if violations else None


def check_sigma(g: LabeledGraph, rng: random.Random, bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    """σ respects every relation; σ₀ does too when the elliptic condition holds"""
    a = analyze(g)
    if a.radical is None:
        return None
    positive, _ = t_positive_form(a.reduced)
    ok, relations = verify_sigma(positive, build_sigma(positive, compute_radical(positive)))
    if not ok:
        return {"sigma": "rational", "failed": relations[-1].to_dict()}
    if a.image.kind == PLUS_MINUS_ONE:
        verdict = next(v for v in verdicts_from_analysis(a, PrimeSet.all()) if v.property == RESIDUALLY_NILPOTENT)
        if verdict.witness.get("sigma0_verified") is False:
            return {"sigma": "modular", "witness": verdict.witness}
    return None


CHECKS: Tuple[Tuple[str, Callable], ...] = (
    ("metamorphic", check_metamorphic),
    ("verdict_constants", check_verdict_constants),
    ("labeling", check_labeling),
    ("radical", check_radical),
    ("sigma", check_sigma),
)


def _run_check(check: Callable, g: LabeledGraph, seed: int, index: int, name: str,
               bounds: Dict, sign: SignFunction) -> Optional[Dict]:
    rng = random.Random(f"{seed}:{index}:{name}")
    try:
        return check(g, rng, bounds, sign)
    except GbsError as e:
        return {"exception": e.code, "detail": e.detail}


def _shrink_candidates(g: LabeledGraph):
    for e in g.edges:
        yield list(g.vertices), [f for f in g.edges if f.id != e.id]
    for v in g.vertices:
        if len(g.vertices) > 1:
            yield [u for u in g.vertices if u != v], [f for f in g.edges if not f.touches(v)]
    for e in g.edges:
        for p in (2, 3, 5, 7, 11):
            if e.label_plus % p == 0 and e.label_minus % p == 0:
                smaller = LabeledEdge(e.id, e.origin, e.terminus, e.label_plus // p, e.label_minus // p)
                yield list(g.vertices), [smaller if f.id == e.id else f for f in g.edges]


def shrink(g: LabeledGraph, fails: Callable[[LabeledGraph], bool]) -> LabeledGraph:
    """Remove edges, then vertices, then divide labels by shared primes while the failure persists"""
    progress = True
    while progress:
        progress = False
        for vertices, edges in _shrink_candidates(g):
            try:
                candidate = build_graph(vertices, edges)
            except GbsError:
                continue
            if fails(candidate):
                g = candidate
                progress = True
                break
    return g


def run_fuzz(seed: int, count: int, bounds: Optional[Dict] = None, sign: SignFunction = xi) -> FuzzReport:
    """Run every check on count random graphs; identical arguments give identical reports"""
    bounds = bounds or Config.fuzz_bounds()
    report = FuzzReport(seed, count, {name: 0 for name, _ in CHECKS})
    rng = random.Random(seed)

    for index in range(count):
        g = random_graph(rng, bounds)
        for name, check in CHECKS:
            detail = _run_check(check, g, seed, index, name, bounds, sign)
            report.checks[name] += 1
            if detail is None:
                continue
            logger.warning(f"Fuzz iteration {index}: check {name} failed")
            report.violations.append({"index": index, "check": name, "graph": graph_to_dict(g), "detail": detail})
            if report.counterexample is None:
                minimized = shrink(
                    g, lambda h: _run_check(check, h, seed, index, name, bounds, sign) is not None
                )
                report.counterexample = {"index": index, "check": name, "graph": graph_to_dict(minimized)}

    logger.info(f"Fuzz seed={seed} count={count}: {len(report.violations)} violations")
    return report
