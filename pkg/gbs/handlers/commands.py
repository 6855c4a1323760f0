"""
Command handlers for the gbs CLI
Each handler takes the parsed configuration and the input document and returns (exit code, output)
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple, Union

from gbs.algebra.arithmetic import PrimeSet
from gbs.algebra.modular import classify_modular_image, delta_generators, modular_subring
from gbs.algebra.radical import build_sigma, compute_radical, structure_descriptor, verify_sigma
from gbs.decide.classify import RESIDUALLY_NILPOTENT, classify_all
from gbs.decide.nilpotence import check_condition
from gbs.graph.core import graph_to_dict, parse_graph
from gbs.graph.dot import emit_dot
from gbs.graph.normalize import reduce, t_positive_form
from gbs.handlers.fuzz import run_fuzz
from gbs.utils.config import Config
from gbs.utils.errors import GbsError, InvariantViolation, UsageError
from gbs.utils.helpers import error_payload, format_fuzz_text, format_verdicts_text, to_json

logger = logging.getLogger(__name__)

# Raw input: bytes from files and stdin, str from callers
Document = Union[str, bytes]

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_INVALID = 2

COMMANDS = ("classify", "reduce", "modular", "radical", "check-elliptic", "fuzz")

# Output formats each command can render
FORMATS = {
    "classify": ("json", "text", "dot"),
    "reduce": ("json", "dot"),
    "modular": ("json",),
    "radical": ("json",),
    "check-elliptic": ("json", "dot"),
    "fuzz": ("json", "text"),
}


@dataclass(frozen=True)
class CliConfig:
    """Parsed command line"""

    command: str
    input_path: Optional[str] = None
    rho: Optional[PrimeSet] = None
    format: str = "json"
    explain: bool = False
    emit_trace: bool = False
    seed: Optional[int] = None
    count: Optional[int] = None

    def validate(self) -> bool:
        """Validate the command combination"""
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command '{self.command}'")
        if self.format not in FORMATS[self.command]:
            raise UsageError(f"{self.command} cannot print format '{self.format}'")
        if self.command == "fuzz":
            if self.seed is None or self.count is None:
                raise UsageError("fuzz requires --seed and --count")
            if self.count < 1:
                raise UsageError("fuzz --count must be at least 1")
        return True


def handle_classify(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Run every residual check"""
    g = parse_graph(text)
    report = classify_all(g, config.rho or PrimeSet.parse(Config.DEFAULT_RHO))
    data = report.to_dict()

    if config.format == "text":
        return EXIT_OK, format_verdicts_text(data, config.explain)
    if config.format == "dot":
        a = report.analysis
        nilpotent = report.verdict(RESIDUALLY_NILPOTENT)
        zeta = nilpotent.witness.get("zeta")
        mu = a.radical.mu_v if a.radical else None
        return EXIT_OK, emit_dot(a.reduced, zeta, mu)

    return EXIT_OK, to_json(data)


def handle_reduce(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Reduce the graph by elementary collapses"""
    g = parse_graph(text)
    reduced, trace = reduce(g)
    if config.format == "dot":
        return EXIT_OK, emit_dot(reduced)
    if config.emit_trace:
        return EXIT_OK, to_json({"graph": graph_to_dict(reduced), "trace": trace.to_list()})
    return EXIT_OK, to_json(graph_to_dict(reduced))


def handle_modular(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Print Δ on stable letters, the image class and the subring"""
    g = parse_graph(text)
    generators = delta_generators(g)
    image = classify_modular_image(generators)
    data = {
        "generators": [{"edge": edge_id, "value": str(q)} for edge_id, q in generators],
        "image": image.to_dict(),
        "subring": modular_subring(generators).to_dict(),
    }
    return EXIT_OK, to_json(data)


def handle_radical(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Print μ(v), μ, k_e and the homomorphism check"""
    g = parse_graph(text)
    positive, _ = t_positive_form(g)
    rad = compute_radical(positive)
    sigma = build_sigma(positive, rad)
    ok, relations = verify_sigma(positive, sigma)

    data = rad.to_dict()
    data["sigma"] = sigma.to_dict()
    data["sigma"]["verified"] = ok
    if config.explain:
        data["sigma"]["relations"] = [r.to_dict() for r in relations]
    if not rad.cyclic_radical:
        reduced, _ = reduce(g)
        reduced_rad = compute_radical(reduced)
        data["reduced"] = {
            "graph": graph_to_dict(reduced),
            "radical": reduced_rad.to_dict(),
            "structure": structure_descriptor(reduced_rad.image_kind, reduced_rad.mu),
        }
    return EXIT_OK, to_json(data)


def handle_check_elliptic(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Run the vertex labeling on Γ′ of the reduced graph"""
    g = parse_graph(text)
    reduced, _ = reduce(g)
    result = check_condition(reduced)
    if config.format == "dot":
        zeta = {v: z for lab in result.labelings for v, z in lab.zeta.items()}
        return EXIT_OK, emit_dot(result.gamma_prime, zeta)
    return EXIT_OK, to_json(result.to_dict())


def handle_fuzz(config: CliConfig, text: Document) -> Tuple[int, str]:
    """Run the randomized invariant harness"""
    report = run_fuzz(config.seed, config.count)
    if config.format == "json":
        output = to_json(report.to_dict(), sort_keys=True)
    else:
        output = format_fuzz_text(report.to_dict())
    return (EXIT_OK if report.ok else EXIT_FINDING), output


HANDLERS: Dict[str, Callable[[CliConfig, Document], Tuple[int, str]]] = {
    "classify": handle_classify,
    "reduce": handle_reduce,
    "modular": handle_modular,
    "radical": handle_radical,
    "check-elliptic": handle_check_elliptic,
    "fuzz": handle_fuzz,
}


def run(config: CliConfig, text: Document = "") -> Tuple[int, str]:
    """Dispatch to the handler; domain errors become exit code 2 with an error object"""
    try:
        config.validate()
        code, output = HANDLERS[config.command](config, text)
        logger.info(f"Command {config.command} finished with exit code {code}")
        return code, output
    except InvariantViolation:
        raise
    except GbsError as e:
        logger.error(f"Command {config.command} failed: {e}")
        return EXIT_INVALID, to_json(error_payload(e.code, e.detail))
