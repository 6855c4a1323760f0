"""
Helper functions for rendering command output
"""

import json
import logging
from fractions import Fraction
from typing import Any, Dict, List

logger = logging.getLogger(__name__)


def _default(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    return str(value)


def to_json(data: Any, sort_keys: bool = False) -> str:
    """Serialize command output; fractions become "p/q" strings"""
    return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=sort_keys, default=_default)


def error_payload(code: str, detail: Any) -> Dict:
    """Error object reported with exit code 2"""
    return {"error": code, "detail": detail}


def format_mark(holds: bool) -> str:
    """Mark for text output"""
    return "✅" if holds else "❌"


def format_verdicts_text(report: Dict, explain: bool = False) -> str:
    """Plain text rendering of a classify report dict"""
    lines: List[str] = [
        f"Shape: {report['shape']['name']}",
        f"Modular image: {report['modular_image']['class']}",
    ]
    if report.get("modular_subring"):
        lines.append(f"Modular subring: {report['modular_subring']['ring']}")
    if report.get("radical"):
        radical = report["radical"]
        lines.append(f"Radical: mu={radical['mu']} mu_v={radical['mu_v']}")
    if report.get("structure"):
        lines.append(f"Structure: {report['structure']}")
    lines.append(f"Abelianization: {report['abelianization']['group']}")
    lines.append("")

    for verdict in report["verdicts"]:
        name = verdict["property"]
        if "rho" in verdict:
            name = f"{name}(rho={verdict['rho']})"
        lines.append(f"{format_mark(verdict['holds'])} {name}: {verdict['holds']}")
        if explain:
            for step in verdict["trace"]:
                lines.append(f"    [{step['ref']}] {step['reason']}")
            if verdict["witness"]:
                lines.append(f"    witness: {json.dumps(verdict['witness'], ensure_ascii=False, default=_default)}")
    return "\n".join(lines) + "\n"


def format_fuzz_text(report: Dict) -> str:
    """Plain text summary of a fuzz report dict"""
    lines = [
        f"{format_mark(report['ok'])} seed={report['seed']} count={report['count']} "
        f"violations={report['violation_count']}",
    ]
    for name, runs in report["checks"].items():
        lines.append(f"    {name}: {runs} runs")
    if report["counterexample"]:
        lines.append("Counterexample:")
        lines.append(to_json(report["counterexample"], sort_keys=True))
    return "\n".join(lines) + "\n"
