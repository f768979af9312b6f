"""
Batch reports for the command line and the MCP tools.

Every report is a JSON-ready document plus a few lines of text. Rationals are
always printed as ``p/q`` strings and JSON keys are sorted, so identical
inputs give byte-identical output.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .expressions.parser import format_expression
from .graphs.loader import graph_to_document
from .reduction.game import ReductionGame
from .reduction.loader import dump_constraint_system
from .twoplayer.intervals import ValueInterval, Verdict, VerdictKind
from .twoplayer.regions import ValueRegion, WinningRegion
from .twoplayer.synthesis import SynthesisResult
from .utils.files import dump_json
from .utils.rationals import format_vector

REPORT_VERSION = 1


@dataclass
class Report:
    command: str
    document: Dict[str, Any]
    lines: List[str] = field(default_factory=list)

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return dump_json({"command": self.command, "version": REPORT_VERSION, **self.document})
        return "\n".join(self.lines) + "\n"


def value_report(interval: ValueInterval, mode: str) -> Report:
    lines = [f"value ∈ {interval}"]
    if interval.witness is not None:
        for point in interval.witness.points:
            lines.append(f"  witness point {format_vector(point)}")
    return Report("value", {"mode": mode, "interval": interval.to_document(include_certificate=True)}, lines)


def verdict_report(verdict: Verdict, mode: str) -> Report:
    lines = [f"verdict: {verdict.kind.value} (nu = {verdict.nu})"]
    if verdict.interval is not None:
        lines.append(f"value ∈ {verdict.interval}")
    if verdict.strategy is not None:
        lines.append(f"strategy with {verdict.strategy.size} memory states guarantees {verdict.strategy_value}")
    return Report("decide", {"mode": mode, **verdict.to_document()}, lines)


def value_region_report(region: ValueRegion, mode: str) -> Report:
    lines = [f"{vertex}: value ∈ {interval}" for vertex, interval in region.intervals.items()]
    return Report("regions", {"mode": mode, **region.to_document()}, lines)


def winning_region_report(region: WinningRegion, mode: str) -> Report:
    lines = [f"{vertex}: {verdict.kind.value}" for vertex, verdict in region.verdicts.items()]
    if region.strategy is not None:
        lines.append(f"region strategy with {region.strategy.size} memory states")
    return Report("regions", {"mode": mode, **region.to_document()}, lines)


def synthesis_report(result: SynthesisResult, mode: str, out: Optional[str] = None) -> Report:
    lines = [
        f"value ∈ {result.interval}",
        f"strategy ({result.method}) with {result.strategy.size} memory states guarantees {result.value}",
    ]
    if out:
        lines.append(f"strategy written to {out}")
    return Report("synth", {"mode": mode, **result.to_document()}, lines)


def evaluation_report(value: Fraction, mode: str) -> Report:
    return Report("eval", {"mode": mode, "value": str(value)}, [str(value)])


def reduction_report(game: ReductionGame, out: Optional[str] = None) -> Report:
    expression = format_expression(game.expression)
    document = {
        "system": dump_constraint_system(game.system),
        "k": game.graph.k,
        "expression": expression,
        "nu": str(game.nu),
        "game": graph_to_document(game.graph),
    }
    lines = [
        f"game with {len(game.graph.vertices)} vertices, {len(game.graph.edges)} edges, k = {game.graph.k}",
        f"expression {expression}",
        f"threshold {game.nu}",
    ]
    if out:
        lines.append(f"game written to {out}")
    return Report("reduce", document, lines)


def is_unknown(report_verdicts: List[Verdict]) -> bool:
    return any(v.kind is VerdictKind.UNKNOWN for v in report_verdicts)
