"""Reading and writing decision traces.

Two encodings share one schema (step, from, to, reason, value_before,
value_after, reward): tab-separated text with a header line, and JSON.
"""

from __future__ import annotations

import json
import math

from .grid import Position
from .solver import DecisionRecord, Reason, SolveTrace

FIELDS = ("step", "from", "to", "reason", "value_before", "value_after", "reward")


class TraceFormatError(ValueError):
    pass


def _num(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, float) and v.is_integer():
        return int(v)
    return v


def _parse_num(v):
    if v is None or v == "inf":
        return math.inf
    f = float(v)
    return int(f) if f.is_integer() else f


def _pos(text: str) -> Position:
    s = text.strip().strip("()")
    try:
        x, y = (int(t) for t in s.split(","))
    except ValueError:
        raise TraceFormatError(f"bad position {text!r}") from None
    return Position(x, y)


def record_row(r: DecisionRecord) -> dict:
    return {
        "step": r.step,
        "from": f"({r.escort_from[0]}, {r.escort_from[1]})",
        "to": f"({r.escort_to[0]}, {r.escort_to[1]})",
        "reason": r.reason.value,
        "value_before": _num(r.value_before),
        "value_after": _num(r.value_after),
        "reward": r.reward,
    }


def trace_to_text(records) -> str:
    lines = ["\t".join(FIELDS)]
    for r in records:
        row = record_row(r)
        lines.append("\t".join(str(row[f]) for f in FIELDS))
    return "\n".join(lines) + "\n"


def trace_to_json(trace: SolveTrace, seed: int | None = None, wall_time: float | None = None) -> str:
    doc = {
        "solved": trace.solved,
        "total_steps": trace.total_steps,
        "seed": seed,
        "wall_time": wall_time,
        "records": [record_row(r) for r in trace.records],
    }
    return json.dumps(doc, indent=2) + "\n"


def _from_row(row: dict) -> DecisionRecord:
    try:
        return DecisionRecord(
            int(row["step"]), _pos(str(row["from"])), _pos(str(row["to"])), Reason(row["reason"]),
            _parse_num(row["value_before"]), _parse_num(row["value_after"]), int(row["reward"]))
    except (KeyError, ValueError) as exc:
        raise TraceFormatError(f"bad trace record {row!r}: {exc}") from None


def parse_trace(text: str) -> list[DecisionRecord]:
    """Read either encoding; JSON is recognised by its leading brace."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise TraceFormatError(str(exc)) from None
        return [_from_row(r) for r in doc.get("records", [])]
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        return []
    header = lines[0].split("\t")
    if tuple(header) != FIELDS:
        raise TraceFormatError(f"unexpected header {lines[0]!r}")
    out = []
    for ln in lines[1:]:
        parts = ln.split("\t")
        if len(parts) != len(FIELDS):
            raise TraceFormatError(f"expected {len(FIELDS)} fields, got {len(parts)}: {ln!r}")
        out.append(_from_row(dict(zip(FIELDS, parts))))
    return out
