"""CPLEX-LP text dump of an assembled model, one row per line with its tag as a comment."""
from __future__ import annotations

import math
import re
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .program import BINARY, INTEGER, LinearProgram

_INVALID = re.compile(r"[^A-Za-z0-9_.]")


def _name(raw: str) -> str:
    cleaned = _INVALID.sub("_", raw)
    return cleaned if cleaned[:1].isalpha() else f"x_{cleaned}"


def _number(value: float) -> str:
    return repr(float(value)) if value != int(value) else str(int(value))


def _expression(names: Sequence[str], terms: Sequence[Tuple[int, float]]) -> str:
    if not terms:
        return "0 " + names[0] if names else "0"
    parts: List[str] = []
    for position, (col, coef) in enumerate(terms):
        sign = "-" if coef < 0 else "+"
        magnitude = abs(coef)
        body = names[col] if magnitude == 1.0 else f"{_number(magnitude)} {names[col]}"
        if position == 0:
            parts.append(f"- {body}" if sign == "-" else body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def write_lp_text(lp: LinearProgram, path: Optional[Path] = None) -> str:
    names = [_name(name) for name in lp.names]
    lines: List[str] = [f"\\ {lp.name}"]
    if lp.objective_offset:
        lines.append(f"\\ objective offset {_number(lp.objective_offset)}")
    lines.append("Minimize")
    objective = [(col, coef) for col, coef in enumerate(lp.objective) if coef != 0.0]
    lines.append(f" obj: {_expression(names, objective)}")
    lines.append("Subject To")
    for number, row in enumerate(lp.rows):
        lines.append(f" \\ {row.tag}")
        lines.append(f" r{number}: {_expression(names, row.coefficients)} {row.sense} {_number(row.rhs)}")
    if lp.structural_families:
        families = ", ".join(f"eq{family}" for family in sorted(lp.structural_families))
        lines.append(f"\\ satisfied by construction: {families}")
    lines.append("Bounds")
    for col, name in enumerate(names):
        lower, upper = lp.lower[col], lp.upper[col]
        if lp.kinds[col] == BINARY:
            continue
        if math.isinf(upper):
            if lower != 0.0:
                lines.append(f" {name} >= {_number(lower)}")
        else:
            lines.append(f" {_number(lower)} <= {name} <= {_number(upper)}")
    general = [names[col] for col, kind in enumerate(lp.kinds) if kind == INTEGER]
    binary = [names[col] for col, kind in enumerate(lp.kinds) if kind == BINARY]
    if general:
        lines.append("General")
        lines.extend(f" {name}" for name in general)
    if binary:
        lines.append("Binary")
        lines.extend(f" {name}" for name in binary)
    lines.append("End")
    text = "\n".join(lines) + "\n"
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


__all__ = ["write_lp_text"]
