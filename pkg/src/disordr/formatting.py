"""R-style rendering of plain vectors and lists.

Numbers share one number of decimal places chosen so every element shows
seven significant digits, and long vectors wrap with ``[i]`` index labels.
"""

from __future__ import annotations

import math

DISPLAY_WIDTH = 70
SIGNIFICANT = 7

NUMBER = "number"
BOOLEAN = "boolean"
SYMBOL = "symbol"
NUMBER_LIST = "number-list"
SYMBOL_LIST = "symbol-list"

_EMPTY = {
    NUMBER: "numeric(0)",
    BOOLEAN: "logical(0)",
    SYMBOL: "character(0)",
    NUMBER_LIST: "list()",
    SYMBOL_LIST: "list()",
    None: "NULL",
}


def _decimals_needed(x: float) -> int:
    target = float(f"{x:.{SIGNIFICANT}g}")
    if target == 0 or target.is_integer():
        return 0
    for sig in range(1, SIGNIFICANT + 1):
        if float(f"{x:.{sig}g}") == target:
            break
    exponent = math.floor(math.log10(abs(target)))
    return max(0, sig - 1 - exponent)


def format_number(x, decimals: int = 0) -> str:
    if isinstance(x, int):
        return str(x) if decimals == 0 else f"{x:.{decimals}f}"
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Inf" if x > 0 else "-Inf"
    if x == 0:
        x = 0.0  # negative zero prints as 0
    if decimals > 15:
        return f"{x:.{SIGNIFICANT}g}"
    if decimals == 0 and x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return f"{x:.{decimals}f}"


def format_numbers(values) -> list[str]:
    decimals = max(
        (_decimals_needed(x) for x in values if isinstance(x, float) and math.isfinite(x)),
        default=0,
    )
    return [format_number(x, decimals) for x in values]


def format_atoms(values, kind) -> list[str]:
    if kind == BOOLEAN:
        return ["TRUE" if v else "FALSE" for v in values]
    if kind == SYMBOL:
        return ['"' + v + '"' for v in values]
    return format_numbers(values)


def format_vector(values, kind, width: int = DISPLAY_WIDTH) -> list[str]:
    """Lines R would print for an atomic vector."""
    values = list(values)
    if not values:
        return [_EMPTY.get(kind, "NULL")]
    items = format_atoms(values, kind)
    w = max(len(s) for s in items)
    if kind == SYMBOL:
        items = [s.ljust(w) for s in items]
    else:
        items = [s.rjust(w) for s in items]
    label_width = len(f"[{len(items)}]")
    per_line = max(1, (width - label_width) // (w + 1))
    lines = []
    for start in range(0, len(items), per_line):
        label = f"[{start + 1}]".rjust(label_width)
        lines.append(label + "".join(" " + s for s in items[start:start + per_line]))
    if kind == SYMBOL:
        lines = [line.rstrip() for line in lines]
    return lines


def _inner_empty(kind, values) -> str:
    if kind == SYMBOL_LIST:
        return "character(0)"
    return "integer(0)"


def format_list(values, kind, width: int = DISPLAY_WIDTH) -> list[str]:
    if not values:
        return ["list()"]
    inner = SYMBOL if kind == SYMBOL_LIST else NUMBER
    lines = []
    for i, element in enumerate(values, start=1):
        lines.append(f"[[{i}]]")
        if len(element) == 0:
            lines.append(_inner_empty(kind, values))
        else:
            lines.extend(format_vector(element, inner, width))
        lines.append("")
    return lines


def format_values(values, kind, width: int = DISPLAY_WIDTH) -> list[str]:
    if kind in (NUMBER_LIST, SYMBOL_LIST):
        return format_list(values, kind, width)
    return format_vector(values, kind, width)
