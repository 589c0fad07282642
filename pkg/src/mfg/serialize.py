"""Loading command-line JSON arguments into library objects, and dumping results."""
from __future__ import annotations

import json
import os
import sys
from typing import Any, Mapping

from .ck import DEFAULT_ORDER, CKElement, PhaseFunction
from .errors import InputError, ParseError
from .full_group import PrefixExchangeTable, parse_entries
from .orbit_equiv import OrbitCocycleData, TailMap, golden_mean_example, parse_program
from .points import EPPoint
from .shift import NAMED_SHIFTS, MarkovShift


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def load_json(arg: str) -> Any:
    """Inline JSON, a file path, or ``-`` for stdin. Bare names load as strings."""
    if arg == "-":
        text = sys.stdin.read()
    elif os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        stripped = text.strip()
        if stripped in NAMED_SHIFTS or stripped == "golden-mean":
            return stripped
        raise ParseError(f"invalid JSON: {arg[:60]!r}") from None


def shift_from(data: Any) -> MarkovShift:
    if isinstance(data, str):
        if data in NAMED_SHIFTS:
            return NAMED_SHIFTS[data]()
        raise ParseError(f"unknown shift name {data!r}; known: {', '.join(sorted(NAMED_SHIFTS))}")
    if isinstance(data, Mapping):
        if "rows" in data:
            shift = MarkovShift(data["rows"])
            if "n" in data and int(data["n"]) != shift.n:
                raise ParseError("field n disagrees with the number of rows")
            return shift
        if "shift" in data:
            return shift_from(data["shift"])
    if isinstance(data, list):
        return MarkovShift(data)
    raise ParseError("a shift is a name, a list of rows, or {\"n\":..., \"rows\":...}")


def table_from(data: Any, shift: MarkovShift | None = None) -> PrefixExchangeTable:
    if not isinstance(data, Mapping) or "entries" not in data:
        raise ParseError('a table is {"shift": ..., "entries": [["mu", "nu"], ...]}')
    if "shift" in data:
        shift = shift_from(data["shift"])
    if shift is None:
        raise ParseError("table has no shift")
    try:
        entries = parse_entries(data["entries"])
    except (TypeError, ValueError):
        raise ParseError("entries must be pairs of words") from None
    return PrefixExchangeTable(shift, entries)


def element_from(data: Any, shift: MarkovShift | None = None) -> CKElement:
    if not isinstance(data, Mapping):
        raise ParseError('an element is {"shift": ..., "M": 4, "terms": [...]}')
    if "shift" in data:
        shift = shift_from(data["shift"])
    if shift is None:
        raise ParseError("element has no shift")
    try:
        return CKElement.from_json(shift, data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed element: {exc}") from None


def phase_from(data: Any, shift: MarkovShift | None = None, order: int | None = None) -> PhaseFunction:
    if not isinstance(data, Mapping):
        raise ParseError('a phase function is {"depth": d, "order": M, "values": {...}}')
    if "shift" in data:
        shift = shift_from(data["shift"])
    if shift is None:
        raise ParseError("phase function has no shift")
    if order is not None and "order" not in data and "M" not in data:
        data = {**data, "order": order}
    try:
        return PhaseFunction.from_json(shift, data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed phase function: {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def tailmap_from(data: Any) -> TailMap:
    if data == "golden-mean":
        return golden_mean_example()[0]
    if not isinstance(data, Mapping) or not {"source", "target", "forward", "inverse"} <= set(data):
        raise ParseError('a map is {"source", "target", "forward", "inverse"} or "golden-mean"')
    return TailMap(
        shift_from(data["source"]),
        shift_from(data["target"]),
        parse_program(data["forward"]),
        parse_program(data["inverse"]),
    )


def cocycle_data_from(data: Any, h: TailMap) -> OrbitCocycleData:
    if data == "golden-mean":
        return golden_mean_example()[1]
    try:
        return OrbitCocycleData.from_json(h.source, h.target, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed cocycle data: {exc}") from None


def point_from(text: str, shift: MarkovShift) -> EPPoint:
    return EPPoint.parse(text).check(shift)


__all__ = [
    "DEFAULT_ORDER",
    "InputError",
    "cocycle_data_from",
    "dumps",
    "element_from",
    "load_json",
    "phase_from",
    "point_from",
    "shift_from",
    "table_from",
    "tailmap_from",
]
