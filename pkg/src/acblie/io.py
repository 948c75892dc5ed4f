"""Input documents and report serialization.

Rationals travel as strings "p/q" in lowest terms (q > 0) or as bare
integers, so exact data survives a round trip unchanged.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .algebra import DEFAULT_TOL, PAIRS, StructureConstants, zeros
from .errors import InputError

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
MODES = ("exact", "float")


def format_scalar(x) -> str | float | int:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


def parse_rational(text, where: str = "", line: int | None = None) -> Fraction:
    if isinstance(text, bool):
        raise InputError(f"{where}expected a rational, got {text!r}", line)
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise InputError(f"{where}malformed rational {text!r}; expected 'p/q' or an integer", line)
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise InputError(f"{where}zero denominator in {text!r}", line)
    return Fraction(int(num), int(den or 1))


@dataclass(frozen=True)
class InputDocument:
    structure_constants: StructureConstants
    mode: str = "exact"
    tolerance: float | None = None

    @property
    def effective_tolerance(self) -> float:
        if self.mode == "exact":
            return 0
        return DEFAULT_TOL if self.tolerance is None else self.tolerance


def _entry_lines(text: str) -> list[int]:
    """1-based line of each object in the structure_constants array, in order."""
    m = re.search(r'"structure_constants"\s*:\s*\[', text)
    if not m:
        return []
    dec = json.JSONDecoder()
    pos, lines = m.end(), []
    while True:
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            return lines
        lines.append(text.count("\n", 0, pos) + 1)
        try:
            _, pos = dec.raw_decode(text, pos)
        except json.JSONDecodeError:
            return lines


def parse_document(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(raw, dict):
        raise InputError("top level must be an object", 1)
    unknown = set(raw) - {"structure_constants", "mode", "tolerance"}
    if unknown:
        raise InputError(f"unknown keys {sorted(unknown)}", 1)

    mode = raw.get("mode", "exact")
    if mode not in MODES:
        raise InputError(f"mode must be one of {MODES}, got {mode!r}")
    tolerance = raw.get("tolerance")
    if tolerance is not None:
        if mode != "float":
            raise InputError("tolerance is only allowed in float mode")
        try:
            tolerance = float(tolerance)
        except (TypeError, ValueError):
            raise InputError(f"tolerance must be a decimal, got {tolerance!r}") from None
        if tolerance < 0:
            raise InputError("tolerance must be non-negative")

    entries = raw.get("structure_constants")
    if not isinstance(entries, list):
        raise InputError("structure_constants must be a list")
    lines = _entry_lines(text)
    c = zeros((3, 3, 3))
    seen: dict[tuple[int, int], int | None] = {}
    for n, entry in enumerate(entries):
        line = lines[n] if n < len(lines) else None
        where = f"entry {n}: "
        if not isinstance(entry, dict) or set(entry) - {"i", "j", "coefficients"}:
            raise InputError(f"{where}expected an object with keys i, j, coefficients", line)
        i, j = entry.get("i"), entry.get("j")
        if not all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v <= 2 for v in (i, j)):
            raise InputError(f"{where}indices must be integers in 0..2, got i={i!r}, j={j!r}", line)
        if i >= j:
            raise InputError(f"{where}only pairs with i < j are allowed, got ({i}, {j})", line)
        if (i, j) in seen:
            prev = seen[(i, j)]
            raise InputError(f"{where}duplicate pair ({i}, {j})" + (f", first given on line {prev}" if prev else ""),
                             line)
        seen[(i, j)] = line
        coeffs = entry.get("coefficients", {})
        if not isinstance(coeffs, dict):
            raise InputError(f"{where}coefficients must be an object", line)
        for key, val in coeffs.items():
            if key not in ("0", "1", "2"):
                raise InputError(f"{where}coefficient key must be '0', '1' or '2', got {key!r}", line)
            v = parse_rational(val, where, line)
            k = int(key)
            if mode == "float":
                v = float(v)
            c[k, i, j] = v
            c[k, j, i] = -v
    if mode == "float":
        c = np.vectorize(float, otypes=[object])(c)
    return InputDocument(StructureConstants(c), mode, tolerance)


def document_to_dict(doc: InputDocument) -> dict[str, Any]:
    out: dict[str, Any] = {"mode": doc.mode}
    if doc.mode == "float" and doc.tolerance is not None:
        out["tolerance"] = doc.tolerance
    sc = doc.structure_constants
    entries = []
    for i, j in PAIRS:
        coeffs = {str(k): format_scalar(sc[k, i, j]) for k in range(3) if sc[k, i, j] != 0}
        if coeffs:
            entries.append({"i": i, "j": j, "coefficients": coeffs})
    out["structure_constants"] = entries
    return out


def emit_document(doc: InputDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2) + "\n"


def to_jsonable(obj):
    """Convert report values (Fractions, arrays, sets, tuples) to plain JSON types."""
    if isinstance(obj, (Fraction, np.integer, int)) and not isinstance(obj, bool):
        return format_scalar(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    return obj


def from_jsonable(obj):
    """Inverse of ``to_jsonable`` for numeric leaves: rational strings become Fractions."""
    if isinstance(obj, str) and _RATIONAL.match(obj) and "/" in obj:
        return parse_rational(obj)
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    if isinstance(obj, dict):
        return {k: from_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [from_jsonable(v) for v in obj]
    return obj


def dump_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"


def load_report(text: str) -> dict:
    return from_jsonable(json.loads(text))
