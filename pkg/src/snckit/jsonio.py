"""Canonical JSON encoding shared by all file formats.

Every input file carries a schema version field "v": 1.  Rationals are
encoded as strings ("3", "2/3"); scalars as {"modulus": ..., "phase": ...}.
Canonical output sorts object keys and entity arrays by id so that
serialize -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .scalars import ExactScalar

SCHEMA_VERSION = 1


class InputError(Exception):
    """Raised when an input file or payload fails to parse or validate."""


def canonical_dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def check_version(data, where: str = "input") -> None:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object")
    if data.get("v") != SCHEMA_VERSION:
        raise InputError(f"{where}: missing or unsupported schema version, need \"v\": {SCHEMA_VERSION}")


def fraction_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def fraction_from_str(text, where: str = "rational") -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {text!r}") from exc


def scalar_to_data(s: ExactScalar) -> dict:
    return {"modulus": fraction_to_str(s.modulus), "phase": fraction_to_str(s.phase)}


def scalar_from_data(data, where: str = "scalar") -> ExactScalar:
    if not isinstance(data, dict) or "modulus" not in data or "phase" not in data:
        raise InputError(f"{where}: expected an object with 'modulus' and 'phase'")
    mod = fraction_from_str(data["modulus"], where + ".modulus")
    ph = fraction_from_str(data["phase"], where + ".phase")
    try:
        return ExactScalar(mod, ph)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc


def need(data: dict, key: str, where: str):
    if key not in data:
        raise InputError(f"{where}: missing key {key!r}")
    return data[key]
