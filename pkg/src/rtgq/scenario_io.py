"""
Scenario documents.

A scenario document is one JSON object with exactly the fields

    {"lambda": 0.5, "theta": 1.4, "service": "exp:1.0"}
"""

import re
import json
import logging
from typing import Optional
from pathlib import Path

from pydantic import ValidationError

from .types import Scenario
from .errors import ScenarioParseError, UnknownFieldError, ScenarioValidationError

logger = logging.getLogger(__name__)

__all__ = ["SCENARIO_FIELDS", "parse_scenario", "load_scenario", "dump_scenario"]

SCENARIO_FIELDS = ("lambda", "theta", "service")


def _field_line(text: str, field: str) -> Optional[int]:
    pattern = re.compile(rf'"{re.escape(field)}"\s*:')
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return number
    return None


def _located(text: str, field: str) -> str:
    line = _field_line(text, field)
    return f"`{field}` (line {line})" if line is not None else f"`{field}`"


def parse_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise ScenarioParseError(f"scenario document must be a single JSON object, got {type(data).__name__}", 1, 1)

    unknown = [key for key in data if key not in SCENARIO_FIELDS]
    if unknown:
        names = ", ".join(_located(text, key) for key in unknown)
        raise UnknownFieldError(f"unknown field(s) {names}; expected {', '.join(SCENARIO_FIELDS)}", unknown)

    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        fields: list[str] = []
        problems: list[str] = []
        for error in e.errors():
            field = str(error["loc"][0]) if error["loc"] else "document"
            fields.append(field)
            problems.append(f"{_located(text, field)}: {error['msg']}")
        raise ScenarioValidationError("; ".join(problems), fields) from None


def load_scenario(path: Path) -> Scenario:
    logger.debug(f"loading scenario from {path}")
    return parse_scenario(path.read_text(encoding="utf-8"))


def dump_scenario(sc: Scenario) -> str:
    return sc.model_dump_json(by_alias=True)
