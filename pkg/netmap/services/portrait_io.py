"""Portrait JSON and DOT formats."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict

from loguru import logger
from pydantic import ValidationError

from netmap.schemas.portrait import ChoicePolicy, PortraitDocument
from netmap.services.errors import NetMapParseError, UsageError
from netmap.services.portrait import DynamicPortrait, PortraitVertex


def portrait_from_document(document: PortraitDocument) -> DynamicPortrait:
    return DynamicPortrait(
        vertices=tuple(PortraitVertex(e.id, e.weight, e.to) for e in document.postcritical),
        extra_critical=tuple((e.to, e.count) for e in document.extra_critical),
    )


def portrait_to_document(portrait: DynamicPortrait) -> PortraitDocument:
    return PortraitDocument(
        postcritical=[{"id": v.id, "weight": v.weight, "to": v.to} for v in portrait.vertices],
        extra_critical=[{"to": to, "count": count} for to, count in portrait.extra_critical],
    )


def _read_json(path: str) -> Any:
    file_path = Path(path)
    if not file_path.is_file():
        raise UsageError(f"file not found: {path}")
    try:
        return json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise NetMapParseError(f"invalid JSON in {path}: {exc.msg}", line=exc.lineno) from exc


def parse_portrait(payload: Dict[str, Any]) -> DynamicPortrait:
    try:
        return portrait_from_document(PortraitDocument.model_validate(payload))
    except ValidationError as exc:
        raise NetMapParseError(f"invalid portrait document: {exc.errors()[0]['msg']}") from exc


def load_portrait(path: str) -> DynamicPortrait:
    logger.debug("Loading portrait", path=path)
    return parse_portrait(_read_json(path))


def load_choice_policy(path: str) -> ChoicePolicy:
    logger.debug("Loading choice policy", path=path)
    try:
        return ChoicePolicy.model_validate(_read_json(path))
    except ValidationError as exc:
        raise NetMapParseError(f"invalid choice policy: {exc.errors()[0]['msg']}") from exc


def portrait_to_dot(portrait: DynamicPortrait, name: str = "portrait") -> str:
    """Named vertices as nodes; anonymous critical vertices as one node per target."""
    lines = [f"digraph {name} {{"]
    for v in sorted(portrait.vertices, key=lambda vertex: vertex.id):
        lines.append(f'  "{v.id}" [label="{v.id}"];')
    for v in sorted(portrait.vertices, key=lambda vertex: vertex.id):
        lines.append(f'  "{v.id}" -> "{v.to}" [w={v.weight}, label="w={v.weight}"];')
    for to, count in sorted(portrait.extra_counts().items()):
        if not count:
            continue
        node = f"anon:{to}"
        lines.append(f'  "{node}" [shape=point, xlabel="critical ×{count}"];')
        lines.append(f'  "{node}" -> "{to}" [w=2, label="×{count}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
