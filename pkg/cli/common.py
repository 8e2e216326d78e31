from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import pandas as pd
from pydantic import BaseModel

from core.errors import GraphValidationError
from services.diagrams import Diagram, diagram_to_graph, graph_to_diagram, parse_diagram_ascii
from services.graphs import BipartiteGraph, parse_graph_json

Shape = Union[BipartiteGraph, Diagram]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise GraphValidationError(f"Cannot read input {path}: {e}") from e


def load_input(path: str) -> Shape:
    """
    *.json -> graph JSON; anything else -> diagram ASCII ('#' box, '.' gap).
    """
    text = _read(path)
    if path.endswith(".json"):
        return parse_graph_json(text)
    return parse_diagram_ascii(text)


def load_graph(path: str) -> BipartiteGraph:
    shape = load_input(path)
    return shape if isinstance(shape, BipartiteGraph) else diagram_to_graph(shape)


def load_diagram(path: str) -> Diagram:
    shape = load_input(path)
    return shape if isinstance(shape, Diagram) else graph_to_diagram(shape)


def to_jsonable(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", exclude_none=True)
    if isinstance(payload, list):
        return [to_jsonable(item) for item in payload]
    return payload


def dumps(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), separators=(",", ":"))


def emit(payload: Any, pretty: bool = False, table: Optional[pd.DataFrame] = None) -> None:
    """
    JSON on stdout; with --pretty a human-readable table instead when the
    command provides one.
    """
    if pretty and table is not None:
        print(table.to_string(index=False))
        return
    if pretty:
        print(json.dumps(to_jsonable(payload), indent=2))
        return
    print(dumps(payload))


def emit_error(message: str, **extra: Any) -> None:
    body: Dict[str, Any] = {"error": message}
    body.update(extra)
    print(json.dumps(body, separators=(",", ":")), file=sys.stderr)


def mapping_table(values: Mapping[str, Any], key: str, value: str) -> pd.DataFrame:
    return pd.DataFrame({key: list(values.keys()), value: list(values.values())})
