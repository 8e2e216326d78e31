from __future__ import annotations

import json
from datetime import datetime
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field


def array_key(values: Sequence[int]) -> str:
    """
    JSON object key for a partition or content vector, e.g. (2, 1) -> "[2,1]".
    """
    return json.dumps(list(values), separators=(",", ":"))


# -----------------------------
# Graph input
# -----------------------------
class VertexPayload(BaseModel):
    id: int
    color: Literal["white", "black"]


class GraphPayload(BaseModel):
    """
    Graph JSON: {"vertices":[{"id":1,"color":"white"},...],"edges":[[1,2],...]}
    """
    vertices: List[VertexPayload]
    edges: List[List[int]]


# -----------------------------
# Subcommand outputs
# -----------------------------
class VolumeReport(BaseModel):
    method: str
    volume: int


class VolumeCrossCheck(BaseModel):
    """
    Result of `volume --all`: every route to V(G) side by side.
    `ehrhart` is None when the graph is above the Ehrhart cap.
    """
    apm: Optional[int] = None
    leaf: Optional[int] = None
    ehrhart: Optional[int] = None
    labelings: Optional[int] = None
    agree: bool


class SchurReport(BaseModel):
    """
    `schurfun` output when a specialization is requested; the bare expansion
    is printed otherwise.
    """
    basis: Literal["s", "h"]
    expansion: Dict[str, int]
    principal: Optional[Dict[str, int]] = None
    exp: Optional[str] = None
    volume: Optional[int] = None


class TensorReportOut(BaseModel):
    N: int = Field(..., ge=1)
    dimension: int = Field(..., ge=0)
    character: Dict[str, int]


class SpechtReportOut(BaseModel):
    """
    Serialized SpechtReport. Optional parts are omitted unless requested.
    """
    dimension: int = Field(..., ge=0)
    character: Optional[Dict[str, int]] = None
    decomposition: Optional[Dict[str, int]] = None
    tensor: Optional[TensorReportOut] = None


class TableauOut(BaseModel):
    # [[row, col, label], ...] sorted by box
    entries: List[List[int]]


class TableauxReport(BaseModel):
    n_labels: int
    count: int
    tableaux: Optional[List[TableauOut]] = None
    content: Optional[Dict[str, int]] = None


# -----------------------------
# Check suite
# -----------------------------
class CheckRecord(BaseModel):
    identity: str
    instance: str
    left: str
    right: str
    passed: bool


class FamilySummary(BaseModel):
    records: int
    failed: int


class CheckSummary(BaseModel):
    records: int
    failed: int
    families: Dict[str, FamilySummary]


class CheckReport(BaseModel):
    scope: Literal["small", "full"]
    seed: int
    fault_injection: bool = False
    passed: bool
    summary: CheckSummary
    records: List[CheckRecord]


class CheckRunOut(BaseModel):
    """
    Read-only representation of a CheckRun row.
    """
    model_config = ConfigDict(from_attributes=True)

    id: str
    created_at: datetime
    scope: str
    seed: int
    passed: bool
    n_records: int
    n_failed: int
    families: Dict[str, Dict[str, int]]
    report_key: Optional[str] = None
    notes: Optional[str] = None
