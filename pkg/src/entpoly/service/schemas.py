"""Request and response models for the HTTP service.

State payloads mirror the JSON exchange formats: discrete states carry
``dims``/``re``/``im`` (vector or row-major matrix, told apart by length)
and Gaussian states carry ``n_modes``/``rows``.  Entropy specs travel as
strings like ``"S"``, ``"R:p=2"`` or ``"T:q=1.5"``; a request-level
``base`` applies to specs that do not pin their own.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from ..config import DEFAULT_SEED


class StrictModel(BaseModel):
    """Request-side base: unknown fields are rejected instead of ignored."""

    model_config = ConfigDict(extra="forbid")


class DiscreteStatePayload(StrictModel):
    dims: list[int]
    re: list[float]
    im: list[float] | None = None


class GaussianStatePayload(StrictModel):
    n_modes: int
    rows: list[list[float]]


StatePayload = DiscreteStatePayload | GaussianStatePayload


class EntropyRequest(StrictModel):
    state: StatePayload
    spec: str = "S"
    base: float = 2.0


class EntropyResponse(BaseModel):
    spec: str
    value: float


class PolygonRequest(StrictModel):
    state: StatePayload
    spec: str = "S"
    base: float = 2.0
    partition: list[int] | None = Field(
        default=None, description="party sizes over consecutive factors or modes"
    )
    tolerance: float | None = None


class PolygonResponse(BaseModel):
    spec: str
    values: list[float]
    slacks: list[float]
    min_slack: float
    holds: bool
    violating_parties: list[int]


class SubaddRequest(StrictModel):
    state: StatePayload
    spec: str = "S"
    base: float = 2.0
    partition: list[int] | None = None
    tolerance: float | None = None


class SubaddResponse(BaseModel):
    spec: str
    entropy_joint: float
    entropy_first: float
    entropy_second: float
    mutual_information: float
    holds: bool


class MarginalRequest(StrictModel):
    state: StatePayload | None = None
    values: list[float] | None = Field(
        default=None, description="raw marginal data when no state is given"
    )
    kind: str | None = Field(
        default=None, description="'qubit' or 'gaussian'; required with raw values"
    )
    tolerance: float | None = None


class MarginalResponse(BaseModel):
    kind: str
    values: list[float]
    slacks: list[float]
    min_slack: float
    holds: bool


class MajorizeRequest(StrictModel):
    x: list[float] | None = None
    y: list[float] | None = None
    state: GaussianStatePayload | None = Field(
        default=None, description="compare per-mode versus joint symplectic spectra"
    )
    tolerance: float | None = None


class MajorizeResponse(BaseModel):
    gap: float
    holds: bool
    x: list[float]
    y: list[float]


class WstateRequest(StrictModel):
    p: float
    n_parties: int = 3
    grid: list[float] | None = None
    base: float = 2.0


class WstateResponse(BaseModel):
    order: float
    base: float
    n_parties: int
    a1_squared: list[float]
    slacks: list[float]
    n_violations: int
    worst_slack: float
    worst_a1_squared: float
    witnesses: list[dict[str, Any]]


class EquivRequest(StrictModel):
    state: DiscreteStatePayload
    spec: str = "S"
    base: float = 2.0


class EquivResponse(BaseModel):
    spec: str
    one_to_rest_values: list[float]
    ancilla_dim: int
    polygon_slack_at_ancilla: float
    subadditivity_slack: float
    difference: float
    slacks_match: bool
    subadditivity_holds: bool


class Theorem2Request(StrictModel):
    state: GaussianStatePayload
    partition: list[int]
    specs: list[str] = ["S"]
    base: float = 2.0
    link_tol: float = 1e-8


class Theorem2Response(BaseModel):
    traces: list[dict[str, Any]]
    all_links_hold: bool
    min_polygon_slack: float


class GhzRequest(StrictModel):
    spec: str = "S"
    base: float = 2.0


class GhzResponse(BaseModel):
    spec: str
    entropy_pair: float
    entropy_single: float
    polygon_slack: float
    pair_is_separable: bool
    entropy_positive: bool
    note: str


class CampaignRequest(StrictModel):
    system: str
    relation: str
    specs: list[str] = []
    samples: int = 1000
    seed: int = DEFAULT_SEED
    tolerance: float = 1e-9
    base: float = 2.0
    workers: int = 1


class CampaignResponse(BaseModel):
    config: dict[str, Any]
    entries: dict[str, dict[str, Any]]
    total_violations: int
    holds: bool


class Table1Request(StrictModel):
    samples: int = 2000
    seed: int = DEFAULT_SEED
    workers: int = 1


class Table1Response(BaseModel):
    samples: int
    seed: int
    workers: int
    cells: list[dict[str, Any]]
    matches_expected: bool
    runtime_seconds: float


class HealthResponse(BaseModel):
    status: str
    version: str
