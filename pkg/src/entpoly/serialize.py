"""JSON exchange formats and CSV report emission.

Discrete states travel as ``{"dims": [...], "re": [...], "im": [...]}``
with row-major flattening; a payload of length ``d`` is a state vector and
one of length ``d*d`` is a density matrix.  Gaussian states travel as
``{"n_modes": n, "rows": [[...], ...]}``.  Floats survive a round trip
bit-exactly because the JSON writer emits shortest repr and the reader
parses back to the identical double; non-finite values are rejected.
"""

from __future__ import annotations

import io
import json
from typing import Any

import numpy as np

from .discrete import DensityMatrix, DimsLayout, StateError, StateVector, build_state_vector
from .gaussian import CovarianceMatrix, GaussianError

__all__ = [
    "state_vector_to_dict",
    "density_to_dict",
    "cm_to_dict",
    "to_payload",
    "from_payload",
    "dumps_json",
    "read_state_file",
    "campaign_csv",
    "table1_csv",
    "flat_csv",
    "report_csv",
]


def state_vector_to_dict(psi: StateVector) -> dict:
    return {
        "dims": list(psi.layout.dims),
        "re": [float(x) for x in psi.amplitudes.real],
        "im": [float(x) for x in psi.amplitudes.imag],
    }


def density_to_dict(rho: DensityMatrix) -> dict:
    flat = rho.entries.reshape(-1)
    return {
        "dims": list(rho.layout.dims),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def cm_to_dict(sigma: CovarianceMatrix) -> dict:
    return {
        "n_modes": sigma.n_modes,
        "rows": [[float(x) for x in row] for row in sigma.entries],
    }


def to_payload(state: StateVector | DensityMatrix | CovarianceMatrix) -> dict:
    if isinstance(state, StateVector):
        return state_vector_to_dict(state)
    if isinstance(state, DensityMatrix):
        return density_to_dict(state)
    if isinstance(state, CovarianceMatrix):
        return cm_to_dict(state)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def _discrete_from_payload(payload: dict) -> StateVector | DensityMatrix:
    try:
        dims = tuple(int(d) for d in payload["dims"])
        re = np.asarray(payload["re"], dtype=np.float64)
        im_raw = payload.get("im")
    except (KeyError, TypeError, ValueError) as exc:
        raise StateError(f"malformed discrete state payload: {exc}") from exc
    im = np.zeros_like(re) if im_raw is None else np.asarray(im_raw, dtype=np.float64)
    if re.shape != im.shape:
        raise StateError(f"re and im lengths differ: {re.size} versus {im.size}")
    layout = DimsLayout(dims)
    data = re + 1j * im
    d = layout.total_dim
    if data.size == d:
        try:
            # keep already-normalized vectors bit-exact
            return StateVector(data, layout)
        except StateError:
            return build_state_vector(data, layout)
    if data.size == d * d:
        return DensityMatrix(data.reshape(d, d), layout)
    raise StateError(
        f"payload length {data.size} matches neither a vector ({d}) nor a matrix ({d * d})"
    )


def _cm_from_payload(payload: dict) -> CovarianceMatrix:
    try:
        n = int(payload["n_modes"])
        rows = np.asarray(payload["rows"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise GaussianError(f"malformed covariance payload: {exc}") from exc
    if rows.shape != (2 * n, 2 * n):
        raise GaussianError(
            f"rows shape {rows.shape} does not match n_modes={n} (expected {(2 * n, 2 * n)})"
        )
    return CovarianceMatrix(rows)


def from_payload(payload: dict) -> StateVector | DensityMatrix | CovarianceMatrix:
    """Dispatch a state payload on its keys."""
    if not isinstance(payload, dict):
        raise StateError(f"state payload must be a JSON object, got {type(payload).__name__}")
    if "dims" in payload:
        return _discrete_from_payload(payload)
    if "n_modes" in payload:
        return _cm_from_payload(payload)
    raise StateError("state payload needs either a 'dims' or an 'n_modes' key")


def dumps_json(payload: dict) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def read_state_file(path: str) -> StateVector | DensityMatrix | CovarianceMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return from_payload(json.load(fh))


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    for row in rows:
        buf.write(",".join(_csv_cell(x) for x in row))
        buf.write("\n")
    return buf.getvalue()


def campaign_csv(report: dict) -> str:
    """Long format: one row per (spec, statistic) pair."""
    rows: list[list[Any]] = [["spec", "statistic", "value"]]
    for spec_key, stats in report["entries"].items():
        for stat in ("checked", "violations", "worst_slack", "mean_slack"):
            rows.append([spec_key, stat, stats[stat]])
        rows.append([spec_key, "witnesses", len(stats["witnesses"])])
    return _write_rows(rows)


def table1_csv(report: dict) -> str:
    rows: list[list[Any]] = [["property", "family", "system", "verdict", "source", "expected", "matches"]]
    for cell in report["cells"]:
        rows.append(
            [
                cell["property"],
                cell["family"],
                cell["system"],
                cell["verdict"],
                cell["source"],
                cell["expected"],
                cell["matches"],
            ]
        )
    return _write_rows(rows)


def _flatten(prefix: str, value: Any, rows: list[list[Any]]) -> None:
    if isinstance(value, dict):
        for key in value:
            _flatten(f"{prefix}.{key}" if prefix else str(key), value[key], rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append([prefix, value])


def flat_csv(report: dict) -> str:
    """Generic ``key,value`` rows with dotted paths for nested fields."""
    rows: list[list[Any]] = [["key", "value"]]
    _flatten("", report, rows)
    return _write_rows(rows)


def report_csv(kind: str, report: dict) -> str:
    if kind == "campaign":
        return campaign_csv(report)
    if kind == "table1":
        return table1_csv(report)
    return flat_csv(report)
