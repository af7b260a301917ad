"""FastAPI application exposing the library over HTTP.

Every endpoint is a thin adapter: decode the state payload, call the
library, reshape the report into the response model.  Domain errors
(malformed states, invalid specs, precondition failures) map to HTTP 400;
payload shape errors are handled by the framework as 422.  The ``HANDLERS``
registry lets the command-line client call the same functions in process
without a running server.
"""

from __future__ import annotations

import dataclasses
from contextlib import contextmanager

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..campaigns import CampaignConfig, run_campaign, table1
from ..config import DEFAULT_TOL
from ..discrete import (
    DensityMatrix,
    StateError,
    StateVector,
    marginal_of_pure,
    partial_trace,
    purity,
    spectrum,
)
from ..entropy import EntropySpec, entropy_of_state
from ..gaussian import CovarianceMatrix, GaussianError, is_pure_cm, single_mode_spectra, symplectic_spectrum
from ..relations import (
    gaussian_marginal_check,
    ghz_monogamy_demo,
    one_to_rest,
    polygon_check,
    purified_equivalence_demo,
    qubit_marginal_check,
    subadditivity_check,
    theorem2_geometry,
    theorem2_trace_from_geometry,
    weak_majorization_gap,
    wstate_violation,
)
from ..serialize import from_payload
from . import schemas

app = FastAPI(
    title="entpoly",
    version=__version__,
    description=(
        "Entropic polygon relations, subadditivity and marginal inequalities "
        "for discrete and Gaussian quantum states."
    ),
)


@contextmanager
def _domain_errors():
    try:
        yield
    except (StateError, GaussianError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _decode_state(payload) -> StateVector | DensityMatrix | CovarianceMatrix:
    return from_payload(payload.model_dump())


def _tol(tolerance: float | None):
    if tolerance is None:
        return DEFAULT_TOL
    if tolerance <= 0.0:
        raise HTTPException(status_code=400, detail=f"tolerance must be positive, got {tolerance}")
    return dataclasses.replace(DEFAULT_TOL, violation=tolerance)


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/entropy", response_model=schemas.EntropyResponse)
def entropy_endpoint(request: schemas.EntropyRequest) -> schemas.EntropyResponse:
    with _domain_errors():
        spec = EntropySpec.from_string(request.spec, default_base=request.base)
        state = _decode_state(request.state)
        value = entropy_of_state(state, spec)
    return schemas.EntropyResponse(spec=spec.to_string(), value=value)


@app.post("/polygon", response_model=schemas.PolygonResponse)
def polygon_endpoint(request: schemas.PolygonRequest) -> schemas.PolygonResponse:
    with _domain_errors():
        spec = EntropySpec.from_string(request.spec, default_base=request.base)
        state = _decode_state(request.state)
        tol = _tol(request.tolerance)
        report = polygon_check(one_to_rest(state, spec, request.partition, tol), tol)
    return schemas.PolygonResponse(**report.to_dict())


@app.post("/subadd", response_model=schemas.SubaddResponse)
def subadd_endpoint(request: schemas.SubaddRequest) -> schemas.SubaddResponse:
    with _domain_errors():
        spec = EntropySpec.from_string(request.spec, default_base=request.base)
        state = _decode_state(request.state)
        if isinstance(state, StateVector):
            state = state.density_matrix()
        tol = _tol(request.tolerance)
        report = subadditivity_check(state, spec, request.partition, tol)
    return schemas.SubaddResponse(**report.to_dict())


def _marginal_values(state: StateVector | DensityMatrix | CovarianceMatrix, tol) -> tuple[str, list[float]]:
    """Per-party marginal data for the entropy-free inequalities."""
    if isinstance(state, CovarianceMatrix):
        if not is_pure_cm(state, tol):
            raise GaussianError("the marginal inequality needs a pure state")
        return "gaussian", [float(x) for x in single_mode_spectra(state)]
    if isinstance(state, DensityMatrix):
        if abs(purity(state) - 1.0) > tol.purity:
            raise StateError("the marginal inequality needs a pure state")
        if any(d != 2 for d in state.layout.dims):
            raise StateError("the qubit marginal inequality needs an all-qubit system")
        lams = [
            float(spectrum(partial_trace(state, (i,)), tol).values[-1])
            for i in range(state.layout.n_parties)
        ]
        return "qubit", lams
    if any(d != 2 for d in state.layout.dims):
        raise StateError("the qubit marginal inequality needs an all-qubit system")
    lams = [
        float(spectrum(marginal_of_pure(state, (i,)), tol).values[-1])
        for i in range(state.layout.n_parties)
    ]
    return "qubit", lams


@app.post("/marginal", response_model=schemas.MarginalResponse)
def marginal_endpoint(request: schemas.MarginalRequest) -> schemas.MarginalResponse:
    with _domain_errors():
        tol = _tol(request.tolerance)
        if request.state is not None:
            kind, values = _marginal_values(_decode_state(request.state), tol)
        elif request.values is not None:
            if request.kind not in ("qubit", "gaussian"):
                raise ValueError("raw marginal values need kind 'qubit' or 'gaussian'")
            kind, values = request.kind, request.values
        else:
            raise ValueError("provide either a state or raw marginal values")
        if kind == "qubit":
            report = qubit_marginal_check(values, tol)
        else:
            report = gaussian_marginal_check(values, tol)
    return schemas.MarginalResponse(**report.to_dict())


@app.post("/majorize", response_model=schemas.MajorizeResponse)
def majorize_endpoint(request: schemas.MajorizeRequest) -> schemas.MajorizeResponse:
    with _domain_errors():
        tol = _tol(request.tolerance)
        if request.state is not None:
            state = _decode_state(request.state)
            x = [float(v) for v in single_mode_spectra(state)]
            y = [float(v) for v in symplectic_spectrum(state, tol).values]
        elif request.x is not None and request.y is not None:
            x = list(request.x)
            y = list(request.y)
        else:
            raise ValueError("provide either a Gaussian state or both vectors x and y")
        gap = weak_majorization_gap(x, y)
    return schemas.MajorizeResponse(gap=gap, holds=gap >= -tol.violation, x=x, y=y)


@app.post("/wstate", response_model=schemas.WstateResponse)
def wstate_endpoint(request: schemas.WstateRequest) -> schemas.WstateResponse:
    with _domain_errors():
        scan = wstate_violation(
            request.p, n_parties=request.n_parties, a1sq_grid=request.grid, base=request.base
        )
    return schemas.WstateResponse(**scan.to_dict())


@app.post("/equiv", response_model=schemas.EquivResponse)
def equiv_endpoint(request: schemas.EquivRequest) -> schemas.EquivResponse:
    with _domain_errors():
        spec = EntropySpec.from_string(request.spec, default_base=request.base)
        state = _decode_state(request.state)
        if isinstance(state, StateVector):
            state = state.density_matrix()
        report = purified_equivalence_demo(state, spec)
    return schemas.EquivResponse(**report.to_dict())


@app.post("/theorem2", response_model=schemas.Theorem2Response)
def theorem2_endpoint(request: schemas.Theorem2Request) -> schemas.Theorem2Response:
    with _domain_errors():
        state = _decode_state(request.state)
        if not isinstance(state, CovarianceMatrix):
            raise ValueError("the proof trace takes a Gaussian state")
        geometry = theorem2_geometry(state, request.partition)
        traces = [
            theorem2_trace_from_geometry(
                geometry, EntropySpec.from_string(s, default_base=request.base), request.link_tol
            )
            for s in request.specs
        ]
        if not traces:
            raise ValueError("at least one entropy spec is required")
    return schemas.Theorem2Response(
        traces=[t.to_dict() for t in traces],
        all_links_hold=all(t.all_links_hold for t in traces),
        min_polygon_slack=min(t.min_polygon_slack for t in traces),
    )


@app.post("/ghz-demo", response_model=schemas.GhzResponse)
def ghz_endpoint(request: schemas.GhzRequest) -> schemas.GhzResponse:
    with _domain_errors():
        spec = EntropySpec.from_string(request.spec, default_base=request.base)
        report = ghz_monogamy_demo(spec)
    return schemas.GhzResponse(**report.to_dict())


@app.post("/campaign", response_model=schemas.CampaignResponse)
def campaign_endpoint(request: schemas.CampaignRequest) -> schemas.CampaignResponse:
    with _domain_errors():
        specs = tuple(
            EntropySpec.from_string(s, default_base=request.base).to_string()
            for s in request.specs
        )
        config = CampaignConfig(
            system=request.system,
            relation=request.relation,
            specs=specs,
            samples=request.samples,
            seed=request.seed,
            tolerance=request.tolerance,
            workers=request.workers,
        )
        report = run_campaign(config)
    return schemas.CampaignResponse(
        config=report.config.to_dict(),
        entries=report.entries,
        total_violations=report.total_violations,
        holds=report.holds,
    )


@app.post("/table1", response_model=schemas.Table1Response)
def table1_endpoint(request: schemas.Table1Request) -> schemas.Table1Response:
    with _domain_errors():
        report = table1(samples=request.samples, seed=request.seed, workers=request.workers)
    return schemas.Table1Response(**report.to_dict())


#: path -> (handler, request model); lets the CLI run requests in process
HANDLERS = {
    "/entropy": (entropy_endpoint, schemas.EntropyRequest),
    "/polygon": (polygon_endpoint, schemas.PolygonRequest),
    "/subadd": (subadd_endpoint, schemas.SubaddRequest),
    "/marginal": (marginal_endpoint, schemas.MarginalRequest),
    "/majorize": (majorize_endpoint, schemas.MajorizeRequest),
    "/wstate": (wstate_endpoint, schemas.WstateRequest),
    "/equiv": (equiv_endpoint, schemas.EquivRequest),
    "/theorem2": (theorem2_endpoint, schemas.Theorem2Request),
    "/ghz-demo": (ghz_endpoint, schemas.GhzRequest),
    "/campaign": (campaign_endpoint, schemas.CampaignRequest),
    "/table1": (table1_endpoint, schemas.Table1Request),
}
