"""Command-line client for the entropy-relation toolkit.

Each command builds the same request payload the HTTP service accepts and
either calls the handler in process (the default) or posts it to a running
server given with ``--server``.  Exit codes: 0 when the checked relation
holds (or the output is informational), 3 when a violation was found,
2 for usage errors, 1 for runtime failures.
"""

from __future__ import annotations

import json

import click
import httpx
from fastapi import HTTPException
from pydantic import ValidationError

from .campaigns import DEFAULT_CAMPAIGN_SPECS, RELATIONS
from .config import DEFAULT_SEED
from .entropy import EntropySpec
from .serialize import dumps_json, report_csv
from .service.app import HANDLERS


def _parse_spec(text: str, base: float) -> str:
    try:
        return EntropySpec.from_string(text, default_base=base).to_string()
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _parse_ints(text: str | None, flag: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise click.UsageError(f"{flag} expects comma-separated integers, got {text!r}")


def _parse_floats(text: str | None, flag: str) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise click.UsageError(f"{flag} expects comma-separated numbers, got {text!r}")


def _load_state(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise click.ClickException(f"cannot read state file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise click.ClickException(f"state file {path} is not valid JSON: {exc}")
    if not isinstance(payload, dict):
        raise click.ClickException(f"state file {path} must hold a JSON object")
    return payload


def _dispatch(ctx: click.Context, path: str, payload: dict) -> dict:
    server = ctx.obj.get("server")
    if server:
        try:
            response = httpx.post(server.rstrip("/") + path, json=payload, timeout=None)
        except httpx.HTTPError as exc:
            raise click.ClickException(f"request to {server} failed: {exc}")
        if response.status_code != 200:
            raise click.ClickException(
                f"server returned {response.status_code}: {response.text.strip()}"
            )
        return response.json()
    handler, model = HANDLERS[path]
    try:
        request = model.model_validate(payload)
    except ValidationError as exc:
        raise click.UsageError(str(exc))
    try:
        return handler(request).model_dump(mode="json")
    except HTTPException as exc:
        raise click.ClickException(str(exc.detail))


def _emit(data: dict, out: str | None, fmt: str, kind: str) -> None:
    text = dumps_json(data) if fmt == "json" else report_csv(kind, data)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _output_options(f):
    f = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default="json",
        show_default=True,
        help="Report format.",
    )(f)
    f = click.option("--out", default=None, help="Write the report to this file instead of stdout.")(f)
    return f


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; default runs in process.")
@click.version_option()
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Entropic polygon relations and subadditivity for quantum states."""
    ctx.obj = {"server": server}


@main.command()
@click.option("--state", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--spec", default="S", show_default=True, help="Entropy spec, e.g. S, R:p=2, T:q=1.5.")
@click.option("--base", default=2.0, show_default=True)
@_output_options
@click.pass_context
def entropy(ctx, state, spec, base, out, fmt):
    """Entropy of a state file."""
    payload = {"state": _load_state(state), "spec": _parse_spec(spec, base), "base": base}
    _emit(_dispatch(ctx, "/entropy", payload), out, fmt, "entropy")


@main.command()
@click.option("--state", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--partition", default=None, help="Comma-separated party sizes, e.g. 1,1,1.")
@click.option("--spec", default="S", show_default=True)
@click.option("--base", default=2.0, show_default=True)
@click.option("--tol", default=None, type=float, help="Violation tolerance override.")
@_output_options
@click.pass_context
def polygon(ctx, state, partition, spec, base, tol, out, fmt):
    """One-to-rest polygon check on a pure state file."""
    payload = {
        "state": _load_state(state),
        "spec": _parse_spec(spec, base),
        "base": base,
        "partition": _parse_ints(partition, "--partition"),
        "tolerance": tol,
    }
    data = _dispatch(ctx, "/polygon", payload)
    _emit(data, out, fmt, "polygon")
    if not data["holds"]:
        ctx.exit(3)


@main.command()
@click.option("--state", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--system", default=None, help="System descriptor for a random campaign.")
@click.option("--partition", default=None)
@click.option("--spec", default="S", show_default=True)
@click.option("--base", default=2.0, show_default=True)
@click.option("--samples", default=1000, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option("--tol", default=None, type=float)
@click.option("--workers", default=1, show_default=True)
@_output_options
@click.pass_context
def subadd(ctx, state, system, partition, spec, base, samples, seed, tol, workers, out, fmt):
    """Subadditivity check on a state file or over a random campaign."""
    if (state is None) == (system is None):
        raise click.UsageError("provide exactly one of --state or --system")
    spec_key = _parse_spec(spec, base)
    if state is not None:
        payload = {
            "state": _load_state(state),
            "spec": spec_key,
            "base": base,
            "partition": _parse_ints(partition, "--partition"),
            "tolerance": tol,
        }
        data = _dispatch(ctx, "/subadd", payload)
        _emit(data, out, fmt, "subadd")
        if not data["holds"]:
            ctx.exit(3)
        return
    data = _run_campaign_payload(
        ctx, system, "subadd", (spec_key,), samples, seed, tol, workers, base
    )
    _emit(data, out, fmt, "campaign")
    if not data["holds"]:
        ctx.exit(3)


def _run_campaign_payload(ctx, system, relation, specs, samples, seed, tol, workers, base) -> dict:
    payload = {
        "system": system,
        "relation": relation,
        "specs": list(specs),
        "samples": samples,
        "seed": seed,
        "workers": workers,
        "base": base,
    }
    if tol is not None:
        payload["tolerance"] = tol
    return _dispatch(ctx, "/campaign", payload)


@main.command()
@click.option("--state", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--values", default=None, help="Raw marginal values, comma separated.")
@click.option("--kind", default=None, type=click.Choice(["qubit", "gaussian"]))
@click.option("--system", default=None)
@click.option("--samples", default=1000, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option("--tol", default=None, type=float)
@click.option("--workers", default=1, show_default=True)
@_output_options
@click.pass_context
def marginal(ctx, state, values, kind, system, samples, seed, tol, workers, out, fmt):
    """Marginal inequality on spectra of a pure state (no entropy involved)."""
    modes = sum(x is not None for x in (state, values, system))
    if modes != 1:
        raise click.UsageError("provide exactly one of --state, --values or --system")
    if system is not None:
        if system.startswith("qubits"):
            relation = "qubit_marginal"
        elif system.startswith("gaussian"):
            relation = "gaussian_marginal"
        else:
            raise click.UsageError("marginal campaigns need a qubits: or gaussian: system")
        data = _run_campaign_payload(ctx, system, relation, (), samples, seed, tol, workers, 2.0)
        _emit(data, out, fmt, "campaign")
        if not data["holds"]:
            ctx.exit(3)
        return
    payload: dict = {"tolerance": tol}
    if state is not None:
        payload["state"] = _load_state(state)
    else:
        if kind is None:
            raise click.UsageError("--values requires --kind")
        payload["values"] = _parse_floats(values, "--values")
        payload["kind"] = kind
    data = _dispatch(ctx, "/marginal", payload)
    _emit(data, out, fmt, "marginal")
    if not data["holds"]:
        ctx.exit(3)


@main.command()
@click.option("--x", "x_values", default=None, help="Candidate dominating vector, comma separated.")
@click.option("--y", "y_values", default=None, help="Dominated vector, comma separated.")
@click.option("--state", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--tol", default=None, type=float)
@_output_options
@click.pass_context
def majorize(ctx, x_values, y_values, state, tol, out, fmt):
    """Weak majorization of ascending partial sums (x over y)."""
    if (state is None) == (x_values is None or y_values is None):
        raise click.UsageError("provide either --state or both --x and --y")
    payload: dict = {"tolerance": tol}
    if state is not None:
        payload["state"] = _load_state(state)
    else:
        payload["x"] = _parse_floats(x_values, "--x")
        payload["y"] = _parse_floats(y_values, "--y")
    data = _dispatch(ctx, "/majorize", payload)
    _emit(data, out, fmt, "majorize")
    if not data["holds"]:
        ctx.exit(3)


@main.command()
@click.option("--p", required=True, type=float, help="Renyi order; must exceed 2.")
@click.option("--n", "n_parties", default=3, show_default=True)
@click.option("--grid", default=None, help="a1 squared grid points, comma separated.")
@click.option("--base", default=2.0, show_default=True)
@_output_options
@click.pass_context
def wstate(ctx, p, n_parties, grid, base, out, fmt):
    """Scan single-excitation states for Renyi polygon violations."""
    if p <= 2.0:
        raise click.UsageError(f"Renyi polygon violations require order above 2, got {p}")
    payload = {
        "p": p,
        "n_parties": n_parties,
        "grid": _parse_floats(grid, "--grid"),
        "base": base,
    }
    data = _dispatch(ctx, "/wstate", payload)
    _emit(data, out, fmt, "wstate")
    if data["n_violations"] > 0:
        ctx.exit(3)


@main.command()
@click.option("--state", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--spec", default="S", show_default=True)
@click.option("--base", default=2.0, show_default=True)
@_output_options
@click.pass_context
def equiv(ctx, state, spec, base, out, fmt):
    """Polygon-at-ancilla versus subadditivity slack on a two-party state."""
    payload = {"state": _load_state(state), "spec": _parse_spec(spec, base), "base": base}
    data = _dispatch(ctx, "/equiv", payload)
    _emit(data, out, fmt, "equiv")
    if not data["slacks_match"]:
        ctx.exit(3)


@main.command()
@click.option("--state", default=None, type=click.Path(exists=True, dir_okay=False))
@click.option("--partition", default=None, help="Comma-separated mode counts per party.")
@click.option("--system", default=None)
@click.option("--spec", "specs", multiple=True, help="Repeatable; defaults to S.")
@click.option("--base", default=2.0, show_default=True)
@click.option("--samples", default=1000, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option("--tol", default=None, type=float)
@click.option("--workers", default=1, show_default=True)
@_output_options
@click.pass_context
def theorem2(ctx, state, partition, system, specs, base, samples, seed, tol, workers, out, fmt):
    """Audit the Gaussian polygon proof chain on a state or over a campaign."""
    if (state is None) == (system is None):
        raise click.UsageError("provide exactly one of --state or --system")
    spec_keys = tuple(_parse_spec(s, base) for s in specs) or ("S",)
    if state is not None:
        parts = _parse_ints(partition, "--partition")
        if parts is None:
            raise click.UsageError("--state mode requires --partition")
        payload = {
            "state": _load_state(state),
            "partition": parts,
            "specs": list(spec_keys),
            "base": base,
        }
        data = _dispatch(ctx, "/theorem2", payload)
        _emit(data, out, fmt, "theorem2")
        if not data["all_links_hold"]:
            ctx.exit(3)
        return
    data = _run_campaign_payload(ctx, system, "theorem2", spec_keys, samples, seed, tol, workers, base)
    _emit(data, out, fmt, "campaign")
    if not data["holds"]:
        ctx.exit(3)


@main.command("ghz-demo")
@click.option("--spec", default="S", show_default=True)
@click.option("--base", default=2.0, show_default=True)
@_output_options
@click.pass_context
def ghz_demo(ctx, spec, base, out, fmt):
    """Separable-marginal demonstration on the three-qubit cat state."""
    payload = {"spec": _parse_spec(spec, base), "base": base}
    data = _dispatch(ctx, "/ghz-demo", payload)
    _emit(data, out, fmt, "ghz-demo")


@main.command()
@click.option("--system", required=True)
@click.option("--relation", required=True, type=click.Choice(list(RELATIONS)))
@click.option("--spec", "specs", multiple=True, help="Repeatable; default S, R:p=2, T:q=2.")
@click.option("--base", default=2.0, show_default=True)
@click.option("--samples", default=1000, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option("--tol", default=None, type=float)
@click.option("--workers", default=1, show_default=True)
@_output_options
@click.pass_context
def campaign(ctx, system, relation, specs, base, samples, seed, tol, workers, out, fmt):
    """Random-state campaign over a system class."""
    if relation in ("qubit_marginal", "gaussian_marginal", "majorize"):
        spec_keys: tuple[str, ...] = ()
        if specs:
            raise click.UsageError(f"relation {relation} takes no entropy specs")
    else:
        spec_keys = tuple(_parse_spec(s, base) for s in specs) or tuple(
            _parse_spec(s, base) for s in DEFAULT_CAMPAIGN_SPECS
        )
    data = _run_campaign_payload(ctx, system, relation, spec_keys, samples, seed, tol, workers, base)
    _emit(data, out, fmt, "campaign")
    if not data["holds"]:
        ctx.exit(3)


@main.command()
@click.option("--samples", default=2000, show_default=True)
@click.option("--seed", default=DEFAULT_SEED, show_default=True)
@click.option("--workers", default=1, show_default=True)
@_output_options
@click.pass_context
def table1(ctx, samples, seed, workers, out, fmt):
    """Full verdict matrix: campaigns plus explicit counterexamples."""
    payload = {"samples": samples, "seed": seed, "workers": workers}
    data = _dispatch(ctx, "/table1", payload)
    _emit(data, out, fmt, "table1")
    if not data["matches_expected"]:
        ctx.exit(3)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
