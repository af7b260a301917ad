"""Entropic measures for discrete spectra and symplectic spectra.

Three families are supported, written here for eigenvalues ``lam`` of a
density matrix and logarithms in a configurable base ``b``:

* von Neumann      ``S = -sum(lam * log_b(lam))``
* Renyi, order p>1 ``R_p = log_b(sum(lam**p)) / (1 - p)``
* Tsallis, order q>1 ``T_q = (1 - sum(lam**q)) / (q - 1)`` (base independent)

For a Gaussian state with symplectic eigenvalues ``s_i`` the moments
``tr(rho**x)`` factor into per-mode contributions through
``g(y, x) = 2**x / ((y+1)**x - (y-1)**x)``, which gives closed forms for
all three families.  Single-argument qubit and single-mode entropy
functions, their first two derivatives, and a sign scan over a grid are
provided for curvature analysis of entropy transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import xlogy

from .discrete import DensityMatrix, Spectrum, StateVector
from .discrete import spectrum as discrete_spectrum
from .gaussian import CovarianceMatrix, SymplecticSpectrum, symplectic_spectrum

__all__ = [
    "EntropySpec",
    "MonotonicityReport",
    "entropy_discrete",
    "entropy_gaussian",
    "entropy_of_state",
    "g_factor",
    "log_g_factor",
    "qubit_entropy_fn",
    "mode_entropy_fn",
    "derivative",
    "monotonicity_scan",
    "tsallis_from_renyi_value",
]

_FAMILIES = ("S", "R", "T")
_ORDER_KEY = {"R": "p", "T": "q"}


def _format_number(x: float) -> str:
    if abs(x - math.e) < 1e-15:
        return "e"
    return format(x, ".12g")


@dataclass(frozen=True)
class EntropySpec:
    """One entropy measure: family ``S`` | ``R`` | ``T``, order, log base.

    Renyi and Tsallis orders must exceed 1 strictly; the von Neumann family
    takes no order.  The base is ignored by the Tsallis family, which is
    base independent.
    """

    family: str
    order: float | None = None
    base: float = 2.0

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown entropy family {self.family!r}, expected one of {_FAMILIES}")
        if self.family == "S":
            if self.order is not None:
                raise ValueError("the von Neumann family takes no order parameter")
        else:
            if self.order is None:
                raise ValueError(f"family {self.family!r} requires an order parameter")
            order = float(self.order)
            if not math.isfinite(order) or order <= 1.0:
                raise ValueError(f"entropy order must be a finite number above 1, got {self.order}")
            object.__setattr__(self, "order", order)
        base = float(self.base)
        if not math.isfinite(base) or base <= 1.0:
            raise ValueError(f"log base must be a finite number above 1, got {self.base}")
        object.__setattr__(self, "base", base)

    @classmethod
    def from_string(cls, text: str, default_base: float = 2.0) -> "EntropySpec":
        """Parse ``"S"``, ``"R:p=2"``, ``"T:q=1.5"``, optionally with ``:b=<base>``.

        The base token accepts ``e`` for natural logarithms.
        """
        tokens = text.strip().split(":")
        family = tokens[0]
        if family not in _FAMILIES:
            raise ValueError(f"unknown entropy family {family!r} in spec {text!r}")
        order: float | None = None
        base = float(default_base)
        for token in tokens[1:]:
            key, sep, value = token.partition("=")
            if not sep or not value:
                raise ValueError(f"malformed token {token!r} in spec {text!r}")
            if key == "b":
                base = math.e if value == "e" else float(value)
            elif key == _ORDER_KEY.get(family):
                order = float(value)
            else:
                raise ValueError(f"unexpected key {key!r} for family {family!r} in spec {text!r}")
        return cls(family, order, base)

    def to_string(self) -> str:
        """Canonical form; the default base 2 and the Tsallis base are omitted."""
        parts = [self.family]
        if self.family != "S":
            parts.append(f"{_ORDER_KEY[self.family]}={_format_number(self.order)}")
        if self.family != "T" and self.base != 2.0:
            parts.append(f"b={_format_number(self.base)}")
        return ":".join(parts)


def _clamp_tiny_negative(value: float) -> float:
    # roundoff can push an exact zero a few ulp below it
    if -1e-12 <= value < 0.0:
        return 0.0
    return value + 0.0  # normalizes -0.0


def _as_values(spectrum: Spectrum | SymplecticSpectrum | Sequence[float]) -> np.ndarray:
    return np.asarray(getattr(spectrum, "values", spectrum), dtype=np.float64)


def entropy_discrete(spectrum: Spectrum | Sequence[float], spec: EntropySpec) -> float:
    """Entropy of a discrete spectrum (eigenvalues summing to 1)."""
    lam = _as_values(spectrum)
    ln_b = math.log(spec.base)
    if spec.family == "S":
        return _clamp_tiny_negative(float(-np.sum(xlogy(lam, lam))) / ln_b)
    moment = float(np.sum(lam**spec.order))
    if spec.family == "R":
        return _clamp_tiny_negative(math.log(moment) / ((1.0 - spec.order) * ln_b))
    return _clamp_tiny_negative((1.0 - moment) / (spec.order - 1.0))


def log_g_factor(y: float | np.ndarray, x: float) -> float | np.ndarray:
    """``log(g(y, x))`` in a form stable for y near 1 and for large y."""
    y = np.maximum(np.asarray(y, dtype=np.float64), 1.0)
    ratio = (y - 1.0) / (y + 1.0)
    out = x * math.log(2.0) - x * np.log(y + 1.0) - np.log1p(-(ratio**x))
    return out if out.ndim else float(out)


def g_factor(y: float, x: float) -> float:
    """Per-mode moment factor ``2**x / ((y+1)**x - (y-1)**x)``.

    ``tr(rho**x)`` of a Gaussian state is the product of ``g(s_i, x)`` over
    its symplectic eigenvalues.  ``g(1, x) = 1`` and ``g(y, 2) = 1/y``.
    """
    return float(np.exp(log_g_factor(y, x)))


def entropy_gaussian(spectrum: SymplecticSpectrum | Sequence[float], spec: EntropySpec) -> float:
    """Entropy of a Gaussian state given its symplectic spectrum."""
    s = _as_values(spectrum)
    if np.any(s < 1.0 - 1e-8):
        raise ValueError(f"symplectic eigenvalues must be >= 1, got minimum {float(s.min()):.12g}")
    s = np.maximum(s, 1.0)
    ln_b = math.log(spec.base)
    if spec.family == "S":
        a = (s + 1.0) / 2.0
        b = (s - 1.0) / 2.0
        return _clamp_tiny_negative(float(np.sum(xlogy(a, a) - xlogy(b, b))) / ln_b)
    log_moment = float(np.sum(log_g_factor(s, spec.order)))
    if spec.family == "R":
        return _clamp_tiny_negative(log_moment / ((1.0 - spec.order) * ln_b))
    return _clamp_tiny_negative(-math.expm1(log_moment) / (spec.order - 1.0))


def entropy_of_state(
    state: StateVector | DensityMatrix | CovarianceMatrix, spec: EntropySpec
) -> float:
    """Entropy of a state object; pure state vectors give exactly 0."""
    if isinstance(state, StateVector):
        return 0.0
    if isinstance(state, DensityMatrix):
        return entropy_discrete(discrete_spectrum(state), spec)
    if isinstance(state, CovarianceMatrix):
        return entropy_gaussian(symplectic_spectrum(state), spec)
    raise TypeError(f"unsupported state type {type(state).__name__}")


def qubit_entropy_fn(lam: float, spec: EntropySpec) -> float:
    """Marginal entropy of a qubit as a function of one eigenvalue ``lam``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"qubit eigenvalue must lie in [0, 1], got {lam}")
    return entropy_discrete(np.array([max(lam, 1.0 - lam), min(lam, 1.0 - lam)]), spec)


def mode_entropy_fn(s: float, spec: EntropySpec) -> float:
    """Entropy of a single mode as a function of its symplectic eigenvalue."""
    if s < 1.0 - 1e-8:
        raise ValueError(f"symplectic eigenvalue must be >= 1, got {s}")
    return entropy_gaussian(np.array([max(s, 1.0)]), spec)


def _qubit_derivative(lam: float, spec: EntropySpec, order: int) -> float:
    ln_b = math.log(spec.base)
    if spec.family == "S":
        if order == 1:
            return (math.log1p(-lam) - math.log(lam)) / ln_b
        return -(1.0 / lam + 1.0 / (1.0 - lam)) / ln_b
    p = spec.order
    if spec.family == "R":
        u = lam**p + (1.0 - lam) ** p
        a = (1.0 - lam) ** (p - 1.0) - lam ** (p - 1.0)
        if order == 1:
            return p * a / ((p - 1.0) * u * ln_b)
        b = (1.0 - lam) ** (p - 2.0) + lam ** (p - 2.0)
        return p * (p * a * a - (p - 1.0) * b * u) / ((p - 1.0) * u * u * ln_b)
    # Tsallis: base independent
    if order == 1:
        return p * ((1.0 - lam) ** (p - 1.0) - lam ** (p - 1.0)) / (p - 1.0)
    return -p * ((1.0 - lam) ** (p - 2.0) + lam ** (p - 2.0))


def _mode_derivative(s: float, spec: EntropySpec, order: int) -> float:
    ln_b = math.log(spec.base)
    a = s + 1.0
    b = s - 1.0
    if spec.family == "S":
        if order == 1:
            return math.log(a / b) / (2.0 * ln_b)
        return -1.0 / (a * b * ln_b)
    p = spec.order
    if spec.family == "R":
        v = a**p - b**p
        v1 = p * (a ** (p - 1.0) - b ** (p - 1.0))
        if order == 1:
            return v1 / ((p - 1.0) * v * ln_b)
        v2 = p * (p - 1.0) * (a ** (p - 2.0) - b ** (p - 2.0))
        return (v2 * v - v1 * v1) / ((p - 1.0) * v * v * ln_b)
    w = a**p - b**p
    w1 = p * (a ** (p - 1.0) - b ** (p - 1.0))
    if order == 1:
        return 2.0**p * w1 / ((p - 1.0) * w * w)
    w2 = p * (p - 1.0) * (a ** (p - 2.0) - b ** (p - 2.0))
    return 2.0**p * (w2 * w - 2.0 * w1 * w1) / ((p - 1.0) * w**3)


def derivative(kind: str, spec: EntropySpec, order: int, point: float) -> float:
    """Closed-form derivative of the qubit or single-mode entropy function.

    ``kind`` is ``"qubit"`` (argument an eigenvalue in the open interval
    (0, 1)) or ``"mode"`` (argument a symplectic eigenvalue above 1); both
    endpoints are singular for at least one family.  ``order`` is 1 or 2.
    """
    if order not in (1, 2):
        raise ValueError(f"derivative order must be 1 or 2, got {order}")
    kind = {"qubit_f": "qubit", "mode_g": "mode"}.get(kind, kind)
    if kind == "qubit":
        if not 0.0 < point < 1.0:
            raise ValueError(f"qubit derivatives need a point inside (0, 1), got {point}")
        return _qubit_derivative(float(point), spec, order)
    if kind == "mode":
        if point <= 1.0:
            raise ValueError(f"mode derivatives need a point above 1, got {point}")
        return _mode_derivative(float(point), spec, order)
    raise ValueError(f"unknown derivative kind {kind!r}, expected 'qubit' or 'mode'")


@dataclass(frozen=True)
class MonotonicityReport:
    """Sign survey of an entropy function's first two derivatives on a grid."""

    kind: str
    spec: str
    n_points: int
    nondecreasing: bool
    concave: bool
    n_decreasing_points: int
    n_convex_points: int
    max_second_derivative: float
    argmax_second_derivative: float

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "spec": self.spec,
            "n_points": self.n_points,
            "nondecreasing": self.nondecreasing,
            "concave": self.concave,
            "n_decreasing_points": self.n_decreasing_points,
            "n_convex_points": self.n_convex_points,
            "max_second_derivative": self.max_second_derivative,
            "argmax_second_derivative": self.argmax_second_derivative,
        }


def monotonicity_scan(
    kind: str,
    spec: EntropySpec,
    grid: Sequence[float] | None = None,
    sign_tol: float = 1e-9,
) -> MonotonicityReport:
    """Evaluate both derivatives on a grid and report where signs break.

    The default qubit grid is log-spaced on (0, 1/2) so curvature changes
    near 0 (where some Renyi orders turn convex) are not missed.
    """
    kind = {"qubit_f": "qubit", "mode_g": "mode"}.get(kind, kind)
    if grid is None:
        if kind == "qubit":
            grid = np.geomspace(1e-4, 0.4999, 256)
        else:
            grid = 1.0 + np.geomspace(1e-4, 9.0, 256)
    points = np.asarray(grid, dtype=np.float64)
    first = np.array([derivative(kind, spec, 1, x) for x in points])
    second = np.array([derivative(kind, spec, 2, x) for x in points])
    n_dec = int(np.count_nonzero(first < -sign_tol))
    n_cvx = int(np.count_nonzero(second > sign_tol))
    idx = int(np.argmax(second))
    return MonotonicityReport(
        kind=kind,
        spec=spec.to_string(),
        n_points=points.size,
        nondecreasing=n_dec == 0,
        concave=n_cvx == 0,
        n_decreasing_points=n_dec,
        n_convex_points=n_cvx,
        max_second_derivative=float(second[idx]),
        argmax_second_derivative=float(points[idx]),
    )


def tsallis_from_renyi_value(renyi_value: float, q: float, base: float) -> float:
    """Map a Renyi-q value to the Tsallis-q value of the same spectrum.

    Uses ``T_q = (1 - base**((1-q) R_q)) / (q - 1)`` in expm1 form.
    """
    return -math.expm1((1.0 - q) * renyi_value * math.log(base)) / (q - 1.0)
