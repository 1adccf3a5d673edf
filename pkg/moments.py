"""
Scaled Boltzmann moment integrals.

Evaluates A_k(eta) = int_0^1 z^k exp(-eta z^2) dz for even k over the
full range of eta without overflow:

- eta >= 0: A_k itself is stored (it lies in (0, 1]).
- eta < 0: exp(eta) A_k = int_0^1 z^k exp(eta (1 - z^2)) dz is stored
  (also in (0, 1]); the raw A_k would overflow near eta = -710.

Everything downstream consumes only the ratios r_k = A_k / A_0 and
q = exp(-eta) / A_0, which do not depend on the scaling.

Paths:
- |eta| <= 0.5: Taylor series in eta.
- otherwise: composite 32-point Gauss-Legendre on panels graded towards the
  boundary layer (z = 0 for eta > 0, z = 1 for eta < 0), evaluated once on
  the panels and once on the bisected panels; the bisected value is kept and
  the difference is the self-check.
- optional: A_0 from erf (eta > 0) or Dawson's integral (eta < 0).

The recurrence (k+1) A_k - 2 eta A_{k+2} = exp(-eta) is only ever used as a
residual check, never to generate moments.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from config import (
    DEFAULT_KMAX,
    FD_RELATIVE_STEP,
    GAUSS_NODES_PER_PANEL,
    GRID_CHUNK,
    MIN_KMAX,
    PANEL_DOUBLINGS_NEGATIVE,
    PANEL_DOUBLINGS_POSITIVE,
    QUADRATURE_SELF_CHECK_TOL,
    SERIES_ETA_LIMIT,
    SERIES_MAX_TERMS,
    SERIES_TERM_CUTOFF,
    USE_SPECIAL_FUNCTIONS,
)
from exceptions import ArgumentError, DomainError
from models import MomentSet


logger = logging.getLogger(__name__)

METHODS = ("auto", "series", "quadrature", "special")

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_NODES_PER_PANEL)


def _even_indices(kmax: int) -> np.ndarray:
    return np.arange(0, kmax + 1, 2)


def _validate(eta: float, kmax: int) -> None:
    if not math.isfinite(eta):
        raise DomainError(f"eta must be finite, got {eta!r}")
    if int(kmax) != kmax or kmax % 2 != 0 or kmax < MIN_KMAX:
        raise ArgumentError(f"kmax must be an even integer >= {MIN_KMAX}, got {kmax!r}")


# ---------------------------------------------------------------------------
# Series path
# ---------------------------------------------------------------------------


def _series_scaled(etas: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """
    A_k(eta) = sum_n (-eta)^n / (n! (2n + k + 1)), scaled by exp(eta) for eta < 0.

    Returns an array of shape (len(etas), len(ks)).
    """
    etas = np.asarray(etas, dtype=float)
    term = np.ones_like(etas)
    total = np.zeros((etas.size, ks.size))
    for n in range(SERIES_MAX_TERMS):
        contrib = term[:, None] / (2.0 * n + ks[None, :] + 1.0)
        total += contrib
        if np.max(np.abs(contrib), initial=0.0) < SERIES_TERM_CUTOFF:
            break
        term = term * (-etas) / (n + 1.0)
    else:
        logger.warning("moment series did not reach cutoff after %d terms", SERIES_MAX_TERMS)
    return total * np.exp(np.minimum(etas, 0.0))[:, None]


# ---------------------------------------------------------------------------
# Composite Gauss-Legendre path
# ---------------------------------------------------------------------------


def _panel_edges(etas: np.ndarray, positive: bool) -> np.ndarray:
    """
    Panel edges, one row per eta, in the integration variable.

    eta > 0 integrates in z with layer scale 1/sqrt(eta) at z = 0;
    eta < 0 integrates in u = 1 - z with layer scale 1/(2|eta|) at u = 0.
    Edges sit at scale * 2^j and are clipped to the unit interval, so panels
    past z = 1 (u = 1) collapse to zero width.
    """
    if positive:
        scale = 1.0 / np.sqrt(etas)
        doublings = PANEL_DOUBLINGS_POSITIVE
    else:
        scale = 1.0 / (2.0 * np.abs(etas))
        doublings = PANEL_DOUBLINGS_NEGATIVE
    offsets = scale[:, None] * 2.0 ** np.arange(-1, doublings)[None, :]
    n = etas.size
    return np.hstack([np.zeros((n, 1)), np.minimum(offsets, 1.0), np.ones((n, 1))])


def _bisect_panels(edges: np.ndarray) -> np.ndarray:
    refined = np.empty((edges.shape[0], 2 * edges.shape[1] - 1))
    refined[:, ::2] = edges
    refined[:, 1::2] = 0.5 * (edges[:, :-1] + edges[:, 1:])
    return refined


def _gauss_on_edges(etas: np.ndarray, edges: np.ndarray, ks: np.ndarray, positive: bool) -> np.ndarray:
    mid = 0.5 * (edges[:, 1:] + edges[:, :-1])
    half = 0.5 * (edges[:, 1:] - edges[:, :-1])
    x = mid[..., None] + half[..., None] * _GL_NODES
    w = half[..., None] * _GL_WEIGHTS
    if positive:
        z = x
        weight = w * np.exp(-etas[:, None, None] * z * z)
    else:
        # exp(eta (1 - z^2)) with 1 - z^2 = u (2 - u), exact near z = 1
        z = 1.0 - x
        weight = w * np.exp(etas[:, None, None] * x * (2.0 - x))
    z2 = z * z
    out = np.empty((etas.size, ks.size))
    power = np.ones_like(z)
    for i, k in enumerate(ks):
        if i > 0:
            power = power * z2 ** ((k - ks[i - 1]) // 2)
        out[:, i] = np.sum(weight * power, axis=(1, 2))
    return out


def _quadrature_scaled(etas: np.ndarray, ks: np.ndarray, self_check: bool = True) -> np.ndarray:
    """Scaled moments on the graded panels; etas must be nonzero."""
    etas = np.asarray(etas, dtype=float)
    out = np.empty((etas.size, ks.size))
    for positive, mask in ((True, etas > 0), (False, etas < 0)):
        if not np.any(mask):
            continue
        sub = etas[mask]
        edges = _panel_edges(sub, positive)
        if not self_check:
            out[mask] = _gauss_on_edges(sub, edges, ks, positive)
            continue
        coarse = _gauss_on_edges(sub, edges, ks, positive)
        fine = _gauss_on_edges(sub, _bisect_panels(edges), ks, positive)
        delta = float(np.max(np.abs(fine - coarse) / fine))
        if delta > QUADRATURE_SELF_CHECK_TOL:
            logger.warning(
                "moment quadrature self-check %.3e exceeds %.1e (eta in [%g, %g])",
                delta,
                QUADRATURE_SELF_CHECK_TOL,
                float(sub.min()),
                float(sub.max()),
            )
        else:
            logger.debug("moment quadrature self-check %.3e", delta)
        out[mask] = fine
    return out


# ---------------------------------------------------------------------------
# Special-function path for A_0
# ---------------------------------------------------------------------------


def special_a0(eta: float) -> float:
    """
    Scaled A_0 in closed form.

    eta > 0: sqrt(pi) erf(sqrt(eta)) / (2 sqrt(eta)).
    eta < 0: D(sqrt(-eta)) / sqrt(-eta), D being Dawson's integral; this is
    already exp(eta) A_0.
    """
    if eta == 0.0:
        return 1.0
    root = math.sqrt(abs(eta))
    if eta > 0:
        return float(math.sqrt(math.pi) * special.erf(root) / (2.0 * root))
    return float(special.dawsn(root) / root)


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def _assemble(eta: float, kmax: int, ks: np.ndarray, scaled_row: Sequence[float]) -> MomentSet:
    scaled: Dict[int, float] = {int(k): float(v) for k, v in zip(ks, scaled_row)}
    s0 = scaled[0]
    ratios = {k: (1.0 if k == 0 else v / s0) for k, v in scaled.items()}
    log_s0 = math.log(s0)
    if eta < 0:
        q = 1.0 / s0
        log_a0 = log_s0 - eta
    else:
        q = math.exp(-eta - log_s0)
        log_a0 = log_s0
    return MomentSet(eta=eta, kmax=int(kmax), scaled=scaled, ratios=ratios, q=q, log_a0=log_a0)


def _resolve_method(eta: float, method: str) -> str:
    if method not in METHODS:
        raise ArgumentError(f"unknown moment method {method!r}; expected one of {METHODS}")
    if method == "auto" and USE_SPECIAL_FUNCTIONS:
        return "special"
    if method == "auto":
        return "series" if abs(eta) <= SERIES_ETA_LIMIT else "quadrature"
    if method == "quadrature" and eta == 0.0:
        # the graded panels need a nonzero layer scale
        return "series"
    return method


def compute_moments(eta: float, kmax: int = DEFAULT_KMAX, method: str = "auto") -> MomentSet:
    """
    Evaluate the scaled moments A_0, A_2, ..., A_kmax at eta.

    Args:
        eta: Finite concentration parameter.
        kmax: Even integer >= 6.
        method: 'auto', 'series', 'quadrature' or 'special'.

    Raises:
        DomainError: eta is not finite.
        ArgumentError: kmax is odd or too small, or the method is unknown.
    """
    eta = float(eta)
    _validate(eta, kmax)
    ks = _even_indices(int(kmax))
    chosen = _resolve_method(eta, method)
    arr = np.array([eta])

    if chosen == "series":
        row = _series_scaled(arr, ks)[0]
    elif chosen == "quadrature":
        row = _quadrature_scaled(arr, ks)[0]
    else:
        base = "series" if abs(eta) <= SERIES_ETA_LIMIT or eta == 0.0 else "quadrature"
        row = (_series_scaled(arr, ks) if base == "series" else _quadrature_scaled(arr, ks))[0].copy()
        row[0] = special_a0(eta)
    return _assemble(eta, int(kmax), ks, row)


def moment_grid(
    etas: Sequence[float],
    kmax: int = 0,
    self_check: bool = False,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Scaled moments on an array of eta values.

    Unlike compute_moments this accepts kmax = 0 (A_0 only), which is all
    B itself needs on dense scans.

    Returns:
        (scaled, q) with scaled of shape (n, kmax/2 + 1) and q of shape (n,).
    """
    etas = np.asarray(etas, dtype=float).ravel()
    if not np.all(np.isfinite(etas)):
        raise DomainError("every eta must be finite")
    if int(kmax) != kmax or kmax % 2 != 0 or kmax < 0:
        raise ArgumentError(f"kmax must be a non-negative even integer, got {kmax!r}")
    ks = _even_indices(int(kmax))
    scaled = np.empty((etas.size, ks.size))
    small = np.abs(etas) <= SERIES_ETA_LIMIT
    for start in range(0, etas.size, GRID_CHUNK):
        block = slice(start, start + GRID_CHUNK)
        sub, sub_small = etas[block], small[block]
        part = np.empty((sub.size, ks.size))
        if np.any(sub_small):
            part[sub_small] = _series_scaled(sub[sub_small], ks)
        if np.any(~sub_small):
            part[~sub_small] = _quadrature_scaled(sub[~sub_small], ks, self_check=self_check)
        scaled[block] = part
    s0 = scaled[:, 0]
    with np.errstate(under="ignore"):
        q = np.where(etas < 0, 1.0 / s0, np.exp(-np.maximum(etas, 0.0) - np.log(s0)))
    return scaled, q


def recurrence_residual(moments: MomentSet, k: int) -> float:
    """
    |(k+1) s_k - 2 eta s_{k+2} - E| / max(|s_k|, E) in the stored scaling.

    E is exp(-eta) for eta >= 0 and 1 for eta < 0.
    """
    if k + 2 > moments.kmax:
        raise ArgumentError(f"k={k} needs moments up to {k + 2}, have kmax={moments.kmax}")
    s_k = moments.scaled[k]
    s_k2 = moments.scaled[k + 2]
    rhs = moments.recurrence_rhs
    residual = abs((k + 1) * s_k - 2.0 * moments.eta * s_k2 - rhs)
    return residual / max(abs(s_k), rhs)


def mean_value_bound(eta: float) -> float:
    """Upper bound on 3 exp(-eta) / A_0: 3 for eta > 0, 3 (1 - 2 eta) otherwise."""
    return 3.0 if eta > 0 else 3.0 * (1.0 - 2.0 * eta)


def relative_moment(moments: MomentSet, k: int, reference: MomentSet) -> float:
    """A_k at moments.eta divided by A_0 at reference.eta, without unscaling either."""
    return (
        moments.scaled[k]
        / reference.scaled[0]
        * math.exp(moments.scale_exponent - reference.scale_exponent)
    )


def moment_derivative_check(eta: float, k: int, h: Optional[float] = None) -> float:
    """
    Check d/deta A_k = -A_{k+2} by a centred difference.

    Returns |(A_k(eta+h) - A_k(eta-h)) / (2h) + A_{k+2}(eta)| / A_0(eta).
    """
    if k < 0 or k % 2 != 0:
        raise ArgumentError(f"k must be a non-negative even integer, got {k!r}")
    if h is None:
        h = FD_RELATIVE_STEP * max(1.0, abs(eta))
    if not h > 0:
        raise ArgumentError(f"step h must be positive, got {h!r}")
    kmax = max(MIN_KMAX, k + 2)
    centre = compute_moments(eta, kmax)
    plus = compute_moments(eta + h, kmax)
    minus = compute_moments(eta - h, kmax)
    fd = (relative_moment(plus, k, centre) - relative_moment(minus, k, centre)) / (2.0 * h)
    return abs(fd + centre.ratios[k + 2])


__all__ = [
    "METHODS",
    "compute_moments",
    "moment_grid",
    "moment_derivative_check",
    "recurrence_residual",
    "mean_value_bound",
    "relative_moment",
    "special_a0",
]
