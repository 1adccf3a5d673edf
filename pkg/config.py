"""
Application-wide configuration constants.

Note: This module intentionally avoids importing numpy or click
to keep configuration decoupled from the numerics and the CLI layer.
Only a handful of values can be overridden from the environment; there
are no configuration files.
"""

import os
from typing import Tuple


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _env_bool(name: str, default: bool) -> bool:
    raw = os.environ.get(name, "").strip().lower()
    if not raw:
        return default
    return raw in {"1", "true", "yes", "on"}


# App metadata
APP_NAME: str = "ms-kit"
APP_DESCRIPTION: str = "Maier-Saupe bifurcation function: zeros, critical intensities, branch tables."

# Moment integrals A_k(eta) = int_0^1 z^k exp(-eta z^2) dz
DEFAULT_KMAX: int = 6
MIN_KMAX: int = 6
SERIES_ETA_LIMIT: float = 0.5
SERIES_TERM_CUTOFF: float = 1e-18
SERIES_MAX_TERMS: int = 200
GAUSS_NODES_PER_PANEL: int = 32
# Panels double in width away from the boundary layer; these are the counts
# of doubling steps on each side of eta = 0.
PANEL_DOUBLINGS_POSITIVE: int = 6
PANEL_DOUBLINGS_NEGATIVE: int = 11
QUADRATURE_SELF_CHECK_TOL: float = 1e-13
# Chunk size for array evaluation (bounds the node tensor memory).
GRID_CHUNK: int = 4096

# Use the erf / Dawson closed form for A_0 by default (cross-check path).
USE_SPECIAL_FUNCTIONS: bool = _env_bool("MS_KIT_SPECIAL_FUNCTIONS", False)

# Root finding and classification
BISECTION_WIDTH_FACTOR: float = 1e-13
BISECTION_MAX_ITER: int = 400
NEWTON_POLISH_STEPS: int = 2
MULTIPLICITY_THRESHOLD: float = 1e-8
ALPHA_BOUNDARY_BAND: float = 1e-9
ZERO_TOL: float = 1e-9
FACTORIZED_ZERO_TOL: float = 1e-8
QUADRATIC_ROOT_TOL: float = 1e-9
ETA_MIN_BRACKET_START: float = -8.0
ETA_MIN_BRACKET_LIMIT: float = -1e3
CRITICAL_ORACLE_TOL: float = 1e-8

# Oracle settings
ORACLE_ETA_LIMIT: float = 500.0
ORACLE_MAX_LEVELS: int = 24
ORACLE_REL_TOL: float = 1e-13
ORACLE_GOLDEN_BRACKET: Tuple[float, float] = (-100.0, 0.0)
ORACLE_GOLDEN_WIDTH: float = 1e-12
ORACLE_2D_NODES: int = 96
ORACLE_POSITIVITY_STEP: float = 1e-4
SIGN_SCAN_POINTS: int = 200_000
FD_RELATIVE_STEP: float = 1e-5

# Output
CSV_DIGITS: int = 12
TABLE_DIGITS: int = 12
JSON_DIGITS: int = 17

# Parallelism cap for sweeps (0 = auto).
THREADS: int = max(0, _env_int("MS_KIT_THREADS", 0))

LOG_LEVEL: str = os.environ.get("MS_KIT_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
