from __future__ import annotations

REPORT_SCHEMA_VERSION = 1

SUITES: tuple[str, ...] = (
    "borcherds",
    "skew",
    "commutator",
    "tderivation",
    "dong",
    "locality",
    "conformal",
    "admissibility",
    "radius",
)
SUITES_SET = frozenset(SUITES)

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_INCONCLUSIVE = 2
EXIT_CONFIG_ERROR = 3

LAMBDA = "λ"
MU = "μ"

# memo sizes: per-field mode values and the shared PBW rewriting table
MODE_CACHE_LIMIT = 1 << 16
PBW_CACHE_LIMIT = 1 << 17
