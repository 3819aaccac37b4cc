"""Size caps and numeric tolerances shared across the package."""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    matrix_cap: int = 4096  # largest N for which dense adjacency/difference tables are built
    oracle_cap: int = 256
    cubelike_cap: int = 12  # max dimension n of Z_2^n for dense cubelike matrices
    exact_idempotent_cap: int = 64


@dataclass(frozen=True)
class Tolerances:
    unitarity: float = 1e-9
    pst_candidate: float = 1e-6
    scan_step: float = math.pi / 1200
    scan_t_max: float = 2 * math.pi


LIMITS = Limits()
TOLERANCES = Tolerances()
