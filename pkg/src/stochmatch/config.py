"""Application configuration with sensible defaults."""

import math
import os
from dataclasses import dataclass
from typing import Optional

# Upper bound on the excess mass sum max(2x_ij - lambda_i, 0) per offline vertex.
Y_STAR = 1.0 - math.log(2.0)


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances for equality and feasibility checks."""
    kernel: float = 1e-9
    lp: float = 1e-7
    certificate: float = 1e-12
    y_grid: float = 1e-9


@dataclass(frozen=True)
class SimulationDefaults:
    """Monte Carlo defaults."""
    trials: int = 1_000_000
    grid_points: int = 101
    workers: int = 1
    chunk_size: int = 20_000


@dataclass(frozen=True)
class SearchDefaults:
    """Activation-function search defaults."""
    m: int = 40
    step: float = 0.025
    restarts: int = 10
    max_iterations: int = 2_000
    workers: int = 1


@dataclass(frozen=True)
class CLIDefaults:
    """Default values for CLI arguments."""
    seed: int = 42
    seed_env_var: str = "STOCHMATCH_SEED"
    y_grid_points: int = 64


@dataclass(frozen=True)
class Config:
    """Application-wide configuration."""
    tolerances: Tolerances = Tolerances()
    simulation: SimulationDefaults = SimulationDefaults()
    search: SearchDefaults = SearchDefaults()
    cli: CLIDefaults = CLIDefaults()


# Global config instance
config = Config()


def resolve_seed(flag: Optional[int] = None) -> int:
    """Resolve the run seed: explicit flag, then environment, then default.

    Args:
        flag: Value of ``--seed`` if given

    Returns:
        Non-negative integer seed

    Raises:
        ValueError: If the environment variable is not a non-negative integer
    """
    if flag is not None:
        return flag

    raw = os.environ.get(config.cli.seed_env_var)
    if raw is None or raw.strip() == "":
        return config.cli.seed

    try:
        seed = int(raw.strip())
    except ValueError:
        raise ValueError(
            f"{config.cli.seed_env_var} must be an integer, got {raw!r}"
        )
    if seed < 0:
        raise ValueError(f"{config.cli.seed_env_var} must be >= 0, got {seed}")
    return seed
