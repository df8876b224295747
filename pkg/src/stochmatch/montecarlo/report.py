"""Aggregated Monte Carlo counts and the estimates derived from them."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

EdgeKey = Tuple[str, str]


def standard_error(p: np.ndarray, n: int) -> np.ndarray:
    """Binomial standard error sqrt(p (1 - p) / n)."""
    p = np.asarray(p, dtype=float)
    return np.sqrt(np.clip(p * (1.0 - p), 0.0, None) / n)


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Counts over trials [first_trial, first_trial + trials) of one engine.

    Probabilities are count / trials and every standard error is the
    binomial sqrt(p (1 - p) / trials).

    Attributes:
        engine: Engine name
        seed: Base seed of the substreams
        trials: Number of trials counted
        first_trial: Index of the first trial
        grid: Strictly increasing time grid in [0, 1]
        edge_keys: Edge per entry of ``edge_counts``
        x: x_ij per edge, used for ratios
        edge_counts: Trials in which each edge was matched
        offline: Offline vertex per row of ``unmatched_counts``
        unmatched_counts: Trials with U_j(t) = 1, shape (vertices, grid)
        pairs: Competitor pairs per row of ``joint_counts``
        joint_counts: Trials with U_j(t) = U_j'(t) = 1, shape (pairs, grid)
    """
    engine: str
    seed: int
    trials: int
    first_trial: int
    grid: np.ndarray
    edge_keys: Tuple[EdgeKey, ...]
    x: Dict[EdgeKey, float]
    edge_counts: np.ndarray
    offline: Tuple[str, ...]
    unmatched_counts: np.ndarray
    pairs: Tuple[EdgeKey, ...] = field(default_factory=tuple)
    joint_counts: Optional[np.ndarray] = None

    @property
    def edge_probabilities(self) -> np.ndarray:
        return self.edge_counts / self.trials

    @property
    def edge_standard_errors(self) -> np.ndarray:
        return standard_error(self.edge_probabilities, self.trials)

    def edge_probability(self, online_id: str, offline_id: str) -> Tuple[float, float]:
        """(p, se) for one edge."""
        k = self.edge_keys.index((online_id, offline_id))
        return float(self.edge_probabilities[k]), float(self.edge_standard_errors[k])

    def unmatched_curve(self, offline_id: str) -> Tuple[np.ndarray, np.ndarray]:
        """(p, se) of U_j(t) = 1 on the grid."""
        row = self.unmatched_counts[self.offline.index(offline_id)] / self.trials
        return row, standard_error(row, self.trials)

    def unmatched_at(self, offline_id: str, t: float) -> Tuple[float, float]:
        p, se = self.unmatched_curve(offline_id)
        k = self._grid_position(t)
        return float(p[k]), float(se[k])

    def joint_curve(self, first: str, second: str) -> Tuple[np.ndarray, np.ndarray]:
        """(p, se) of U_j(t) = U_j'(t) = 1 for a tracked pair, in either order."""
        if self.joint_counts is None:
            raise KeyError("report has no joint estimates")
        key = (first, second) if (first, second) in self.pairs else (second, first)
        row = self.joint_counts[self.pairs.index(key)] / self.trials
        return row, standard_error(row, self.trials)

    def _grid_position(self, t: float) -> int:
        matches = np.nonzero(np.isclose(self.grid, t, rtol=0.0, atol=1e-12))[0]
        if matches.size == 0:
            raise KeyError(f"t = {t} is not a grid point")
        return int(matches[0])

    def merge(self, other: "EstimateReport") -> "EstimateReport":
        """Combine runs over disjoint trial ranges of the same experiment.

        Raises:
            ValueError: If the runs differ in engine, seed, grid, edges or pairs,
                or their trial ranges overlap
        """
        if (
            self.engine != other.engine
            or self.seed != other.seed
            or self.edge_keys != other.edge_keys
            or self.offline != other.offline
            or self.pairs != other.pairs
            or not np.array_equal(self.grid, other.grid)
        ):
            raise ValueError("cannot merge reports of different experiments")
        a = (self.first_trial, self.first_trial + self.trials)
        b = (other.first_trial, other.first_trial + other.trials)
        if a[0] < b[1] and b[0] < a[1]:
            raise ValueError(f"trial ranges {a} and {b} overlap")

        joint = None
        if self.joint_counts is not None and other.joint_counts is not None:
            joint = self.joint_counts + other.joint_counts
        return EstimateReport(
            engine=self.engine,
            seed=self.seed,
            trials=self.trials + other.trials,
            first_trial=min(a[0], b[0]),
            grid=self.grid,
            edge_keys=self.edge_keys,
            x=self.x,
            edge_counts=self.edge_counts + other.edge_counts,
            offline=self.offline,
            unmatched_counts=self.unmatched_counts + other.unmatched_counts,
            pairs=self.pairs,
            joint_counts=joint,
        )

    def edges_frame(self) -> pd.DataFrame:
        """Columns i, j, x_ij, p, se, ratio (NaN where x_ij = 0)."""
        p = self.edge_probabilities
        se = self.edge_standard_errors
        rows = []
        for k, (i, j) in enumerate(self.edge_keys):
            xij = self.x.get((i, j), 0.0)
            rows.append({
                "i": i,
                "j": j,
                "x_ij": xij,
                "p": float(p[k]),
                "se": float(se[k]),
                "ratio": float(p[k]) / xij if xij > 0 else np.nan,
            })
        return pd.DataFrame(rows, columns=["i", "j", "x_ij", "p", "se", "ratio"])

    def curves_frame(self) -> pd.DataFrame:
        """Columns t, j, p, se: one row per (vertex, grid point)."""
        rows: List[Dict[str, object]] = []
        for j in self.offline:
            p, se = self.unmatched_curve(j)
            for t, pk, sk in zip(self.grid, p, se):
                rows.append({"t": float(t), "j": j, "p": float(pk), "se": float(sk)})
        return pd.DataFrame(rows, columns=["t", "j", "p", "se"])

    def joint_frame(self) -> pd.DataFrame:
        """Columns t, j, j2, p, se for every tracked competitor pair."""
        rows: List[Dict[str, object]] = []
        for a, b in self.pairs:
            p, se = self.joint_curve(a, b)
            for t, pk, sk in zip(self.grid, p, se):
                rows.append({"t": float(t), "j": a, "j2": b, "p": float(pk), "se": float(sk)})
        return pd.DataFrame(rows, columns=["t", "j", "j2", "p", "se"])

    def to_frames(self) -> Tuple[pd.DataFrame, pd.DataFrame]:
        """(curves, edges) DataFrames."""
        return self.curves_frame(), self.edges_frame()

    def to_dict(self) -> Dict[str, object]:
        p = self.edge_probabilities
        se = self.edge_standard_errors
        return {
            "engine": self.engine,
            "seed": self.seed,
            "trials": self.trials,
            "first_trial": self.first_trial,
            "edges": [
                {
                    "i": i,
                    "j": j,
                    "x_ij": self.x.get((i, j), 0.0),
                    "p": float(p[k]),
                    "se": float(se[k]),
                    "ratio": float(p[k]) / self.x[(i, j)] if self.x.get((i, j), 0.0) > 0 else None,
                }
                for k, (i, j) in enumerate(self.edge_keys)
            ],
            "grid_points": int(len(self.grid)),
        }

    def __repr__(self) -> str:
        return f"EstimateReport({self.engine}, {self.trials} trials, seed={self.seed})"
