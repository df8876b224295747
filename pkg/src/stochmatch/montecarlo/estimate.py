"""Repeated seeded trials of an engine on a kernel instance."""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from stochmatch.arrivals.events import ArrivalEvent
from stochmatch.arrivals.sampler import ArrivalModel, PoissonArrivals
from stochmatch.config import config
from stochmatch.domain.kernel import KernelInstance
from stochmatch.domain.matching import Matching
from stochmatch.engines.presets import EngineSpec
from stochmatch.montecarlo.report import EstimateReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    """One trial: its arrivals and the matching the engine built."""
    trial: int
    events: Tuple[ArrivalEvent, ...]
    matching: Matching


def default_grid(points: int = config.simulation.grid_points) -> np.ndarray:
    if points < 2:
        raise ValueError(f"grid needs at least 2 points, got {points}")
    return np.linspace(0.0, 1.0, points)


def validate_grid(grid: Sequence[float]) -> np.ndarray:
    """Strictly increasing grid inside [0, 1].

    Raises:
        ValueError: If the grid is empty, unsorted or leaves [0, 1]
    """
    arr = np.asarray(grid, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("time grid must be a non-empty 1-d sequence")
    if arr[0] < 0.0 or arr[-1] > 1.0:
        raise ValueError(f"time grid must lie in [0, 1], got [{arr[0]}, {arr[-1]}]")
    if np.any(np.diff(arr) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    return arr


def simulate_trial(
    kernel: KernelInstance,
    engine: EngineSpec,
    seed: int,
    trial: int,
    arrivals: Optional[ArrivalModel] = None,
) -> TrialOutcome:
    model = arrivals or PoissonArrivals()
    events = model.sample(kernel.instance, seed, trial)
    return TrialOutcome(trial=trial, events=tuple(events), matching=engine.run(kernel, events))


@dataclass(frozen=True)
class _Chunk:
    kernel: KernelInstance
    engine: EngineSpec
    arrivals: ArrivalModel
    seed: int
    start: int
    stop: int
    grid: np.ndarray
    pair_index: Tuple[Tuple[int, int], ...]


def _run_chunk(chunk: _Chunk) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Edge, unmatched and joint counts for trials [start, stop)."""
    inst = chunk.kernel.instance
    edge_index = inst.edge_index
    offline_index = inst.offline_index
    n = chunk.stop - chunk.start

    edge_counts = np.zeros(len(inst.edges), dtype=np.int64)
    match_times = np.full((n, len(inst.offline_vertices)), np.inf)

    for row, trial in enumerate(range(chunk.start, chunk.stop)):
        events = chunk.arrivals.sample(inst, chunk.seed, trial)
        matching = chunk.engine.run(chunk.kernel, events)
        for record in matching.records:
            edge_counts[edge_index[record.edge]] += 1
            match_times[row, offline_index[record.offline]] = record.time

    # U_j(t) = 1 iff j is matched at or after t, or never
    unmatched = match_times[:, :, None] >= chunk.grid[None, None, :]
    unmatched_counts = unmatched.sum(axis=0, dtype=np.int64)

    joint_counts = np.zeros((len(chunk.pair_index), len(chunk.grid)), dtype=np.int64)
    for k, (a, b) in enumerate(chunk.pair_index):
        joint_counts[k] = (unmatched[:, a, :] & unmatched[:, b, :]).sum(axis=0, dtype=np.int64)

    return edge_counts, unmatched_counts, joint_counts


def estimate(
    kernel: KernelInstance,
    engine: EngineSpec,
    trials: int,
    seed: int,
    grid: Optional[Sequence[float]] = None,
    arrivals: Optional[ArrivalModel] = None,
    first_trial: int = 0,
    workers: int = config.simulation.workers,
    chunk_size: int = config.simulation.chunk_size,
    pairs: Optional[Sequence[Tuple[str, str]]] = None,
) -> EstimateReport:
    """Estimate edge matching and unmatched probabilities over seeded trials.

    Trial k uses the substreams of (seed, k), so results do not depend on
    ``workers`` or ``chunk_size``, and runs over disjoint trial ranges merge
    into exactly the counts of one combined run.

    Args:
        kernel: Kernel instance to simulate
        engine: Engine preset to run
        trials: Number of trials N >= 1
        seed: Base seed
        grid: Time grid for U_j(t); 101 equispaced points by default
        arrivals: Arrival model; Poisson by default
        first_trial: Index of the first trial
        workers: Processes to spread chunks over
        chunk_size: Trials per chunk
        pairs: Offline pairs for joint estimates; all competitor pairs by default

    Returns:
        EstimateReport with counts over the requested trials

    Raises:
        ValueError: If trials < 1 or the grid is invalid
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if workers < 1 or chunk_size < 1:
        raise ValueError(f"workers and chunk_size must be >= 1, got {workers}, {chunk_size}")
    grid_arr = default_grid() if grid is None else validate_grid(grid)
    model = arrivals or PoissonArrivals()
    inst = kernel.instance

    pair_list = list(kernel.competitor_pairs() if pairs is None else pairs)
    for a, b in pair_list:
        inst.require_offline(a)
        inst.require_offline(b)
    pair_index = tuple((inst.offline_index[a], inst.offline_index[b]) for a, b in pair_list)

    chunks: List[_Chunk] = []
    for start in range(first_trial, first_trial + trials, chunk_size):
        stop = min(start + chunk_size, first_trial + trials)
        chunks.append(_Chunk(kernel, engine, model, seed, start, stop, grid_arr, pair_index))

    logger.info(
        f"Simulating {trials} trials of {engine.name} from trial {first_trial} "
        f"(seed={seed}, {len(chunks)} chunks, {workers} workers)"
    )

    if workers == 1:
        results = [_run_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_chunk, chunks))

    edge_counts = sum(r[0] for r in results)
    unmatched_counts = sum(r[1] for r in results)
    joint_counts = sum(r[2] for r in results)

    return EstimateReport(
        engine=engine.name,
        seed=seed,
        trials=trials,
        first_trial=first_trial,
        grid=grid_arr,
        edge_keys=tuple(e.key for e in inst.edges),
        x={e.key: kernel.x.value(*e.key) for e in inst.edges},
        edge_counts=edge_counts,
        offline=tuple(inst.offline_vertices),
        unmatched_counts=unmatched_counts,
        pairs=tuple(tuple(p) for p in pair_list),
        joint_counts=joint_counts,
    )
