"""The generational loop: variation, evaluation, elitist roulette selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import variation, wheel_index
from .population import GaConfig, Population, evaluate, fitness_of
from .rng import RngStream


@dataclass(frozen=True)
class TraceRecord:
    """One generation's convergence snapshot.

    best_so_far is the best length ever observed, initial population
    included. gen_best and gen_mean describe that generation's offspring
    (the freshly varied population, before selection), so they show what
    variation produced rather than echoing the elitist best.
    """

    generation: int
    best_so_far: int
    gen_best: int
    gen_mean: float


@dataclass
class RunResult:
    """Outcome of one evolutionary run."""

    best_tour: np.ndarray
    best_length: int
    trace: tuple[TraceRecord, ...]
    generations_run: int


def evolve(cfg: GaConfig, dm: np.ndarray, initial: Population, rng: RngStream) -> RunResult:
    """Run exactly max_generations generations from an initial population.

    Each generation: variation produces population_size children, the
    children are evaluated, then the next population is selected from the
    merged 2N pool of children and parents: the elitism_count best pool
    members are copied first (stable order, children before parents on
    ties), the remainder drawn by roulette over the whole pool with
    replacement. The initial population is left untouched; the best tour
    ever observed is returned. With max_generations = 0 the trace is empty
    and the result is the best of the initial population.
    """
    if initial.size != cfg.population_size:
        raise ValueError(
            f"initial population has {initial.size} members, config says {cfg.population_size}"
        )
    pop = initial.copy()
    evaluate(pop, dm)

    best_idx = int(np.argmin(pop.lengths))
    best_tour = pop.tours[best_idx].copy()
    best_length = int(pop.lengths[best_idx])

    trace = []
    for gen in range(1, cfg.max_generations + 1):
        children = variation(pop, cfg, dm, rng)
        evaluate(children, dm)

        gen_best_idx = int(np.argmin(children.lengths))
        gen_best = int(children.lengths[gen_best_idx])
        if gen_best < best_length:
            best_length = gen_best
            best_tour = children.tours[gen_best_idx].copy()
        trace.append(TraceRecord(gen, best_length, gen_best, float(children.lengths.mean())))

        merged_tours = np.concatenate((children.tours, pop.tours))
        merged_lengths = np.concatenate((children.lengths, pop.lengths))
        chosen = []
        if cfg.elitism_count:
            chosen.append(np.argsort(merged_lengths, kind="stable")[:cfg.elitism_count])
        remainder = cfg.population_size - cfg.elitism_count
        if remainder:
            cum = np.cumsum(fitness_of(merged_lengths))
            chosen.append(wheel_index(cum, rng.random_array(remainder)))
        sel = np.concatenate(chosen)
        pop = Population(merged_tours[sel], merged_lengths[sel])

    return RunResult(best_tour, best_length, tuple(trace), cfg.max_generations)
