"""Variation operators: segment reversal, probabilistic swaps, their hybrid,
order crossover, and roulette selection.

All operators are pure: they never modify their input tours, and given the
same inputs and the same stream state they produce the same output. Mutation
points, cut points and probability draws can be supplied explicitly, which is
the seam the hand-trace tests script.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from .population import GaConfig, Population, fitness_of
from .rng import RngStream


def draw_mutation_points(n: int, rng: RngStream) -> tuple[int, int]:
    """Uniform (a, b) with 0 <= a <= b < n.

    One integer draw unranked over all n(n+1)/2 ordered pairs, so every
    segment is equally likely; drawing the endpoints independently would
    bias toward particular segment shapes. a == b is a legal, order-1
    segment (an identity reversal).
    """
    if n < 1:
        raise ValueError("n must be positive")
    r = rng.randint(0, n * (n + 1) // 2 - 1)
    return _unrank_pair(n, r, strict=False)


def draw_cut_points(n: int, rng: RngStream) -> tuple[int, int]:
    """Uniform (c1, c2) with 0 <= c1 < c2 < n, for crossover."""
    if n < 2:
        raise ValueError("cut points need n >= 2")
    r = rng.randint(0, n * (n - 1) // 2 - 1)
    return _unrank_pair(n, r, strict=True)


def _unrank_pair(n: int, r: int, strict: bool) -> tuple[int, int]:
    # Ranks count row-major over pairs (first, second); reversing the rank
    # turns the row sizes into 1, 2, ..., so the row is a triangular root.
    rows = n - 1 if strict else n
    rev = rows * (rows + 1) // 2 - 1 - r
    k = (isqrt(8 * rev + 1) - 1) // 2
    m = rev - k * (k + 1) // 2
    first = rows - 1 - k
    second = n - 1 - m
    return first, second


def _resolve_points(n: int, pts, rng) -> tuple[int, int]:
    if pts is None:
        if rng is None:
            raise ValueError("either mutation points or an rng must be supplied")
        return draw_mutation_points(n, rng)
    a, b = int(pts[0]), int(pts[1])
    if not 0 <= a <= b <= n - 1:
        raise ValueError(f"invalid mutation points ({a}, {b}) for a tour of {n} cities")
    return a, b


def _check_probability(pm) -> float:
    pm = float(pm)
    if not 0.0 <= pm <= 1.0:
        raise ValueError(f"mutation probability must lie in [0, 1], got {pm}")
    return pm


def mutate_rsm(t, pts=None, rng: RngStream | None = None) -> np.ndarray:
    """Reverse the segment between two mutation points.

    pts is (a, b) with a <= b; when omitted it is drawn uniformly, which
    requires rng. Positions outside [a, b] are fixed points, a == b leaves
    the tour unchanged, and applying the same points twice restores the
    input. Consumes no probability draws.
    """
    t = np.asarray(t)
    a, b = _resolve_points(t.shape[0], pts, rng)
    out = t.copy()
    out[a:b + 1] = t[a:b + 1][::-1]
    return out


def mutate_psm(t, pm, rng: RngStream) -> np.ndarray:
    """Swap each position with a random partner, each with probability pm.

    Walks positions 0..n-1 in order; a hit swaps the current entry with a
    uniformly drawn position (possibly itself). Exactly n probability draws
    are consumed regardless of pm, batched as one array, with partner draws
    following in position order.
    """
    pm = _check_probability(pm)
    t = np.asarray(t)
    n = t.shape[0]
    out = t.copy()
    hits = np.nonzero(rng.random_array(n) < pm)[0]
    for i in hits:
        i = int(i)
        j = rng.randint(0, n - 1)
        out[i], out[j] = out[j], out[i]
    return out


def mutate_hprm(t, pm, pts=None, rng: RngStream | None = None) -> np.ndarray:
    """Segment reversal with an interleaved probabilistic swap at each step.

    Walks the segment ends inward from (a, b) while a <= b: swap the two
    ends, then with probability pm swap the current head position a with a
    uniformly drawn position. The middle element of an odd segment gets a
    self-swap pass of its own. With pm = 0 the result equals mutate_rsm on
    the same points, and no probability draws are consumed, so runs
    configured with pm = 0 stay stream-aligned with RSM runs; with pm > 0
    every pass consumes one probability draw (batched as one array) even
    when a == b.
    """
    pm = _check_probability(pm)
    t = np.asarray(t)
    n = t.shape[0]
    a, b = _resolve_points(n, pts, rng)
    out = t.copy()
    if pm == 0.0:
        out[a:b + 1] = t[a:b + 1][::-1]
        return out
    passes = (b - a + 2) // 2
    ps = rng.random_array(passes)
    for step in range(passes):
        out[a], out[b] = out[b], out[a]
        if ps[step] < pm:
            j = rng.randint(0, n - 1)
            out[a], out[j] = out[j], out[a]
        a += 1
        b -= 1
    return out


def _resolve_cuts(n: int, cuts, rng) -> tuple[int, int]:
    if cuts is None:
        if rng is None:
            raise ValueError("either cut points or an rng must be supplied")
        return draw_cut_points(n, rng)
    c1, c2 = int(cuts[0]), int(cuts[1])
    if not 0 <= c1 < c2 <= n - 1:
        raise ValueError(f"invalid cut points ({c1}, {c2}) for a tour of {n} cities")
    return c1, c2


def crossover_ox(p1, p2, cuts=None, rng: RngStream | None = None) -> np.ndarray:
    """Order crossover: keep a slice of p1, fill the rest in p2's order.

    The child keeps p1[c1..c2] in place; the remaining positions, walked
    cyclically starting just after c2, take the cities of p2 scanned
    cyclically starting just after c2, skipping cities the slice already
    provides. cuts must satisfy c1 < c2; when omitted they are drawn
    uniformly over all such pairs.
    """
    p1 = np.asarray(p1)
    p2 = np.asarray(p2)
    if p1.shape != p2.shape:
        raise ValueError(f"parents differ in size: {p1.shape[0]} vs {p2.shape[0]}")
    n = p1.shape[0]
    c1, c2 = _resolve_cuts(n, cuts, rng)
    child = np.empty_like(p1)
    child[c1:c2 + 1] = p1[c1:c2 + 1]
    used = np.zeros(n, dtype=bool)
    used[p1[c1:c2 + 1]] = True
    order = np.concatenate((p2[c2 + 1:], p2[:c2 + 1]))
    fill = order[~used[order]]
    tail = n - 1 - c2
    child[c2 + 1:] = fill[:tail]
    child[:c1] = fill[tail:]
    return child


def wheel_index(cum, u):
    """Map uniform draws in [0, 1) to indices by cumulative weight.

    cum is a nondecreasing positive prefix-sum array; u a scalar or array.
    Index k is returned with probability proportional to its weight slice.
    Shared by the scalar and batched selection paths so both spin the exact
    same wheel.
    """
    idx = np.searchsorted(cum, np.asarray(u) * cum[-1], side="right")
    return np.minimum(idx, cum.size - 1)


def select_roulette(pool: Population, rng: RngStream) -> int:
    """Fitness-proportionate choice of one index into the pool.

    One uniform draw against the cumulative fitness prefix sums; the pool
    must have its lengths cached.
    """
    if pool.lengths is None:
        raise ValueError("roulette selection needs cached lengths; call evaluate first")
    cum = np.cumsum(fitness_of(pool.lengths))
    return int(wheel_index(cum, rng.random()))


def variation(pop: Population, cfg: GaConfig, dm: np.ndarray, rng: RngStream) -> Population:
    """One generation of offspring from an evaluated population.

    Each of the population_size children: two roulette-drawn parents, order
    crossover with probability crossover_rate (otherwise a copy of the
    first parent), then the configured mutation applied unconditionally
    (mutation_rate only gates the swaps inside PSM and HPRM). The returned
    population is not yet evaluated.

    Draw order per generation: 2N parent draws as one batch, N crossover
    gates as one batch, then each child's cut and mutation draws in child
    order. Batches advance the stream exactly as the equivalent scalar
    sequence would, so replays are insensitive to the batching.
    """
    if not pop.evaluated:
        raise ValueError("variation needs an evaluated population")
    if pop.dimension != dm.shape[0]:
        raise ValueError(
            f"population dimension {pop.dimension} does not match matrix size {dm.shape[0]}"
        )
    size = pop.size
    cum = np.cumsum(fitness_of(pop.lengths))
    parents = wheel_index(cum, rng.random_array(2 * size))
    gates = rng.random_array(size)
    children = np.empty_like(pop.tours)
    op = cfg.mutation_operator
    for i in range(size):
        first = pop.tours[parents[2 * i]]
        if gates[i] < cfg.crossover_rate:
            second = pop.tours[parents[2 * i + 1]]
            child = crossover_ox(first, second, rng=rng)
        else:
            child = first
        if op == "RSM":
            child = mutate_rsm(child, rng=rng)
        elif op == "PSM":
            child = mutate_psm(child, cfg.mutation_rate, rng)
        else:
            child = mutate_hprm(child, cfg.mutation_rate, rng=rng)
        children[i] = child
    return Population(children)
