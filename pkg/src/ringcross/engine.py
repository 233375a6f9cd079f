"""
Generational GA engine: rank scaling, stochastic universal sampling, crossover
at rate p_c, Gaussian mutation at rate p_m, elitism, bound repair and an
evaluation budget that includes the initial population.
"""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from .benchmarks import evaluate, objective_for, spec_of
from .crossover import children_per_mating, crossover, minimum_length
from .errors import BudgetExhaustedError, InvalidParameterError
from .genome import (
    Genome,
    Individual,
    Objective,
    Population,
    RngStream,
    evaluate_population,
    init_population,
    make_rng,
    repair,
)
from .types import (
    Bounds,
    FunctionId,
    FunctionSpec,
    GaConfig,
    MutationMode,
    RunResult,
    SchwefelVariant,
)

logger = logging.getLogger(__name__)


def rank_scale(fitnesses: Sequence[float], selection_pressure: float = 2.0) -> np.ndarray:
    """
    Linear-ranking selection weights for a minimization problem.

    The best individual (rank 1) receives ``selection_pressure`` and the worst
    ``2 - selection_pressure``; weights sum to N. Equal values are ranked in
    index order.

    Args:
        fitnesses: Raw objective values, lower is better
        selection_pressure: Value in [1, 2]

    Returns:
        Weight per individual, in input order

    Raises:
        InvalidParameterError: If fitnesses is empty or the pressure is out of range
    """
    values = np.asarray(fitnesses, dtype=np.float64)
    n = values.shape[0]
    if n == 0:
        raise InvalidParameterError("Cannot rank an empty population")
    if not 1.0 <= selection_pressure <= 2.0:
        raise InvalidParameterError(f"Selection pressure {selection_pressure} outside [1, 2]")
    if n == 1:
        return np.ones(1)

    ranks = np.empty(n, dtype=np.float64)
    ranks[np.argsort(values, kind="stable")] = np.arange(1, n + 1)
    sp = selection_pressure
    return 2.0 - sp + 2.0 * (sp - 1.0) * (n - ranks) / (n - 1)


def _check_weights(weights: Sequence[float], count: int) -> np.ndarray:
    weights = np.asarray(weights, dtype=np.float64)
    if count < 1:
        raise InvalidParameterError(f"Selection count must be positive, got {count}")
    if weights.ndim != 1 or weights.shape[0] == 0:
        raise InvalidParameterError("Selection weights must be a non-empty vector")
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise InvalidParameterError("Selection weights must be finite and nonnegative")
    if weights.sum() <= 0:
        raise InvalidParameterError("Selection weights sum to zero")
    return weights


def sus_indices(weights: Sequence[float], count: int, offset: float) -> np.ndarray:
    """
    Stochastic universal sampling for a given pointer offset.

    Pointers sit at ``offset + k * S / count`` for k = 0..count-1 over the
    cumulative weights; ``offset`` must lie in [0, S / count).
    """
    weights = _check_weights(weights, count)
    cumulative = np.cumsum(weights)
    spacing = cumulative[-1] / count
    if not 0.0 <= offset < spacing:
        raise InvalidParameterError(f"Offset {offset} outside [0, {spacing})")
    pointers = offset + spacing * np.arange(count)
    selected = np.searchsorted(cumulative, pointers, side="right")
    return np.minimum(selected, weights.shape[0] - 1)


def sus_select(weights: Sequence[float], count: int, rng: RngStream) -> np.ndarray:
    """
    Select ``count`` indices with one spin of an equally spaced pointer wheel.

    Index i is chosen either floor or ceil of ``count * w_i / S`` times.
    Indices come back in wheel order.

    Raises:
        InvalidParameterError: If all weights are zero or any is negative
    """
    weights = _check_weights(weights, count)
    spacing = weights.sum() / count
    offset = float(rng.uniform(0.0, spacing))
    # guard the half-open interval against float rounding at the top edge
    offset = min(offset, np.nextafter(spacing, 0.0))
    return sus_indices(weights, count, offset)


def gaussian_mutate(
    genome: Genome,
    bounds: Bounds,
    p_m: float,
    sigma_fraction: float,
    rng: RngStream,
    mode: MutationMode = MutationMode.GENE,
) -> Genome:
    """
    Add Normal(0, sigma^2) noise to genes chosen with probability p_m.

    sigma is ``sigma_fraction * (upper - lower)``. Mutated genes are clamped to
    the bounds; untouched genes are returned bit for bit.

    Args:
        genome: Genes to mutate
        bounds: Search box
        p_m: Mutation probability per gene (or per individual in individual mode)
        sigma_fraction: Noise scale relative to the bound width
        rng: Random stream
        mode: Whether p_m applies per gene or to the whole genome

    Returns:
        A new genome
    """
    if not 0.0 <= p_m <= 1.0:
        raise InvalidParameterError(f"Mutation rate {p_m} outside [0, 1]")
    if sigma_fraction <= 0:
        raise InvalidParameterError(f"Sigma fraction must be positive, got {sigma_fraction}")

    mutated = np.array(genome, dtype=np.float64)
    if mode == MutationMode.INDIVIDUAL:
        mask = np.full(mutated.shape[0], rng.random() < p_m)
    else:
        mask = rng.random(mutated.shape[0]) < p_m
    hits = int(mask.sum())
    if hits:
        sigma = sigma_fraction * bounds.width
        noisy = mutated[mask] + rng.normal(0.0, sigma, size=hits)
        mutated[mask] = np.clip(noisy, bounds.lower, bounds.upper)
    return mutated


def _offspring(pop: Population, cfg: GaConfig, slots: int, bounds: Bounds, rng: RngStream) -> List[Genome]:
    """Select, recombine, mutate and repair ``slots`` children."""
    fitnesses = pop.fitnesses
    weights = rank_scale(fitnesses, cfg.selection_pressure)
    matings = math.ceil(slots / children_per_mating(cfg.crossover))
    # wheel order would pair neighbours; shuffle before pairing
    pool = rng.permutation(sus_select(weights, 2 * matings, rng))

    children: List[Genome] = []
    for m in range(matings):
        if len(children) >= slots:
            break
        a, b = int(pool[2 * m]), int(pool[2 * m + 1])
        p1, p2 = pop.members[a].genome, pop.members[b].genome
        if rng.random() < cfg.crossover_rate:
            outcome = crossover(
                cfg.crossover, p1, p2, cfg.crossover_params, rng,
                f1=fitnesses[a], f2=fitnesses[b],
            )
            children.extend(outcome.children)
        else:
            children.extend((p1.copy(), p2.copy()))
    # surplus second child of the last pair is dropped
    children = children[:slots]

    result = []
    for child in children:
        child = gaussian_mutate(
            child, bounds, cfg.mutation_rate, cfg.mutation_sigma_fraction, rng, cfg.mutation_mode
        )
        result.append(repair(child, bounds, cfg.repair, rng))
    return result


def step(
    pop: Population,
    cfg: GaConfig,
    objective: Objective,
    rng: RngStream,
    bounds: Bounds,
) -> Population:
    """
    Build the next generation.

    Elites are copied unchanged; the remaining slots are filled with mutated,
    repaired children of SUS-selected parents. Children are evaluated until the
    budget runs out; children that do not fit are dropped and their slots go to
    the best non-elite members of the current generation.

    Args:
        pop: Fully evaluated current generation
        cfg: Run configuration
        objective: Function to minimize
        rng: Random stream
        bounds: Search box

    Returns:
        Next generation, marked exhausted once the budget is used up

    Raises:
        BudgetExhaustedError: If the budget was already used up
    """
    if pop.exhausted or pop.evaluations_used >= cfg.eval_budget:
        raise BudgetExhaustedError(
            f"Evaluation budget of {cfg.eval_budget} exhausted at generation {pop.generation}"
        )

    ranked = pop.ranked()
    elite_count = min(cfg.elite_count, pop.size)
    elites = [pop.members[i] for i in ranked[:elite_count]]
    slots = pop.size - elite_count
    if slots == 0:
        return pop.model_copy(update={"generation": pop.generation + 1})

    children = _offspring(pop, cfg, slots, bounds, rng)

    remaining = cfg.eval_budget - pop.evaluations_used
    admitted = [Individual(genome=child).evaluate(objective) for child in children[:remaining]]
    missing = slots - len(admitted)
    filler = [pop.members[i] for i in ranked[elite_count:elite_count + missing]]
    if missing:
        logger.debug(
            f"Generation {pop.generation + 1} truncated to {len(admitted)} evaluations by the budget"
        )

    used = pop.evaluations_used + len(admitted)
    return Population(
        members=tuple(elites + admitted + filler),
        generation=pop.generation + 1,
        evaluations_used=used,
        exhausted=used >= cfg.eval_budget,
    )


def run(cfg: GaConfig, function_id: FunctionId) -> RunResult:
    """
    Minimize a benchmark function until the evaluation budget is spent.

    Args:
        cfg: Run configuration, including seed and operator
        function_id: Benchmark to minimize

    Returns:
        Best-ever individual with the per-generation traces

    Raises:
        InvalidParameterError: If the configuration cannot run on this function
    """
    function_id = FunctionId(function_id)
    spec = spec_of(function_id, cfg.dimension)
    if cfg.dimension < minimum_length(cfg.crossover):
        raise InvalidParameterError(
            f"{cfg.crossover.name} needs dimension >= {minimum_length(cfg.crossover)}, got {cfg.dimension}"
        )
    if cfg.elite_count >= cfg.population_size:
        raise InvalidParameterError("elite_count must leave at least one offspring slot")

    objective = objective_for(spec, cfg.schwefel_variant)
    rng = make_rng(cfg.seed)
    logger.debug(f"Run {function_id.value}/{cfg.crossover.name} seed={cfg.seed} started")

    pop = init_population(spec, cfg.population_size, rng)
    pop = evaluate_population(pop, objective, cfg.eval_budget)
    pop = pop.model_copy(update={"exhausted": pop.evaluations_used >= cfg.eval_budget})

    best = pop.best()
    best_trace = [best.fitness]
    population_trace = [best.fitness]
    while not pop.exhausted:
        pop = step(pop, cfg, objective, rng, spec.bounds)
        generation_best = pop.best()
        if generation_best.fitness < best.fitness:
            best = generation_best
        best_trace.append(best.fitness)
        population_trace.append(generation_best.fitness)

    logger.debug(
        f"Run {function_id.value}/{cfg.crossover.name} seed={cfg.seed} finished: "
        f"best={best.fitness:.6g} after {pop.generation} generations"
    )
    return RunResult(
        function=function_id,
        crossover=cfg.crossover,
        best_value=best.fitness,
        best_genome=best.genome.tolist(),
        best_by_generation=best_trace,
        population_best_by_generation=population_trace,
        evaluations_used=pop.evaluations_used,
        generations=pop.generation,
        seed=cfg.seed,
    )


def random_search(
    spec: FunctionSpec,
    budget: int,
    rng: RngStream,
    variant: SchwefelVariant = SchwefelVariant.NORMALIZED,
    chunk: Optional[int] = 1000,
) -> float:
    """Best value among ``budget`` uniform samples of the search box."""
    if budget < 1:
        raise InvalidParameterError(f"Budget must be positive, got {budget}")
    best = math.inf
    remaining = budget
    while remaining:
        size = min(remaining, chunk or remaining)
        samples = rng.uniform(spec.bounds.lower, spec.bounds.upper, size=(size, spec.dimension))
        best = min(best, min(evaluate(spec.id, x, variant) for x in samples))
        remaining -= size
    return best
