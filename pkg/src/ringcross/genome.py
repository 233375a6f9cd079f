"""
Core value types of the GA: genomes, individuals, populations, random streams
and bound repair.
"""

import hashlib
import logging

from typing import Callable, Optional, Tuple

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .config import BUDGET_ACCOUNTING, PRNG_NAME
from .errors import InvalidParameterError
from .types import Bounds, FunctionSpec, RepairMode

logger = logging.getLogger(__name__)

Genome = npt.NDArray[np.float64]
RngStream = np.random.Generator
Objective = Callable[[Genome], float]


def make_rng(seed: int) -> RngStream:
    """Create a PCG64 stream from a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def derive_seed(master_seed: int, *tags: object) -> int:
    """
    Derive a 64-bit seed from a master seed and a sequence of tags.

    The result depends only on the values passed, never on call order, so
    subsetting or reordering a plan leaves every derived stream unchanged.
    """
    digest = hashlib.blake2b(digest_size=8)
    digest.update(str(int(master_seed)).encode())
    for tag in tags:
        value = tag.value if hasattr(tag, "value") else tag
        digest.update(b"|")
        digest.update(str(value).encode())
    return int.from_bytes(digest.digest(), "little")


def as_genome(values) -> Genome:
    """Copy any real sequence into a fresh float64 genome."""
    return np.array(values, dtype=np.float64)


class Individual(BaseModel):
    """A genome with its cached objective value (None until evaluated)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    genome: np.ndarray = Field(description="Read-only float64 genes")
    fitness: Optional[float] = Field(default=None, description="Objective value of genome")

    @field_validator("genome", mode="before")
    @classmethod
    def freeze_genome(cls, v) -> np.ndarray:
        """Copy to float64 and mark read-only so the cached fitness never goes stale."""
        genome = np.array(v, dtype=np.float64)
        genome.setflags(write=False)
        return genome

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    def evaluate(self, objective: Objective) -> "Individual":
        """Return a copy carrying the objective value of this genome."""
        return self.model_copy(update={"fitness": float(objective(self.genome))})


class Population(BaseModel):
    """Fixed-size generation of individuals plus budget bookkeeping."""
    model_config = ConfigDict(frozen=True)

    members: Tuple[Individual, ...] = Field(description="Individuals in slot order")
    generation: int = Field(default=0, ge=0, description="Generations completed")
    evaluations_used: int = Field(default=0, ge=0, description="Objective calls charged so far")
    exhausted: bool = Field(default=False, description="Whether the budget is used up")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def fitnesses(self) -> npt.NDArray[np.float64]:
        if not all(ind.evaluated for ind in self.members):
            raise InvalidParameterError("Population contains unevaluated individuals")
        return np.array([ind.fitness for ind in self.members], dtype=np.float64)

    def ranked(self) -> Tuple[int, ...]:
        """Member indices from best to worst, ties kept in index order."""
        return tuple(int(i) for i in np.argsort(self.fitnesses, kind="stable"))

    def best(self) -> Individual:
        return self.members[self.ranked()[0]]


def init_population(spec: FunctionSpec, n: int, rng: RngStream) -> Population:
    """
    Create n individuals with genes drawn uniformly inside the function's bounds.

    Args:
        spec: Benchmark function supplying bounds and dimension
        n: Population size, at least 2
        rng: Random stream consumed for the draw

    Returns:
        Unevaluated population at generation 0

    Raises:
        InvalidParameterError: If n < 2
    """
    if n < 2:
        raise InvalidParameterError(f"Population size must be at least 2, got {n}")

    genes = rng.uniform(spec.bounds.lower, spec.bounds.upper, size=(n, spec.dimension))
    # uniform() samples [lower, upper); clip guards the float edge at upper
    genes = np.clip(genes, spec.bounds.lower, spec.bounds.upper)
    members = tuple(Individual(genome=row) for row in genes)
    return Population(members=members)


def evaluate_population(pop: Population, objective: Objective, budget: int) -> Population:
    """
    Evaluate every unevaluated member, charging one evaluation each.

    Raises:
        InvalidParameterError: If the pending evaluations do not fit the budget
    """
    pending = sum(1 for ind in pop.members if not ind.evaluated)
    if pop.evaluations_used + pending > budget:
        raise InvalidParameterError(
            f"Evaluating {pending} individuals exceeds the budget of {budget} "
            f"({pop.evaluations_used} already used; {BUDGET_ACCOUNTING})"
        )
    members = tuple(
        ind if ind.evaluated else ind.evaluate(objective)
        for ind in pop.members
    )
    return pop.model_copy(update={"members": members, "evaluations_used": pop.evaluations_used + pending})


def clamp(genome: Genome, bounds: Bounds) -> Genome:
    """Map every gene onto the closest point of [lower, upper]."""
    return np.clip(np.asarray(genome, dtype=np.float64), bounds.lower, bounds.upper)


def repair(
    genome: Genome,
    bounds: Bounds,
    mode: RepairMode = RepairMode.CLAMP,
    rng: Optional[RngStream] = None,
) -> Genome:
    """
    Bring out-of-box genes back inside the bounds.

    Args:
        genome: Genes to repair
        bounds: Box to repair into
        mode: clamp to the nearest bound, reflect off the violated bound, or
            resample violating genes uniformly
        rng: Required for resample mode only

    Returns:
        A genome with every gene inside [lower, upper]
    """
    genome = np.asarray(genome, dtype=np.float64)
    if mode == RepairMode.CLAMP:
        return clamp(genome, bounds)

    if mode == RepairMode.REFLECT:
        reflected = np.where(genome < bounds.lower, 2 * bounds.lower - genome, genome)
        reflected = np.where(reflected > bounds.upper, 2 * bounds.upper - reflected, reflected)
        # a second bounce can still leave the box when the excursion exceeds the width
        return clamp(reflected, bounds)

    if mode == RepairMode.RESAMPLE:
        if rng is None:
            raise InvalidParameterError("resample repair needs a random stream")
        outside = (genome < bounds.lower) | (genome > bounds.upper)
        repaired = genome.copy()
        repaired[outside] = rng.uniform(bounds.lower, bounds.upper, size=int(outside.sum()))
        return clamp(repaired, bounds)

    raise InvalidParameterError(f"Unknown repair mode: {mode}")


def stream_metadata() -> dict:
    """Describe the random stream so outputs can be reproduced."""
    return {"prng": PRNG_NAME, "numpy": np.__version__}
