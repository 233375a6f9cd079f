"""
Two-parent crossover operators.

Structural operators (single point, two point, ring) move genes between
positions; arithmetic operators (intermediate, heuristic, arithmetic) blend
gene values. Every random operator draws its choices from the supplied stream
and then calls a deterministic core (``*_at`` / ``*_with``) that applies the
rule, so tests and the variety enumerator can replay any choice exactly.

Outputs are raw: nothing here enforces bounds.
"""

import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import InvalidParameterError
from .genome import Genome, RngStream
from .types import CrossoverKind, CrossoverParams

logger = logging.getLogger(__name__)


class CrossoverOutcome(BaseModel):
    """Children of one mating plus the random choices that produced them."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    children: Tuple[np.ndarray, ...] = Field(description="Raw children, bounds not enforced")
    metadata: Dict[str, Any] = Field(default_factory=dict, description="Cut points or blend factors drawn")


def children_per_mating(kind: CrossoverKind) -> int:
    """Number of children a single application of ``kind`` yields."""
    return 1 if kind == CrossoverKind.HC else 2


def _check_pair(p1, p2, min_length: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Validate that two parents are 1-D, equally long and long enough."""
    p1 = np.asarray(p1)
    p2 = np.asarray(p2)
    if p1.ndim != 1 or p2.ndim != 1:
        raise InvalidParameterError("Parents must be one-dimensional genomes")
    if p1.shape != p2.shape:
        raise InvalidParameterError(
            f"Parent lengths differ: {p1.shape[0]} vs {p2.shape[0]}"
        )
    if p1.shape[0] < min_length:
        raise InvalidParameterError(
            f"Genome length {p1.shape[0]} is below the operator minimum of {min_length}"
        )
    return p1, p2


# Single point

def spc_at(p1, p2, k: int) -> Tuple[np.ndarray, np.ndarray]:
    """Swap everything from cut ``k`` onward (1 <= k <= D-1)."""
    p1, p2 = _check_pair(p1, p2, min_length=2)
    if not 1 <= k < p1.shape[0]:
        raise InvalidParameterError(f"Cut point {k} outside 1..{p1.shape[0] - 1}")
    child1 = np.concatenate([p1[:k], p2[k:]])
    child2 = np.concatenate([p2[:k], p1[k:]])
    return child1, child2


def spc(p1: Genome, p2: Genome, rng: RngStream) -> CrossoverOutcome:
    """
    Single point crossover.

    Args:
        p1: First parent
        p2: Second parent, same length D >= 2
        rng: Stream the cut point is drawn from

    Returns:
        Two children; metadata records the cut ``k``

    Raises:
        InvalidParameterError: If D < 2 or the lengths differ
    """
    p1, p2 = _check_pair(p1, p2, min_length=2)
    k = int(rng.integers(1, p1.shape[0]))
    return CrossoverOutcome(children=spc_at(p1, p2, k), metadata={"cut": k})


# Two point

def tpc_at(p1, p2, i: int, j: int) -> Tuple[np.ndarray, np.ndarray]:
    """Exchange the segment [i, j) between the parents (1 <= i < j <= D-1)."""
    p1, p2 = _check_pair(p1, p2, min_length=3)
    if not 1 <= i < j < p1.shape[0]:
        raise InvalidParameterError(
            f"Cut points ({i}, {j}) must satisfy 1 <= i < j <= {p1.shape[0] - 1}"
        )
    child1 = p1.copy()
    child2 = p2.copy()
    child1[i:j] = p2[i:j]
    child2[i:j] = p1[i:j]
    return child1, child2


def tpc(p1: Genome, p2: Genome, rng: RngStream) -> CrossoverOutcome:
    """
    Two point crossover with an interior cut pair drawn uniformly.

    Raises:
        InvalidParameterError: If D < 3 or the lengths differ
    """
    p1, p2 = _check_pair(p1, p2, min_length=3)
    i, j = sorted(int(c) for c in rng.choice(np.arange(1, p1.shape[0]), size=2, replace=False))
    return CrossoverOutcome(children=tpc_at(p1, p2, i, j), metadata={"cuts": (i, j)})


# Intermediate

def intermediate_with(p1, p2, r, ratio: float) -> Tuple[np.ndarray, np.ndarray]:
    """Blend with weights ``r`` (scalar or per gene); the second child mirrors the first."""
    p1, p2 = _check_pair(p1, p2)
    p1 = p1.astype(np.float64)
    p2 = p2.astype(np.float64)
    weights = np.asarray(r, dtype=np.float64) * ratio
    child1 = p1 + weights * (p2 - p1)
    child2 = p2 + weights * (p1 - p2)
    if ratio <= 1.0 and np.all((weights >= 0) & (weights <= 1)):
        # rounding may overshoot a parent by an ulp; children stay in the hypercube
        low, high = np.minimum(p1, p2), np.maximum(p1, p2)
        child1 = np.clip(child1, low, high)
        child2 = np.clip(child2, low, high)
    return child1, child2


def intermediate(
    p1: Genome,
    p2: Genome,
    params: CrossoverParams,
    rng: RngStream,
) -> CrossoverOutcome:
    """
    Intermediate crossover: ``p1 + rand * ratio * (p2 - p1)`` and its mirror.

    One uniform weight per gene by default, so children can reach any point of
    the parents' hypercube; ``params.ic_scalar`` restricts them to the line.
    """
    p1, p2 = _check_pair(p1, p2)
    r = rng.random() if params.ic_scalar else rng.random(p1.shape[0])
    children = intermediate_with(p1, p2, r, params.ic_ratio)
    return CrossoverOutcome(children=children, metadata={"rand": r})


# Heuristic

def heuristic(better: Genome, worse: Genome, params: CrossoverParams) -> CrossoverOutcome:
    """
    Heuristic crossover: step from the worse parent past the better one.

    The caller orders the parents by fitness. No randomness is involved.
    The child is computed as ``better + (ratio - 1) * (better - worse)``,
    which equals ``worse + ratio * (better - worse)`` up to rounding; at
    ratio 1 it reproduces ``better`` exactly.
    """
    better, worse = _check_pair(better, worse)
    better = better.astype(np.float64)
    worse = worse.astype(np.float64)
    child = better + (params.hc_ratio - 1.0) * (better - worse)
    return CrossoverOutcome(children=(child,), metadata={"ratio": params.hc_ratio})


# Arithmetic

def arithmetic_with(p1, p2, alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    """Weighted means ``alpha*p1 + (1-alpha)*p2`` and ``alpha*p2 + (1-alpha)*p1``."""
    p1, p2 = _check_pair(p1, p2)
    p1 = p1.astype(np.float64)
    p2 = p2.astype(np.float64)
    child1 = alpha * p1 + (1.0 - alpha) * p2
    child2 = alpha * p2 + (1.0 - alpha) * p1
    return child1, child2


def arithmetic(p1: Genome, p2: Genome, rng: RngStream) -> CrossoverOutcome:
    """Arithmetic crossover with one alpha per mating."""
    _check_pair(p1, p2)
    alpha = float(rng.random())
    return CrossoverOutcome(children=arithmetic_with(p1, p2, alpha), metadata={"alpha": alpha})


# Ring

def ring_at(p1, p2, c: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Read two children off the ring ``p1 ++ p2`` starting at cut ``c``.

    The first child takes D genes clockwise from ``c``; the second takes D
    genes anti-clockwise from ``c - 1``, so it comes out reversed. Together
    they cover every ring position exactly once.
    """
    p1, p2 = _check_pair(p1, p2)
    d = p1.shape[0]
    if not 0 <= c < 2 * d:
        raise InvalidParameterError(f"Ring cut {c} outside 0..{2 * d - 1}")
    ring_genes = np.concatenate([p1, p2])
    steps = np.arange(d)
    child1 = ring_genes[(c + steps) % (2 * d)]
    child2 = ring_genes[(c - 1 - steps) % (2 * d)]
    return child1, child2


def ring(p1: Genome, p2: Genome, rng: RngStream) -> CrossoverOutcome:
    """
    Ring crossover.

    Joins both parents into a ring of length 2D, cuts it at a uniformly drawn
    position and reads one child clockwise and one anti-clockwise.

    Raises:
        InvalidParameterError: If the lengths differ
    """
    p1, p2 = _check_pair(p1, p2)
    c = int(rng.integers(0, 2 * p1.shape[0]))
    return CrossoverOutcome(children=ring_at(p1, p2, c), metadata={"cut": c})


def crossover(
    kind: CrossoverKind,
    p1: Genome,
    p2: Genome,
    params: CrossoverParams,
    rng: RngStream,
    f1: Optional[float] = None,
    f2: Optional[float] = None,
) -> CrossoverOutcome:
    """
    Apply the operator ``kind`` to a mating pair.

    Args:
        kind: Operator to apply
        p1: First parent
        p2: Second parent
        params: Operator ratios
        rng: Random stream
        f1: Objective value of p1 (heuristic crossover only)
        f2: Objective value of p2 (heuristic crossover only)

    Returns:
        The operator's outcome
    """
    if kind == CrossoverKind.SPC:
        return spc(p1, p2, rng)
    if kind == CrossoverKind.TPC:
        return tpc(p1, p2, rng)
    if kind == CrossoverKind.IC:
        return intermediate(p1, p2, params, rng)
    if kind == CrossoverKind.HC:
        if f1 is None or f2 is None:
            raise InvalidParameterError("Heuristic crossover needs both parents' fitness")
        # minimization: lower value is better, ties keep the given order
        if f2 < f1:
            p1, p2 = p2, p1
        return heuristic(p1, p2, params)
    if kind == CrossoverKind.AC:
        return arithmetic(p1, p2, rng)
    if kind == CrossoverKind.RC:
        return ring(p1, p2, rng)
    raise InvalidParameterError(f"Unknown crossover operator: {kind}")


def minimum_length(kind: CrossoverKind) -> int:
    """Shortest genome ``kind`` accepts."""
    return {CrossoverKind.SPC: 2, CrossoverKind.TPC: 3}.get(kind, 1)
