"""
Benchmark objectives F1-F6 with their search boxes and known optima.

All functions are minimized and defined on the whole real space; bound
enforcement belongs to the engine.
"""

import logging
from functools import partial
from typing import Callable, Dict, NamedTuple

import numpy as np

from .errors import InvalidParameterError
from .genome import Genome, Objective
from .types import Bounds, FunctionId, FunctionSpec, SchwefelVariant

logger = logging.getLogger(__name__)

SCHWEFEL_OPTIMUM_POINT = 420.968
SCHWEFEL_OPTIMUM_VALUE = -418.9829


class CatalogEntry(NamedTuple):
    name: str
    bound: float
    optimum_point: float
    optimum_value: float
    modality: str
    separable: bool
    min_dimension: int


FUNCTION_CATALOG: Dict[FunctionId, CatalogEntry] = {
    FunctionId.F1: CatalogEntry("Sphere", 5.12, 0.0, 0.0, "unimodal", True, 1),
    FunctionId.F2: CatalogEntry("Axis parallel hyper-ellipsoid", 5.12, 0.0, 0.0, "unimodal", True, 1),
    FunctionId.F3: CatalogEntry("Rotated hyper-ellipsoid", 65.536, 0.0, 0.0, "unimodal", False, 1),
    FunctionId.F4: CatalogEntry(
        "Normalized Schwefel", 500.0, SCHWEFEL_OPTIMUM_POINT, SCHWEFEL_OPTIMUM_VALUE,
        "multimodal", True, 1,
    ),
    FunctionId.F5: CatalogEntry("Generalized Rastrigin", 5.12, 0.0, 0.0, "multimodal", True, 1),
    FunctionId.F6: CatalogEntry("Rosenbrock's valley", 2.048, 1.0, 0.0, "unimodal", False, 2),
}


def sphere(x: np.ndarray) -> float:
    return float(np.sum(x * x))


def axis_parallel_ellipsoid(x: np.ndarray) -> float:
    weights = np.arange(1, x.shape[0] + 1, dtype=np.float64)
    return float(np.sum(weights * x * x))


def rotated_ellipsoid(x: np.ndarray) -> float:
    prefix = np.cumsum(x)
    return float(np.sum(prefix * prefix))


def schwefel(x: np.ndarray, variant: SchwefelVariant = SchwefelVariant.NORMALIZED) -> float:
    total = float(np.sum(-x * np.sin(np.sqrt(np.abs(x)))))
    if variant == SchwefelVariant.NORMALIZED:
        return total / x.shape[0]
    return total


def rastrigin(x: np.ndarray) -> float:
    return float(10.0 * x.shape[0] + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def rosenbrock(x: np.ndarray) -> float:
    head = x[:-1]
    return float(np.sum(100.0 * (x[1:] - head * head) ** 2 + (1.0 - head) ** 2))


_FUNCTIONS: Dict[FunctionId, Callable[[np.ndarray], float]] = {
    FunctionId.F1: sphere,
    FunctionId.F2: axis_parallel_ellipsoid,
    FunctionId.F3: rotated_ellipsoid,
    FunctionId.F5: rastrigin,
    FunctionId.F6: rosenbrock,
}


def evaluate(
    function_id: FunctionId,
    x: Genome,
    variant: SchwefelVariant = SchwefelVariant.NORMALIZED,
) -> float:
    """
    Evaluate a benchmark function at ``x``.

    Args:
        function_id: Which of F1-F6
        x: Point to evaluate; may lie outside the search box
        variant: F4 scaling, ignored by the other functions

    Returns:
        Objective value

    Raises:
        InvalidParameterError: If x is empty, or shorter than 2 for F6
    """
    function_id = FunctionId(function_id)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] == 0:
        raise InvalidParameterError("Cannot evaluate an empty genome")
    minimum = FUNCTION_CATALOG[function_id].min_dimension
    if x.shape[0] < minimum:
        raise InvalidParameterError(
            f"{function_id.value} needs at least {minimum} genes, got {x.shape[0]}"
        )

    if function_id == FunctionId.F4:
        return schwefel(x, SchwefelVariant(variant))
    return _FUNCTIONS[function_id](x)


def spec_of(function_id: FunctionId, dimension: int) -> FunctionSpec:
    """
    Bounds and optimum of a benchmark function at the given dimension.

    Raises:
        InvalidParameterError: If dimension < 1, or < 2 for F6
    """
    function_id = FunctionId(function_id)
    entry = FUNCTION_CATALOG[function_id]
    if dimension < entry.min_dimension:
        raise InvalidParameterError(
            f"{function_id.value} needs dimension >= {entry.min_dimension}, got {dimension}"
        )
    return FunctionSpec(
        id=function_id,
        dimension=dimension,
        bounds=Bounds(lower=-entry.bound, upper=entry.bound),
        optimum_point=entry.optimum_point,
        optimum_value=entry.optimum_value,
    )


def optimum_value(spec: FunctionSpec, variant: SchwefelVariant = SchwefelVariant.NORMALIZED) -> float:
    """Known optimum of ``spec`` under the chosen F4 scaling."""
    if spec.id == FunctionId.F4 and variant == SchwefelVariant.RAW:
        return spec.optimum_value * spec.dimension
    return spec.optimum_value


def objective_for(
    spec: FunctionSpec,
    variant: SchwefelVariant = SchwefelVariant.NORMALIZED,
) -> Objective:
    """Callable objective for ``spec``, suitable for the engine."""
    return partial(evaluate, spec.id, variant=variant)
