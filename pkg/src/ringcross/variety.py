"""
Exhaustive offspring-variety enumeration for the structural operators.

Parents are fixed to p1 = [1..d] and p2 = [d+1..2d] so that every gene is a
distinct symbol; deduplication then counts structurally different children
rather than value collisions.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .config import ProtocolDefaults
from .crossover import ring_at, spc_at, tpc_at
from .errors import InvalidParameterError
from .types import CrossoverKind, OffspringSet

logger = logging.getLogger(__name__)

STRUCTURAL_OPERATORS = (CrossoverKind.SPC, CrossoverKind.TPC, CrossoverKind.RC)


def symbolic_parents(d: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.arange(1, d + 1), np.arange(d + 1, 2 * d + 1)


def _choices(op: CrossoverKind, d: int) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    p1, p2 = symbolic_parents(d)
    if op == CrossoverKind.SPC:
        for k in range(1, d):
            yield spc_at(p1, p2, k)
    elif op == CrossoverKind.TPC:
        for i, j in itertools.combinations(range(1, d), 2):
            yield tpc_at(p1, p2, i, j)
    else:
        for c in range(2 * d):
            yield ring_at(p1, p2, c)


def _check_length(d: int) -> None:
    low, high = ProtocolDefaults.VARIETY_MIN_LENGTH, ProtocolDefaults.VARIETY_MAX_LENGTH
    if not low <= d <= high:
        raise InvalidParameterError(f"Parent length {d} outside {low}..{high}")


def enumerate_offspring(op: CrossoverKind, d: int) -> OffspringSet:
    """
    Enumerate every child ``op`` can produce from the symbolic parents of length d.

    Args:
        op: SPC, TPC or RC
        d: Parent length, 1..12

    Returns:
        Distinct children and the raw (choice x child) enumeration count

    Raises:
        InvalidParameterError: For a non-structural operator or d out of range
    """
    op = CrossoverKind(op)
    if op not in STRUCTURAL_OPERATORS:
        raise InvalidParameterError(
            f"{op.name} blends gene values; only SPC, TPC and RC can be enumerated"
        )
    _check_length(d)

    raw_count = 0
    children = set()
    for pair in _choices(op, d):
        for child in pair:
            raw_count += 1
            children.add(tuple(int(g) for g in child))
    return OffspringSet(
        operator=op,
        parent_length=d,
        children=frozenset(children),
        raw_count=raw_count,
    )


def _distinct(op: CrossoverKind, d: int) -> Optional[int]:
    """Distinct-children count, or None when ``op`` has no valid cut at length d."""
    if op == CrossoverKind.SPC and d < 2:
        return None
    if op == CrossoverKind.TPC and d < 3:
        return None
    return len(enumerate_offspring(op, d).children)


def variety_report(d_min: int, d_max: int) -> str:
    """
    Distinct-children counts of SPC, TPC and RC for every d in [d_min, d_max].

    Operators without a valid cut at a given length report ``n/a``.
    """
    _check_length(d_min)
    _check_length(d_max)
    if d_min > d_max:
        raise InvalidParameterError(f"d_min ({d_min}) exceeds d_max ({d_max})")

    columns = ("d", "SPC", "TPC", "RC", "RC/SPC")
    rows: List[Tuple[str, ...]] = []
    for d in range(d_min, d_max + 1):
        counts = [_distinct(op, d) for op in STRUCTURAL_OPERATORS]
        spc_count, rc_count = counts[0], counts[2]
        ratio = f"{rc_count / spc_count:.2f}" if spc_count else "n/a"
        rows.append((str(d), *("n/a" if c is None else str(c) for c in counts), ratio))

    widths = [max(len(col), *(len(row[i]) for row in rows)) for i, col in enumerate(columns)]
    lines = ["  ".join(col.rjust(w) for col, w in zip(columns, widths))]
    lines.extend("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in rows)
    return "\n".join(lines) + "\n"
