"""Jordan elements of S_n (n >= 12) and Jordan powers of cyclic groups."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .errors import OutOfDomainError, PreconditionError
from .perm import Permutation, _cycles_raw

__all__ = ["JordanKind", "is_jordan", "jordan_power", "jordan_kind_of_type"]

TWO_TRANSPOSITIONS = "TwoTranspositions"
CYCLE_FIXING_THREE = "CycleFixingThree"
SMALL_SUPPORT = "SmallSupport"


@dataclass(frozen=True)
class JordanKind:
    variant: str
    detail: object


def jordan_kind_of_type(moved: tuple, n: int) -> Optional[JordanKind]:
    """Classify from the nontrivial cycle lengths of a non-identity element."""
    if n < 12:
        raise OutOfDomainError("Jordan elements are only defined for n >= 12")
    if not moved:
        raise PreconditionError("the identity is not classified")
    moved = tuple(sorted(moved))
    if moved == (2, 2):
        return JordanKind(TWO_TRANSPOSITIONS, "2^2")
    supp = sum(moved)
    if len(moved) == 1 and n - supp >= 3:
        return JordanKind(CYCLE_FIXING_THREE, n - supp)
    # |supp| <= 2(sqrt(n) - 1)  <=>  (|supp| + 2)^2 <= 4n
    if (supp + 2) ** 2 <= 4 * n:
        return JordanKind(SMALL_SUPPORT, supp)
    return None


def is_jordan(p: Permutation) -> Optional[JordanKind]:
    """The first matching clause, or ``None`` when ``p`` is not Jordan."""
    return jordan_kind_of_type(tuple(len(c) for c in _cycles_raw(p._a)), p.degree)


def jordan_power(x: Permutation):
    """Smallest ``m`` with ``x**m`` Jordan, as ``(m, kind)``, else ``None``.

    The cycle lengths of ``x**m`` are read off those of ``x``: a cycle of
    length L splits into gcd(L, m) cycles of length L / gcd(L, m).
    """
    n = x.degree
    if n < 12:
        raise OutOfDomainError("Jordan elements are only defined for n >= 12")
    lengths = [len(c) for c in _cycles_raw(x._a)]
    o = x.order()
    for m in range(1, o):
        moved = []
        for L in lengths:
            g = gcd(L, m)
            if L // g > 1:
                moved.extend([L // g] * g)
        if not moved:
            continue
        kind = jordan_kind_of_type(tuple(moved), n)
        if kind is not None:
            return m, kind
    return None
