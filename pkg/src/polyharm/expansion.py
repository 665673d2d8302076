"""Multinomial expansion of the iterated Laplacian.

Raising ``d^2/dx_1^2 + ... + d^2/dx_m^2`` to the power ``n`` gives a weighted
sum of pure even-order derivative operators, one per composition ``h`` of
``n`` into ``m`` non-negative parts::

    (sum_i D_i^2)^n = sum_h  n!/(h_1! ... h_m!)  prod_i D_i^(2 h_i)

Everything here is integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

INT64_MAX = 2**63 - 1


class InvalidDimensionError(ValueError):
    """Raised when a dimension or order argument is out of range."""


@dataclass(frozen=True)
class MultiIndex:
    """A composition ``h`` of ``n`` into ``len(h)`` non-negative parts."""

    h: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(v) for v in self.h)
        if len(h) < 1:
            raise InvalidDimensionError("a multi-index needs at least one entry")
        if any(v < 0 for v in h):
            raise ValueError(f"multi-index entries must be non-negative, got {h}")
        object.__setattr__(self, "h", h)

    @property
    def n(self) -> int:
        return sum(self.h)

    @property
    def m(self) -> int:
        return len(self.h)

    def __iter__(self) -> Iterator[int]:
        return iter(self.h)

    def __len__(self) -> int:
        return len(self.h)


@dataclass(frozen=True)
class ExpansionTerm:
    index: MultiIndex
    coefficient: int

    @property
    def derivative_orders(self) -> tuple[int, ...]:
        return tuple(2 * v for v in self.index.h)


def _compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    # first entry descends from n to 0, so (n, 0, ..., 0) comes first
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, m - 1):
            yield (first,) + rest


def enumerate_multi_indices(n: int, m: int) -> list[MultiIndex]:
    """All ``h`` with ``sum(h) == n``, in descending lexicographic order.

    >>> [mi.h for mi in enumerate_multi_indices(2, 2)]
    [(2, 0), (1, 1), (0, 2)]
    """
    if m < 1:
        raise InvalidDimensionError(f"dimension m must be >= 1, got {m}")
    if n < 0:
        raise InvalidDimensionError(f"order n must be >= 0, got {n}")
    return [MultiIndex(h) for h in _compositions(n, m)]


def multinomial_coefficient(h) -> int:
    """``n!/prod(h_i!)`` as a product of binomials.

    Raises OverflowError when the value does not fit a signed 64-bit integer.
    """
    if not isinstance(h, MultiIndex):
        h = MultiIndex(tuple(h))
    result = 1
    partial = 0
    for v in h.h:
        partial += v
        result *= comb(partial, v)
        if result > INT64_MAX:
            raise OverflowError(
                f"multinomial coefficient for h={h.h} exceeds the 64-bit range")
    return result


def expand_polyharmonic(n: int, m: int) -> list[ExpansionTerm]:
    """Terms of ``(sum_i D_i^2)^n``; coefficients sum to ``m**n``."""
    if n < 1:
        raise InvalidDimensionError(f"operator power n must be >= 1, got {n}")
    return [ExpansionTerm(mi, multinomial_coefficient(mi))
            for mi in enumerate_multi_indices(n, m)]


def terms_as_dict(n: int, m: int) -> dict:
    """JSON-ready form ``{n, m, terms: [{h, coeff, orders}]}``."""
    return {
        "n": n,
        "m": m,
        "terms": [{"h": list(t.index.h), "coeff": t.coefficient,
                   "orders": list(t.derivative_orders)}
                  for t in expand_polyharmonic(n, m)],
    }
