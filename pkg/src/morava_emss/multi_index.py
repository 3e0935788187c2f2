"""Multi-index calculus for circle-product monomials.

A multi-index is an n-tuple over {0,1}.  The operators here (shift,
cyclic rotation, trailing/leading counts, the basic index families)
drive all generator bookkeeping for the Hopf ring and the spectral
sequence differential rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


@dataclass(frozen=True, order=True)
class MultiIndex:
    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"multi-index entries must be 0 or 1: {self.bits}")

    @classmethod
    def from_string(cls, text: str) -> "MultiIndex":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"invalid multi-index string {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        """Number of ones (the slice the class lives in)."""
        return sum(self.bits)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, b in enumerate(self.bits) if b)

    def __str__(self):
        return "".join(str(b) for b in self.bits)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        if self.n != other.n:
            raise ValueError("length mismatch")
        if self.support & other.support:
            raise ValueError(f"overlapping support: {self} + {other}")
        return MultiIndex(tuple(a + b for a, b in zip(self.bits, other.bits)))

    def shift(self, k: int = 1) -> "MultiIndex":
        """Left shift s^k: drop k leading entries, append k zeros."""
        if k < 0:
            raise ValueError("shift exponent must be nonnegative")
        k = min(k, self.n)
        return MultiIndex(self.bits[k:] + (0,) * k)

    def unshift(self, k: int = 1) -> "MultiIndex":
        """Right shift with zero fill: drop k trailing entries, prepend k zeros.

        Inverse of shift when the dropped entries are zero.
        """
        if k < 0:
            raise ValueError("unshift exponent must be nonnegative")
        k = min(k, self.n)
        return MultiIndex((0,) * k + self.bits[: self.n - k])

    def cyclic(self, k: int = 1) -> "MultiIndex":
        """Cyclic rotation c^k: (i_k, ..., i_{n-1}, i_0, ..., i_{k-1})."""
        k %= self.n
        return MultiIndex(self.bits[k:] + self.bits[:k])

    def trailing(self, eps: int):
        """Number of trailing entries equal to eps; inf if all entries are eps."""
        if eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        count = self.trailing_count(eps)
        return INF if count == self.n else count

    def trailing_count(self, eps: int) -> int:
        """Literal trailing count (n, not inf, on the all-eps index)."""
        count = 0
        for b in reversed(self.bits):
            if b != eps:
                break
            count += 1
        return count

    def leading(self, eps: int) -> int:
        """Number of leading entries equal to eps."""
        if eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")
        count = 0
        for b in self.bits:
            if b != eps:
                break
            count += 1
        return count


def zero_index(n: int) -> MultiIndex:
    return MultiIndex((0,) * n)


def unit_index(n: int, k: int) -> MultiIndex:
    """The index with a single 1 in position k."""
    if not 0 <= k < n:
        raise ValueError("position out of range")
    return MultiIndex(tuple(1 if i == k else 0 for i in range(n)))


def leading_ones(n: int, k: int) -> MultiIndex:
    """(1,...,1,0,...,0) with k ones."""
    if not 0 <= k <= n:
        raise ValueError("count out of range")
    return MultiIndex((1,) * k + (0,) * (n - k))


def trailing_ones(n: int, k: int) -> MultiIndex:
    """(0,...,0,1,...,1) with k ones."""
    if not 0 <= k <= n:
        raise ValueError("count out of range")
    return MultiIndex((0,) * (n - k) + (1,) * k)


def all_indices(n: int):
    """All 2^n multi-indices of length n, lexicographically."""
    out = []
    for mask in range(2 ** n):
        bits = tuple((mask >> (n - 1 - i)) & 1 for i in range(n))
        out.append(MultiIndex(bits))
    return out
