"""Conjugacy-class indices for AGL(n, F_q) and their enumeration.

A class index holds a unipotent partition, one partition tuple per
polynomial order d (only orders with a nonempty tuple are stored), and an
optional translation marker t.  Indices without a marker parametrize the
purely linear-conjugate classes; an index with marker t names the class
whose representative carries a translation on one size-t Jordan block.

Tuples that differ only by permuting their entries across the psi(d)
irreducibles of order d are folded into one index; the fold multiplicity
is the multinomial ``permutation_count`` and weights every Burnside sum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .numtheory import divisors, multiplicative_order, prime_power, psi
from .partitions import (
    Partition,
    canon,
    enumerate_partitions,
    largest_part,
    order_key,
    support,
    weight,
)

__all__ = [
    "ClassIndex",
    "PartitionTuple",
    "class_count",
    "compute_D",
    "enumerate_classes",
    "enumerate_omega",
    "permutation_count_s",
]


@dataclass(frozen=True)
class PartitionTuple:
    """Nondecreasing tuple of partitions attached to one polynomial order d.

    ``entries`` stores only the nonempty partitions; the remaining
    psi - len(entries) slots are implicitly the empty partition (which
    sorts first, so the stored entries are the tail of the full tuple).
    """

    d: int
    psi: int
    entries: tuple[Partition, ...]

    @classmethod
    def make(cls, d: int, psi_d: int, entries) -> "PartitionTuple":
        kept = sorted((canon(e) for e in entries if weight(canon(e)) > 0), key=order_key)
        if len(kept) > psi_d:
            raise ValueError(
                f"{len(kept)} nonempty partitions but only psi({d}) = {psi_d} slots"
            )
        return cls(d=d, psi=psi_d, entries=tuple(kept))

    def total_weight(self) -> int:
        return sum(weight(e) for e in self.entries)

    def largest_part(self) -> int:
        return max((largest_part(e) for e in self.entries), default=0)

    def permutation_count(self) -> int:
        return _permutation_count(self.psi, self.entries)


@lru_cache(maxsize=None)
def _permutation_count(psi_d: int, entries: tuple[Partition, ...]) -> int:
    # multinomial over slot contents; the psi - k empty slots are one group
    k = len(entries)
    out = math.comb(psi_d, k) * math.factorial(k)
    for _, group in itertools.groupby(entries):
        out //= math.factorial(sum(1 for _ in group))
    return out


def permutation_count_s(t: PartitionTuple) -> int:
    """Number of distinct arrangements of the full psi-slot tuple."""
    return t.permutation_count()


@dataclass(frozen=True)
class ClassIndex:
    """One folded conjugacy-class index of AGL(n, F_q)."""

    n: int
    q: int
    unipotent: Partition
    spectra: tuple[PartitionTuple, ...]
    marker: int | None = None

    def multiplicity(self) -> int:
        out = 1
        for t in self.spectra:
            out *= _permutation_count(t.psi, t.entries)
        return out

    def validate(self) -> None:
        pp = prime_power(self.q)
        total = weight(self.unipotent)
        seen = set()
        for t in self.spectra:
            if t.d in seen:
                raise ValueError(f"duplicate order d = {t.d}")
            seen.add(t.d)
            o = multiplicative_order(self.q, t.d)
            if t.d <= 1 or t.d % pp.p == 0:
                raise ValueError(f"d = {t.d} not coprime to q or too small")
            if t.psi != psi(t.d, self.q):
                raise ValueError(f"psi mismatch for d = {t.d}")
            if not t.entries:
                raise ValueError(f"empty tuple stored for d = {t.d}")
            if len(t.entries) > t.psi:
                raise ValueError(f"too many entries for d = {t.d}")
            total += o * t.total_weight()
        if total != self.n:
            raise ValueError(f"weights sum to {total}, expected n = {self.n}")
        if self.marker is not None:
            if weight(self.unipotent) == 0:
                raise ValueError("translation marker requires a unipotent part")
            if self.marker not in support(self.unipotent):
                raise ValueError(f"marker {self.marker} not a part size of {self.unipotent}")


@lru_cache(maxsize=None)
def compute_D(n: int, q: int) -> tuple[int, ...]:
    """All d > 1 dividing q**i - 1 for some 1 <= i <= n, sorted ascending."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    prime_power(q)
    out: set[int] = set()
    for i in range(1, n + 1):
        out.update(d for d in divisors(q**i - 1) if d > 1)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _d_info(n: int, q: int) -> tuple[tuple[int, int, int], ...]:
    return tuple((d, multiplicative_order(q, d), psi(d, q)) for d in compute_D(n, q))


def _shapes_from(m: int, cap: int, min_key) -> Iterator[tuple[Partition, ...]]:
    if m == 0:
        yield ()
        return
    if cap == 0:
        return
    for w in range(1, m + 1):
        for mu in enumerate_partitions(w):
            key = order_key(mu)
            if min_key is not None and key < min_key:
                continue
            for rest in _shapes_from(m - w, cap - 1, key):
                yield (mu, *rest)


@lru_cache(maxsize=None)
def _tuple_shapes(m: int, cap: int) -> tuple[tuple[Partition, ...], ...]:
    """Nondecreasing tuples of nonempty partitions, total weight m, length <= cap."""
    return tuple(_shapes_from(m, cap, None))


def _iter_spectra(dinfo, start: int, budget: int) -> Iterator[tuple[PartitionTuple, ...]]:
    if budget == 0:
        yield ()
        return
    for j in range(start, len(dinfo)):
        d, o, psi_d = dinfo[j]
        if o > budget:
            continue
        for m in range(1, budget // o + 1):
            rest = budget - o * m
            for entries in _tuple_shapes(m, min(psi_d, m)):
                head = PartitionTuple(d=d, psi=psi_d, entries=entries)
                for tail in _iter_spectra(dinfo, j + 1, rest):
                    yield (head, *tail)


def enumerate_omega(n: int, q: int) -> Iterator[ClassIndex]:
    """All (unipotent partition, spectra) indices with total weight n.

    Deterministic order: unipotent weight descending, then partition order,
    then spectra by ascending d and tuple shape.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    prime_power(q)
    dinfo = _d_info(n, q)
    for w in range(n, -1, -1):
        for lam in enumerate_partitions(w):
            for spectra in _iter_spectra(dinfo, 0, n - w):
                yield ClassIndex(n=n, q=q, unipotent=lam, spectra=spectra)


def enumerate_classes(n: int, q: int) -> Iterator[ClassIndex]:
    """All class indices: each omega index, then its translation-marked ones."""
    for idx in enumerate_omega(n, q):
        yield idx
        for t in support(idx.unipotent):
            yield ClassIndex(
                n=n, q=q, unipotent=idx.unipotent, spectra=idx.spectra, marker=t
            )


def class_count(n: int, q: int) -> int:
    """Number of conjugacy classes of AGL(n, F_q): indices weighted by fold size."""
    return sum(idx.multiplicity() for idx in enumerate_classes(n, q))
