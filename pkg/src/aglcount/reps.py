"""Explicit class representatives as affine maps, and the formula-vs-matrix
cross checks.

A representative is assembled block by block: one unipotent bidiagonal
block per unipotent part (the translation-marked class puts the vector
(1, 0, ..., 0) on the first block of the marked size), then one companion
block per power f**j of each irreducible f receiving a nonzero partition.
Partitions are assigned to the irreducibles of one order in canonical
sorted order; any other assignment is handled by the fold multiplicity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .conjugacy import ClassIndex
from .fields import field, poly_is_irreducible, poly_order, poly_pow
from .formulas import element_order, fix_exponent_at, orbit_exponent
from .linalg import (
    AffineMap,
    affine_order,
    boxplus,
    companion_matrix,
    cyclic_orbit_count,
    fixed_point_count,
    jordan_block,
)
from .numtheory import multiplicative_order, psi

__all__ = [
    "ClassCheckReport",
    "IrreducibleRecord",
    "build_representative",
    "irreducibles_of_order",
    "iter_class_representatives",
    "verify_class",
]


@dataclass(frozen=True)
class IrreducibleRecord:
    """A monic irreducible over F_q together with the order of its roots."""

    coeffs: tuple[int, ...]
    degree: int
    order: int


@lru_cache(maxsize=None)
def _scan_degree(q: int, degree: int) -> tuple[IrreducibleRecord, ...]:
    """All monic irreducibles of one degree (except x), lexicographic in the
    ascending coefficient vector, each with its root order."""
    f = field(q)
    out = []
    for tail in itertools.product(f.elements(), repeat=degree):
        if tail[0] == 0:
            continue  # divisible by x; roots are not units
        poly = tuple(tail) + (1,)
        if poly_is_irreducible(f, poly):
            out.append(IrreducibleRecord(poly, degree, poly_order(f, poly)))
    return tuple(out)


def irreducibles_of_order(d: int, q: int) -> tuple[IrreducibleRecord, ...]:
    """The psi(d) monic irreducibles of degree o_d(q) whose roots have
    multiplicative order exactly d, in coefficient-vector order."""
    if d < 1:
        raise ValueError(f"order must be >= 1, got {d}")
    degree = multiplicative_order(q, d)  # also validates gcd(d, q) = 1
    records = tuple(r for r in _scan_degree(q, degree) if r.order == d)
    if len(records) != psi(d, q):
        raise AssertionError(f"found {len(records)} irreducibles of order {d}, expected psi")
    return records


def _unipotent_block(f, size: int, translated: bool) -> AffineMap:
    jb = jordan_block(f, size)
    trans = (1,) + (0,) * (size - 1) if translated else (0,) * size
    return AffineMap(jb, trans)


def _spectral_blocks(f, q: int, spectrum, assignment: tuple[int, ...]) -> list[AffineMap]:
    records = irreducibles_of_order(spectrum.d, q)
    blocks = []
    for slot, entry in zip(assignment, spectrum.entries):
        poly = records[slot].coeffs
        for j, mj in enumerate(entry, start=1):
            if mj == 0:
                continue
            block_poly = poly_pow(f, poly, j)
            for _ in range(mj):
                blocks.append(AffineMap.linear(companion_matrix(f, block_poly)))
    return blocks


def _canonical_assignment(spectrum) -> tuple[int, ...]:
    # sorted entries occupy the last slots: empties fill the front
    k = len(spectrum.entries)
    return tuple(range(spectrum.psi - k, spectrum.psi))


def _assemble(idx: ClassIndex, assignments: tuple[tuple[int, ...], ...]) -> AffineMap:
    f = field(idx.q)
    blocks: list[AffineMap] = []
    marked = idx.marker
    for size, count in enumerate(idx.unipotent, start=1):
        for copy in range(count):
            translated = marked == size and copy == 0
            blocks.append(_unipotent_block(f, size, translated))
    for spectrum, assignment in zip(idx.spectra, assignments):
        blocks.extend(_spectral_blocks(f, idx.q, spectrum, assignment))
    if not blocks:
        raise ValueError("index has no blocks")
    out = blocks[0]
    for b in blocks[1:]:
        out = boxplus(out, b)
    if out.dim != idx.n:
        raise AssertionError(f"assembled dimension {out.dim}, expected {idx.n}")
    return out


def build_representative(idx: ClassIndex) -> AffineMap:
    """The canonical representative of the class index on F_q**n."""
    idx.validate()
    return _assemble(idx, tuple(_canonical_assignment(s) for s in idx.spectra))


def _distinct_assignments(spectrum) -> Iterator[tuple[int, ...]]:
    """Slot choices producing pairwise distinct representatives.

    Groups equal entries and hands each group an unordered slot set; the
    total number of yields is the fold multiplicity of the tuple.
    """
    groups: list[tuple[int, int]] = []  # (start, length) runs of equal entries
    start = 0
    for i in range(1, len(spectrum.entries) + 1):
        if i == len(spectrum.entries) or spectrum.entries[i] != spectrum.entries[start]:
            groups.append((start, i - start))
            start = i

    def place(slots: tuple[int, ...], gi: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if gi == len(groups):
            yield ()
            return
        _, size = groups[gi]
        for chosen in itertools.combinations(slots, size):
            remaining = tuple(s for s in slots if s not in chosen)
            for rest in place(remaining, gi + 1):
                yield (chosen, *rest)

    for chosen_sets in place(tuple(range(spectrum.psi)), 0):
        assignment = [0] * len(spectrum.entries)
        for (gstart, gsize), chosen in zip(groups, chosen_sets):
            for off, slot in enumerate(chosen):
                assignment[gstart + off] = slot
        yield tuple(assignment)


def iter_class_representatives(idx: ClassIndex) -> Iterator[tuple[AffineMap, int]]:
    """(representative, weight) pairs covering all idx.multiplicity() classes
    folded into this index.

    When the index has a single active order d with a single nonempty
    partition entry, all psi(d) assignments are powers sigma**j of one
    another with gcd(j, order(sigma)) = 1 (choose j by CRT: the slot twist
    mod d, 1 mod the p-part), and a power with exponent coprime to the
    order has the same fixed space on any invariant subquotient; one
    representative with weight psi(d) suffices.  Otherwise every distinct
    assignment is yielded with weight 1.
    """
    idx.validate()
    mult = idx.multiplicity()
    if mult == 1 or (len(idx.spectra) == 1 and len(idx.spectra[0].entries) == 1):
        yield build_representative(idx), mult
        return
    for assignments in itertools.product(*(_distinct_assignments(s) for s in idx.spectra)):
        yield _assemble(idx, tuple(assignments)), 1


@dataclass(frozen=True)
class ClassCheckReport:
    """Outcome of checking one class index against its explicit matrix."""

    index: ClassIndex
    order_formula: int
    order_matrix: int
    orbit_formula: int
    orbit_matrix: int
    fix_mismatches: tuple[tuple[int, int, int], ...]  # (k, formula, matrix)

    @property
    def ok(self) -> bool:
        return (
            self.order_formula == self.order_matrix
            and self.orbit_formula == self.orbit_matrix
            and not self.fix_mismatches
        )

    def describe(self) -> str:
        if self.ok:
            return f"ok: {self.index}"
        lines = [f"MISMATCH for {self.index}"]
        if self.order_formula != self.order_matrix:
            lines.append(f"  order: formula {self.order_formula}, matrix {self.order_matrix}")
        if self.orbit_formula != self.orbit_matrix:
            lines.append(f"  orbits: formula {self.orbit_formula}, matrix {self.orbit_matrix}")
        for k, want, got in self.fix_mismatches:
            lines.append(f"  fix at power {k}: formula {want}, matrix {got}")
        return "\n".join(lines)


def verify_class(idx: ClassIndex, point_limit: int = 1 << 20) -> ClassCheckReport:
    """Compare order, per-power fixed points, and orbit count of the built
    representative against the closed formulas."""
    if idx.q**idx.n > point_limit:
        raise ValueError(f"point space {idx.q}**{idx.n} exceeds the check limit")
    sigma = build_representative(idx)
    order_f = element_order(idx)
    order_m = affine_order(sigma)
    mismatches = []
    bound = min(order_f, order_m)
    power = sigma
    for k in range(1, bound + 1):
        if bound % k == 0:
            exp = fix_exponent_at(idx, k)
            want = 0 if exp is None else idx.q**exp
            got = fixed_point_count(power)
            if want != got:
                mismatches.append((k, want, got))
        power = power.then(sigma)
    orbit_f = orbit_exponent(idx)
    orbit_m = cyclic_orbit_count(sigma)
    return ClassCheckReport(
        index=idx,
        order_formula=order_f,
        order_matrix=order_m,
        orbit_formula=orbit_f,
        orbit_matrix=orbit_m,
        fix_mismatches=tuple(mismatches),
    )
