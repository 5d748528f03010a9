"""Boolean algebraic normal form, the affine action on Reed-Muller
quotients, and the Burnside counts of quotient-code orbits.

Binary only: the quotient machinery relies on F_2 coefficient arithmetic
(XOR) throughout.  A monomial is a bitmask over the n variables; a
polynomial is a set of monomials.  The hot path packs a whole polynomial
into one Python int with 2**n indicator bits, so multiplying by an affine
linear form is a handful of mask/shift/xor operations on that int.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .conjugacy import ClassIndex, enumerate_classes
from .formulas import centralizer_order
from .linalg import AffineMap, GFMatrix, gf2_rank
from .numtheory import agl_group_order

__all__ = [
    "AnfPoly",
    "RMQuotientBasis",
    "action_matrix",
    "anf_substitute",
    "coset_class_count_M",
    "fix_on_quotient",
    "monomial_images",
    "theta",
]

_MAX_VARS = 24


@dataclass(frozen=True)
class AnfPoly:
    """Multilinear polynomial over F_2: a set of monomial bitmasks."""

    nvars: int
    monomials: frozenset[int]

    def __post_init__(self):
        if not 0 <= self.nvars <= _MAX_VARS:
            raise ValueError(f"nvars must be in 0..{_MAX_VARS}")
        if any(m >> self.nvars for m in self.monomials):
            raise ValueError("monomial uses a variable outside the range")
        if not isinstance(self.monomials, frozenset):
            object.__setattr__(self, "monomials", frozenset(self.monomials))

    @classmethod
    def zero(cls, nvars: int) -> "AnfPoly":
        return cls(nvars, frozenset())

    @classmethod
    def one(cls, nvars: int) -> "AnfPoly":
        return cls(nvars, frozenset({0}))

    @classmethod
    def variable(cls, nvars: int, i: int) -> "AnfPoly":
        return cls(nvars, frozenset({1 << i}))

    @property
    def degree(self) -> int:
        """Largest monomial size; -1 for the zero polynomial."""
        return max((m.bit_count() for m in self.monomials), default=-1)

    def __add__(self, other: "AnfPoly") -> "AnfPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        return AnfPoly(self.nvars, self.monomials ^ other.monomials)

    def __mul__(self, other: "AnfPoly") -> "AnfPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        acc: set[int] = set()
        for a in self.monomials:
            for b in other.monomials:
                acc ^= {a | b}
        return AnfPoly(self.nvars, frozenset(acc))

    def evaluate(self, point: tuple[int, ...]) -> int:
        mask = sum(1 << i for i, x in enumerate(point) if x & 1)
        return sum(1 for m in self.monomials if m & mask == m) & 1


def anf_substitute(poly: AnfPoly, sigma: AffineMap) -> AnfPoly:
    """Substitute each variable by its affine image under x |-> x A + a.

    Variable i becomes (column i of A) . X + a_i; the result is expanded
    and reduced by X_i**2 = X_i.  Degree never increases.
    """
    if sigma.field.q != 2:
        raise ValueError("substitution is defined over F_2 only")
    if sigma.dim != poly.nvars:
        raise ValueError("dimension mismatch")
    n = poly.nvars
    forms = []
    for i in range(n):
        terms = {1 << j for j in range(n) if sigma.matrix.entries[j][i]}
        if sigma.translation[i]:
            terms.add(0)
        forms.append(frozenset(terms))
    acc: set[int] = set()
    for monomial in poly.monomials:
        prod: set[int] = {0}
        m = monomial
        while m:
            low = m & -m
            m ^= low
            nxt: set[int] = set()
            for a in prod:
                for b in forms[low.bit_length() - 1]:
                    nxt ^= {a | b}
            prod = nxt
        acc ^= prod
    return AnfPoly(n, frozenset(acc))


# ---------------------------------------------------------------------------
# packed substitution engine


@lru_cache(maxsize=None)
def _var_masks(n: int) -> tuple[tuple[int, int], ...]:
    """Per variable: (positions with the variable absent, positions with it
    present) over the 2**n monomial slots of a packed polynomial."""
    size = 1 << n
    full = (1 << size) - 1
    out = []
    for i in range(n):
        chunk = (1 << (1 << i)) - 1
        width = 1 << (i + 1)
        while width < size:
            chunk |= chunk << width
            width <<= 1
        out.append((chunk, full ^ chunk))
    return tuple(out)


def raw_monomial_images(
    entries, translation, n: int, max_degree: int
) -> list[int | None]:
    """Packed substituted images from raw 0/1 matrix rows and translation.

    No invertibility requirement; compounds of singular matrices use this
    path too.  Entry m (a variable bitmask) holds the coefficient vector of
    the image of that monomial, one indicator bit per monomial slot; other
    entries are None.
    """
    masks = _var_masks(n)
    forms = []
    for i in range(n):
        varmask = 0
        for j in range(n):
            if entries[j][i]:
                varmask |= 1 << j
        forms.append((varmask, translation[i]))
    size = 1 << n
    images: list[int | None] = [None] * size
    images[0] = 1
    for m in range(1, size):
        if m.bit_count() > max_degree:
            continue
        low = m & -m
        base = images[m ^ low]
        varmask, const = forms[low.bit_length() - 1]
        acc = base if const else 0
        v = varmask
        while v:
            vlow = v & -v
            v ^= vlow
            absent, present = masks[vlow.bit_length() - 1]
            acc ^= ((base & absent) << vlow) ^ (base & present)
        images[m] = acc
    return images


def monomial_images(sigma: AffineMap, max_degree: int) -> list[int | None]:
    """Packed substituted image for every monomial of degree <= max_degree."""
    if sigma.field.q != 2:
        raise ValueError("packed substitution is defined over F_2 only")
    return raw_monomial_images(
        sigma.matrix.entries, sigma.translation, sigma.dim, max_degree
    )


@dataclass(frozen=True)
class RMQuotientBasis:
    """Monomial basis of R(r, n)/R(s, n): the X_S with s < |S| <= r,
    grouped by degree descending, subsets lexicographic within a degree."""

    n: int
    s: int
    r: int

    def __post_init__(self):
        if not (0 <= self.n <= _MAX_VARS and -1 <= self.s < self.r <= self.n):
            raise ValueError(f"invalid quotient basis ({self.n}, {self.s}, {self.r})")

    @property
    def monomials(self) -> tuple[int, ...]:
        return _basis_monomials(self.n, self.s, self.r)

    @property
    def dim(self) -> int:
        return len(self.monomials)


@lru_cache(maxsize=None)
def _basis_monomials(n: int, s: int, r: int) -> tuple[int, ...]:
    out = []
    for k in range(r, s, -1):
        for combo in itertools.combinations(range(n), k):
            out.append(sum(1 << i for i in combo))
    return tuple(out)


def _coordinate_rows(images: list[int | None], monomials: tuple[int, ...], n: int):
    """Rows of the transposed action matrix: row j = coordinates of the
    image of monomial j over the basis.  Returns packed ints (small n) or a
    numpy bit matrix (large n)."""
    dim = len(monomials)
    size = 1 << n
    if size <= 256:
        rows = []
        for mono in monomials:
            img = images[mono]
            row = 0
            for col, pos in enumerate(monomials):
                row |= ((img >> pos) & 1) << col
            rows.append(row)
        return rows
    positions = np.fromiter(monomials, dtype=np.int64, count=dim)
    nbytes = size >> 3
    out = np.empty((dim, dim), dtype=np.uint8)
    for j, mono in enumerate(monomials):
        img = images[mono]
        bits = np.unpackbits(
            np.frombuffer(img.to_bytes(nbytes, "little"), dtype=np.uint8),
            bitorder="little",
        )
        out[j] = bits[positions]
    return out


def _gf2_rank_ints(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            pivot = pivots.get(top)
            if pivot is None:
                pivots[top] = row
                rank += 1
                break
            row ^= pivot
    return rank


def action_matrix(sigma: AffineMap, basis: RMQuotientBasis) -> GFMatrix:
    """Matrix of f |-> f(sigma(x)) on the quotient, columns the images of
    the basis monomials.  Multiplicative over composition:
    action_matrix(a.then(b)) == action_matrix(a) @ action_matrix(b)."""
    if sigma.dim != basis.n:
        raise ValueError("dimension mismatch")
    images = monomial_images(sigma, basis.r)
    monomials = basis.monomials
    dim = basis.dim
    entries = [[0] * dim for _ in range(dim)]
    for j, mono in enumerate(monomials):
        img = images[mono]
        for i, pos in enumerate(monomials):
            entries[i][j] = (img >> pos) & 1
    return GFMatrix(sigma.field, entries)


def fix_on_quotient(sigma: AffineMap, basis: RMQuotientBasis) -> int:
    """2 ** nullity(action matrix - identity): the number of fixed vectors
    of the induced linear action on the quotient."""
    if sigma.dim != basis.n:
        raise ValueError("dimension mismatch")
    images = monomial_images(sigma, basis.r)
    rows = _coordinate_rows(images, basis.monomials, basis.n)
    dim = basis.dim
    if isinstance(rows, list):
        rows = [row ^ (1 << j) for j, row in enumerate(rows)]
        rank = _gf2_rank_ints(rows)
    else:
        rows ^= np.eye(dim, dtype=np.uint8)
        rank = gf2_rank(rows)
    return 1 << (dim - rank)


def _theta_chunk(
    indices: Iterable[ClassIndex], basis: RMQuotientBasis, group: int, progress=None
) -> int:
    from .reps import iter_class_representatives

    total = 0
    done = 0
    for idx in indices:
        cent = centralizer_order(idx)
        size, rem = divmod(group, cent)
        if rem:
            raise AssertionError("centralizer does not divide the group order")
        for rep, weight in iter_class_representatives(idx):
            total += weight * size * fix_on_quotient(rep, basis)
        done += 1
        if progress is not None and done % 64 == 0:
            progress(done)
    return total


def _theta_pool_chunk(args):
    return _theta_chunk(*args)


def theta(n: int, s: int, r: int, jobs: int = 1, progress=None) -> int:
    """Number of AGL(n, F_2) orbits of R(r, n)/R(s-1, n), by the per-class
    Burnside sum with fixed points from the quotient action matrices."""
    if not 0 <= s <= r <= n:
        raise ValueError(f"need 0 <= s <= r <= n, got ({n}, {s}, {r})")
    if n < 1:
        raise ValueError("n must be >= 1")
    basis = RMQuotientBasis(n, s - 1, r)
    group = agl_group_order(n, 2)
    if jobs <= 1:
        total = _theta_chunk(enumerate_classes(n, 2), basis, group, progress)
    else:
        import multiprocessing

        def chunks():
            chunk = []
            for idx in enumerate_classes(n, 2):
                chunk.append(idx)
                if len(chunk) >= 16:
                    yield (chunk, basis, group)
                    chunk = []
            if chunk:
                yield (chunk, basis, group)

        with multiprocessing.Pool(jobs) as pool:
            total = sum(pool.imap_unordered(_theta_pool_chunk, chunks()))
    count, rem = divmod(total, group)
    if rem:
        raise AssertionError("quotient Burnside sum not divisible by the group order")
    return count


def coset_class_count_M(n: int, jobs: int = 1, progress=None) -> int:
    """Number of AGL orbits of R(n-2, n), which equals the number of orbits
    of the quotient of all Boolean functions by the affine ones."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return theta(n, 0, n - 2, jobs=jobs, progress=progress)
