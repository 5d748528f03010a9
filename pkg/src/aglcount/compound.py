"""Compound matrices, their structural checks, and the asymptotic ratio
report for the quotient-code class counts.

The generic compound is computed from minors over any field table.  The
GF(2) sweeps use the packed monomial-substitution engine instead: the
coefficient of X_S in the image of X_T under a linear substitution is the
permanent of A(S, T), which over F_2 is det A(S, T); the two paths are
cross-checked in the tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .fields import FieldTable, field
from .linalg import GFMatrix, gf2_rank, jordan_block
from .rm import raw_monomial_images, theta

__all__ = [
    "AsymptoticReport",
    "AsymptoticRow",
    "SubsetIndex",
    "asymptotic_report",
    "check_jordan_block_structure",
    "check_kronecker_embedding",
    "check_rank_bound",
    "compound_gf2",
    "compound_matrix",
    "format_significant",
    "unit_product_constant",
]


@dataclass(frozen=True)
class SubsetIndex:
    """The r-subsets of {1..n} in lexicographic order of sorted elements."""

    n: int
    r: int

    def __post_init__(self):
        if not 0 <= self.r <= self.n:
            raise ValueError(f"need 0 <= r <= n, got ({self.n}, {self.r})")

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return _subsets(self.n, self.r)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in s) for s in self.subsets)

    def __len__(self) -> int:
        return comb(self.n, self.r)


@lru_cache(maxsize=None)
def _subsets(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.combinations(range(n), r))


def _minor_det(f: FieldTable, entries, rows, cols) -> int:
    sub = [[entries[i][j] for j in cols] for i in rows]
    return _det_inplace(f, sub)


def _det_inplace(f: FieldTable, rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    sign_flips = 0
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign_flips += 1
        pv = rows[col][col]
        det = f.mul(det, pv)
        inv = f.inv(pv)
        for r in range(col + 1, n):
            factor = rows[r][col]
            if factor:
                c = f.mul(factor, inv)
                for k in range(col, n):
                    rows[r][k] = f.sub(rows[r][k], f.mul(c, rows[col][k]))
    if sign_flips % 2:
        det = f.neg(det)
    return det


def compound_matrix(mat: GFMatrix, r: int) -> GFMatrix:
    """The matrix of r x r minors: entry (S, T) = det of the submatrix with
    rows S and columns T.  C_0 is the 1 x 1 identity."""
    n = mat.rows
    if mat.cols != n:
        raise ValueError("compound of a non-square matrix")
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}")
    index = SubsetIndex(n, r).subsets
    f = mat.field
    out = [
        [_minor_det(f, mat.entries, s, t) for t in index]
        for s in index
    ]
    return GFMatrix(f, out)


def compound_gf2(mat: GFMatrix, r: int) -> np.ndarray:
    """GF(2) compound as a 0/1 numpy matrix, via monomial substitution.

    Entry (S, T) is the coefficient of X_S in prod_{i in T} (column i . X),
    i.e. the permanent of A(S, T), which equals the determinant over F_2.
    """
    if mat.field.q != 2:
        raise ValueError("compound_gf2 needs a matrix over F_2")
    n = mat.rows
    images = raw_monomial_images(mat.entries, (0,) * n, n, r)
    masks = SubsetIndex(n, r).masks
    dim = len(masks)
    out = np.zeros((dim, dim), dtype=np.uint8)
    for j, tmask in enumerate(masks):
        img = images[tmask]
        for i, smask in enumerate(masks):
            out[i, j] = (img >> smask) & 1
    return out


def _direct_sum(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    m, n = a.rows, b.rows
    out = [[0] * (m + n) for _ in range(m + n)]
    for i in range(m):
        for j in range(m):
            out[i][j] = a.entries[i][j]
    for i in range(n):
        for j in range(n):
            out[m + i][m + j] = b.entries[i][j]
    return GFMatrix(a.field, out)


def check_kronecker_embedding(a: GFMatrix, b: GFMatrix, k: int, l: int) -> bool:
    """Does the Kronecker product C_k(A) x C_l(B) sit inside C_{k+l} of the
    block-diagonal sum, on the row/column labels S union (shifted T)?"""
    if a.field.q != b.field.q:
        raise ValueError("field mismatch")
    f = a.field
    m, n = a.rows, b.rows
    if not (0 <= k <= m and 0 <= l <= n):
        raise ValueError("minor sizes out of range")
    big_index = {s: pos for pos, s in enumerate(SubsetIndex(m + n, k + l).subsets)}
    a_subsets = SubsetIndex(m, k).subsets
    b_subsets = SubsetIndex(n, l).subsets
    labels = [
        big_index[tuple(sorted(s + tuple(m + j for j in t)))]
        for s in a_subsets
        for t in b_subsets
    ]
    if f.q == 2:
        big = compound_gf2(_direct_sum(a, b), k + l)
        want = np.kron(compound_gf2(a, k), compound_gf2(b, l))
        return np.array_equal(big[np.ix_(labels, labels)], want)
    big = compound_matrix(_direct_sum(a, b), k + l)
    ca = compound_matrix(a, k)
    cb = compound_matrix(b, l)
    for row_pos, row_label in enumerate(labels):
        ra, rb = divmod(row_pos, len(b_subsets))
        for col_pos, col_label in enumerate(labels):
            ca_col, cb_col = divmod(col_pos, len(b_subsets))
            want = f.mul(ca.entries[ra][ca_col], cb.entries[rb][cb_col])
            if big.entries[row_label][col_label] != want:
                return False
    return True


def _compound_jordan(n: int, r: int) -> np.ndarray:
    return compound_gf2(jordan_block(field(2), n), r)


def check_jordan_block_structure(n: int, r: int) -> bool:
    """Split the compound of the unipotent bidiagonal block by 'subset
    contains n': the cross block below the diagonal must vanish and the
    diagonal blocks must be the two smaller compounds."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got ({n}, {r})")
    big = _compound_jordan(n, r)
    subsets = SubsetIndex(n, r).subsets
    without = [i for i, s in enumerate(subsets) if (n - 1) not in s]
    with_n = [i for i, s in enumerate(subsets) if (n - 1) in s]
    perm = without + with_n
    reordered = big[np.ix_(perm, perm)]
    a = len(without)
    if reordered[a:, :a].any():
        return False
    if n == 1:
        return bool(reordered[0, 0] == 1)
    top = _compound_jordan(n - 1, r) if r <= n - 1 else np.zeros((0, 0), dtype=np.uint8)
    bottom = _compound_jordan(n - 1, r - 1)
    if not np.array_equal(reordered[:a, :a], top):
        return False
    return np.array_equal(reordered[a:, a:], bottom)


def check_rank_bound(n: int, r: int) -> bool:
    """rank(C_r(J_n) - I) >= binom(n-1, r) over F_2."""
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if r > n:
        return True  # empty compound, bound is 0
    mat = _compound_jordan(n, r)
    mat = mat ^ np.eye(mat.shape[0], dtype=np.uint8)
    return gf2_rank(mat) >= comb(n - 1, r)


# ---------------------------------------------------------------------------
# asymptotic ratio report


@lru_cache(maxsize=None)
def unit_product_constant(increment_digits: int = 40) -> tuple[Fraction, Fraction]:
    """Bounds for prod_{i>=1} (1 - 2**-i), by partial products run until the
    increment drops below 10**-increment_digits.

    The tail satisfies prod_{i>N} (1 - 2**-i) >= 1 - 2**-N, so the true
    value lies in [P_N * (1 - 2**-N), P_N].
    """
    threshold = Fraction(1, 10**increment_digits)
    product = Fraction(1)
    i = 0
    while True:
        i += 1
        nxt = product * (1 - Fraction(1, 2**i))
        increment = product - nxt
        product = nxt
        if increment < threshold:
            break
    return product * (1 - Fraction(1, 2**i)), product


def format_significant(value: Fraction, digits: int) -> str:
    """Decimal string with the given count of significant digits, truncated
    toward zero.  Exact integer arithmetic only."""
    if value <= 0:
        raise ValueError("positive values only")
    num, den = value.numerator, value.denominator

    def below_pow10(e: int) -> bool:
        return num < den * 10**e if e >= 0 else num * 10**-e < den

    # exponent e with 10**(e-1) <= value < 10**e
    e = len(str(num)) - len(str(den)) + 1
    while not below_pow10(e):
        e += 1
    while below_pow10(e - 1):
        e -= 1
    mantissa = num * 10 ** (digits - e) // den if digits >= e else num // (den * 10 ** (e - digits))
    text = str(mantissa)
    if len(text) != digits:
        raise AssertionError("significant-digit extraction is inconsistent")
    if e <= 0:
        return "0." + "0" * (-e) + text
    if e >= digits:
        return text + "0" * (e - digits)
    return text[:e] + "." + text[e:]


def _certified(lower: Fraction, upper: Fraction, digits: int) -> str:
    lo = format_significant(lower, digits)
    hi = format_significant(upper, digits)
    if lo != hi:
        raise AssertionError(
            f"bounds too loose to certify {digits} digits: {lo} vs {hi}"
        )
    return lo


@dataclass(frozen=True)
class AsymptoticRow:
    n: int
    class_count: int
    power_exponent: int
    ratio: Fraction
    ratio_text: str
    excess_text: str
    limit_ratio_low: Fraction
    limit_ratio_high: Fraction
    limit_ratio_text: str


@dataclass(frozen=True)
class AsymptoticReport:
    constant: str
    constant_low: Fraction
    constant_high: Fraction
    rows: tuple[AsymptoticRow, ...]


def partial_unit_product(n: int) -> Fraction:
    """prod_{i=1}^{n} (1 - 2**-i), exactly."""
    out = Fraction(1)
    for i in range(1, n + 1):
        out *= 1 - Fraction(1, 2**i)
    return out


def asymptotic_report(n_max: int, digits: int = 32, jobs: int = 1) -> AsymptoticReport:
    """Quotient-code class counts for 2 <= n <= n_max with their growth
    ratios against 2**(2**n - n*n - 2n - 1).

    The headline ``ratio`` scales by the exact partial product
    prod_{i<=n}(1 - 2**-i): it equals 1 plus the non-identity Burnside mass
    divided by the code size, so it exceeds 1 for every n and its excess
    over 1 decays monotonically.  ``limit_ratio`` scales by the certified
    infinite product instead; it tends to 1 but crosses below it once the
    non-identity mass drops under the product tail (measured at n = 7), so
    no one-sided bound is asserted for it.
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    const_low, const_high = unit_product_constant()
    rows = []
    for n in range(2, n_max + 1):
        m_n = theta(n, 0, n - 2, jobs=jobs)
        exponent = 2**n - n * n - 2 * n - 1
        scale = Fraction(1, 2**exponent) if exponent >= 0 else Fraction(2**-exponent)
        ratio = m_n * partial_unit_product(n) * scale
        if ratio <= 1:
            raise AssertionError(f"ratio at n={n} does not exceed 1: counting bug")
        low = m_n * const_low * scale
        high = m_n * const_high * scale
        rows.append(
            AsymptoticRow(
                n=n,
                class_count=m_n,
                power_exponent=exponent,
                ratio=ratio,
                ratio_text=format_significant(ratio, digits),
                excess_text=format_significant(ratio - 1, 12),
                limit_ratio_low=low,
                limit_ratio_high=high,
                limit_ratio_text=_certified(low, high, digits),
            )
        )
    return AsymptoticReport(
        constant=_certified(const_low, const_high, digits),
        constant_low=const_low,
        constant_high=const_high,
        rows=tuple(rows),
    )
