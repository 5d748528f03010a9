"""Closed formulas per conjugacy class and the exact Burnside summation.

For a class index this module evaluates, with exact integer arithmetic:

* the centralizer order in AGL(n, F_q),
* the order of the class representative,
* the exponent e with fix(rep**k) = q**e on points (or None when zero),
* the number of orbits of the cyclic group generated by the representative
  on F_q**n, which is the exponent e with Fix(rep) = q**e on functions,

and folds them into the total number of AGL(n, F_q) orbits of the space of
functions F_q**n -> F_q.  Every division asserts exactness; a failed
assertion means an enumeration or formula bug, never a rounding issue.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .conjugacy import ClassIndex, enumerate_classes
from .numtheory import (
    agl_group_order,
    euler_phi,
    factorize,
    multiplicative_order,
    p_adic_valuation,
    prime_power,
)
from .partitions import largest_part

__all__ = [
    "ClassEvaluation",
    "centralizer_order",
    "class_equation_total",
    "count_function_classes",
    "element_order",
    "evaluate_class",
    "fix_exponent_at",
    "orbit_exponent",
]


def _pairwise_min_sum(lam: Sequence[int]) -> int:
    """sum over part sizes j, k of min(j, k) * lam_j * lam_k."""
    total = 0
    for j, mj in enumerate(lam, start=1):
        if mj == 0:
            continue
        for k, mk in enumerate(lam, start=1):
            if mk:
                total += min(j, k) * mj * mk
    return total


def centralizer_order(idx: ClassIndex) -> int:
    """Order of the centralizer of the class representative in AGL(n, F_q).

    Assembled as q**(E - L) times a product of factors q**l - 1, where E is
    the closed-form q-exponent and L collects the denominators of the unit
    factors (1 - q**-l); E >= L is asserted so the result is an exact int.
    """
    q = idx.q
    lam = idx.unipotent
    t = idx.marker

    if t is None:
        exponent = sum(lam)
    else:
        exponent = sum(lam[t - 1 :])
    exponent += _pairwise_min_sum(lam)

    denom_exp = 0
    units = 1
    for j, mj in enumerate(lam, start=1):
        for l in range(1, mj + 1):
            units *= q**l - 1
            denom_exp += l
    for spectrum in idx.spectra:
        o = _order_of(idx.q, spectrum.d)
        sub = 0
        for entry in spectrum.entries:
            sub += _pairwise_min_sum(entry)
            for mj in entry:
                for u in range(1, mj + 1):
                    units *= q ** (o * u) - 1
                    denom_exp += o * u
        exponent += o * sub

    if t is not None:
        head = q ** lam[t - 1] - 1
        if units % head != 0:
            raise AssertionError("translation-marked centralizer not integral")
        units //= head

    if exponent < denom_exp:
        raise AssertionError("centralizer q-power exponent went negative")
    return q ** (exponent - denom_exp) * units


def _order_of(q: int, d: int) -> int:
    return multiplicative_order(q, d)


def _ceil_log(p: int, m: int) -> int:
    """Smallest e with p**e >= m (m >= 1)."""
    e = 0
    power = 1
    while power < m:
        power *= p
        e += 1
    return e


def _floor_log(p: int, m: int) -> int:
    """Largest e with p**e <= m (m >= 1)."""
    e = 0
    power = p
    while power <= m:
        power *= p
        e += 1
    return e


def _is_power_of(p: int, m: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def element_order(idx: ClassIndex) -> int:
    """Order of the class representative as a group element."""
    p = prime_power(idx.q).p
    lcm = 1
    for spectrum in idx.spectra:
        lcm = math.lcm(lcm, spectrum.d)
    m_uni = largest_part(idx.unipotent)
    m_max = max([m_uni] + [spectrum.largest_part() for spectrum in idx.spectra])
    if m_max == 0:
        raise AssertionError("index has no parts at all")
    order = lcm * p ** _ceil_log(p, m_max)
    t = idx.marker
    if t is not None:
        m_spectra = max((spectrum.largest_part() for spectrum in idx.spectra), default=0)
        if t == m_uni and t >= m_spectra and _is_power_of(p, t):
            order *= p
    return order


def fix_exponent_at(idx: ClassIndex, k: int) -> int | None:
    """Exponent e with q**e points of F_q**n fixed by the k-th power.

    Returns None when the power fixes no point, which happens exactly for
    translation-marked classes whose k-th power still moves the marked block.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    p = prime_power(idx.q).p
    nu = p_adic_valuation(k, p)
    if idx.marker is not None and nu < 1 + _floor_log(p, idx.marker):
        return None
    return _fix_exponent_unchecked(idx, k, p ** nu)


def _fix_exponent_unchecked(idx: ClassIndex, k: int, cap: int) -> int:
    total = sum(min(cap, j) * mj for j, mj in enumerate(idx.unipotent, start=1))
    for spectrum in idx.spectra:
        if k % spectrum.d:
            continue
        sub = 0
        for entry in spectrum.entries:
            sub += sum(min(cap, j) * mj for j, mj in enumerate(entry, start=1))
        total += _order_of(idx.q, spectrum.d) * sub
    return total


def _order_factorization(idx: ClassIndex, order: int) -> dict[int, int]:
    # lcm of the active d's plus the p-power tail, assembled prime by prime
    fact: dict[int, int] = {}
    for spectrum in idx.spectra:
        for prime, e in factorize(spectrum.d):
            fact[prime] = max(fact.get(prime, 0), e)
    p = prime_power(idx.q).p
    residue = order
    for prime, e in fact.items():
        residue //= prime**e
    if residue > 1:
        for prime, e in factorize(residue):
            fact[prime] = fact.get(prime, 0) + e
    assert math.prod(prime**e for prime, e in fact.items()) == order
    return fact


def _divisors_with_phi(fact: dict[int, int]) -> list[tuple[int, int]]:
    out = [(1, 1)]
    for prime, e in fact.items():
        nxt = []
        for d, ph in out:
            nxt.append((d, ph))
            pk = 1
            for k in range(1, e + 1):
                pk *= prime
                nxt.append((d * pk, ph * (pk - pk // prime)))
        out = nxt
    return out


def orbit_exponent(idx: ClassIndex) -> int:
    """Number of orbits of the cyclic group of the representative on F_q**n.

    This is the exponent e with Fix(rep) = q**e fixed functions: a function
    is fixed iff it is constant on every orbit.  Computed as the exact
    divisor-weighted average of point fix counts over one full period.
    """
    q = idx.q
    p = prime_power(q).p
    b = element_order(idx)
    fact = _order_factorization(idx, b)
    threshold = 0 if idx.marker is None else 1 + _floor_log(p, idx.marker)
    total = 0
    contributed = False
    for k, _ in _divisors_with_phi(fact):
        nu = p_adic_valuation(k, p)
        if nu < threshold:
            continue
        contributed = True
        e = _fix_exponent_unchecked(idx, k, p**nu)
        total += euler_phi(b // k) * q**e
    if not contributed:
        raise AssertionError("no divisor of the order meets the translation threshold")
    if total % b != 0:
        raise AssertionError("orbit-count divisor sum not divisible by the order")
    return total // b


@dataclass(frozen=True)
class ClassEvaluation:
    """Everything a Burnside term needs, for one class index."""

    index: ClassIndex
    centralizer: int
    order: int
    fix_exponent: int
    multiplicity: int


def evaluate_class(idx: ClassIndex) -> ClassEvaluation:
    return ClassEvaluation(
        index=idx,
        centralizer=centralizer_order(idx),
        order=element_order(idx),
        fix_exponent=orbit_exponent(idx),
        multiplicity=idx.multiplicity(),
    )


def _burnside_chunk(indices: Iterable[ClassIndex], group_order: int, progress=None) -> int:
    total = 0
    done = 0
    for idx in indices:
        cent = centralizer_order(idx)
        size, rem = divmod(group_order, cent)
        if rem:
            raise AssertionError("centralizer does not divide the group order")
        total += idx.multiplicity() * size * idx.q ** orbit_exponent(idx)
        done += 1
        if progress is not None and done % 4096 == 0:
            progress(done)
    return total


def _chunked(iterable, size):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) >= size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def _pool_chunk(args):
    return _burnside_chunk(*args)


def count_function_classes(n: int, q: int, jobs: int = 1, progress=None) -> int:
    """Number of AGL(n, F_q) orbits of the q**(q**n) functions F_q**n -> F_q.

    n = 0 returns q by convention (q constant functions, trivial group).
    With jobs > 1 the class stream is folded by a process pool; the sum is
    exact and order-independent, so the result is identical for any jobs.
    An optional progress callback receives the running class-index count
    (single-job path only).
    """
    prime_power(q)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return q
    group = agl_group_order(n, q)
    if jobs <= 1:
        total = _burnside_chunk(enumerate_classes(n, q), group, progress)
    else:
        import multiprocessing

        with multiprocessing.Pool(jobs) as pool:
            work = ((chunk, group) for chunk in _chunked(enumerate_classes(n, q), 2048))
            total = sum(pool.imap_unordered(_pool_chunk, work))
    count, rem = divmod(total, group)
    if rem:
        raise AssertionError("Burnside sum not divisible by the group order")
    return count


def class_equation_total(n: int, q: int) -> int:
    """Sum of all conjugacy-class sizes; equals |AGL(n, F_q)| iff the class
    data (enumeration completeness and centralizer orders) is consistent."""
    group = agl_group_order(n, q)
    total = 0
    for idx in enumerate_classes(n, q):
        cent = centralizer_order(idx)
        size, rem = divmod(group, cent)
        if rem:
            raise AssertionError("centralizer does not divide the group order")
        total += idx.multiplicity() * size
    return total
