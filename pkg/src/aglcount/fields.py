"""Finite-field arithmetic tables for q = p**m <= 512, plus polynomial helpers.

Elements of F_q are the integers 0 .. q-1.  For prime q they are residues;
for a proper prime power, the base-p digits of an element are its
coordinates in the polynomial basis modulo a fixed irreducible.  The
modulus is pinned deterministically (lowest weight, then lexicographically
least coefficient vector read from the leading coefficient down), so all
results are reproducible bit for bit:

    F4: x^2 + x + 1      F8: x^3 + x + 1      F9: x^2 + 1
    F16: x^4 + x + 1     F27: x^3 + 2x + 1    ...

Polynomials over F_q are tuples of coefficients, ascending degree, with no
trailing zeros; () is the zero polynomial.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .numtheory import divisors, factorize, prime_power

__all__ = [
    "FieldTable",
    "field",
    "poly_divmod",
    "poly_is_irreducible",
    "poly_mod",
    "poly_mul",
    "poly_order",
    "poly_pow",
    "poly_pow_mod",
    "poly_trim",
]

_MAX_Q = 512


class FieldTable:
    """Addition/multiplication tables for one finite field, q <= 512.

    Construction validates every pair: both tables are symmetric, 0 and 1
    act as identities, every element has a negative, every nonzero element
    an inverse.  (Associativity and distributivity involve triples and are
    exercised in the test suite.)
    """

    __slots__ = ("q", "p", "m", "modulus", "_add", "_mul", "_neg", "_inv", "generator")

    def __init__(self, q: int):
        pp = prime_power(q)
        if q > _MAX_Q:
            raise ValueError(f"fields larger than {_MAX_Q} are unsupported, got {q}")
        self.q = q
        self.p = pp.p
        self.m = pp.m
        if pp.m == 1:
            self.modulus = None
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            self.modulus = _pinned_modulus(pp.p, pp.m)
            add = [[_digit_add(a, b, pp.p) for b in range(q)] for a in range(q)]
            mul = [[0] * q for _ in range(q)]
            for a in range(q):
                for b in range(a, q):
                    prod = _poly_field_mul(a, b, pp.p, pp.m, self.modulus)
                    mul[a][b] = prod
                    mul[b][a] = prod
        self._add = add
        self._mul = mul
        self._neg = [add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self._inv = inv
        self.generator = self._find_generator()
        self._check_pairs()

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        out = 1
        while e:
            if e & 1:
                out = self._mul[out][a]
            a = self._mul[a][a]
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        target = self.q - 1
        primes = [p for p, _ in factorize(target)]
        for g in range(1, self.q):
            if all(self.pow(g, target // p) != 1 for p in primes):
                return g
        raise AssertionError("no multiplicative generator found")

    def _check_pairs(self) -> None:
        q = self.q
        for a in range(q):
            if self._add[a][0] != a or self._mul[a][1] != a or self._mul[a][0] != 0:
                raise AssertionError(f"identity laws fail at {a} in F{q}")
            if self._add[a][self._neg[a]] != 0:
                raise AssertionError(f"negation fails at {a} in F{q}")
            if a and self._mul[a][self._inv[a]] != 1:
                raise AssertionError(f"inversion fails at {a} in F{q}")
            for b in range(a, q):
                if self._add[a][b] != self._add[b][a]:
                    raise AssertionError(f"addition not commutative at ({a},{b}) in F{q}")
                if self._mul[a][b] != self._mul[b][a]:
                    raise AssertionError(f"multiplication not commutative at ({a},{b}) in F{q}")

    def __repr__(self) -> str:
        return f"FieldTable(q={self.q})"


def _digit_add(a: int, b: int, p: int) -> int:
    out = 0
    shift = 1
    while a or b:
        out += ((a + b) % p) * shift
        a //= p
        b //= p
        shift *= p
    return out


def _poly_field_mul(a: int, b: int, p: int, m: int, modulus: tuple[int, ...]) -> int:
    da = _digits(a, p)
    db = _digits(b, p)
    prod = [0] * (len(da) + len(db) - 1) if da and db else []
    for i, ca in enumerate(da):
        for j, cb in enumerate(db):
            prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce modulo the pinned monic irreducible
    mod = list(modulus)
    deg = len(mod) - 1
    while len(prod) > deg:
        lead = prod.pop()
        if lead:
            for k in range(deg):
                prod[len(prod) - deg + k] = (prod[len(prod) - deg + k] - lead * mod[k]) % p
    out = 0
    shift = 1
    for c in prod:
        out += c * shift
        shift *= p
    return out


def _digits(a: int, p: int) -> list[int]:
    out = []
    while a:
        out.append(a % p)
        a //= p
    return out


@lru_cache(maxsize=None)
def _pinned_modulus(p: int, m: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree m over F_p.

    Minimal number of nonzero coefficients first, then lexicographically
    least (a_{m-1}, ..., a_0).  Irreducibility over the prime field is
    checked by trial division, which needs no field tables.
    """
    best = None
    best_key = None
    for tail in itertools.product(range(p), repeat=m):
        f = tuple(tail) + (1,)
        if f[0] == 0:
            continue  # divisible by x
        if not _is_irreducible_prime_field(f, p):
            continue
        key = (sum(1 for c in f if c), tuple(reversed(tail)))
        if best_key is None or key < best_key:
            best, best_key = f, key
    if best is None:
        raise AssertionError(f"no irreducible of degree {m} over F{p}")
    return best


def _is_irreducible_prime_field(f: tuple[int, ...], p: int) -> bool:
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = tuple(tail) + (1,)
            if _prime_poly_mod(f, g, p) == ():
                return False
    return True


def _prime_poly_mod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    ra = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], -1, p)
    while len(ra) - 1 >= db and ra:
        lead = ra[-1]
        if lead:
            c = (lead * inv_lead) % p
            off = len(ra) - 1 - db
            for i, bc in enumerate(b):
                ra[off + i] = (ra[off + i] - c * bc) % p
        ra.pop()
    while ra and ra[-1] == 0:
        ra.pop()
    return tuple(ra)


@lru_cache(maxsize=None)
def field(q: int) -> FieldTable:
    """Shared immutable table for F_q."""
    return FieldTable(q)


# ---------------------------------------------------------------------------
# polynomials over a FieldTable: tuples of coefficients, ascending degree


def poly_trim(coeffs) -> tuple[int, ...]:
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_mul(f: FieldTable, a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] = f.add(out[i + j], f.mul(ca, cb))
    return poly_trim(out)


def poly_divmod(f: FieldTable, a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    ra = list(a)
    db = len(b) - 1
    inv_lead = f.inv(b[-1])
    quot = [0] * max(0, len(ra) - db)
    while len(ra) - 1 >= db and ra:
        lead = ra[-1]
        if lead:
            c = f.mul(lead, inv_lead)
            off = len(ra) - 1 - db
            quot[off] = c
            for i, bc in enumerate(b):
                ra[off + i] = f.sub(ra[off + i], f.mul(c, bc))
        ra.pop()
    return poly_trim(quot), poly_trim(ra)


def poly_mod(f: FieldTable, a, b) -> tuple[int, ...]:
    return poly_divmod(f, a, b)[1]


def poly_pow(f: FieldTable, a, e: int) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    base = poly_trim(a)
    while e:
        if e & 1:
            out = poly_mul(f, out, base)
        base = poly_mul(f, base, base)
        e >>= 1
    return out


def poly_pow_mod(f: FieldTable, a, e: int, mod) -> tuple[int, ...]:
    out: tuple[int, ...] = (1,)
    base = poly_mod(f, a, mod)
    while e:
        if e & 1:
            out = poly_mod(f, poly_mul(f, out, base), mod)
        base = poly_mod(f, poly_mul(f, base, base), mod)
        e >>= 1
    return out


def _monic_polys(f: FieldTable, degree: int):
    for tail in itertools.product(f.elements(), repeat=degree):
        yield tuple(tail) + (1,)


def poly_is_irreducible(f: FieldTable, poly: tuple[int, ...]) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for g in _monic_polys(f, d):
            if not poly_mod(f, poly, g):
                return False
    return True


def poly_order(f: FieldTable, poly: tuple[int, ...]) -> int:
    """Multiplicative order of the roots: least e with poly | x**e - 1.

    Requires poly irreducible with nonzero constant term; walks the sorted
    divisors of q**deg - 1.
    """
    deg = len(poly) - 1
    if poly[0] == 0:
        raise ValueError("order undefined: x divides the polynomial")
    for e in divisors(f.q**deg - 1):
        if poly_pow_mod(f, (0, 1), e, poly) == (1,):
            return e
    raise AssertionError("no order found below q**deg - 1")
