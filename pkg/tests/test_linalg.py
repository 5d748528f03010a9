import random

import numpy as np
import pytest

from aglcount.fields import field, poly_divmod
from aglcount.linalg import (
    AffineMap,
    GFMatrix,
    affine_order,
    boxplus,
    companion_matrix,
    cyclic_orbit_count,
    fixed_point_count,
    gf2_rank,
    jordan_block,
    nullity,
    rank,
)

f2 = field(2)
f3 = field(3)


def rand_matrix(rng, f, rows, cols):
    return GFMatrix(f, [[rng.randrange(f.q) for _ in range(cols)] for _ in range(rows)])


def rand_invertible(rng, f, n):
    while True:
        m = rand_matrix(rng, f, n, n)
        if m.is_invertible():
            return m


def test_rank_examples():
    assert rank(GFMatrix.identity(f2, 4)) == 4
    j2_minus_i = jordan_block(f2, 2).sub_matrix(GFMatrix.identity(f2, 2))
    assert rank(j2_minus_i) == 1
    comp = companion_matrix(f2, (1, 1, 1))  # x^2 + x + 1
    assert rank(comp.sub_matrix(GFMatrix.identity(f2, 2))) == 2


def test_rank_plus_nullity_and_shuffle_invariance():
    rng = random.Random(5)
    for f in (f2, f3):
        for _ in range(20):
            rows, cols = rng.randint(1, 7), rng.randint(1, 7)
            m = rand_matrix(rng, f, rows, cols)
            r = rank(m)
            assert r + nullity(m) == cols
            shuffled = list(m.entries)
            rng.shuffle(shuffled)
            assert rank(GFMatrix(f, shuffled)) == r


def naive_gf2_rank(bits):
    rows = [list(r) for r in bits]
    cols = len(rows[0]) if rows else 0
    rk = 0
    for col in range(cols):
        pivot = next((r for r in range(rk, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        for r in range(len(rows)):
            if r != rk and rows[r][col]:
                rows[r] = [a ^ b for a, b in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def test_gf2_rank_matches_naive_elimination():
    rng = random.Random(6)
    for _ in range(30):
        rows, cols = rng.randint(1, 12), rng.randint(1, 90)
        bits = [[rng.randrange(2) for _ in range(cols)] for _ in range(rows)]
        want = naive_gf2_rank(bits)
        assert gf2_rank(np.array(bits, dtype=np.uint8)) == want
        m = GFMatrix(f2, bits)  # int-packed path below 64 columns, numpy above
        assert rank(m) == want
        assert rank(m) == rank(m.transpose())


def test_companion_matrix_shapes():
    assert companion_matrix(f2, (1, 1)).entries == ((1,),)  # x + 1 over F2
    c = companion_matrix(f2, (1, 1, 0, 1))  # x^3 + x + 1
    assert c.entries == ((0, 1, 0), (0, 0, 1), (1, 1, 0))
    with pytest.raises(ValueError):
        companion_matrix(f3, (1, 2))  # not monic


def test_companion_of_square_is_conjugate_to_jordan():
    # (x - 1)^2 = x^2 + 1 over F2; its companion must be similar to the
    # unipotent bidiagonal block: brute-force the conjugator in GL(2, F2)
    comp = companion_matrix(f2, (1, 0, 1))
    j2 = jordan_block(f2, 2)
    rng = random.Random(0)
    found = False
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    g = GFMatrix(f2, [[a, b], [c, d]])
                    if not g.is_invertible():
                        continue
                    lhs = g @ comp
                    rhs = j2 @ g
                    if lhs == rhs:
                        found = True
    assert found


def poly_eval_at_matrix(f, poly, m):
    acc = GFMatrix.zero(f, m.rows, m.cols)
    power = GFMatrix.identity(f, m.rows)
    for coeff in poly:
        if coeff:
            scaled = GFMatrix(f, [[f.mul(coeff, x) for x in row] for row in power.entries])
            acc = acc.add_matrix(scaled)
        power = power @ m
    return acc


def poly_factor_candidates(f, poly):
    """All monic proper divisors, by trial division (test helper)."""
    import itertools as it

    deg = len(poly) - 1
    out = []
    for d in range(1, deg):
        for tail in it.product(f.elements(), repeat=d):
            g = tuple(tail) + (1,)
            _, rem = poly_divmod(f, poly, g)
            if not rem:
                out.append(g)
    return out


@pytest.mark.parametrize("q", [2, 3])
def test_companion_minimal_polynomial(q):
    rng = random.Random(q)
    f = field(q)
    for trial in range(14):
        deg = rng.randint(1, 8)
        poly = tuple(rng.randrange(q) for _ in range(deg)) + (1,)
        m = companion_matrix(f, poly)
        assert poly_eval_at_matrix(f, poly, m) == GFMatrix.zero(f, m.rows, m.cols)
        for g in poly_factor_candidates(f, poly):
            assert poly_eval_at_matrix(f, g, m) != GFMatrix.zero(f, m.rows, m.cols)


def test_jordan_block_orders():
    assert jordan_block(f2, 1) == GFMatrix.identity(f2, 1)
    assert affine_order(AffineMap.linear(jordan_block(f2, 2))) == 2
    assert affine_order(AffineMap.linear(jordan_block(f2, 3))) == 4
    assert affine_order(AffineMap.linear(jordan_block(f3, 3))) == 3
    with pytest.raises(ValueError):
        jordan_block(f2, 0)


def test_boxplus():
    id1 = AffineMap.identity(f2, 1)
    assert boxplus(id1, id1) == AffineMap.identity(f2, 2)
    trans = AffineMap(jordan_block(f2, 1), (1,))
    combo = boxplus(trans, id1)
    assert combo.matrix == GFMatrix.identity(f2, 2)
    assert combo.translation == (1, 0)
    with pytest.raises(ValueError):
        boxplus(id1, AffineMap.identity(f3, 1))


def test_boxplus_order_is_lcm():
    import math

    rng = random.Random(3)
    for f in (f2, f3):
        for _ in range(10):
            n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
            a = AffineMap(rand_invertible(rng, f, n1), tuple(rng.randrange(f.q) for _ in range(n1)))
            b = AffineMap(rand_invertible(rng, f, n2), tuple(rng.randrange(f.q) for _ in range(n2)))
            assert affine_order(boxplus(a, b)) == math.lcm(affine_order(a), affine_order(b))


def test_affine_order_examples():
    assert affine_order(AffineMap.identity(f2, 3)) == 1
    assert affine_order(AffineMap(GFMatrix.identity(f2, 2), (1, 0))) == 2
    # order 2**(1 + floor(log2 3)) = 4: sigma^2 = x J^2 + eps N != id, sigma^4 = id
    j3_translated = AffineMap(jordan_block(f2, 3), (1, 0, 0))
    assert affine_order(j3_translated) == 4


def test_fixed_point_count_examples():
    assert fixed_point_count(AffineMap.identity(f3, 2)) == 9
    assert fixed_point_count(AffineMap(GFMatrix.identity(f2, 2), (1, 1))) == 0
    comp = AffineMap.linear(companion_matrix(f2, (1, 1, 1)))
    assert fixed_point_count(comp) == 1  # only the origin


def test_cyclic_orbit_count_examples():
    assert cyclic_orbit_count(AffineMap.identity(f2, 2)) == 4
    assert cyclic_orbit_count(AffineMap(GFMatrix.identity(f2, 1), (1,))) == 1
    four_cycle = AffineMap(jordan_block(f2, 2), (1, 0))
    assert cyclic_orbit_count(four_cycle) == 1


def test_cyclic_orbit_count_branches_agree():
    rng = random.Random(9)
    for f in (f2, f3):
        for _ in range(15):
            n = rng.randint(1, 3)
            sigma = AffineMap(
                rand_invertible(rng, f, n), tuple(rng.randrange(f.q) for _ in range(n))
            )
            assert cyclic_orbit_count(sigma, method="cycle") == cyclic_orbit_count(
                sigma, method="divisor"
            )


def test_composition_is_block_matrix_product():
    rng = random.Random(12)
    for _ in range(10):
        n = rng.randint(1, 3)
        a = AffineMap(rand_invertible(rng, f2, n), tuple(rng.randrange(2) for _ in range(n)))
        b = AffineMap(rand_invertible(rng, f2, n), tuple(rng.randrange(2) for _ in range(n)))
        combo = a.then(b)
        for point_code in range(2**n):
            point = tuple((point_code >> i) & 1 for i in range(n))
            assert combo.apply(point) == b.apply(a.apply(point))


def test_affine_map_requires_invertible_matrix():
    with pytest.raises(ValueError):
        AffineMap(GFMatrix(f2, [[1, 1], [1, 1]]), (0, 0))
