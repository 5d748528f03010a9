import pytest

from aglcount.fields import field
from aglcount.linalg import AffineMap, GFMatrix, point_permutation
from aglcount.numtheory import agl_group_order
from aglcount.oracle import (
    brute_centralizer,
    brute_conjugacy_classes,
    burnside_full,
    burnside_full_theta,
    generators,
    group_table,
    orbit_enumeration,
    orbit_enumeration_code,
)


def test_burnside_full_examples():
    assert burnside_full(1, 2) == 3  # (4 + 2) / 2
    assert burnside_full(2, 2) == 5
    assert burnside_full(1, 3) == 10  # (27+3+3+9+9+9)/6


def test_burnside_full_guard():
    with pytest.raises(ValueError):
        burnside_full(5, 2)  # group order 319979520 > 1e7


def test_orbit_enumeration_examples():
    assert orbit_enumeration(1, 2) == 3
    assert orbit_enumeration(2, 2) == 5
    assert orbit_enumeration(2, 3) == burnside_full(2, 3)
    with pytest.raises(ValueError):
        orbit_enumeration(3, 3)


def test_cross_oracle_agreement():
    for n, q in [(1, 2), (2, 2), (3, 2), (1, 3), (1, 4), (1, 5)]:
        assert burnside_full(n, q) == orbit_enumeration(n, q), (n, q)


def test_oracles_match_formula_on_wider_fields():
    from aglcount.formulas import count_function_classes

    for q in (7, 8, 9):
        value = count_function_classes(1, q)
        assert value == burnside_full(1, q), q


def test_generators_generate_whole_group():
    for n, q in [(1, 2), (2, 2), (1, 3), (2, 3), (1, 4)]:
        perms = {tuple(point_permutation(g)) for g in generators(n, q)}
        frontier = set(perms)
        seen = set(perms)
        ident = tuple(range(q**n))
        seen.add(ident)
        while frontier:
            nxt = set()
            for a in frontier:
                for b in perms:
                    c = tuple(b[x] for x in a)
                    if c not in seen:
                        seen.add(c)
                        nxt.add(c)
            frontier = nxt
        assert len(seen) == agl_group_order(n, q), (n, q)


def test_group_table_structure():
    table = group_table(2, 2)
    assert len(table) == 24
    ident = table.identity_index()
    for i in range(len(table)):
        assert table.compose(i, ident) == i
        assert table.compose(i, table.inverse(i)) == ident
    with pytest.raises(ValueError):
        group_table(4, 2)  # 322560 elements is beyond table scale


def test_brute_centralizer_examples():
    f2 = field(2)
    ident = AffineMap.identity(f2, 2)
    assert brute_centralizer(ident) == 24
    translation = AffineMap(GFMatrix.identity(f2, 2), (1, 0))
    assert brute_centralizer(translation) == 8
    table = group_table(2, 2)
    for sigma in table.maps[:8]:
        assert 24 % brute_centralizer(sigma) == 0


def test_brute_conjugacy_classes_examples():
    assert brute_conjugacy_classes(1, 2) == 2
    assert brute_conjugacy_classes(2, 2) == 5
    assert brute_conjugacy_classes(1, 3) == 3


def test_quotient_oracles_small():
    assert orbit_enumeration_code(2, 0) == 2  # two constants
    assert orbit_enumeration_code(3, 1) == 3  # zero, one, the non-constant affines
    assert burnside_full_theta(2, 0, 0) == 2
    assert burnside_full_theta(3, 0, 1) == 3
