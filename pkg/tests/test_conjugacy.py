import pytest

from aglcount.conjugacy import (
    ClassIndex,
    PartitionTuple,
    class_count,
    compute_D,
    enumerate_classes,
    enumerate_omega,
    permutation_count_s,
)
from aglcount.numtheory import multiplicative_order, psi
from aglcount.oracle import brute_conjugacy_classes
from aglcount.partitions import enumerate_partitions, order_key, support, weight


def test_compute_D_examples():
    assert compute_D(1, 2) == ()
    assert compute_D(2, 2) == (3,)
    assert compute_D(2, 3) == (2, 4, 8)


def test_compute_D_definition():
    for q in (2, 3, 4):
        for n in range(1, 7):
            expected = {
                d
                for d in range(2, q**n)
                if any((q**i - 1) % d == 0 for i in range(1, n + 1))
            }
            assert set(compute_D(n, q)) == expected


def brute_omega(n, q):
    """Independent enumeration: full psi-length tuples over every d, then
    canonicalized.  Exponential but fine at n <= 4."""
    dlist = [(d, multiplicative_order(q, d), psi(d, q)) for d in compute_D(n, q)]
    partitions_by_weight = {w: list(enumerate_partitions(w)) for w in range(n + 1)}

    def tuples_for(d, o, psi_d, budget):
        # nondecreasing psi_d-tuples with total o * weight <= budget
        out = []

        def rec(idx, prev_key, remaining, acc):
            if idx == psi_d:
                out.append((tuple(acc), remaining))
                return
            for w in range(remaining // o + 1):
                for lam in partitions_by_weight[w]:
                    key = order_key(lam)
                    if prev_key is not None and key < prev_key:
                        continue
                    acc.append(lam)
                    rec(idx + 1, key, remaining - o * w, acc)
                    acc.pop()

        rec(0, None, budget, [])
        return out

    results = set()

    def assign(level, remaining, acc):
        if level == len(dlist):
            if remaining >= 0:
                for w in range(remaining + 1):
                    if w == remaining:
                        for lam in partitions_by_weight[w]:
                            results.add((lam, tuple(acc)))
            return
        d, o, psi_d = dlist[level]
        for tup, left in tuples_for(d, o, psi_d, remaining):
            acc.append((d, tup))
            assign(level + 1, left, acc)
            acc.pop()

    assign(0, n, [])
    return results


def as_brute_form(idx):
    dlist = compute_D(idx.n, idx.q)
    spectra = {t.d: t for t in idx.spectra}
    padded = []
    for d in dlist:
        if d in spectra:
            t = spectra[d]
            padded.append((d, ((),) * (t.psi - len(t.entries)) + t.entries))
        else:
            padded.append((d, ((),) * psi(d, idx.q)))
    return (idx.unipotent, tuple(padded))


@pytest.mark.parametrize("n,q", [(1, 2), (2, 2), (3, 2), (2, 3)])
def test_omega_matches_brute_enumeration(n, q):
    ours = [as_brute_form(i) for i in enumerate_omega(n, q)]
    assert len(set(ours)) == len(ours)
    assert set(ours) == brute_omega(n, q)


def test_omega_small_examples():
    items = list(enumerate_omega(1, 2))
    assert len(items) == 1
    assert items[0].unipotent == (1,) and items[0].spectra == ()

    items = list(enumerate_omega(2, 2))
    assert len(items) == 3
    shapes = {(i.unipotent, tuple((t.d, t.entries) for t in i.spectra)) for i in items}
    assert shapes == {((2,), ()), ((0, 1), ()), ((), ((3, ((1,),)),))}


def test_omega_weight_identity():
    for q in (2, 3):
        for n in range(1, 6):
            for idx in enumerate_omega(n, q):
                idx.validate()
                total = weight(idx.unipotent) + sum(
                    multiplicative_order(q, t.d) * t.total_weight() for t in idx.spectra
                )
                assert total == n


def test_classes_expand_omega_exactly():
    for q in (2, 3):
        for n in range(1, 5):
            expanded = []
            for idx in enumerate_omega(n, q):
                expanded.append(idx)
                for t in support(idx.unipotent):
                    expanded.append(
                        ClassIndex(
                            n=n, q=q, unipotent=idx.unipotent, spectra=idx.spectra, marker=t
                        )
                    )
            assert expanded == list(enumerate_classes(n, q))


def test_class_counts_match_group_oracle():
    # (q, n) pairs; weighted count = true number of conjugacy classes
    for q, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)]:
        assert class_count(n, q) == brute_conjugacy_classes(n, q), (q, n)


def test_class_counts_with_nontrivial_folds():
    # q = 4 at n = 1 folds the two order-3 linear maps into one index of
    # multiplicity 2; q = 5 folds the order-4 pair likewise
    for q, n in [(4, 1), (5, 1), (4, 2), (8, 1), (9, 1)]:
        assert class_count(n, q) == brute_conjugacy_classes(n, q), (q, n)
    indices = list(enumerate_classes(1, 4))
    assert len(indices) < class_count(1, 4)
    for idx in indices:
        idx.validate()


def test_class_count_examples():
    assert class_count(1, 2) == 2
    assert class_count(2, 2) == 5
    assert class_count(1, 3) == 3


def test_permutation_count_examples():
    t = PartitionTuple.make(7, 2, [(1, 2), (2, 0, 1)])
    assert permutation_count_s(t) == 2
    t = PartitionTuple.make(7, 2, [(1,), (1,)])
    assert permutation_count_s(t) == 1
    t = PartitionTuple.make(5, 3, [(), (), ()])
    assert permutation_count_s(t) == 1
    assert t.entries == ()
    # one nonempty entry in 4 slots: 4 arrangements
    t = PartitionTuple.make(15, 4, [(1,)])
    assert permutation_count_s(t) == 4


def test_partition_tuple_validation():
    with pytest.raises(ValueError):
        PartitionTuple.make(7, 2, [(1,), (1,), (2,)])  # 3 nonempty > psi = 2


def test_class_index_validation():
    good = ClassIndex(n=2, q=2, unipotent=(2,), spectra=(), marker=1)
    good.validate()
    with pytest.raises(ValueError):
        ClassIndex(n=2, q=2, unipotent=(2,), spectra=(), marker=2).validate()
    with pytest.raises(ValueError):
        ClassIndex(n=3, q=2, unipotent=(2,), spectra=(), marker=None).validate()
    with pytest.raises(ValueError):
        ClassIndex(
            n=2,
            q=2,
            unipotent=(),
            spectra=(PartitionTuple.make(3, 1, [(1,)]),),
            marker=1,
        ).validate()


def test_enumeration_is_deterministic():
    first = [as_brute_form(i) for i in enumerate_classes(4, 2)]
    second = [as_brute_form(i) for i in enumerate_classes(4, 2)]
    assert first == second


def test_gl_class_counts_match_known_sequence():
    # conjugacy classes of the general linear group over F_2, n = 1..8
    got = [sum(i.multiplicity() for i in enumerate_omega(n, 2)) for n in range(1, 9)]
    assert got == [1, 3, 6, 14, 27, 60, 117, 246]
