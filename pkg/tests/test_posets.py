import numpy as np
import pytest

from ldimkit import (Antichain, BooleanLattice, Chain, MultisetElement,
                     MultisetLattice, MultisetSingletonPoset, ParameterError,
                     RangeError, SingletonPoset, build_poset,
                     canonical_linear_extension, id_to_set, product,
                     set_to_id)

from tests import oracle


def test_id_set_roundtrip():
    assert id_to_set(13) == frozenset({1, 3, 4})
    assert set_to_id({1, 3, 4}) == 13
    assert id_to_set(0) == frozenset()
    for eid in range(64):
        assert set_to_id(id_to_set(eid)) == eid


def test_boolean_ground_and_leq():
    P = BooleanLattice(4)
    assert P.ground_size == 16
    assert list(P.element_ids()) == list(range(16))
    # {1,3} <= {1,3,4}
    assert P.leq(5, 13)
    assert not P.leq(13, 5)
    assert P.leq(0, 15) and P.leq(7, 7)
    for a in P.element_ids():
        for b in P.element_ids():
            assert P.leq(a, b) == oracle.brute_leq_boolean(a, b)


def test_singleton_poset_relation():
    P = SingletonPoset(3)
    assert P.ground_size == 7
    assert list(P.element_ids()) == list(range(1, 8))
    assert P.leq(1, 3) and P.leq(2, 3) and P.leq(4, 5)
    assert not P.leq(3, 7)      # two-element sets are incomparable to others
    assert not P.leq(1, 2)
    assert not P.leq(3, 1)      # no set-above-singleton order
    assert P.leq(3, 3)
    assert sorted(P.singleton_ids()) == [1, 2, 4]


def test_multiset_element_codec():
    e = MultisetElement.from_id(5, 2, 3)   # digits base 3: 5 = 2 + 1*3
    assert e.multiplicities == (2, 1)
    assert e.to_id(3) == 5
    assert e.total() == 3 and e.support_size() == 2
    with pytest.raises(RangeError):
        MultisetElement.from_id(9, 2, 3)


def test_multiset_lattice_matches_boolean_at_m2():
    for n in (1, 2, 3, 4):
        M = MultisetLattice(n, 2)
        B = BooleanLattice(n)
        assert M.ground_size == B.ground_size
        assert np.array_equal(M.leq_matrix(), B.leq_matrix())


def test_multiset_singleton_subposet():
    P = MultisetSingletonPoset(2, 3)
    assert P.ground_size == 8           # ids 1..8
    assert sorted(P.singleton_type_ids()) == [1, 2, 3, 6]  # powers of one type
    # singleton (1,0) = id 1 is below (2,1) = id 5
    assert P.leq(1, 5)
    assert not P.leq(5, 1)
    assert not P.leq(1, 2)              # two singleton-types incomparable
    assert not P.leq(4, 5)              # (1,1) and (2,1): both multi-support
    with pytest.raises(RangeError):
        P.leq(0, 5)


def test_order_axioms_small():
    posets = [BooleanLattice(3), SingletonPoset(3), MultisetLattice(2, 3),
              MultisetSingletonPoset(2, 3), Chain(4), Antichain(4),
              product(Chain(2), Antichain(3))]
    for P in posets:
        ids = list(P.element_ids())
        for a in ids:
            assert P.leq(a, a)
        for a in ids:
            for b in ids:
                if a != b and P.leq(a, b):
                    assert not P.leq(b, a)
                for c in ids:
                    if P.leq(a, b) and P.leq(b, c):
                        assert P.leq(a, c)


def test_leq_matrix_agrees_with_scalar():
    for P in (BooleanLattice(3), SingletonPoset(4), MultisetLattice(2, 3),
              MultisetSingletonPoset(3, 2), Chain(5), Antichain(5),
              product(BooleanLattice(2), Chain(3))):
        M = P.leq_matrix()
        ids = list(P.element_ids())
        for i, a in enumerate(ids):
            for j, b in enumerate(ids):
                assert M[i, j] == P.leq(a, b), (P.kind, a, b)


def test_product_structure():
    P = product(BooleanLattice(2), Chain(3))
    assert P.ground_size == 12
    # combined id = idx_P + size_P * idx_Q
    assert P.combine(3, 2) == 3 + 4 * 2
    assert P.split(11) == (3, 2)
    assert P.leq(P.combine(1, 0), P.combine(3, 2))
    assert not P.leq(P.combine(1, 0), P.combine(2, 2))
    # matrix = kron(Q, P)
    assert np.array_equal(
        P.leq_matrix(),
        np.kron(Chain(3).leq_matrix(), BooleanLattice(2).leq_matrix()))


def test_canonical_linear_extension():
    assert canonical_linear_extension(BooleanLattice(2)) == [0, 1, 2, 3]
    for P in (BooleanLattice(3), SingletonPoset(3), MultisetLattice(2, 3),
              product(Chain(2), BooleanLattice(2))):
        ext = canonical_linear_extension(P)
        assert sorted(ext) == sorted(P.element_ids())
        pos = {a: i for i, a in enumerate(ext)}
        for a in P.element_ids():
            for b in P.element_ids():
                if a != b and P.leq(a, b):
                    assert pos[a] < pos[b]


def test_build_poset_specs():
    assert build_poset("boolean:3").kind == "boolean:3"
    assert build_poset("singleton:4").ground_size == 15
    assert build_poset("multiset:2:3").ground_size == 9
    assert build_poset("multiset-singleton:2:3").ground_size == 8
    assert build_poset("chain:5").ground_size == 5
    assert build_poset("antichain:2").ground_size == 2
    for bad in ("nosuch:3", "boolean", "boolean:2:3", "chain:x", "",
                "multiset:4"):
        with pytest.raises(ParameterError):
            build_poset(bad)


def test_range_errors():
    P = BooleanLattice(2)
    with pytest.raises(RangeError):
        P.check_id(4)
    with pytest.raises(RangeError):
        P.index_of(-1)
    S = SingletonPoset(2)
    with pytest.raises(RangeError):
        S.check_id(0)  # ids start at 1
