import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import construction
import counting
from completeness import (Mode, PermSet, build_selection_digraph, build_selection_graph,
                          has_double_orientation, is_acyclic, is_balanced_complete_bipartite,
                          is_minimal_complete, is_triangle_free)
from construction import BalancedPartition, FamilyDescriptor
from errors import (DimensionError, DomainError, InvalidSizeError, PreconditionError,
                    ResourceError)
from perm_core import Permutation, all_permutations, compose, identity

INV, PAIR = Mode.INVERSION, Mode.PAIR
Q4 = PermSet.of(['2314', '2413', '1324', '1423'], INV)


def P(text):
    return Permutation.parse(text)


@pytest.fixture(scope='module')
def q_star_5():
    return list(construction.enumerate_Q_star(5))


@pytest.fixture(scope='module')
def p_star_5():
    return list(construction.enumerate_P_star(5))


class TestFamilies:
    def test_member_examples(self):
        assert list(construction.family_members(FamilyDescriptor(4, 1, 2, 3))) == [P('2314')]
        assert list(construction.family_members(FamilyDescriptor(3, 1, 1, 2))) == [P('213')]

    def test_member_count(self):
        f = FamilyDescriptor(8, 2, 4, 7)
        members = list(f.members())
        assert f.member_count() == len(members) == 36
        assert members == sorted(members)

    def test_member_at_matches_lexicographic_order(self):
        for f in construction.family_collection(7, 3):
            assert [f.member_at(r) for r in range(f.member_count())] == list(f.members())

    def test_member_at_out_of_range(self):
        with pytest.raises(DomainError):
            FamilyDescriptor(5, 1, 2, 3).member_at(2)

    def test_invalid_descriptor(self):
        with pytest.raises(DomainError):
            FamilyDescriptor(5, 3, 2, 4)
        with pytest.raises(InvalidSizeError):
            FamilyDescriptor(21, 1, 2, 3)

    def test_contains_matches_members(self):
        f = FamilyDescriptor(6, 2, 3, 5)
        members = set(f.members())
        for p in all_permutations(6):
            assert f.contains(p) == (p in members)

    def test_collection(self):
        assert [(f.i, f.c, f.j) for f in construction.family_collection(4, 2)] == \
            [(1, 2, 3), (1, 2, 4), (2, 2, 3), (2, 2, 4)]
        assert len(construction.family_collection(3, 1)) == 2
        with pytest.raises(DomainError):
            construction.family_collection(4, 4)

    @pytest.mark.parametrize('n', range(3, 8))
    def test_families_of_one_c_are_disjoint(self, n):
        for c in range(1, n):
            seen = set()
            for f in construction.family_collection(n, c):
                members = set(f.members())
                assert not members & seen
                seen |= members

    @pytest.mark.parametrize('n', [5, 7])
    def test_balanced_families_are_disjoint_across_c(self, n):
        low = {p for f in construction.family_collection(n, n // 2) for p in f.members()}
        high = {p for f in construction.family_collection(n, n - n // 2) for p in f.members()}
        assert not low & high


class TestTransversals:
    def test_restart_and_random_access(self):
        full = list(construction.transversals(5, 2))
        assert len(full) == counting.transversal_count(5, 2) == 64
        assert list(construction.transversals(5, 2, start=10)) == full[10:]
        assert list(construction.transversals(5, 2, limit=3)) == full[:3]
        assert construction.transversal_at(5, 2, 37) == full[37]

    def test_every_transversal_is_minimal(self):
        rng = np.random.default_rng(1000)
        for _ in range(1000):
            n = int(rng.integers(3, 13))
            c = int(rng.integers(1, n))
            t = construction.sample_transversal(n, c, rng)
            assert len(t) == c * (n - c)
            assert is_minimal_complete(t)
            assert construction.transversal_family(t, [c]) == c

    def test_transversal_family_rejects_other_sets(self):
        assert construction.transversal_family(PermSet.of(['4321'], INV)) is None


class TestQStar:
    def test_small_n(self):
        assert list(construction.enumerate_Q_star(2)) == [PermSet.of(['21'], INV)]
        assert list(construction.enumerate_Q_star(3)) == [
            PermSet.of(['132', '231'], INV),
            PermSet.of(['213', '312'], INV),
            PermSet.of(['231', '312'], INV),
        ]
        assert list(construction.enumerate_Q_star(4)) == [Q4]

    def test_n5(self, q_star_5):
        assert len(q_star_5) == len(set(q_star_5)) == 128
        for q in q_star_5:
            assert len(q) == 6
            assert is_minimal_complete(q)

    def test_n6_count(self):
        assert sum(1 for _ in construction.enumerate_Q_star(6)) == counting.count_Q_star(6)

    def test_enumeration_bound(self):
        with pytest.raises(ResourceError):
            construction.enumerate_Q_star(7)
        assert len(list(construction.enumerate_Q_star(7, limit=3))) == 3

    def test_sample_unique_n4(self):
        for seed in (0, 1, 2 ** 64 - 1):
            assert construction.sample_Q_star(4, seed) == Q4

    def test_sample_n12(self):
        q = construction.sample_Q_star(12, 7)
        assert len(q) == 36
        assert is_minimal_complete(q)

    def test_sample_n6_transverses_middle_family(self):
        for seed in (3, 4):
            assert construction.transversal_family(construction.sample_Q_star(6, seed)) == 3

    def test_sample_is_deterministic(self):
        assert construction.sample_Q_star(9, 42) == construction.sample_Q_star(9, 42)

    def test_seed_range(self):
        with pytest.raises(DomainError):
            construction.sample_Q_star(5, -1)
        with pytest.raises(DomainError):
            construction.sample_Q_star(5, 2 ** 64)


class TestOrbitsAndRelabeling:
    def test_orbit_examples(self):
        assert construction.orbit(identity(4)) == PermSet.of(['1234', '2341', '3412', '4123'], PAIR)
        assert construction.orbit(identity(3)) == PermSet.of(['123', '231', '312'], PAIR)

    def test_random_orbits_are_minimal(self):
        rng = np.random.default_rng(9)
        for n in range(2, 13):
            for _ in range(100):
                p = Permutation(tuple(int(v) + 1 for v in rng.permutation(n)))
                s = construction.orbit(p)
                assert len(s) == n
                assert is_minimal_complete(s)
                if n >= 5:
                    assert len(s) < counting.gamma_P(n)

    def test_canonical_tau(self):
        assert construction.canonical_tau(BalancedPartition(5, frozenset({2, 4}))) == P('13524')
        assert construction.canonical_tau(BalancedPartition(4, frozenset({3, 4}))) == P('1234')

    @given(st.data())
    def test_canonical_tau_maps_blocks_monotonically(self, data):
        n = data.draw(st.integers(2, 12))
        size = data.draw(st.sampled_from([n // 2, n - n // 2]))
        w = frozenset(data.draw(st.permutations(range(1, n + 1)))[:size])
        part = BalancedPartition(n, w)
        tau = construction.canonical_tau(part)
        c = part.c
        assert set(tau.image[:c]) == part.complement
        assert list(tau.image) == sorted(part.complement) + sorted(w)

    def test_unbalanced_partition(self):
        with pytest.raises(InvalidSizeError):
            BalancedPartition(6, frozenset({1}))

    def test_relabel_identity(self):
        assert construction.relabel_set(identity(4), Q4) == Q4

    def test_relabel_size_mismatch(self):
        with pytest.raises(DimensionError):
            construction.relabel_set(identity(5), Q4)

    def test_relabelings_of_q4(self):
        images = {construction.relabel_set(tau, Q4.with_mode(PAIR)) for tau in all_permutations(4)}
        assert len(images) == 6
        for s in images:
            assert len(s) == 4
            assert is_minimal_complete(s)
            assert construction.classify_pair_set(s) == 'relabeled'


class TestPStar:
    def test_small_n(self):
        assert list(construction.enumerate_P_star(2)) == [PermSet.of(['12', '21'], PAIR)]
        assert len(list(construction.enumerate_P_star(3))) == 2

    def test_n4_split(self):
        sets = list(construction.enumerate_P_star(4))
        assert len(set(sets)) == 12
        kinds = [construction.classify_pair_set(s) for s in sets]
        assert kinds.count('orbit') == 6
        assert kinds.count('relabeled') == 6
        assert all(is_minimal_complete(s) and len(s) == 4 for s in sets)

    def test_n5_images(self, p_star_5):
        assert len(p_star_5) == len(set(p_star_5)) == counting.count_P_star(5) == 1280
        for s in p_star_5:
            assert len(s) == 6
            assert is_minimal_complete(s)

    def test_phi_inverse_matches_enumeration(self, q_star_5, p_star_5):
        images = {construction.phi_inverse(x, q)
                  for x in itertools.combinations(range(1, 6), 2) for q in q_star_5}
        assert images == set(p_star_5)

    def test_round_trip_n5(self, q_star_5):
        for x in itertools.combinations(range(1, 6), 2):
            for q in q_star_5:
                p = construction.phi_inverse(x, q)
                assert construction.phi(p) == (frozenset(x), q)

    @pytest.mark.parametrize('n', [6, 7])
    def test_round_trip_sampled(self, n):
        rng = np.random.default_rng(n)
        for _ in range(200):
            x = construction.random_subset(n, rng)
            q = construction.sample_Q_star(n, int(rng.integers(0, 2 ** 63)))
            p = construction.phi_inverse(x, q)
            assert construction.phi(p) == (x, q)
            assert construction.phi_inverse(*construction.phi(p)) == p

    def test_phi_of_q_star_6(self):
        q = construction.sample_Q_star(6, 11)
        x, image = construction.phi(q.with_mode(PAIR))
        assert x == {1, 2, 3}
        assert image == q

    def test_phi_rejects(self):
        with pytest.raises(PreconditionError) as e:
            construction.phi(construction.orbit(identity(6)))
        assert e.value.predicate == 'in_P_star'
        with pytest.raises(PreconditionError) as e:
            construction.phi(PermSet.of(['1234', '4321'], PAIR))
        assert e.value.predicate == 'n_at_least_5'

    def test_phi_inverse_rejects(self, q_star_5):
        with pytest.raises(InvalidSizeError):
            construction.phi_inverse({1, 2, 3}, q_star_5[0])
        with pytest.raises(DomainError):
            construction.phi_inverse({1, 9}, q_star_5[0])
        with pytest.raises(PreconditionError) as e:
            construction.phi_inverse({1, 2}, construction.orbit(identity(5)))
        assert e.value.predicate == 'in_Q_star'

    def test_balanced_partition_of(self):
        q = construction.sample_Q_star(7, 5)
        c = construction.transversal_family(q)
        part = construction.balanced_partition_of(q.with_mode(PAIR))
        assert part.complement == set(range(1, c + 1))

    @pytest.mark.parametrize('n', range(2, 10))
    def test_sample_p_star(self, n):
        for seed in range(5):
            s = construction.sample_P_star(n, seed)
            assert len(s) == counting.gamma_P(n)
            assert is_minimal_complete(s)

    def test_classify_other(self):
        assert construction.classify_pair_set(PermSet.of(['1234', '4321'], PAIR)) == 'other'
        p = construction.sample_P_star(6, 1)
        assert construction.classify_pair_set(p) == 'relabeled'
        assert construction.classify_pair_set(construction.orbit(P('31524'))) == 'orbit'


class TestSelectionStructure:
    def test_sampled_maximum_sets_are_balanced_bipartite(self):
        rng = np.random.default_rng(500)
        for _ in range(500):
            n = int(rng.integers(4, 13))
            q = construction.sample_Q_star(n, int(rng.integers(0, 2 ** 63)))
            g = build_selection_graph(q)
            assert is_triangle_free(g)
            sides = is_balanced_complete_bipartite(g)
            assert sides is not None
            assert sorted(map(len, sides)) == [n // 2, n - n // 2]
            assert sides[0] | sides[1] == set(range(1, n + 1))

    def test_odd_n_sides_lead_with_vertex_one(self):
        q = construction.transversal_at(5, 3, 0)
        g = build_selection_graph(q)
        assert is_balanced_complete_bipartite(g) == ({1, 2, 3}, {4, 5})

    def test_p_star_5_digraphs_acyclic(self, p_star_5):
        for s in p_star_5:
            d = build_selection_digraph(s)
            assert is_acyclic(d)
            assert not has_double_orientation(d)
            g = build_selection_graph(s)
            assert is_triangle_free(g)
            assert is_balanced_complete_bipartite(g) is not None

    def test_sampled_digraphs_acyclic(self):
        for n in range(6, 10):
            for seed in range(125):
                d = build_selection_digraph(construction.sample_P_star(n, seed))
                assert is_acyclic(d)
                assert not has_double_orientation(d)

    @settings(max_examples=50)
    @given(st.data())
    def test_relabeled_sets_stay_minimal(self, data):
        n = data.draw(st.integers(4, 8))
        tau = Permutation(tuple(data.draw(st.permutations(range(1, n + 1)))))
        q = construction.sample_Q_star(n, data.draw(st.integers(0, 2 ** 64 - 1)))
        s = construction.relabel_set(tau, q.with_mode(PAIR))
        assert is_minimal_complete(s)
        assert {compose(tau, m) for m in q} == set(s)
