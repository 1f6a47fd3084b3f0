import random

import pytest

import steffenlab as sl
from steffenlab.errors import VertexNotInV0
from steffenlab.structure import enumerate_cycles
from oracles import all_cycles_by_bfs_style, max_disjoint_paths_oracle


@pytest.fixture()
def fan_graph():
    """C_5 on 0..4 plus V_0 = {5, 6}: 5~0, 5~6, 6~2."""
    return sl.build(
        7,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1), (0, 5, 1), (5, 6, 1), (2, 6, 1)],
    )


class TestCyclePartition:
    def test_petersen_two_cycles(self, petersen):
        P = sl.cycle_partition(petersen)
        assert [c.vertices for c in P.cycles] == [(0, 1, 2, 3, 4), (5, 7, 9, 6, 8)]
        assert P.v0 == frozenset()
        assert sl.verify_cycle_partition(petersen, P) == []

    def test_3c5_single_cycle(self):
        P = sl.cycle_partition(sl.mu_cycle(5, 3))
        assert len(P.cycles) == 1 and P.v0 == frozenset()

    def test_tree(self):
        G = sl.build(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)])
        P = sl.cycle_partition(G)
        assert P.cycles == () and P.v0 == frozenset(range(4))

    def test_verify_catches_wrong_v0(self, petersen):
        P = sl.cycle_partition(petersen)
        forged = sl.CyclePartition(P.cycles, frozenset({9}))
        assert sl.verify_cycle_partition(petersen, forged) != []

    def test_verify_catches_non_shortest(self, petersen):
        # a 6-cycle of Petersen is not shortest at stage 0
        forged = sl.CyclePartition(
            (sl.CycleSeq((0, 1, 6, 9, 7, 5)),), frozenset(range(10)) - {0, 1, 6, 9, 7, 5}
        )
        assert any("girth" in p for p in sl.verify_cycle_partition(petersen, forged))

    def test_random_partitions_verify(self):
        rng = random.Random(3)
        for _ in range(60):
            G = sl.random_multigraph(rng, n_max=9, mu_max=2)
            assert sl.verify_cycle_partition(G, sl.cycle_partition(G)) == []


class TestMaxFan:
    def test_two_fan_from_v0(self, fan_graph):
        P = sl.cycle_partition(fan_graph)
        fan = sl.max_fan(fan_graph, P, 5, 0)
        assert fan.t == 2
        assert fan.paths == ((5, 0), (5, 6, 2))
        assert fan.interior_vertices() == frozenset({5, 6})

    def test_two_fan_from_other_apex(self, fan_graph):
        P = sl.cycle_partition(fan_graph)
        fan = sl.max_fan(fan_graph, P, 6, 0)
        assert fan.t == 2
        assert fan.paths == ((6, 2), (6, 5, 0))

    def test_isolated_apex(self):
        G = sl.build(6, [(i, (i + 1) % 5, 1) for i in range(5)])
        P = sl.cycle_partition(G)
        assert sl.max_fan(G, P, 5, 0) is None

    def test_apex_must_be_in_v0(self, fan_graph):
        P = sl.cycle_partition(fan_graph)
        with pytest.raises(VertexNotInV0):
            sl.max_fan(fan_graph, P, 0, 0)

    def test_matches_packing_oracle(self):
        rng = random.Random(77)
        for _ in range(80):
            G = sl.random_multigraph(rng, n_max=8, mu_max=2)
            P = sl.cycle_partition(G)
            for v0 in sorted(P.v0):
                for h in range(len(P.cycles)):
                    fan = sl.max_fan(G, P, v0, h)
                    want = max_disjoint_paths_oracle(
                        G, v0, set(P.v0), P.cycles[h].vertex_set()
                    )
                    assert (fan.t if fan else 0) == want

    def test_paths_internally_disjoint_and_v0_interior(self):
        rng = random.Random(78)
        for _ in range(60):
            G = sl.random_multigraph(rng, n_max=9, mu_max=2)
            P = sl.cycle_partition(G)
            for v0 in sorted(P.v0):
                for h in range(len(P.cycles)):
                    fan = sl.max_fan(G, P, v0, h)
                    if fan is None:
                        continue
                    cyc = P.cycles[h].vertex_set()
                    seen_interior = set()
                    seen_ends = set()
                    for path in fan.paths:
                        assert path[0] == v0
                        assert path[-1] in cyc
                        assert all(x in P.v0 for x in path[:-1])
                        interior = set(path[1:-1])
                        assert not interior & seen_interior
                        seen_interior |= interior
                        assert path[-1] not in seen_ends
                        seen_ends.add(path[-1])


class TestFanBound:
    def test_example_two_fan(self, fan_graph):
        P = sl.cycle_partition(fan_graph)
        fan = sl.max_fan(fan_graph, P, 5, 0)
        # |T^0| = 2 >= 1*5/2 - 1
        assert sl.fan_bound_check(fan, P.cycles[0]) is True

    def test_one_fan_trivial(self):
        fan = sl.Fan(0, 0, ((0, 3),))
        assert sl.fan_bound_check(fan, sl.CycleSeq((3, 4, 5))) is True

    def test_constructed_negative(self):
        # hand-built object: t=3 direct paths into a 6-cycle, interior = apex only
        fan = sl.Fan(9, 0, ((9, 0), (9, 2), (9, 4)))
        assert sl.fan_bound_check(fan, sl.CycleSeq((0, 1, 2, 3, 4, 5))) is False

    def test_always_holds_on_real_fans(self):
        rng = random.Random(79)
        for _ in range(80):
            G = sl.random_multigraph(rng, n_max=9, mu_max=3)
            P = sl.cycle_partition(G)
            for v0 in sorted(P.v0):
                for h in range(len(P.cycles)):
                    fan = sl.max_fan(G, P, v0, h)
                    if fan is not None:
                        assert sl.fan_bound_check(fan, P.cycles[h])


class TestRingRecognition:
    def test_3c5(self):
        assert sl.is_ring_graph(sl.mu_cycle(5, 3)) is True

    def test_petersen(self, petersen):
        assert sl.is_ring_graph(petersen) is False

    def test_mixed_ring(self):
        assert sl.is_ring_graph(sl.ring(7, [3, 1, 2, 1, 3, 1, 2])) is True

    def test_cycle_plus_chord_is_not(self):
        G = sl.build(5, [(i, (i + 1) % 5, 2) for i in range(5)] + [(0, 2, 1)])
        assert sl.is_ring_graph(G) is False

    def test_disconnected_cycles_are_not(self):
        edges = [(i, (i + 1) % 3, 1) for i in range(3)]
        edges += [(3 + i, 3 + (i + 1) % 3, 1) for i in range(3)]
        assert sl.is_ring_graph(sl.build(6, edges)) is False


class TestCycleEnumeration:
    def test_matches_oracle(self):
        rng = random.Random(80)
        for _ in range(40):
            G = sl.random_multigraph(rng, n_max=7, mu_max=1)
            got = [c.vertices for c in enumerate_cycles(sl.underlying_simple(G))]
            assert got == all_cycles_by_bfs_style(G)

    def test_petersen_cycle_count(self, petersen):
        cycles = enumerate_cycles(sl.underlying_simple(petersen))
        assert len(cycles) == len(all_cycles_by_bfs_style(petersen))
        assert [len(c) for c in cycles[:12]] == [5] * 12  # twelve 5-cycles


class TestFindRingSubgraph:
    def test_3c5_is_its_own_ring(self):
        G = sl.mu_cycle(5, 3)
        ring = sl.find_ring_subgraph_with_chi(G, 8)
        assert ring is not None
        assert ring.chi == 8
        assert ring.multiplicities == (3, 3, 3, 3, 3)

    def test_petersen_has_no_chi4_ring(self, petersen):
        assert sl.find_ring_subgraph_with_chi(petersen, 4) is None

    def test_petersen_has_chi3_ring(self, petersen):
        ring = sl.find_ring_subgraph_with_chi(petersen, 3)
        assert ring is not None and len(ring.cycle) == 5

    def test_chorded_ring_search(self):
        G = sl.build(5, [(i, (i + 1) % 5, 3) for i in range(5)] + [(0, 2, 1)])
        chi = sl.chromatic_index(G)[0]
        ring = sl.find_ring_subgraph_with_chi(G, chi)
        assert ring is not None
        assert ring.chi == chi
        # witness multiplicities never exceed the host graph's
        vs = ring.cycle.vertices
        for i, m in enumerate(ring.multiplicities):
            assert m <= G.mult(vs[i], vs[(i + 1) % len(vs)])

    def test_descent_hits_intermediate_target(self):
        G = sl.mu_cycle(5, 3)  # maximal ring chi' = 8
        ring = sl.find_ring_subgraph_with_chi(G, 6)
        assert ring is not None
        assert ring.chi == 6
        assert sl.chromatic_index(ring.to_multigraph())[0] == 6

    def test_unreachable_target(self):
        assert sl.find_ring_subgraph_with_chi(sl.mu_cycle(5, 1), 2) is None

    def test_witness_chi_revalidated_by_solver(self):
        rng = random.Random(81)
        for _ in range(20):
            G = sl.random_multigraph(rng, n_max=7, mu_max=3)
            if sl.girth(G) == sl.INFINITE_GIRTH:
                continue
            chi = sl.chromatic_index(G)[0]
            ring = sl.find_ring_subgraph_with_chi(G, chi)
            if ring is not None:
                assert sl.chromatic_index(ring.to_multigraph())[0] == chi


class TestEvenRingsBipartite:
    def test_fifty_even_rings(self):
        rng = random.Random(2024)
        for _ in range(50):
            g = rng.choice([4, 6, 8])
            mults = [rng.randint(1, 4) for _ in range(g)]
            R = sl.ring(g, mults)
            chi, w = sl.chromatic_index(R)
            assert chi == max(R.degrees)
            assert sl.validate_coloring(R, w)
