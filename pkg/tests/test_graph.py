import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from specgraph.graph import (
    CapacityError,
    Complement,
    Complete,
    CompleteBipartite,
    EmptyGraph,
    Graph,
    GraphError,
    Join,
    build,
    complete_graph,
    cycle_graph,
    in_sigma_k,
    is_bipartite,
    is_connected,
    vertex_bipartiteness,
)

from helpers import random_graph

EXAMPLE_21 = Join(Complete(4), Join(Complement(Complete(3)), Complement(Complete(3))))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_vb(g: Graph) -> int:
    """Independent odd cycle transversal size via networkx bipartiteness."""
    h = to_nx(g)
    for size in range(g.n + 1):
        for removed in combinations(range(g.n), size):
            if nx.is_bipartite(h.subgraph(set(range(g.n)) - set(removed))):
                return size


small_specs = st.recursive(
    st.one_of(
        st.builds(Complete, st.integers(1, 4)),
        st.builds(EmptyGraph, st.integers(1, 4)),
        st.builds(CompleteBipartite, st.integers(1, 3), st.integers(1, 3)),
    ),
    lambda inner: st.one_of(st.builds(Complement, inner), st.builds(Join, inner, inner)),
    max_leaves=6,
)


def graphs(max_n=9):
    @st.composite
    def _g(draw):
        n = draw(st.integers(1, max_n))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
        return Graph.from_edges(n, chosen)

    return _g()


class TestBuild:
    def test_complete(self):
        g = build(Complete(4))
        assert g.num_edges == 6
        assert g.degrees() == [3, 3, 3, 3]

    def test_example_graph_degrees(self):
        g = build(EXAMPLE_21)
        assert g.n == 10
        assert g.degrees() == [9] * 4 + [7] * 6

    def test_complement_of_complete_is_empty(self):
        g = build(Complement(Complete(3)))
        assert g.n == 3 and g.num_edges == 0

    def test_join_labels_left_first(self):
        g = build(Join(Complete(2), EmptyGraph(3)))
        assert g.has_edge(0, 1)
        assert not g.has_edge(2, 3)
        assert all(g.has_edge(i, j) for i in (0, 1) for j in (2, 3, 4))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            build(Join(Complete(40), EmptyGraph(25)))
        assert build(Join(Complete(40), EmptyGraph(24))).n == 64

    def test_size_parameters_positive(self):
        with pytest.raises(GraphError):
            build(Complete(0))
        with pytest.raises(GraphError):
            build(CompleteBipartite(2, 0))

    @given(small_specs)
    def test_double_complement(self, spec):
        assert build(Complement(Complement(spec))) == build(spec)

    @given(st.integers(1, 8), st.integers(1, 8))
    def test_join_of_empties_is_complete_bipartite(self, s, t):
        assert build(Join(EmptyGraph(s), EmptyGraph(t))) == build(CompleteBipartite(s, t))

    @given(small_specs, small_specs)
    def test_join_vertex_count(self, a, b):
        assert build(Join(a, b)).n == build(a).n + build(b).n


class TestGraphInvariants:
    def test_asymmetric_rejected(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0))

    def test_loop_rejected(self):
        with pytest.raises(GraphError):
            Graph(1, (1,))

    def test_row_count(self):
        with pytest.raises(GraphError):
            Graph(3, (0, 0))

    @given(graphs())
    def test_complement_is_involution(self, g):
        assert g.complement().complement() == g
        assert g.num_edges + g.complement().num_edges == g.n * (g.n - 1) // 2


class TestConnectivity:
    def test_complete(self):
        assert is_connected(complete_graph(4))

    def test_two_edges(self):
        assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_k33(self):
        assert is_connected(build(CompleteBipartite(3, 3)))

    @given(graphs())
    def test_matches_networkx(self, g):
        assert is_connected(g) == nx.is_connected(to_nx(g))


class TestBipartite:
    def test_c4(self):
        assert is_bipartite(cycle_graph(4)) == ([0, 2], [1, 3])

    def test_c5(self):
        assert is_bipartite(cycle_graph(5)) is None

    def test_k33(self):
        assert is_bipartite(build(CompleteBipartite(3, 3))) == ([0, 1, 2], [3, 4, 5])

    @given(graphs())
    def test_coloring_is_proper_and_agrees_with_networkx(self, g):
        col = is_bipartite(g)
        assert (col is not None) == nx.is_bipartite(to_nx(g))
        if col is not None:
            zeros, ones = col
            assert sorted(zeros + ones) == list(range(g.n))
            side = {v: 0 for v in zeros} | {v: 1 for v in ones}
            assert all(side[u] != side[v] for u, v in g.edges())


class TestVertexBipartiteness:
    def test_k33(self):
        assert vertex_bipartiteness(build(CompleteBipartite(3, 3))) == (0, [])

    def test_c5(self):
        vb, witness = vertex_bipartiteness(cycle_graph(5))
        assert vb == 1 and len(witness) == 1

    def test_example_graph(self):
        assert vertex_bipartiteness(build(EXAMPLE_21)) == (4, [0, 1, 2, 3])

    def test_limit_stops_early(self):
        assert vertex_bipartiteness(complete_graph(6), limit=2) == (3, [])
        assert vertex_bipartiteness(complete_graph(6), limit=4) == (4, [0, 1, 2, 3])

    @settings(max_examples=60)
    @given(graphs(8))
    def test_agrees_with_brute_force(self, g):
        vb, witness = vertex_bipartiteness(g)
        assert vb == brute_vb(g)
        assert len(witness) == vb
        assert is_bipartite(g.remove_vertices(witness)) is not None
        assert (vb == 0) == (is_bipartite(g) is not None)

    @settings(max_examples=40)
    @given(graphs(8), st.data())
    def test_deleting_a_vertex_lowers_vb_by_at_most_one(self, g, data):
        if g.n < 2:
            return
        v = data.draw(st.integers(0, g.n - 1))
        assert vertex_bipartiteness(g.remove_vertices([v]))[0] >= vertex_bipartiteness(g)[0] - 1

    def test_relabel_invariant(self):
        rng = random.Random(3)
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 9))
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert vertex_bipartiteness(g.relabel(perm))[0] == vertex_bipartiteness(g)[0]


class TestSigma:
    def test_k33_k0(self):
        assert in_sigma_k(build(CompleteBipartite(3, 3)), 0)

    def test_example_in_sigma_4(self):
        assert in_sigma_k(build(EXAMPLE_21), 4)

    def test_example_not_in_sigma_3(self):
        assert not in_sigma_k(build(EXAMPLE_21), 3)

    def test_disconnected_excluded(self):
        assert not in_sigma_k(Graph.from_edges(4, [(0, 1), (2, 3)]), 4)
