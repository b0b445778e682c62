import random

import numpy as np
import pytest

from specgraph.extremal import ExtremalInstance, build_extremal
from specgraph.graph import CompleteBipartite, build, complete_graph, cycle_graph
from specgraph.linalg import adjacency_matrix, eigenvalues_symmetric
from specgraph.quotient import (
    ContractError,
    VertexPartition,
    color_refinement,
    degree_partition,
    equitable_eigenvalue_containment,
    interlacing_check,
    interlacing_is_tight,
    is_equitable,
    quotient_eigenvalues,
    quotient_matrix,
    symmetrized_quotient,
)

from helpers import random_connected_graph, random_graph, random_permutation

NATURAL_10_4 = VertexPartition([range(4), range(4, 7), range(7, 10)])


def random_partition(rng, n, blocks):
    labels = list(range(blocks)) + [rng.randrange(blocks) for _ in range(n - blocks)]
    rng.shuffle(labels)
    return VertexPartition.from_labels(labels)


class TestPartition:
    def test_rejects_overlap(self):
        with pytest.raises(ContractError):
            VertexPartition([[0, 1], [1, 2]])

    def test_rejects_empty_block(self):
        with pytest.raises(ContractError):
            VertexPartition([[0], []])

    def test_rejects_gap(self):
        with pytest.raises(ContractError):
            VertexPartition([[0], [2]])

    def test_size_mismatch(self):
        with pytest.raises(ContractError):
            quotient_matrix(adjacency_matrix(complete_graph(4)), VertexPartition([[0, 1, 2]]))


class TestEquitable:
    def test_example_natural_partition(self):
        assert is_equitable(build_extremal(10, 4), NATURAL_10_4)

    def test_c4_point_and_rest(self):
        assert not is_equitable(cycle_graph(4), VertexPartition([[0], [1, 2, 3]]))

    def test_singletons(self):
        rng = random.Random(0)
        for _ in range(10):
            g = random_graph(rng, rng.randint(1, 10))
            assert is_equitable(g, VertexPartition.singletons(g.n))

    def test_color_refinement_is_equitable(self):
        rng = random.Random(1)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            assert is_equitable(g, color_refinement(g))
            assert is_equitable(g, color_refinement(g, degree_partition(g)))


class TestQuotientMatrix:
    def test_example_21(self):
        q = quotient_matrix(adjacency_matrix(build_extremal(10, 4)), NATURAL_10_4)
        assert q.tolist() == [[3, 3, 3], [4, 0, 3], [4, 3, 0]]
        assert q.source_equitable

    def test_example_22(self):
        p = VertexPartition([range(5), range(5, 8), range(8, 11)])
        q = quotient_matrix(adjacency_matrix(build_extremal(11, 5)), p)
        assert q.tolist() == [[4, 3, 3], [5, 0, 3], [5, 3, 0]]

    def test_trivial_partition_of_complete(self):
        for n in (2, 5, 8):
            q = quotient_matrix(adjacency_matrix(complete_graph(n)), VertexPartition.trivial(n))
            assert q.tolist() == [[n - 1]]

    def test_flag_for_nonequitable(self):
        q = quotient_matrix(adjacency_matrix(cycle_graph(4)), VertexPartition([[0], [1, 2, 3]]))
        assert not q.source_equitable
        assert q.tolist() == [[0, 2], [2 / 3, 4 / 3]]

    def test_equitable_entries_are_integers(self):
        rng = random.Random(2)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            q = quotient_matrix(adjacency_matrix(g), color_refinement(g))
            assert q.source_equitable
            assert np.array_equal(q.entries, np.round(q.entries))
            assert (q.entries >= 0).all()

    def test_row_sums_are_block_average_degrees(self):
        rng = random.Random(3)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            p = random_partition(rng, g.n, rng.randint(1, min(4, g.n)))
            q = quotient_matrix(adjacency_matrix(g), p)
            deg = g.degrees()
            expected = [np.mean([deg[v] for v in b]) for b in p.blocks]
            assert np.allclose(q.entries.sum(axis=1), expected, atol=1e-12)

    def test_permutation_equivariance(self):
        rng = random.Random(4)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            p = random_partition(rng, g.n, rng.randint(1, min(4, g.n)))
            perm = random_permutation(rng, g.n)
            q1 = quotient_matrix(adjacency_matrix(g), p)
            q2 = quotient_matrix(adjacency_matrix(g.relabel(perm)), p.permuted(perm))
            assert np.array_equal(q1.entries, q2.entries)

    def test_symmetrized_forms_agree(self):
        rng = random.Random(5)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            p = random_partition(rng, g.n, rng.randint(1, min(4, g.n)))
            a = adjacency_matrix(g)
            assert np.allclose(
                quotient_matrix(a, p).symmetrized().entries, symmetrized_quotient(a, p).entries, atol=1e-12
            )

    def test_symmetrized_spectrum_matches_raw_quotient(self):
        # independent route: eigenvalues of the nonsymmetric quotient via numpy
        rng = random.Random(6)
        for _ in range(30):
            g = random_graph(rng, rng.randint(2, 12))
            p = random_partition(rng, g.n, rng.randint(1, min(4, g.n)))
            a = adjacency_matrix(g)
            raw = np.sort(np.linalg.eigvals(quotient_matrix(a, p).entries).real)[::-1]
            assert np.allclose(quotient_eigenvalues(a, p), raw, atol=1e-8)


class TestInterlacing:
    def test_example(self):
        full = eigenvalues_symmetric(adjacency_matrix(build_extremal(10, 4)))
        quot = quotient_eigenvalues(adjacency_matrix(build_extremal(10, 4)), NATURAL_10_4)
        assert quot == pytest.approx([7.898979485566356, -1.898979485566356, -3.0], abs=1e-10)
        assert interlacing_check(full, quot)

    def test_identity_partition(self):
        full = eigenvalues_symmetric(adjacency_matrix(cycle_graph(6)))
        assert interlacing_check(full, full)
        assert interlacing_is_tight(full, full)

    def test_upper_bound_violation(self):
        assert not interlacing_check([1.0, -1.0], [2.0])

    def test_length_contract(self):
        with pytest.raises(ContractError):
            interlacing_check([1.0], [1.0, 0.0])

    def test_tight_for_equitable_example(self):
        a = adjacency_matrix(build_extremal(10, 4))
        assert interlacing_is_tight(eigenvalues_symmetric(a), quotient_eigenvalues(a, NATURAL_10_4))

    def test_not_tight_for_c4_point_and_rest(self):
        a = adjacency_matrix(cycle_graph(4))
        p = VertexPartition([[0], [1, 2, 3]])
        full, quot = eigenvalues_symmetric(a), quotient_eigenvalues(a, p)
        assert interlacing_check(full, quot)
        assert not interlacing_is_tight(full, quot)

    def test_random_partitions(self):
        rng = random.Random(7)
        for _ in range(100):
            g = random_connected_graph(rng, rng.randint(5, 12))
            a = adjacency_matrix(g)
            full = eigenvalues_symmetric(a)
            p = random_partition(rng, g.n, rng.randint(2, 4))
            assert interlacing_check(full, quotient_eigenvalues(a, p))


class TestContainment:
    def test_example(self):
        assert equitable_eigenvalue_containment(build_extremal(10, 4), NATURAL_10_4)

    def test_k33(self):
        g = build(CompleteBipartite(3, 3))
        p = VertexPartition([range(3), range(3, 6)])
        assert quotient_matrix(adjacency_matrix(g), p).tolist() == [[0, 3], [3, 0]]
        assert equitable_eigenvalue_containment(g, p)

    def test_singletons(self):
        g = cycle_graph(7)
        assert equitable_eigenvalue_containment(g, VertexPartition.singletons(7))

    def test_precondition_names_block_pair(self):
        with pytest.raises(ContractError, match="block 1 .* block 0"):
            equitable_eigenvalue_containment(cycle_graph(4), VertexPartition([[0], [1, 2, 3]]))

    def test_odd_extremal_partition(self):
        for n, k in [(10, 3), (9, 2), (12, 7)]:
            inst = ExtremalInstance(n, k)
            assert equitable_eigenvalue_containment(inst.graph(), inst.natural_partition())
