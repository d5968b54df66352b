import numpy as np
import pytest

from evolution import cluspt
from evolution.cluspt import ClusteredGraph, TreeSolution
from evolution.exceptions import InstanceFormatError

OVERLAPPING_CLUSTERS = """\
DIMENSION: 3
CLUSTERS: 2
SOURCE: 1
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_SECTION
1 2 1
2 3 1
CLUSTER_SECTION
1 1 2 -1
2 2 3 -1
EOF
"""


def path3():
    return ClusteredGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], [[0, 1, 2]])


def complete_unit_graph(n):
    return ClusteredGraph.from_edges(n, [(u, v, 1.0) for u in range(n) for v in range(u + 1, n)], [list(range(n))])


def split_cluster_graph():
    """A 5-vertex cluster hanging off a path and a 2-vertex cluster reachable from its end."""
    edges = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (5, 6, 1.0), (4, 5, 1.0), (4, 6, 1.0)]
    return ClusteredGraph.from_edges(7, edges, [[0, 1, 2, 3, 4], [5, 6]])


def test_fixture_parses(path4):
    assert path4.n == 4
    assert path4.clusters == [(0, 1), (2, 3)]
    assert path4.source == 0
    assert path4.edges == [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0)]
    assert path4.known_optimum == 8.0
    assert path4.name == 'path4'


def test_euclidean_weights_are_rounded_distances(euclid6):
    assert euclid6.weight(0, 1) == 5.0
    assert euclid6.weight(3, 4) == 5.0
    assert euclid6.has_edge(0, 5)
    assert euclid6.known_optimum is None


def test_vertex_in_two_clusters_is_not_a_partition():
    with pytest.raises(InstanceFormatError, match='not a partition') as excinfo:
        cluspt.parse_instance(OVERLAPPING_CLUSTERS)
    assert excinfo.value.line == 10


def test_bad_edge_weight_reports_its_line():
    text = OVERLAPPING_CLUSTERS.replace('1 2 1\n', '1 2 heavy\n')
    with pytest.raises(InstanceFormatError) as excinfo:
        cluspt.parse_instance(text)
    assert excinfo.value.line == 6
    assert str(excinfo.value).startswith('line 6:')


def test_missing_header_is_an_error():
    with pytest.raises(InstanceFormatError, match='missing SOURCE'):
        cluspt.parse_instance(OVERLAPPING_CLUSTERS.replace('SOURCE: 1\n', ''))


def test_disconnected_cluster_is_rejected():
    with pytest.raises(InstanceFormatError, match='cluster 1 induces a disconnected subgraph'):
        ClusteredGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], [[0, 2], [1]])


def test_disconnected_graph_is_rejected():
    with pytest.raises(InstanceFormatError, match='not connected'):
        ClusteredGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 1.0)], [[0, 1], [2, 3]])


def test_format_and_parse_agree(fixture_graphs):
    for graph in fixture_graphs:
        again = cluspt.parse_instance(cluspt.format_instance(graph))
        assert again.edges == graph.edges
        assert again.clusters == graph.clusters
        assert again.source == graph.source
        assert again.known_optimum == graph.known_optimum
        assert again.name == graph.name


def test_super_edges_pick_lightest_crossing_edge(six3):
    assert six3.super_edges == {(0, 1): (2.0, 1, 2), (0, 2): (6.0, 1, 5), (1, 2): (2.0, 3, 4)}


def test_any_genotype_on_path_gives_the_path(path4):
    solution = cluspt.decode(path4, np.zeros(4, dtype=np.int64))
    assert solution.objective == 8.0
    assert solution.parent == (None, 0, 1, 2)


def test_unit_complete_graph_decodes_to_star(rng):
    graph = complete_unit_graph(5)
    for _ in range(20):
        solution = cluspt.decode(graph, rng.integers(0, 5, size=5))
        assert solution.objective == 4.0
        assert solution.parent == (None, 0, 0, 0, 0)


def test_path_distances():
    solution = cluspt.decode(path3(), [2, 1, 0])
    assert solution.dist == (0.0, 1.0, 2.0)
    assert solution.objective == 3.0
    assert solution.edges == [(0, 1), (1, 2)]


def test_priorities_steer_cluster_order(six3):
    assert cluspt.decode(six3, [0, 0, 5, 0, 0, 0]).objective == 21.0
    assert cluspt.decode(six3, [0, 0, 0, 0, 5, 0]).objective == 23.0


def test_doubling_weights_doubles_objective(six3, rng):
    doubled = ClusteredGraph.from_edges(six3.n, [(u, v, 2 * w) for u, v, w in six3.edges],
                                        six3.clusters, six3.source)
    for _ in range(50):
        genotype = rng.integers(0, six3.n, size=six3.n)
        assert cluspt.decode(doubled, genotype).objective == 2 * cluspt.decode(six3, genotype).objective


def test_random_genotypes_decode_to_feasible_trees(fixture_graphs, rng):
    for graph in fixture_graphs:
        for _ in range(1000):
            genotype = rng.integers(0, graph.n, size=graph.n)
            solution = cluspt.decode(graph, genotype)
            assert cluspt.validate(graph, solution) == []
            assert cluspt.objective(solution) == solution.objective


def test_decode_is_deterministic(seven3, rng):
    genotype = rng.integers(0, seven3.n, size=seven3.n)
    assert cluspt.decode(seven3, genotype) == cluspt.decode(seven3, genotype.copy())


def test_decode_ignores_genes_past_the_vertex_count(path4):
    assert cluspt.decode(path4, [1, 2, 3, 0, 9, 9]) == cluspt.decode(path4, [1, 2, 3, 0])


def test_short_genotype_is_an_error(path4):
    with pytest.raises(ValueError):
        cluspt.decode(path4, [0, 1])


def test_split_cluster_is_reported():
    graph = split_cluster_graph()
    solution = cluspt.orient_tree(graph, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6)])
    assert cluspt.validate(graph, solution) == ['cluster 2 induced subtree disconnected']
    feasible = cluspt.orient_tree(graph, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])
    assert cluspt.validate(graph, feasible) == []


def test_cycle_is_not_a_tree(path4):
    solution = TreeSolution(parent=(None, 2, 1, 2), dist=(0.0, 3.0, 2.0, 3.0), objective=8.0)
    assert 'not a tree' in cluspt.validate(path4, solution)


def test_wrong_objective_is_reported(path4):
    honest = cluspt.decode(path4, [0, 0, 0, 0])
    forged = TreeSolution(honest.parent, honest.dist, 7.0)
    assert len(cluspt.validate(path4, forged)) == 1


def test_objective_callable_decodes(six3):
    assert cluspt.ClusteredTreeObjective(six3)(np.array([0, 0, 5, 0, 0, 0])) == 21.0


def test_generated_instance_is_valid_and_reproducible():
    graph = cluspt.generate_instance(12, 3, seed=4)
    assert graph.n == 12
    assert graph.cluster_count == 3
    assert sorted(len(members) for members in graph.clusters) == [4, 4, 4]
    assert graph.source == 0
    assert cluspt.format_instance(graph) == cluspt.format_instance(cluspt.generate_instance(12, 3, seed=4))
    again = cluspt.parse_instance(cluspt.format_instance(graph))
    assert again.edges == graph.edges


def test_generator_needs_enough_vertices():
    with pytest.raises(ValueError):
        cluspt.generate_instance(2, 3, seed=0)
