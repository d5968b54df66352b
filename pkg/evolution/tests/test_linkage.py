import itertools

import numpy as np
import pytest

from evolution.linkage import (TaskPopulation, build_all_trees, build_tree, distance_matrix, pairwise_distance,
                               task_population)
from evolution.population import Evaluator, Individual, Population
from evolution.tests.conftest import onemax_task, trap_task


def test_distance_of_perfectly_dependent_columns_is_zero():
    assert pairwise_distance([0, 1] * 10, [0, 1] * 10) == 0.0


def test_distance_of_independent_columns_is_one():
    assert pairwise_distance([0, 0, 1, 1], [0, 1, 0, 1]) == 1.0


def test_distance_of_constant_columns_is_zero():
    assert pairwise_distance([1, 1, 1], [0, 0, 0]) == 0.0


def test_distance_requires_equal_lengths():
    with pytest.raises(ValueError):
        pairwise_distance([0, 1, 1], [0, 1])


def test_distance_is_symmetric_and_bounded(rng):
    for _ in range(50):
        x = rng.integers(0, 3, size=40)
        y = rng.integers(0, 3, size=40)
        d = pairwise_distance(x, y)
        assert d == pairwise_distance(y, x)
        assert 0.0 <= d <= 2.0
        assert pairwise_distance(x, x) == 0.0


def test_distance_matrix_agrees_with_pairwise_distance(rng):
    rows = rng.integers(0, 2, size=(30, 6))
    matrix = distance_matrix(TaskPopulation(1, rows))
    assert matrix.dim == 6
    assert np.allclose(matrix.dist, matrix.dist.T)
    assert np.all(np.diag(matrix.dist) == 0.0)
    for i, j in itertools.combinations(range(6), 2):
        assert matrix.dist[i, j] == pytest.approx(pairwise_distance(rows[:, i], rows[:, j]))


def test_single_gene_tree_has_no_merges():
    tree = build_tree(TaskPopulation(1, np.array([[0], [1]])))
    assert tree.nodes == [(0,)]
    assert tree.masks() == []


def test_dependent_genes_merge_first():
    rows = np.array([[0, 0, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1]] * 3)
    tree = build_tree(TaskPopulation(1, rows))
    assert tree.nodes[3] == (0, 1)
    assert tree.merge_distances[3] == 0.0
    assert tree.dump() == '\n'.join([
        '{0,1,2} d=1.000000',
        '  {2}',
        '  {0,1} d=0.000000',
        '    {0}',
        '    {1}',
    ])


def test_masks_go_from_large_to_small_and_recent_to_old():
    rows = np.array([[0, 0, 0], [0, 0, 1], [1, 1, 0], [1, 1, 1]])
    tree = build_tree(TaskPopulation(1, rows))
    assert [mask.tolist() for mask in tree.masks()] == [[0, 1], [2], [1], [0]]


def test_equal_distances_merge_lowest_pair_first():
    rows = np.array(list(itertools.product([0, 1], repeat=4)))
    tree = build_tree(TaskPopulation(1, rows))
    assert tree.children[4:] == [(0, 1), (2, 3), (4, 5)]
    assert tree.nodes[5] == (2, 3)


def test_seven_genes_give_thirteen_nodes(rng):
    tree = build_tree(TaskPopulation(1, rng.integers(0, 2, size=(50, 7))))
    assert len(tree.nodes) == 13


@pytest.mark.parametrize('genes', [2, 5, 16])
def test_tree_structure(rng, genes):
    tree = build_tree(TaskPopulation(1, rng.integers(0, 2, size=(40, genes))))
    assert len(tree.nodes) == 2 * genes - 1
    assert tree.nodes[:genes] == [(gene,) for gene in range(genes)]
    assert tree.nodes[-1] == tuple(range(genes))
    for node, children in zip(tree.nodes, tree.children):
        if children is not None:
            left, right = (set(tree.nodes[child]) for child in children)
            assert not left & right
            assert left | right == set(node)
    assert len(tree.masks()) == 2 * genes - 2


def test_tree_is_deterministic(rng):
    pop = TaskPopulation(1, rng.integers(0, 3, size=(40, 8)))
    assert build_tree(pop) == build_tree(pop)


def test_empty_population_is_an_error():
    with pytest.raises(ValueError):
        build_tree(TaskPopulation(1, np.zeros((0, 4), dtype=np.int64)))


def _population(tasks, skill_factors, rng):
    evaluator = Evaluator(tasks)
    members = []
    for skill in skill_factors:
        ind = evaluator.random_individual(rng)
        ind.skill_factor = skill
        members.append(ind)
    return Population(members, evaluator)


def test_task_without_skilled_members_uses_whole_population(rng):
    tasks = [trap_task(1), trap_task(2)]
    pop = _population(tasks, [1] * 20, rng)
    assert task_population(pop, tasks[1]).rows.shape == (20, 15)
    assert len(build_all_trees(pop, tasks)) == 2


def test_trees_are_learned_from_skill_groups(rng):
    tasks = [trap_task(1), trap_task(2)]
    pop = _population(tasks, [1] * 60 + [2] * 40, rng)
    assert task_population(pop, tasks[0]).rows.shape[0] == 60
    assert task_population(pop, tasks[1]).rows.shape[0] == 40


def test_trees_only_cover_their_task_genes(rng):
    tasks = [trap_task(1, k=3, m=5), onemax_task(2, length=25)]
    pop = _population(tasks, [1, 2] * 10, rng)
    first, second = build_all_trees(pop, tasks)
    assert first.task_id == 1
    assert first.nodes[-1] == tuple(range(15))
    assert second.nodes[-1] == tuple(range(25))


def test_individual_genes_stay_in_unified_space(rng):
    tasks = [trap_task(1, k=3, m=2), onemax_task(2, length=4, alphabet_size=4)]
    pop = _population(tasks, [2] * 6, rng)
    rows = task_population(pop, tasks[0]).rows
    assert rows.shape == (6, 6)
    assert set(np.unique(rows)) <= {0, 1}
    assert isinstance(pop.members[0], Individual)
