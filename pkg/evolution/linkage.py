"""
Linkage learning: mutual-information distances between genes and the UPGMA linkage tree built from them.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TaskPopulation:
    """The decoded genes (rows: individuals, columns: genes) of the members skilled on one task."""
    task_id: int
    rows: np.ndarray

    def __post_init__(self):
        if np.ndim(self.rows) != 2:
            raise ValueError("A task population must be a two-dimensional array of genes")

    @property
    def gene_count(self):
        return self.rows.shape[1]


@dataclass(frozen=True)
class ProximityMatrix:
    dist: np.ndarray

    @property
    def dim(self):
        return self.dist.shape[0]


def _entropy(counts, total):
    # Sorting the non-zero counts makes the sum independent of the order the symbols were coded in
    p = np.sort(counts[counts > 0]) / total
    return float(-(p * np.log2(p)).sum())


def _distance(h_x, h_y, h_xy):
    if h_xy == 0.0:
        return 0.0
    return max(0.0, 2.0 - (h_x + h_y) / h_xy)


def pairwise_distance(col_x, col_y):
    """
    Normalized variation of information between two gene columns: 2 - (H(x) + H(y)) / H(x, y).

    The distance is 0 for columns that are constant or determine each other, and approaches 1 for independent
    columns. Entropies are computed in bits from the empirical joint distribution.
    """
    x = np.asarray(col_x, dtype=np.int64)
    y = np.asarray(col_y, dtype=np.int64)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError(f"Gene columns must be one-dimensional and of equal length, got {x.shape} and {y.shape}")
    if x.size == 0:
        raise ValueError("Cannot measure the distance between empty gene columns")
    total = x.size
    base = int(max(x.max(), y.max())) + 1
    h_xy = _entropy(np.bincount(x * base + y), total)
    return _distance(_entropy(np.bincount(x), total), _entropy(np.bincount(y), total), h_xy)


def distance_matrix(pop):
    rows = np.asarray(pop.rows, dtype=np.int64)
    total, genes = rows.shape
    if total == 0:
        raise ValueError(f"Task {pop.task_id} has no members to learn linkage from")
    base = int(rows.max()) + 1
    single = [_entropy(np.bincount(rows[:, i]), total) for i in range(genes)]
    dist = np.zeros((genes, genes))
    for i in range(genes):
        joint = rows[:, i, None] * base
        for j in range(i + 1, genes):
            h_xy = _entropy(np.bincount(joint[:, 0] + rows[:, j]), total)
            dist[i, j] = dist[j, i] = _distance(single[i], single[j], h_xy)
    return ProximityMatrix(dist)


@dataclass
class LinkageTree:
    """
    Binary merge tree over the genes of one task.

    Nodes are stored leaves first (node i is gene i for i < L), followed by the L - 1 merged clusters in the order
    they were formed; the last node is the root and holds every gene.
    """
    task_id: int
    nodes: List[Tuple[int, ...]]
    children: List[Optional[Tuple[int, int]]]
    merge_distances: List[Optional[float]]

    @property
    def gene_count(self):
        return len(self.nodes[-1])

    @property
    def root(self):
        return len(self.nodes) - 1

    def clusters(self) -> List[FrozenSet[int]]:
        return [frozenset(node) for node in self.nodes]

    @cached_property
    def _masks(self):
        order = sorted(range(self.root), key=lambda index: (-len(self.nodes[index]), -index))
        return [np.array(self.nodes[index], dtype=np.intp) for index in order]

    def masks(self):
        """
        Crossover masks in traversal order: every node except the root, largest first, and among nodes of equal
        size the most recently merged first.
        """
        return self._masks

    def dump(self):
        lines = []

        def visit(index, depth):
            genes = ','.join(str(gene) for gene in self.nodes[index])
            if self.children[index] is None:
                lines.append(f"{'  ' * depth}{{{genes}}}")
                return
            lines.append(f"{'  ' * depth}{{{genes}}} d={self.merge_distances[index]:.6f}")
            for child in self.children[index]:
                visit(child, depth + 1)

        visit(self.root, 0)
        return '\n'.join(lines)


def build_tree(pop):
    """
    Agglomerate the genes of `pop` into a linkage tree with average linkage (UPGMA).

    The closest pair of active clusters is merged first; ties go to the pair with the lexicographically smallest
    (lower id, higher id). Distances to a merged cluster follow the Lance-Williams update for average linkage.
    """
    rows = np.asarray(pop.rows)
    if rows.shape[0] == 0:
        raise ValueError(f"Task {pop.task_id} has no members to learn linkage from")
    genes = rows.shape[1]
    nodes = [(gene,) for gene in range(genes)]
    children = [None] * genes
    merge_distances = [None] * genes
    if genes > 1:
        size = 2 * genes - 1
        dist = np.full((size, size), np.inf)
        dist[:genes, :genes] = distance_matrix(pop).dist
        upper = np.triu(np.ones((size, size), dtype=bool), k=1)
        active = np.zeros(size, dtype=bool)
        active[:genes] = True
        weight = np.zeros(size)
        weight[:genes] = 1.0
        for new in range(genes, size):
            candidates = np.where(upper & active[:, None] & active[None, :], dist, np.inf)
            # argmin scans row-major, so the first minimum is the lexicographically smallest pair
            a, b = divmod(int(np.argmin(candidates)), size)
            active[a] = active[b] = False
            others = np.flatnonzero(active)
            merged = (weight[a] * dist[a, others] + weight[b] * dist[b, others]) / (weight[a] + weight[b])
            dist[new, others] = dist[others, new] = merged
            active[new] = True
            weight[new] = weight[a] + weight[b]
            nodes.append(tuple(sorted(nodes[a] + nodes[b])))
            children.append((a, b))
            merge_distances.append(float(dist[a, b]))
    tree = LinkageTree(pop.task_id, nodes, children, merge_distances)
    logger.debug("Linkage tree for task %d over %d rows:\n%s", pop.task_id, rows.shape[0], tree.dump())
    return tree


def task_population(pop, task):
    """Decoded genes of the members whose skill factor is `task`, or of the whole population if there are none."""
    selected = [ind for ind in pop.members if ind.skill_factor == task.task_id]
    if not selected:
        logger.debug("No member is skilled on task %d; learning its linkage from the whole population",
                     task.task_id)
        selected = pop.members
    return TaskPopulation(task.task_id, np.array([task.decode(ind.genotype) for ind in selected]))


def build_all_trees(pop, tasks=None):
    return [build_tree(task_population(pop, task)) for task in (tasks if tasks is not None else pop.tasks)]
