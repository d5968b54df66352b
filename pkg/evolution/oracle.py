"""
Exhaustive oracles for small instances, used to pin golden values and to check the engine against true optima.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from evolution import cluspt
from evolution.exceptions import InstanceTooLargeError

logger = logging.getLogger(__name__)

MAX_DTF_LENGTH = 22
MAX_CLUSPT_VERTICES = 9
CHUNK_SIZE = 1 << 16
TOLERANCE = 1e-9


@dataclass(frozen=True)
class OracleResult:
    optimum_cost: float
    optimum_count: int
    enumerated: int
    # One optimal solution: a bit tuple for DTF, a parent tuple for CluSPT
    witness: Optional[Tuple] = None


def exhaustive_dtf(spec):
    """Enumerate all 2^(m*k) strings of a trap instance, counting the strings of minimum cost."""
    length = spec.length
    if length > MAX_DTF_LENGTH:
        raise InstanceTooLargeError(f"{spec.label} has {length} bits; enumeration stops at {MAX_DTF_LENGTH}")
    block_mask = (1 << spec.k) - 1
    ones = np.array([bin(code).count('1') for code in range(1 << spec.k)])
    block_score = np.where(ones == spec.k, spec.k, spec.k - 1 - ones)
    total = 1 << length
    best, count, witness = None, 0, None
    for start in range(0, total, CHUNK_SIZE):
        codes = np.arange(start, min(total, start + CHUNK_SIZE), dtype=np.int64)
        value = np.zeros(codes.size, dtype=np.int64)
        for block in range(spec.m):
            value += block_score[(codes >> (block * spec.k)) & block_mask]
        cost = length - value
        low = int(cost.min())
        hits = int((cost == low).sum())
        if best is None or low < best:
            best, count = low, hits
            witness = int(codes[int(np.argmin(cost))])
        elif low == best:
            count += hits
    # Bit i of the code is gene i
    bits = tuple((witness >> i) & 1 for i in range(length))
    return OracleResult(float(best), count, total, bits)


def _spanning_trees(nodes, edges):
    """
    Yield every spanning tree of the multigraph (nodes, edges) as a tuple of edges.

    Edges are tuples whose first two entries are the endpoints; further entries are carried along untouched. Each
    tree is produced once, as its edges in input order.
    """
    nodes = list(nodes)
    needed = len(nodes) - 1
    if needed == 0:
        yield ()
        return
    index = {node: i for i, node in enumerate(nodes)}

    def extend(start, chosen, component):
        if len(chosen) == needed:
            yield tuple(chosen)
            return
        if len(edges) - start < needed - len(chosen):
            return
        for position in range(start, len(edges)):
            a = component[index[edges[position][0]]]
            b = component[index[edges[position][1]]]
            if a == b:
                continue
            chosen.append(edges[position])
            yield from extend(position + 1, chosen, [a if c == b else c for c in component])
            chosen.pop()

    yield from extend(0, [], list(range(len(nodes))))


def exhaustive_cluspt(g):
    """
    Enumerate every cluster-feasible spanning tree of `g`: a spanning tree of each cluster combined with a set of
    inter-cluster edges that joins the clusters into a tree.
    """
    if g.n > MAX_CLUSPT_VERTICES:
        raise InstanceTooLargeError(f"{g} has {g.n} vertices; enumeration stops at {MAX_CLUSPT_VERTICES}")
    inner = []
    for members in g.clusters:
        member_set = set(members)
        inner.append(list(_spanning_trees(
            members, [(u, v) for u, v, _ in g.edges if u in member_set and v in member_set])))
    crossing = [(g.cluster_of[u], g.cluster_of[v], (u, v)) for u, v, _ in g.edges
                if g.cluster_of[u] != g.cluster_of[v]]
    outer = [tuple(edge for _, _, edge in tree) for tree in _spanning_trees(range(g.cluster_count), crossing)]
    best, count, witness, enumerated = None, 0, None, 0
    for parts in itertools.product(*inner, outer):
        enumerated += 1
        solution = cluspt.orient_tree(g, list(itertools.chain.from_iterable(parts)))
        cost = solution.objective
        if best is None or cost < best - TOLERANCE:
            best, count, witness = cost, 1, solution.parent
        elif abs(cost - best) <= TOLERANCE:
            count += 1
    logger.debug("Enumerated %d cluster-feasible trees of %s, optimum %g (%d optimal)", enumerated, g, best, count)
    return OracleResult(best, count, enumerated, witness)
