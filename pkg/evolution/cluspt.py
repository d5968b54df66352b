"""
Clustered Shortest-Path Tree problem (CluSPT).

Given a connected weighted graph whose vertices are partitioned into clusters and a source vertex s, find a spanning
tree T in which every cluster induces a connected subtree, minimizing the sum over all vertices of the tree path
length from s.

Instances are read from and written to a TSPLIB-flavored text format:

    NAME: six3
    DIMENSION: 6
    CLUSTERS: 3
    SOURCE: 1
    EDGE_WEIGHT_TYPE: EXPLICIT
    OPTIMUM: 21
    EDGE_SECTION
    1 2 1
    ...
    CLUSTER_SECTION
    1 1 2 -1
    ...
    EOF

With `EDGE_WEIGHT_TYPE: EUC_2D` a `NODE_COORD_SECTION` of `id x y` lines replaces the edge section and the graph is
complete with weights rounded to the nearest integer. Vertex ids are 1-based in files and 0-based in memory.
"""
import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from evolution.exceptions import InstanceFormatError

logger = logging.getLogger(__name__)

EXPLICIT = 'EXPLICIT'
EUC_2D = 'EUC_2D'
WEIGHT_TYPES = (EXPLICIT, EUC_2D)
SECTIONS = ('NODE_COORD_SECTION', 'EDGE_SECTION', 'CLUSTER_SECTION')
REQUIRED_HEADERS = ('DIMENSION', 'CLUSTERS', 'SOURCE', 'EDGE_WEIGHT_TYPE')


def euclidean_weight(a, b):
    """TSPLIB EUC_2D distance: Euclidean distance rounded to the nearest integer."""
    return float(int(math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) + 0.5))


@dataclass
class ClusteredGraph:
    n: int
    adjacency: List[Dict[int, float]]
    clusters: List[Tuple[int, ...]]
    source: int
    name: str = ''
    # Cluster ids as written in the instance file, parallel to `clusters`
    cluster_labels: List[int] = field(default_factory=list)
    coordinates: Optional[List[Tuple[float, float]]] = None
    known_optimum: Optional[float] = None

    def __post_init__(self):
        if not self.cluster_labels:
            self.cluster_labels = list(range(1, len(self.clusters) + 1))
        self.cluster_of = [None] * self.n
        for index, members in enumerate(self.clusters):
            for vertex in members:
                self.cluster_of[vertex] = index

    @classmethod
    def from_edges(cls, n, edges, clusters, source=0, **kwargs):
        """Build and validate a graph from 0-based `(u, v, w)` edges and 0-based cluster member lists."""
        adjacency = [{} for _ in range(n)]
        for u, v, w in edges:
            adjacency[u][v] = adjacency[v][u] = float(w)
        graph = cls(n, adjacency, [tuple(sorted(c)) for c in clusters], source, **kwargs)
        check_graph(graph)
        return graph

    @classmethod
    def from_coordinates(cls, coordinates, clusters, source=0, **kwargs):
        n = len(coordinates)
        edges = [(u, v, euclidean_weight(coordinates[u], coordinates[v]))
                 for u in range(n) for v in range(u + 1, n)]
        return cls.from_edges(n, edges, clusters, source, coordinates=[tuple(c) for c in coordinates], **kwargs)

    @property
    def cluster_count(self):
        return len(self.clusters)

    @property
    def edges(self):
        return [(u, v, w) for u in range(self.n) for v, w in sorted(self.adjacency[u].items()) if u < v]

    def has_edge(self, u, v):
        return v in self.adjacency[u]

    def weight(self, u, v):
        return self.adjacency[u][v]

    @cached_property
    def super_edges(self):
        """
        For each pair of adjacent clusters (i < j), the lightest edge between them as (w, u, v) with u < v.

        Ties go to the edge with the lower endpoint ids.
        """
        best = {}
        for u, v, w in self.edges:
            i, j = self.cluster_of[u], self.cluster_of[v]
            if i == j:
                continue
            key = (min(i, j), max(i, j))
            candidate = (w, u, v)
            if key not in best or candidate < best[key]:
                best[key] = candidate
        return best

    def __str__(self):
        return self.name or f'cluspt(n={self.n}, K={self.cluster_count})'


@dataclass(frozen=True)
class TreeSolution:
    parent: Tuple[Optional[int], ...]
    dist: Tuple[float, ...]
    objective: float

    @property
    def edges(self):
        return [(p, v) for v, p in enumerate(self.parent) if p is not None]


def _connected(vertices, neighbours):
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in neighbours(u):
            if v in vertices and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(vertices)


def check_graph(graph, lines=None):
    """Raise InstanceFormatError unless `graph` satisfies the instance invariants."""
    lines = lines or {}
    cluster_lines = lines.get('clusters', [None] * graph.cluster_count)
    if not 0 <= graph.source < graph.n:
        raise InstanceFormatError(f"source vertex {graph.source + 1} is outside 1..{graph.n}", lines.get('SOURCE'))
    seen = {}
    for index, members in enumerate(graph.clusters):
        if not members:
            raise InstanceFormatError(f"cluster {graph.cluster_labels[index]} is empty", cluster_lines[index])
        for vertex in members:
            if not 0 <= vertex < graph.n:
                raise InstanceFormatError(f"vertex {vertex + 1} is outside 1..{graph.n}", cluster_lines[index])
            if vertex in seen:
                raise InstanceFormatError(
                    f"not a partition: vertex {vertex + 1} appears in clusters "
                    f"{graph.cluster_labels[seen[vertex]]} and {graph.cluster_labels[index]}", cluster_lines[index])
            seen[vertex] = index
    missing = [v + 1 for v in range(graph.n) if v not in seen]
    if missing:
        raise InstanceFormatError(f"not a partition: vertices {missing} belong to no cluster",
                                  lines.get('CLUSTER_SECTION'))
    for u in range(graph.n):
        for v, w in graph.adjacency[u].items():
            if w < 0:
                raise InstanceFormatError(f"edge ({u + 1}, {v + 1}) has negative weight {w}", lines.get('edges'))
    if not _connected(range(graph.n), lambda u: graph.adjacency[u]):
        raise InstanceFormatError("graph is not connected", lines.get('edges'))
    for index, members in enumerate(graph.clusters):
        if not _connected(members, lambda u: graph.adjacency[u]):
            raise InstanceFormatError(f"cluster {graph.cluster_labels[index]} induces a disconnected subgraph",
                                      cluster_lines[index])


def _number(text, cast, lineno, what):
    try:
        return cast(text)
    except ValueError:
        raise InstanceFormatError(f"{what} must be a number, got {text!r}", lineno) from None


def parse_instance(text):
    headers = {}
    section = None
    lines = {'clusters': []}
    coordinates = {}
    edges = []
    clusters = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line == 'EOF':
            break
        if line in SECTIONS:
            section = line
            lines[line] = lineno
            continue
        if section is None:
            key, sep, value = line.partition(':')
            if not sep:
                raise InstanceFormatError(f"expected 'KEY: value', got {line!r}", lineno)
            headers[key.strip().upper()] = (value.strip(), lineno)
            continue
        fields = line.split()
        if section == 'NODE_COORD_SECTION':
            if len(fields) != 3:
                raise InstanceFormatError(f"expected 'id x y', got {line!r}", lineno)
            vertex = _number(fields[0], int, lineno, 'vertex id')
            if vertex in coordinates:
                raise InstanceFormatError(f"vertex {vertex} has two coordinate lines", lineno)
            coordinates[vertex] = (_number(fields[1], float, lineno, 'x'), _number(fields[2], float, lineno, 'y'))
            lines.setdefault('coordinates', {})[vertex] = lineno
        elif section == 'EDGE_SECTION':
            if len(fields) != 3:
                raise InstanceFormatError(f"expected 'u v w', got {line!r}", lineno)
            u = _number(fields[0], int, lineno, 'vertex id')
            v = _number(fields[1], int, lineno, 'vertex id')
            edges.append((u, v, _number(fields[2], float, lineno, 'edge weight'), lineno))
        else:
            ids = [_number(f, int, lineno, 'cluster entry') for f in fields]
            if ids[-1] == -1:
                ids = ids[:-1]
            if len(ids) < 2:
                raise InstanceFormatError("a cluster line needs an id and at least one vertex", lineno)
            clusters.append((ids[0], ids[1:], lineno))
            lines['clusters'].append(lineno)

    for key in REQUIRED_HEADERS:
        if key not in headers:
            raise InstanceFormatError(f"missing {key} header")
    n = _number(headers['DIMENSION'][0], int, headers['DIMENSION'][1], 'DIMENSION')
    if n < 1:
        raise InstanceFormatError("DIMENSION must be at least 1", headers['DIMENSION'][1])
    cluster_count = _number(headers['CLUSTERS'][0], int, headers['CLUSTERS'][1], 'CLUSTERS')
    if cluster_count != len(clusters):
        raise InstanceFormatError(f"CLUSTERS says {cluster_count} but {len(clusters)} cluster lines follow",
                                  headers['CLUSTERS'][1])
    weight_type, weight_line = headers['EDGE_WEIGHT_TYPE']
    if weight_type not in WEIGHT_TYPES:
        raise InstanceFormatError(f"EDGE_WEIGHT_TYPE must be one of {', '.join(WEIGHT_TYPES)}", weight_line)
    source, source_line = headers['SOURCE']
    source = _number(source, int, source_line, 'SOURCE')
    lines['SOURCE'] = source_line
    if not 1 <= source <= n:
        raise InstanceFormatError(f"source vertex {source} is outside 1..{n}", source_line)
    known_optimum = None
    if 'OPTIMUM' in headers:
        known_optimum = _number(headers['OPTIMUM'][0], float, headers['OPTIMUM'][1], 'OPTIMUM')
    for label, members, lineno in clusters:
        for vertex in members:
            if not 1 <= vertex <= n:
                raise InstanceFormatError(f"vertex {vertex} is outside 1..{n}", lineno)

    adjacency = [{} for _ in range(n)]
    point_list = None
    if weight_type == EUC_2D:
        if 'NODE_COORD_SECTION' not in lines:
            raise InstanceFormatError("EUC_2D instances need a NODE_COORD_SECTION")
        for vertex, lineno in lines.get('coordinates', {}).items():
            if not 1 <= vertex <= n:
                raise InstanceFormatError(f"vertex {vertex} is outside 1..{n}", lineno)
        missing = [v for v in range(1, n + 1) if v not in coordinates]
        if missing:
            raise InstanceFormatError(f"vertices {missing} have no coordinates", lines['NODE_COORD_SECTION'])
        point_list = [coordinates[v] for v in range(1, n + 1)]
        for u in range(n):
            for v in range(u + 1, n):
                adjacency[u][v] = adjacency[v][u] = euclidean_weight(point_list[u], point_list[v])
    else:
        if 'EDGE_SECTION' not in lines:
            raise InstanceFormatError("EXPLICIT instances need an EDGE_SECTION")
        lines['edges'] = lines['EDGE_SECTION']
        for u, v, w, lineno in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise InstanceFormatError(f"edge ({u}, {v}) has an endpoint outside 1..{n}", lineno)
            if u == v:
                raise InstanceFormatError(f"self-loop on vertex {u}", lineno)
            if w < 0:
                raise InstanceFormatError(f"edge ({u}, {v}) has negative weight {w:g}", lineno)
            if v - 1 in adjacency[u - 1]:
                raise InstanceFormatError(f"edge ({u}, {v}) is listed twice", lineno)
            adjacency[u - 1][v - 1] = adjacency[v - 1][u - 1] = w
    lines.setdefault('edges', lines.get('NODE_COORD_SECTION'))

    graph = ClusteredGraph(
        n=n,
        adjacency=adjacency,
        clusters=[tuple(sorted(v - 1 for v in members)) for _, members, _ in clusters],
        source=source - 1,
        name=headers.get('NAME', ('', None))[0],
        cluster_labels=[label for label, _, _ in clusters],
        coordinates=point_list,
        known_optimum=known_optimum,
    )
    # Duplicate vertices collapse in the sorted tuple, so partition checks run against the raw lists
    for index, (label, members, lineno) in enumerate(clusters):
        if len(set(members)) != len(members):
            raise InstanceFormatError(f"cluster {label} lists a vertex twice", lineno)
    check_graph(graph, lines)
    return graph


def load_instance(path):
    path = Path(path)
    graph = parse_instance(path.read_text())
    if not graph.name:
        graph.name = path.stem
    return graph


def _format_number(value):
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def format_instance(graph):
    """Serialize `graph` in the instance text format; EUC_2D when coordinates are known, EXPLICIT otherwise."""
    lines = []
    if graph.name:
        lines.append(f'NAME: {graph.name}')
    lines += [
        f'DIMENSION: {graph.n}',
        f'CLUSTERS: {graph.cluster_count}',
        f'SOURCE: {graph.source + 1}',
        f'EDGE_WEIGHT_TYPE: {EUC_2D if graph.coordinates else EXPLICIT}',
    ]
    if graph.known_optimum is not None:
        lines.append(f'OPTIMUM: {_format_number(graph.known_optimum)}')
    if graph.coordinates:
        lines.append('NODE_COORD_SECTION')
        lines += [f'{v + 1} {_format_number(x)} {_format_number(y)}' for v, (x, y) in enumerate(graph.coordinates)]
    else:
        lines.append('EDGE_SECTION')
        lines += [f'{u + 1} {v + 1} {_format_number(w)}' for u, v, w in graph.edges]
    lines.append('CLUSTER_SECTION')
    for label, members in zip(graph.cluster_labels, graph.clusters):
        lines.append(' '.join(str(x) for x in [label, *(v + 1 for v in members), -1]))
    lines.append('EOF')
    return '\n'.join(lines) + '\n'


def generate_instance(n, cluster_count, seed, *, name=None, spread=60.0, extent=1000.0):
    """
    Random clustered Euclidean instance: cluster centres uniform in the square [0, extent]^2, vertices scattered
    normally around their centre and dealt to clusters in turn. Vertex 1 is the source.
    """
    if cluster_count < 1 or n < cluster_count:
        raise ValueError(f"Need 1 <= clusters <= vertices, got {cluster_count} clusters for {n} vertices")
    rng = np.random.default_rng(seed)
    centres = rng.uniform(0.0, extent, size=(cluster_count, 2))
    members = [[] for _ in range(cluster_count)]
    coordinates = []
    for vertex in range(n):
        cluster = vertex % cluster_count
        members[cluster].append(vertex)
        x, y = np.round(centres[cluster] + rng.normal(0.0, spread, size=2), 1)
        coordinates.append((float(x), float(y)))
    return ClusteredGraph.from_coordinates(coordinates, members, source=0,
                                           name=name or f'{n}rand{cluster_count}-s{seed}')


def _priority_tree(start, size, neighbours, priority):
    """
    Grow a spanning tree over `size` nodes from `start`, always adding the frontier node with the highest priority
    (ties: lower node id, then lighter edge, then lower tree-side node id). Returns the edges as (inside, outside).
    """
    inside = {start}
    frontier = []

    def expand(u):
        for v, w in neighbours(u):
            if v not in inside:
                heapq.heappush(frontier, (-priority(v), v, w, u))

    expand(start)
    edges = []
    while frontier and len(inside) < size:
        _, v, _, u = heapq.heappop(frontier)
        if v in inside:
            continue
        inside.add(v)
        edges.append((u, v))
        expand(v)
    return edges


def orient_tree(graph, edges):
    tree = [[] for _ in range(graph.n)]
    for u, v in edges:
        tree[u].append(v)
        tree[v].append(u)
    parent = [None] * graph.n
    dist = [0.0] * graph.n
    seen = [False] * graph.n
    seen[graph.source] = True
    queue = deque([graph.source])
    while queue:
        u = queue.popleft()
        for v in sorted(tree[u]):
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                dist[v] = dist[u] + graph.weight(u, v)
                queue.append(v)
    return TreeSolution(tuple(parent), tuple(dist), float(sum(dist)))


def decode(g, genotype):
    """
    Turn a priority genotype into a cluster-feasible spanning tree rooted at the source.

    Each cluster is spanned first, starting from the source in its own cluster and from the highest-priority vertex
    elsewhere. The clusters are then joined by a priority-guided tree over the cluster graph, where a cluster's
    priority is that of its lowest-id vertex and each chosen cluster pair is realized by its lightest edge.
    """
    genes = np.asarray(genotype)
    if genes.size < g.n:
        raise ValueError(f"Genotype has {genes.size} genes but the graph has {g.n} vertices")
    priority = [int(p) for p in genes[:g.n]]
    edges = []
    for members in g.clusters:
        if g.source in members:
            start = g.source
        else:
            start = max(members, key=lambda v: (priority[v], -v))
        member_set = set(members)
        edges += _priority_tree(
            start, len(members),
            lambda u, member_set=member_set: ((v, w) for v, w in g.adjacency[u].items() if v in member_set),
            lambda v: priority[v])
    cluster_links = {}
    for (i, j), (w, _, _) in g.super_edges.items():
        cluster_links.setdefault(i, []).append((j, w))
        cluster_links.setdefault(j, []).append((i, w))
    for i, j in _priority_tree(g.cluster_of[g.source], g.cluster_count,
                               lambda i: cluster_links.get(i, ()),
                               lambda i: priority[g.clusters[i][0]]):
        _, u, v = g.super_edges[(min(i, j), max(i, j))]
        edges.append((u, v))
    return orient_tree(g, edges)


def objective(sol):
    return float(sum(sol.dist))


def validate(g, sol):
    """Return the list of violations of `sol` as a cluster-feasible spanning tree of `g`; empty means valid."""
    if len(sol.parent) != g.n:
        return [f"parent array has {len(sol.parent)} entries for {g.n} vertices"]
    violations = []
    if sol.parent[g.source] is not None:
        violations.append(f"source vertex {g.source + 1} has a parent")
    for v, p in enumerate(sol.parent):
        if v == g.source or p is None:
            continue
        if not 0 <= p < g.n or not g.has_edge(v, p):
            violations.append(f"edge ({p + 1 if isinstance(p, int) else p}, {v + 1}) is not in the graph")
    is_tree = True
    for v in range(g.n):
        steps, u = 0, v
        while u != g.source and u is not None and steps <= g.n:
            u = sol.parent[u] if 0 <= u < g.n else None
            steps += 1
        if u != g.source:
            is_tree = False
            break
    if not is_tree:
        violations.append("not a tree")
        return violations
    neighbours = [[] for _ in range(g.n)]
    for p, v in sol.edges:
        neighbours[p].append(v)
        neighbours[v].append(p)
    for label, members in zip(g.cluster_labels, g.clusters):
        if not _connected(members, lambda u: neighbours[u]):
            violations.append(f"cluster {label} induced subtree disconnected")
    if not violations:
        expected = orient_tree(g, sol.edges)
        for v in range(g.n):
            if len(sol.dist) != g.n or not math.isclose(sol.dist[v], expected.dist[v], abs_tol=1e-9):
                violations.append(f"distance of vertex {v + 1} disagrees with the tree")
                break
        if not math.isclose(sol.objective, expected.objective, abs_tol=1e-9):
            violations.append(f"objective {sol.objective:g} disagrees with the tree ({expected.objective:g})")
    return violations


@dataclass(frozen=True)
class ClusteredTreeObjective:
    """Picklable cost function over decoded genes: the objective of the decoded tree."""
    graph: ClusteredGraph

    def __call__(self, genes):
        return decode(self.graph, genes).objective
