#!/usr/bin/env python3
# this_file: src/degreewidth/digraph.py
"""Graph data model: digraphs, undirected graphs, orderings and arc sets.

Vertices are dense integers ``0..n-1``. Adjacency is kept as one integer
bitmask per vertex, which gives O(1) arc membership and cheap set algebra
for the subset dynamic programmes built on top of this module. All types are
frozen; every operation returns a new value.
"""

from __future__ import annotations

import heapq
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

from .errors import GraphError, InvalidInstanceError

if TYPE_CHECKING:
    import networkx as nx

Arc = tuple[int, int]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    """Return the bitmask holding vertices ``0..n-1``."""
    return (1 << n) - 1


@dataclass(frozen=True)
class Digraph:
    """Simple digraph: no loops, at most one arc per ordered pair.

    Digons (both ``(u, v)`` and ``(v, u)``) are allowed.
    """

    n: int
    arcs: frozenset[Arc]
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        out = [0] * self.n
        inn = [0] * self.n
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"endpoint out of range in arc ({u}, {v})")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        """Return whether ``(u, v)`` is an arc."""
        return bool(self.out_masks[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.in_masks[v]))

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def to_networkx(self) -> nx.DiGraph:
        """Return an equivalent :class:`networkx.DiGraph`."""
        import networkx as nx

        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_arcs())
        return graph


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset[Arc]
    adj_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        normalized = frozenset((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", normalized)
        adj = [0] * self.n
        for u, v in normalized:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"endpoint out of range in edge {{{u}, {v}}}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "adj_masks", tuple(adj))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj_masks[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj_masks[v]))

    def degree(self, v: int) -> int:
        return self.adj_masks[v].bit_count()

    def sorted_edges(self) -> list[Arc]:
        return sorted(self.edges)

    def to_networkx(self) -> nx.Graph:
        """Return an equivalent :class:`networkx.Graph`."""
        import networkx as nx

        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges())
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> UndirectedGraph:
        """Build from a networkx graph, relabelling nodes ``0..n-1`` in sorted order."""
        import networkx as nx

        relabelled = nx.convert_node_labels_to_integers(graph, ordering="sorted")
        return make_graph(relabelled.number_of_nodes(), list(relabelled.edges()))


@dataclass(frozen=True)
class Ordering:
    """A total order of ``0..n-1`` given as a permutation."""

    perm: tuple[int, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        n = len(perm)
        position = [-1] * n
        for index, vertex in enumerate(perm):
            if not 0 <= vertex < n or position[vertex] != -1:
                raise GraphError(f"ordering is not a permutation of 0..{n - 1}: {list(perm)}")
            position[vertex] = index
        object.__setattr__(self, "position", tuple(position))

    @classmethod
    def identity(cls, n: int) -> Ordering:
        return cls(tuple(range(n)))

    @classmethod
    def from_positions(cls, position: Sequence[int]) -> Ordering:
        """Build an ordering from its inverse map ``vertex -> index``."""
        perm = [-1] * len(position)
        for vertex, index in enumerate(position):
            if not 0 <= index < len(position) or perm[index] != -1:
                raise GraphError("positions are not a permutation")
            perm[index] = vertex
        return cls(tuple(perm))

    def reversed(self) -> Ordering:
        """Return the opposite ordering (``v`` before ``w`` iff ``w`` before ``v`` here)."""
        return Ordering(tuple(reversed(self.perm)))

    def precedes(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def __len__(self) -> int:
        return len(self.perm)

    def __iter__(self) -> Iterator[int]:
        return iter(self.perm)

    def to_list(self) -> list[int]:
        return list(self.perm)


@dataclass(frozen=True)
class ArcSet:
    """A set of arcs, read as a candidate feedback arc set of some host."""

    arcs: frozenset[Arc] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))

    @classmethod
    def of(cls, arcs: Iterable[Arc]) -> ArcSet:
        return cls(frozenset((int(u), int(v)) for u, v in arcs))

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.sorted())

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs

    def sorted(self) -> list[Arc]:
        return sorted(self.arcs)


class DegreeStats(NamedTuple):
    """Per-vertex degree statistics."""

    out_deg: int
    in_deg: int
    d_max: int
    d_min: int
    dig: int


def make_digraph(n: int, arcs: Iterable[Arc]) -> Digraph:
    """Validate ``arcs`` and build a :class:`Digraph`.

    Args:
        n: Number of vertices.
        arcs: Ordered pairs; duplicates are rejected rather than merged.

    Returns:
        Digraph: The validated digraph.

    Raises:
        GraphError: On a loop, a duplicate arc or an endpoint outside ``0..n-1``.
    """
    seen: set[Arc] = set()
    for u, v in arcs:
        arc = (int(u), int(v))
        if arc in seen:
            raise GraphError(f"duplicate arc ({arc[0]}, {arc[1]})")
        seen.add(arc)
    return Digraph(n, frozenset(seen))


def make_graph(n: int, edges: Iterable[Arc]) -> UndirectedGraph:
    """Validate ``edges`` and build an :class:`UndirectedGraph`.

    Raises:
        GraphError: On a loop, a repeated edge or an endpoint out of range.
    """
    seen: set[Arc] = set()
    for u, v in edges:
        edge = (min(int(u), int(v)), max(int(u), int(v)))
        if edge in seen:
            raise GraphError(f"duplicate edge {{{edge[0]}, {edge[1]}}}")
        seen.add(edge)
    return UndirectedGraph(n, frozenset(seen))


def _check_ordering(d: Digraph, order: Ordering) -> None:
    if len(order) != d.n:
        raise GraphError(f"ordering has {len(order)} vertices, digraph has {d.n}")


def backward_arcs(d: Digraph, order: Ordering) -> ArcSet:
    """Return the arcs ``(u, v)`` with ``v`` placed before ``u``."""
    _check_ordering(d, order)
    pos = order.position
    return ArcSet(frozenset((u, v) for u, v in d.arcs if pos[v] < pos[u]))


def backedge_graph(d: Digraph, order: Ordering) -> UndirectedGraph:
    """Return the backedge graph of ``d`` under ``order``.

    A digon always contributes exactly one edge, whatever the ordering.

    Raises:
        GraphError: If ``order`` does not cover exactly the vertices of ``d``.
    """
    return UndirectedGraph(d.n, backward_arcs(d, order).arcs)


def reverse(d: Digraph) -> Digraph:
    """Reverse the direction of every arc."""
    return Digraph(d.n, frozenset((v, u) for u, v in d.arcs))


def subdivide(d: Digraph) -> Digraph:
    """Return the 1-subdivision of ``d``.

    Arc number ``i`` in sorted order ``(x, y)`` becomes ``(x, n+i)`` and
    ``(n+i, y)``.
    """
    arcs: list[Arc] = []
    for index, (x, y) in enumerate(d.sorted_arcs()):
        middle = d.n + index
        arcs.append((x, middle))
        arcs.append((middle, y))
    return Digraph(d.n + d.num_arcs, frozenset(arcs))


def symmetric_closure(g: UndirectedGraph) -> Digraph:
    """Replace every edge of ``g`` by a digon."""
    arcs = {(u, v) for u, v in g.edges} | {(v, u) for u, v in g.edges}
    return Digraph(g.n, frozenset(arcs))


def underlying_graph(d: Digraph) -> UndirectedGraph:
    """Forget orientations; a digon becomes a single edge."""
    return UndirectedGraph(d.n, d.arcs)


def degree_stats(d: Digraph, v: int) -> DegreeStats:
    """Return ``(out_deg, in_deg, d_max, d_min, dig)`` for vertex ``v``.

    Raises:
        GraphError: If ``v`` is not a vertex of ``d``.
    """
    if not 0 <= v < d.n:
        raise GraphError(f"vertex {v} out of range 0..{d.n - 1}")
    out_deg = d.out_degree(v)
    in_deg = d.in_degree(v)
    dig = (d.out_masks[v] & d.in_masks[v]).bit_count()
    return DegreeStats(out_deg, in_deg, max(out_deg, in_deg), min(out_deg, in_deg), dig)


def delta_max(d: Digraph) -> int:
    """Maximum over vertices of ``max(d+, d-)``; 0 for the empty digraph."""
    return max((degree_stats(d, v).d_max for v in d.vertices), default=0)


def delta_min(d: Digraph) -> int:
    """Maximum over vertices of ``min(d+, d-)``; 0 for the empty digraph."""
    return max((degree_stats(d, v).d_min for v in d.vertices), default=0)


def _topological_sequence(
    d: Digraph,
    alive: int | None = None,
    removed: frozenset[Arc] = frozenset(),
) -> list[int] | None:
    """Kahn's algorithm restricted to ``alive`` vertices and ``d - removed``.

    Always pops the smallest available vertex, so the result is the
    lexicographically smallest topological order. Returns ``None`` on a cycle.
    """
    if alive is None:
        alive = full_mask(d.n)
    successors: dict[int, list[int]] = {}
    indegree: dict[int, int] = {}
    for v in iter_bits(alive):
        indegree.setdefault(v, 0)
        succ = [w for w in iter_bits(d.out_masks[v] & alive) if (v, w) not in removed]
        successors[v] = succ
        for w in succ:
            indegree[w] = indegree.get(w, 0) + 1
    heap = [v for v, deg in indegree.items() if deg == 0]
    heapq.heapify(heap)
    sequence: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        sequence.append(v)
        for w in successors[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, w)
    if len(sequence) != len(indegree):
        return None
    return sequence


def is_acyclic(d: Digraph) -> bool:
    """Return whether ``d`` has no directed cycle."""
    return _topological_sequence(d) is not None


def induced_acyclic(d: Digraph, mask: int) -> bool:
    """Return whether the subdigraph induced by vertex bitmask ``mask`` is acyclic."""
    return _topological_sequence(d, alive=mask) is not None


def topological_order(d: Digraph) -> Ordering:
    """Return the lexicographically smallest topological ordering.

    Raises:
        InvalidInstanceError: If ``d`` contains a directed cycle.
    """
    sequence = _topological_sequence(d)
    if sequence is None:
        raise InvalidInstanceError("digraph has a directed cycle; no topological order")
    return Ordering(tuple(sequence))


def _check_arcset(d: Digraph, arcs: ArcSet) -> None:
    missing = arcs.arcs - d.arcs
    if missing:
        u, v = min(missing)
        raise GraphError(f"arc ({u}, {v}) is not in the host digraph")


def graph_of_arcset(d: Digraph, arcs: ArcSet) -> UndirectedGraph:
    """Return ``D[F]``: vertices of ``d``, one edge per arc of ``F`` (orientation dropped).

    Raises:
        GraphError: If some arc of ``arcs`` is not an arc of ``d``.
    """
    _check_arcset(d, arcs)
    return UndirectedGraph(d.n, arcs.arcs)


def is_fas(d: Digraph, arcs: ArcSet) -> bool:
    """Return whether ``d - arcs`` is acyclic."""
    return _topological_sequence(d, removed=arcs.arcs) is not None


def is_bipartite(g: UndirectedGraph) -> bool:
    """Return whether ``g`` is two-colourable."""
    import networkx as nx

    return nx.is_bipartite(g.to_networkx())


def degeneracy(g: UndirectedGraph) -> int:
    """Largest core number of ``g``; 0 for the empty graph."""
    import networkx as nx

    return max(nx.core_number(g.to_networkx()).values(), default=0)


def is_oriented(d: Digraph) -> bool:
    """At most one arc between each pair of vertices."""
    return all(not (d.out_masks[v] & d.in_masks[v]) for v in d.vertices)


def is_semicomplete(d: Digraph) -> bool:
    """At least one arc between each pair of vertices."""
    everyone = full_mask(d.n)
    return all((d.out_masks[v] | d.in_masks[v] | 1 << v) == everyone for v in d.vertices)


def is_tournament(d: Digraph) -> bool:
    """Exactly one arc between each pair of vertices."""
    return is_oriented(d) and is_semicomplete(d)


def is_symmetric(d: Digraph) -> bool:
    """Every arc lies in a digon."""
    return d.out_masks == d.in_masks


def is_k_regular(d: Digraph, k: int) -> bool:
    """Every vertex has in-degree and out-degree ``k``."""
    return all(d.out_degree(v) == k and d.in_degree(v) == k for v in d.vertices)


def ordering_from_fas(d: Digraph, arcs: ArcSet) -> Ordering:
    """Topological order of ``d - arcs``; its backedges all lie in ``arcs``.

    Raises:
        InvalidInstanceError: If ``arcs`` is not a feedback arc set of ``d``.
    """
    _check_arcset(d, arcs)
    sequence = _topological_sequence(d, removed=arcs.arcs)
    if sequence is None:
        raise InvalidInstanceError("arc set is not a feedback arc set")
    return Ordering(tuple(sequence))


def ordering_from_vertex_set(d: Digraph, vertices: Iterable[int]) -> Ordering:
    """Place ``vertices`` first, then a topological order of the rest.

    Every backedge then has an endpoint in ``vertices``.

    Raises:
        InvalidInstanceError: If removing ``vertices`` leaves a cycle.
    """
    chosen = sorted(set(vertices))
    mask = 0
    for v in chosen:
        if not 0 <= v < d.n:
            raise GraphError(f"vertex {v} out of range 0..{d.n - 1}")
        mask |= 1 << v
    rest = _topological_sequence(d, alive=full_mask(d.n) & ~mask)
    if rest is None:
        raise InvalidInstanceError("vertex set is not a feedback vertex set")
    return Ordering(tuple(chosen + rest))


def ordering_from_dicolouring(d: Digraph, parts: Sequence[Iterable[int]]) -> Ordering:
    """Concatenate the colour classes, each in topological order.

    Each class is then a stable set of the backedge graph.

    Raises:
        InvalidInstanceError: If the classes do not partition the vertices
            or one of them induces a cycle.
    """
    sequence: list[int] = []
    for part in parts:
        mask = 0
        for v in part:
            mask |= 1 << v
        ordered = _topological_sequence(d, alive=mask)
        if ordered is None:
            raise InvalidInstanceError(f"colour class {sorted(part)} induces a directed cycle")
        sequence.extend(ordered)
    if sorted(sequence) != list(range(d.n)):
        raise InvalidInstanceError("colour classes do not partition the vertex set")
    return Ordering(tuple(sequence))


def shortest_directed_cycle(
    d: Digraph,
    removed: frozenset[Arc] = frozenset(),
    alive: int | None = None,
) -> list[int] | None:
    """Return a shortest directed cycle of ``d[alive] - removed`` as a vertex list.

    Ties go to the cycle found from the smallest start vertex. Returns
    ``None`` when the remaining digraph is acyclic.
    """
    if alive is None:
        alive = full_mask(d.n)
    best: list[int] | None = None
    for start in iter_bits(alive):
        parent = {start: -1}
        depth = {start: 0}
        queue = deque([start])
        found: int | None = None
        while queue and found is None:
            v = queue.popleft()
            if best is not None and depth[v] + 1 >= len(best):
                break
            for w in iter_bits(d.out_masks[v] & alive):
                if (v, w) in removed:
                    continue
                if w == start:
                    found = v
                    break
                if w not in parent:
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
        if found is None:
            continue
        cycle = []
        v = found
        while v != -1:
            cycle.append(v)
            v = parent[v]
        cycle.reverse()
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def cycle_arcs(cycle: Sequence[int]) -> list[Arc]:
    """Return the arcs of a cycle given as a vertex sequence."""
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]
