"""Dense simple graphs, vertex holes and edge colorings.

Vertices are integers ``0..n-1``. Adjacency is kept as one Python int
bitmask per vertex, which keeps neighborhood set operations (union,
intersection, difference) single -instruction-ish and the whole structure
cache resident up to the 512-vertex cap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

MAX_VERTICES = 512


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def edge_key(u: int, v: int) -> tuple[int, int]:
    """Canonical unordered-pair key with u < v."""
    if u == v:
        raise ValueError(f"loop edge ({u},{v}) not allowed")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph with bitset adjacency."""

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            u, v = edge_key(u, v)
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u},{v}) outside vertex range 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)

    @classmethod
    def _from_masks(cls, n: int, masks: list[int]) -> "Graph":
        g = object.__new__(cls)
        g.n = n
        g._adj = tuple(masks)
        return g

    def adjacency_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> Iterator[int]:
        return _bits(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1) if u != v else False

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            m = self._adj[u] >> (u + 1) << (u + 1)
            for v in _bits(m):
                out.append((u, v))
        return out

    def vertices_mask(self) -> int:
        return (1 << self.n) - 1

    def with_edge(self, u: int, v: int) -> "Graph":
        u, v = edge_key(u, v)
        masks = list(self._adj)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        return Graph._from_masks(self.n, masks)

    def subgraph_on(self, vertices: Iterable[int] | int) -> "Graph":
        """Graph on the same vertex range keeping only edges inside ``vertices``."""
        keep = vertices if isinstance(vertices, int) else _mask_of(vertices)
        masks = [
            (self._adj[v] & keep) if (keep >> v & 1) else 0 for v in range(self.n)
        ]
        return Graph._from_masks(self.n, masks)

    def without_vertex(self, v: int) -> "Graph":
        return self.subgraph_on(self.vertices_mask() & ~(1 << v))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self._adj == other._adj
        )

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def complete_graph(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    full = (1 << n) - 1
    return Graph._from_masks(n, [full ^ (1 << v) for v in range(n)])


@dataclass(frozen=True)
class HoleSpec:
    """Vertex subsets whose internal edges are removed from a host graph.

    Holes may overlap; the forbidden edge set is the union over holes.
    """

    holes: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "holes", tuple(frozenset(h) for h in self.holes)
        )

    def validate(self, n: int) -> None:
        for h in self.holes:
            for v in h:
                if not 0 <= v < n:
                    raise ValueError(f"hole vertex {v} outside range 0..{n - 1}")

    def forbids(self, u: int, v: int) -> bool:
        return any(u in h and v in h for h in self.holes)

    def masks(self) -> list[int]:
        return [_mask_of(h) for h in self.holes]


def apply_holes_and_deletions(
    g: Graph, holespec: HoleSpec, deleted: Iterable[tuple[int, int]] = ()
) -> Graph:
    """Remove all hole-internal edges and the explicitly deleted edges from g."""
    holespec.validate(g.n)
    masks = list(g._adj)
    for hole in holespec.masks():
        for v in _bits(hole):
            masks[v] &= ~hole
    for u, v in deleted:
        u, v = edge_key(u, v)
        if v >= g.n:
            raise ValueError(f"deleted edge ({u},{v}) outside vertex range")
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
    return Graph._from_masks(g.n, masks)


@dataclass(frozen=True, eq=True)
class EdgeColoring:
    """Total coloring of the present edges of a complete host minus holes/deletions.

    ``colors`` maps every present pair (u<v) to a color in 1..k. A pair is
    present when it is not inside any hole and not in ``deleted``.
    """

    n: int
    k: int
    colors: dict = field(compare=True, hash=False)
    holes: HoleSpec = HoleSpec()
    deleted: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(
            edge_key(u, v) for (u, v) in self.deleted))
        self.validate()

    def validate(self) -> None:
        if self.k not in (2, 3):
            raise ValueError(f"color count {self.k} not in {{2,3}}")
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        self.holes.validate(self.n)
        hole_masks = self.holes.masks()
        seen = 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                inside_hole = any(
                    (h >> u & 1) and (h >> v & 1) for h in hole_masks
                )
                present = not inside_hole and (u, v) not in self.deleted
                c = self.colors.get((u, v))
                if present:
                    if c is None:
                        raise ValueError(f"present edge ({u},{v}) has no color")
                    if not 1 <= c <= self.k:
                        raise ValueError(f"edge ({u},{v}) color {c} outside 1..{self.k}")
                    seen += 1
                elif c is not None:
                    raise ValueError(f"absent edge ({u},{v}) carries color {c}")
        if seen != len(self.colors):
            raise ValueError("color map contains keys that are not canonical present pairs")

    def color_of(self, u: int, v: int) -> Optional[int]:
        return self.colors.get(edge_key(u, v))

    def host_graph(self) -> Graph:
        return Graph(self.n, self.colors.keys())

    def color_class(self, i: int) -> Graph:
        if not 1 <= i <= self.k:
            raise ValueError(f"color {i} outside 1..{self.k}")
        return Graph(self.n, (e for e, c in self.colors.items() if c == i))

    def recolored(self, edge: tuple[int, int], color: int) -> "EdgeColoring":
        e = edge_key(*edge)
        if e not in self.colors:
            raise ValueError(f"edge {e} is not present in the coloring")
        colors = dict(self.colors)
        colors[e] = color
        return EdgeColoring(self.n, self.k, colors, self.holes, self.deleted)


def color_class(coloring: EdgeColoring, i: int) -> Graph:
    return coloring.color_class(i)


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components as vertex sets, ordered by smallest member."""
    out = []
    unseen = g.vertices_mask()
    while unseen:
        start = unseen & -unseen
        comp = start
        frontier = start
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= g._adj[v]
            frontier = grow & ~comp
            comp |= frontier
        out.append(frozenset(_bits(comp)))
        unseen &= ~comp
    return out


def _two_color(g: Graph):
    """BFS 2-coloring. Returns (side_mask, None) or (None, odd_cycle_vertices)."""
    side = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    side_mask = 0
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        side_mask |= 1 << root
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            for w in g.neighbors(v):
                if side[w] == -1:
                    side[w] = side[v] ^ 1
                    if side[w] == 0:
                        side_mask |= 1 << w
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    queue.append(w)
                elif side[w] == side[v]:
                    # Same-side edge: walk both vertices up to their meeting
                    # point; the two branches plus edge (v,w) form an odd cycle.
                    a, b = v, w
                    pa, pb = [a], [b]
                    while depth[a] > depth[b]:
                        a = parent[a]
                        pa.append(a)
                    while depth[b] > depth[a]:
                        b = parent[b]
                        pb.append(b)
                    while a != b:
                        a = parent[a]
                        b = parent[b]
                        pa.append(a)
                        pb.append(b)
                    cycle = pa + pb[-2::-1]
                    return None, cycle
    return side_mask, None


def bipartition(g: Graph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """A global two-sided vertex split with no internal edges, if one exists."""
    side_mask, _ = _two_color(g)
    if side_mask is None:
        return None
    other = g.vertices_mask() & ~side_mask
    return frozenset(_bits(side_mask)), frozenset(_bits(other))


def odd_closed_walk(g: Graph) -> Optional[list[int]]:
    """A simple odd cycle witnessing non-bipartiteness, or None if bipartite."""
    _, cycle = _two_color(g)
    return cycle


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


@dataclass(frozen=True)
class DegreeStats:
    minimum: int
    maximum: int
    average: Fraction


def degree_stats(g: Graph) -> DegreeStats:
    degs = [g.degree(v) for v in range(g.n)]
    return DegreeStats(min(degs), max(degs), Fraction(2 * g.num_edges, g.n))


# ---------------------------------------------------------------------------
# File formats.  Graph: {n, edges:[[u,v]...]}.  Coloring: {n, k,
# holes:[[v...]...], deleted:[[u,v]...], edges:[[u,v,color]...]}, u < v.
# ---------------------------------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def graph_from_dict(data: dict) -> Graph:
    return Graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def dump_graph(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), sort_keys=True) + "\n"


def load_graph(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def coloring_to_dict(c: EdgeColoring) -> dict:
    return {
        "n": c.n,
        "k": c.k,
        "holes": [sorted(h) for h in c.holes.holes],
        "deleted": [[u, v] for u, v in sorted(c.deleted)],
        "edges": [[u, v, col] for (u, v), col in sorted(c.colors.items())],
    }


def coloring_from_dict(data: dict) -> EdgeColoring:
    colors = {}
    for u, v, col in data["edges"]:
        key = edge_key(u, v)
        if key in colors:
            raise ValueError(f"edge {key} listed twice")
        colors[key] = col
    return EdgeColoring(
        n=int(data["n"]),
        k=int(data["k"]),
        colors=colors,
        holes=HoleSpec(tuple(frozenset(h) for h in data.get("holes", []))),
        deleted=frozenset(tuple(e) for e in data.get("deleted", [])),
    )


def dump_coloring(c: EdgeColoring) -> str:
    return json.dumps(coloring_to_dict(c), sort_keys=True) + "\n"


def load_coloring(text: str) -> EdgeColoring:
    return coloring_from_dict(json.loads(text))
