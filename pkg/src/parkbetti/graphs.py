"""Multigraphs with labeled parallel edges and a distinguished sink.

Vertices are 0-based ints internally and rendered 1-based (``v1``, ``v2``,
...) in all user-facing text. Vertex subsets are plain int bitmasks, which
caps graphs at 32 vertices; every enumeration downstream is super-exponential
in the vertex count, so the cap never binds at the scales this tool targets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable

MAX_VERTICES = 32


class GraphParseError(ValueError):
    """Malformed edge-list or JSON graph document."""


class GraphValidationError(ValueError):
    """Structurally invalid graph: loop, disconnected, bad sink, bad labels."""


def mask_of(vertices: Iterable[int]) -> int:
    """Pack vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into ascending vertex indices."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Edge:
    """One labeled edge; the (tail, head) order is the edge's orientation."""

    label: str
    tail: int
    head: int


@dataclass(frozen=True)
class Multigraph:
    """Connected loopless multigraph with ordered, labeled edges.

    ``sink`` defaults to the highest-indexed vertex. Parallel edges are
    allowed and distinguished by their labels; loops and disconnected vertex
    sets are rejected outright rather than repaired.
    """

    n: int
    edges: tuple[Edge, ...]
    sink: int = -1

    def __post_init__(self):
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 1:
            raise GraphValidationError("graph needs at least one vertex")
        if self.n > MAX_VERTICES:
            raise GraphValidationError(f"at most {MAX_VERTICES} vertices supported")
        if self.sink == -1:
            object.__setattr__(self, "sink", self.n - 1)
        if not 0 <= self.sink < self.n:
            raise GraphValidationError(f"sink index {self.sink} out of range")
        seen = set()
        for e in self.edges:
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise GraphValidationError(f"edge {e.label!r} has an endpoint out of range")
            if e.tail == e.head:
                raise GraphValidationError(f"edge {e.label!r} is a loop")
            if e.label in seen:
                raise GraphValidationError(f"duplicate edge label {e.label!r}")
            seen.add(e.label)
        adj = [0] * self.n
        for e in self.edges:
            adj[e.tail] |= 1 << e.head
            adj[e.head] |= 1 << e.tail
        if _reachable(adj, 0) != (1 << self.n) - 1:
            raise GraphValidationError("graph is not connected")

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for e in self.edges:
            adj[e.tail] |= 1 << e.head
            adj[e.head] |= 1 << e.tail
        return tuple(adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            deg[e.tail] += 1
            deg[e.head] += 1
        return tuple(deg)

    @cached_property
    def nonsink_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if v != self.sink)

    def vertex_name(self, v: int) -> str:
        return f"v{v + 1}"

    def with_sink(self, sink: int) -> "Multigraph":
        """Same graph, same orientation, different sink (0-based index)."""
        return replace(self, sink=sink)


def _reachable(adjacency_masks, start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adjacency_masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected_induced(G: Multigraph, subset: int) -> bool:
    """True iff the subgraph induced on the bitmask ``subset`` is connected."""
    if subset == 0:
        raise ValueError("subset must be non-empty")
    if subset & ~G.full_mask:
        raise ValueError("subset contains vertices outside the graph")
    adj = G.adjacency_masks
    start = subset & -subset
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & subset & ~seen
        seen |= frontier
    return seen == subset


def connected_components(G: Multigraph, mask: int) -> list[int]:
    """Vertex masks of the connected components of the induced subgraph."""
    adj = G.adjacency_masks
    components = []
    remaining = mask
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        components.append(seen)
        remaining &= ~seen
    return components


@dataclass(frozen=True)
class Cut:
    """A 2-part connected partition with the sink side split out."""

    u_side: int
    w_side: int


def enumerate_connected_cuts(G: Multigraph) -> list[Cut]:
    """All cuts {U, W} with the sink in W and both sides inducing connected
    subgraphs, ordered by the U bitmask as an integer."""
    out = []
    full = G.full_mask
    candidates = full & ~(1 << G.sink)
    subs = []
    sub = candidates
    while sub:
        subs.append(sub)
        sub = (sub - 1) & candidates
    for u in sorted(subs):
        w = full & ~u
        if is_connected_induced(G, u) and is_connected_induced(G, w):
            out.append(Cut(u, w))
    return out


def boundary_degree(G: Multigraph, u_side: int, v: int) -> int:
    """Number of edges from v leaving U; zero when v is outside U."""
    if not (u_side >> v) & 1:
        return 0
    count = 0
    for e in G.edges:
        if e.tail == v and not (u_side >> e.head) & 1:
            count += 1
        elif e.head == v and not (u_side >> e.tail) & 1:
            count += 1
    return count


def cut_set(G: Multigraph, cut: Cut) -> frozenset[str]:
    """Labels of the edges with one endpoint on each side of the cut."""
    return frozenset(
        e.label
        for e in G.edges
        if ((cut.u_side >> e.tail) & 1) != ((cut.u_side >> e.head) & 1)
    )


@dataclass(frozen=True)
class ConnectedPartition:
    """Partition of the vertex set, stored as sorted block bitmasks.

    Disjointness and non-emptiness are enforced here; block connectivity is
    relative to a graph and is validated where it matters (contraction,
    lattice construction).
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(sorted(self.blocks))
        object.__setattr__(self, "blocks", blocks)
        union = 0
        for b in blocks:
            if b == 0:
                raise ValueError("partition blocks must be non-empty")
            if union & b:
                raise ValueError("partition blocks overlap")
            union |= b

    @staticmethod
    def singletons(n: int) -> "ConnectedPartition":
        return ConnectedPartition(tuple(1 << v for v in range(n)))

    @staticmethod
    def whole(n: int) -> "ConnectedPartition":
        return ConnectedPartition(((1 << n) - 1,))

    @property
    def part_count(self) -> int:
        return len(self.blocks)

    def block_containing(self, v: int) -> int:
        for b in self.blocks:
            if (b >> v) & 1:
                return b
        raise ValueError(f"vertex {v} not covered by the partition")

    def refines(self, other: "ConnectedPartition") -> bool:
        """Every block of self sits inside a single block of other."""
        return all(b & ~other.block_containing(bits(b)[0]) == 0 for b in self.blocks)

    def __str__(self) -> str:
        return "{" + " | ".join(
            " ".join(f"v{v + 1}" for v in bits(b)) for b in self.blocks
        ) + "}"


def is_connected_partition(G: Multigraph, partition: ConnectedPartition) -> bool:
    """Blocks cover all vertices and each induces a connected subgraph."""
    union = 0
    for b in partition.blocks:
        union |= b
    if union != G.full_mask:
        return False
    return all(is_connected_induced(G, b) for b in partition.blocks)


def connected_partitions(G: Multigraph) -> list[ConnectedPartition]:
    """Every partition of the vertices into connected blocks.

    The block containing the smallest unassigned vertex is grown directly
    from connected supersets, so disconnected partitions are never generated.
    Sorted by part count, then block masks."""
    results = []

    def grow(unassigned: int, acc: list[int]):
        if not unassigned:
            results.append(ConnectedPartition(tuple(acc)))
            return
        v_bit = unassigned & -unassigned
        rest = unassigned ^ v_bit
        choices = [v_bit]
        sub = rest
        while sub:
            block = sub | v_bit
            if is_connected_induced(G, block):
                choices.append(block)
            sub = (sub - 1) & rest
        for block in choices:
            acc.append(block)
            grow(unassigned & ~block, acc)
            acc.pop()

    grow(G.full_mask, [])
    results.sort(key=lambda p: (p.part_count, p.blocks))
    return results


def separating_edges(G: Multigraph, partition: ConnectedPartition) -> frozenset[str]:
    """Labels of the edges whose endpoints lie in different blocks."""
    return frozenset(
        e.label
        for e in G.edges
        if partition.block_containing(e.tail) != partition.block_containing(e.head)
    )


def contract(G: Multigraph, partition: ConnectedPartition) -> Multigraph:
    """Collapse each block to a single vertex.

    Edges inside a block disappear; all others keep their labels, with
    endpoints mapped through the collapse. The new sink is the block holding
    the old one."""
    if not is_connected_partition(G, partition):
        raise GraphValidationError("not a connected partition of the graph")
    where = {}
    for i, b in enumerate(partition.blocks):
        for v in bits(b):
            where[v] = i
    edges = tuple(
        Edge(e.label, where[e.tail], where[e.head])
        for e in G.edges
        if where[e.tail] != where[e.head]
    )
    return Multigraph(partition.part_count, edges, where[G.sink])


def sink_fixing_automorphisms(G: Multigraph) -> list[tuple[int, ...]]:
    """Vertex permutations that fix the sink and preserve the edge multiset,
    identity included. Brute force over the non-sink vertices; fine at the
    vertex counts this tool targets."""
    from itertools import permutations

    pair_counts: dict[tuple[int, int], int] = {}
    for e in G.edges:
        pair = (min(e.tail, e.head), max(e.tail, e.head))
        pair_counts[pair] = pair_counts.get(pair, 0) + 1
    others = [v for v in range(G.n) if v != G.sink]
    autos = []
    for image in permutations(others):
        sigma = list(range(G.n))
        for v, w in zip(others, image):
            sigma[v] = w
        if any(G.degrees[v] != G.degrees[sigma[v]] for v in range(G.n)):
            continue
        mapped: dict[tuple[int, int], int] = {}
        for (a, b), k in pair_counts.items():
            pair = (min(sigma[a], sigma[b]), max(sigma[a], sigma[b]))
            mapped[pair] = mapped.get(pair, 0) + k
        if mapped == pair_counts:
            autos.append(tuple(sigma))
    return autos


def spanning_tree_count(G: Multigraph) -> int:
    """Exact spanning-tree count: integer determinant of the Laplacian with
    the sink row and column removed (fraction-free elimination)."""
    keep = [v for v in range(G.n) if v != G.sink]
    pos = {v: i for i, v in enumerate(keep)}
    m = len(keep)
    lap = [[0] * m for _ in range(m)]
    for v in keep:
        lap[pos[v]][pos[v]] = G.degrees[v]
    for e in G.edges:
        if e.tail in pos and e.head in pos:
            lap[pos[e.tail]][pos[e.head]] -= 1
            lap[pos[e.head]][pos[e.tail]] -= 1
    return _bareiss_determinant(lap)


def _bareiss_determinant(mat: list[list[int]]) -> int:
    m = len(mat)
    if m == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for r in range(k + 1, m):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def parse_graph(text: str) -> Multigraph:
    """Parse the edge-list format.

    Statements are separated by newlines or semicolons: a ``v:<n>`` header,
    edge lines ``<label> <i> <j>`` with 1-based endpoints, an optional
    ``sink:<i>`` line, and ``#`` comments. Edge order and labels are
    preserved; endpoint pairs are normalized to the default orientation
    (smaller index first)."""
    n = None
    sink = None
    raw_edges = []
    for stmt in _statements(text):
        if stmt.startswith("v:"):
            if n is not None:
                raise GraphParseError("duplicate v: header")
            n = _parse_int(stmt[2:], stmt)
        elif stmt.startswith("sink:"):
            if sink is not None:
                raise GraphParseError("duplicate sink: line")
            sink = _parse_int(stmt[5:], stmt)
        else:
            parts = stmt.split()
            if len(parts) != 3:
                raise GraphParseError(f"malformed statement: {stmt!r}")
            raw_edges.append((parts[0], _parse_int(parts[1], stmt), _parse_int(parts[2], stmt)))
    if n is None:
        raise GraphParseError("missing v:<n> header")
    if n < 1:
        raise GraphValidationError("graph needs at least one vertex")
    edges = []
    for label, i, j in raw_edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphValidationError(f"edge {label!r} references a vertex outside 1..{n}")
        edges.append(Edge(label, min(i, j) - 1, max(i, j) - 1))
    if sink is not None and not 1 <= sink <= n:
        raise GraphValidationError(f"sink {sink} outside 1..{n}")
    return Multigraph(n, tuple(edges), n - 1 if sink is None else sink - 1)


def _statements(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if stmt:
                yield stmt


def _parse_int(token: str, context: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise GraphParseError(f"expected an integer in {context!r}") from None


def graph_to_text(G: Multigraph) -> str:
    """Canonical one-line edge-list form, sink always explicit."""
    parts = [f"v:{G.n}"]
    parts += [f"{e.label} {e.tail + 1} {e.head + 1}" for e in G.edges]
    parts.append(f"sink:{G.sink + 1}")
    return "; ".join(parts)


def graph_to_json(G: Multigraph) -> dict:
    """JSON mirror of the edge-list schema (1-based indices)."""
    return {
        "vertices": G.n,
        "edges": [[e.label, e.tail + 1, e.head + 1] for e in G.edges],
        "sink": G.sink + 1,
    }


def graph_from_json(doc) -> Multigraph:
    """Build a graph from the JSON mirror (a dict or a JSON string)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise GraphParseError("JSON graph document needs a 'vertices' field")
    try:
        n = int(doc["vertices"])
        rows = [(str(label), int(i), int(j)) for label, i, j in doc.get("edges", [])]
    except (TypeError, ValueError) as exc:
        raise GraphParseError(f"malformed JSON graph document: {exc}") from None
    if n < 1:
        raise GraphValidationError("graph needs at least one vertex")
    edges = []
    for label, i, j in rows:
        if not (1 <= i <= n and 1 <= j <= n):
            raise GraphValidationError(f"edge {label!r} references a vertex outside 1..{n}")
        edges.append(Edge(label, min(i, j) - 1, max(i, j) - 1))
    sink = doc.get("sink")
    if sink is not None and not 1 <= int(sink) <= n:
        raise GraphValidationError(f"sink {sink} outside 1..{n}")
    return Multigraph(n, tuple(edges), n - 1 if sink is None else int(sink) - 1)
