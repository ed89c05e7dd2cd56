"""Parking-function recognition, enumeration, and maximality.

A configuration assigns chips to the non-sink vertices (ascending vertex
order, sink omitted). Recognition runs the standard sink-fire sweep; the
subset-quantified definition is kept as ``is_parking_function_bruteforce``
and serves as the slow oracle in the test suite.
"""

from __future__ import annotations

from itertools import combinations, product

from .graphs import Multigraph, boundary_degree, mask_of

ChipConfig = tuple[int, ...]


def _validated(G: Multigraph, config) -> ChipConfig:
    config = tuple(config)
    if len(config) != G.n - 1:
        raise ValueError(f"expected {G.n - 1} chip counts, got {len(config)}")
    for c in config:
        if not isinstance(c, int) or c < 0:
            raise ValueError(f"chip counts must be non-negative integers, got {c!r}")
    return config


def is_parking_function(G: Multigraph, config) -> bool:
    """Burning test: start a fire at the sink; a vertex burns when its edges
    into the fire outnumber its chips. Parking functions are exactly the
    configurations that burn completely."""
    config = _validated(G, config)
    chips = dict(zip(G.nonsink_vertices, config))
    burnt = 1 << G.sink
    progressed = True
    while progressed:
        progressed = False
        for v, c in chips.items():
            if (burnt >> v) & 1:
                continue
            heat = 0
            for e in G.edges:
                if e.tail == v and (burnt >> e.head) & 1:
                    heat += 1
                elif e.head == v and (burnt >> e.tail) & 1:
                    heat += 1
            if c < heat:
                burnt |= 1 << v
                progressed = True
    return burnt == G.full_mask


def is_parking_function_bruteforce(G: Multigraph, config) -> bool:
    """Check the defining condition on every non-empty subset of non-sink
    vertices. Exponential; retained as a cross-check for the burning test."""
    config = _validated(G, config)
    verts = G.nonsink_vertices
    chips = dict(zip(verts, config))
    for r in range(1, len(verts) + 1):
        for subset in combinations(verts, r):
            u_mask = mask_of(subset)
            if not any(chips[v] < boundary_degree(G, u_mask, v) for v in subset):
                return False
    return True


def enumerate_parking_functions(G: Multigraph) -> frozenset[ChipConfig]:
    """All parking functions for the fixed sink.

    The search box is the product of the vertex degrees: the singleton
    subset {v} already forces c_v < deg(v)."""
    ranges = [range(G.degrees[v]) for v in G.nonsink_vertices]
    return frozenset(c for c in product(*ranges) if is_parking_function(G, c))


def maximal_parking_functions(G: Multigraph) -> frozenset[ChipConfig]:
    """Parking functions maximal under coordinatewise dominance."""
    pfs = enumerate_parking_functions(G)
    return frozenset(
        c for c in pfs
        if not any(d != c and all(x <= y for x, y in zip(c, d)) for d in pfs)
    )


def mpf_count(G: Multigraph) -> int:
    """Number of maximal parking functions; independent of the sink choice
    (verified, not assumed, by the verification suite)."""
    return len(maximal_parking_functions(G))
