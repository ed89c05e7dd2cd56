"""Explicit finite lattices.

One engine covers both lattice families used here: the connected-partition
lattice of a multigraph (and its order dual) and the divisibility lattice of
monomial lcms. It stores the full order matrix, derives covers, ranks, and
Mobius values, extracts order complexes of open intervals, and tests
candidate order isomorphisms.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .graphs import (
    ConnectedPartition,
    Multigraph,
    connected_components,
    connected_partitions,
)
from .simplicial import SimplicialComplex


class LatticeError(ValueError):
    """The given order data does not describe a lattice."""


class NotGradedError(LatticeError):
    """Maximal chains disagree in length where a graded lattice was required."""


class FiniteLattice:
    """A finite lattice given by an explicit element list and order relation.

    The order is validated on construction (reflexive, antisymmetric,
    transitive, unique bottom and top). Joins and meets are computed on
    demand with a uniqueness check, so a merely bounded poset is caught the
    first time a pair has no least upper bound. Ranks are computed lazily
    from maximal chain lengths and demand gradedness; Mobius values come from
    the defining recursion in exact integer arithmetic.
    """

    def __init__(self, elements: Sequence, leq):
        self._elements = list(elements)
        count = len(self._elements)
        if count == 0:
            raise LatticeError("a lattice needs at least one element")
        self._index = {}
        for i, x in enumerate(self._elements):
            if x in self._index:
                raise LatticeError(f"duplicate element {x!r}")
            self._index[x] = i
        if callable(leq):
            rel = np.zeros((count, count), dtype=bool)
            for i, x in enumerate(self._elements):
                for j, y in enumerate(self._elements):
                    rel[i, j] = bool(leq(x, y))
        else:
            rel = np.array(leq, dtype=bool)
            if rel.shape != (count, count):
                raise LatticeError("order matrix shape mismatch")
        if not rel.diagonal().all():
            raise LatticeError("order is not reflexive")
        if np.any(rel & rel.T & ~np.eye(count, dtype=bool)):
            raise LatticeError("order is not antisymmetric")
        if np.any(((rel.astype(np.uint8) @ rel.astype(np.uint8)) > 0) & ~rel):
            raise LatticeError("order is not transitive")
        bottoms = np.flatnonzero(rel.all(axis=1))
        tops = np.flatnonzero(rel.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a unique bottom and top")
        self._leq = rel
        self._bottom = int(bottoms[0])
        self._top = int(tops[0])
        self._strict = rel & ~np.eye(count, dtype=bool)
        two_step = (self._strict.astype(np.uint8) @ self._strict.astype(np.uint8)) > 0
        self._covers = self._strict & ~two_step
        self._ranks = None
        self._mobius = None
        self._heights = None
        self._chain_dp: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self._elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteLattice)
            and self._elements == other._elements
            and np.array_equal(self._leq, other._leq)
        )

    @property
    def elements(self) -> tuple:
        return tuple(self._elements)

    @property
    def bottom(self):
        return self._elements[self._bottom]

    @property
    def top(self):
        return self._elements[self._top]

    def index_of(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise LatticeError(f"{x!r} is not a lattice element") from None

    def leq(self, x, y) -> bool:
        return bool(self._leq[self.index_of(x), self.index_of(y)])

    def upper_covers(self, x) -> list:
        i = self.index_of(x)
        return [self._elements[j] for j in np.flatnonzero(self._covers[i])]

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i, j) with element j covering element i."""
        ii, jj = np.nonzero(self._covers)
        return list(zip(ii.tolist(), jj.tolist()))

    def atoms(self) -> list:
        return self.upper_covers(self.bottom)

    def join(self, x, y):
        i, j = self.index_of(x), self.index_of(y)
        ub = self._leq[i] & self._leq[j]
        least = [int(k) for k in np.flatnonzero(ub) if self._leq[k][ub].all()]
        if len(least) != 1:
            raise LatticeError(f"no unique join for {x!r} and {y!r}")
        return self._elements[least[0]]

    def meet(self, x, y):
        i, j = self.index_of(x), self.index_of(y)
        lb = self._leq[:, i] & self._leq[:, j]
        greatest = [int(k) for k in np.flatnonzero(lb) if self._leq[lb, k].all()]
        if len(greatest) != 1:
            raise LatticeError(f"no unique meet for {x!r} and {y!r}")
        return self._elements[greatest[0]]

    def _topological_order(self) -> np.ndarray:
        # strictly-below counts grow along the order, so sorting by them is
        # a valid topological order
        return np.argsort(self._strict.sum(axis=0), kind="stable")

    def _rank_vector(self) -> np.ndarray:
        if self._ranks is None:
            count = len(self._elements)
            rank = np.zeros(count, dtype=np.int64)
            into = [np.flatnonzero(self._covers[:, k]) for k in range(count)]
            for k in self._topological_order():
                if len(into[k]):
                    rank[k] = rank[into[k]].max() + 1
            ii, jj = np.nonzero(self._covers)
            if np.any(rank[jj] != rank[ii] + 1):
                raise NotGradedError("lattice is not graded")
            self._ranks = rank
        return self._ranks

    def rank(self, x) -> int:
        """Length of a maximal chain from the bottom to x (graded lattices)."""
        return int(self._rank_vector()[self.index_of(x)])

    @property
    def max_rank(self) -> int:
        return int(self._rank_vector().max())

    def rank_profile(self) -> tuple[int, ...]:
        """Element counts per rank, bottom upward."""
        ranks = self._rank_vector()
        return tuple(int((ranks == r).sum()) for r in range(int(ranks.max()) + 1))

    def mobius(self) -> dict:
        """mu(bottom, x) for every element x, via the defining recursion."""
        if self._mobius is None:
            mu = [0] * len(self._elements)
            mu[self._bottom] = 1
            for k in self._topological_order():
                k = int(k)
                if k == self._bottom:
                    continue
                below = np.flatnonzero(self._strict[:, k])
                mu[k] = -sum(mu[int(b)] for b in below)
            self._mobius = mu
        return {x: self._mobius[i] for i, x in enumerate(self._elements)}

    def open_interval(self, y) -> list:
        """Elements strictly between the bottom and y, in element order."""
        iy = self.index_of(y)
        return [
            self._elements[k]
            for k in range(len(self._elements))
            if self._strict[self._bottom, k] and self._strict[k, iy]
        ]

    def _interior_indices(self, iy: int) -> list[int]:
        return [
            k for k in range(len(self._elements))
            if self._strict[self._bottom, k] and self._strict[k, iy]
        ]

    def interior_heights(self) -> np.ndarray:
        """Per element: the longest chain of non-bottom elements ending at it
        (0 for the bottom). Interval heights read off as maxima below."""
        if self._heights is None:
            count = len(self._elements)
            heights = np.zeros(count, dtype=np.int64)
            for k in self._topological_order():
                k = int(k)
                if k == self._bottom:
                    continue
                below = np.flatnonzero(self._strict[:, k])
                below = below[below != self._bottom]
                heights[k] = 1 + (heights[below].max() if len(below) else 0)
            self._heights = heights
        return self._heights

    def interval_height(self, y) -> int:
        """Longest chain length (element count) inside the open interval
        (bottom, y)."""
        iy = self.index_of(y)
        interior = self._interior_indices(iy)
        if not interior:
            return 0
        return int(self.interior_heights()[interior].max())

    def _chain_counts(self, cap: int) -> np.ndarray:
        """counts[k, t] = chains of exactly t non-bottom elements ending at
        element k, for t up to cap. Held in float64: counts can explode
        combinatorially and only feed size heuristics."""
        if cap not in self._chain_dp:
            count = len(self._elements)
            counts = np.zeros((count, cap + 1), dtype=np.float64)
            for k in self._topological_order():
                k = int(k)
                if k == self._bottom:
                    continue
                counts[k, 1] = 1
                below = np.flatnonzero(self._strict[:, k])
                below = below[below != self._bottom]
                for t in range(2, cap + 1):
                    counts[k, t] = counts[below, t - 1].sum()
            self._chain_dp[cap] = counts
        return self._chain_dp[cap]

    def count_interval_faces(self, y, cap: int) -> float:
        """Number of chains with at most ``cap`` elements inside the open
        interval (bottom, y), the empty chain included. Approximate beyond
        float64 integer range; exact at the scales actually enumerated."""
        iy = self.index_of(y)
        interior = self._interior_indices(iy)
        if not interior:
            return 1
        counts = self._chain_counts(cap)
        return 1 + float(counts[interior, 1:].sum())

    def interval_chain_faces(self, y, cap: int | None = None) -> dict[int, list[tuple[int, ...]]]:
        """Order-complex faces of the open interval (bottom, y): every chain
        with at most ``cap`` elements (all chains when cap is None), keyed by
        dimension. Chain entries are positions in a topologically sorted
        interior, so the family is deterministic and downward closed."""
        iy = self.index_of(y)
        if iy == self._bottom:
            raise ValueError("the open interval below the bottom is undefined")
        interior = self._interior_indices(iy)
        faces: dict[int, list[tuple[int, ...]]] = {-1: [()]}
        m = len(interior)
        if m == 0:
            return faces
        order = sorted(interior, key=lambda k: int(self._strict[:, k].sum()))
        sub = self._strict[np.ix_(order, order)]
        succ = [np.flatnonzero(sub[k]).tolist() for k in range(m)]
        limit = m if cap is None else min(cap, m)
        chain: list[int] = []

        def walk(k: int):
            chain.append(k)
            faces.setdefault(len(chain) - 1, []).append(tuple(chain))
            if len(chain) < limit:
                for nxt in succ[k]:
                    walk(nxt)
            chain.pop()

        for k in range(m):
            walk(k)
        return {d: sorted(fs) for d, fs in sorted(faces.items())}

    def order_complex(self, y) -> SimplicialComplex:
        """Order complex of the open interval (bottom, y): vertices are the
        strictly-between elements (numbered in element order), faces are the
        chains. The facets produced are the maximal chains."""
        iy = self.index_of(y)
        if iy == self._bottom:
            raise ValueError("the open interval below the bottom is undefined")
        interior = [
            k for k in range(len(self._elements))
            if self._strict[self._bottom, k] and self._strict[k, iy]
        ]
        if not interior:
            return SimplicialComplex(((),))
        sub = self._strict[np.ix_(interior, interior)]
        two_step = (sub.astype(np.uint8) @ sub.astype(np.uint8)) > 0
        covers = sub & ~two_step
        succ = [np.flatnonzero(covers[k]).tolist() for k in range(len(interior))]
        minimal = [k for k in range(len(interior)) if not sub[:, k].any()]
        facets: list[tuple[int, ...]] = []
        chain: list[int] = []

        def walk(k: int):
            chain.append(k)
            if succ[k]:
                for m in succ[k]:
                    walk(m)
            else:
                facets.append(tuple(chain))
            chain.pop()

        for k in minimal:
            walk(k)
        return SimplicialComplex(tuple(facets))

    def dual(self) -> "FiniteLattice":
        """Same elements, reversed order."""
        return FiniteLattice(self._elements, self._leq.T)


def connected_partition_lattice(G: Multigraph) -> FiniteLattice:
    """Lattice of connected partitions under refinement: finer partitions lie
    lower, the all-singletons partition is the bottom, the one-block
    partition the top."""
    return FiniteLattice(connected_partitions(G), lambda p, q: p.refines(q))


def dual_connected_partition_lattice(G: Multigraph) -> FiniteLattice:
    """Order dual of the connected-partition lattice; its atoms are exactly
    the connected cuts."""
    return connected_partition_lattice(G).dual()


def connected_common_refinement(
    G: Multigraph, p: ConnectedPartition, q: ConnectedPartition
) -> ConnectedPartition:
    """Join in the dual lattice: intersect blocks pairwise, then split each
    intersection into connected components."""
    blocks: list[int] = []
    for b1 in p.blocks:
        for b2 in q.blocks:
            inter = b1 & b2
            if inter:
                blocks.extend(connected_components(G, inter))
    return ConnectedPartition(tuple(blocks))


def lattice_isomorphism_failure(L1: FiniteLattice, L2: FiniteLattice, mapping) -> str | None:
    """None when the mapping is an order isomorphism L1 -> L2; otherwise the
    reason: 'not-bijective' or 'order-violation'. The mapping (a dict or a
    callable) must be total on L1 and land inside L2."""
    if callable(mapping):
        images = [mapping(x) for x in L1.elements]
    else:
        try:
            images = [mapping[x] for x in L1.elements]
        except KeyError as exc:
            raise ValueError(f"mapping is not total: missing {exc.args[0]!r}") from None
    for y in images:
        if y not in L2:
            raise ValueError(f"image {y!r} is not an element of the codomain lattice")
    if len(set(images)) != len(images) or len(images) != len(L2):
        return "not-bijective"
    perm = np.array([L2.index_of(y) for y in images])
    if np.array_equal(L2._leq[np.ix_(perm, perm)], L1._leq):
        return None
    return "order-violation"


def lattice_isomorphism(L1: FiniteLattice, L2: FiniteLattice, mapping) -> bool:
    """True iff the candidate map is a bijection preserving order both ways."""
    return lattice_isomorphism_failure(L1, L2, mapping) is None


def lattice_to_json(L: FiniteLattice, label: Callable = str) -> dict:
    """Elements, covers, Mobius values, and ranks (when graded) as one dict."""
    mu = L.mobius()
    doc = {
        "elements": [label(x) for x in L.elements],
        "covers": sorted([i, j] for i, j in L.cover_pairs()),
        "mobius": [mu[x] for x in L.elements],
    }
    try:
        doc["ranks"] = [L.rank(x) for x in L.elements]
    except NotGradedError:
        doc["ranks"] = None
    return doc


def lattice_to_dot(
    L: FiniteLattice,
    label: Callable = str,
    annotate: Callable | None = None,
) -> str:
    """Hasse diagram in DOT form, bottom at the bottom, Mobius values on
    every node, extra per-node lines via ``annotate``."""
    mu = L.mobius()
    lines = ["digraph lattice {", "  rankdir=BT;", '  node [shape=box];']
    for i, x in enumerate(L.elements):
        text = f"{label(x)}\\nmu={mu[x]}"
        if annotate is not None:
            extra = annotate(x)
            if extra:
                text += "\\n" + "\\n".join(extra)
        lines.append(f'  n{i} [label="{text}"];')
    for i, j in sorted(L.cover_pairs()):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines)
