"""Monomials, monomial ideals, and the three ideals attached to a graph.

Variable naming is fixed so printed generators are byte-stable: parking
variables are ``x<i>`` (1-based vertex index, sink omitted), cut-set
variables ``y_<edgelabel>``, and oriented half-edge variables
``z1_<edgelabel>`` / ``z2_<edgelabel>`` for the tail and head ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graphs import Multigraph, bits, boundary_degree, cut_set, enumerate_connected_cuts
from .posets import FiniteLattice


@dataclass(frozen=True)
class Monomial:
    """Exponent vector keyed by variable name; zero exponents are dropped."""

    exps: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for v, e in self.exps:
            if e < 0:
                raise ValueError(f"negative exponent for {v}")
        object.__setattr__(self, "exps", tuple(sorted((v, e) for v, e in self.exps if e)))

    @staticmethod
    def of(mapping) -> "Monomial":
        if isinstance(mapping, dict):
            return Monomial(tuple(mapping.items()))
        return Monomial(tuple(mapping))

    @cached_property
    def _lookup(self) -> dict:
        return dict(self.exps)

    def exponent(self, var: str) -> int:
        return self._lookup.get(var, 0)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def divides(self, other: "Monomial") -> bool:
        return all(other.exponent(v) >= e for v, e in self.exps)

    def lcm(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for v, e in other.exps:
            if e > merged.get(v, 0):
                merged[v] = e
        return Monomial.of(merged)

    def vector(self, variables: tuple[str, ...]) -> tuple[int, ...]:
        return tuple(self.exponent(v) for v in variables)

    def to_str(self, variables: tuple[str, ...] | None = None) -> str:
        if not self.exps:
            return "1"
        order = [v for v in variables if self.exponent(v)] if variables else [v for v, _ in self.exps]
        return "*".join(
            v if self.exponent(v) == 1 else f"{v}^{self.exponent(v)}" for v in order
        )

    def __str__(self) -> str:
        return self.to_str()


@dataclass(frozen=True)
class MonomialIdeal:
    """A list of monomial generators over a declared, ordered variable set."""

    variables: tuple[str, ...]
    generators: tuple[Monomial, ...]
    minimalized: bool = False

    def __post_init__(self):
        declared = set(self.variables)
        if len(declared) != len(self.variables):
            raise ValueError("duplicate variable names")
        for g in self.generators:
            for v, _ in g.exps:
                if v not in declared:
                    raise ValueError(f"generator uses undeclared variable {v!r}")

    def contains(self, m: Monomial) -> bool:
        """Monomial membership: divisibility by some generator."""
        return any(g.divides(m) for g in self.generators)

    def generator_set(self) -> frozenset[Monomial]:
        return frozenset(self.generators)

    def generator_strings(self) -> list[str]:
        return [g.to_str(self.variables) for g in self.generators]

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "generators": [
                {v: g.exponent(v) for v in self.variables if g.exponent(v)}
                for g in self.generators
            ],
        }


def parking_ideal(G: Multigraph) -> MonomialIdeal:
    """One generator per connected cut: each vertex of the non-sink side
    contributes its boundary degree as the exponent of its x-variable.
    These generators are already minimal."""
    variables = tuple(f"x{v + 1}" for v in G.nonsink_vertices)
    gens = tuple(
        Monomial.of({f"x{v + 1}": boundary_degree(G, c.u_side, v) for v in bits(c.u_side)})
        for c in enumerate_connected_cuts(G)
    )
    return MonomialIdeal(variables, gens, minimalized=True)


def cutset_ideal(G: Multigraph) -> MonomialIdeal:
    """One squarefree generator per connected cut-set; sink-independent."""
    variables = tuple(f"y_{e.label}" for e in G.edges)
    gens = tuple(
        Monomial.of({f"y_{label}": 1 for label in cut_set(G, c)})
        for c in enumerate_connected_cuts(G)
    )
    return MonomialIdeal(variables, gens, minimalized=True)


def oriented_cutset_ideal(G: Multigraph) -> MonomialIdeal:
    """One squarefree generator per connected cut: an edge leaving the cut
    tail-first contributes its z1-variable, head-first its z2-variable."""
    variables = tuple(f"z{k}_{e.label}" for e in G.edges for k in (1, 2))
    gens = []
    for c in enumerate_connected_cuts(G):
        exps = {}
        for e in G.edges:
            tail_in = (c.u_side >> e.tail) & 1
            head_in = (c.u_side >> e.head) & 1
            if tail_in and not head_in:
                exps[f"z1_{e.label}"] = 1
            elif head_in and not tail_in:
                exps[f"z2_{e.label}"] = 1
        gens.append(Monomial.of(exps))
    return MonomialIdeal(variables, tuple(gens), minimalized=True)


def minimalize(ideal: MonomialIdeal) -> MonomialIdeal:
    """Drop every generator divisible by another; idempotent. Generators come
    out sorted by (degree, exponent vector) so output is stable."""
    gens = sorted(set(ideal.generators), key=lambda g: (g.degree, g.vector(ideal.variables)))
    kept: list[Monomial] = []
    for g in gens:
        if not any(h.divides(g) for h in kept):
            kept.append(g)
    return MonomialIdeal(ideal.variables, tuple(kept), minimalized=True)


def lcm_lattice(ideal: MonomialIdeal) -> FiniteLattice:
    """Divisibility lattice on all lcms of generator subsets, with the
    constant monomial adjoined as the bottom. Atoms are the generators.

    The closure runs on exponent vectors (coordinatewise maxima) so the
    whole lattice and its order matrix come from array arithmetic."""
    if not ideal.generators:
        raise ValueError("the zero ideal has no lcm-lattice")
    if not ideal.minimalized:
        raise ValueError("lcm-lattice requires a minimalized ideal")
    variables = ideal.variables
    gen_matrix = np.array([g.vector(variables) for g in ideal.generators], dtype=np.int64)
    rows = {row.tobytes(): row for row in gen_matrix}
    frontier = list(rows.values())
    while frontier:
        elems_matrix = np.array(list(rows.values()), dtype=np.int64)
        fresh: dict[bytes, np.ndarray] = {}
        for vec in frontier:
            candidates = np.maximum(elems_matrix, vec)
            for row in candidates:
                key = row.tobytes()
                if key not in rows and key not in fresh:
                    fresh[key] = row
        rows.update(fresh)
        frontier = list(fresh.values())
    zero = np.zeros(len(variables), dtype=np.int64)
    rows.setdefault(zero.tobytes(), zero)
    matrix = np.array(sorted(rows.values(), key=lambda r: (int(r.sum()), tuple(r))), dtype=np.int64)
    leq = (matrix[:, None, :] <= matrix[None, :, :]).all(axis=2)
    elements = [
        Monomial.of({v: int(e) for v, e in zip(variables, row) if e}) for row in matrix
    ]
    return FiniteLattice(elements, leq)


@dataclass(frozen=True, eq=False)
class Substitution:
    """Variable identification closed to canonical representatives: each
    source variable maps to one target variable, or to None meaning it is
    evaluated at the multiplicative identity."""

    assignments: dict
    target_variables: tuple[str, ...]

    def apply_to(self, m: Monomial) -> Monomial:
        out: dict[str, int] = {}
        for v, e in m.exps:
            if v not in self.assignments:
                raise ValueError(f"substitution undefined for variable {v!r}")
            target = self.assignments[v]
            if target is not None:
                out[target] = out.get(target, 0) + e
        return Monomial.of(out)


def shared_vertex_substitution(G: Multigraph) -> Substitution:
    """Identify all half-edge variables meeting at a common non-sink vertex
    with that vertex's parking variable. Half-edges at the sink map to the
    identity: the parking ring carries no sink variable."""
    assignments = {}
    for e in G.edges:
        assignments[f"z1_{e.label}"] = None if e.tail == G.sink else f"x{e.tail + 1}"
        assignments[f"z2_{e.label}"] = None if e.head == G.sink else f"x{e.head + 1}"
    targets = tuple(f"x{v + 1}" for v in G.nonsink_vertices)
    return Substitution(assignments, targets)


def forget_orientation_substitution(G: Multigraph) -> Substitution:
    """Identify both oriented variables of each edge with the edge's
    cut-set variable."""
    assignments = {}
    for e in G.edges:
        assignments[f"z1_{e.label}"] = f"y_{e.label}"
        assignments[f"z2_{e.label}"] = f"y_{e.label}"
    return Substitution(assignments, tuple(f"y_{e.label}" for e in G.edges))


def apply_substitution(ideal: MonomialIdeal, sub: Substitution) -> MonomialIdeal:
    """Rename variables, merge exponents, then minimalize."""
    mapped = MonomialIdeal(
        sub.target_variables, tuple(sub.apply_to(g) for g in ideal.generators)
    )
    return minimalize(mapped)


def variable_symmetries(G: Multigraph, kind: str) -> tuple[dict, ...]:
    """Variable permutations induced by the sink-fixing graph automorphisms,
    for the parking ('x'), cut-set ('y'), or oriented ('z') variable set.
    The identity is omitted. Parallel edges are matched class-to-class in
    label order; an orientation flip swaps an edge's z1/z2 variables."""
    from .graphs import sink_fixing_automorphisms

    if kind not in ("x", "y", "z"):
        raise ValueError(f"unknown variable kind {kind!r}")
    by_pair: dict[tuple[int, int], list] = {}
    for e in G.edges:
        by_pair.setdefault((min(e.tail, e.head), max(e.tail, e.head)), []).append(e)
    for edges in by_pair.values():
        edges.sort(key=lambda e: e.label)
    maps = []
    for sigma in sink_fixing_automorphisms(G):
        if sigma == tuple(range(G.n)):
            continue
        mapping: dict[str, str] = {}
        if kind == "x":
            for v in G.nonsink_vertices:
                mapping[f"x{v + 1}"] = f"x{sigma[v] + 1}"
        else:
            for pair, edges in by_pair.items():
                tgt_pair = (min(sigma[pair[0]], sigma[pair[1]]), max(sigma[pair[0]], sigma[pair[1]]))
                targets = by_pair[tgt_pair]
                for e, t in zip(edges, targets):
                    if kind == "y":
                        mapping[f"y_{e.label}"] = f"y_{t.label}"
                    else:
                        keeps = sigma[e.tail] == t.tail
                        mapping[f"z1_{e.label}"] = f"z{1 if keeps else 2}_{t.label}"
                        mapping[f"z2_{e.label}"] = f"z{2 if keeps else 1}_{t.label}"
        maps.append(mapping)
    return tuple(maps)


def permute_monomial(m: Monomial, mapping: dict) -> Monomial:
    """Apply a variable permutation to a monomial."""
    return Monomial.of({mapping[v]: e for v, e in m.exps})
