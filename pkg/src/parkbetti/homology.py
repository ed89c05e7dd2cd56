"""The four Betti-number pipelines and their shared homology plumbing.

All Betti vectors are for the quotient ring and start at beta_1; trailing
zeros are trimmed so vectors from different methods compare as plain tuples.
Homology is computed over every characteristic in ``chars`` and must agree;
a disagreement means the answer is field-dependent and is raised, never
averaged.

Interval homology in an lcm-lattice is bounded twice before anything is
assembled: degrees above (#variables - 2) vanish because the quotient's
projective dimension is at most the variable count, and degrees above
(interval height - 1) vanish because the order complex has no such faces.
Within those bounds each interval is computed either from its order-complex
chains or from the homotopy-equivalent crosscut complex on the atoms below
(faces: atom subsets whose join stays proper), whichever family is smaller.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from math import comb

from .chips import mpf_count
from .graphs import Multigraph, connected_partitions, contract
from .ideals import Monomial, MonomialIdeal, lcm_lattice, permute_monomial
from .posets import FiniteLattice
from .simplicial import (
    SimplicialComplex,
    homology_from_faces_multi,
    reduced_homology_dims,
)

DEFAULT_CHARS = (32003, 2)


class CharacteristicDisagreement(ArithmeticError):
    """Homology dimensions differ between coefficient fields: the complex has
    torsion, so no field-independent Betti number exists."""

    def __init__(self, dims_by_char: dict, context: str = ""):
        self.dims_by_char = dims_by_char
        summary = "; ".join(f"char {c}: {d}" for c, d in dims_by_char.items())
        suffix = f" [{context}]" if context else ""
        super().__init__(f"homology depends on the field ({summary}){suffix}")


def _agreeing_dims(faces, chars, context: str) -> dict[int, int]:
    if not chars:
        raise ValueError("need at least one characteristic")
    dims_by_char = homology_from_faces_multi(faces, tuple(chars))
    first = dims_by_char[chars[0]]
    if any(d != first for d in dims_by_char.values()):
        raise CharacteristicDisagreement(dims_by_char, context)
    return first


def homology_over_chars(
    cpx: SimplicialComplex, chars=DEFAULT_CHARS, context: str = ""
) -> dict[int, int]:
    """Reduced homology dims computed over every characteristic in ``chars``,
    required to agree."""
    if not chars:
        raise ValueError("need at least one characteristic")
    dims_by_char = {c: reduced_homology_dims(cpx, c) for c in chars}
    first = dims_by_char[chars[0]]
    if any(d != first for d in dims_by_char.values()):
        raise CharacteristicDisagreement(dims_by_char, context)
    return first


def crosscut_faces(
    atoms: list[Monomial], top: Monomial, cap: int | None = None
) -> dict[int, list[tuple[int, ...]]]:
    """Faces of the crosscut complex of the interval [1, top]: subsets of the
    atoms (given as monomials dividing top) whose lcm is a proper divisor of
    top, keyed by dimension, truncated to subsets of at most ``cap`` elements.

    Subsets of faces are faces because lcms only grow, so the family is
    downward closed and prefix extension enumerates it exactly."""
    faces: dict[int, list[tuple[int, ...]]] = {-1: [()]}
    count = len(atoms)
    limit = count if cap is None else min(cap, count)
    level: list[tuple[tuple[int, ...], Monomial]] = [((), Monomial.of({}))]
    for size in range(1, limit + 1):
        grown: list[tuple[tuple[int, ...], Monomial]] = []
        for face, joined in level:
            start = face[-1] + 1 if face else 0
            for j in range(start, count):
                bigger = joined.lcm(atoms[j])
                if bigger != top:
                    grown.append((face + (j,), bigger))
        if not grown:
            break
        faces[size - 1] = [f for f, _ in grown]
        level = grown
    return faces


def interval_homology(
    lat: FiniteLattice,
    y: Monomial,
    generators: tuple[Monomial, ...],
    variable_count: int,
    chars=DEFAULT_CHARS,
    context: str = "",
) -> dict[int, int]:
    """Reduced homology of the open interval (bottom, y) of an lcm-lattice,
    reported for the degrees where it can be nonzero.

    Picks the cheaper of the two homotopy-equivalent models, the truncated
    order complex or the truncated crosscut complex on the atoms below y."""
    height = lat.interval_height(y)
    max_degree = min(variable_count - 2, height - 1)
    if max_degree < -1:
        max_degree = -1
    cap = max_degree + 2
    atoms_below = [g for g in generators if g.divides(y)]
    crosscut_bound = sum(comb(len(atoms_below), k) for k in range(min(cap, len(atoms_below)) + 1))
    chain_count = lat.count_interval_faces(y, cap)
    if crosscut_bound <= chain_count:
        faces = crosscut_faces(atoms_below, y, cap)
    else:
        faces = lat.interval_chain_faces(y, cap)
    dims = _agreeing_dims(faces, chars, context)
    return {d: v for d, v in dims.items() if d <= max_degree}


def _as_vector(betti: dict[int, int]) -> tuple[int, ...]:
    top = max((i for i, v in betti.items() if v), default=0)
    return tuple(betti.get(i, 0) for i in range(1, top + 1))


def betti_wilmes(G: Multigraph) -> tuple[int, ...]:
    """Contraction formula: beta_i totals the maximal-parking-function counts
    of the contractions to connected partitions with i+1 parts."""
    if G.n < 2:
        raise ValueError("needs at least two vertices")
    betti: dict[int, int] = defaultdict(int)
    for p in connected_partitions(G):
        if p.part_count >= 2:
            betti[p.part_count - 1] += mpf_count(contract(G, p))
    return _as_vector(betti)


def _validated_symmetries(ideal: MonomialIdeal, symmetries) -> tuple:
    gens = ideal.generator_set()
    for mapping in symmetries:
        if frozenset(permute_monomial(g, mapping) for g in gens) != gens:
            raise ValueError("symmetry does not preserve the generator set")
    return tuple(symmetries)


def _orbit_representatives(elements, symmetries) -> list[tuple]:
    """Split elements into orbits under variable permutations; returns
    (representative, orbit size) pairs. Isomorphic intervals share all
    homology, so one computation covers a whole orbit."""
    if not symmetries:
        return [(m, 1) for m in elements]
    element_set = set(elements)
    seen: set = set()
    out = []
    for m in elements:
        if m in seen:
            continue
        orbit = {m}
        stack = [m]
        while stack:
            x = stack.pop()
            for mapping in symmetries:
                y = permute_monomial(x, mapping)
                if y not in orbit:
                    if y not in element_set:
                        raise ValueError("symmetry does not preserve the lcm-lattice")
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        out.append((m, len(orbit)))
    return out


def betti_gpw(ideal: MonomialIdeal, chars=DEFAULT_CHARS, symmetries=()) -> tuple[int, ...]:
    """Lcm-lattice method: beta_i sums the reduced homology of the open
    interval below each lattice element, in degree i-2.

    ``symmetries`` may carry variable permutations that fix the generator
    set (for instance from graph automorphisms); intervals in one orbit are
    isomorphic and computed once."""
    lat = lcm_lattice(ideal)
    symmetries = _validated_symmetries(ideal, symmetries)
    betti: dict[int, int] = defaultdict(int)
    proper = [m for m in lat.elements if m != lat.bottom]
    for m, weight in _orbit_representatives(proper, symmetries):
        dims = interval_homology(
            lat, m, ideal.generators, len(ideal.variables), chars,
            context=m.to_str(ideal.variables),
        )
        for degree, dim in dims.items():
            if dim:
                betti[degree + 2] += weight * dim
    return _as_vector(betti)


def koszul_complex(ideal: MonomialIdeal, degree: Monomial) -> SimplicialComplex:
    """Squarefree complex of the ideal at a multidegree: a subset of the
    support is a face when dividing out one step in those variables stays
    inside the ideal."""
    support = [v for v in ideal.variables if degree.exponent(v) > 0]
    faces = []
    for r in range(len(support) + 1):
        for subset in combinations(range(len(support)), r):
            exps = {v: e for v, e in degree.exps}
            for k in subset:
                exps[support[k]] -= 1
            if ideal.contains(Monomial.of(exps)):
                faces.append(subset)
    return SimplicialComplex.from_faces(faces)


def betti_koszul(ideal: MonomialIdeal, chars=DEFAULT_CHARS, symmetries=()) -> tuple[int, ...]:
    """Independent oracle: multigraded Betti numbers of the ideal from its
    per-multidegree squarefree complexes, totaled coarsely and shifted to
    quotient-ring indexing (quotient beta_i = ideal beta_{i-1})."""
    lat = lcm_lattice(ideal)
    symmetries = _validated_symmetries(ideal, symmetries)
    betti: dict[int, int] = defaultdict(int)
    proper = [m for m in lat.elements if m != lat.bottom]
    for m, weight in _orbit_representatives(proper, symmetries):
        dims = homology_over_chars(
            koszul_complex(ideal, m), chars, context=f"degree {m.to_str(ideal.variables)}"
        )
        # ideal beta at homological degree d+1 = quotient beta at d+2
        for degree, dim in dims.items():
            if dim:
                betti[degree + 2] += weight * dim
    return _as_vector(betti)


def betti_mobius(lattice: FiniteLattice) -> tuple[int, ...]:
    """Rank-wise absolute Mobius values. Valid as a Betti computation only
    for geometric lcm-lattices; raises NotGradedError otherwise."""
    mu = lattice.mobius()
    betti: dict[int, int] = defaultdict(int)
    for x in lattice.elements:
        r = lattice.rank(x)
        if r >= 1:
            betti[r] += abs(mu[x])
    return _as_vector(betti)


def interval_homology_audit(
    lattice: FiniteLattice, chars=DEFAULT_CHARS, label=str
) -> list[dict]:
    """Per-element audit rows for a graded lattice: rank, Mobius value, and
    the nonzero reduced homology of the full interval order complex. Feeds
    the concentration check and the report output."""
    mu = lattice.mobius()
    rows = []
    for x in lattice.elements:
        if x == lattice.bottom:
            continue
        faces = lattice.interval_chain_faces(x)
        dims = _agreeing_dims(faces, chars, label(x))
        rows.append({
            "element": label(x),
            "rank": lattice.rank(x),
            "mobius": mu[x],
            "homology": {d: v for d, v in dims.items() if v},
        })
    return rows
