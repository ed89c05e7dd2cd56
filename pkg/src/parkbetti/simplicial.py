"""Finite simplicial complexes and exact reduced homology.

Complexes are stored by their facets. Two degenerate cases are
distinguished: the void complex (no faces at all, zero homology everywhere)
and the empty complex (whose only face is the empty one, carrying one unit
of reduced homology in degree -1). Homology ranks are computed over a prime
field or, for characteristic 0, over the rationals.

The homology core works on explicit per-dimension face lists, so large
downward-closed face families (chain enumerations, truncated skeleta) can
skip facet extraction entirely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed face set, represented by its maximal faces.

    ``facets == ()`` is the void complex; ``facets == ((),)`` is the empty
    complex. Construction sorts faces, dedupes, and drops non-maximal ones.
    """

    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        faces = {tuple(sorted(set(f))) for f in self.facets}
        maximal = tuple(sorted(
            f for f in faces
            if not any(f != g and set(f) <= set(g) for g in faces)
        ))
        object.__setattr__(self, "facets", maximal)

    @classmethod
    def from_faces(cls, faces) -> "SimplicialComplex":
        return cls(tuple(tuple(f) for f in faces))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Highest face dimension; -1 for the empty complex, -2 if void."""
        return max((len(f) for f in self.facets), default=-1) - 1

    def faces_by_dim(self) -> dict[int, list[tuple[int, ...]]]:
        """All faces grouped by dimension; the empty face sits at -1.
        The void complex returns an empty dict."""
        if self.is_void:
            return {}
        grouped: dict[int, set] = {-1: {()}}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                grouped.setdefault(r - 1, set()).update(combinations(f, r))
        return {d: sorted(fs) for d, fs in sorted(grouped.items())}


def boundary_matrices_from_faces(faces: dict[int, list[tuple[int, ...]]]) -> dict[int, np.ndarray]:
    """Integer boundary matrices of the augmented chain complex, one per
    dimension d >= 0 present; the d = 0 matrix is the augmentation row."""
    if not faces:
        return {}
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in faces.items()}
    mats = {}
    for d in range(0, max(faces) + 1):
        mat = np.zeros((len(faces[d - 1]), len(faces[d])), dtype=np.int64)
        for j, f in enumerate(faces[d]):
            for k in range(len(f)):
                sub = f[:k] + f[k + 1:]
                mat[index[d - 1][sub], j] = -1 if k % 2 else 1
        mats[d] = mat
    return mats


def boundary_matrices(cpx: SimplicialComplex) -> dict[int, np.ndarray]:
    return boundary_matrices_from_faces(cpx.faces_by_dim())


def _assert_boundary_squares_zero(faces: dict[int, list[tuple[int, ...]]]) -> None:
    """Face-level check that the composed boundary of every face cancels:
    the signed double-deletion sum of each face must vanish identically.
    Columns of the assembled matrices are exactly these signed sums, so this
    asserts the matrix identity without forming any matrix product."""
    for d, fs in faces.items():
        if d < 1:
            continue
        for f in fs:
            acc: dict[tuple[int, ...], int] = {}
            for j in range(len(f)):
                outer_sign = -1 if j % 2 else 1
                sub = f[:j] + f[j + 1:]
                for i in range(len(sub)):
                    inner_sign = -1 if i % 2 else 1
                    key = sub[:i] + sub[i + 1:]
                    acc[key] = acc.get(key, 0) + outer_sign * inner_sign
            if any(acc.values()):
                raise AssertionError("boundary maps do not compose to zero")


def _unit_pivot_reduce(rows, cols, signs, n_rows: int, n_cols: int):
    """Structural rank reduction on a sparse pattern with unit entries.

    A row or column holding exactly one surviving nonzero (always a unit
    here) can be pivoted away by deleting its row and column; no other entry
    changes, so the step is exact over every field. Cascading these pivots
    returns their count plus the dense residual core."""
    from collections import deque

    entry_alive = [True] * len(rows)
    row_entries: list[list[int]] = [[] for _ in range(n_rows)]
    col_entries: list[list[int]] = [[] for _ in range(n_cols)]
    for e, (r, c) in enumerate(zip(rows, cols)):
        row_entries[r].append(e)
        col_entries[c].append(e)
    row_count = [len(es) for es in row_entries]
    col_count = [len(es) for es in col_entries]
    row_alive = [True] * n_rows
    col_alive = [True] * n_cols
    queue = deque()
    for r in range(n_rows):
        if row_count[r] == 1:
            queue.append((0, r))
    for c in range(n_cols):
        if col_count[c] == 1:
            queue.append((1, c))
    unit_rank = 0

    def kill(r: int, c: int):
        row_alive[r] = False
        col_alive[c] = False
        for e in row_entries[r]:
            if entry_alive[e]:
                entry_alive[e] = False
                cc = cols[e]
                col_count[cc] -= 1
                if col_alive[cc] and col_count[cc] == 1:
                    queue.append((1, cc))
        for e in col_entries[c]:
            if entry_alive[e]:
                entry_alive[e] = False
                rr = rows[e]
                row_count[rr] -= 1
                if row_alive[rr] and row_count[rr] == 1:
                    queue.append((0, rr))

    while queue:
        kind, idx = queue.popleft()
        if kind == 0:
            if not row_alive[idx] or row_count[idx] != 1:
                continue
            e = next(e for e in row_entries[idx] if entry_alive[e])
            unit_rank += 1
            kill(idx, cols[e])
        else:
            if not col_alive[idx] or col_count[idx] != 1:
                continue
            e = next(e for e in col_entries[idx] if entry_alive[e])
            unit_rank += 1
            kill(rows[e], idx)

    live_rows = [r for r in range(n_rows) if row_alive[r] and row_count[r] > 0]
    live_cols = [c for c in range(n_cols) if col_alive[c] and col_count[c] > 0]
    row_pos = {r: i for i, r in enumerate(live_rows)}
    col_pos = {c: i for i, c in enumerate(live_cols)}
    core = np.zeros((len(live_rows), len(live_cols)), dtype=np.int64)
    for e, alive in enumerate(entry_alive):
        if alive:
            core[row_pos[rows[e]], col_pos[cols[e]]] = signs[e]
    return unit_rank, core


def collapse_faces(
    faces: dict[int, list[tuple[int, ...]]]
) -> dict[int, list[tuple[int, ...]]]:
    """Elementary collapses: repeatedly remove a free pair (a face contained
    in exactly one other face, together with that coface). Each step is a
    deformation retraction, so all reduced homology is preserved over every
    coefficient ring. The empty face is never removed."""
    from collections import deque

    alive: set[tuple[int, ...]] = {f for fs in faces.values() for f in fs}
    vertices = sorted({v for f in alive for v in f})
    cofaces: dict[tuple[int, ...], int] = {f: 0 for f in alive}
    for f in alive:
        for k in range(len(f)):
            cofaces[f[:k] + f[k + 1:]] += 1
    queue = deque(f for f, c in cofaces.items() if c == 1 and f != ())

    def drop(f: tuple[int, ...]):
        alive.remove(f)
        for k in range(len(f)):
            sub = f[:k] + f[k + 1:]
            if sub in alive:
                cofaces[sub] -= 1
                if cofaces[sub] == 1 and sub != ():
                    queue.append(sub)

    while queue:
        f = queue.popleft()
        if f not in alive or cofaces[f] != 1:
            continue
        partner = None
        fset = set(f)
        for v in vertices:
            if v not in fset:
                candidate = tuple(sorted(f + (v,)))
                if candidate in alive:
                    partner = candidate
                    break
        if partner is None:
            continue
        drop(partner)
        drop(f)
    grouped: dict[int, list[tuple[int, ...]]] = {}
    for f in alive:
        grouped.setdefault(len(f) - 1, []).append(f)
    return {d: sorted(fs) for d, fs in sorted(grouped.items())}


def homology_from_faces_multi(
    faces: dict[int, list[tuple[int, ...]]], chars
) -> dict[int, dict[int, int]]:
    """Reduced homology dimensions per characteristic for an explicit
    downward-closed face family.

    The family is first collapsed (homotopy-preserving), boundary matrices
    are then assembled once per dimension, structurally reduced, and ranked
    over every characteristic. Degrees are reported for the ORIGINAL family's
    dimension range."""
    if not faces:
        return {c: {} for c in chars}
    _assert_boundary_squares_zero(faces)
    original_top = max(faces)
    reduced = collapse_faces(faces)
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in reduced.items()}
    top = max(reduced)
    ranks: dict[int, dict[int, int]] = {c: {} for c in chars}
    for d in range(0, top + 1):
        rows_ix, cols_ix, signs = [], [], []
        for j, f in enumerate(reduced.get(d, ())):
            for k in range(len(f)):
                sub = f[:k] + f[k + 1:]
                rows_ix.append(index[d - 1][sub])
                cols_ix.append(j)
                signs.append(-1 if k % 2 else 1)
        unit_rank, core = _unit_pivot_reduce(
            rows_ix, cols_ix, signs, len(reduced.get(d - 1, ())), len(reduced.get(d, ()))
        )
        for c in chars:
            ranks[c][d] = unit_rank + (rank_over(core, c) if core.size else 0)
    out = {}
    for c in chars:
        dims = {-1: 1 - ranks[c].get(0, 0)}
        for d in range(0, original_top + 1):
            count = len(reduced.get(d, ()))
            dims[d] = count - ranks[c].get(d, 0) - ranks[c].get(d + 1, 0)
        out[c] = dims
    return out


def homology_from_faces(faces: dict[int, list[tuple[int, ...]]], char: int) -> dict[int, int]:
    """Reduced homology dimensions of an explicit downward-closed face family,
    keyed by degree from -1 upward.

    The boundary maps are verified to compose to zero before any rank is
    taken. An empty family (void complex) reports {}."""
    return homology_from_faces_multi(faces, (char,))[char]


def reduced_homology_dims(cpx: SimplicialComplex, char: int) -> dict[int, int]:
    """Reduced homology dimensions by degree. The empty complex reports
    {-1: 1}; the void complex reports {}."""
    return homology_from_faces(cpx.faces_by_dim(), char)


def rank_over(matrix: np.ndarray, char: int) -> int:
    """Matrix rank over GF(char) for prime char, or exactly over the
    rationals for char = 0."""
    if matrix.size == 0:
        return 0
    if char == 0:
        return _rank_rational(matrix)
    if not _is_prime(char):
        raise ValueError(f"characteristic must be 0 or a prime, got {char}")
    if char == 2:
        return _rank_gf2(matrix)
    return _rank_mod_p(matrix, char)


def _rank_gf2(matrix: np.ndarray) -> int:
    """GF(2) rank with rows packed into uint64 words (XOR elimination).
    The uint64 view assumes a little-endian host."""
    a = (np.asarray(matrix) % 2).astype(np.uint8)
    rows, cols = a.shape
    if cols > rows:
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows
    words = (cols + 63) // 64
    packed = np.zeros((rows, words * 8), dtype=np.uint8)
    packed[:, : (cols + 7) // 8] = np.packbits(a, axis=1, bitorder="little")
    packed = packed.view(np.uint64)
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        w, b = divmod(col, 64)
        bit = np.uint64(1 << b)
        live = np.flatnonzero(packed[rank:, w] & bit)
        if live.size == 0:
            continue
        piv = rank + int(live[0])
        if piv != rank:
            packed[[rank, piv]] = packed[[piv, rank]]
        hits = np.flatnonzero(packed[rank + 1:, w] & bit) + rank + 1
        if hits.size:
            packed[hits] ^= packed[rank]
        rank += 1
    return rank


def _rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Row-echelon rank over GF(p), blocked LAPACK-style in float64.

    Exactness: inputs to every product are reduced below p, each dot
    accumulates at most ``block`` terms bounded by p^2, and trailing-block
    reductions are deferred only as long as the accumulated magnitude
    provably stays under 2^53."""
    if p >= 1 << 21:
        raise ValueError(f"prime {p} too large for exact float64 elimination")
    a = np.mod(np.asarray(matrix, dtype=np.int64), p).astype(np.float64)
    rows, cols = a.shape
    if cols > rows:
        a = np.ascontiguousarray(a.T)
        rows, cols = cols, rows
    block = 64
    max_defer = max(1, (1 << 53) // (block * p * p) - 1)
    deferred = 0
    rank = 0
    c0 = 0
    while c0 < cols and rank < rows:
        c1 = min(c0 + block, cols)
        r0 = rank
        width = c1 - c0
        panel = np.ascontiguousarray(a[r0:, c0:c1]) % p
        pivot_cols: list[int] = []
        local = 0
        for col in range(width):
            if r0 + local == rows:
                break
            panel[local:, col] %= p
            nz = np.flatnonzero(panel[local:, col])
            if nz.size == 0:
                continue
            piv = local + int(nz[0])
            if piv != local:
                panel[[local, piv]] = panel[[piv, local]]
                a[[r0 + local, r0 + piv], :] = a[[r0 + piv, r0 + local], :]
            panel[local, col + 1:] %= p
            inv = float(pow(int(panel[local, col]), p - 2, p))
            factors = panel[local + 1:, col] * inv % p
            panel[local + 1:, col] = factors  # multipliers stay in the L position
            if col + 1 < width:
                # accumulate unreduced: at most `block` additions of < p^2 each
                panel[local + 1:, col + 1:] -= np.outer(factors, panel[local, col + 1:])
            pivot_cols.append(col)
            local += 1
        panel %= p
        a[r0:, c0:c1] = panel
        k = len(pivot_cols)
        rank = r0 + k
        if c1 < cols and k:
            trailing = a[r0:rank, c1:].copy()
            trailing %= p
            for i in range(1, k):
                coefs = panel[i, pivot_cols[:i]]
                live = np.flatnonzero(coefs)
                if live.size:
                    trailing[i] = (trailing[i] - coefs[live] @ trailing[live]) % p
            a[r0:rank, c1:] = trailing
            if rank < rows:
                multipliers = panel[k:, pivot_cols]
                a[rank:, c1:] -= multipliers @ trailing
                deferred += 1
                if deferred >= max_defer:
                    a[rank:, c1:] %= p
                    deferred = 0
        c0 = c1
    return rank


def _rank_rational(matrix: np.ndarray) -> int:
    rows = [[Fraction(int(x)) for x in row] for row in matrix]
    n_rows = len(rows)
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for r in range(n_rows):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True
