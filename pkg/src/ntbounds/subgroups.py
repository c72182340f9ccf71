"""Algebraic subgroups of E^N as matrices over End(E): degrees via minors,
Minkowski-style row reduction, Hermite normal forms, bounded-degree
enumeration, and torsion counting.

A codimension-r subgroup corresponds to a rank-r matrix in Mat_{r x N}(End(E));
its degree is, up to dimension-only constants, the sum of the norms of the
r x r minors (exactly the Gram determinant of the row module, by Cauchy-Binet).
Identity of subgroups = equality of row modules, decided by the canonical
Hermite normal form under left GL_r action; column permutations move to a
different subgroup of E^N, so they are recorded for display, never applied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .rings import Element, EndRing
from .rounding import DomainError

__all__ = [
    "SubgroupMatrix",
    "ReducedRows",
    "ResourceGuardError",
    "degree_estimate",
    "hermite_normal_form",
    "reduce_rows",
    "enumerate_matrices",
    "torsion_count",
    "CensusReport",
    "census",
    "row_bound_for_degree",
]


class ResourceGuardError(RuntimeError):
    """Predicted enumeration size exceeds the configured ceiling."""


@dataclass(frozen=True)
class SubgroupMatrix:
    ring: EndRing
    entries: tuple[tuple[Element, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple((int(a), int(b)) for a, b in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DomainError("matrix must be nonempty")
        n = len(rows[0])
        if any(len(row) != n for row in rows):
            raise DomainError("ragged matrix")
        if len(rows) > n:
            raise DomainError(f"need rows <= cols, got {len(rows)}x{n}")
        object.__setattr__(self, "entries", rows)

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def pretty(self) -> str:
        return "[" + "; ".join(
            " ".join(self.ring.element_str(e) for e in row) for row in self.entries
        ) + "]"

    @staticmethod
    def from_ints(ring: EndRing, rows) -> "SubgroupMatrix":
        """Rows of ints (Z) or (a, b) pairs."""
        conv = []
        for row in rows:
            conv.append(tuple(
                (e, 0) if isinstance(e, int) else (int(e[0]), int(e[1])) for e in row))
        return SubgroupMatrix(ring, tuple(conv))


def _det(ring: EndRing, rows: list[tuple[Element, ...]], cols: tuple[int, ...]) -> Element:
    """Determinant of the square submatrix on the given columns (Laplace)."""
    k = len(cols)
    if k == 1:
        return rows[0][cols[0]]
    if k == 2:
        a, b = rows[0][cols[0]], rows[0][cols[1]]
        c, d = rows[1][cols[0]], rows[1][cols[1]]
        return ring.sub(ring.mul(a, d), ring.mul(b, c))
    total = ring.zero
    rest = rows[1:]
    for idx, col in enumerate(cols):
        entry = rows[0][col]
        if ring.is_zero(entry):
            continue
        sub_cols = cols[:idx] + cols[idx + 1:]
        minor = _det(ring, rest, sub_cols)
        term = ring.mul(entry, minor)
        total = ring.add(total, term) if idx % 2 == 0 else ring.sub(total, term)
    return total


def degree_estimate(M: SubgroupMatrix) -> int:
    """Sum of norm(minor) over all r x r minors; rejects rank-deficient input.

    By Cauchy-Binet this is det(M conj(M)^T), the Gram determinant of the row
    module, hence invariant under unimodular row operations and column
    permutations and multiplicative over unit row scalings.
    """
    ring = M.ring
    rows = list(M.entries)
    total = 0
    for cols in itertools.combinations(range(M.n), M.r):
        total += ring.norm(_det(ring, rows, cols))
    if total == 0:
        raise DomainError("matrix is rank-deficient: every maximal minor vanishes")
    return total


# ---------------------------------------------------------------------------
# Hermite normal form (canonical for row-module identity)
# ---------------------------------------------------------------------------


def hermite_normal_form(M: SubgroupMatrix) -> SubgroupMatrix:
    """The unique row-equivalent echelon matrix with canonical-associate pivots
    and centered residues above each pivot; rejects rank-deficient input."""
    ring = M.ring
    rows = [list(row) for row in M.entries]
    r, n = M.r, M.n
    pivot_cols: list[int] = []
    pivot_row = 0
    for col in range(n):
        # euclidean elimination below the current pivot row
        while True:
            live = [i for i in range(pivot_row, r) if not ring.is_zero(rows[i][col])]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: (ring.norm(rows[i][col]), i))
            base = live[0]
            for i in live[1:]:
                q, _ = ring.divmod_rounded(rows[i][col], rows[base][col])
                rows[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(rows[i], rows[base])]
        live = [i for i in range(pivot_row, r) if not ring.is_zero(rows[i][col])]
        if not live:
            continue
        i = live[0]
        rows[pivot_row], rows[i] = rows[i], rows[pivot_row]
        _, unit = ring.canon_assoc(rows[pivot_row][col])
        if unit != ring.one:
            rows[pivot_row] = [ring.mul(unit, x) for x in rows[pivot_row]]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == r:
            break
    if pivot_row < r:
        raise DomainError("matrix is rank-deficient; no Hermite form of full row count")
    # center the entries above each pivot, left to right
    for k, col in enumerate(pivot_cols):
        p = rows[k][col]
        for i in range(k):
            q, _ = ring.divmod_rounded(rows[i][col], p)
            if not ring.is_zero(q):
                rows[i] = [ring.sub(x, ring.mul(q, y)) for x, y in zip(rows[i], rows[k])]
    return SubgroupMatrix(ring, tuple(tuple(row) for row in rows))


# ---------------------------------------------------------------------------
# Minkowski-style short form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReducedRows:
    """A lattice-reduced basis of the row module, rows by increasing norm,
    plus the column permutation under which the max-norm entries sit on the
    diagonal (recorded, not applied: applying it would change the subgroup)."""

    matrix: SubgroupMatrix
    column_order: tuple[int, ...]
    diagonal: tuple[Element, ...]

    @property
    def diagonal_norms(self) -> tuple[int, ...]:
        return tuple(self.matrix.ring.norm(d) for d in self.diagonal)


def _row_sort_key(ring: EndRing, row) -> tuple:
    # norm ascending; ties broken by reversed lexicographic order so that
    # earlier-pivot rows (e.g. an identity block) keep their natural position
    return (ring.row_norm(row), tuple(-x for e in row for x in e))


def reduce_rows(M: SubgroupMatrix) -> ReducedRows:
    """Row-equivalent short basis (pairwise size-reduced), with the greedy
    diagonal column assignment of the triangular presentation."""
    ring = M.ring
    rows = [list(row) for row in hermite_normal_form(M).entries]
    r = len(rows)
    changed = True
    while changed:
        changed = False
        rows.sort(key=lambda row: _row_sort_key(ring, row))
        for i in range(r):
            ni = ring.row_norm(rows[i])
            for j in range(r):
                if i == j:
                    continue
                dot = ring.dot_conj(rows[j], rows[i])
                q = (
                    _round_ratio(ring, dot, ni)
                )
                if ring.is_zero(q):
                    continue
                cand = [ring.sub(x, ring.mul(q, y)) for x, y in zip(rows[j], rows[i])]
                if ring.row_norm(cand) < ring.row_norm(rows[j]):
                    rows[j] = cand
                    changed = True
    rows = [list(ring.canon_row(tuple(row))) for row in rows]
    rows.sort(key=lambda row: _row_sort_key(ring, row))

    column_order: list[int] = []
    diagonal: list[Element] = []
    for row in rows:
        best_col, best_norm = -1, -1
        for col in range(len(row)):
            if col in column_order:
                continue
            nv = ring.norm(row[col])
            if nv > best_norm:
                best_col, best_norm = col, nv
        column_order.append(best_col)
        diagonal.append(row[best_col])
    for col in range(len(rows[0])):
        if col not in column_order:
            column_order.append(col)
    return ReducedRows(
        SubgroupMatrix(ring, tuple(tuple(row) for row in rows)),
        tuple(column_order),
        tuple(diagonal),
    )


def _round_ratio(ring: EndRing, num: Element, den: int) -> Element:
    from .rings import _round_half_up
    return (_round_half_up(Fraction(num[0], den)), _round_half_up(Fraction(num[1], den)))


# ---------------------------------------------------------------------------
# Bounded-degree enumeration
# ---------------------------------------------------------------------------


def row_bound_for_degree(ring: EndRing, r: int, dmax: int) -> int:
    """Norm bound so every row module of degree <= dmax has a basis whose rows
    all satisfy ||row||^2 <= bound.

    r = 1: the degree IS the squared row norm.  Over Z, r = 2 uses the
    Lagrange-reduced bound prod ||b_i||^2 <= (4/3) det(Gram) with the other
    factor at least 1; r >= 3 the LLL bound 2^(r(r-1)/2).  The CM rings are
    supported at r = 1 only (no proven box constant is available here).
    """
    if r == 1:
        return dmax
    if ring.kind != "z":
        raise DomainError(
            "enumeration over the CM rings is supported at r = 1 only; "
            "degree-versus-box constants for higher rank are not available")
    if r == 2:
        return (4 * dmax + 2) // 3  # ceil(4/3 * dmax)
    return 2 ** (r * (r - 1) // 2) * dmax


def _candidate_rows(ring: EndRing, n: int, bound: int) -> list[tuple[Element, ...]]:
    """All nonzero rows of squared norm <= bound, one per unit orbit,
    lexicographically sorted."""
    per_coord = ring.elements_of_norm_at_most(bound)
    per_coord.sort(key=lambda e: ring.norm(e))
    out = []

    def extend(prefix: list[Element], budget: int):
        if len(prefix) == n:
            row = tuple(prefix)
            if any(e != (0, 0) for e in row) and ring.canon_row(row) == row:
                out.append(row)
            return
        for e in per_coord:
            ne = ring.norm(e)
            if ne > budget:
                break
            extend(prefix + [e], budget - ne)

    extend([], bound)
    out.sort()
    return out


def enumerate_matrices(ring: EndRing, n: int, r: int, dmax: int,
                       ceiling: int = 5_000_000) -> list[SubgroupMatrix]:
    """All rank-r row modules of degree <= dmax, as canonical Hermite forms,
    sorted by (degree, entries).  Refuses predictably-oversized enumerations."""
    if not 1 <= r <= n:
        raise DomainError(f"need 1 <= r <= N, got r={r}, N={n}")
    if dmax < 1:
        return []
    bound = row_bound_for_degree(ring, r, dmax)
    rows = _candidate_rows(ring, n, bound)
    work = comb(len(rows), r)
    if work > ceiling:
        raise ResourceGuardError(
            f"enumeration would scan {work} row combinations (> ceiling {ceiling}); "
            f"lower Dmax or raise the ceiling explicitly")

    found: dict[tuple, tuple[int, SubgroupMatrix]] = {}
    if ring.kind == "z" and r == 1:
        for row in rows:
            d = sum(a * a for a, _ in row)
            if 0 < d <= dmax:
                m = hermite_normal_form(SubgroupMatrix(ring, (row,)))
                found.setdefault(m.entries, (d, m))
    elif ring.kind == "z" and r == 2:
        int_rows = [tuple(a for a, _ in row) for row in rows]
        pair_cols = list(itertools.combinations(range(n), 2))
        for i, j in itertools.combinations(range(len(int_rows)), 2):
            u, v = int_rows[i], int_rows[j]
            total = 0
            for c1, c2 in pair_cols:
                minor = u[c1] * v[c2] - u[c2] * v[c1]
                if minor:
                    total += minor * minor
                    if total > dmax:
                        break
            else:
                if total:
                    m = hermite_normal_form(
                        SubgroupMatrix.from_ints(ring, (u, v)))
                    found.setdefault(m.entries, (total, m))
    else:
        for combo in itertools.combinations(rows, r):
            cand = SubgroupMatrix(ring, combo)
            try:
                d = degree_estimate(cand)
            except DomainError:
                continue
            if d <= dmax:
                m = hermite_normal_form(cand)
                found.setdefault(m.entries, (d, m))
    ordered = sorted(found.values(), key=lambda pair: (pair[0], pair[1].entries))
    return [m for _, m in ordered]


# ---------------------------------------------------------------------------
# Torsion counting and the census
# ---------------------------------------------------------------------------


def torsion_count(n_power: int, t: int) -> int:
    """Exact sum_{i=1}^{T} i^(2N): points of order dividing i number i^(2N)."""
    if n_power < 1 or t < 1:
        raise DomainError("need N >= 1 and T >= 1")
    e = 2 * n_power
    return sum(i ** e for i in range(1, t + 1))


@dataclass(frozen=True)
class CensusReport:
    ring: str
    n: int
    r: int
    dmax: int
    torsion_order_bound: int
    total_matrices: int
    degree_buckets: tuple[tuple[int, int], ...]  # (degree, count)
    torsion_total: int
    product_bound: int  # total_matrices * T^(2N+1)

    def cumulative(self) -> tuple[tuple[int, int], ...]:
        acc, out = 0, []
        for d, c in self.degree_buckets:
            acc += c
            out.append((d, acc))
        return tuple(out)


def census(ring: EndRing, n: int, r: int, dmax: int, t: int,
           ceiling: int = 5_000_000) -> CensusReport:
    """Bounded-degree census: reduced-matrix counts per degree bucket, torsion
    counts, and the product-form bound (matrix count) * T^(2N+1)."""
    matrices = enumerate_matrices(ring, n, r, dmax, ceiling)
    buckets: dict[int, int] = {}
    for m in matrices:
        d = degree_estimate(m)
        buckets[d] = buckets.get(d, 0) + 1
    return CensusReport(
        ring=ring.kind,
        n=n,
        r=r,
        dmax=dmax,
        torsion_order_bound=t,
        total_matrices=len(matrices),
        degree_buckets=tuple(sorted(buckets.items())),
        torsion_total=torsion_count(n, t),
        product_bound=len(matrices) * t ** (2 * n + 1),
    )
