"""Finitely generated abelian groups in Smith normal form.

A grading group is Z^r + Z/d_1 + ... + Z/d_s with d_1 | d_2 | ... | d_s.
Subgroups are canonicalized through the Hermite normal form of their
preimage lattice in Z^(r+s), quotients through the Smith normal form of
the same lattice.  All arithmetic is arbitrary-precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence


class AmbientMismatch(ValueError):
    """Operands live in different grading groups."""


def _gcd_chain_normalize(orders: Sequence[int]) -> tuple[int, ...]:
    for d in orders:
        if d < 2:
            raise ValueError(f"torsion order {d} must be >= 2")
    for a, b in zip(orders, orders[1:]):
        if b % a != 0:
            raise ValueError(f"torsion orders {list(orders)} do not form a divisibility chain")
    return tuple(orders)


@dataclass(frozen=True)
class GradingGroup:
    """L = Z^free_rank + Z/d_1 + ... + Z/d_s, the character group of D_L."""

    free_rank: int
    torsion_orders: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion_orders", _gcd_chain_normalize(tuple(self.torsion_orders)))

    @property
    def arity(self) -> int:
        return self.free_rank + len(self.torsion_orders)

    def element(self, coords: Sequence[int]) -> "GroupElement":
        if len(coords) != self.arity:
            raise ValueError(f"expected {self.arity} coordinates, got {len(coords)}")
        r = self.free_rank
        free = tuple(int(c) for c in coords[:r])
        tors = tuple(int(c) % d for c, d in zip(coords[r:], self.torsion_orders))
        return GroupElement(self, free, tors)

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.arity)

    def is_trivial(self) -> bool:
        return self.arity == 0

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion_orders]
        return ", ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: GradingGroup
    free_part: tuple[int, ...]
    torsion_part: tuple[int, ...]

    def _check(self, other: "GroupElement"):
        if self.group != other.group:
            raise AmbientMismatch(f"elements of {self.group} and {other.group}")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        free = tuple(a + b for a, b in zip(self.free_part, other.free_part))
        tors = tuple((a + b) % d for a, b, d in
                     zip(self.torsion_part, other.torsion_part, self.group.torsion_orders))
        return GroupElement(self.group, free, tors)

    def __neg__(self) -> "GroupElement":
        free = tuple(-a for a in self.free_part)
        tors = tuple((-a) % d for a, d in zip(self.torsion_part, self.group.torsion_orders))
        return GroupElement(self.group, free, tors)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scale(self, n: int) -> "GroupElement":
        free = tuple(n * a for a in self.free_part)
        tors = tuple((n * a) % d for a, d in zip(self.torsion_part, self.group.torsion_orders))
        return GroupElement(self.group, free, tors)

    def is_zero(self) -> bool:
        return not any(self.free_part) and not any(self.torsion_part)

    def coords(self) -> tuple[int, ...]:
        return self.free_part + self.torsion_part

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords()) + ")"


def element_add(a: GroupElement, b: GroupElement) -> GroupElement:
    """Componentwise sum with torsion reduction; ambients must agree."""
    return a + b


# ---------------------------------------------------------------------------
# Integer matrix normal forms.  Rows span the lattice under consideration.
# ---------------------------------------------------------------------------

def hermite_normal_form(rows: Iterable[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """Row-style HNF of the lattice spanned by `rows` inside Z^ncols.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    are dropped.  The result depends only on the spanned lattice, which makes
    it a canonical form.
    """
    mat = [list(map(int, row)) for row in rows if any(row)]
    out: list[list[int]] = []
    col = 0
    while col < ncols and mat:
        live = [row for row in mat if row[col] != 0]
        rest = [row for row in mat if row[col] == 0]
        if not live:
            mat = rest
            col += 1
            continue
        # Euclid on the current column until a single nonzero entry remains.
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            a = live[0]
            for row in live[1:]:
                q = row[col] // a[col]
                for j in range(col, ncols):
                    row[j] -= q * a[j]
            rest.extend(row for row in live[1:] if row[col] == 0 and any(row))
            live = [a] + [row for row in live[1:] if row[col] != 0]
        pivot_row = live[0]
        if pivot_row[col] < 0:
            pivot_row = [-v for v in pivot_row]
        out.append(pivot_row)
        mat = [row for row in rest if any(row)]
        col += 1
    # Reduce entries above each pivot.
    for i in range(len(out) - 1, -1, -1):
        pcol = next(j for j, v in enumerate(out[i]) if v != 0)
        piv = out[i][pcol]
        for k in range(i):
            q = out[k][pcol] // piv
            if q:
                out[k] = [a - q * b for a, b in zip(out[k], out[i])]
    return tuple(tuple(row) for row in out)


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int):
    """Return (diag, V) with U*M*V = D for the row lattice M inside Z^ncols.

    Only the right transform V is returned: x |-> x*V carries Z^ncols
    isomorphically onto coordinates in which the lattice is diagonal with
    entries diag (a divisibility chain, zeros trailing).
    """
    m = len(rows)
    a = [list(map(int, row)) for row in rows]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_op(j1, j2, q):
        # column j2 -= q * column j1 on A and V
        for row in a:
            row[j2] -= q * row[j1]
        for row in v:
            row[j2] -= q * row[j1]

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def col_negate(j):
        for row in a:
            row[j] = -row[j]
        for row in v:
            row[j] = -row[j]

    def row_op(i1, i2, q):
        a[i2] = [x - q * y for x, y in zip(a[i2], a[i1])]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]

    t = 0
    while t < min(m, ncols):
        # smallest nonzero pivot in the remaining block, first occurrence
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(t, i, q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(t, j, q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            col_negate(t)
        # enforce divisibility against the rest of the block
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad:
            row_op(bad[0], t, -1)  # add row bad[0] to row t
            continue
        t += 1
    diag = [a[i][i] for i in range(min(m, ncols))]
    while diag and diag[-1] == 0:
        diag.pop()
    return tuple(diag), tuple(tuple(row) for row in v)


# ---------------------------------------------------------------------------
# Subgroups and quotients.
# ---------------------------------------------------------------------------

def _lift_rows(group: GradingGroup, gens: Sequence[GroupElement]) -> list[list[int]]:
    """Generators of the preimage lattice of <gens> in Z^(r+s)."""
    n = group.arity
    r = group.free_rank
    rows = [list(g.coords()) for g in gens]
    for k, d in enumerate(group.torsion_orders):
        row = [0] * n
        row[r + k] = d
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Subgroup:
    ambient: GradingGroup
    generators: tuple[GroupElement, ...] = field(compare=False)
    canonical_form: tuple[tuple[int, ...], ...] = ()

    def __str__(self):
        if not self.generators:
            return "<0>"
        return "<" + "; ".join(str(g) for g in self.generators) + ">"


def subgroup_from_generators(L: GradingGroup, gens: Sequence[GroupElement]) -> Subgroup:
    """Canonical subgroup spanned by `gens` together with the torsion relations."""
    for g in gens:
        if g.group != L:
            raise AmbientMismatch(f"generator {g} is not in {L}")
    hnf = hermite_normal_form(_lift_rows(L, gens), L.arity)
    return Subgroup(L, tuple(gens), hnf)


def subgroup_contains(S: Subgroup, e: GroupElement) -> bool:
    """Lattice membership by back-substitution against the canonical form."""
    if e.group != S.ambient:
        raise AmbientMismatch(f"{e} is not in {S.ambient}")
    vec = list(e.coords())
    for row in S.canonical_form:
        pcol = next(j for j, v in enumerate(row) if v != 0)
        if vec[pcol] % row[pcol] == 0:
            q = vec[pcol] // row[pcol]
            if q:
                vec = [a - q * b for a, b in zip(vec, row)]
    return not any(vec)


def subgroup_equal(S1: Subgroup, S2: Subgroup) -> bool:
    if S1.ambient != S2.ambient:
        raise AmbientMismatch("subgroups of different groups")
    return S1.canonical_form == S2.canonical_form


def full_subgroup(L: GradingGroup) -> Subgroup:
    gens = [L.element(tuple(1 if j == i else 0 for j in range(L.arity))) for i in range(L.arity)]
    return subgroup_from_generators(L, gens)


@dataclass(frozen=True)
class QuotientMap:
    """L/S in Smith normal form together with the projection L -> L/S."""

    source: GradingGroup
    group: GradingGroup
    _transform: tuple[tuple[int, ...], ...]
    _diag: tuple[int, ...]

    def __call__(self, e: GroupElement) -> GroupElement:
        if e.group != self.source:
            raise AmbientMismatch(f"{e} is not in {self.source}")
        x = e.coords()
        n = self.source.arity
        y = [sum(x[i] * self._transform[i][j] for i in range(n)) for j in range(n)]
        free = [y[j] for j in range(len(self._diag), n)]
        tors = [y[j] % d for j, d in enumerate(self._diag) if d >= 2]
        return self.group.element(tuple(free) + tuple(tors))


def quotient_group(L: GradingGroup, S: Subgroup) -> QuotientMap:
    """Present L/S in Smith normal form; the projection kills exactly S."""
    if S.ambient != L:
        raise AmbientMismatch("subgroup of a different group")
    rows = [list(r) for r in S.canonical_form]
    if not rows:
        rows = [[0] * L.arity]
    diag, v = smith_normal_form(rows, L.arity)
    free_rank = L.arity - len(diag)
    torsion = tuple(d for d in diag if d >= 2)
    return QuotientMap(L, GradingGroup(free_rank, torsion), v, diag)


def parse_group(text: str) -> GradingGroup:
    """Parse a group literal such as `Z, Z, Z/2`."""
    free = 0
    torsion = []
    parts = [p.strip() for p in text.split(",") if p.strip()]
    for part in parts:
        if part == "Z":
            if torsion:
                raise ValueError("free factors must precede torsion factors")
            free += 1
        elif part.startswith("Z/"):
            torsion.append(int(part[2:]))
        else:
            raise ValueError(f"bad group factor {part!r}")
    return GradingGroup(free, tuple(torsion))
