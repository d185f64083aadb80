"""Linear Diophantine solving over the natural numbers with torsion constraints.

The single solver core is a Contejean-Devie completion for homogeneous
systems A*x = 0 over N^n: a breadth-first frontier of candidate vectors,
expanded along coordinates whose column defect points against the current
defect, pruned against the minimal solutions found so far.  Torsion
congruences become exact rows through a pair of slack columns (+d, -d);
inhomogeneous systems get one extra column carrying the negated target,
capped at multiplicity one.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .abelian import GradingGroup, GroupElement, Subgroup, subgroup_from_generators

DEFAULT_STEP_CAP = 10_000_000
_step_cap = DEFAULT_STEP_CAP


class ResourceCapError(RuntimeError):
    """The completion frontier exceeded the configured step cap."""


def set_step_cap(cap: int) -> None:
    global _step_cap
    if cap < 1:
        raise ValueError("step cap must be positive")
    _step_cap = cap


def get_step_cap() -> int:
    return _step_cap


@dataclass(frozen=True)
class DegreeSystem:
    """The monoid map phi: N^n -> L sending e_i to degs[i]."""

    L: GradingGroup
    degs: tuple[GroupElement, ...]

    def __post_init__(self):
        for d in self.degs:
            if d.group != self.L:
                raise ValueError(f"degree {d} is not in {self.L}")

    @property
    def nvars(self) -> int:
        return len(self.degs)

    def apply(self, vec: Sequence[int]) -> GroupElement:
        acc = self.L.zero()
        for a, d in zip(vec, self.degs):
            if a:
                acc = acc + d.scale(a)
        return acc


@dataclass(frozen=True)
class HilbertBasis:
    elements: tuple[tuple[int, ...], ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


# ---------------------------------------------------------------------------
# Contejean-Devie completion
# ---------------------------------------------------------------------------

def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _minimal_solutions(columns: list[tuple[int, ...]], cap_index: Optional[int] = None,
                       step_cap: Optional[int] = None) -> list[tuple[int, ...]]:
    """Minimal nonzero solutions of sum_i x_i * columns[i] = 0 over N^n.

    When cap_index is given, that coordinate never grows beyond 1; the
    completeness of the search is preserved for solutions obeying the cap
    because every node on a path to a minimal solution is dominated by it.
    """
    n = len(columns)
    cap = step_cap if step_cap is not None else _step_cap
    minimals: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    frontier: deque[tuple[tuple[int, ...], tuple[int, ...]]] = deque()
    zero_defect = tuple(0 for _ in columns[0]) if columns else ()
    for i in range(n):
        vec = tuple(1 if j == i else 0 for j in range(n))
        frontier.append((vec, columns[i]))
        seen.add(vec)
    steps = 0
    while frontier:
        vec, defect = frontier.popleft()
        if any(all(m[j] <= vec[j] for j in range(n)) for m in minimals):
            continue
        if not any(defect):
            minimals.append(vec)
            continue
        for i in range(n):
            if cap_index is not None and i == cap_index and vec[i] >= 1:
                continue
            if _dot(defect, columns[i]) >= 0:
                continue
            steps += 1
            if steps > cap:
                raise ResourceCapError(
                    f"completion exceeded {cap} frontier expansions; raise the step cap")
            child = tuple(v + 1 if j == i else v for j, v in enumerate(vec))
            if child in seen:
                continue
            if any(all(m[j] <= child[j] for j in range(n)) for m in minimals):
                continue
            seen.add(child)
            frontier.append((child, tuple(a + b for a, b in zip(defect, columns[i]))))
    return minimals


def _system_columns(D: DegreeSystem) -> tuple[list[tuple[int, ...]], int]:
    """Columns of the exact Z-system for phi(a) = 0; returns (columns, n_real).

    Row layout: free-rank rows first, then one congruence row per torsion
    factor.  Each torsion factor contributes two slack columns (+d, -d).
    """
    L = D.L
    r = L.free_rank
    s = len(L.torsion_orders)
    nrows = r + s
    cols: list[tuple[int, ...]] = []
    for d in D.degs:
        col = list(d.free_part) + list(d.torsion_part)
        cols.append(tuple(col))
    for k, dk in enumerate(L.torsion_orders):
        plus = [0] * nrows
        plus[r + k] = dk
        cols.append(tuple(plus))
        minus = [0] * nrows
        minus[r + k] = -dk
        cols.append(tuple(minus))
    return cols, len(D.degs)


def _project_minimalize(solutions: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    projected = sorted({tuple(sol[:n]) for sol in solutions})
    projected = [p for p in projected if any(p)]
    out = []
    for p in projected:
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in projected):
            out.append(p)
    return out


def kernel_hilbert_basis(D: DegreeSystem, step_cap: Optional[int] = None) -> HilbertBasis:
    """Minimal generating set of {a in N^n : sum a_i deg_i = 0 in L}.

    The solution monoid is saturated in N^n, so its unique minimal generating
    set is the set of componentwise-minimal nonzero solutions.
    """
    cols, n = _system_columns(D)
    if n == 0:
        return HilbertBasis(())
    sols = _minimal_solutions(cols, step_cap=step_cap)
    return HilbertBasis(tuple(sorted(_project_minimalize(sols, n))))


def fiber_minimal_elements(D: DegreeSystem, n_elt: GroupElement,
                           step_cap: Optional[int] = None) -> tuple[tuple[int, ...], ...]:
    """Componentwise-minimal elements of the fiber phi^{-1}(n_elt); may be empty."""
    if n_elt.group != D.L:
        raise ValueError("target degree in the wrong group")
    if n_elt.is_zero():
        return ((0,) * D.nvars,)
    cols, n = _system_columns(D)
    target = list(n_elt.free_part) + list(n_elt.torsion_part)
    cols.append(tuple(-t for t in target))
    z_index = len(cols) - 1
    sols = _minimal_solutions(cols, cap_index=z_index, step_cap=step_cap)
    with_z = [s for s in sols if s[z_index] == 1]
    return tuple(sorted(_project_minimalize(with_z, n)))


def fiber_is_nonempty(D: DegreeSystem, n_elt: GroupElement,
                      step_cap: Optional[int] = None) -> bool:
    return bool(fiber_minimal_elements(D, n_elt, step_cap=step_cap))


def monoid_is_group(L: GradingGroup, S: Sequence[GroupElement],
                    step_cap: Optional[int] = None) -> bool:
    """True iff the submonoid of L generated by S is a group.

    It suffices that -s lies in the monoid for every generator s; each test
    is an N-solvability instance over the degree system S.
    """
    D = DegreeSystem(L, tuple(S))
    for s in S:
        if s.is_zero():
            continue
        if not fiber_is_nonempty(D, -s, step_cap=step_cap):
            return False
    return True


def support_subgroup(L: GradingGroup, S: Sequence[GroupElement]) -> Subgroup:
    return subgroup_from_generators(L, list(S))


def negative_cutoff_monomials(degs: Sequence[int],
                              step_cap: Optional[int] = None) -> tuple[tuple[int, ...], ...]:
    """Minimal exponent vectors a with sum a_i degs_i <= -1 (Z-grading only).

    Solves the slack equation sum a_i degs_i + s = -1 over N^(n+1) and
    projects away the slack.
    """
    n = len(degs)
    if not any(d < 0 for d in degs):
        return ()
    cols: list[tuple[int, ...]] = [(int(d),) for d in degs]
    cols.append((1,))   # slack
    cols.append((1,))   # target column: z*1 = -(-1)
    z_index = n + 1
    sols = _minimal_solutions(cols, cap_index=z_index, step_cap=step_cap)
    with_z = [s for s in sols if s[z_index] == 1]
    return tuple(sorted(_project_minimalize(with_z, n)))
