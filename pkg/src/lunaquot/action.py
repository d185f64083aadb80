"""Geometric layer for one action: quotients, fixed loci, stabilizers,
orbit tests, inertia strata, X_+/X_- charts and GIT charts."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .abelian import (
    GradingGroup,
    GroupElement,
    QuotientMap,
    Subgroup,
    quotient_group,
    subgroup_contains,
    subgroup_equal,
    subgroup_from_generators,
)
from .gradedalg import (
    GradedRing,
    InvalidPoint,
    PresentedSubring,
    RationalPoint,
    _kill_variables,
    fresh_names,
    invariant_subring,
)
from .groebner import Ideal, subalgebra_membership
from .lattice import monoid_is_group, negative_cutoff_monomials
from .polyring import ANY_DEGREE, PolyRing, Polynomial


class WrongGradingGroup(ValueError):
    """Operation requires a Z-grading."""


def quotient_presentation(A: GradedRing, step_cap: Optional[int] = None) -> GradedRing:
    """X//G = Spec(A_0) as a trivially graded ring.

    For a trivially graded input the ring itself is returned unchanged.
    """
    if A.is_trivially_graded():
        return A
    inv = invariant_subring(A, step_cap=step_cap)
    zero = A.group.zero()
    return GradedRing(A.group, inv.names, tuple(zero for _ in inv.names), inv.relations)


def fixed_locus(A: GradedRing, Lprime: Subgroup) -> GradedRing:
    """X^{G'} for G' = D_{L/L'}: kill variables whose degree leaves L'."""
    if Lprime.ambient != A.group:
        raise ValueError("subgroup of a different grading group")
    keep = [i for i in range(A.nvars) if subgroup_contains(Lprime, A.degrees[i])]
    return _kill_variables(A, keep)


@dataclass(frozen=True)
class StabilizerResult:
    """L_x and the character group L/L_x of the stabilizer G_x = D_{L/L_x}."""

    support_subgroup: Subgroup
    stabilizer_characters: QuotientMap

    def is_trivial(self) -> bool:
        return self.stabilizer_characters.group.is_trivial()

    def is_full(self) -> bool:
        return self.stabilizer_characters.group == self.support_subgroup.ambient


def stabilizer(A: GradedRing, x: RationalPoint) -> StabilizerResult:
    """Stabilizer from the support degrees: L_x = <deg t_i : x_i != 0>."""
    if x.ring != A:
        raise InvalidPoint("point lives on a different ring")
    Lx = subgroup_from_generators(A.group, list(x.support_degrees()))
    return StabilizerResult(Lx, quotient_group(A.group, Lx))


def is_special(A: GradedRing, x: RationalPoint, step_cap: Optional[int] = None) -> bool:
    """True iff the orbit of x is closed in its quotient fiber.

    The orbit closure is Spec k[M_x] for the monoid M_x generated by the
    support degrees; the orbit is closed exactly when M_x is already a group.
    """
    if x.ring != A:
        raise InvalidPoint("point lives on a different ring")
    return monoid_is_group(A.group, list(x.support_degrees()), step_cap=step_cap)


# ---------------------------------------------------------------------------
# Inertia stratification
# ---------------------------------------------------------------------------

def inertia_stratum_of(A: GradedRing, x: RationalPoint) -> Subgroup:
    """Canonical stratum label: the support subgroup L_x."""
    return stabilizer(A, x).support_subgroup


def candidate_stratum_labels(A: GradedRing) -> list[Subgroup]:
    """All subgroups generated by subsets of variable degrees, deduplicated."""
    labels: list[Subgroup] = []
    seen = set()
    for size in range(A.nvars + 1):
        for idxs in combinations(range(A.nvars), size):
            S = subgroup_from_generators(A.group, [A.degrees[i] for i in idxs])
            key = S.canonical_form
            if key not in seen:
                seen.add(key)
                labels.append(S)
    return labels


def inertia_stratum_locus(A: GradedRing, Lprime: Subgroup) -> tuple[Ideal, list[Ideal]]:
    """The stratum with stabilizer exactly D_{L/L'}: closed part X^{G'} minus
    the fixed loci of every strictly larger stabilizer that occurs."""
    proj = quotient_group(A.group, Lprime)
    closed = Ideal(A.ambient, [A.ambient.variable(i) for i in range(A.nvars)
                               if not proj(A.degrees[i]).is_zero()])
    removed = []
    for S in candidate_stratum_labels(A):
        # larger stabilizer means strictly smaller support subgroup
        if subgroup_equal(S, Lprime):
            continue
        if all(subgroup_contains(Lprime, g) for g in S.generators):
            ideal = Ideal(A.ambient, [A.ambient.variable(i) for i in range(A.nvars)
                                      if not subgroup_contains(S, A.degrees[i])])
            removed.append(ideal)
    return closed, removed


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """The localization X_f with the presentation of its invariants (A_f)_0."""

    inverted_element: Polynomial
    chart_invariants: PresentedSubring


def localized_invariants(A: GradedRing, f: Polynomial,
                         step_cap: Optional[int] = None) -> PresentedSubring:
    """Present (A_f)_0 by inverting the homogeneous element f.

    Adjoins w with deg w = -deg f and relation w*f = 1, runs the invariant
    presentation on the extended ring, then prunes generators expressible in
    the remaining ones and recomputes the relation kernel, so charts come out
    on an irredundant generating set.
    """
    if f.ring != A.ambient:
        raise ValueError("element lives in a different ring")
    deg = A.degree_of(f)
    if deg is None:
        raise ValueError(f"{f} is not homogeneous")
    if f.is_zero():
        raise ValueError("cannot invert zero")
    if deg is ANY_DEGREE:
        deg = A.group.zero()
    wname = fresh_names(1, A.names, base="w")[0]
    ext_ring = PolyRing(A.field, A.names + (wname,))
    pad_images = [ext_ring.variable(i) for i in range(A.nvars)]
    lifted_rels = [g.compose(ext_ring, pad_images) for g in A.relations.generators]
    w = ext_ring.variable(A.nvars)
    lifted_rels.append(w * f.compose(ext_ring, pad_images) - ext_ring.one())
    ext = GradedRing(A.group, ext_ring.names, A.degrees + (-deg,),
                     Ideal(ext_ring, lifted_rels))
    inv = invariant_subring(ext, step_cap=step_cap)
    return _prune_presentation(ext, inv)


def _prune_presentation(ext: GradedRing, inv: PresentedSubring) -> PresentedSubring:
    """Drop generators expressible in the remaining ones; recompute relations."""
    from .groebner import ringmap_kernel

    kept = list(inv.generators)
    changed = True
    while changed:
        changed = False
        for i in range(len(kept)):
            others = [p for j, (_, p) in enumerate(kept) if j != i]
            if not others:
                expr = subalgebra_membership(
                    kept[i][1], [ext.ambient.one()], ext.relations)
            else:
                expr = subalgebra_membership(kept[i][1], others, ext.relations)
            if expr is not None:
                kept.pop(i)
                changed = True
                break
    names = fresh_names(len(kept), ext.names)
    polys = [p for _, p in kept]
    if polys:
        rel = ringmap_kernel(polys, ext.relations, source_names=names)
    else:
        rel = Ideal(PolyRing(ext.field, ()), [])
    return PresentedSubring(ext, tuple(zip(names, polys)), rel)


def x_plus_minus(A: GradedRing, sign: str = "+",
                 step_cap: Optional[int] = None) -> tuple[tuple[Polynomial, ...], list[Chart]]:
    """X_+ = X \\ V(A_-) (resp. X_- for sign "-") for a Z-grading.

    Returns the monomial generators of the cut ideal and one chart per
    generator; the charts form a strongly equivariant covering of X_+/X_-.
    """
    if A.group != GradingGroup(1):
        raise WrongGradingGroup("X_+/X_- requires the grading group Z")
    degs = [d.free_part[0] for d in A.degrees]
    if sign == "-":
        degs = [-d for d in degs]
    elif sign != "+":
        raise ValueError("sign must be '+' or '-'")
    cut = negative_cutoff_monomials(degs, step_cap=step_cap)
    gens = tuple(A.ambient.monomial(h) for h in cut)
    if not gens:
        # A_minus = 0: the cut ideal is empty and X_+ is all of X
        chart = Chart(A.ambient.one(), localized_invariants(A, A.ambient.one(), step_cap))
        return (), [chart]
    charts = [Chart(g, localized_invariants(A, g, step_cap=step_cap)) for g in gens]
    return gens, charts


def default_kmax(A: GradedRing) -> int:
    """Heuristic truncation depth: max torsion order times max |free degree|."""
    tors = max(A.group.torsion_orders, default=1)
    free = max((abs(c) for d in A.degrees for c in d.free_part), default=1)
    return max(tors * max(free, 1), 1)


def git_charts(A: GradedRing, m: GroupElement, k_max: Optional[int] = None,
               step_cap: Optional[int] = None) -> list[Chart]:
    """Best-effort chart list for the semistable locus of the character m.

    Enumerates the minimal monomials of degree k*m for 1 <= k <= k_max and
    localizes at each; this is a truncation of the semistable covering, not a
    completeness guarantee.
    """
    if m.group != A.group:
        raise ValueError("character in a different group")
    if k_max is None:
        k_max = default_kmax(A)
    if m.is_zero():
        one = A.ambient.one()
        return [Chart(one, localized_invariants(A, one, step_cap=step_cap))]
    from .lattice import fiber_minimal_elements

    seen: set[tuple[int, ...]] = set()
    vectors: list[tuple[int, ...]] = []
    for k in range(1, k_max + 1):
        for h in fiber_minimal_elements(A.degree_system(), m.scale(k), step_cap=step_cap):
            if h not in seen:
                seen.add(h)
                vectors.append(h)
    minimal = [h for h in vectors
               if not any(g != h and all(a <= b for a, b in zip(g, h)) for g in vectors)]
    minimal.sort()
    return [Chart(A.ambient.monomial(h),
                  localized_invariants(A, A.ambient.monomial(h), step_cap=step_cap))
            for h in minimal]
