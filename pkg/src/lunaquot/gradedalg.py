"""L-graded finitely presented algebras and their quotient-side computations.

A GradedRing presents A = k[t_1..t_n]/I with a grading-group degree per
variable and homogeneous relations; Spec(A) carries the corresponding
action of the diagonalizable group D_L.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .abelian import GradingGroup, GroupElement
from .groebner import Ideal, normal_form, ringmap_kernel
from .lattice import DegreeSystem, fiber_minimal_elements, kernel_hilbert_basis
from .polyring import (
    ANY_DEGREE,
    BaseField,
    PolyRing,
    Polynomial,
    homogeneous_components,
    is_homogeneous,
    monomial_degree,
)


class HomogeneityError(ValueError):
    """A relation generator mixes degrees; carries the offending components."""

    def __init__(self, generator: Polynomial, components: dict):
        self.generator = generator
        self.components = components
        degs = ", ".join(str(d) for d in components)
        super().__init__(f"relation {generator} is not homogeneous (degrees {degs})")


class NotFixedPoint(ValueError):
    """Point-local operation applied away from a fixed point."""


class InvalidPoint(ValueError):
    """Coordinates fail the defining relations."""


@dataclass(frozen=True)
class GradedRing:
    """k[t_1..t_n]/relations with an L-degree per variable."""

    group: GradingGroup
    names: tuple[str, ...]
    degrees: tuple[GroupElement, ...]
    relations: Ideal

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("one degree per variable required")
        for d in self.degrees:
            if d.group != self.group:
                raise ValueError(f"degree {d} is not in {self.group}")
        if self.relations.ring.names != self.names:
            raise ValueError("relations must live on the declared variables")
        for g in self.relations.generators:
            if is_homogeneous(g, self.degrees, self.group) is None:
                raise HomogeneityError(g, homogeneous_components(g, self.degrees, self.group))

    @property
    def ambient(self) -> PolyRing:
        return self.relations.ring

    @property
    def field(self) -> BaseField:
        return self.ambient.field

    @property
    def nvars(self) -> int:
        return len(self.names)

    def degree_of(self, p: Polynomial):
        return is_homogeneous(p, self.degrees, self.group)

    def degree_system(self) -> DegreeSystem:
        return DegreeSystem(self.group, self.degrees)

    def is_trivially_graded(self) -> bool:
        return all(d.is_zero() for d in self.degrees)

    def parse(self, text: str) -> Polynomial:
        return self.ambient.parse(text)

    def point(self, coords: Sequence) -> "RationalPoint":
        return RationalPoint(self, tuple(coords))

    def __str__(self):
        vars_part = "; ".join(f"{n}: {d}" for n, d in zip(self.names, self.degrees))
        rels = ", ".join(str(g) for g in self.relations.generators)
        body = vars_part + (f"; relations: {rels}" if rels else "")
        return "{ " + body + " }"


def graded_ring(fld: BaseField, L: GradingGroup,
                variables: Sequence[tuple[str, Sequence[int]]],
                relations: Sequence[Union[str, Polynomial]] = ()) -> GradedRing:
    """Build and validate a graded ring from literal data."""
    names = tuple(name for name, _ in variables)
    degrees = tuple(L.element(tuple(d)) for _, d in variables)
    ring = PolyRing(fld, names)
    rels = [ring.parse(r) if isinstance(r, str) else r for r in relations]
    return GradedRing(L, names, degrees, Ideal(ring, rels))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple = ()


def validate(A: GradedRing) -> ValidationReport:
    """Re-check homogeneity of every relation generator and report offenders."""
    bad = []
    for g in A.relations.generators:
        if is_homogeneous(g, A.degrees, A.group) is None:
            bad.append((g, homogeneous_components(g, A.degrees, A.group)))
    return ValidationReport(not bad, tuple(bad))


@dataclass(frozen=True)
class RationalPoint:
    """A coordinate assignment satisfying every relation; residue field k."""

    ring: GradedRing
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ring.nvars:
            raise InvalidPoint("one coordinate per variable required")
        for g in self.ring.relations.generators:
            if g.evaluate(self.coords) != self.ring.field.zero():
                raise InvalidPoint(f"relation {g} does not vanish at {self.coords}")

    def support(self) -> tuple[int, ...]:
        zero = self.ring.field.zero()
        return tuple(i for i, c in enumerate(self.coords) if c != zero)

    def support_degrees(self) -> tuple[GroupElement, ...]:
        return tuple(self.ring.degrees[i] for i in self.support())

    def is_fixed(self) -> bool:
        return all(self.ring.degrees[i].is_zero() for i in self.support())

    def __str__(self):
        return "(" + ", ".join(self.ring.field.format(c) for c in self.coords) + ")"


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PresentedSubring:
    """A subalgebra of `ambient`, presented by named generators and relations."""

    ambient: GradedRing
    generators: tuple[tuple[str, Polynomial], ...]
    relations: Ideal

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @property
    def polynomials(self) -> tuple[Polynomial, ...]:
        return tuple(p for _, p in self.generators)

    def __str__(self):
        gens = ", ".join(f"{n} = {p}" for n, p in self.generators)
        rels = ", ".join(str(g) for g in self.relations.generators) or "0"
        return f"generators [{gens}]; relations ({rels})"


def fresh_names(count: int, avoid: Sequence[str], base: str = "u") -> tuple[str, ...]:
    taken = set(avoid)
    for prefix in (base, "q", "v", "w_"):
        names = tuple(f"{prefix}{i + 1}" for i in range(count))
        if not taken.intersection(names):
            return names
    return tuple(f"{base}_{i + 1}_" for i in range(count))


def invariant_subring(A: GradedRing, step_cap: Optional[int] = None) -> PresentedSubring:
    """Present A_0 = A^G: monomial generators t^h over the Hilbert basis of the
    degree kernel, relations from the kernel of u_h -> t^h modulo A.relations.

    Generators are named u1, u2, ... along the descending lexicographic order
    of their exponent vectors, so presentations are stable across runs.
    """
    basis = kernel_hilbert_basis(A.degree_system(), step_cap=step_cap)
    exps = sorted(basis.elements, reverse=True)
    monomials = [A.ambient.monomial(h) for h in exps]
    names = fresh_names(len(monomials), A.names)
    rel = ringmap_kernel(monomials, A.relations, source_names=names) if monomials \
        else Ideal(PolyRing(A.field, ()), [])
    return PresentedSubring(A, tuple(zip(names, monomials)), rel)


def coinvariants(A: GradedRing) -> GradedRing:
    """A_G = A/(t_i : deg t_i != 0): the coordinate ring of the fixed points."""
    keep = [i for i in range(A.nvars) if A.degrees[i].is_zero()]
    return _kill_variables(A, keep)


def _kill_variables(A: GradedRing, keep: Sequence[int],
                    regrade: Optional[Sequence[GroupElement]] = None) -> GradedRing:
    """Quotient of A by the variables outside `keep`; survivors keep their names."""
    sub = PolyRing(A.field, tuple(A.names[i] for i in keep))
    images = []
    pos = {i: j for j, i in enumerate(keep)}
    for i in range(A.nvars):
        images.append(sub.variable(pos[i]) if i in pos else sub.zero())
    rels = []
    for g in A.relations.generators:
        img = g.compose(sub, images)
        if not img.is_zero():
            rels.append(img)
    degrees = tuple(regrade) if regrade is not None \
        else tuple(A.degrees[i] for i in keep)
    return GradedRing(A.group, sub.names, degrees, Ideal(sub, rels))


def graded_piece(A: GradedRing, n: GroupElement,
                 step_cap: Optional[int] = None) -> tuple[Polynomial, ...]:
    """Monomials t^h generating A_n as an A_0-module (minimal fiber elements)."""
    hs = fiber_minimal_elements(A.degree_system(), n, step_cap=step_cap)
    return tuple(A.ambient.monomial(h) for h in hs)


# ---------------------------------------------------------------------------
# Point-local operations at fixed rational points
# ---------------------------------------------------------------------------

def fixed_point_max_ideal(A: GradedRing, x: RationalPoint) -> Ideal:
    """The homogeneous maximal ideal m_x at a fixed rational point."""
    if x.ring != A:
        raise InvalidPoint("point lives on a different ring")
    if not x.is_fixed():
        raise NotFixedPoint("point is not a fixed point")
    gens = []
    for i in range(A.nvars):
        v = A.ambient.variable(i)
        if A.degrees[i].is_zero():
            gens.append(v - A.ambient.constant(x.coords[i]))
        else:
            gens.append(v)
    return Ideal(A.ambient, gens)


def minimal_homogeneous_generators(A: GradedRing, M_gens: Sequence[Polynomial],
                                   x: RationalPoint) -> tuple[tuple[Polynomial, ...], int]:
    """Prune a homogeneous generating set down to minimal cardinality at x.

    Discards g whenever g lies in m_x*(M) + (remaining generators); by graded
    Nakayama the surviving count is the rank of M/m_x M, independent of the
    pruning order.
    """
    for g in M_gens:
        if is_homogeneous(g, A.degrees, A.group) is None:
            raise HomogeneityError(g, homogeneous_components(g, A.degrees, A.group))
    mx = fixed_point_max_ideal(A, x).generators
    current = [g for g in M_gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(current)):
            g = current[i]
            others = current[:i] + current[i + 1:]
            test = list(A.relations.generators) + others
            test += [m * h for m in mx for h in current]
            if normal_form(g, Ideal(A.ambient, test)).is_zero():
                current.pop(i)
                changed = True
                break
    return tuple(current), len(current)


@dataclass(frozen=True)
class CartierResult:
    principal: bool
    generator: Optional[Polynomial]
    rank: int

    def __str__(self):
        if self.principal:
            return f"principal({self.generator})"
        return f"not_principal(rank {self.rank})"


def cartier_at_fixed_point(A: GradedRing, I: Ideal, x: RationalPoint) -> CartierResult:
    """Decide whether V(I) is cut by one homogeneous element at the fixed point x.

    A is assumed to be a domain (caller hypothesis, not verified).
    """
    if I.ring != A.ambient:
        raise ValueError("ideal lives in a different ambient ring")
    gens, count = minimal_homogeneous_generators(A, I.generators, x)
    if count == 1:
        return CartierResult(True, gens[0], 1)
    return CartierResult(False, None, count)
