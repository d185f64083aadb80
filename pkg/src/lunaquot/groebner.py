"""Buchberger engine: reduced bases, elimination, kernels, syzygies, dimension.

S-pairs are processed in normal strategy (smallest lcm first) with the
product and chain criteria.  All computations are deterministic: given the
same generators and order, the reduced basis comes out byte-identical.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .polyring import (
    GREVLEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    block_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

EMPTY_SCHEME = "empty"


class Ideal:
    """Finitely generated ideal with a per-order cache of reduced bases."""

    __slots__ = ("ring", "generators", "_cache", "_lock")

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial]):
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator outside the ambient ring")
        self.ring = ring
        self.generators = tuple(g for g in generators if not g.is_zero())
        self._cache: dict[MonomialOrder, tuple[Polynomial, ...]] = {}
        self._lock = threading.Lock()

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and \
            self.generators == other.generators

    def __hash__(self):
        return hash((self.ring, self.generators))

    def basis(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        with self._lock:
            cached = self._cache.get(order)
        if cached is not None:
            return cached
        basis = reduced_groebner_basis(self.generators, self.ring, order)
        with self._lock:
            self._cache.setdefault(order, basis)
        return basis

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators) or '0'})"


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------

def reduce_poly(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of p on division by `basis`; fully reduced."""
    if not basis:
        return p
    ring = p.ring
    fld = ring.field
    leads = [g.leading(order) for g in basis]
    work = dict(p.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        hit = None
        for g, (lm, lc) in zip(basis, leads):
            if mono_divides(lm, m):
                hit = (g, lm, lc)
                break
        if hit is None:
            remainder[m] = c
            continue
        g, lm, lc = hit
        factor = mono_div(m, lm)
        scale = fld.div(c, lc)
        zero = fld.zero()
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            key = mono_mul(gm, factor)
            val = fld.sub(work.get(key, zero), fld.mul(scale, gc))
            if val == zero:
                work.pop(key, None)
            else:
                work[key] = val
    return Polynomial(ring, remainder)


def divide_with_quotients(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder):
    """Return (quotients, remainder) with p = sum q_i * basis_i + remainder."""
    ring = p.ring
    fld = ring.field
    zero = fld.zero()
    leads = [g.leading(order) for g in basis]
    work = dict(p.terms)
    remainder: dict = {}
    quots: list[dict] = [dict() for _ in basis]
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        hit = None
        for i, (g, lt) in enumerate(zip(basis, leads)):
            if lt is not None and mono_divides(lt[0], m):
                hit = (i, g, lt[0], lt[1])
                break
        if hit is None:
            remainder[m] = c
            continue
        i, g, lm, lc = hit
        factor = mono_div(m, lm)
        scale = fld.div(c, lc)
        q = quots[i]
        q[factor] = fld.add(q.get(factor, zero), scale)
        for gm, gc in g.terms.items():
            if gm == lm:
                continue
            key = mono_mul(gm, factor)
            val = fld.sub(work.get(key, zero), fld.mul(scale, gc))
            if val == zero:
                work.pop(key, None)
            else:
                work[key] = val
    return [ring.from_terms(q) for q in quots], Polynomial(ring, remainder)


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ring = f.ring
    fld = ring.field
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    lcm = mono_lcm(fm, gm)
    mf = ring.monomial(mono_div(lcm, fm), fld.inv(fc))
    mg = ring.monomial(mono_div(lcm, gm), fld.inv(gc))
    return mf * f - mg * g


def buchberger(gens: Sequence[Polynomial], ring: PolyRing, order: MonomialOrder) -> list[Polynomial]:
    """A (non-reduced) Groebner basis; generators are made monic on entry."""
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    lms = [g.leading(order)[0] for g in basis]
    pairs: list = []
    done: set[tuple[int, int]] = set()

    def push(i, j):
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(pairs, (order.key(lcm), i, j, lcm))

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push(i, j)

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        done.add((i, j))
        # product criterion
        if lcm == mono_mul(lms[i], lms[j]):
            continue
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j) or not mono_divides(lms[k], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in done and b in done:
                skip = True
                break
        if skip:
            continue
        rem = reduce_poly(_spoly(basis[i], basis[j], order), basis, order)
        if rem.is_zero():
            continue
        rem = rem.monic(order)
        basis.append(rem)
        lms.append(rem.leading(order)[0])
        new = len(basis) - 1
        for k in range(new):
            push(k, new)
    return basis


def reduced_groebner_basis(gens: Sequence[Polynomial], ring: PolyRing,
                           order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
    """The unique reduced basis: minimal, autoreduced, monic, sorted by LM."""
    basis = buchberger(gens, ring, order)
    if not basis:
        return ()
    # minimalize: drop entries whose leading monomial is divisible by another's
    lms = [g.leading(order)[0] for g in basis]
    minimal = []
    for i in range(len(basis)):
        lm = lms[i]
        dominated = False
        for j in range(len(basis)):
            if j == i:
                continue
            if mono_divides(lms[j], lm) and (lms[j] != lm or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(basis[i])
    # autoreduce tails
    reduced = list(minimal)
    changed = True
    while changed:
        changed = False
        for i in range(len(reduced)):
            others = reduced[:i] + reduced[i + 1:]
            r = reduce_poly(reduced[i], others, order)
            r = r.monic(order)
            if r != reduced[i]:
                reduced[i] = r
                changed = True
    reduced = [g for g in reduced if not g.is_zero()]
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]))
    return tuple(reduced)


# ---------------------------------------------------------------------------
# Ideal-level operations
# ---------------------------------------------------------------------------

def groebner_basis(I: Ideal, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
    return I.basis(order)


def normal_form(p: Polynomial, I: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    return reduce_poly(p, I.basis(order), order)


def ideal_contains(I: Ideal, p: Polynomial) -> bool:
    return normal_form(p, I).is_zero()


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    return all(ideal_contains(J, g) for g in I.generators) and \
        all(ideal_contains(I, g) for g in J.generators)


def is_trivial_ideal(I: Ideal) -> bool:
    basis = I.basis()
    return len(basis) == 1 and basis[0].total_degree() == 0


def eliminate(I: Ideal, keep: Sequence[str]) -> Ideal:
    """I intersected with k[keep], presented in the subring on `keep`."""
    ring = I.ring
    keep = list(keep)
    for name in keep:
        if name not in ring.names:
            raise ValueError(f"unknown variable {name!r}")
    drop = [n for n in ring.names if n not in keep]
    if not drop:
        return Ideal(ring, I.generators)
    # reorder: eliminated block first
    new_names = tuple(drop) + tuple(keep)
    big = PolyRing(ring.field, new_names)
    perm = [ring.names.index(n) for n in new_names]
    moved = []
    for g in I.generators:
        terms = {}
        for m, c in g.terms.items():
            terms[tuple(m[p] for p in perm)] = c
        moved.append(big.from_terms(terms))
    basis = reduced_groebner_basis(moved, big, block_order(len(drop)))
    sub = PolyRing(ring.field, tuple(keep))
    out = []
    ndrop = len(drop)
    for g in basis:
        if all(not any(m[:ndrop]) for m in g.terms):
            out.append(sub.from_terms({m[ndrop:]: c for m, c in g.terms.items()}))
    return Ideal(sub, out)


def ringmap_kernel(images: Sequence[Polynomial], target_relations: Ideal,
                   source_names: Optional[Sequence[str]] = None) -> Ideal:
    """Kernel of k[u_1..u_m] -> target/(target_relations), u_j |-> images_j.

    Computed from the graph ideal (u_j - images_j) + relations by eliminating
    the target variables.
    """
    target = target_relations.ring
    m = len(images)
    if source_names is None:
        source_names = tuple(f"u{i + 1}" for i in range(m))
    else:
        source_names = tuple(source_names)
    for n in source_names:
        if n in target.names:
            raise ValueError(f"source name {n!r} collides with a target variable")
    big = PolyRing(target.field, target.names + source_names)
    pad = (0,) * m

    def lift(p: Polynomial) -> Polynomial:
        return big.from_terms({m0 + pad: c for m0, c in p.terms.items()})

    gens = [lift(g) for g in target_relations.generators]
    for j, img in enumerate(images):
        u = big.variable(target.nvars + j)
        gens.append(u - lift(img))
    graph = Ideal(big, gens)
    return eliminate(graph, source_names)


def subalgebra_membership(p: Polynomial, gens: Sequence[Polynomial], relations: Ideal,
                          tag_names: Optional[Sequence[str]] = None) -> Optional[Polynomial]:
    """Express p in the subalgebra k[gens] of ring/(relations), if possible.

    Returns a polynomial in the tag variables, or None.  Uses an elimination
    order with the ambient variables in the leading block, so the normal form
    of p is free of ambient variables exactly when p lies in the subalgebra.
    """
    ring = relations.ring
    m = len(gens)
    if tag_names is None:
        tag_names = tuple(f"u{i + 1}" for i in range(m))
    else:
        tag_names = tuple(tag_names)
    big = PolyRing(ring.field, ring.names + tuple(tag_names))
    pad = (0,) * m

    def lift(q: Polynomial) -> Polynomial:
        return big.from_terms({m0 + pad: c for m0, c in q.terms.items()})

    bgens = [lift(g) for g in relations.generators]
    for j, g in enumerate(gens):
        bgens.append(big.variable(ring.nvars + j) - lift(g))
    order = block_order(ring.nvars)
    basis = reduced_groebner_basis(bgens, big, order)
    nf = reduce_poly(lift(p), basis, order)
    n = ring.nvars
    if any(any(mm[:n]) for mm in nf.terms):
        return None
    tags = PolyRing(ring.field, tuple(tag_names))
    return tags.from_terms({mm[n:]: c for mm, c in nf.terms.items()})


# ---------------------------------------------------------------------------
# Syzygies by the extended-basis (lifting) method
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SyzygyModule:
    """Columns are tuples s with sum_i s_i * g_i in the `modulo` ideal."""

    ring: PolyRing
    gens: tuple[Polynomial, ...]
    columns: tuple[tuple[Polynomial, ...], ...]


def _vec_sub(u, v, ring):
    return tuple(a - b for a, b in zip(u, v))


def _vec_scale(p, u):
    return tuple(p * a for a in u)


def _tracked_basis(gens: Sequence[Polynomial], ring: PolyRing, order: MonomialOrder):
    """Groebner basis with representation vectors over the input generators."""
    fld = ring.field
    basis: list[Polynomial] = []
    reps: list[tuple[Polynomial, ...]] = []
    n = len(gens)
    unit = lambda i: tuple(ring.one() if j == i else ring.zero() for j in range(n))
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        lc = g.leading(order)[1]
        basis.append(g.monic(order))
        reps.append(_vec_scale(ring.constant(fld.inv(lc)), unit(i)))
    pairs = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lcm = mono_lcm(basis[i].leading(order)[0], basis[j].leading(order)[0])
            heapq.heappush(pairs, (order.key(lcm), i, j))
    while pairs:
        _, i, j = heapq.heappop(pairs)
        f, g = basis[i], basis[j]
        fm, fc = f.leading(order)
        gm, gc = g.leading(order)
        lcm = mono_lcm(fm, gm)
        mf = ring.monomial(mono_div(lcm, fm), fld.inv(fc))
        mg = ring.monomial(mono_div(lcm, gm), fld.inv(gc))
        s = mf * f - mg * g
        quots, rem = divide_with_quotients(s, basis, order)
        if rem.is_zero():
            continue
        rep = _vec_sub(_vec_scale(mf, reps[i]), _vec_scale(mg, reps[j]), ring)
        for q, r in zip(quots, reps):
            if not q.is_zero():
                rep = _vec_sub(rep, _vec_scale(q, r), ring)
        lc = rem.leading(order)[1]
        inv = ring.constant(fld.inv(lc))
        basis.append(rem.monic(order))
        reps.append(_vec_scale(inv, rep))
        new = len(basis) - 1
        for k in range(new):
            lcm = mono_lcm(basis[k].leading(order)[0], basis[new].leading(order)[0])
            heapq.heappush(pairs, (order.key(lcm), k, new))
    return basis, reps


def syzygies(gens: Sequence[Polynomial], modulo: Optional[Ideal] = None,
             order: MonomialOrder = GREVLEX) -> SyzygyModule:
    """Generators of the syzygy module of `gens` over ring/(modulo).

    Syzygies of gens + modulo-generators are computed over the free ring by
    lifting all S-pair reductions of a tracked basis (Schreyer), translated
    back through the representation matrices, then truncated to the first
    block of coordinates.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    fld = ring.field
    mod_gens = list(modulo.generators) if modulo is not None else []
    combined = gens + mod_gens
    p = len(gens)
    n = len(combined)
    zero = ring.zero()

    live = [(i, g) for i, g in enumerate(combined) if not g.is_zero()]
    if not live:
        return SyzygyModule(ring, tuple(gens), ())
    basis, reps = _tracked_basis([g for _, g in live], ring, order)
    # rep vectors are indexed by the live generators; widen to the full list
    wide_reps = []
    for rep in reps:
        out = [zero] * n
        for (orig_idx, _), val in zip(live, rep):
            out[orig_idx] = val
        wide_reps.append(out)

    syz_h: list[tuple[Polynomial, ...]] = []
    t = len(basis)
    for i in range(t):
        for j in range(i + 1, t):
            f, g = basis[i], basis[j]
            fm, fc = f.leading(order)
            gm, gc = g.leading(order)
            lcm = mono_lcm(fm, gm)
            mf = ring.monomial(mono_div(lcm, fm), fld.inv(fc))
            mg = ring.monomial(mono_div(lcm, gm), fld.inv(gc))
            s = mf * f - mg * g
            quots, rem = divide_with_quotients(s, basis, order)
            if not rem.is_zero():
                raise AssertionError("S-polynomial of a Groebner basis did not reduce to zero")
            row = [zero] * t
            row[i] = row[i] + mf
            row[j] = row[j] - mg
            for k, q in enumerate(quots):
                if not q.is_zero():
                    row[k] = row[k] - q
            syz_h.append(tuple(row))

    columns: list[tuple[Polynomial, ...]] = []
    # translate basis syzygies: z * M where row k of M is wide_reps[k]
    for z in syz_h:
        col = [zero] * n
        for zk, rep in zip(z, wide_reps):
            if zk.is_zero():
                continue
            for idx in range(n):
                if not rep[idx].is_zero():
                    col[idx] = col[idx] + zk * rep[idx]
        columns.append(tuple(col))
    # rows of (I - N*M): N from dividing each combined generator by the basis
    for i, g in enumerate(combined):
        quots, rem = divide_with_quotients(g, basis, order)
        if not rem.is_zero():
            raise AssertionError("generator did not reduce to zero against its own basis")
        col = [zero] * n
        col[i] = ring.one()
        for q, rep in zip(quots, wide_reps):
            if q.is_zero():
                continue
            for idx in range(n):
                if not rep[idx].is_zero():
                    col[idx] = col[idx] - q * rep[idx]
        columns.append(tuple(col))

    seen = set()
    out = []
    for col in columns:
        trunc = col[:p]
        if all(c.is_zero() for c in trunc):
            continue
        key = tuple(frozenset(c.terms.items()) for c in trunc)
        if key in seen:
            continue
        seen.add(key)
        out.append(trunc)
    return SyzygyModule(ring, tuple(gens), tuple(out))


# ---------------------------------------------------------------------------
# Krull dimension
# ---------------------------------------------------------------------------

def krull_dimension(I: Ideal):
    """Dimension of ring/I; EMPTY_SCHEME when 1 lies in I.

    Uses the leading-term ideal: the dimension equals the largest cardinality
    of a variable subset S such that no leading monomial is supported inside S.
    """
    ring = I.ring
    basis = I.basis()
    if any(g.total_degree() == 0 for g in basis):
        return EMPTY_SCHEME
    lms = [g.leading(GREVLEX)[0] for g in basis]
    n = ring.nvars
    best = -1
    from itertools import combinations

    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            sset = set(subset)
            ok = True
            for lm in lms:
                if all(i in sset for i, e in enumerate(lm) if e):
                    ok = False
                    break
            if ok:
                return size
    return 0
