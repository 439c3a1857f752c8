"""Hodge-theoretic polynomial invariants of a Newton polytope with a
regular subdivision.

Everything is emitted as an exact Laurent polynomial realization: the
one-variable Lefschetz characteristic, the two-variable Hodge-Deligne
polynomial of the generic hypersurface, the nearby-fiber realization at
w = 1, the full three-variable refined polynomial, intersection-cohomology
and stringy variants, partial compactifications along subfans of the
truncated normal fan, and a reconstruction algorithm that re-derives the
refined polynomial from weak Lefschetz, Poincare duality, and the w = 1
specialization without touching the refined h*-tower (so the two paths are
genuinely independent).

Grothendieck-ring classes are never represented; a class in Z[L] is
reported in the L-variable exactly when the (u,v)-realization happens to
be a polynomial in the product uv.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .laurent import L, LaurentPoly, ONE, U, V, W, ZERO
from .polytope import LatticePolytope
from .subdivision import CellComplex
from .fans import Refinement, TruncatedNormalFan, identity_refinement, simplicial_refinement
from . import invariants as inv

UV = U * V
UVW2 = U * V * W**2


# -- realization helpers ------------------------------------------------------


def as_class_polynomial(p: LaurentPoly) -> LaurentPoly | None:
    """Rewrite a (u,v)-realization lying in Z[uv] as a polynomial in L.

    Returns None when some monomial has unequal u- and v-exponents (the
    value is then not of Tate type and has no L-form).
    """
    terms = {}
    for exps, c in p.terms():
        eu, ev, ew, et, el = exps
        if ew or et:
            return None
        if eu != ev:
            return None
        terms[(0, 0, 0, 0, el + eu)] = terms.get((0, 0, 0, 0, el + eu), 0) + c
    return LaurentPoly(terms)


def class_to_uv(p: LaurentPoly) -> LaurentPoly:
    """Substitute L -> uv in an L-realization."""
    return p.substitute({"L": UV})


# -- generic cell-sum evaluator ----------------------------------------------


@dataclass(frozen=True)
class TropicalCell:
    """One cell of a tropical polyhedral structure with its class realization."""

    dim: int
    bounded: bool
    class_poly: LaurentPoly


@dataclass
class TropicalCellData:
    """User-supplied cell data for the generic nearby-fiber sum."""

    cells: list[TropicalCell] = field(default_factory=list)


def nearby_fiber_from_cells(data: TropicalCellData) -> LaurentPoly:
    """Alternating sum of cell classes over the bounded cells.

    Evaluates sum (-1)^dim [class] in whatever realization the classes were
    supplied in; unbounded cells do not contribute.
    """
    total = ZERO
    for cell in data.cells:
        if cell.bounded:
            total = total + (-1) ** cell.dim * cell.class_poly
    return total


# -- hypersurface invariants of a single polytope -------------------------------


def chi_y(p: LatticePolytope) -> LaurentPoly:
    """Lefschetz characteristic in u: the E with
    u E = (u-1)^dim + (-1)^(dim+1) h*(P;u)."""
    if p.is_empty:
        raise ValueError("requires a nonempty polytope")
    d = p.dim
    numerator = (U - 1) ** d + (-1) ** (d + 1) * inv.h_star(p)
    return numerator.div_exact_poly_monomial({"u": 1})


def euler_characteristic(p: LatticePolytope) -> int:
    """(-1)^(dim+1) times the normalized volume."""
    if p.is_empty:
        raise ValueError("requires a nonempty polytope")
    return (-1) ** (p.dim + 1) * inv.h_star(p).eval_int({"u": 1})


def hodge_deligne(p: LatticePolytope) -> LaurentPoly:
    """Hodge-Deligne polynomial in (u, w) of the generic hypersurface:
    uw E = (uw-1)^dim + (-1)^(dim+1) h*(P;u,w)."""
    if p.is_empty:
        raise ValueError("requires a nonempty polytope")
    d = p.dim
    mixed = inv.mixed_h_star(p).substitute({"v": W})
    numerator = (U * W - 1) ** d + (-1) ** (d + 1) * mixed
    return numerator.div_exact_poly_monomial({"u": 1, "w": 1})


def hodge_deligne_uv(p: LatticePolytope) -> LaurentPoly:
    """Hodge-Deligne polynomial with the weight variable renamed to v."""
    return hodge_deligne(p).substitute({"w": V})


def nearby_fiber_E(s: CellComplex) -> LaurentPoly:
    """Limit Hodge-Deligne realization of the nearby fiber, in (u, v).

    Sum over interior cells F of E(V_F; u, v) (1 - uv)^(dim P - dim F);
    agrees with the refined polynomial at w = 1.
    """
    p = s.polytope
    total = ZERO
    for cid in s.interior_ids():
        cell = s.cell_polytope(cid)
        total = total + hodge_deligne_uv(cell) * (1 - UV) ** (p.dim - cell.dim)
    return total


def nearby_fiber_class(s: CellComplex) -> LaurentPoly | None:
    """L-realization of the nearby fiber, when it exists."""
    return as_class_polynomial(nearby_fiber_E(s))


# -- refined invariants ----------------------------------------------------------


def refined_E(s: CellComplex) -> LaurentPoly:
    """Refined limit Hodge-Deligne polynomial in (u, v, w):
    uvw^2 E = (uvw^2 - 1)^dim + (-1)^(dim+1) h*(P,S;u,v,w), exactly."""
    p = _require_full_dim(s.polytope)
    d = p.dim
    numerator = (UVW2 - 1) ** d + (-1) ** (d + 1) * inv.refined_limit_mixed_h_star(s)
    try:
        return numerator.div_exact_poly_monomial({"u": 1, "v": 1, "w": 2})
    except ValueError as exc:
        raise ValueError("refined E is not polynomial; invariant-tower bug") from exc


def _require_full_dim(p: LatticePolytope) -> LatticePolytope:
    if p.is_empty:
        raise ValueError("requires a nonempty polytope")
    if p.dim != p.ambient_dim:
        raise ValueError("requires a full-dimensional polytope; normalize first")
    return p


def normalized_restriction(s: CellComplex, face_id) -> CellComplex:
    """Restriction of S to a face, rewritten full-dimensionally in the
    saturated lattice of the face's span."""
    q = s.polytope.face_lattice().face_polytope(face_id)
    restricted = s.restrict(face_id)
    if q.dim == q.ambient_dim:
        return restricted
    _, map_ = q.normalize_full_dim()
    return restricted.transform(map_)


def refined_E_of_face(s: CellComplex, face_id) -> LaurentPoly:
    """Refined E of the stratum attached to a nonempty face of P."""
    return refined_E(normalized_restriction(s, face_id))


@dataclass
class HodgeNumberTable:
    """Refined limit mixed Hodge numbers of middle-degree primitive
    cohomology, read off the refined h*-polynomial, together with the
    w-aggregated limit table and the top-weight local table."""

    dim: int
    refined: dict
    limit: dict
    local: dict

    def symmetric(self) -> bool:
        for (p_, q, r), value in self.refined.items():
            if self.refined.get((q, p_, r), 0) != value:
                return False
            if self.refined.get((r - p_, r - q, r), 0) != value:
                return False
        return True


def refined_hodge_numbers(s: CellComplex) -> HodgeNumberTable:
    """Extract h[p,q,r] from h*(P,S) = 1 + uvw^2 sum h[p,q,r] u^p v^q w^r.

    Also returns the limit table from the w = 1 polynomial and the local
    table from the top w-coefficient; raises when the constant term is not
    1 or any entry comes out negative.
    """
    p = _require_full_dim(s.polytope)
    refined = inv.refined_limit_mixed_h_star(s)
    if refined.coeff({}) != 1:
        raise ValueError("refined h* must have constant term 1")
    table = {}
    body = (refined - 1).div_exact_monomial({"u": 1, "v": 1, "w": 2})
    for exps, c in body.terms():
        eu, ev, ew, _, _ = exps
        if min(exps) < 0 or c < 0:
            raise ValueError("refined Hodge numbers must be nonnegative")
        table[(eu, ev, ew)] = c
    limit = {}
    body2 = (inv.limit_mixed_h_star(s) - 1).div_exact_monomial({"u": 1, "v": 1})
    for exps, c in body2.terms():
        if min(exps) < 0 or c < 0:
            raise ValueError("limit Hodge numbers must be nonnegative")
        limit[(exps[0], exps[1])] = c
    local = {}
    body3 = inv.local_limit_mixed_h_star(s).div_exact_monomial({"u": 1, "v": 1})
    for exps, c in body3.terms():
        if min(exps) < 0 or c < 0:
            raise ValueError("local Hodge numbers must be nonnegative")
        local[(exps[0], exps[1])] = c
    out = HodgeNumberTable(p.dim, table, limit, local)
    if not out.symmetric():
        raise ValueError("refined Hodge numbers violate their symmetries")
    return out


# -- intersection cohomology ------------------------------------------------------


def intersection_E(s: CellComplex) -> LaurentPoly:
    """Intersection-cohomology refined E of the compactified family:
    uvw^2 E = uvw^2 E_Lef(P; uvw^2) + (-1)^(dim+1) l*(P,S;u,v) w^(dim+1)."""
    p = _require_full_dim(s.polytope)
    d = p.dim
    lef = inv.e_int_lef(p).substitute({"t": UVW2})
    numerator = UVW2 * lef + (-1) ** (d + 1) * inv.local_limit_mixed_h_star(s) * W ** (
        d + 1
    )
    try:
        return numerator.div_exact_poly_monomial({"u": 1, "v": 1, "w": 2})
    except ValueError as exc:
        raise ValueError("intersection E is not polynomial; tower bug") from exc


def sum_over_strata_E_int(s: CellComplex) -> LaurentPoly:
    """Stratum-sum form of the intersection-cohomology polynomial:
    sum over nonempty faces Q of refined E of the stratum times
    g([Q,P]*; uvw^2).  Must agree with intersection_E."""
    p = _require_full_dim(s.polytope)
    lattice = p.face_lattice()
    total = ZERO
    for fid in lattice.all_faces():
        if fid == ():
            continue
        if lattice.face_dim(fid) == 0:
            continue  # point strata carry the empty hypersurface
        stratum = refined_E_of_face(s, fid)
        g = inv.g_of_interval(lattice, fid, lattice.top, dual=True)
        total = total + stratum * g.substitute({"t": UVW2})
    return total


# -- partial compactifications ------------------------------------------------------


def partial_compactification_E(
    s: CellComplex, subfan=None, refinement: Refinement | None = None
) -> LaurentPoly:
    """Refined E of the closure of the open hypersurface along a subfan of
    the truncated normal fan, with an optional refinement of the subfan.

    The zero subfan returns the open refined E; the full fan with the
    identity refinement gives the (possibly singular) compactification.
    """
    p = _require_full_dim(s.polytope)
    fan = TruncatedNormalFan(p)
    if refinement is None:
        refinement = identity_refinement(fan, subfan)
    mult = refinement.multiplicity_polys(UVW2 - 1)
    total = ZERO
    for fid, m in mult.items():
        total = total + refined_E_of_face(s, fid) * m
    return total


def partial_compactification_psi(
    s: CellComplex, subfan=None, refinement: Refinement | None = None
) -> LaurentPoly:
    """Nearby-fiber realization of the partial compactification, in (u, v)."""
    p = _require_full_dim(s.polytope)
    fan = TruncatedNormalFan(p)
    if refinement is None:
        refinement = identity_refinement(fan, subfan)
    mult = refinement.multiplicity_polys(UV - 1)
    total = ZERO
    for fid, m in mult.items():
        total = total + nearby_fiber_E(normalized_restriction(s, fid)) * m
    return total


def compactified_psi_face_sum(s: CellComplex) -> LaurentPoly:
    """Cell-sum form of the full compactification's nearby fiber:
    sum over nonempty cells F of E(V_F;u,v) (1-uv)^(dim carrier - dim F)."""
    total = ZERO
    lattice = s.polytope.face_lattice()
    for cid in s.nonempty_ids():
        cell = s.cell_polytope(cid)
        codim = lattice.face_dim(s.carrier(cid)) - cell.dim
        total = total + hodge_deligne_uv(cell) * (1 - UV) ** codim
    return total


# -- stringy invariants ---------------------------------------------------------------


def stringy_E(s: CellComplex) -> LaurentPoly:
    """Stringy refined E of the compactified family over a reflexive P:
    uvw^2 E_st = sum over faces Q (including empty and P) of
    (-w)^(dim Q + 1) l*(Q, S|Q; u, v) l*(Q*; uvw^2)."""
    p = _require_full_dim(s.polytope)
    if not p.reflexive_check():
        raise ValueError("stringy E requires a reflexive polytope")
    dual, face_map = p.dual_face_map()
    dlattice = dual.face_lattice()
    lattice = p.face_lattice()
    total = ZERO
    for fid in lattice.all_faces():
        qdim = lattice.face_dim(fid)
        local2 = (
            ONE if fid == () else inv.local_limit_mixed_h_star(s.restrict(fid))
        )
        dual_poly = dlattice.face_polytope(face_map[fid])
        local1 = inv.local_h_star(dual_poly).substitute({"u": UVW2})
        total = total + (-W) ** (qdim + 1) * local2 * local1
    try:
        return total.div_exact_poly_monomial({"u": 1, "v": 1, "w": 2})
    except ValueError as exc:
        raise ValueError("stringy E is not polynomial; tower bug") from exc


def stringy_E_generic(s: CellComplex) -> LaurentPoly:
    """Stringy E of the generic fiber, in (u, w)."""
    return stringy_E(s).substitute({"u": U * W**-1, "v": 1})


# -- reconstruction (independent of the refined tower) ------------------------------


_DK_CACHE: dict = {}


def dk_reconstruct(s: CellComplex) -> LaurentPoly:
    """Reconstruct the refined E polynomial without the refined h*-tower.

    The w-degrees above dim P - 1 are forced by weak Lefschetz (they match
    the torus contribution (uvw^2 - 1)^dim / uvw^2); the degrees below
    dim P - 1 come from Poincare duality of the simplicial partial
    compactification, whose high degrees are known by recursion over the
    proper faces; the middle degree is fixed by the w = 1 specialization.
    This is the independent oracle for refined_E.
    """
    p = _require_full_dim(s.polytope)
    cached = _DK_CACHE.get(s.key)
    if cached is not None:
        return cached
    d = p.dim
    if d == 0:
        _DK_CACHE[s.key] = ZERO
        return ZERO
    # Step 1: high w-degrees (> d-1) of E from the weak Lefschetz constraint.
    torus = (UVW2 - 1) ** d
    high = {}
    for k in range(d + 2, 2 * d + 1):
        c = torus.coeff_in("w", k)
        if c:
            high[k - 2] = c.div_exact_monomial({"u": 1, "v": 1})
    # Step 2: high degrees of the simplicial partial compactification.
    fan = TruncatedNormalFan(p)
    refinement = simplicial_refinement(fan)
    mult = refinement.multiplicity_polys(UVW2 - 1)
    lattice = p.face_lattice()
    proper_sum = ZERO
    for fid, m in mult.items():
        if fid == lattice.top:
            continue
        sub = normalized_restriction(s, fid)
        proper_sum = proper_sum + dk_reconstruct(sub) * m
    known_e = dict(high)  # degrees >= d of E(X_infty)
    # Step 3: Poincare duality of the compactification gives every degree
    # <= d-2 of E from the degrees >= d.
    e_parts = dict(known_e)
    for low_k in range(0, d - 1):
        k = 2 * (d - 1) - low_k  # the dual degree, >= d
        comp_val = known_e.get(k, ZERO) + proper_sum.coeff_in("w", k)
        flipped = comp_val.substitute({"u": U**-1, "v": V**-1}) * UV ** (d - 1)
        part = flipped - proper_sum.coeff_in("w", low_k)
        if part:
            e_parts[low_k] = part
    # Step 4: the middle degree d-1 from the w = 1 specialization.
    middle = nearby_fiber_E(s)
    for k, poly in e_parts.items():
        middle = middle - poly
    e_parts[d - 1] = middle
    # Duality fixes the middle degree of the compactification; a mismatch
    # means some ingredient (recursion, weak Lefschetz or the w = 1 value)
    # is wrong, so report the degree instead of returning garbage.
    comp_middle = middle + proper_sum.coeff_in("w", d - 1)
    flipped_middle = comp_middle.substitute({"u": U**-1, "v": V**-1}) * UV ** (d - 1)
    if flipped_middle != comp_middle:
        raise ValueError(f"reconstruction inconsistent at w-degree {d - 1}")
    out = LaurentPoly.assemble_in("w", e_parts)
    _DK_CACHE[s.key] = out
    return out
