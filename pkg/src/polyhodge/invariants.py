"""The h*-polynomial tower of a lattice polytope with a subdivision.

Implements, with exact integer arithmetic throughout:

  * h*(P; u): Ehrhart series numerator,
  * l*(P; u): local h*-polynomial (alternating face sum against dual
    g-polynomials),
  * h*(P; u, v): mixed h*-polynomial (trivial subdivision case),
  * h*(P, S; u, v): limit mixed h*-polynomial of a subdivision,
  * l*(P, S; u, v): local limit mixed h*-polynomial,
  * h*(P, S; u, v, w): refined limit mixed h*-polynomial,
  * the Lambda/Phi pair attached to a simplicial refinement of the
    truncated normal fan,
  * the Lefschetz-forced intersection polynomial in one variable,
  * closed forms for the low refined coefficients in dimension <= 3.

All sums over faces or cells include the empty face with the conventions
dim(empty) = -1 and h* = l* = 1 on it.  Every division that the theory
asserts to be exact is checked and raises on failure.
"""

from __future__ import annotations

from math import comb

from .laurent import LaurentPoly, ONE, T, U, V, W, ZERO, from_univariate
from .polytope import LatticePolytope
from .poset import g_polynomial, link_h_polynomial
from .subdivision import CellComplex, trivial_subdivision
from .fans import Refinement, TruncatedNormalFan, simplicial_refinement

UV = U * V
UVW2 = U * V * W**2

_H_STAR: dict = {}
_LOCAL_H_STAR: dict = {}
_MIXED: dict = {}
_LIMIT_MIXED: dict = {}
_LOCAL_LIMIT_MIXED: dict = {}
_REFINED: dict = {}


def g_of_interval(lattice, lower, upper, dual: bool = False) -> LaurentPoly:
    """g-polynomial (in t) of a face-lattice interval, optionally dualized."""
    poset = lattice.interval(lower, upper)
    if dual:
        poset = poset.dual()
    return g_polynomial(poset)


def h_star(p: LatticePolytope) -> LaurentPoly:
    """Ehrhart h*-polynomial of a lattice polytope, in u; h*(empty) = 1.

    Determined by 1 + sum_{m>0} f_P(m) u^m = h*(P;u) / (1-u)^(dim P + 1);
    the coefficients come from the finite alternating-binomial convolution
    of the counts f_P(0..dim P).
    """
    if p.is_empty:
        return ONE
    cached = _H_STAR.get(p.key)
    if cached is not None:
        return cached
    d = p.dim
    counts = [p.lattice_point_count(m) for m in range(d + 1)]
    coeffs = {}
    for k in range(d + 1):
        coeffs[k] = sum((-1) ** j * comb(d + 1, j) * counts[k - j] for j in range(k + 1))
    out = from_univariate(coeffs, "u")
    _H_STAR[p.key] = out
    return out


def normalized_volume(p: LatticePolytope) -> int:
    return p.normalized_volume()


def local_h_star(p: LatticePolytope) -> LaurentPoly:
    """Local h*-polynomial l*(P;u): alternating sum of h*(Q) g([Q,P]*;u)
    over all faces Q including the empty one; vanishes on unimodular
    simplices and equals 1 on the empty polytope."""
    if p.is_empty:
        return ONE
    cached = _LOCAL_H_STAR.get(p.key)
    if cached is not None:
        return cached
    lattice = p.face_lattice()
    total = ZERO
    for fid in lattice.all_faces():
        q = lattice.face_polytope(fid)
        sign = (-1) ** (p.dim - q.dim)
        g = g_of_interval(lattice, fid, lattice.top, dual=True)
        total = total + sign * h_star(q) * g.substitute({"t": U})
    _LOCAL_H_STAR[p.key] = total
    return total


def limit_mixed_h_star(s: CellComplex) -> LaurentPoly:
    """Limit mixed h*-polynomial h*(P,S;u,v).

    Sum over all cells F (including the empty cell) of
    v^(dim F + 1) l*(F; u v^-1) h(link_S(F); uv).
    """
    cached = _LIMIT_MIXED.get(s.key)
    if cached is not None:
        return cached
    total = ZERO
    for cid in s.ids:
        cell = s.cell_polytope(cid)
        local = local_h_star(cell).substitute({"u": U * V**-1})
        link = link_h_polynomial(s, cid).substitute({"t": UV})
        total = total + V ** (cell.dim + 1) * local * link
    if not total.is_polynomial():
        raise ValueError("limit mixed h* failed to be polynomial; tower bug")
    _LIMIT_MIXED[s.key] = total
    return total


def limit_mixed_h_star_by_cells(s: CellComplex) -> LaurentPoly:
    """Alternative form: sum over interior cells of (uv-1)^codim h*(F;u,v)."""
    total = ZERO
    for cid in s.interior_ids():
        cell = s.cell_polytope(cid)
        total = total + (UV - 1) ** (s.polytope.dim - cell.dim) * mixed_h_star(cell)
    return total


def mixed_h_star(p: LatticePolytope) -> LaurentPoly:
    """Mixed h*-polynomial h*(P;u,v): the trivial-subdivision limit mixed."""
    if p.is_empty:
        return ONE
    cached = _MIXED.get(p.key)
    if cached is None:
        cached = limit_mixed_h_star(trivial_subdivision(p))
        _MIXED[p.key] = cached
    return cached


def _restricted(s: CellComplex, fid) -> CellComplex:
    return s.restrict(fid)


def local_limit_mixed_h_star(s: CellComplex) -> LaurentPoly:
    """Local limit mixed h*-polynomial l*(P,S;u,v): alternating face sum of
    h*(Q, S|Q; u,v) against dual-interval g-polynomials at uv."""
    cached = _LOCAL_LIMIT_MIXED.get(s.key)
    if cached is not None:
        return cached
    p = s.polytope
    lattice = p.face_lattice()
    total = ZERO
    for fid in lattice.all_faces():
        qdim = lattice.face_dim(fid)
        sign = (-1) ** (p.dim - qdim)
        inner = ONE if fid == () else limit_mixed_h_star(_restricted(s, fid))
        g = g_of_interval(lattice, fid, lattice.top, dual=True)
        total = total + sign * inner * g.substitute({"t": UV})
    _LOCAL_LIMIT_MIXED[s.key] = total
    return total


def refined_limit_mixed_h_star(s: CellComplex) -> LaurentPoly:
    """Refined limit mixed h*-polynomial h*(P,S;u,v,w).

    Sum over all faces Q of P (including the empty face) of
    w^(dim Q + 1) l*(Q, S|Q; u, v) g([Q, P]; uvw^2).
    """
    cached = _REFINED.get(s.key)
    if cached is not None:
        return cached
    p = s.polytope
    lattice = p.face_lattice()
    total = ZERO
    for fid in lattice.all_faces():
        qdim = lattice.face_dim(fid)
        local = ONE if fid == () else local_limit_mixed_h_star(_restricted(s, fid))
        g = g_of_interval(lattice, fid, lattice.top, dual=False)
        total = total + W ** (qdim + 1) * local * g.substitute({"t": UVW2})
    if not total.is_polynomial():
        raise ValueError("refined limit mixed h* failed to be polynomial; tower bug")
    _REFINED[s.key] = total
    return total


def lambda_phi(s: CellComplex, refinement: Refinement | None = None):
    """The pair (Lambda, Phi) attached to a simplicial refinement of the
    truncated normal fan of P.

    Phi weights refined h*-polynomials of faces by the cone multiplicities
    of the refinement; Lambda is the full cone sum minus Phi and satisfies
    the (uvw^2)^(dim P + 1) palindromy for any refinement.
    """
    p = s.polytope
    fan = TruncatedNormalFan(p)
    if refinement is None:
        refinement = simplicial_refinement(fan)
    elif refinement.fan.polytope.key != p.key:
        raise ValueError("refinement belongs to a different normal fan")
    shifted = UVW2 - 1
    mult = refinement.multiplicity_polys(shifted)
    phi = ZERO
    lattice = p.face_lattice()
    for fid, m in mult.items():
        qdim = lattice.face_dim(fid)
        sign = (-1) ** qdim
        inner = refined_limit_mixed_h_star(_restricted(s, fid))
        phi = phi + sign * inner * m
    lam = refinement.total_poly(shifted) - phi
    return lam, phi


def lambda_mixed(s: CellComplex, refinement: Refinement | None = None) -> LaurentPoly:
    """Two-variable Lambda variant: Lambda(u w^-1, 1, w)."""
    lam, _ = lambda_phi(s, refinement)
    return lam.substitute({"u": U * W**-1, "v": 1})


def e_int_lef(p: LatticePolytope) -> LaurentPoly:
    """Lefschetz-forced intersection polynomial E(P;t): the unique polynomial
    with (t-1) E = t^dim g([empty,P]*;1/t) - g([empty,P]*;t)."""
    if p.dim != p.ambient_dim:
        raise ValueError("requires a full-dimensional polytope")
    from .laurent import div_exact_t_minus_one

    lattice = p.face_lattice()
    gdual = g_of_interval(lattice, (), lattice.top, dual=True)
    rhs = gdual.substitute({"t": T**-1}) * T**p.dim - gdual
    return div_exact_t_minus_one(rhs)


def small_coeff_oracle(s: CellComplex) -> dict:
    """Closed forms for low coefficients of the refined polynomial.

    Writing h*(P,S;u,v,w) = 1 + uvw^2 sum h[p,q,r] u^p v^q w^r, returns the
    coefficients that have a direct lattice-point description: all (0,q,r),
    (0,0,r) and (0,0,0), plus (1,1,2) in dimension 3 (fixed by the volume).
    Computed from interior point counts and carriers only, independently of
    the tower itself.
    """
    p = s.polytope
    d = p.dim
    if d > 3:
        raise ValueError("closed forms only cover dimension <= 3")
    lattice = p.face_lattice()
    out: dict[tuple, int] = {}
    interior_low = 0
    for fid in lattice.all_faces():
        if fid != () and lattice.face_dim(fid) <= 1:
            interior_low += lattice.face_polytope(fid).interior_lattice_point_count()
    out[(0, 0, 0)] = interior_low - (d + 1)
    for r in range(1, d):
        total = 0
        for cid in s.nonempty_ids():
            if s.dim_of(cid) <= 1 and lattice.face_dim(s.carrier(cid)) == r + 1:
                total += s.cell_polytope(cid).interior_lattice_point_count()
        out[(0, 0, r)] = total
    for q in range(1, d):
        for r in range(1, d):
            total = 0
            for cid in s.nonempty_ids():
                if (
                    s.dim_of(cid) == q + 1
                    and lattice.face_dim(s.carrier(cid)) == r + 1
                ):
                    total += s.cell_polytope(cid).interior_lattice_point_count()
            out[(0, q, r)] = total
    if d == 3:
        known = (
            out[(0, 0, 0)]
            + 2 * out[(0, 0, 1)]
            + 2 * out[(0, 1, 1)]
            + 2 * out[(0, 0, 2)]
            + 4 * out[(0, 1, 2)]
            + 2 * out[(0, 2, 2)]
        )
        out[(1, 1, 2)] = p.normalized_volume() - 1 - known
    return out


def small_coeff(s: CellComplex, p_: int, q: int, r: int) -> int:
    """One oracle coefficient; raises for indices without a closed form."""
    table = small_coeff_oracle(s)
    if (p_, q, r) not in table:
        raise ValueError(f"no closed form for coefficient {(p_, q, r)}")
    return table[(p_, q, r)]


class InvariantBundle:
    """Convenience facade bundling the tower for one (P, S) pair."""

    def __init__(self, s: CellComplex):
        self.complex = s
        self.polytope = s.polytope

    def h_star(self) -> LaurentPoly:
        return h_star(self.polytope)

    def local_h_star(self) -> LaurentPoly:
        return local_h_star(self.polytope)

    def mixed(self) -> LaurentPoly:
        return mixed_h_star(self.polytope)

    def limit_mixed(self) -> LaurentPoly:
        return limit_mixed_h_star(self.complex)

    def local_limit_mixed(self) -> LaurentPoly:
        return local_limit_mixed_h_star(self.complex)

    def refined(self) -> LaurentPoly:
        return refined_limit_mixed_h_star(self.complex)
