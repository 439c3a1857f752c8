"""Truncated normal fans of full-dimensional polytopes and their refinements.

The normal fan of P with its maximal cones removed has cones indexed by the
positive-dimensional faces Q of P (inclusion-reversing, dim cone = n - dim Q),
plus the zero cone for Q = P.  Rays are the primitive inner facet normals, so
all incidence questions reduce to combinatorics of the face lattice: a ray
lies in the cone of Q exactly when its facet contains Q, and the smallest
cone containing a set of rays is indexed by the intersection of their facets.

Simplicial refinements are produced by pulling triangulations with a global
deterministic ray order; every refinement carries its carrier map onto the
coarse fan.
"""

from __future__ import annotations

import itertools

from . import linalg
from .polytope import LatticePolytope


def cone_contains(rays, point) -> bool:
    """Exact membership of a rational point in the cone spanned by rays.

    Uses Caratheodory: the point lies in the cone iff it is a nonnegative
    combination of some linearly independent subset of rays.
    """
    if all(x == 0 for x in point):
        return True
    if not rays:
        return False
    r = linalg.rank(list(rays))
    for size in range(1, r + 1):
        for subset in itertools.combinations(rays, size):
            if linalg.rank(list(subset)) != size:
                continue
            # Solve sum(l_i * ray_i) = point exactly.
            cols = [tuple(ray[i] for ray in subset) for i in range(len(point))]
            sol = linalg.solve(cols, list(point))
            if sol is None:
                continue
            # Verify (solve ignores redundant rows only if consistent).
            ok = all(
                sum(l * ray[i] for l, ray in zip(sol, subset)) == point[i]
                for i in range(len(point))
            )
            if ok and all(l >= 0 for l in sol):
                return True
    return False


class TruncatedNormalFan:
    """Normal fan of a full-dimensional polytope, maximal cones removed."""

    def __init__(self, polytope: LatticePolytope):
        if polytope.dim != polytope.ambient_dim:
            raise ValueError("normal fan requires a full-dimensional polytope")
        self.polytope = polytope
        self.lattice = polytope.face_lattice()
        self.dim = polytope.dim
        tight = polytope.facet_tight_sets()
        facet_ids = {}
        for (a, b), t in zip(polytope._facets, tight):
            facet_ids[tuple(sorted(t))] = linalg.primitive(a)
        # Face id of each facet -> primitive inner normal ray.
        self.facet_ray = facet_ids
        self.ray_facet = {ray: fid for fid, ray in facet_ids.items()}
        self.face_ids = tuple(
            fid
            for fid in self.lattice.all_faces()
            if self.lattice.face_dim(fid) >= 1
        )
        self.cone_rays = {}
        for fid in self.face_ids:
            fset = set(fid)
            rays = tuple(
                sorted(
                    ray
                    for facet_id, ray in facet_ids.items()
                    if fset <= set(facet_id)
                )
            )
            self.cone_rays[fid] = rays
            if linalg.rank(list(rays)) != self.dim - self.lattice.face_dim(fid):
                raise ValueError("normal cone dimension mismatch")

    def cone_dim(self, fid) -> int:
        return self.dim - self.lattice.face_dim(fid)

    def smallest_face_for_rays(self, rays) -> tuple:
        """Face id indexing the smallest cone containing the given rays.

        Rays must be rays of this fan; the answer is the intersection of
        their facets (the top face for the empty set, i.e. the zero cone).
        """
        face = set(self.lattice.top)
        for ray in rays:
            face &= set(self.ray_facet[ray])
        fid = tuple(sorted(face))
        if fid not in self.lattice.faces or self.lattice.face_dim(fid) < 1:
            raise ValueError("ray set does not lie in a cone of the truncated fan")
        return fid

    def subfan(self, face_ids) -> frozenset:
        """Validate a cone selection (given by face ids) as a subfan.

        Cone faces correspond to larger polytope faces, so closure under
        taking cone faces means the id set is closed upward in the face
        lattice.  The zero cone (top face) is always required.
        """
        sel = frozenset(face_ids)
        if self.lattice.top not in sel:
            raise ValueError("a subfan always contains the zero cone")
        for fid in sel:
            if fid not in self.cone_rays:
                raise ValueError("subfan selection contains a non-cone")
            for other in self.face_ids:
                if set(fid) <= set(other) and other not in sel:
                    raise ValueError("subfan selection is not closed under faces")
        return sel

    def full_subfan(self) -> frozenset:
        return frozenset(self.face_ids)

    def zero_subfan(self) -> frozenset:
        return frozenset({self.lattice.top})


class Refinement:
    """A fan refinement of (a subfan of) a truncated normal fan.

    cones maps each refinement cone, canonically a sorted tuple of primitive
    rays, to the face id of the smallest coarse cone containing it.
    """

    def __init__(self, fan: TruncatedNormalFan, cones: dict, simplicial: bool):
        self.fan = fan
        self.cones = dict(sorted(cones.items()))
        self.simplicial = simplicial

    def cone_dims(self):
        for rays, fid in self.cones.items():
            yield rays, (linalg.rank(list(rays)) if rays else 0), fid

    def multiplicity_polys(self, shifted):
        """For each coarse face id Q: sum over refinement cones carried by Q
        of shifted^(dim coarse cone - dim cone)."""
        out = {}
        for _, d, fid in self.cone_dims():
            coarse = self.fan.cone_dim(fid)
            out[fid] = out.get(fid, 0) + shifted ** (coarse - d)
        return out

    def total_poly(self, shifted):
        """Sum over all refinement cones of shifted^(dim P - dim cone)."""
        total = 0
        n = self.fan.dim
        for _, d, _fid in self.cone_dims():
            total = shifted ** (n - d) + total
        return total


def identity_refinement(fan: TruncatedNormalFan, subfan=None) -> Refinement:
    """Each selected cone refines itself (not necessarily simplicial)."""
    sel = fan.full_subfan() if subfan is None else fan.subfan(subfan)
    cones = {fan.cone_rays[fid]: fid for fid in sel if fid != fan.lattice.top}
    cones[()] = fan.lattice.top
    simplicial = all(
        len(fan.cone_rays[fid]) == fan.cone_dim(fid)
        for fid in sel
        if fid != fan.lattice.top
    )
    return Refinement(fan, cones, simplicial)


def simplicial_refinement(fan: TruncatedNormalFan, subfan=None, ray_order=None) -> Refinement:
    """Pulling triangulation of each cone, using only existing rays.

    Cones are processed by increasing dimension; a non-simplicial cone is
    split by coning its pulled ray (the least ray in the given order) over
    the triangulations of the facets avoiding that ray.  A single global ray
    order makes the pieces agree on shared faces.
    """
    sel = fan.full_subfan() if subfan is None else fan.subfan(subfan)
    if ray_order is None:
        ray_order = sorted(fan.ray_facet)
    position = {ray: i for i, ray in enumerate(ray_order)}
    # Triangulations per coarse cone (face id), by increasing cone dimension.
    tri: dict[tuple, list] = {}
    order = sorted(sel, key=fan.cone_dim)
    for fid in order:
        rays = fan.cone_rays[fid]
        d = fan.cone_dim(fid)
        if len(rays) == d:
            tri[fid] = [rays]
            continue
        pivot = min(rays, key=lambda r: position[r])
        pieces = []
        for other in fan.face_ids:
            # Facets of the cone of fid are cones of faces covering fid.
            if set(fid) < set(other) and fan.cone_dim(other) == d - 1:
                if pivot in fan.cone_rays[other]:
                    continue
                if other not in tri:
                    # Facet cone outside the subfan cannot happen: subfans are
                    # closed under faces.
                    raise ValueError("missing facet triangulation")
                for simplex in tri[other]:
                    pieces.append(tuple(sorted(set(simplex) | {pivot})))
        tri[fid] = sorted(set(pieces))
    cones: dict[tuple, tuple] = {(): fan.lattice.top}
    for fid, simplices in tri.items():
        for simplex in simplices:
            for size in range(1, len(simplex) + 1):
                for subset in itertools.combinations(simplex, size):
                    key = tuple(sorted(subset))
                    if key not in cones:
                        cones[key] = fan.smallest_face_for_rays(key)
    return Refinement(fan, cones, simplicial=True)
