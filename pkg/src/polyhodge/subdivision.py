"""Regular lattice polyhedral subdivisions induced by height functions.

A cell complex stores the subdividing cells of a polytope P (closed under
taking faces, with the empty cell included), the inclusion order among cells,
and per-cell metadata: the carrier (smallest face of P containing the cell)
and a boundary flag.  Regular subdivisions are produced by projecting the
lower facets of the lifted point set; constant or affine heights give the
trivial subdivision whose cells are the faces of P.

Construction validates the subdivision axioms: normalized volumes of maximal
cells add up to the volume of P, relative interiors partition the lattice
points of P, cells are closed under faces, and any two cells meet in a
common face.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Mapping

from .polytope import LatticePolytope
from .poset import EulerianPoset

CellId = tuple  # sorted tuple of vertex coordinate tuples; () is the empty cell


class HeightFunction:
    """Rational heights on a finite set of lattice points spanning P."""

    def __init__(self, polytope: LatticePolytope, heights: Mapping[tuple, Fraction]):
        self.polytope = polytope
        self.heights = {tuple(p): Fraction(h) for p, h in heights.items()}
        hull = LatticePolytope.convex_hull(list(self.heights))
        if hull.key != polytope.key:
            raise ValueError("heights must be given on a set whose hull is P")

    def integer_scaled(self) -> dict[tuple, int]:
        """Heights scaled by a positive integer to clear denominators."""
        lcm = 1
        for h in self.heights.values():
            lcm = lcm * h.denominator // gcd(lcm, h.denominator)
        return {p: int(h * lcm) for p, h in self.heights.items()}


_COMPLEX_INTERN: dict = {}


class CellComplex:
    """A lattice polyhedral subdivision of a polytope, as a poset of cells.

    Cells are ordered by inclusion, which for cells of a valid complex is
    vertex-set inclusion.  Complexes are immutable after construction and
    interned by (polytope, cell ids), so repeated restrictions are validated
    once and share caches.
    """

    @staticmethod
    def interned(polytope: LatticePolytope, cell_polytopes, heights=None) -> "CellComplex":
        ids = tuple(sorted({poly.vertices for poly in cell_polytopes} | {()}))
        key = (polytope.key, ids)
        cached = _COMPLEX_INTERN.get(key)
        if cached is None:
            cached = CellComplex(polytope, cell_polytopes, heights=heights)
            _COMPLEX_INTERN[key] = cached
        elif heights is not None and cached.heights is None:
            cached.heights = heights  # provenance only; cells are identical
        return cached

    def __init__(self, polytope: LatticePolytope, cell_polytopes, heights=None):
        self.polytope = polytope
        self.heights = heights
        cells: dict[CellId, LatticePolytope] = {
            (): LatticePolytope.empty(polytope.ambient_dim)
        }
        for poly in cell_polytopes:
            cells[poly.vertices] = poly
        self.cells = dict(sorted(cells.items(), key=lambda kv: (kv[1].dim, kv[0])))
        self.ids = tuple(self.cells)
        self._vsets = {cid: frozenset(cid) for cid in self.ids}
        self._dims = {cid: poly.dim for cid, poly in self.cells.items()}
        self.maximal_cells = tuple(
            cid for cid, poly in self.cells.items() if poly.dim == polytope.dim
        )
        self._carrier = self._compute_carriers()
        self._interval_cache: dict = {}
        self._validate()

    # -- structure ----------------------------------------------------------

    @property
    def key(self):
        return (self.polytope.key, self.ids)

    def dim_of(self, cid: CellId) -> int:
        return self._dims[cid]

    def cell_polytope(self, cid: CellId) -> LatticePolytope:
        return self.cells[cid]

    def nonempty_ids(self):
        return tuple(cid for cid in self.ids if cid != ())

    def leq(self, a: CellId, b: CellId) -> bool:
        return self._vsets[a] <= self._vsets[b]

    def cells_containing(self, cid: CellId):
        vs = self._vsets[cid]
        return tuple(b for b in self.ids if vs <= self._vsets[b])

    def _compute_carriers(self):
        lattice = self.polytope.face_lattice()
        tight_sets = self.polytope.facet_tight_sets()
        nverts = len(self.polytope.vertices)
        carrier = {(): ()}
        to_model = self.polytope._map.to_model
        facets = self.polytope._facets
        for cid in self.ids:
            if cid == ():
                continue
            pts = [to_model(v) for v in cid]
            face = set(range(nverts))
            for i, (a, b) in enumerate(facets):
                if all(sum(x * y for x, y in zip(a, p)) == b for p in pts):
                    face &= tight_sets[i]
            carrier[cid] = tuple(sorted(face))
        return carrier

    def carrier(self, cid: CellId):
        """Face id (in P's face lattice) of the smallest face containing the cell."""
        return self._carrier[cid]

    def is_boundary(self, cid: CellId) -> bool:
        """True iff the cell lies in the boundary of P (the empty cell does)."""
        return self._carrier[cid] != self.polytope.face_lattice().top

    def interior_ids(self):
        """Nonempty cells whose relative interior lies in the interior of P."""
        return tuple(
            cid for cid in self.ids if cid != () and not self.is_boundary(cid)
        )

    # -- posets ---------------------------------------------------------------

    def interval_poset(self, a: CellId, b: CellId) -> EulerianPoset:
        """The interval [a, b] of the cell poset as a validated Eulerian poset."""
        key = (a, b)
        cached = self._interval_cache.get(key)
        if cached is not None:
            return cached
        if not self.leq(a, b):
            raise ValueError("not an interval: cells are not nested")
        members = [c for c in self.ids if self.leq(a, c) and self.leq(c, b)]
        poset = EulerianPoset.from_leq(members, self.leq, validate=True)
        self._interval_cache[key] = poset
        return poset

    # -- derived complexes ------------------------------------------------------

    def restrict(self, face_id) -> "CellComplex":
        """Cells of the subdivision contained in a face of P."""
        lattice = self.polytope.face_lattice()
        if face_id not in lattice.faces:
            raise ValueError("restriction target is not a face of P")
        if face_id == ():
            raise ValueError("cannot restrict to the empty face")
        if face_id == lattice.top:
            return self
        target = frozenset(face_id)
        kept = [
            self.cells[cid]
            for cid in self.ids
            if cid != () and frozenset(self._carrier[cid]) <= target
        ]
        return CellComplex.interned(lattice.face_polytope(face_id), kept)

    def transform(self, map_) -> "CellComplex":
        """Apply a lattice-preserving affine map to the whole complex."""
        target = LatticePolytope.convex_hull(
            [map_.to_model(v) for v in self.polytope.vertices]
        )
        kept = [
            LatticePolytope.convex_hull([map_.to_model(v) for v in cid])
            for cid in self.ids
            if cid != ()
        ]
        return CellComplex.interned(target, kept)

    # -- validation ---------------------------------------------------------------

    def _validate(self):
        p = self.polytope
        if not self.maximal_cells:
            raise ValueError("subdivision has no full-dimensional cells")
        vol = sum(self.cells[cid].normalized_volume() for cid in self.maximal_cells)
        if vol != p.normalized_volume():
            raise ValueError("maximal cells do not tile P: volume mismatch")
        # Cells are closed under taking faces.
        for cid, poly in self.cells.items():
            if cid == ():
                continue
            lat = poly.face_lattice()
            for fid in lat.all_faces():
                if fid == ():
                    continue
                if lat.face_polytope(fid).vertices not in self.cells:
                    raise ValueError("cell set is not closed under taking faces")
        # Relative interiors partition the lattice points of P.
        pts = sum(
            self.cells[cid].interior_lattice_point_count()
            for cid in self.ids
            if cid != ()
        )
        if pts != p.lattice_point_count(1):
            raise ValueError("cell interiors do not partition the lattice points of P")
        # Pairwise intersections are common faces.
        face_sets = {}
        for cid, poly in self.cells.items():
            if cid == ():
                continue
            lat = poly.face_lattice()
            face_sets[cid] = {
                lat.face_polytope(f).vertices for f in lat.all_faces() if f != ()
            }
        ids = self.nonempty_ids()
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                common = tuple(sorted(self._vsets[a] & self._vsets[b]))
                if not common:
                    continue
                if common not in self.cells:
                    raise ValueError("cells intersect in a non-cell")
                if common not in face_sets[a] or common not in face_sets[b]:
                    raise ValueError("cells intersect in a non-face")


def trivial_subdivision(polytope: LatticePolytope) -> CellComplex:
    """The subdivision whose cells are the faces of P."""
    if polytope.is_empty:
        raise ValueError("trivial subdivision of the empty polytope")
    lattice = polytope.face_lattice()
    cells = [lattice.face_polytope(fid) for fid in lattice.all_faces() if fid != ()]
    return CellComplex.interned(polytope, cells)


def regular_subdivision(height_fn: HeightFunction) -> CellComplex:
    """Subdivision induced by a height function via the lower hull.

    Cells are the projections of the facets of conv{(a, h(a))} whose inner
    normal has positive last coordinate; affine height functions induce the
    trivial subdivision.
    """
    p = height_fn.polytope
    model, map_ = p.normalize_full_dim()
    scaled = height_fn.integer_scaled()
    lifted = [map_.to_model(a) + (h,) for a, h in scaled.items()]
    hull = LatticePolytope.convex_hull(lifted)
    if hull.dim <= p.dim:
        # Affine heights: every lifted point is on the one lower facet.
        lattice = p.face_lattice()
        cells = [lattice.face_polytope(fid) for fid in lattice.all_faces() if fid != ()]
        return CellComplex.interned(p, cells, heights=height_fn)
    maximal = []
    tight_sets = hull.facet_tight_sets()
    for (a, b), tight in zip(hull._facets, tight_sets):
        if a[-1] > 0:
            pts = [map_.from_model(hull._model_vertices[i][:-1]) for i in tight]
            maximal.append(LatticePolytope.convex_hull(pts))
    cell_polys = {}
    for cell in maximal:
        lat = cell.face_lattice()
        for fid in lat.all_faces():
            if fid == ():
                continue
            sub = lat.face_polytope(fid)
            cell_polys[sub.vertices] = sub
    return CellComplex.interned(p, list(cell_polys.values()), heights=height_fn)


def euler_relation_check(complex_: CellComplex, face_id=None) -> bool:
    """Signed count of interior cells avoiding a proper face of P.

    Sums (-1)^dim over nonempty cells F with F disjoint from the face and
    with relative interior inside the interior of P; the result must equal
    (-1)^dim P when the face is empty and 0 otherwise.
    """
    p = complex_.polytope
    lattice = p.face_lattice()
    if face_id is None:
        face_id = ()
    if face_id not in lattice.faces:
        raise ValueError("not a face of P")
    if face_id == lattice.top:
        raise ValueError("face must be proper")
    qpoly = lattice.face_polytope(face_id)
    total = 0
    for cid in complex_.interior_ids():
        if qpoly.is_empty or not any(qpoly.contains(v) for v in cid):
            total += (-1) ** complex_.dim_of(cid)
    expected = (-1) ** p.dim if face_id == () else 0
    return total == expected
