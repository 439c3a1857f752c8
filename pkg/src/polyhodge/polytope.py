"""Exact lattice polytopes: hulls, face lattices, lattice point enumeration.

All geometry is exact (integer/Fraction arithmetic).  Facet enumeration is
exhaustive over affinely independent vertex subsets, which is entirely
adequate at desk scale (dimension <= ~5, a few dozen vertices) and keeps
every certificate checkable.

Polytopes are immutable; derived data (facets, face lattice, point counts)
is cached on first use.  A lower-dimensional polytope carries a unimodular
affine model of itself in the saturated lattice of its affine span, so that
lattice point counts and volumes are intrinsic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .poset import EulerianPoset

Point = tuple[int, ...]


class AffineUnimodularMap:
    """Lattice-preserving affine map between Z^d (model) and a coset in Z^n.

    ambient(x) = origin + sum_i x_i * basis_i.  The basis spans the saturated
    lattice of the affine span, so to_model/from_model are mutually inverse
    bijections on lattice points of the span.
    """

    __slots__ = ("origin", "basis", "_left_inverse")

    def __init__(self, origin: Point, basis: list[Point]):
        self.origin = tuple(origin)
        self.basis = tuple(tuple(b) for b in basis)
        d = len(basis)
        if d == 0:
            self._left_inverse = []
            return
        # Left inverse rows r_k with r_k . basis_j = delta_kj; applied to
        # x - origin (which lies in the basis span) they recover coordinates.
        bt = [tuple(b) for b in self.basis]  # d rows of length n
        self._left_inverse = []
        for k in range(d):
            rhs = [1 if j == k else 0 for j in range(d)]
            sol = linalg.solve(bt, rhs)
            if sol is None:
                raise ValueError("basis is not linearly independent")
            self._left_inverse.append(sol)

    @property
    def is_identity(self) -> bool:
        n = len(self.origin)
        if any(self.origin):
            return False
        if len(self.basis) != n:
            return False
        return all(
            self.basis[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )

    def to_model(self, pt) -> Point:
        diff = linalg.vec_sub(pt, self.origin)
        coords = []
        for row in self._left_inverse:
            c = linalg.dot(row, diff)
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"point {pt} is not in the lattice of the span")
                c = int(c)
            coords.append(c)
        return tuple(coords)

    def from_model(self, coords) -> Point:
        pt = list(self.origin)
        for c, b in zip(coords, self.basis):
            for i in range(len(pt)):
                pt[i] += c * b[i]
        return tuple(pt)


def _transpose(rows):
    return [tuple(r[i] for r in rows) for i in range(len(rows[0]))]


def _identity_map(n: int) -> AffineUnimodularMap:
    basis = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return AffineUnimodularMap((0,) * n, basis)


_HULL_CACHE: dict = {}


class LatticePolytope:
    """A lattice polytope given by its vertex set, with exact facet data."""

    __slots__ = (
        "ambient_dim",
        "vertices",
        "dim",
        "_map",
        "_model_vertices",
        "_facets",
        "_span_equations",
        "_face_lattice",
        "_count_cache",
        "_interior_cache",
        "_nvol",
        "_model_poly",
    )

    def __init__(self, ambient_dim, vertices, dim, map_, model_vertices, facets):
        self.ambient_dim = ambient_dim
        self.vertices = vertices
        self.dim = dim
        self._map = map_
        self._model_vertices = model_vertices
        self._facets = facets  # list of (normal in Z^dim, rhs int): <a,x> >= b
        self._span_equations = None
        self._face_lattice = None
        self._count_cache = {}
        self._interior_cache = None
        self._nvol = None
        self._model_poly = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def empty(ambient_dim: int = 0) -> "LatticePolytope":
        key = ("empty", ambient_dim)
        if key not in _HULL_CACHE:
            _HULL_CACHE[key] = LatticePolytope(ambient_dim, (), -1, None, (), ())
        return _HULL_CACHE[key]

    @property
    def is_empty(self) -> bool:
        return self.dim == -1

    @staticmethod
    def convex_hull(points) -> "LatticePolytope":
        """Convex hull of lattice points (vertices, facets, intrinsic dim)."""
        pts = sorted({tuple(int(c) for c in p) for p in points})
        if not pts:
            raise ValueError("convex hull of an empty point set")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of mixed dimension")
        key = (n, tuple(pts))
        cached = _HULL_CACHE.get(key)
        if cached is not None:
            return cached
        poly = _build_hull(n, pts)
        _HULL_CACHE[key] = poly
        _HULL_CACHE[(n, poly.vertices)] = poly
        return poly

    @property
    def key(self):
        return (self.ambient_dim, self.vertices)

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.is_empty:
            return "LatticePolytope(empty)"
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    # -- span and membership -------------------------------------------------

    @property
    def span_equations(self):
        """Integer equations <e,x> = c cutting out the affine span."""
        if self._span_equations is None:
            if self.is_empty:
                self._span_equations = ()
            else:
                base = self.vertices[0]
                diffs = [linalg.vec_sub(v, base) for v in self.vertices[1:]]
                if not diffs:
                    normals = _std_basis(self.ambient_dim)
                else:
                    normals = [
                        linalg.clear_denominators(k) for k in linalg.kernel_basis(diffs)
                    ]
                self._span_equations = tuple(
                    (e, linalg.dot(e, base)) for e in normals
                )
        return self._span_equations

    def contains(self, pt) -> bool:
        """Exact membership test for an ambient lattice point."""
        if self.is_empty:
            return False
        for e, c in self.span_equations:
            if linalg.dot(e, pt) != c:
                return False
        x = self._map.to_model(pt)
        return all(linalg.dot(a, x) >= b for a, b in self._facets)

    def contains_in_relative_interior(self, pt) -> bool:
        if self.is_empty:
            return False
        for e, c in self.span_equations:
            if linalg.dot(e, pt) != c:
                return False
        x = self._map.to_model(pt)
        if self.dim == 0:
            return True
        return all(linalg.dot(a, x) > b for a, b in self._facets)

    # -- lattice point enumeration -------------------------------------------

    def model_lattice_points(self, m: int = 1, interior: bool = False):
        """Lattice points of the m-th dilate, in model coordinates."""
        if self.is_empty:
            return []
        if self.dim == 0:
            return [self._model_vertices[0]]
        verts = [tuple(m * c for c in v) for v in self._model_vertices]
        lo = [min(v[i] for v in verts) for i in range(self.dim)]
        hi = [max(v[i] for v in verts) for i in range(self.dim)]
        out = []
        facets = [(a, m * b) for a, b in self._facets]
        for x in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
            if interior:
                if all(linalg.dot(a, x) > b for a, b in facets):
                    out.append(x)
            else:
                if all(linalg.dot(a, x) >= b for a, b in facets):
                    out.append(x)
        return out

    def lattice_point_count(self, m: int) -> int:
        """Number of lattice points in the m-th dilate; 0 for the empty polytope."""
        if m < 0:
            raise ValueError("dilation factor must be nonnegative")
        if self.is_empty:
            return 0
        if m == 0:
            return 1
        if self.dim == 0:
            return 1
        if m not in self._count_cache:
            self._count_cache[m] = len(self.model_lattice_points(m))
        return self._count_cache[m]

    def interior_lattice_point_count(self) -> int:
        """Lattice points in the relative interior (a point counts itself)."""
        if self.is_empty:
            return 0
        if self.dim == 0:
            return 1
        if self._interior_cache is None:
            self._interior_cache = len(self.model_lattice_points(1, interior=True))
        return self._interior_cache

    def lattice_points(self, m: int = 1):
        """Ambient lattice points of the m-th dilate (m=1 default)."""
        if self.is_empty:
            return []
        if m == 1:
            return [self._map.from_model(x) for x in self.model_lattice_points(1)]
        # Dilates live in a dilated coset; report model-based points scaled back
        # only for m == 1 callers.  General m is count-only.
        raise ValueError("ambient enumeration only supported for m = 1")

    # -- volume ----------------------------------------------------------------

    def normalized_volume(self) -> int:
        """dim! times the Euclidean volume w.r.t. the intrinsic lattice."""
        if self.is_empty:
            raise ValueError("volume of the empty polytope")
        if self._nvol is None:
            self._nvol = self._compute_nvol()
        return self._nvol

    def _compute_nvol(self) -> int:
        if self.dim == 0:
            return 1
        v0 = self._model_vertices[0]
        total = 0
        lattice = self.face_lattice()
        for fid in lattice.faces_of_dim(self.dim - 1):
            fp = lattice.face_polytope(fid)
            # Locate the facet inequality tight on this face.
            for a, b in self._facets:
                if all(
                    linalg.dot(a, self._map.to_model(v)) == b for v in fp.vertices
                ):
                    h = linalg.dot(a, v0) - b
                    if h > 0:
                        total += h * fp.normalized_volume()
                    break
        return total

    # -- normalization -----------------------------------------------------------

    def normalize_full_dim(self):
        """Model of P in the saturated lattice of its affine span, plus the map.

        Full-dimensional polytopes return themselves with the identity map.
        Lattice point counts are preserved by construction.
        """
        if self.is_empty:
            raise ValueError("cannot normalize the empty polytope")
        if self.dim == self.ambient_dim:
            return self, _identity_map(self.ambient_dim)
        if self._model_poly is None:
            self._model_poly = LatticePolytope.convex_hull(self._model_vertices)
        return self._model_poly, self._map

    # -- faces ---------------------------------------------------------------

    def face_lattice(self) -> "FaceLattice":
        if self._face_lattice is None:
            if self.is_empty:
                raise ValueError("face lattice of the empty polytope")
            self._face_lattice = FaceLattice(self)
        return self._face_lattice

    def facet_tight_sets(self):
        """Vertex index sets of the facets (in model facet order)."""
        out = []
        for a, b in self._facets:
            tight = frozenset(
                i
                for i, v in enumerate(self._model_vertices)
                if linalg.dot(a, v) == b
            )
            out.append(tight)
        return out

    # -- duality ---------------------------------------------------------------

    def _dual_vertex_fractions(self):
        if self.dim != self.ambient_dim:
            raise ValueError("dual polytope requires a full-dimensional polytope")
        if not all(b < 0 for _, b in self._facets):
            raise ValueError("dual polytope requires the origin in the interior")
        return [tuple(Fraction(ai, -b) for ai in a) for a, b in self._facets]

    def reflexive_check(self) -> bool:
        """True iff the polar dual is again a lattice polytope."""
        try:
            duals = self._dual_vertex_fractions()
        except ValueError:
            return False
        return all(all(c.denominator == 1 for c in v) for v in duals)

    def dual_polytope(self) -> "LatticePolytope":
        """Polar dual {y : <y, x> >= -1 on P} for a reflexive polytope."""
        duals = self._dual_vertex_fractions()
        if not all(all(c.denominator == 1 for c in v) for v in duals):
            raise ValueError("polytope is not reflexive: dual has non-lattice vertices")
        return LatticePolytope.convex_hull([tuple(int(c) for c in v) for v in duals])

    def dual_face_map(self):
        """Inclusion-reversing face correspondence of a reflexive polytope.

        Returns (dual polytope, map from face id of P to face id of the dual),
        with the conventions empty -> dual polytope and P -> empty.
        """
        dual = self.dual_polytope()
        lat = self.face_lattice()
        dlat = dual.face_lattice()
        normals = [a for a, _ in self._facets]
        dual_index = {v: i for i, v in enumerate(dual.vertices)}
        by_vertexset = {frozenset(fid): fid for fid in dlat.faces}
        mapping = {}
        for fid in lat.faces:
            if fid == ():
                mapping[fid] = dlat.top
                continue
            if fid == lat.top:
                mapping[fid] = ()
                continue
            verts = [self._model_vertices[i] for i in fid]
            tight = frozenset(
                dual_index[tuple(a)]
                for a, b in self._facets
                if all(linalg.dot(a, v) == b for v in verts)
            )
            if tight not in by_vertexset:
                raise ValueError("dual face correspondence failed; polytope not reflexive?")
            mapping[fid] = by_vertexset[tight]
        for fid, gid in mapping.items():
            if fid not in ((), lat.top):
                if lat.face_dim(fid) + dlat.face_dim(gid) != self.dim - 1:
                    raise ValueError("dual face dimensions are inconsistent")
        if set(mapping.values()) != set(dlat.faces):
            raise ValueError("dual face correspondence is not a bijection")
        ids = list(mapping)
        for a in ids:
            for b in ids:
                if set(a) <= set(b) and not set(mapping[b]) <= set(mapping[a]):
                    raise ValueError("dual face correspondence is not inclusion-reversing")
        return dual, mapping


def _std_basis(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def _build_hull(n: int, pts: list[Point]) -> LatticePolytope:
    base = pts[0]
    diffs = [linalg.vec_sub(p, base) for p in pts]
    d = linalg.rank(diffs)
    if d == n:
        map_ = _identity_map(n)
        model_pts = pts
    else:
        eq_rows = [linalg.clear_denominators(k) for k in linalg.kernel_basis(diffs)] if any(
            any(x) for x in diffs
        ) else list(_std_basis(n))
        basis = linalg.integer_kernel_basis(eq_rows, n)
        map_ = AffineUnimodularMap(base, basis)
        model_pts = [map_.to_model(p) for p in pts]
    facets, vertex_models = _hull_in_full_dim(d, model_pts)
    # Canonical vertex order: lexicographic on ambient coordinates.
    verts_ambient = sorted(map_.from_model(v) for v in vertex_models)
    model_vertices = tuple(map_.to_model(v) for v in verts_ambient)
    return LatticePolytope(n, tuple(verts_ambient), d, map_, model_vertices, tuple(facets))


def _hull_in_full_dim(d: int, pts: list[Point]):
    """Facets and vertices of a full-dimensional hull in Z^d, exactly."""
    pts = sorted(set(pts))
    if d == 0:
        return [], [pts[0]]
    facets = {}
    for subset in itertools.combinations(pts, d):
        normal = linalg.hyperplane_normal(subset)
        if normal is None:
            continue
        b = linalg.dot(normal, subset[0])
        values = [linalg.dot(normal, p) for p in pts]
        if all(v >= b for v in values):
            facets[(normal, b)] = True
        elif all(v <= b for v in values):
            neg = tuple(-x for x in normal)
            facets[(neg, -b)] = True
    facet_list = sorted(facets)
    vertices = []
    for p in pts:
        tight_normals = [a for a, b in facet_list if linalg.dot(a, p) == b]
        if linalg.rank(tight_normals) == d:
            vertices.append(p)
    return facet_list, vertices


class FaceLattice:
    """All faces of a polytope, graded by rho(Q) = dim Q + 1.

    Faces are identified by sorted tuples of vertex indices; () is the empty
    face and the full index tuple is the polytope itself.  The lattice is
    Eulerian; intervals are exposed as validated Eulerian posets.
    """

    def __init__(self, polytope: LatticePolytope):
        self.polytope = polytope
        nverts = len(polytope.vertices)
        self.top = tuple(range(nverts))
        tight_sets = polytope.facet_tight_sets()
        faces = {frozenset(self.top)}
        work = [frozenset(self.top)]
        while work:
            f = work.pop()
            for t in tight_sets:
                g = f & t
                if g not in faces:
                    faces.add(g)
                    work.append(g)
        faces.add(frozenset())
        self.faces: dict[tuple, int] = {}
        for f in faces:
            fid = tuple(sorted(f))
            self.faces[fid] = self._dim_of(fid)
        self._by_dim: dict[int, list] = {}
        for fid in sorted(self.faces):
            self._by_dim.setdefault(self.faces[fid], []).append(fid)
        self._poset = None
        self._polytopes: dict[tuple, LatticePolytope] = {}

    def _dim_of(self, fid) -> int:
        if not fid:
            return -1
        vs = [self.polytope.vertices[i] for i in fid]
        diffs = [linalg.vec_sub(v, vs[0]) for v in vs[1:]]
        return linalg.rank(diffs) if diffs else 0

    def face_dim(self, fid) -> int:
        return self.faces[fid]

    def faces_of_dim(self, k: int):
        return tuple(self._by_dim.get(k, ()))

    def all_faces(self):
        """Face ids sorted by (dim, id)."""
        return tuple(
            fid for k in sorted(self._by_dim) for fid in self._by_dim[k]
        )

    def face_polytope(self, fid) -> LatticePolytope:
        if fid not in self._polytopes:
            if not fid:
                self._polytopes[fid] = LatticePolytope.empty(self.polytope.ambient_dim)
            else:
                self._polytopes[fid] = LatticePolytope.convex_hull(
                    [self.polytope.vertices[i] for i in fid]
                )
        return self._polytopes[fid]

    def leq(self, f, g) -> bool:
        return set(f) <= set(g)

    def f_vector(self):
        return tuple(len(self._by_dim.get(k, ())) for k in range(-1, self.polytope.dim + 1))

    def poset(self) -> EulerianPoset:
        if self._poset is None:
            ids = self.all_faces()
            self._poset = EulerianPoset.from_leq(
                ids, lambda a, b: set(a) <= set(b), validate=True
            )
        return self._poset

    def interval(self, f, g) -> EulerianPoset:
        """The interval [f, g] of the face lattice as an Eulerian poset."""
        return self.poset().interval(f, g)
