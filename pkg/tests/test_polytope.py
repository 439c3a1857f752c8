import itertools
import random
from fractions import Fraction

import pytest

from polyhodge import linalg
from polyhodge.polytope import LatticePolytope

from conftest import cube, segment, unit_simplex


def in_convex_hull(point, others, dim):
    """Independent certificate: point lies in conv(others) iff it lies in the
    simplex of some affinely independent subset of size <= dim + 1."""
    for size in range(1, dim + 2):
        for subset in itertools.combinations(others, size):
            base = subset[0]
            rows = [linalg.vec_sub(q, base) for q in subset[1:]]
            if linalg.rank(rows) != size - 1:
                continue
            cols = [tuple(r[i] for r in rows) for i in range(dim)]
            target = linalg.vec_sub(point, base)
            sol = linalg.solve(cols, list(target)) if rows else ()
            if rows:
                if sol is None:
                    continue
                if not all(
                    sum(l * r[i] for l, r in zip(sol, rows)) == target[i]
                    for i in range(dim)
                ):
                    continue
                if all(l >= 0 for l in sol) and sum(sol) <= 1:
                    return True
            else:
                if point == base:
                    return True
    return False


def test_hull_of_subdivided_triangle_points():
    p = LatticePolytope.convex_hull([(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)])
    assert p.vertices == ((0, 0), (0, 4), (4, 0))
    assert p.dim == 2


def test_hull_of_single_point():
    p = LatticePolytope.convex_hull([(3, -1)])
    assert p.dim == 0
    assert p.vertices == ((3, -1),)


def test_hull_vertices_match_brute_force_certificate():
    rng = random.Random(12)
    pts = sorted({tuple(rng.randint(0, 10) for _ in range(3)) for _ in range(16)})
    hull = LatticePolytope.convex_hull(pts)
    for p in pts:
        others = [q for q in pts if q != p]
        inside = in_convex_hull(p, others, 3)
        assert (p in hull.vertices) == (not inside)


def test_face_lattice_counts():
    assert len(cube(2).face_lattice().faces) == 10
    tri = LatticePolytope.convex_hull([(0, 0), (4, 0), (0, 4)])
    assert len(tri.face_lattice().faces) == 8
    assert cube(3).face_lattice().f_vector() == (1, 8, 12, 6, 1)


def test_face_lattices_are_eulerian():
    rng = random.Random(5)
    polys = [cube(2), cube(3), unit_simplex(3)]
    for _ in range(4):
        pts = {tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(6)}
        p = LatticePolytope.convex_hull(sorted(pts))
        polys.append(p)
    for p in polys:
        assert p.face_lattice().poset().is_eulerian()


def count_triangle_dilate(m):
    return sum(1 for x in range(4 * m + 1) for y in range(4 * m + 1) if x + y <= 4 * m)


def test_lattice_point_counts():
    assert cube(2).lattice_point_count(3) == 16
    tri = LatticePolytope.convex_hull([(0, 0), (4, 0), (0, 4)])
    assert tri.lattice_point_count(1) == count_triangle_dilate(1) == 15
    assert tri.lattice_point_count(2) == count_triangle_dilate(2)
    assert LatticePolytope.empty(2).lattice_point_count(5) == 0
    assert tri.lattice_point_count(0) == 1


def test_interior_lattice_point_counts():
    seg = LatticePolytope.convex_hull([(0, 0), (4, 0)])
    assert seg.interior_lattice_point_count() == 3
    tri = LatticePolytope.convex_hull([(1, 1), (2, 1), (1, 2)])
    assert tri.interior_lattice_point_count() == 0
    quad = LatticePolytope.convex_hull([(0, 0), (4, 0), (2, 1), (1, 1)])
    assert quad.interior_lattice_point_count() == 0
    pt = LatticePolytope.convex_hull([(7,)])
    assert pt.interior_lattice_point_count() == 1


def test_boundary_plus_interior():
    rng = random.Random(31)
    for _ in range(5):
        pts = {tuple(rng.randint(0, 4) for _ in range(2)) for _ in range(6)}
        p = LatticePolytope.convex_hull(sorted(pts))
        if p.dim < 2:
            continue
        lattice = p.face_lattice()
        boundary = sum(
            lattice.face_polytope(f).interior_lattice_point_count()
            for f in lattice.all_faces()
            if f != () and f != lattice.top
        )
        assert p.lattice_point_count(1) == boundary + p.interior_lattice_point_count()


def lagrange_fit(values):
    """Exact polynomial through (0, values[0]), ..., (d, values[d])."""

    def evaluate(m):
        total = Fraction(0)
        d = len(values) - 1
        for i, v in enumerate(values):
            term = Fraction(v)
            for j in range(d + 1):
                if j != i:
                    term *= Fraction(m - j, i - j)
            total += term
        return total

    return evaluate


def test_ehrhart_is_polynomial():
    rng = random.Random(77)
    for _ in range(4):
        pts = {tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(7)}
        p = LatticePolytope.convex_hull(sorted(pts))
        d = p.dim
        fit = lagrange_fit([p.lattice_point_count(m) for m in range(d + 1)])
        for m in range(d + 1, d + 4):
            assert fit(m) == p.lattice_point_count(m)


def random_unimodular(rng, n):
    # Product of random elementary matrices: determinant +-1 by construction.
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.randint(-2, 2)
        for k in range(n):
            mat[i][k] += c * mat[j][k]
    return mat


def test_counts_invariant_under_unimodular_maps():
    rng = random.Random(4)
    tri = LatticePolytope.convex_hull([(0, 0), (4, 0), (0, 4)])
    for _ in range(5):
        mat = random_unimodular(rng, 2)
        shift = (rng.randint(-3, 3), rng.randint(-3, 3))
        moved = LatticePolytope.convex_hull(
            [
                tuple(sum(mat[i][k] * v[k] for k in range(2)) + shift[i] for i in range(2))
                for v in tri.vertices
            ]
        )
        for m in range(4):
            assert moved.lattice_point_count(m) == tri.lattice_point_count(m)
        assert moved.normalized_volume() == tri.normalized_volume()


def test_normalize_full_dim():
    seg = LatticePolytope.convex_hull([(0, 0), (0, 3)])
    model, _ = seg.normalize_full_dim()
    assert model.vertices == ((0,), (3,))
    diag = LatticePolytope.convex_hull([(0, 0), (2, 2)])
    model2, map2 = diag.normalize_full_dim()
    assert model2.vertices == ((0,), (2,))
    assert diag.lattice_point_count(1) == 3 == model2.lattice_point_count(1)
    full = cube(2)
    same, mp = full.normalize_full_dim()
    assert same is full and mp.is_identity


def test_dual_and_reflexive():
    diamond = LatticePolytope.convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    square = LatticePolytope.convex_hull([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert diamond.reflexive_check()
    assert diamond.dual_polytope().vertices == square.vertices
    assert square.dual_polytope().vertices == diamond.vertices
    assert square.dual_polytope().dual_polytope().vertices == square.vertices
    tall = LatticePolytope.convex_hull([(1, 0), (-1, 0), (0, 2), (0, -2)])
    assert not tall.reflexive_check()
    with pytest.raises(ValueError):
        tall.dual_polytope()
    off = LatticePolytope.convex_hull([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(ValueError):
        off.dual_polytope()


def test_dual_face_map_pairing():
    diamond = LatticePolytope.convex_hull([(1, 0), (-1, 0), (0, 1), (0, -1)])
    dual, mapping = diamond.dual_face_map()
    lat = diamond.face_lattice()
    dlat = dual.face_lattice()
    seen = set()
    for fid, gid in mapping.items():
        seen.add(gid)
        if fid not in ((), lat.top):
            assert lat.face_dim(fid) + dlat.face_dim(gid) == diamond.dim - 1
    assert seen == set(dlat.faces)
    # inclusion-reversing
    for a in mapping:
        for b in mapping:
            if set(a) <= set(b):
                assert set(mapping[b]) <= set(mapping[a])


def test_normalized_volume_examples():
    assert unit_simplex(3).normalized_volume() == 1
    assert cube(3).normalized_volume() == 6
    assert segment(7).normalized_volume() == 7
    tri = LatticePolytope.convex_hull([(0, 0), (4, 0), (0, 4)])
    assert tri.normalized_volume() == 16
