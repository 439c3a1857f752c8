import random
from fractions import Fraction

import pytest

from polyhodge.generators import instance_corpus, random_height_function, random_lattice_polytope
from polyhodge.subdivision import (
    CellComplex,
    HeightFunction,
    euler_relation_check,
    regular_subdivision,
    trivial_subdivision,
)

from conftest import cube, quartic_triangle_pair


def test_quartic_triangle_has_four_maximal_cells():
    s = quartic_triangle_pair()
    expected = {
        tuple(sorted([(0, 0), (4, 0), (1, 1), (2, 1)])),
        tuple(sorted([(0, 0), (0, 4), (1, 1), (1, 2)])),
        tuple(sorted([(4, 0), (0, 4), (2, 1), (1, 2)])),
        tuple(sorted([(1, 1), (2, 1), (1, 2)])),
    }
    assert set(s.maximal_cells) == expected
    dims = {}
    for cid in s.nonempty_ids():
        dims[s.dim_of(cid)] = dims.get(s.dim_of(cid), 0) + 1
    assert dims == {0: 6, 1: 9, 2: 4}


def test_carriers_and_boundary_flags():
    s = quartic_triangle_pair()
    lat = s.polytope.face_lattice()
    tri_cell = tuple(sorted([(1, 1), (2, 1), (1, 2)]))
    assert s.carrier(tri_cell) == lat.top
    assert not s.is_boundary(tri_cell)
    bottom_edge = tuple(sorted([(0, 0), (4, 0)]))
    carrier = s.carrier(bottom_edge)
    assert set(lat.face_polytope(carrier).vertices) == {(0, 0), (4, 0)}
    assert s.is_boundary(bottom_edge)
    assert s.is_boundary(())
    assert len(s.interior_ids()) == 13  # 3 vertices + 6 edges + 4 two-cells


def test_carrier_matches_brute_force():
    for s in instance_corpus(5, 6, dims=(2, 3)):
        lat = s.polytope.face_lattice()
        for cid in s.nonempty_ids():
            # Smallest face containing the cell, found by exhaustive search.
            best = None
            for fid in lat.all_faces():
                if fid == ():
                    continue
                poly = lat.face_polytope(fid)
                if all(poly.contains(v) for v in cid):
                    if best is None or lat.face_dim(fid) < lat.face_dim(best):
                        best = fid
            assert s.carrier(cid) == best


def test_trivial_subdivision_of_square():
    s = trivial_subdivision(cube(2))
    assert len(s.nonempty_ids()) == 9
    for cid in s.nonempty_ids():
        carrier_poly = s.polytope.face_lattice().face_polytope(s.carrier(cid))
        assert carrier_poly.vertices == cid


def test_square_diagonal_split():
    sq = cube(2)
    heights = {(0, 0): Fraction(0), (1, 0): Fraction(0), (0, 1): Fraction(0), (1, 1): Fraction(1)}
    s = regular_subdivision(HeightFunction(sq, heights))
    assert set(s.maximal_cells) == {
        tuple(sorted([(0, 0), (1, 0), (0, 1)])),
        tuple(sorted([(1, 0), (0, 1), (1, 1)])),
    }


def test_constant_heights_give_trivial_subdivision():
    sq = cube(2)
    heights = {v: Fraction(5) for v in sq.vertices}
    s = regular_subdivision(HeightFunction(sq, heights))
    assert s.ids == trivial_subdivision(sq).ids


def test_rational_heights_accepted():
    sq = cube(2)
    heights = {
        (0, 0): Fraction(1, 2),
        (1, 0): Fraction(0),
        (0, 1): Fraction(0),
        (1, 1): Fraction(1, 3),
    }
    s = regular_subdivision(HeightFunction(sq, heights))
    assert len(s.maximal_cells) == 2


def test_heights_must_span_polytope():
    sq = cube(2)
    with pytest.raises(ValueError):
        HeightFunction(sq, {(0, 0): Fraction(0), (1, 1): Fraction(1)})


def test_restriction_to_edge():
    s = quartic_triangle_pair()
    lat = s.polytope.face_lattice()
    edge = next(
        f
        for f in lat.faces_of_dim(1)
        if set(lat.face_polytope(f).vertices) == {(0, 0), (4, 0)}
    )
    r = s.restrict(edge)
    expected = {cid for cid in s.nonempty_ids() if all(v[1] == 0 for v in cid)}
    assert set(r.nonempty_ids()) == expected
    assert s.restrict(lat.top) is s


def test_restriction_of_trivial_is_trivial():
    p = cube(3)
    s = trivial_subdivision(p)
    lat = p.face_lattice()
    for fid in lat.faces_of_dim(2):
        r = s.restrict(fid)
        assert r.ids == trivial_subdivision(lat.face_polytope(fid)).ids
    with pytest.raises(ValueError):
        s.restrict(((0, 1, 2),))


def test_euler_relation_trivial_subdivision():
    for p in (cube(2), cube(3)):
        s = trivial_subdivision(p)
        assert euler_relation_check(s)


def test_euler_relation_on_quartic_triangle():
    s = quartic_triangle_pair()
    # Direct count: interior cells are 3 vertices, 6 edges, 4 two-cells.
    total = sum((-1) ** s.dim_of(c) for c in s.interior_ids())
    assert total == 3 - 6 + 4 == 1
    assert euler_relation_check(s)
    lat = s.polytope.face_lattice()
    for fid in lat.all_faces():
        if fid != lat.top:
            assert euler_relation_check(s, fid)


def test_euler_relation_rejects_improper_face():
    s = trivial_subdivision(cube(2))
    with pytest.raises(ValueError):
        euler_relation_check(s, s.polytope.face_lattice().top)


def test_invalid_complex_rejected():
    # Dropping a maximal cell breaks the volume accounting.
    s = quartic_triangle_pair()
    cells = [s.cell_polytope(c) for c in s.nonempty_ids() if c != s.maximal_cells[0]]
    with pytest.raises(ValueError):
        CellComplex(s.polytope, cells)


def test_regular_subdivision_idempotent():
    rng = random.Random(2)
    for _ in range(4):
        p = random_lattice_polytope(rng, 2)
        hf = random_height_function(rng, p)
        s = regular_subdivision(hf)
        assert regular_subdivision(s.heights).ids == s.ids


def test_random_subdivisions_satisfy_euler_relation():
    for s in instance_corpus(9, 8, dims=(2, 3)):
        lat = s.polytope.face_lattice()
        for fid in lat.all_faces():
            if fid != lat.top:
                assert euler_relation_check(s, fid)
