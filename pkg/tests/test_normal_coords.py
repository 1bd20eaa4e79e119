import random
from fractions import Fraction

import pytest

from anglestruct import (NormalCoordinate, build_edge_classes,
                         build_vertex_classes, chi_star, chi_star_disk,
                         combine, compatibility_system, decompose, fixture,
                         fixture_names, is_in_solution_space,
                         solution_space_basis, z_functional)
from anglestruct.normal_coords import (NormalCoordinateError, QUAD_EDGES,
                                       is_embedded_candidate,
                                       quad_cone_predicates, quad_type_at_arc)
from anglestruct.triangulation import EDGE_INDEX


def vertex_link_coordinate(t):
    return NormalCoordinate(quads=(Fraction(0),) * (3 * t.tet_count),
                            tris=(Fraction(1),) * (4 * t.tet_count))


def rand_omega_z(rng, n, m, lo=-6, hi=6):
    omega = tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 4))
                  for _ in range(n))
    z = tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 4))
              for _ in range(m))
    return omega, z


def test_quad_type_at_arc_names_the_separated_edge_pair():
    for face in range(4):
        for vertex in range(4):
            if vertex == face:
                continue
            k = EDGE_INDEX[(vertex, face)]
            assert quad_type_at_arc(face, vertex) == min(k, 5 - k)


def test_quad_edges_are_the_four_edges_missed_by_the_pair():
    for p in range(3):
        crossed = set(QUAD_EDGES[p])
        assert crossed == set(range(6)) - {p, 5 - p}


def test_compatibility_rows_are_two_on_two_off():
    # each matching equation pairs two disk types on each side of a face
    # arc; a self-glued tet can cancel the shared quad term, leaving two
    fig8 = fixture("fig8").triangulation
    for row in compatibility_system(fig8).matrix:
        assert sorted(v for v in row if v != 0) == [-1, -1, 1, 1]
    for name, twos in (("fig8-flat1", 1), ("fig8-flat2", 2)):
        sys = compatibility_system(fixture(name).triangulation)
        shapes = [tuple(sorted(v for v in row if v != 0))
                  for row in sys.matrix]
        assert all(s in ((-1, -1, 1, 1), (-1, 1)) for s in shapes)
        assert shapes.count((-1, 1)) == twos


def test_compatibility_dimensions():
    fig8 = fixture("fig8").triangulation
    sys = compatibility_system(fig8)
    assert (len(sys.matrix), len(sys.matrix[0])) == (12, 14)
    flat1 = fixture("fig8-flat1").triangulation
    sys1 = compatibility_system(flat1)
    assert (len(sys1.matrix), len(sys1.matrix[0])) == (18, 21)


def test_chi_star_disk_weights():
    fig8 = fixture("fig8").triangulation
    assert chi_star_disk(fig8, ("tri", 0, 0)) == 0
    assert chi_star_disk(fig8, ("quad", 1, 2)) == Fraction(-1, 3)
    one = fixture("one-tet").triangulation
    assert chi_star_disk(one, ("tri", 0, 3)) == 1
    assert chi_star_disk(one, ("quad", 0, 0)) == 1
    with pytest.raises(NormalCoordinateError):
        chi_star_disk(fig8, ("pentagon", 0, 0))


def test_basis_solutions_and_their_chi_star():
    fig8 = fixture("fig8").triangulation
    sys = compatibility_system(fig8)
    basis = solution_space_basis(fig8)
    assert len(basis.w_sigma) == 2 and len(basis.w_edge) == 2
    for w in basis.w_sigma + basis.w_edge:
        assert is_in_solution_space(sys, w)
    assert [chi_star(fig8, w) for w in basis.w_sigma] == [1, 1]
    assert [chi_star(fig8, w) for w in basis.w_edge] == [2, 2]


def test_z_functional_is_dual_to_the_edge_solutions():
    fig8 = fixture("fig8").triangulation
    basis = solution_space_basis(fig8)
    ecs = build_edge_classes(fig8)
    for j, w in enumerate(basis.w_edge):
        assert [z_functional(fig8, w, e) for e in ecs] == \
            [1 if k == j else 0 for k in range(len(ecs))]
    for w in basis.w_sigma:
        assert all(z_functional(fig8, w, e) == 0 for e in ecs)


def test_vertex_link_is_in_the_solution_space_with_frozen_decomposition():
    fig8 = fixture("fig8").triangulation
    link = vertex_link_coordinate(fig8)
    assert is_in_solution_space(compatibility_system(fig8), link)
    assert chi_star(fig8, link) == 0
    omega, z = decompose(fig8, link)
    assert omega == (-2, -2) and z == (1, 1)


def test_chi_star_of_vertex_links_equals_link_euler_everywhere():
    for name in fixture_names():
        t = fixture(name).triangulation
        total = sum(v.link_euler for v in build_vertex_classes(t))
        assert chi_star(t, vertex_link_coordinate(t)) == total, name


def test_combine_decompose_round_trip():
    rng = random.Random(41)
    for name in ("fig8", "fig8-flat1"):
        t = fixture(name).triangulation
        basis = solution_space_basis(t)
        sys = compatibility_system(t)
        n, m = len(basis.w_sigma), len(basis.w_edge)
        for _ in range(25):
            omega, z = rand_omega_z(rng, n, m)
            s = combine(basis, omega, z)
            assert is_in_solution_space(sys, s)
            assert decompose(t, s, basis) == (omega, z)


def test_is_in_solution_space_rejects_perturbed_vectors():
    fig8 = fixture("fig8").triangulation
    sys = compatibility_system(fig8)
    basis = solution_space_basis(fig8)
    w = basis.w_sigma[0]
    bumped = NormalCoordinate(
        quads=(w.quads[0] + 1,) + tuple(w.quads[1:]), tris=w.tris)
    assert not is_in_solution_space(sys, bumped)


def test_solution_space_basis_refuses_boundary():
    from anglestruct import BasisVerificationError
    one = fixture("one-tet").triangulation
    with pytest.raises(BasisVerificationError):
        solution_space_basis(one)


def test_decompose_rejects_vectors_outside_the_space():
    fig8 = fixture("fig8").triangulation
    bad = NormalCoordinate(quads=(Fraction(1),) + (Fraction(0),) * 5,
                           tris=(Fraction(0),) * 8)
    with pytest.raises(ValueError):
        decompose(fig8, bad)


def test_embedded_candidate_and_cone_predicates():
    fig8 = fixture("fig8").triangulation
    link = vertex_link_coordinate(fig8)
    assert is_embedded_candidate(link)
    two_quads = NormalCoordinate(
        quads=(Fraction(1), Fraction(1)) + (Fraction(0),) * 4,
        tris=(Fraction(0),) * 8)
    assert not is_embedded_candidate(two_quads)
    preds = quad_cone_predicates(two_quads)
    assert preds.all_quads_nonneg and preds.some_quad_positive
    preds0 = quad_cone_predicates(link)
    assert preds0.all_quads_nonneg and not preds0.some_quad_positive


def test_normal_coordinate_arithmetic():
    a = NormalCoordinate(quads=(Fraction(1), Fraction(0), Fraction(2)),
                         tris=(Fraction(1),) * 4)
    b = a.scale(Fraction(1, 2))
    assert b.quad(0, 2) == 1 and b.tri(0, 3) == Fraction(1, 2)
    c = a.add(b)
    assert c.quad(0, 0) == Fraction(3, 2)
