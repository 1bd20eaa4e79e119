import random

import pytest

import oracles
from anglestruct import (Triangulation, TriangulationError,
                         build_edge_classes, build_vertex_classes,
                         fixture, fixture_names, format_triangulation,
                         insert_flat_tetrahedron, is_ideal_triangulation,
                         is_orientable, parse_triangulation)
from anglestruct.fixtures import FIG8_TABLE, ONE_TET_TABLE
from anglestruct.triangulation import (EDGE_VERTICES, EDGES_AT_VERTEX,
                                       opposite_edge)


def test_edge_tables_are_consistent():
    # the six tet edges, the opposite-edge pairing, and the three edges
    # meeting each vertex must all agree with each other
    for k, (u, v) in enumerate(EDGE_VERTICES):
        ou, ov = EDGE_VERTICES[opposite_edge(k)]
        assert {u, v} | {ou, ov} == {0, 1, 2, 3}
    for vert in range(4):
        assert EDGES_AT_VERTEX[vert] == tuple(
            k for k, (u, v) in enumerate(EDGE_VERTICES) if vert in (u, v))


def test_parse_format_round_trip_on_fixtures():
    for name in fixture_names():
        t = fixture(name).triangulation
        again = parse_triangulation(format_triangulation(t))
        assert again.tet_count == t.tet_count
        for i in range(t.tet_count):
            for f in range(4):
                assert again.gluing(i, f) == t.gluing(i, f)


@pytest.mark.parametrize("text,fragment", [
    ("", "missing 'tets N' header"),
    ("glue 0 0 1 0 0123", "line 1: expected 'tets N' header"),
    ("tets x", "line 1: bad tetrahedron count"),
    ("tets 0", "line 1: need at least one"),
    ("tets 1\nglue 0 0 0 1", "line 2: expected 'glue I F J G P'"),
    ("tets 1\nglue 0 0 0 q 0123", "line 2: bad index"),
    ("tets 1\nglue 0 0 0 1 0124", "line 2: bad permutation"),
    ("tets 2\nglue 0 0 1 0 0213\nglue 1 0 0 0 0312", "non-involutive"),
    ("tets 1\nglue 0 0 2 0 0213", "index 2 out of range"),
    ("tets 1\nglue 0 0 0 0 0213", "glued to itself"),
    ("tets 2\nglue 0 0 1 1 0123", "does not carry face 0 to face 1"),
])
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(TriangulationError) as err:
        parse_triangulation(text)
    assert fragment in str(err.value)


def test_edge_classes_match_union_find_on_every_fixture():
    for name in fixture_names():
        t = fixture(name).triangulation
        got = sorted(tuple(sorted(set(c.corners)))
                     for c in build_edge_classes(t))
        assert got == oracles.union_find_edge_partition(t), name


def test_edge_class_valences_and_invariants():
    expected = {
        "fig8": [6, 6],
        "one-tet": [1, 1, 1, 1, 1, 1],
        "fig8-flat1": [8, 10],
        "fig8-flat2": [10, 14],
    }
    for name, valences in expected.items():
        t = fixture(name).triangulation
        classes = build_edge_classes(t)
        assert sorted(len(c.corners) for c in classes) == valences
        # every corner of every tet appears exactly once across classes
        assert sum(len(c.corners) for c in classes) == 6 * t.tet_count
        assert all(not c.is_boundary for c in classes) or name == "one-tet"
    one = fixture("one-tet").triangulation
    assert all(c.is_boundary for c in build_edge_classes(one))


def test_vertex_classes_and_ideality():
    fig8 = fixture("fig8").triangulation
    (vc,) = build_vertex_classes(fig8)
    assert (vc.link_euler, vc.link_closed, vc.link_orientable) == (0, True, True)
    assert is_ideal_triangulation(fig8)[0]

    one = fixture("one-tet").triangulation
    vcs = build_vertex_classes(one)
    assert [(v.link_euler, v.link_closed) for v in vcs] == [(1, False)] * 4
    flag, report = is_ideal_triangulation(one)
    assert not flag and len(report) == 4

    for name, euler in (("fig8-flat1", -2), ("fig8-flat2", -4)):
        t = fixture(name).triangulation
        (vc,) = build_vertex_classes(t)
        assert (vc.link_euler, vc.link_closed, vc.link_orientable) == \
            (euler, True, True)
        assert is_ideal_triangulation(t)[0]

    # two unglued tets: eight disk links
    disjoint = Triangulation(2)
    assert sorted((v.link_euler, v.link_closed)
                  for v in build_vertex_classes(disjoint)) == \
        [(1, False)] * 8


def test_orientability():
    assert is_orientable(fixture("fig8").triangulation)
    assert is_orientable(fixture("one-tet").triangulation)
    # flipping the parity of one gluing in a triangulation whose dual
    # graph has cycles through it makes some cycle orientation-reversing
    bad = FIG8_TABLE.replace("glue 0 0 1 0 0123", "glue 0 0 1 0 0132")
    assert not is_orientable(parse_triangulation(bad))


def test_first_homology_pins_the_gluing_tables():
    # the dual-spine Smith oracle separates this table from any sibling
    # with the same edge valences but different topology
    assert oracles.h1_invariants(fixture("fig8").triangulation) == (1, [])
    assert oracles.h1_invariants(fixture("fig8-flat1").triangulation) == (2, [])
    assert oracles.h1_invariants(fixture("fig8-flat2").triangulation) == (3, [])


def test_insert_flat_tetrahedron_frozen_gluings():
    fig8 = fixture("fig8").triangulation
    t2, flat = insert_flat_tetrahedron(fig8, (0, 0), (1, 0), (0, 1, 3, 2))
    assert t2.tet_count == 3
    assert (flat.tet, flat.diagonal) == (2, (0, 5))
    assert t2.gluing(0, 0) == (2, 3, (3, 0, 1, 2))
    assert t2.gluing(1, 0) == (2, 2, (2, 1, 3, 0))
    # the squashed tet folds onto itself across its two front faces
    assert t2.gluing(2, 0) == (2, 1, (1, 3, 0, 2))
    assert t2.boundary_faces() == fig8.boundary_faces() == ()
    # all other gluings are untouched
    for i in range(2):
        for f in range(1, 4):
            assert t2.gluing(i, f) == fig8.gluing(i, f)


def test_insert_flat_tetrahedron_errors():
    fig8 = fixture("fig8").triangulation
    with pytest.raises(TriangulationError,
                       match="neither glued to each other nor both boundary"):
        insert_flat_tetrahedron(fig8, (0, 1), (1, 0), (1, 0, 2, 3))
    with pytest.raises(TriangulationError, match="not a permutation"):
        insert_flat_tetrahedron(fig8, (0, 0), (1, 0), (0, 1, 2, 2))
    with pytest.raises(TriangulationError,
                       match="does not carry face 0 to face 0"):
        insert_flat_tetrahedron(fig8, (0, 0), (1, 0), (1, 2, 3, 0))


def test_insert_flat_tetrahedron_between_boundary_faces():
    one = fixture("one-tet").triangulation
    t2, flat = insert_flat_tetrahedron(one, (0, 0), (0, 1), (1, 0, 2, 3))
    assert t2.tet_count == 2 and flat.tet == 1
    assert t2.gluing(0, 0) is not None and t2.gluing(0, 1) is not None
    assert len(t2.boundary_faces()) == 2


def test_repeated_insertion_matches_the_flat2_fixture():
    t2 = fixture("fig8-flat2").triangulation
    classes = build_edge_classes(t2)
    assert sorted(len(c.corners) for c in classes) == [10, 14]
    assert is_orientable(t2) and is_ideal_triangulation(t2)[0]


def test_random_tables_round_trip(tmp_path):
    rng = random.Random(99)
    for trial in range(10):
        n = rng.randint(1, 4)
        t = Triangulation(n)
        text = format_triangulation(t)
        assert parse_triangulation(text).tet_count == n
