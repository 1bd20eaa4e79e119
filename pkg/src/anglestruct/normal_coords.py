"""Normal disk types, compatibility equations, and the solution space.

A tetrahedron carries 7 normal disk types: 4 triangles (one cutting off
each vertex) and 3 quadrilaterals (one separating each opposite edge
pair).  A normal coordinate assigns a rational number to every disk type,
quads first, tet-major.  Coordinates whose disk counts match across every
interior face form the solution space C(M,T); that matching is one linear
equation per (interior face, normal arc type) pair.

The module also evaluates the generalized Euler characteristic chi_star,
the per-edge coefficient functional z, and builds a verified basis of the
solution space consisting of one tetrahedral vector per tetrahedron and
one edge vector per edge class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .triangulation import (
    EDGE_INDEX,
    EDGE_VERTICES,
    EDGES_AT_VERTEX,
    FACE_VERTICES,
    Triangulation,
    build_edge_classes,
)

# The four tet-edges a quad of type p crosses: all but the pair (p, 5-p)
# it separates.
QUAD_EDGES = tuple(
    tuple(k for k in range(6) if k not in (p, 5 - p)) for p in range(3)
)


def quad_type_at_arc(face: int, vertex: int) -> int:
    """The quad type whose arc in the given face cuts off the given vertex.

    That quad separates the tet-edge joining the vertex to the face's
    opposite label, so its type is the edge pair containing that edge.
    """
    k = EDGE_INDEX[(vertex, face)]
    return min(k, 5 - k)


class NormalCoordinateError(ValueError):
    """Raised for dimension mismatches or non-solution inputs."""


@dataclass(frozen=True)
class NormalCoordinate:
    """A rational weight per normal disk type of one triangulation."""
    quads: tuple
    tris: tuple

    @classmethod
    def zero(cls, tet_count: int):
        return cls(quads=(Fraction(0),) * (3 * tet_count),
                   tris=(Fraction(0),) * (4 * tet_count))

    @classmethod
    def from_vector(cls, tet_count: int, vec):
        vec = tuple(Fraction(v) for v in vec)
        if len(vec) != 7 * tet_count:
            raise NormalCoordinateError(
                "expected %d coordinates, got %d" % (7 * tet_count, len(vec)))
        return cls(quads=vec[:3 * tet_count], tris=vec[3 * tet_count:])

    @property
    def vector(self):
        return self.quads + self.tris

    def quad(self, tet: int, p: int) -> Fraction:
        return self.quads[3 * tet + p]

    def tri(self, tet: int, l: int) -> Fraction:
        return self.tris[4 * tet + l]

    def scale(self, c):
        c = Fraction(c)
        return NormalCoordinate(quads=tuple(c * v for v in self.quads),
                                tris=tuple(c * v for v in self.tris))

    def add(self, other):
        return NormalCoordinate(
            quads=tuple(a + b for a, b in zip(self.quads, other.quads)),
            tris=tuple(a + b for a, b in zip(self.tris, other.tris)))


def is_embedded_candidate(s: NormalCoordinate) -> bool:
    """Whether s could count the disks of an embedded normal surface:
    non-negative integers with at most one nonzero quad type per tet."""
    if any(v < 0 or v.denominator != 1 for v in s.vector):
        return False
    for i in range(len(s.quads) // 3):
        if sum(1 for p in range(3) if s.quad(i, p) != 0) > 1:
            return False
    return True


@dataclass(frozen=True)
class CompatibilitySystem:
    """The disk-matching equations: one row per interior face arc type."""
    tet_count: int
    matrix: tuple
    labels: tuple

    @property
    def columns(self) -> int:
        return 7 * self.tet_count


def compatibility_system(t: Triangulation) -> CompatibilitySystem:
    """Build the matching equations across every interior face.

    For the arc cutting off vertex v inside glued face (i,f) ~ (j,g,perm),
    the disks crossing it on each side are one quad and one triangle; the
    row equates the two sides.  When a face is glued to a face of the same
    tetrahedron the two sides may hit the same column and entries cancel.
    """
    n = t.tet_count
    rows = []
    labels = []
    for (i, f), (j, g), perm in t.glued_pairs():
        for v in FACE_VERTICES[f]:
            row = [Fraction(0)] * (7 * n)
            row[3 * i + quad_type_at_arc(f, v)] += 1
            row[3 * n + 4 * i + v] += 1
            row[3 * j + quad_type_at_arc(g, perm[v])] -= 1
            row[3 * n + 4 * j + perm[v]] -= 1
            rows.append(tuple(row))
            labels.append(((i, f), (j, g), v))
    return CompatibilitySystem(tet_count=n, matrix=tuple(rows),
                               labels=tuple(labels))


def is_in_solution_space(sys: CompatibilitySystem,
                         s: NormalCoordinate) -> bool:
    vec = s.vector
    if len(vec) != sys.columns:
        raise NormalCoordinateError(
            "coordinate has %d entries, system has %d columns"
            % (len(vec), sys.columns))
    return all(sum(a * b for a, b in zip(row, vec)) == 0
               for row in sys.matrix)


def _boundary_flags(t: Triangulation):
    return {(i, f): t.gluing(i, f) is None
            for i in range(t.tet_count) for f in range(4)}


def chi_star_disk(t: Triangulation, disk, edge_classes=None) -> Fraction:
    """The chi_star weight of one disk type.

    ``disk`` is ("tri", tet, vertex) or ("quad", tet, type).  The weight
    is -(arcs + boundary arcs)/2 + the sum of 1/valence over the edge
    classes the disk crosses; for an embedded surface these weights add
    up to the surface's Euler characteristic.
    """
    if edge_classes is None:
        edge_classes = build_edge_classes(t)
    valence_of = {}
    for cls in edge_classes:
        for corner in cls.corners:
            valence_of[corner] = cls.valence
    kind, i, which = disk
    if kind == "tri":
        edges = EDGES_AT_VERTEX[which]
        faces = [f for f in range(4) if f != which]
        inner = Fraction(1)
    elif kind == "quad":
        edges = QUAD_EDGES[which]
        faces = range(4)
        inner = Fraction(2)
    else:
        raise NormalCoordinateError("unknown disk kind %r" % (kind,))
    b = sum(1 for f in faces if t.gluing(i, f) is None)
    total = -(inner + b) / 2
    for k in edges:
        total += Fraction(1, valence_of[(i, k)])
    return total


def chi_star(t: Triangulation, s: NormalCoordinate,
             edge_classes=None) -> Fraction:
    """The generalized Euler characteristic: linear in the coordinate."""
    if edge_classes is None:
        edge_classes = build_edge_classes(t)
    total = Fraction(0)
    for i in range(t.tet_count):
        for p in range(3):
            if s.quad(i, p) != 0:
                total += s.quad(i, p) * chi_star_disk(
                    t, ("quad", i, p), edge_classes)
        for l in range(4):
            if s.tri(i, l) != 0:
                total += s.tri(i, l) * chi_star_disk(
                    t, ("tri", i, l), edge_classes)
    return total


def z_functional(t: Triangulation, s: NormalCoordinate, e,
                 sys: CompatibilitySystem = None) -> Fraction:
    """The edge coefficient of s at edge class e.

    Averages, over the corners identified to e (with multiplicity), the
    total weight of the disk types crossing that tet-edge: the triangles
    at its two endpoints and the two quads not separating it.  For an
    embedded surface this is half the number of intersections with e.
    """
    if sys is None:
        sys = compatibility_system(t)
    if not is_in_solution_space(sys, s):
        raise NormalCoordinateError(
            "coordinate is not in the solution space")
    total = Fraction(0)
    for i, k in e.corners:
        u, v = EDGE_VERTICES[k]
        total += s.tri(i, u) + s.tri(i, v)
        pair = min(k, 5 - k)
        for p in range(3):
            if p != pair:
                total += s.quad(i, p)
    return total / (2 * e.valence)


class BasisVerificationError(RuntimeError):
    """The constructed solution-space basis failed an exactness check."""


@dataclass(frozen=True)
class SolutionBasis:
    """A verified basis of the solution space for an ideal triangulation.

    ``w_sigma[i]`` is supported on tetrahedron i alone: +1 on its four
    triangles, -1 on its three quads.  ``w_edge[j]`` weights each triangle
    by how many of its corner's tet-edges lie in edge class j and each
    quad by minus the number of its separated pair in class j; the edge
    coefficients of w_edge[j] under z_functional are exactly delta_jk.
    """
    w_sigma: tuple
    w_edge: tuple
    edge_classes: tuple


def _tetrahedral_vector(n: int, i: int) -> NormalCoordinate:
    quads = [Fraction(0)] * (3 * n)
    tris = [Fraction(0)] * (4 * n)
    for p in range(3):
        quads[3 * i + p] = Fraction(-1)
    for l in range(4):
        tris[4 * i + l] = Fraction(1)
    return NormalCoordinate(quads=tuple(quads), tris=tuple(tris))


def _edge_vector(n: int, cls) -> NormalCoordinate:
    quads = [Fraction(0)] * (3 * n)
    tris = [Fraction(0)] * (4 * n)
    for i, k in cls.corners:
        u, v = EDGE_VERTICES[k]
        tris[4 * i + u] += 1
        tris[4 * i + v] += 1
        quads[3 * i + min(k, 5 - k)] -= 1
    return NormalCoordinate(quads=tuple(quads), tris=tuple(tris))


def solution_space_basis(t: Triangulation) -> SolutionBasis:
    """Construct and exhaustively verify the tetrahedra-and-edges basis.

    Requires a triangulation without boundary faces.  Verification checks
    membership of every vector in the solution space, the delta property
    of the edge vectors under z_functional, vanishing of z on the
    tetrahedral vectors, linear independence, and that the count n+m
    matches the solution space dimension; any failure raises
    BasisVerificationError rather than returning a bad basis.
    """
    if t.boundary_faces():
        raise BasisVerificationError(
            "basis requires a triangulation without boundary faces")
    n = t.tet_count
    edge_classes = build_edge_classes(t)
    m = len(edge_classes)
    sys = compatibility_system(t)
    w_sigma = tuple(_tetrahedral_vector(n, i) for i in range(n))
    w_edge = tuple(_edge_vector(n, cls) for cls in edge_classes)

    for name, vecs in (("tetrahedral", w_sigma), ("edge", w_edge)):
        for idx, w in enumerate(vecs):
            if not is_in_solution_space(sys, w):
                raise BasisVerificationError(
                    "%s vector %d is not in the solution space" % (name, idx))
    for w in w_sigma:
        for cls in edge_classes:
            if z_functional(t, w, cls, sys) != 0:
                raise BasisVerificationError(
                    "tetrahedral vector has nonzero edge coefficient")
    for j, w in enumerate(w_edge):
        for cls in edge_classes:
            want = Fraction(1) if cls.index == j else Fraction(0)
            if z_functional(t, w, cls, sys) != want:
                raise BasisVerificationError(
                    "edge vector %d has wrong coefficient at edge %d"
                    % (j, cls.index))
    stacked = [w.vector for w in w_sigma + w_edge]
    if _linalg.rank(stacked) != n + m:
        raise BasisVerificationError("basis vectors are dependent")
    if 7 * n - _linalg.rank(sys.matrix) != n + m:
        raise BasisVerificationError(
            "solution space dimension differs from n+m")
    return SolutionBasis(w_sigma=w_sigma, w_edge=w_edge,
                         edge_classes=edge_classes)


def combine(basis: SolutionBasis, omega, z) -> NormalCoordinate:
    """The solution-space element with tetrahedral weights omega and edge
    weights z."""
    n = len(basis.w_sigma)
    s = NormalCoordinate.zero(n)
    for w, c in zip(basis.w_sigma, omega):
        if c != 0:
            s = s.add(w.scale(c))
    for w, c in zip(basis.w_edge, z):
        if c != 0:
            s = s.add(w.scale(c))
    return s


def decompose(t: Triangulation, s: NormalCoordinate,
              basis: SolutionBasis = None):
    """The unique (omega, z) with s = sum omega_i w_sigma_i + sum z_j w_edge_j.

    The edge weights are read off with z_functional; the tetrahedral
    weights come from the residual, which is then checked to vanish
    exactly.
    """
    if basis is None:
        basis = solution_space_basis(t)
    sys = compatibility_system(t)
    z = tuple(z_functional(t, s, cls, sys) for cls in basis.edge_classes)
    residual = s
    for w, c in zip(basis.w_edge, z):
        if c != 0:
            residual = residual.add(w.scale(-c))
    omega = tuple(residual.tri(i, 0) for i in range(t.tet_count))
    check = combine(basis, omega, z)
    if check.vector != s.vector:
        raise BasisVerificationError(
            "decomposition failed to recover the coordinate")
    return omega, z


@dataclass(frozen=True)
class QuadConePredicates:
    all_quads_nonneg: bool
    some_quad_positive: bool


def quad_cone_predicates(s: NormalCoordinate) -> QuadConePredicates:
    return QuadConePredicates(
        all_quads_nonneg=all(v >= 0 for v in s.quads),
        some_quad_positive=any(v > 0 for v in s.quads))
