"""Built-in example inputs exercising every pipeline branch.

Each fixture bundles a gluing table with, where meaningful, a canonical
angle assignment and an area-curvature target:

- fig8: the standard 2-tetrahedron ideal triangulation of the
  figure-eight knot complement; all angles pi/3 realize (A, kappa) =
  (0, 0).
- one-tet: a single unglued tetrahedron, the smallest case with
  boundary faces and disk vertex links.
- fig8-flat1: fig8 with a flat tetrahedron inserted along the face pair
  ((0,0), (1,0)); host angles pi/6, flat pattern (pi on the diagonal
  edge pair, 0 elsewhere) on the new tetrahedron.  A flat pair: every
  host triangle has area -1/2, every flat triangle is (0,0,pi).
- fig8-flat2: fig8-flat1 with a second flat tetrahedron inserted along
  ((0,0), (2,3)); two stacked flat tetrahedra.
- fig8-qzero: fig8 with all angles pi/2; every quad area vanishes, so
  the quad-slice certification fails with a witness.
- fig8-infeasible: fig8 with the unrealizable target A = 0,
  kappa = 2 pi on both edges (the edge rows demand angle sum zero while
  the corner rows demand positive sums), yielding Farkas certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .angle_structures import (
    AngleAssignment,
    AreaCurvature,
    realized_area_curvature,
)
from .triangulation import (
    Triangulation,
    insert_flat_tetrahedron,
    parse_triangulation,
)

FIG8_TABLE = """\
# figure-eight knot complement, 2 ideal tetrahedra
tets 2
glue 0 0 1 0 0123
glue 0 1 1 2 1203
glue 0 2 1 3 1032
glue 0 3 1 1 3021
"""

ONE_TET_TABLE = """\
# a single tetrahedron, all four faces boundary
tets 1
"""

_FLAT_PATTERN = (Fraction(1), Fraction(0), Fraction(0),
                 Fraction(0), Fraction(0), Fraction(1))


class FixtureError(ValueError):
    """Raised for unknown fixture names."""


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    triangulation: Triangulation
    angles: Optional[AngleAssignment]
    ac: Optional[AreaCurvature]


def _host_flat_angles(host_tets: int, flat_tets: int) -> AngleAssignment:
    vec = [Fraction(1, 6)] * (6 * host_tets)
    for _ in range(flat_tets):
        vec.extend(_FLAT_PATTERN)
    return AngleAssignment.from_vector(host_tets + flat_tets, vec)


def _fig8() -> Fixture:
    t = parse_triangulation(FIG8_TABLE, name="fig8")
    alpha = AngleAssignment.from_vector(2, [Fraction(1, 3)] * 12)
    return Fixture(
        name="fig8",
        description="figure-eight knot complement; all-pi/3 realizes "
                    "(A, kappa) = (0, 0)",
        triangulation=t, angles=alpha,
        ac=realized_area_curvature(alpha, t))


def _one_tet() -> Fixture:
    t = parse_triangulation(ONE_TET_TABLE, name="one-tet")
    alpha = AngleAssignment.from_vector(1, [Fraction(1, 3)] * 6)
    return Fixture(
        name="one-tet",
        description="a single unglued tetrahedron (boundary everywhere)",
        triangulation=t, angles=alpha,
        ac=realized_area_curvature(alpha, t))


def flat1_triangulation() -> Triangulation:
    base = parse_triangulation(FIG8_TABLE, name="fig8")
    t, _ = insert_flat_tetrahedron(base, (0, 0), (1, 0), (0, 1, 3, 2))
    return t


def _fig8_flat1() -> Fixture:
    t = flat1_triangulation()
    alpha = _host_flat_angles(2, 1)
    return Fixture(
        name="fig8-flat1",
        description="fig8 with one flat tetrahedron inserted; flat semi "
                    "assignment (hosts pi/6, flat pattern on the insert)",
        triangulation=t, angles=alpha,
        ac=realized_area_curvature(alpha, t))


def flat2_triangulation() -> Triangulation:
    base = flat1_triangulation()
    t, _ = insert_flat_tetrahedron(base, (0, 0), (2, 3), (3, 0, 2, 1))
    return t


def _fig8_flat2() -> Fixture:
    t = flat2_triangulation()
    alpha = _host_flat_angles(2, 2)
    return Fixture(
        name="fig8-flat2",
        description="fig8 with two stacked flat tetrahedra; flat semi "
                    "assignment",
        triangulation=t, angles=alpha,
        ac=realized_area_curvature(alpha, t))


def _fig8_qzero() -> Fixture:
    t = parse_triangulation(FIG8_TABLE, name="fig8-qzero")
    alpha = AngleAssignment.from_vector(2, [Fraction(1, 2)] * 12)
    return Fixture(
        name="fig8-qzero",
        description="fig8 with all angles pi/2: every quad area is zero, "
                    "so the quad-slice certification fails with a witness",
        triangulation=t, angles=alpha,
        ac=realized_area_curvature(alpha, t))


def _fig8_infeasible() -> Fixture:
    t = parse_triangulation(FIG8_TABLE, name="fig8-infeasible")
    return Fixture(
        name="fig8-infeasible",
        description="fig8 with target A = 0, kappa = 2 pi on both edges; "
                    "no semi assignment exists and the solvers emit "
                    "certificates",
        triangulation=t, angles=None,
        ac=AreaCurvature.of([0] * 8, [2] * 2))


_BUILDERS = {
    "fig8": _fig8,
    "one-tet": _one_tet,
    "fig8-flat1": _fig8_flat1,
    "fig8-flat2": _fig8_flat2,
    "fig8-qzero": _fig8_qzero,
    "fig8-infeasible": _fig8_infeasible,
}


def fixture_names() -> tuple:
    return tuple(_BUILDERS)


def fixture(name: str) -> Fixture:
    if name not in _BUILDERS:
        raise FixtureError("unknown fixture %r; known: %s"
                           % (name, ", ".join(_BUILDERS)))
    return _BUILDERS[name]()
