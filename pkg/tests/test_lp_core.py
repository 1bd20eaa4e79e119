import random
from fractions import Fraction

import pytest

import oracles
from anglestruct import (Infeasible, LinearSystem, NotStrict, Optimum,
                         Solution, StrictSolution, Unbounded, fixture,
                         minimize_linear, solve_feasibility_nonneg,
                         solve_feasibility_strict, verify_certificate)
from anglestruct.existence import angle_linear_system
from anglestruct.lp_core import (FREE, LPError, NONNEG, STRICT_POS,
                                 system_from_json, system_to_json)

F = Fraction


def check_solution(sys, x):
    for row, b in zip(sys.coeffs, sys.rhs):
        assert sum(c * v for c, v in zip(row, x)) == b
    for v, sg in zip(x, sys.signs):
        if sg == NONNEG:
            assert v >= 0
        elif sg == STRICT_POS:
            assert v > 0


def test_feasibility_simple_cases():
    sys = LinearSystem.of([[1, 1]], [1], [NONNEG, NONNEG])
    res = solve_feasibility_nonneg(sys)
    assert isinstance(res, Solution)
    check_solution(sys, res.x)

    sys2 = LinearSystem.of([[1, 1]], [-1], [NONNEG, NONNEG])
    res2 = solve_feasibility_nonneg(sys2)
    assert isinstance(res2, Infeasible)
    y = res2.certificate.y
    assert verify_certificate(sys2, y, "nonneg")
    # the canonical refutation: both columns weighted down, y.b positive
    assert sum(yi * bi for yi, bi in zip(y, sys2.rhs)) > 0


def test_feasibility_on_the_two_tet_angle_system():
    fx = fixture("fig8")
    sys = angle_linear_system(fx.triangulation, fx.ac, "semi")
    res = solve_feasibility_nonneg(sys)
    assert isinstance(res, Solution)
    check_solution(sys, res.x)
    # the all-third assignment is one known inhabitant of this polytope
    known = [F(1, 3)] * 12
    for row, b in zip(sys.coeffs, sys.rhs):
        assert sum(c * v for c, v in zip(row, known)) == b


def test_strict_feasibility_simple_cases():
    sys = LinearSystem.of([[1, 1]], [1], [STRICT_POS, STRICT_POS])
    res = solve_feasibility_strict(sys)
    assert isinstance(res, StrictSolution)
    assert res.margin == F(1, 2)
    check_solution(sys, res.x)

    sys2 = LinearSystem.of([[1, 0], [0, 1], [1, 1]], [1, -1, 0],
                           [STRICT_POS, STRICT_POS])
    res2 = solve_feasibility_strict(sys2)
    assert isinstance(res2, NotStrict)
    assert verify_certificate(sys2, res2.certificate.y, "strict")


def test_strict_feasibility_boundary_of_cone():
    # force one angle to zero by prescribing its triangle target at the
    # horn: with one corner target dropped to 0, only a semi solution on
    # the cone boundary survives
    sys = LinearSystem.of([[1, 1, 0], [0, 0, 1], [1, 1, 1]],
                          [1, 0, 1],
                          [STRICT_POS, STRICT_POS, STRICT_POS])
    res = solve_feasibility_strict(sys)
    assert isinstance(res, NotStrict)
    assert verify_certificate(sys, res.certificate.y, "strict")


def test_minimize_examples():
    sys = LinearSystem.of([[1, 1]], [1], [NONNEG, NONNEG])
    res = minimize_linear([F(1), F(0)], sys)
    assert isinstance(res, Optimum) and res.value == 0
    assert res.x[0] == 0 and res.x[1] == 1

    res2 = minimize_linear([F(-1), F(0)], sys)
    assert isinstance(res2, Optimum) and res2.value == -1
    assert res2.x[0] == 1

    free = LinearSystem.of([[1, -1]], [0], [FREE, FREE])
    res3 = minimize_linear([F(1), F(0)], free)
    assert isinstance(res3, Unbounded)
    ray = res3.ray
    # the ray decreases the objective along the homogeneous system
    assert sum(c * v for c, v in zip([F(1), F(0)], ray)) < 0
    assert ray[0] - ray[1] == 0

    infeasible = LinearSystem.of([[1, 1], [1, 1]], [1, 2], [NONNEG, NONNEG])
    res4 = minimize_linear([F(1), F(1)], infeasible)
    assert isinstance(res4, Infeasible)
    assert verify_certificate(infeasible, res4.certificate.y, "nonneg")


def test_verify_certificate_rejects_junk():
    sys = LinearSystem.of([[1, 1]], [-1], [NONNEG, NONNEG])
    assert not verify_certificate(sys, [F(0)], "nonneg")
    assert not verify_certificate(sys, [F(0)], "strict")
    assert not verify_certificate(sys, [F(1)], "nonneg")  # A^T y > 0
    good = solve_feasibility_nonneg(sys).certificate.y
    assert verify_certificate(sys, good, "nonneg")
    with pytest.raises(LPError):
        verify_certificate(sys, good, "bogus-mode")
    # a certificate of the wrong shape is simply not valid
    assert not verify_certificate(sys, [F(1), F(1)], "nonneg")


def test_signs_are_validated():
    with pytest.raises(LPError):
        LinearSystem.of([[1, 1]], [1], [NONNEG, "sometimes"])
    with pytest.raises(LPError):
        LinearSystem.of([[1, 1]], [1, 2], [NONNEG, NONNEG])
    sys = LinearSystem.of([[1, 1]], [1], [STRICT_POS, NONNEG])
    with pytest.raises(LPError):
        solve_feasibility_nonneg(sys)
    with pytest.raises(LPError):
        solve_feasibility_strict(sys)
    with pytest.raises(LPError):
        minimize_linear([F(1)], sys)


def test_determinism():
    sys = LinearSystem.of(
        [[1, 2, -1, 0], [0, 1, 1, -2]], [3, 1],
        [NONNEG, NONNEG, NONNEG, NONNEG])
    first = solve_feasibility_nonneg(sys)
    for _ in range(5):
        again = solve_feasibility_nonneg(sys)
        assert again.x == first.x
    obj = [F(1), F(-1), F(2), F(0)]
    opt = minimize_linear(obj, sys)
    for _ in range(5):
        assert minimize_linear(obj, sys).x == opt.x


def rand_system(rng, rows, cols, signs_pool):
    coeffs = [[F(rng.randint(-3, 3)) for _ in range(cols)]
              for _ in range(rows)]
    rhs = [F(rng.randint(-4, 4)) for _ in range(rows)]
    signs = [rng.choice(signs_pool) for _ in range(cols)]
    return LinearSystem.of(coeffs, rhs, signs)


def test_feasibility_agrees_with_brute_force_on_small_systems():
    rng = random.Random(2026)
    for trial in range(120):
        sys = rand_system(rng, rng.randint(1, 3), rng.randint(1, 5),
                          [NONNEG, NONNEG, FREE])
        res = solve_feasibility_nonneg(sys)
        expect = oracles.bf_feasible(sys)
        assert isinstance(res, Solution) == expect, (trial, sys)
        if isinstance(res, Solution):
            check_solution(sys, res.x)
        else:
            assert verify_certificate(sys, res.certificate.y, "nonneg")


def test_minimize_agrees_with_brute_force_on_small_systems():
    rng = random.Random(2027)
    for trial in range(100):
        cols = rng.randint(1, 5)
        sys = rand_system(rng, rng.randint(1, 3), cols,
                          [NONNEG, NONNEG, FREE])
        obj = [F(rng.randint(-3, 3)) for _ in range(cols)]
        res = minimize_linear(obj, sys)
        status, value = oracles.bf_minimize(obj, sys)
        if status == "infeasible":
            assert isinstance(res, Infeasible), (trial, sys)
        elif status == "unbounded":
            assert isinstance(res, Unbounded), (trial, sys)
        else:
            assert isinstance(res, Optimum), (trial, sys)
            assert res.value == value, (trial, sys)
            check_solution(sys, res.x)


def test_strict_agrees_with_brute_force_on_bounded_systems():
    # bounded strict systems: append a simplex-style normalization row so
    # the brute-force oracle's no-ray requirement holds by construction
    rng = random.Random(2028)
    done = 0
    while done < 60:
        cols = rng.randint(2, 5)
        rows = rng.randint(1, 2)
        coeffs = [[F(rng.randint(-2, 2)) for _ in range(cols)]
                  for _ in range(rows)]
        rhs = [F(rng.randint(-2, 2)) for _ in range(rows)]
        coeffs.append([F(1)] * cols)
        rhs.append(F(rng.randint(1, 3)))
        sys = LinearSystem.of(coeffs, rhs, [STRICT_POS] * cols)
        res = solve_feasibility_strict(sys)
        expect = oracles.bf_strict_feasible(sys)
        assert isinstance(res, StrictSolution) == expect, sys
        if isinstance(res, StrictSolution):
            assert res.margin > 0
            check_solution(sys, res.x)
        else:
            assert verify_certificate(sys, res.certificate.y, "strict")
        done += 1


def test_json_round_trip():
    sys = LinearSystem.of([[F(1, 2), -1], [0, F(3)]], [F(5, 7), 0],
                          [FREE, NONNEG])
    blob = system_to_json(sys)
    again = system_from_json(blob)
    assert again == sys
    # serialized rationals keep exact "p/q" form
    assert blob["coeffs"][0][0] == "1/2"
