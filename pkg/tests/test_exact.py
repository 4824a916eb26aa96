import random

import pytest

from conftest import random_instance, six_team_showcase
from ittp.errors import InvalidParametersError
from ittp.exact import solve_exact
from ittp.instance import Instance, generate
from ittp.schedule import travel, validate


def test_showcase_optimum_is_twenty():
    inst = six_team_showcase(alpha=10**6)
    report = solve_exact(inst)
    assert report.status == "optimal"
    assert report.best_value == 20
    assert validate(inst, report.best_timetable) == []
    assert travel(inst, report.best_timetable).total_distance == 20


def test_four_teams_unit_distances():
    report = solve_exact(generate("CON", 4, 2, 3))
    assert report.best_value == 8  # 4 away games + 4 returns, unit legs


def test_zero_matrix():
    inst = random_instance(random.Random(0), 6, 2, lam=1, dmax=0)
    assert solve_exact(inst).best_value == 0


def test_scaling_invariance():
    rng = random.Random(8)
    base = random_instance(rng, 6, 2, lam=2, dmax=9)
    scaled = Instance(
        name="scaled", n=6, r=2, lam=2,
        dist=tuple(tuple(5 * v for v in row) for row in base.dist),
    )
    a = solve_exact(base)
    b = solve_exact(scaled)
    assert b.best_value == 5 * a.best_value
    # the unscaled optimal timetable stays optimal after scaling
    assert travel(scaled, a.best_timetable).total_distance == b.best_value


def test_deterministic():
    inst = random_instance(random.Random(4), 6, 4, lam=2)
    a = solve_exact(inst)
    b = solve_exact(inst)
    assert a.best_value == b.best_value
    assert a.best_timetable == b.best_timetable
    assert a.iterations == b.iterations


def test_refuses_large_without_force():
    with pytest.raises(InvalidParametersError):
        solve_exact(generate("CON", 12, 4, 3))
    # n = 10 with r = 2 is within the oracle envelope
    report = solve_exact(generate("CON", 10, 2, 3))
    assert report.best_value == 20


def test_time_limit_best_found():
    inst = random_instance(random.Random(12), 8, 4, lam=3)
    report = solve_exact(inst, time_limit=1e-6)
    assert report.status == "best-found"
    assert "top-level" in report.note


def test_infeasible_configuration_detected():
    # lam=1 with r > n/2 admits no timetable at all
    inst = generate("CON", 6, 4, 1)
    report = solve_exact(inst)
    assert report.status == "optimal"
    assert report.best_value is None
    assert report.best_timetable is None
