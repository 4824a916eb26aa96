import json
import random

import pytest

from conftest import random_instance, six_team_showcase
from oracles import dlb_exhaustive, min_team_trips
from ittp.bounds import (
    BoundReport,
    dlb,
    edge_colorable,
    ilb,
    min_legs_formula,
    trip_count_floor,
)
from ittp.errors import ContractError
from ittp.instance import generate
from ittp.trips import enumerate_trips, prune_dominated


def _catalog(inst):
    return prune_dominated(enumerate_trips(inst))


def test_min_legs_formula_values():
    assert min_legs_formula(40, 10, 3).value == 280
    assert min_legs_formula(40, 20, 3).value == 560
    low = min_legs_formula(40, 30, 3)
    assert low.value == 800
    assert "lower bound only" in low.note
    assert min_legs_formula(40, 10, 3).status == "formula"
    assert "exact" in min_legs_formula(40, 10, 3).note
    assert trip_count_floor(40, 10, 3) == 80


def test_ilb_zero_matrix():
    inst = random_instance(random.Random(0), 6, 4, lam=2, dmax=0)
    assert ilb(inst, _catalog(inst)).value == 0


def test_ilb_matches_per_team_enumeration():
    rng = random.Random(17)
    for _ in range(6):
        inst = random_instance(rng, 6, 4, lam=2)
        cat = _catalog(inst)
        expected = sum(min_team_trips(cat.trips(t), 2) for t in range(6))
        report = ilb(inst, cat)
        assert report.value == expected
        assert report.status == "optimal"


def test_ilb_unit_distances():
    # 5 away games in trips of <=3 needs 2 trips: 7 legs per team
    inst = generate("CON", 12, 10, 3)
    assert ilb(inst, _catalog(inst)).value == 12 * 7


def test_dlb_showcase_instance():
    inst = six_team_showcase(alpha=1000)
    cat = _catalog(inst)
    report = dlb(inst, cat)
    assert report.value == 20
    assert report.status == "optimal"
    assert dlb_exhaustive(inst, cat) == 20


def test_dlb_zero_matrix():
    inst = random_instance(random.Random(2), 6, 2, lam=1, dmax=0)
    assert dlb(inst, _catalog(inst)).value == 0


def test_dlb_equals_exhaustive_on_small_instances():
    rng = random.Random(99)
    cases = [(4, 2, 1), (6, 2, 2), (6, 4, 2), (8, 2, 3), (8, 4, 2)]
    for n, r, lam in cases:
        inst = random_instance(rng, n, r, lam)
        cat = _catalog(inst)
        assert dlb(inst, cat).value == dlb_exhaustive(inst, cat), (n, r, lam)


def test_bound_ordering_chain():
    rng = random.Random(5)
    for _ in range(5):
        inst = random_instance(rng, 6, 4, lam=2)
        cat = _catalog(inst)
        v_ilb = ilb(inst, cat).value
        v_dlb = dlb(inst, cat).value
        v_1f = dlb(inst, cat, one_factor=True).value
        v_ml = dlb(inst, cat, min_legs=True).value
        assert v_ilb <= v_dlb <= v_1f
        assert v_dlb <= v_ml


def test_dlb_one_factor_matches_exhaustive():
    rng = random.Random(31)
    for _ in range(3):
        inst = random_instance(rng, 6, 2, lam=1)
        cat = _catalog(inst)
        expected = dlb_exhaustive(inst, cat, one_factor=True)
        assert dlb(inst, cat, one_factor=True).value == expected


def test_dlb_min_legs_matches_exhaustive():
    rng = random.Random(32)
    inst = random_instance(rng, 8, 4, lam=2)
    cat = _catalog(inst)
    floor = trip_count_floor(8, 4, 2)
    assert dlb(inst, cat, min_legs=True).value == dlb_exhaustive(
        inst, cat, min_legs_floor=floor
    )


def test_dlb_time_limit_returns_certified_bound():
    inst = six_team_showcase(alpha=1000)
    cat = _catalog(inst)
    report = dlb(inst, cat, time_limit=1e-6)
    assert report.status == "best-found"
    assert report.value <= 20  # still a valid lower bound
    assert report.value >= 0


def test_dlb_rejects_nonpositive_time_limit():
    inst = generate("CON", 6, 2, 1)
    with pytest.raises(ContractError):
        dlb(inst, _catalog(inst), time_limit=0)


def test_edge_colorable_basics():
    # even cycle: 2 colors suffice; odd cycle: impossible with 2
    even = [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert edge_colorable(4, 2, even)
    odd = [(0, 1), (1, 2), (2, 0)]
    assert not edge_colorable(3, 2, odd)
    k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert edge_colorable(4, 3, k4)
    assert not edge_colorable(4, 2, k4)


def test_report_is_json_ready():
    report = min_legs_formula(8, 2, 1)
    payload = json.dumps(report.to_dict())
    assert json.loads(payload)["method"] == "MINLEGS_FORMULA"
    assert isinstance(report, BoundReport)


def test_dlb_methods_tagged():
    inst = generate("CON", 6, 2, 1)
    cat = _catalog(inst)
    assert dlb(inst, cat).method == "DLB"
    assert dlb(inst, cat, one_factor=True).method == "DLB_1F"
    assert dlb(inst, cat, min_legs=True).method == "DLB_MINLEG"
