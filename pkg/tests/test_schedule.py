import random

import pytest

from conftest import eight_team_haps, eight_team_timetable, random_instance
from ittp.construct import orient_pairwise, shuffled_rr_prefix
from ittp.errors import ContractError, StructureError
from ittp.instance import generate
from ittp.schedule import (
    HapAssignment,
    Timetable,
    extract_haps,
    travel,
    validate,
)


def _con(n, r, lam=3):
    return generate("CON", n, r, lam)


def test_known_eight_team_timetable_is_feasible():
    inst = _con(8, 6)
    assert validate(inst, eight_team_timetable()) == []


def test_extract_haps_matches_known_assignment():
    assert extract_haps(eight_team_timetable()) == eight_team_haps()


def test_repeated_pairing_reports_c4():
    tt = Timetable((
        ((0, 1), (2, 3)),
        ((0, 1), (3, 2)),
    ))
    violations = validate(_con(4, 2, lam=3), tt)
    codes = {v.constraint for v in violations}
    assert "C4" in codes
    c4 = next(v for v in violations if v.constraint == "C4")
    assert c4.teams == (1, 2) and c4.rounds == (1, 2)


def test_streak_violation_with_lam_one():
    tt = Timetable((
        ((0, 1), (2, 3)),
        ((0, 2), (3, 1)),
    ))
    violations = validate(generate("CON", 4, 2, 1), tt)
    assert any(v.constraint == "C1" and v.teams == (1,) for v in violations)


def test_every_team_once_per_round_c2():
    tt = Timetable((
        ((0, 1), (0, 2)),
        ((0, 1), (2, 3)),
    ))
    violations = validate(_con(4, 2), tt)
    assert any(v.constraint == "C2" for v in violations)


def test_home_count_c3():
    # team 0 hosts both rounds
    tt = Timetable((
        ((0, 1), (2, 3)),
        ((0, 2), (1, 3)),
    ))
    violations = validate(_con(4, 2), tt)
    assert any(v.constraint == "C3" and v.teams == (1,) for v in violations)


def test_validate_dimension_mismatch_is_structural():
    tt = Timetable((((0, 1), (2, 3)),))
    with pytest.raises(StructureError):
        validate(_con(4, 2), tt)


def test_travel_three_game_road_trip():
    rng = random.Random(7)
    inst = random_instance(rng, 8, 6, lam=3)
    tt = eight_team_timetable()
    report = travel(inst, tt)
    # team 3 (0-indexed 2) plays away in rounds 1-3 at 3,0,1 then home:
    # one trip of 3 games, 4 legs.
    d = inst.d
    expected = d(2, 3) + d(3, 0) + d(0, 1) + d(1, 2)
    t3_dist, t3_legs, t3_trips = report.per_team[2]
    # rounds 4-6 are all home for team 3, so that trip is its only travel
    assert (t3_dist, t3_legs, t3_trips) == (expected, 4, 1)
    assert report.total_legs == 8 * 6 // 2 + report.trip_count


def test_travel_zero_matrix():
    inst = random_instance(random.Random(1), 8, 6, lam=3, dmax=0)
    report = travel(inst, eight_team_timetable())
    assert report.total_distance == 0
    assert report.total_legs == 24 + report.trip_count


def test_travel_unit_distances_equal_legs():
    report = travel(_con(8, 6), eight_team_timetable())
    assert report.total_distance == report.total_legs


def test_travel_rejects_infeasible():
    tt = Timetable((
        ((0, 1), (2, 3)),
        ((0, 1), (3, 2)),
    ))
    with pytest.raises(ContractError):
        travel(_con(4, 2), tt)


def test_travel_deterministic_and_legs_identity_randomized():
    rng = random.Random(42)
    for _ in range(40):
        n = rng.choice([4, 6, 8, 10])
        r = rng.choice([x for x in range(2, n - 1, 2)])
        inst = random_instance(rng, n, r, lam=2)
        tt = orient_pairwise(shuffled_rr_prefix(n, r, seed=rng.randrange(10**6)))
        assert validate(inst, tt) == []
        rep1 = travel(inst, tt)
        rep2 = travel(inst, tt)
        assert rep1 == rep2
        assert rep1.total_legs == n * r // 2 + rep1.trip_count


def test_validate_empty_implies_good_haps():
    rng = random.Random(3)
    for _ in range(10):
        n = rng.choice([6, 8, 12])
        r = rng.choice([x for x in range(2, n - 1, 2)])
        inst = random_instance(rng, n, r, lam=2)
        tt = orient_pairwise(shuffled_rr_prefix(n, r, seed=rng.randrange(10**6)))
        assert validate(inst, tt) == []
        m = extract_haps(tt)
        assert m.is_proper() and m.is_balanced()
        assert m.max_run() <= inst.lam


def test_extract_haps_single_round():
    tt = Timetable((((0, 1),),))
    m = extract_haps(tt)
    assert m.entry(0, 0) == "H" and m.entry(1, 0) == "A"


def test_flipping_all_games_complements_haps():
    tt = eight_team_timetable()
    flipped = Timetable(
        tuple(tuple(sorted((a, h) for h, a in rnd)) for rnd in tt.rounds)
    )
    assert extract_haps(flipped) == extract_haps(tt).complement()


def test_timetable_text_round_trip(tmp_path):
    tt = eight_team_timetable()
    path = tmp_path / "tt.txt"
    tt.write(path)
    assert Timetable.read(path) == tt
    assert path.read_text().splitlines()[0] == "1@2 4@3 5@6 8@7"


def test_timetable_from_text_rejects_garbage():
    with pytest.raises(StructureError):
        Timetable.from_text("1@2 3-4\n")
    with pytest.raises(StructureError):
        Timetable.from_text("")


def test_hap_assignment_checks():
    m = HapAssignment(("HA", "AH"))
    assert m.is_proper() and m.is_balanced() and m.max_run() == 1
    lop = HapAssignment(("HH", "AA"))
    assert lop.is_proper() and not lop.is_balanced() and lop.max_run() == 2
    with pytest.raises(ValueError):
        HapAssignment(("HX",))
    with pytest.raises(ValueError):
        HapAssignment(("HA", "H"))
