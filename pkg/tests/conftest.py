"""Shared fixtures: hand-checked small instances and known timetables."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from ittp.instance import Instance
from ittp.schedule import HapAssignment, Timetable

NL16_PATH = Path(__file__).resolve().parent.parent / "instances" / "NL16.ittp"

NL16_MISSING_MSG = (
    "NL16 distance matrix not available: this environment has no access to the "
    "public TTP benchmark repository. Download the NL16 matrix (16x16 integers) "
    "and save it as instances/NL16.ittp to run this criterion; see README."
)


def _freeze(matrix):
    return tuple(tuple(row) for row in matrix)


def six_team_showcase(alpha: int = 10**6, lam: int = 1) -> Instance:
    """Six teams, two rounds: three cheap cross pairs (distance 1), two
    cheap triangles (distance 2), everything else prohibitively far.

    Greedy matching that grabs the three distance-1 games in round one
    leaves only odd cycles of cheap edges for round two.
    """
    n = 6
    d = [[alpha] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0
    for u, v in ((0, 3), (1, 4), (2, 5)):
        d[u][v] = d[v][u] = 1
    for u, v in ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)):
        d[u][v] = d[v][u] = 2
    return Instance(name=f"SHOWCASE6-a{alpha}", n=n, r=2, lam=lam, dist=_freeze(d))


def showcase_haps() -> HapAssignment:
    """Alternating assignment: odd-indexed teams host round one."""
    return HapAssignment(("HA", "AH", "HA", "AH", "HA", "AH"))


def eight_team_timetable() -> Timetable:
    """Known-feasible 8-team, 6-round timetable (no complementary rows)."""
    text = (
        "1@2 4@3 5@6 8@7\n"
        "1@3 2@7 5@4 6@8\n"
        "4@1 2@3 8@5 6@7\n"
        "7@1 8@2 3@5 4@6\n"
        "1@8 7@4 3@6 5@2\n"
        "6@1 2@4 3@8 7@5\n"
    )
    return Timetable.from_text(text)


def eight_team_haps() -> HapAssignment:
    return HapAssignment((
        "HHAAHA",
        "AHHAAH",
        "AAAHHH",
        "HAHHAA",
        "HHAAHA",
        "AHHAAH",
        "AAAHHH",
        "HAHHAA",
    ))


def swap_demo_m() -> HapAssignment:
    return HapAssignment(("HAHA", "AHHA", "HAAH", "HAAH", "AHHA", "AHAH"))


def swap_demo_m_prime() -> HapAssignment:
    return HapAssignment(("HHAA", "HHAA", "AAHH", "HAAH", "AAHH", "AHHA"))


def random_instance(rng: random.Random, n: int, r: int, lam: int, dmax: int = 50) -> Instance:
    d = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d[i][j] = d[j][i] = rng.randint(0, dmax)
    return Instance(name=f"RAND{n}-{r}", n=n, r=r, lam=lam, dist=_freeze(d))


def random_asymmetric_instance(rng: random.Random, n: int, r: int, lam: int, dmax: int = 50) -> Instance:
    d = [[0 if i == j else rng.randint(0, dmax) for j in range(n)] for i in range(n)]
    return Instance(name=f"ARAND{n}-{r}", n=n, r=r, lam=lam, dist=_freeze(d))


def nl16(r: int) -> Instance:
    from ittp.instance import load

    if not NL16_PATH.exists():
        pytest.fail(NL16_MISSING_MSG)
    return load(NL16_PATH, r=r, lam=3, name="NL16")
