"""Timetables, home-away assignments, constraint checking, and travel accounting.

A timetable lists, per round, the ordered games ``(home, away)``. The induced
home-away assignment is a matrix of 'H'/'A' entries. Feasibility means:

* C1: no team has more than ``lam`` consecutive home or away games,
* C2: every team plays exactly once per round,
* C3: every team has exactly r/2 home and r/2 away games,
* C4: two teams meet at most once.

Travel is accounted in road trips: a team leaves home before a run of away
games, drives venue to venue, and returns home after the run's last game.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ContractError, StructureError
from .instance import Instance

HOME = "H"
AWAY = "A"


@dataclass(frozen=True)
class HapAssignment:
    """Per-team home/away pattern matrix; ``rows[t][s]`` is 'H' or 'A'."""

    rows: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("empty assignment")
        r = len(self.rows[0])
        for row in self.rows:
            if len(row) != r or any(c not in (HOME, AWAY) for c in row):
                raise ValueError(f"bad pattern row {row!r}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def r(self) -> int:
        return len(self.rows[0])

    def entry(self, t: int, s: int) -> str:
        """Status of team ``t`` in round ``s`` (both 0-indexed)."""
        return self.rows[t][s]

    def is_proper(self) -> bool:
        """Exactly n/2 teams at home in every round."""
        return all(
            sum(row[s] == HOME for row in self.rows) == self.n // 2
            for s in range(self.r)
        )

    def is_balanced(self) -> bool:
        """Every team has exactly r/2 home games."""
        return all(row.count(HOME) == self.r // 2 for row in self.rows)

    def max_run(self) -> int:
        """Longest run of equal consecutive entries over all teams."""
        best = 0
        for row in self.rows:
            run = 1
            for a, b in zip(row, row[1:]):
                run = run + 1 if a == b else 1
                best = max(best, run)
            best = max(best, 1)
        return best

    def is_streak_feasible(self, lam: int) -> bool:
        return self.max_run() <= lam

    def complement(self) -> "HapAssignment":
        flip = {HOME: AWAY, AWAY: HOME}
        return HapAssignment(tuple("".join(flip[c] for c in row) for row in self.rows))


@dataclass(frozen=True)
class Timetable:
    """Rounds of ordered games; ``rounds[s]`` holds ``(home, away)`` pairs, 0-indexed teams."""

    rounds: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def r(self) -> int:
        return len(self.rounds)

    @property
    def n(self) -> int:
        return 2 * len(self.rounds[0]) if self.rounds else 0

    def games(self):
        """Yield (round, home, away) over all games."""
        for s, rnd in enumerate(self.rounds):
            for h, a in rnd:
                yield s, h, a

    def to_text(self) -> str:
        """One line per round; token ``h@a`` means team a visits team h (1-indexed)."""
        return "\n".join(
            " ".join(f"{h + 1}@{a + 1}" for h, a in rnd) for rnd in self.rounds
        ) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Timetable":
        rounds = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            games = []
            for token in line.split():
                try:
                    h, a = token.split("@")
                    games.append((int(h) - 1, int(a) - 1))
                except ValueError as exc:
                    raise StructureError(f"bad game token {token!r}") from exc
            rounds.append(tuple(games))
        if not rounds:
            raise StructureError("no rounds in timetable text")
        return cls(tuple(rounds))

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: str | Path) -> "Timetable":
        return cls.from_text(Path(path).read_text())


@dataclass(frozen=True)
class Violation:
    """One violated constraint occurrence. Teams/rounds are reported 1-indexed."""

    constraint: str
    teams: tuple[int, ...]
    rounds: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.constraint}: {self.message}"


@dataclass(frozen=True)
class TravelReport:
    total_distance: int
    total_legs: int
    trip_count: int
    per_team: tuple[tuple[int, int, int], ...]  # (distance, legs, trips) per team


def _check_shape(instance: Instance, timetable: Timetable) -> None:
    if timetable.r != instance.r:
        raise StructureError(
            f"timetable has {timetable.r} rounds, instance expects {instance.r}"
        )
    for s, rnd in enumerate(timetable.rounds):
        if len(rnd) != instance.n // 2:
            raise StructureError(
                f"round {s + 1} has {len(rnd)} games, expected {instance.n // 2}"
            )
        for h, a in rnd:
            if not (0 <= h < instance.n and 0 <= a < instance.n) or h == a:
                raise StructureError(f"round {s + 1} has invalid game ({h + 1},{a + 1})")


def validate(instance: Instance, timetable: Timetable) -> list[Violation]:
    """Check C1-C4 and report every violation; an empty list means feasible."""
    _check_shape(instance, timetable)
    n, r, lam = instance.n, instance.r, instance.lam
    out: list[Violation] = []

    for s, rnd in enumerate(timetable.rounds):
        seen: dict[int, int] = {}
        for h, a in rnd:
            seen[h] = seen.get(h, 0) + 1
            seen[a] = seen.get(a, 0) + 1
        for t in range(n):
            c = seen.get(t, 0)
            if c != 1:
                out.append(
                    Violation("C2", (t + 1,), (s + 1,),
                              f"team {t + 1} plays {c} games in round {s + 1}")
                )

    meetings: dict[tuple[int, int], list[int]] = {}
    for s, h, a in timetable.games():
        meetings.setdefault((min(h, a), max(h, a)), []).append(s)
    for (u, v), rounds_met in meetings.items():
        if len(rounds_met) > 1:
            out.append(
                Violation("C4", (u + 1, v + 1), tuple(s + 1 for s in rounds_met),
                          f"teams {u + 1} and {v + 1} meet {len(rounds_met)} times")
            )

    status = [["-"] * r for _ in range(n)]
    for s, h, a in timetable.games():
        status[h][s] = HOME
        status[a][s] = AWAY
    for t in range(n):
        homes = status[t].count(HOME)
        if homes != r // 2:
            out.append(
                Violation("C3", (t + 1,), (),
                          f"team {t + 1} has {homes} home games, expected {r // 2}")
            )
        run, run_start = 1, 0
        for s in range(1, r):
            if status[t][s] != "-" and status[t][s] == status[t][s - 1]:
                run += 1
            else:
                run, run_start = 1, s
            if run == lam + 1:
                out.append(
                    Violation("C1", (t + 1,), tuple(range(run_start + 1, s + 2)),
                              f"team {t + 1} has {lam + 1} consecutive "
                              f"{'home' if status[t][s] == HOME else 'away'} games")
                )
    return out


def extract_haps(timetable: Timetable) -> HapAssignment:
    """Home-away assignment induced by a structurally valid timetable."""
    n, r = timetable.n, timetable.r
    status = [[""] * r for _ in range(n)]
    for s, h, a in timetable.games():
        if not (0 <= h < n and 0 <= a < n) or status[h][s] or status[a][s]:
            raise StructureError(f"round {s + 1} is not a partition of the teams")
        status[h][s] = HOME
        status[a][s] = AWAY
    if any("" in row for row in status):
        raise StructureError("some team has no game in some round")
    return HapAssignment(tuple("".join(row) for row in status))


def travel(instance: Instance, timetable: Timetable) -> TravelReport:
    """Road-trip travel distance and leg counts of a feasible timetable."""
    violations = validate(instance, timetable)
    if violations:
        raise ContractError(
            f"timetable is infeasible ({len(violations)} violations); first: {violations[0]}"
        )
    n, r = instance.n, instance.r
    opponent_home = [[-1] * r for _ in range(n)]  # venue of t's away game, else -1
    for s, h, a in timetable.games():
        opponent_home[a][s] = h
    per_team = []
    for t in range(n):
        dist = legs = trips = 0
        pos = t  # current venue
        for s in range(r):
            venue = opponent_home[t][s]
            if venue >= 0:
                if pos == t:
                    trips += 1
                dist += instance.d(pos, venue)
                legs += 1
                pos = venue
            elif pos != t:
                dist += instance.d(pos, t)
                legs += 1
                pos = t
        if pos != t:
            dist += instance.d(pos, t)
            legs += 1
        per_team.append((dist, legs, trips))
    return TravelReport(
        total_distance=sum(p[0] for p in per_team),
        total_legs=sum(p[1] for p in per_team),
        trip_count=sum(p[2] for p in per_team),
        per_team=tuple(per_team),
    )
