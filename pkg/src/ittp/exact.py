"""Exhaustive exact solver for tiny instances.

Depth-first search over rounds: each round enumerates the perfect matchings
of the not-yet-met pairs in lexicographic order (lowest unpaired team first)
with both orientations per game. Streak, balance, and pair constraints prune
during assignment; at round boundaries the incumbent prunes against current
travel plus a per-team completion bound (exact trip optimum from home for
teams currently at home, leg-count times minimum distance for teams on the
road). Intended as a certifying oracle, not a competitive solver.
"""

from __future__ import annotations

import math
import time

from .bounds import _TeamEngine
from .errors import InvalidParametersError
from .heuristic import SolveReport
from .instance import Instance
from .schedule import Timetable
from .trips import enumerate_trips, prune_dominated

_TIME_CHECK_MASK = 0x3FF


def solve_exact(
    instance: Instance,
    time_limit: float | None = None,
    force: bool = False,
) -> SolveReport:
    """Certified optimum by full enumeration; refuses instances beyond
    n <= 8 (or n <= 10 with r = 2) unless ``force`` is set."""
    n, r, lam = instance.n, instance.r, instance.lam
    if not force and not (n <= 8 or (n <= 10 and r == 2)):
        raise InvalidParametersError(
            f"n={n}, r={r} is beyond the intended oracle scale; pass force=True"
        )
    started = time.perf_counter()
    q = r // 2
    engines = [
        _TeamEngine(team_trips, lam)
        for team_trips in prune_dominated(enumerate_trips(instance)).per_team
    ]
    d_min = min(
        instance.d(i, j) for i in range(n) for j in range(n) if i != j
    )

    pos = list(range(n))  # current venue per team
    homes = [0] * n
    aways = [0] * n
    run_char = [""] * n
    run_len = [0] * n
    played = [0] * n  # bitmask of faced opponents
    current: list[list[tuple[int, int]]] = []

    best_value = math.inf
    best_rounds: tuple | None = None
    nodes = 0
    timed_out = False
    top_done = 0
    top_total = 2 * (n - 1)

    def future_bound() -> float:
        total = 0
        for t in range(n):
            left = q - aways[t]
            if pos[t] == t:
                if left:
                    completion = engines[t].min_completion(left, played[t])
                    if completion is None:
                        return math.inf
                    total += completion
            else:
                room = lam - run_len[t]
                trips_after = math.ceil(max(0, left - room) / lam)
                total += (left + trips_after + 1) * d_min
        return total

    def place(t: int, char: str, venue: int, s: int):
        """Apply one team's game; returns an undo record or None if pruned."""
        if run_char[t] == char:
            if run_len[t] + 1 > lam:
                return None
            new_run = run_len[t] + 1
        else:
            new_run = 1
        if char == "H":
            if homes[t] + 1 > q:
                return None
        else:
            if aways[t] + 1 > q:
                return None
        rounds_after = r - 1 - s
        if q - homes[t] - (char == "H") > rounds_after:
            return None
        if q - aways[t] - (char == "A") > rounds_after:
            return None
        old = (pos[t], run_char[t], run_len[t])
        leg = 0
        if char == "A":
            leg = instance.d(pos[t], venue)
            pos[t] = venue
            aways[t] += 1
        else:
            if pos[t] != t:
                leg = instance.d(pos[t], t)
                pos[t] = t
            homes[t] += 1
        run_char[t], run_len[t] = char, new_run
        return (old, leg, char)

    def unplace(t: int, record) -> None:
        (old_pos, old_char, old_run), _, char = record
        if char == "H":
            homes[t] -= 1
        else:
            aways[t] -= 1
        pos[t] = old_pos
        run_char[t], run_len[t] = old_char, old_run

    def match_round(s: int, unpaired: int, cost: int) -> None:
        nonlocal nodes, best_value, best_rounds, timed_out, top_done
        if timed_out:
            return
        nodes += 1
        if nodes & _TIME_CHECK_MASK == 0 and time_limit is not None:
            if time.perf_counter() - started > time_limit:
                timed_out = True
                return
        if unpaired == 0:
            if cost + future_bound() >= best_value:
                return
            next_round(s + 1, cost)
            return
        u = (unpaired & -unpaired).bit_length() - 1
        rest = unpaired & ~(1 << u)
        v = rest
        while v:
            w = (v & -v).bit_length() - 1
            v &= v - 1
            if played[u] >> w & 1:
                continue
            for h, a in ((u, w), (w, u)):
                rec_h = place(h, "H", h, s)
                if rec_h is None:
                    continue
                rec_a = place(a, "A", h, s)
                if rec_a is None:
                    unplace(h, rec_h)
                    continue
                played[u] |= 1 << w
                played[w] |= 1 << u
                current[s].append((h, a))
                match_round(s, rest & ~(1 << w), cost + rec_h[1] + rec_a[1])
                current[s].pop()
                played[u] &= ~(1 << w)
                played[w] &= ~(1 << u)
                unplace(a, rec_a)
                unplace(h, rec_h)
                if s == 0 and len(current[0]) == 0:
                    top_done += 1

    def next_round(s: int, cost: int) -> None:
        nonlocal best_value, best_rounds
        if s == r:
            total = cost
            for t in range(n):
                if pos[t] != t:
                    total += instance.d(pos[t], t)
            if total < best_value:
                best_value = total
                best_rounds = tuple(tuple(sorted(rnd)) for rnd in current)
            return
        match_round(s, (1 << n) - 1, cost)

    current = [[] for _ in range(r)]
    next_round(0, 0)
    runtime = time.perf_counter() - started
    status = "best-found" if timed_out else "optimal"
    note = (
        f"time limit reached after {top_done}/{top_total} top-level branches"
        if timed_out else ""
    )
    return SolveReport(
        best_timetable=Timetable(best_rounds) if best_rounds is not None else None,
        best_value=None if best_value is math.inf else int(best_value),
        seed=None, iterations=nodes, non_improving_streak_limit=None,
        runtime=runtime, status=status, note=note,
    )
