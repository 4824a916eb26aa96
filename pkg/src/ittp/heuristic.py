"""Greedy-matching heuristics over home-away assignments.

Each round is a minimum-weight bipartite perfect matching between that
round's home and away teams, where a match's weight is the travel the away
team incurs (leave home, hop from the previous venue, return home). The
constructive variant schedules one fixed assignment; the iterative variant
hill-climbs over assignments with the two-team home-away swap neighborhood,
re-matching after every move.

The swap neighborhood exchanges the home/away status of two teams in two
rounds, preserving properness and balancedness; it connects the whole
proper-balanced assignment space, and ``thas_connect`` constructs an explicit
move sequence between any two assignments by routing both through the
canonical block assignment.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .construct import orient_pairwise, shuffled_rr_prefix
from .errors import ContractError, StructureError
from .instance import Instance
from .schedule import AWAY, HOME, HapAssignment, Timetable, extract_haps

_LAMBDA_REJECT_CAP = 200_000  # consecutive infeasible move samples before giving up


@dataclass(frozen=True)
class MoveTHAS:
    """Swap of home/away status of teams i and j in rounds q and s (0-indexed)."""

    i: int
    j: int
    q: int
    s: int

    def is_valid(self, m: HapAssignment) -> bool:
        if self.i == self.j or self.q == self.s:
            return False
        return (
            m.entry(self.i, self.s) != m.entry(self.j, self.s)
            and m.entry(self.i, self.s) != m.entry(self.i, self.q)
            and m.entry(self.i, self.q) != m.entry(self.j, self.q)
        )


def apply_move(m: HapAssignment, move: MoveTHAS) -> HapAssignment:
    """Apply a swap move, returning the new assignment."""
    if not move.is_valid(m):
        raise ContractError(f"move {move} is not valid for this assignment")
    rows = [list(row) for row in m.rows]
    for s in (move.q, move.s):
        rows[move.i][s], rows[move.j][s] = rows[move.j][s], rows[move.i][s]
    return HapAssignment(tuple("".join(row) for row in rows))


@dataclass(frozen=True)
class SolveReport:
    best_timetable: Timetable | None
    best_value: int | None
    seed: int | None
    iterations: int
    non_improving_streak_limit: int | None
    runtime: float
    status: str  # completed | premature | optimal | best-found
    premature_round: int | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "best_value": self.best_value,
            "seed": self.seed,
            "iterations": self.iterations,
            "non_improving_streak_limit": self.non_improving_streak_limit,
            "runtime": self.runtime,
            "status": self.status,
            "premature_round": self.premature_round,
            "note": self.note,
        }


def match_cost(
    instance: Instance,
    m: HapAssignment,
    partial_rounds,
    i: int,
    j: int,
    s: int,
) -> int:
    """Away-team travel cost of scheduling (home i, away j) in round s.

    ``partial_rounds`` holds the games of rounds 0..s-1 as (home, away)
    pairs; it supplies j's previous opponent when j was away in s-1.
    Rounds are 0-indexed here; round r-1 is the last one.
    """
    r = instance.r
    if m.entry(i, s) != HOME or m.entry(j, s) != AWAY:
        raise ContractError(f"round {s + 1}: need {i + 1} home and {j + 1} away")
    for rnd in partial_rounds:
        for h, a in rnd:
            if {h, a} == {i, j}:
                raise StructureError(
                    f"teams {i + 1} and {j + 1} already met; edge must be absent"
                )
    cost = 0
    if s == 0 or m.entry(j, s - 1) == HOME:
        cost += instance.d(j, i)
    if s == r - 1 or m.entry(j, s + 1) == HOME:
        cost += instance.d(i, j)
    if s >= 1 and m.entry(j, s - 1) == AWAY:
        prev = None
        for h, a in partial_rounds[s - 1]:
            if a == j:
                prev = h
        if prev is None:
            raise ContractError(f"no away game of team {j + 1} in round {s}")
        cost += instance.d(prev, i)
    return cost


def _home_matrix(m: HapAssignment) -> np.ndarray:
    return np.array([[c == HOME for c in row] for row in m.rows], dtype=bool)


def _run_matchings(dist: np.ndarray, home: np.ndarray, abort_above=None):
    """Schedule all rounds greedily; returns (total, rounds) on success,
    (None, premature_round_0idx) when some round has no perfect matching,
    and (None, None) when aborted for exceeding ``abort_above``."""
    n, r = home.shape
    k = n // 2
    played = np.zeros((n, n), dtype=bool)
    venue = np.full(n, -1)
    total = 0.0
    rounds = []
    for s in range(r):
        homes = np.flatnonzero(home[:, s])
        aways = np.flatnonzero(~home[:, s])
        start = venue[aways] < 0
        end = np.ones(k, dtype=bool) if s == r - 1 else home[aways, s + 1]
        mid = ~start
        cost = dist[np.ix_(aways, homes)] * start[:, None]
        cost = cost + dist[np.ix_(homes, aways)].T * end[:, None]
        if mid.any():
            prev = np.where(venue[aways] < 0, 0, venue[aways])
            cost = cost + dist[np.ix_(prev, homes)] * mid[:, None]
        cost = cost.astype(float)
        cost[played[np.ix_(aways, homes)]] = np.inf
        try:
            rows, cols = linear_sum_assignment(cost)
        except ValueError:
            return None, s
        total += cost[rows, cols].sum()
        if abort_above is not None and total > abort_above:
            return None, None
        a_sel = aways[rows]
        h_sel = homes[cols]
        played[a_sel, h_sel] = True
        played[h_sel, a_sel] = True
        venue = np.full(n, -1)
        venue[a_sel] = h_sel
        rounds.append(tuple(sorted((int(h), int(a)) for h, a in zip(h_sel, a_sel))))
    return int(total), rounds


def _check_assignment(instance: Instance, m: HapAssignment) -> None:
    if m.n != instance.n or m.r != instance.r:
        raise StructureError(
            f"assignment is {m.n}x{m.r}, instance needs {instance.n}x{instance.r}"
        )
    if not m.is_proper():
        raise ContractError("assignment is not proper")
    if not m.is_balanced():
        raise ContractError("assignment is not balanced")
    if not m.is_streak_feasible(instance.lam):
        raise ContractError(f"assignment has a run longer than lam={instance.lam}")


def gm_constructive(instance: Instance, m: HapAssignment) -> SolveReport:
    """Schedule the rounds of a fixed assignment by sequential min-weight
    matchings. A round without a perfect matching is reported as premature,
    not raised."""
    _check_assignment(instance, m)
    started = time.perf_counter()
    dist = np.array(instance.dist, dtype=np.int64)
    total, rounds = _run_matchings(dist, _home_matrix(m))
    runtime = time.perf_counter() - started
    if total is None:
        return SolveReport(
            best_timetable=None, best_value=None, seed=None, iterations=1,
            non_improving_streak_limit=None, runtime=runtime, status="premature",
            premature_round=rounds + 1,
        )
    return SolveReport(
        best_timetable=Timetable(tuple(rounds)), best_value=total, seed=None,
        iterations=1, non_improving_streak_limit=None, runtime=runtime,
        status="completed",
    )


def _random_balanced_pattern(rng: random.Random, r: int, lam: int) -> str:
    if lam == 1:
        return (HOME + AWAY) * (r // 2) if rng.random() < 0.5 else (AWAY + HOME) * (r // 2)
    chars = [HOME] * (r // 2) + [AWAY] * (r // 2)
    for _ in range(100_000):
        rng.shuffle(chars)
        run = 1
        ok = True
        for a, b in zip(chars, chars[1:]):
            run = run + 1 if a == b else 1
            if run > lam:
                ok = False
                break
        if ok:
            return "".join(chars)
    raise ContractError(f"could not sample a pattern with runs <= {lam} for r={r}")


def initial_assignment(instance: Instance, seed: int) -> HapAssignment:
    """Starting assignment for the iterative heuristic.

    For r <= n/2: one random balanced streak-feasible pattern and its
    complement, split over a random half/half team partition (such a pair
    always admits a full greedy schedule). For larger r: the assignment
    induced by the oriented seed-shuffled round-robin prefix (needs lam >= 2).
    """
    n, r = instance.n, instance.r
    rng = random.Random(seed)
    if r <= n // 2:
        pattern = _random_balanced_pattern(rng, r, instance.lam)
        flip = {HOME: AWAY, AWAY: HOME}
        complement = "".join(flip[c] for c in pattern)
        teams = list(range(n))
        rng.shuffle(teams)
        rows = [""] * n
        for idx, t in enumerate(teams):
            rows[t] = pattern if idx < n // 2 else complement
        return HapAssignment(tuple(rows))
    if instance.lam < 2:
        raise ContractError("no feasible timetable exists for lam=1 with r > n/2")
    return extract_haps(orient_pairwise(shuffled_rr_prefix(n, r, seed)))


def gm_iterative(
    instance: Instance,
    seed: int,
    streak_limit: int = 10_000,
    time_limit: float | None = None,
) -> SolveReport:
    """Hill climbing over assignments: sample a swap move, reject it when it
    breaks the streak limit, otherwise re-match all rounds and accept the new
    assignment when the value is at least as good as the best so far.

    Stops after ``streak_limit`` consecutive evaluated candidates without a
    strict improvement (moves that only tie the best are accepted as plateau
    walks but still count toward the streak).
    """
    started = time.perf_counter()
    rng = random.Random(seed)
    n, r = instance.n, instance.r
    lam = instance.lam
    dist = np.array(instance.dist, dtype=np.int64)
    home = _home_matrix(initial_assignment(instance, seed))

    best_value, best_rounds = None, None
    total, rounds = _run_matchings(dist, home)
    if total is not None:
        best_value, best_rounds = total, rounds

    iterations = 0
    streak = 0
    lam_rejects = 0
    note = ""
    all_rounds = list(range(r))
    while streak < streak_limit:
        if time_limit is not None and time.perf_counter() - started > time_limit:
            note = "time limit reached"
            break
        q = rng.randrange(r)
        col = home[:, q]
        i = int(rng.choice(np.flatnonzero(col)))
        j = int(rng.choice(np.flatnonzero(~col)))
        candidates = [
            s for s in all_rounds
            if s != q and not home[i, s] and home[j, s]
        ]
        if not candidates:
            lam_rejects += 1
            if lam_rejects >= _LAMBDA_REJECT_CAP:
                note = "no valid move found; stopped early"
                break
            continue
        s = candidates[rng.randrange(len(candidates))]
        home[[i, j], q] = [False, True]
        home[[i, j], s] = [True, False]
        if _row_run(home[i]) > lam or _row_run(home[j]) > lam:
            home[[i, j], q] = [True, False]
            home[[i, j], s] = [False, True]
            lam_rejects += 1
            if lam_rejects >= _LAMBDA_REJECT_CAP:
                note = "no streak-feasible move found; stopped early"
                break
            continue
        lam_rejects = 0
        iterations += 1
        total, rounds = _run_matchings(dist, home, abort_above=best_value)
        accepted = total is not None and (best_value is None or total <= best_value)
        if accepted:
            if best_value is None or total < best_value:
                best_value, best_rounds = total, rounds
                streak = 0
            else:
                streak += 1  # plateau walk: keep the move, no improvement
        else:
            home[[i, j], q] = [True, False]
            home[[i, j], s] = [False, True]
            streak += 1

    return SolveReport(
        best_timetable=Timetable(tuple(best_rounds)) if best_rounds else None,
        best_value=best_value, seed=seed, iterations=iterations,
        non_improving_streak_limit=streak_limit,
        runtime=time.perf_counter() - started,
        status="completed" if best_value is not None else "premature",
        note=note,
    )


def _row_run(row: np.ndarray) -> int:
    best = run = 1
    prev = row[0]
    for v in row[1:]:
        if v == prev:
            run += 1
            if run > best:
                best = run
        else:
            run = 1
            prev = v
    return best


def thas_connect(m: HapAssignment, m_target: HapAssignment) -> list[MoveTHAS]:
    """Explicit swap-move sequence transforming ``m`` into ``m_target``.

    Both assignments are routed through the canonical block assignment
    (first half of the teams home in the first half of the rounds); since a
    swap move is its own inverse, the second leg is replayed in reverse.
    """
    for name, assignment in (("m", m), ("m_target", m_target)):
        if not assignment.is_proper() or not assignment.is_balanced():
            raise ContractError(f"{name} must be proper and balanced")
    if (m.n, m.r) != (m_target.n, m_target.r):
        raise ContractError("assignments must have identical dimensions")
    if m == m_target:
        return []
    forward = _moves_to_canonical(m)
    backward = _moves_to_canonical(m_target)
    # both legs end at the canonical assignment; shared tail moves cancel
    while forward and backward and forward[-1] == backward[-1]:
        forward.pop()
        backward.pop()
    return forward + backward[::-1]


def _moves_to_canonical(m: HapAssignment) -> list[MoveTHAS]:
    """Moves taking ``m`` to the block assignment, per-round left to right.

    For each round k in the first half, every first-half team still playing
    away at k is repaired: either by a direct swap with a second-half team
    that is home at k, or, when their later rounds conflict, by first
    freeing a later round through an auxiliary third team.
    """
    n, r = m.n, m.r
    half_t, half_r = n // 2, r // 2
    work = [list(row) for row in m.rows]
    moves: list[MoveTHAS] = []

    def do(i: int, j: int, q: int, s: int) -> None:
        for x in (q, s):
            work[i][x], work[j][x] = work[j][x], work[i][x]
        moves.append(MoveTHAS(i=i, j=j, q=q, s=s))

    for k in range(half_r):
        while True:
            u = next((t for t in range(half_t) if work[t][k] == AWAY), None)
            if u is None:
                break
            v = next(t for t in range(half_t, n) if work[t][k] == HOME)
            q_opts = [x for x in range(k + 1, r) if work[u][x] == HOME]
            s_opts = [x for x in range(k + 1, r) if work[v][x] == AWAY]
            q = next((x for x in q_opts if work[v][x] == AWAY), None)
            if q is not None:
                do(u, v, k, q)
                continue
            # u is home only where v is home, and v away only where u is away:
            # free round q through a third team first.
            q, s = q_opts[0], s_opts[0]
            w = next(
                t for t in range(n)
                if t not in (u, v) and work[t][q] == AWAY and work[t][s] == HOME
            )
            do(v, w, s, q)
            do(u, v, k, q)
    return moves
