"""Polynomial-time feasibility constructors.

Three building blocks:

* a single round robin via the circle method (n-1 edge-disjoint rounds),
* orientation of consecutive round pairs along their union cycles, which
  yields one home and one away game per team per pair (so any lam >= 2 works
  for every even r <= n-2),
* the two complementary zero-break patterns and the minimum-trip block
  patterns, both valid whenever r <= n/2.
"""

from __future__ import annotations

import random

from .errors import InvalidParametersError
from .schedule import AWAY, HOME, HapAssignment, Timetable

Rounds = tuple[tuple[tuple[int, int], ...], ...]


def circle_single_rr(n: int) -> Rounds:
    """Single round robin on n teams (n even): n-1 rounds of unordered pairs.

    Team n-1 stays fixed while the others rotate one position per round.
    Pairs are returned as (low, high) tuples sorted within each round.
    """
    if n <= 0 or n % 2 != 0:
        raise InvalidParametersError(f"n must be positive even, got {n}")
    ring = list(range(n - 1))
    rounds = []
    for _ in range(n - 1):
        pairs = [(ring[0], n - 1)]
        for k in range(1, n // 2):
            pairs.append((ring[k], ring[n - 1 - k]))
        rounds.append(tuple(sorted(tuple(sorted(p)) for p in pairs)))
        ring = ring[1:] + ring[:1]
    return tuple(rounds)


def shuffled_rr_prefix(n: int, r: int, seed: int) -> Rounds:
    """First r rounds of a single round robin with team labels shuffled by seed.

    The result is r edge-disjoint perfect matchings on the complete graph;
    different seeds generally give different match sets.
    """
    if r > n - 1:
        raise InvalidParametersError(f"r must be at most n-1, got r={r}, n={n}")
    if r < 1:
        raise InvalidParametersError(f"r must be positive, got {r}")
    base = circle_single_rr(n)
    labels = list(range(n))
    random.Random(seed).shuffle(labels)
    out = []
    for rnd in base[:r]:
        out.append(tuple(sorted(tuple(sorted((labels[u], labels[v]))) for u, v in rnd)))
    return tuple(out)


def orient_pairwise(rounds: Rounds) -> Timetable:
    """Assign home/away so every team has one home and one away game per
    consecutive round pair.

    The union of two edge-disjoint perfect matchings is a disjoint set of
    even cycles; orienting each cycle alternates home and away. The lowest
    team of each cycle travels in the pair's first round.
    """
    if len(rounds) % 2 != 0:
        raise InvalidParametersError(f"round count must be even, got {len(rounds)}")
    n = 2 * len(rounds[0]) if rounds else 0
    oriented: list[tuple[tuple[int, int], ...]] = []
    for a in range(0, len(rounds), 2):
        partner_a = [-1] * n
        partner_b = [-1] * n
        for u, v in rounds[a]:
            partner_a[u], partner_a[v] = v, u
        for u, v in rounds[a + 1]:
            partner_b[u], partner_b[v] = v, u
        if any(p < 0 for p in partner_a) or any(p < 0 for p in partner_b):
            raise InvalidParametersError("each round must be a perfect matching")
        games_a: list[tuple[int, int]] = []
        games_b: list[tuple[int, int]] = []
        visited = [False] * n
        for start in range(n):
            if visited[start]:
                continue
            if partner_a[start] == partner_b[start]:
                raise InvalidParametersError(
                    f"rounds {a + 1} and {a + 2} share the pair "
                    f"({start + 1},{partner_a[start] + 1})"
                )
            # Walk the cycle; the moving team is away on each traversed edge.
            cur, use_a = start, True
            while not visited[cur]:
                visited[cur] = True
                nxt = partner_a[cur] if use_a else partner_b[cur]
                (games_a if use_a else games_b).append((nxt, cur))
                cur, use_a = nxt, not use_a
        oriented.append(tuple(sorted(games_a)))
        oriented.append(tuple(sorted(games_b)))
    return Timetable(tuple(oriented))


def zero_break_haps(n: int, r: int) -> HapAssignment:
    """Complementary alternating patterns: half HAHA..., half AHAH...

    Valid input requires r <= n/2; beyond that the two-pattern pairing graph
    cannot host r distinct opponents per team.
    """
    _check_pattern_params(n, r)
    first = (HOME + AWAY) * (r // 2)
    second = (AWAY + HOME) * (r // 2)
    return HapAssignment(tuple([first] * (n // 2) + [second] * (n // 2)))


def min_legs_haps(n: int, r: int, lam: int) -> HapAssignment:
    """Complementary block patterns achieving ceil(r / (2*lam)) trips per team.

    Patterns consist of full H^lam A^lam blocks with a trailing H^j A^j block
    when j = (r/2) mod lam is nonzero.
    """
    _check_pattern_params(n, r)
    if lam < 1:
        raise InvalidParametersError(f"lam must be >= 1, got {lam}")
    half = r // 2
    j = half % lam
    blocks = (half - j) // lam
    first = (HOME * lam + AWAY * lam) * blocks + (HOME * j + AWAY * j)
    flip = {HOME: AWAY, AWAY: HOME}
    second = "".join(flip[c] for c in first)
    return HapAssignment(tuple([first] * (n // 2) + [second] * (n // 2)))


def _check_pattern_params(n: int, r: int) -> None:
    if n <= 0 or n % 2 != 0 or r <= 0 or r % 2 != 0:
        raise InvalidParametersError(f"need positive even n and r, got n={n}, r={r}")
    if r > n // 2:
        raise InvalidParametersError(
            f"complementary-pair patterns require r <= n/2, got r={r}, n={n}"
        )
