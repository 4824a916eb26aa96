"""Road-trip enumeration: the variable universe for bounds and trip models.

A road trip for team t is an ordered sequence of 1..lam distinct opponents;
its cost is the leg sum home -> stops -> home. Catalogs list every trip per
team in a fixed canonical order (by length, then lexicographic stops) so that
downstream model files are byte-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import NamedTuple

from .errors import CapExceededError
from .instance import Instance


class RoadTrip(NamedTuple):
    """One ordered trip; NamedTuple keeps full-catalog enumeration cheap."""

    team: int
    stops: tuple[int, ...]
    cost: int
    mask: int  # bitmask of stops, bit i set when team i is visited

    @property
    def length(self) -> int:
        return len(self.stops)

    def latest_start(self, r: int) -> int:
        """Latest 1-indexed round in which the trip can start and still finish."""
        return r - len(self.stops) + 1


@dataclass(frozen=True)
class TripCatalog:
    name: str
    n: int
    lam: int
    pruned: bool
    per_team: tuple[tuple[RoadTrip, ...], ...]

    def trips(self, team: int) -> tuple[RoadTrip, ...]:
        return self.per_team[team]


def per_team_count(n: int, lam: int) -> int:
    """Number of ordered trips per team: sum over f of (n-1)!/(n-1-f)!."""
    total = 0
    for f in range(1, lam + 1):
        c = 1
        for k in range(f):
            c *= n - 1 - k
        total += c
    return total


def trip_cost(instance: Instance, team: int, stops: tuple[int, ...]) -> int:
    cost = instance.d(team, stops[0])
    for a, b in zip(stops, stops[1:]):
        cost += instance.d(a, b)
    return cost + instance.d(stops[-1], team)


def enumerate_trips(instance: Instance, cap: int = 10_000_000) -> TripCatalog:
    """Enumerate all ordered road trips of length 1..lam for every team."""
    size = per_team_count(instance.n, instance.lam)
    if size > cap:
        raise CapExceededError(
            f"{size} trips per team exceeds the cap of {cap}; "
            "raise the cap explicitly to proceed"
        )
    per_team = []
    dist = instance.dist
    bit = [1 << i for i in range(instance.n)]
    for t in range(instance.n):
        opponents = [i for i in range(instance.n) if i != t]
        home_row = dist[t]
        team_trips = []
        for f in range(1, instance.lam + 1):
            for stops in permutations(opponents, f):
                prev = stops[0]
                cost = home_row[prev]
                mask = bit[prev]
                for s in stops[1:]:
                    cost += dist[prev][s]
                    mask |= bit[s]
                    prev = s
                team_trips.append(RoadTrip(t, stops, cost + dist[prev][t], mask))
        per_team.append(tuple(team_trips))
    return TripCatalog(
        name=instance.name, n=instance.n, lam=instance.lam,
        pruned=False, per_team=tuple(per_team),
    )


def prune_dominated(catalog: TripCatalog) -> TripCatalog:
    """Keep one minimum-cost ordering per unordered stop set.

    Only valid where visit order is irrelevant (ILB/DLB); round-indexed
    models need the full ordered catalog.
    """
    if catalog.pruned:
        return catalog
    per_team = []
    for team_trips in catalog.per_team:
        best: dict[tuple[int, ...], RoadTrip] = {}
        for trip in team_trips:
            key = tuple(sorted(trip.stops))
            kept = best.get(key)
            if kept is None or trip.cost < kept.cost:
                best[key] = trip
        kept_trips = sorted(best.values(), key=lambda tr: (tr.length, tr.stops))
        per_team.append(tuple(kept_trips))
    return TripCatalog(
        name=catalog.name, n=catalog.n, lam=catalog.lam,
        pruned=True, per_team=tuple(per_team),
    )
