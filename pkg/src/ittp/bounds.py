"""Lower bounds on total travel: ILB, DLB, DLB-1F, DLB-MinLeg.

The independent bound optimizes each team's road trips in isolation; the
dependent bound couples the teams (every team visited exactly r/2 times, no
pair meets twice) and is solved exactly by an internal best-first
branch-and-bound over complete per-team trip selections. The one-factor
variant additionally requires the selected match graph to admit a proper
r-edge-coloring, checked exactly at integer leaves. The min-legs variant adds
a floor on the total number of road trips.

No LP or MILP solver is involved: node bounds are sums of per-team cheapest
completions that ignore the pairwise coupling, which keeps every reported
value a certified lower bound even when the search is cut off.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import asdict, dataclass, field

from .errors import ContractError
from .instance import Instance
from .trips import TripCatalog

_INF = float("inf")


@dataclass(frozen=True)
class BoundReport:
    method: str  # ILB | DLB | DLB_1F | DLB_MINLEG | MINLEGS_FORMULA
    value: int
    status: str  # optimal | best-found | formula
    runtime: float
    gap: float | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


class _TeamEngine:
    """Exact minimum-cost trip selection for a single team.

    Selections are sets of stop-disjoint trips with a prescribed total
    length, optionally avoiding a bitmask of forbidden opponents. Solved by
    depth-first branch-and-bound over the team's catalog in cost order, with
    an opponent-reuse relaxation as node bound. Results are memoized per
    (games, forbidden) pair because the dependent bound asks repeatedly.
    """

    def __init__(self, trips, lam: int):
        self.lam = lam
        self.by_cost = sorted(trips, key=lambda t: (t.cost, t.length, t.stops))
        self.by_len = {
            f: [t for t in self.by_cost if t.length == f] for f in range(1, lam + 1)
        }
        self.memo: dict[tuple[int, int], int | None] = {}

    def _relaxation(self, games: int, forbidden: int) -> list:
        """L[g] = cheapest cost of g away games when trips may reuse stops."""
        best: dict[int, int] = {}
        for f in range(1, min(self.lam, games) + 1):
            for t in self.by_len[f]:
                if not t.mask & forbidden:
                    best[f] = t.cost
                    break
        table = [0] + [_INF] * games
        for g in range(1, games + 1):
            for f, c in best.items():
                if f <= g and table[g - f] + c < table[g]:
                    table[g] = table[g - f] + c
        return table

    def min_completion(self, games: int, forbidden: int = 0) -> int | None:
        """Exact cheapest selection totaling ``games`` away games, or None."""
        if games == 0:
            return 0
        key = (games, forbidden)
        if key in self.memo:
            return self.memo[key]
        lower = self._relaxation(games, forbidden)
        if lower[games] is _INF:
            self.memo[key] = None
            return None
        trips = self.by_cost
        ntrips = len(trips)
        best_val = _INF

        def dfs(pos: int, used: int, g: int, cost: int) -> None:
            nonlocal best_val
            floor = min(
                (lower[g - f] for f in range(1, min(self.lam, g) + 1)), default=_INF
            )
            for idx in range(pos, ntrips):
                t = trips[idx]
                if cost + t.cost + floor >= best_val:
                    return  # trips are cost-sorted: no later trip can help
                if t.length > g or t.mask & used:
                    continue
                bound = cost + t.cost + lower[g - t.length]
                if bound >= best_val:
                    continue
                if t.length == g:
                    best_val = cost + t.cost
                else:
                    dfs(idx + 1, used | t.mask, g - t.length, cost + t.cost)

        dfs(0, forbidden, games, 0)
        result = None if best_val is _INF else int(best_val)
        self.memo[key] = result
        return result

    def plans(self, games: int, forbidden: int):
        """Yield complete selections as (cost, trip_count, stops_mask).

        Enumeration follows cost-sorted trip positions, so cheap selections
        tend to come first; every selection is produced exactly once.
        """
        trips = self.by_cost

        def rec(pos: int, used: int, g: int, cost: int, count: int):
            for idx in range(pos, len(trips)):
                t = trips[idx]
                if t.length > g or t.mask & used:
                    continue
                if t.length == g:
                    yield (cost + t.cost, count + 1, (used | t.mask) & ~forbidden)
                else:
                    yield from rec(idx + 1, used | t.mask, g - t.length, cost + t.cost, count + 1)

        yield from rec(0, forbidden, games, 0, 0)

    def plan_options(self, games: int, forbidden: int, cap: int, keep_counts: bool):
        """Materialized selections deduplicated per stop set, or None above cap.

        Selections influence the coupled search only through their stop set,
        cost, and trip count, so per stop set only the cheapest selection
        matters; when trip counts are constrained, the (cost, count) Pareto
        front per stop set is kept instead.
        """
        best: dict[int, list[tuple[int, int]]] = {}
        produced = 0
        for cost, count, mask in self.plans(games, forbidden):
            produced += 1
            if produced > cap:
                return None
            front = best.setdefault(mask, [])
            if not keep_counts:
                if not front or cost < front[0][0]:
                    best[mask] = [(cost, count)]
                continue
            if any(c <= cost and k >= count for c, k in front):
                continue
            front[:] = [(c, k) for c, k in front if not (cost <= c and count >= k)]
            front.append((cost, count))
        options = [
            (cost, count, mask)
            for mask, front in best.items()
            for cost, count in front
        ]
        options.sort()
        return options


def _engines(catalog: TripCatalog) -> list[_TeamEngine]:
    return [_TeamEngine(catalog.trips(t), catalog.lam) for t in range(catalog.n)]


def ilb(instance: Instance, catalog: TripCatalog) -> BoundReport:
    """Independent lower bound: per-team optimal trips, coupling ignored."""
    start = time.perf_counter()
    q = instance.r // 2
    total = 0
    for engine in _engines(catalog):
        value = engine.min_completion(q)
        if value is None:
            raise ContractError("no per-team trip selection exists; catalog too small")
        total += value
    return BoundReport(
        method="ILB", value=total, status="optimal",
        runtime=time.perf_counter() - start,
    )


def min_legs_formula(n: int, r: int, lam: int) -> BoundReport:
    """Leg-count bound n*r/2 + n*ceil(r/(2*lam)).

    Exact minimum total legs when r <= n/2; for larger r it remains a valid
    lower bound but may undershoot the true minimum.
    """
    value = n * r // 2 + n * math.ceil(r / (2 * lam))
    exact = r <= n // 2
    return BoundReport(
        method="MINLEGS_FORMULA", value=value, status="formula", runtime=0.0,
        note="exact minimum legs (r <= n/2)" if exact
        else "valid lower bound only (r > n/2)",
    )


def trip_count_floor(n: int, r: int, lam: int) -> int:
    """Minimum total number of road trips: every team needs ceil(r/(2*lam))."""
    return n * math.ceil(r / (2 * lam))


class _Node:
    __slots__ = (
        "cost", "assigned", "forbidden", "visits", "trips_total",
        "contribs", "bound", "children", "child_idx", "gen", "branch_team",
    )

    def __init__(self, cost, assigned, forbidden, visits, trips_total, contribs, bound):
        self.cost = cost
        self.assigned = assigned  # bitmask of teams with a chosen selection
        self.forbidden = forbidden  # per team: opponents no longer visitable
        self.visits = visits
        self.trips_total = trips_total
        self.contribs = contribs  # per team: completion bound (0 when assigned)
        self.bound = bound
        self.children = None  # materialized selection options, or None
        self.child_idx = 0
        self.gen = None  # lazy fallback beyond the materialization cap
        self.branch_team = -1


def dlb(
    instance: Instance,
    catalog: TripCatalog,
    one_factor: bool = False,
    min_legs: bool = False,
    time_limit: float | None = None,
) -> BoundReport:
    """Dependent lower bound via exact branch-and-bound over trip selections.

    Teams are assigned complete trip selections one at a time (fail-first:
    the team with the fewest compatible trips is branched next); children are
    generated lazily in roughly cheapest-first order. Node bounds add each
    unassigned team's cheapest completion under its current forbidden set.
    Best-first exploration makes the heap top a certified global lower bound
    at any moment, which is what gets reported on a time-limit stop.
    """
    if time_limit is not None and time_limit <= 0:
        raise ContractError("time_limit must be positive")
    start = time.perf_counter()
    n, r, q = instance.n, instance.r, instance.r // 2
    full_mask = (1 << n) - 1
    engines = _engines(catalog)
    method = "DLB_1F" if one_factor else ("DLB_MINLEG" if min_legs else "DLB")
    legs_floor = trip_count_floor(n, r, instance.lam) if min_legs else 0

    contribs = []
    for t in range(n):
        c = engines[t].min_completion(q)
        if c is None:
            raise ContractError("no per-team trip selection exists; catalog too small")
        contribs.append(c)
    root = _Node(
        cost=0, assigned=0, forbidden=[0] * n, visits=[0] * n,
        trips_total=0, contribs=contribs, bound=sum(contribs),
    )

    incumbent = _greedy_incumbent(engines, n, q, one_factor, min_legs, legs_floor, r)

    heap: list[tuple[int, int, _Node]] = [(root.bound, 0, root)]
    seq = 1
    pops = 0

    def out_of_time() -> bool:
        return time_limit is not None and time.perf_counter() - start > time_limit

    def certified(value: int) -> int:
        return min(value, incumbent) if incumbent is not None else value

    while heap:
        pops += 1
        if pops % 64 == 0 and out_of_time():
            return BoundReport(
                method=method, value=certified(int(heap[0][0])), status="best-found",
                runtime=time.perf_counter() - start,
                note="time limit reached; value is the certified search-tree bound",
            )
        bound, _, node = heapq.heappop(heap)

        if node.assigned == full_mask:
            if min_legs and node.trips_total < legs_floor:
                continue
            if any(node.visits[t] != q for t in range(n)):
                continue
            if one_factor and not _leaf_edge_colorable(node, n, r):
                continue
            return BoundReport(
                method=method, value=certified(node.cost), status="optimal",
                runtime=time.perf_counter() - start,
            )

        if node.children is None and node.gen is None:
            node.branch_team = _pick_branch_team(node, engines, q, n)
            engine = engines[node.branch_team]
            forbidden = node.forbidden[node.branch_team]
            options = engine.plan_options(
                q, forbidden, cap=_PLAN_MATERIALIZE_CAP, keep_counts=min_legs
            )
            if options is None:
                node.gen = engine.plans(q, forbidden)
            else:
                node.children = options
        if node.children is not None:
            if node.child_idx >= len(node.children):
                continue
            plan = node.children[node.child_idx]
            node.child_idx += 1
            more = node.child_idx < len(node.children)
        else:
            plan = next(node.gen, None)
            if plan is None:
                continue
            more = True
        if more:
            heapq.heappush(heap, (node.bound, seq, node))
            seq += 1
        child = _make_child(node, plan, engines, q, n)
        if child is not None and (incumbent is None or child.bound <= incumbent):
            heapq.heappush(heap, (child.bound, seq, child))
            seq += 1

    if incumbent is not None:
        # every remaining selection was cut off at the incumbent's value
        return BoundReport(
            method=method, value=incumbent, status="optimal",
            runtime=time.perf_counter() - start,
        )
    raise ContractError("search space exhausted without a feasible selection")


_PLAN_MATERIALIZE_CAP = 200_000


def _greedy_incumbent(engines, n, q, one_factor, min_legs, legs_floor, r):
    """Cheapest-first complete selection, if one falls out greedily.

    Only used to cut the search heap; None is a perfectly fine outcome.
    """
    forbidden = [0] * n
    visits = [0] * n
    total_cost = 0
    total_trips = 0
    for t in range(n):
        options = engines[t].plan_options(
            q, forbidden[t], cap=_PLAN_MATERIALIZE_CAP, keep_counts=min_legs
        )
        if options is None:
            return None
        chosen = None
        for cost, count, mask in options:
            rest = mask
            ok = True
            while rest:
                i = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if visits[i] + 1 > q:
                    ok = False
                    break
            if ok:
                chosen = (cost, count, mask)
                break
        if chosen is None:
            return None
        cost, count, mask = chosen
        total_cost += cost
        total_trips += count
        forbidden[t] |= mask
        rest = mask
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            visits[i] += 1
            forbidden[i] |= 1 << t
    if any(v != q for v in visits):
        return None
    if min_legs and total_trips < legs_floor:
        return None
    if one_factor and not edge_colorable(n, r, _edges_from_adjacency(forbidden, n)):
        return None
    return total_cost


def _pick_branch_team(node: _Node, engines, q: int, n: int) -> int:
    """Fail-first: unassigned team with the fewest trips compatible with its
    forbidden set."""
    best_team, best_count = -1, None
    for t in range(n):
        if node.assigned >> t & 1:
            continue
        forbidden = node.forbidden[t]
        count = 0
        for trip in engines[t].by_cost:
            if trip.length <= q and not trip.mask & forbidden:
                count += 1
        if best_count is None or count < best_count:
            best_team, best_count = t, count
    return best_team


def _make_child(node: _Node, plan, engines, q: int, n: int) -> _Node | None:
    cost, trip_count, stops_mask = plan
    u = node.branch_team
    visits = list(node.visits)
    forbidden = list(node.forbidden)
    contribs = list(node.contribs)
    assigned = node.assigned | (1 << u)
    contribs[u] = 0
    forbidden[u] |= stops_mask
    rest = stops_mask
    while rest:
        i = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        visits[i] += 1
        if visits[i] > q:
            return None
        forbidden[i] |= 1 << u
        if not assigned >> i & 1:
            c = engines[i].min_completion(q, forbidden[i])
            if c is None:
                return None
            contribs[i] = c
    # Every team must still be reachable by enough distinct future visitors.
    for i in range(n):
        needed = q - visits[i]
        if needed <= 0:
            continue
        supply = 0
        for t in range(n):
            if t != i and not assigned >> t & 1 and not forbidden[t] >> i & 1:
                supply += 1
        if supply < needed:
            return None
    return _Node(
        cost=node.cost + cost, assigned=assigned, forbidden=forbidden,
        visits=visits, trips_total=node.trips_total + trip_count,
        contribs=contribs, bound=node.cost + cost + sum(contribs),
    )


def _edges_from_adjacency(forbidden, n: int) -> list[tuple[int, int]]:
    """At a leaf the per-team forbidden masks are exactly the match graph:
    a pair is forbidden precisely when one of the two visits the other."""
    edges = []
    for t in range(n):
        rest = forbidden[t]
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if t < i:
                edges.append((t, i))
    return edges


def _leaf_edge_colorable(node: _Node, n: int, r: int) -> bool:
    return edge_colorable(n, r, _edges_from_adjacency(node.forbidden, n))


def edge_colorable(n: int, r: int, edges: list[tuple[int, int]]) -> bool:
    """Exact test that the given simple graph admits a proper r-edge-coloring.

    Backtracking over edges in sorted order; colors of the lowest-numbered
    team's edges are fixed up front to break round-relabeling symmetry.
    """
    edges = sorted(edges)
    used = [0] * n  # color bitmask per vertex
    order = []
    first = [e for e in edges if e[0] == 0]
    if len(first) > r:
        return False
    for k, (u, v) in enumerate(first):
        used[u] |= 1 << k
        used[v] |= 1 << k
    order = [e for e in edges if e[0] != 0]
    full = (1 << r) - 1

    def assign(idx: int) -> bool:
        if idx == len(order):
            return True
        u, v = order[idx]
        free = full & ~(used[u] | used[v])
        while free:
            bit = free & -free
            free &= free - 1
            used[u] |= bit
            used[v] |= bit
            if assign(idx + 1):
                return True
            used[u] &= ~bit
            used[v] &= ~bit
        return False

    return assign(0)
