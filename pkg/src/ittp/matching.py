"""Minimum-weight perfect matching in bipartite graphs with forbidden edges.

Shortest-augmenting-path Kuhn-Munkres in O(k^3) over exact integer
arithmetic. Forbidden edges are absent (entry ``None``), not big-M weights,
so "no perfect matching exists" is detected structurally and reported as a
normal ``None`` return.

Ties between minimum-cost matchings are broken deterministically: the
returned assignment vector (right partner of left node 0, 1, ...) is the
lexicographically smallest one. This is enforced by augmenting the weights
with a base-k positional term, which Python's integers carry exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

_INF = float("inf")


@dataclass(frozen=True)
class Matching:
    assignment: tuple[int, ...]  # assignment[i] = right node matched to left i
    cost: int

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(enumerate(self.assignment))


def min_weight_perfect_matching(weights) -> Matching | None:
    """Minimum-weight perfect matching of a k x k weight matrix.

    ``weights[i][j]`` is a non-negative integer, or ``None`` when the edge
    is forbidden. Returns ``None`` when no perfect matching over allowed
    edges exists.
    """
    k = len(weights)
    if k == 0 or any(len(row) != k for row in weights):
        raise ValueError("weights must be a non-empty square matrix")
    for row in weights:
        for w in row:
            if w is not None and (not isinstance(w, int) or w < 0):
                raise ValueError(f"weights must be non-negative integers or None, got {w!r}")

    base = max(k, 2)
    big = base**k
    # combined[i][j] = primary * big + j * base^(k-1-i): minimizing the sum
    # yields the lexicographically smallest assignment among cost ties.
    combined = [
        [
            (weights[i][j] * big + j * base ** (k - 1 - i)) if weights[i][j] is not None else None
            for j in range(k)
        ]
        for i in range(k)
    ]

    # Potentials and column matching, 1-indexed with column 0 as scratch.
    u = [0] * (k + 1)
    v = [0] * (k + 1)
    match_col = [0] * (k + 1)  # match_col[j] = row matched to column j
    way = [0] * (k + 1)
    for i in range(1, k + 1):
        match_col[0] = i
        j0 = 0
        minv = [_INF] * (k + 1)
        used = [False] * (k + 1)
        while True:
            used[j0] = True
            i0 = match_col[j0]
            delta = _INF
            j1 = -1
            row = combined[i0 - 1]
            for j in range(1, k + 1):
                if used[j]:
                    continue
                w = row[j - 1]
                if w is not None:
                    cur = w - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if delta == _INF:
                return None  # row i cannot be matched: no perfect matching
            for j in range(k + 1):
                if used[j]:
                    u[match_col[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while j0 != 0:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1

    assignment = [0] * k
    for j in range(1, k + 1):
        assignment[match_col[j] - 1] = j - 1
    cost = sum(weights[i][assignment[i]] for i in range(k))
    return Matching(assignment=tuple(assignment), cost=cost)
