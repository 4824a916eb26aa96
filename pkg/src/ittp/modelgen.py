"""Integer-program export in CPLEX-style LP text format.

Four model families are emitted for external MILP/LP solvers: the direct
game-variable formulation (F1), the round-indexed road-trip formulation
(F2), the trip formulation under a fixed home-away assignment (F2-HAP), and
the round-free trip-selection programs behind the dependent lower bounds
(DLB, DLB-1F, DLB-MinLeg).

All indices in variable names are 1-based: ``x_i_j_s`` (team i hosts j in
round s), ``y_t_i_j`` (team t travels from i to j at some point), ``z_t_p_s``
(team t starts its catalog trip p in round s), ``z_t_p`` (round-free trip
selection). Output is byte-stable for a fixed (instance, catalog): iteration
order is canonical everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .bounds import min_legs_formula, trip_count_floor
from .errors import CapExceededError, ContractError
from .instance import Instance
from .schedule import AWAY, HOME, HapAssignment
from .trips import TripCatalog

_MAX_LINE = 220


@dataclass(frozen=True)
class ModelFile:
    formulation: str
    path: Path
    num_variables: int
    num_constraints: int
    naming: str


class _LPWriter:
    def __init__(self, comments: list[str]):
        self.comments = comments
        self.obj_terms: list[tuple[int, str]] = []
        self.constraints: list[tuple[str, list[tuple[int, str]], str, int]] = []
        self.binary_names: list[str] = []

    def objective(self, terms) -> None:
        self.obj_terms = list(terms)

    def constraint(self, name: str, terms, sense: str, rhs: int) -> None:
        terms = [(c, v) for c, v in terms if c != 0]
        if not terms:
            # keep the row syntactically valid; a zero LHS states the truth
            terms = [(0, self.binary_names[0] if self.binary_names else "x0")]
        self.constraints.append((name, terms, sense, rhs))

    def binaries(self, names) -> None:
        self.binary_names.extend(names)

    @staticmethod
    def _render_terms(terms) -> list[str]:
        out = []
        for idx, (coef, var) in enumerate(terms):
            if idx == 0:
                out.append(f"{coef} {var}" if coef >= 0 else f"- {-coef} {var}")
            elif coef >= 0:
                out.append(f"+ {coef} {var}")
            else:
                out.append(f"- {-coef} {var}")
        return out

    @staticmethod
    def _wrap(prefix: str, tokens: list[str], lines: list[str]) -> None:
        cur = prefix
        for tok in tokens:
            if len(cur) + 1 + len(tok) > _MAX_LINE:
                lines.append(cur)
                cur = " " + tok
            else:
                cur = f"{cur} {tok}"
        lines.append(cur)

    def render(self) -> str:
        lines = [f"\\ {c}" for c in self.comments]
        lines.append("Minimize")
        self._wrap(" obj:", self._render_terms(self.obj_terms), lines)
        lines.append("Subject To")
        for name, terms, sense, rhs in self.constraints:
            tokens = self._render_terms(terms) + [sense, str(rhs)]
            self._wrap(f" {name}:", tokens, lines)
        lines.append("Binaries")
        self._wrap("", self.binary_names, lines)
        lines.append("End")
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> None:
        path.write_text(self.render())


def _finish(
    writer: _LPWriter, formulation: str, out_dir: str | Path, instance: Instance
) -> ModelFile:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{instance.name}_{formulation}.lp"
    writer.write(path)
    return ModelFile(
        formulation=formulation, path=path,
        num_variables=len(writer.binary_names),
        num_constraints=len(writer.constraints),
        naming="x_i_j_s / y_t_i_j / z_t_p[_s], 1-based indices, p = catalog position",
    )


def export_f1(
    instance: Instance, include_minlegs_cut: bool = False, out_dir: str | Path = "."
) -> ModelFile:
    """Game variables x_ijs plus travel indicators y_tij.

    Linking rows force a travel leg whenever consecutive rounds imply one;
    window rows cap home and away runs. The optional cut bounds the total
    number of legs from below.
    """
    n, r, q = instance.n, instance.r, instance.r // 2
    teams = range(1, n + 1)
    writer = _LPWriter([
        "formulation: F1",
        f"instance: {instance.name} (n={n}, r={r}, lam={instance.lam})",
        f"minlegs_cut: {'yes' if include_minlegs_cut else 'no'}",
    ])

    def x(i, j, s):
        return f"x_{i}_{j}_{s}"

    def y(t, i, j):
        return f"y_{t}_{i}_{j}"

    x_names = [x(i, j, s) for i in teams for j in teams if j != i for s in range(1, r + 1)]
    y_names = [y(t, i, j) for t in teams for i in teams for j in teams]
    writer.binaries(x_names)
    writer.binaries(y_names)
    writer.objective(
        (instance.d(i - 1, j - 1), y(t, i, j))
        for t in teams for i in teams for j in teams
    )

    for i in teams:
        for j in teams:
            if i < j:
                terms = [(1, x(i, j, s)) for s in range(1, r + 1)]
                terms += [(1, x(j, i, s)) for s in range(1, r + 1)]
                writer.constraint(f"once_{i}_{j}", terms, "<=", 1)
    for i in teams:
        for s in range(1, r + 1):
            terms = []
            for j in teams:
                if j != i:
                    terms += [(1, x(i, j, s)), (1, x(j, i, s))]
            writer.constraint(f"round_{i}_{s}", terms, "=", 1)
    for i in teams:
        terms = [
            (1, x(i, j, s)) for j in teams if j != i for s in range(1, r + 1)
        ]
        writer.constraint(f"homes_{i}", terms, "=", q)
    for t in teams:
        others = [i for i in teams if i != t]
        for s in range(2, r + 1):
            for i in others:
                for j in others:
                    writer.constraint(
                        f"linkaway_{t}_{i}_{j}_{s}",
                        [(1, x(i, t, s - 1)), (1, x(j, t, s)), (-1, y(t, i, j))],
                        "<=", 1,
                    )
                writer.constraint(
                    f"linkend_{t}_{i}_{s}",
                    [(1, x(i, t, s - 1))]
                    + [(1, x(t, j, s)) for j in others if j != i]
                    + [(-1, y(t, i, t))],
                    "<=", 1,
                )
                writer.constraint(
                    f"linkstart_{t}_{i}_{s}",
                    [(1, x(t, j, s - 1)) for j in others if j != i]
                    + [(1, x(i, t, s)), (-1, y(t, t, i))],
                    "<=", 1,
                )
        for i in others:
            writer.constraint(f"first_{t}_{i}", [(1, x(i, t, 1)), (-1, y(t, t, i))], "<=", 0)
            writer.constraint(f"last_{t}_{i}", [(1, x(i, t, r)), (-1, y(t, i, t))], "<=", 0)
    lam = instance.lam
    for i in teams:
        for s in range(1, r - lam + 1):
            terms = [
                (1, x(j, i, f))
                for f in range(s, s + lam + 1)
                for j in teams if j != i
            ]
            writer.constraint(f"awaymax_{i}_{s}", terms, "<=", lam)
            writer.constraint(f"awaymin_{i}_{s}", terms, ">=", 1)
    if include_minlegs_cut:
        terms = [(1, y(t, i, j)) for t in teams for i in teams for j in teams]
        writer.constraint("minlegs", terms, ">=", min_legs_formula(n, r, lam).value)

    return _finish(writer, "F1", out_dir, instance)


def _f2_variables(instance: Instance, catalog: TripCatalog, cap: int):
    """(team, trip index, start round) triples with their trips; cap-guarded."""
    r = instance.r
    count = 0
    for t in range(instance.n):
        for trip in catalog.trips(t):
            count += max(0, r - trip.length + 1)
    if count > cap:
        raise CapExceededError(
            f"model needs {count} trip-start variables, above the cap of {cap}"
        )
    return count


def export_f2(
    instance: Instance,
    catalog: TripCatalog,
    out_dir: str | Path = ".",
    cap: int = 5_000_000,
) -> ModelFile:
    """Round-indexed road-trip formulation over the full ordered catalog."""
    if catalog.pruned:
        raise ContractError("the round-indexed model needs the full ordered catalog")
    n, r, q, lam = instance.n, instance.r, instance.r // 2, instance.lam
    _f2_variables(instance, catalog, cap)
    writer = _LPWriter([
        "formulation: F2",
        f"instance: {instance.name} (n={n}, r={r}, lam={lam})",
        "z_t_p_s: team t starts catalog trip p (1-based) in round s",
    ])

    def z(t, p, s):
        return f"z_{t + 1}_{p + 1}_{s}"

    # visits[i][t][s] = starts (p, q) of team i that visit t in round s
    visits = [[[[] for _ in range(r + 1)] for _ in range(n)] for _ in range(n)]
    active = [[[] for _ in range(r + 1)] for _ in range(n)]  # (p, q) active in s
    names = []
    obj = []
    for t in range(n):
        for p, trip in enumerate(catalog.trips(t)):
            tau = r - trip.length + 1
            for s in range(1, tau + 1):
                names.append(z(t, p, s))
                obj.append((trip.cost, z(t, p, s)))
                for offset, stop in enumerate(trip.stops):
                    visits[t][stop][s + offset].append((p, s))
                    active[t][s + offset].append((p, s))
    writer.binaries(names)
    writer.objective(obj)

    for t in range(n):
        terms = []
        for p, trip in enumerate(catalog.trips(t)):
            tau = r - trip.length + 1
            terms += [(trip.length, z(t, p, s)) for s in range(1, tau + 1)]
        writer.constraint(f"len_{t + 1}", terms, "=", q)
    for t in range(n):
        for i in range(t + 1, n):
            terms = [(1, z(t, p, qq)) for s in range(1, r + 1) for p, qq in visits[t][i][s]]
            terms += [(1, z(i, p, qq)) for s in range(1, r + 1) for p, qq in visits[i][t][s]]
            writer.constraint(f"once_{t + 1}_{i + 1}", terms, "<=", 1)
    for t in range(n):
        for s in range(2, r + 1):
            terms = [(1, z(t, p, qq)) for p, qq in active[t][s - 1]]
            for p, trip in enumerate(catalog.trips(t)):
                if s <= r - trip.length + 1:
                    terms.append((1, z(t, p, s)))
            writer.constraint(f"nostart_{t + 1}_{s}", terms, "<=", 1)
    for t in range(n):
        for s in range(1, r + 1):
            terms = [(1, z(t, p, qq)) for p, qq in active[t][s]]
            for i in range(n):
                if i != t:
                    terms += [(1, z(i, p, qq)) for p, qq in visits[i][t][s]]
            writer.constraint(f"cover_{t + 1}_{s}", terms, "=", 1)
    for t in range(n):
        for s in range(1, r - lam + 1):
            terms = []
            for f in range(s, s + lam + 1):
                for i in range(n):
                    if i != t:
                        terms += [(1, z(i, p, qq)) for p, qq in visits[i][t][f]]
            writer.constraint(f"homewindow_{t + 1}_{s}", terms, "<=", lam)

    return _finish(writer, "F2", out_dir, instance)


def export_f2_hap(
    instance: Instance,
    catalog: TripCatalog,
    m: HapAssignment,
    out_dir: str | Path = ".",
) -> ModelFile:
    """Trip formulation with trip lengths and start rounds fixed by an
    assignment: one trip per prescribed start, every home slot hosted once,
    pairs meet at most once."""
    if catalog.pruned:
        raise ContractError("the fixed-assignment model needs the full ordered catalog")
    n, r = instance.n, instance.r
    if (m.n, m.r) != (n, r):
        raise ContractError("assignment dimensions do not match the instance")
    if not (m.is_proper() and m.is_balanced() and m.is_streak_feasible(instance.lam)):
        raise ContractError("assignment must be proper, balanced, and streak-feasible")
    writer = _LPWriter([
        "formulation: F2_HAP",
        f"instance: {instance.name} (n={n}, r={r}, lam={instance.lam})",
        "assignment rows: " + " ".join(m.rows),
    ])

    def z(t, p, s):
        return f"z_{t + 1}_{p + 1}_{s + 1}"

    starts: list[list[int]] = []  # R'_t, 0-based rounds
    length_at: list[dict[int, int]] = []
    for t in range(n):
        row = m.rows[t]
        tstarts, lengths = [], {}
        for s in range(r):
            if row[s] == AWAY and (s == 0 or row[s - 1] == HOME):
                run = 1
                while s + run < r and row[s + run] == AWAY:
                    run += 1
                tstarts.append(s)
                lengths[s] = run
        starts.append(tstarts)
        length_at.append(lengths)

    candidates: list[dict[int, list[int]]] = []  # per team: start -> trip indices
    names = []
    obj = []
    for t in range(n):
        cand: dict[int, list[int]] = {}
        for s in starts[t]:
            need = length_at[t][s]
            plist = [p for p, trip in enumerate(catalog.trips(t)) if trip.length == need]
            cand[s] = plist
            for p in plist:
                names.append(z(t, p, s))
                obj.append((catalog.trips(t)[p].cost, z(t, p, s)))
        candidates.append(cand)
    writer.binaries(names)
    writer.objective(obj)

    for t in range(n):
        for s in starts[t]:
            writer.constraint(
                f"start_{t + 1}_{s + 1}",
                [(1, z(t, p, s)) for p in candidates[t][s]],
                "=", 1,
            )
    for t in range(n):
        for s in range(r):
            if m.rows[t][s] != HOME:
                continue
            terms = []
            for u in range(n):
                if u == t or m.rows[u][s] != AWAY:
                    continue
                for qq in starts[u]:
                    offset = s - qq
                    if 0 <= offset < length_at[u][qq]:
                        for p in candidates[u][qq]:
                            if catalog.trips(u)[p].stops[offset] == t:
                                terms.append((1, z(u, p, qq)))
            writer.constraint(f"host_{t + 1}_{s + 1}", terms, "=", 1)
    for t in range(n):
        for i in range(t + 1, n):
            terms = []
            for a, b in ((t, i), (i, t)):
                for s in starts[a]:
                    for p in candidates[a][s]:
                        if catalog.trips(a)[p].mask >> b & 1:
                            terms.append((1, z(a, p, s)))
            writer.constraint(f"once_{t + 1}_{i + 1}", terms, "<=", 1)

    return _finish(writer, "F2_HAP", out_dir, instance)


def export_dlb(
    instance: Instance,
    catalog: TripCatalog,
    variant: str = "DLB",
    out_dir: str | Path = ".",
) -> ModelFile:
    """Round-free trip-selection programs used by the dependent bounds."""
    variant = variant.upper()
    if variant not in ("DLB", "DLB_1F", "DLB_MINLEG"):
        raise ContractError(f"unknown variant {variant!r}")
    n, r, q = instance.n, instance.r, instance.r // 2
    writer = _LPWriter([
        f"formulation: {variant}",
        f"instance: {instance.name} (n={n}, r={r}, lam={instance.lam})",
        f"catalog: {'pruned' if catalog.pruned else 'full'}",
    ])

    def z(t, p):
        return f"z_{t + 1}_{p + 1}"

    def x(t, i, s):
        return f"x_{t + 1}_{i + 1}_{s}"

    names = [z(t, p) for t in range(n) for p in range(len(catalog.trips(t)))]
    writer.binaries(names)
    if variant == "DLB_1F":
        writer.binaries(
            x(t, i, s)
            for t in range(n) for i in range(n) if i != t
            for s in range(1, r + 1)
        )
    writer.objective(
        (trip.cost, z(t, p))
        for t in range(n) for p, trip in enumerate(catalog.trips(t))
    )

    for t in range(n):
        writer.constraint(
            f"len_{t + 1}",
            [(trip.length, z(t, p)) for p, trip in enumerate(catalog.trips(t))],
            "=", q,
        )
    for t in range(n):
        terms = [
            (1, z(i, p))
            for i in range(n) if i != t
            for p, trip in enumerate(catalog.trips(i))
            if trip.mask >> t & 1
        ]
        writer.constraint(f"visited_{t + 1}", terms, "=", q)
    for t in range(n):
        for i in range(t + 1, n):
            terms = [
                (1, z(t, p))
                for p, trip in enumerate(catalog.trips(t)) if trip.mask >> i & 1
            ] + [
                (1, z(i, p))
                for p, trip in enumerate(catalog.trips(i)) if trip.mask >> t & 1
            ]
            writer.constraint(f"once_{t + 1}_{i + 1}", terms, "<=", 1)
    if variant == "DLB_1F":
        for t in range(n):
            for i in range(n):
                if i == t:
                    continue
                terms = [
                    (1, z(t, p))
                    for p, trip in enumerate(catalog.trips(t)) if trip.mask >> i & 1
                ] + [
                    (1, z(i, p))
                    for p, trip in enumerate(catalog.trips(i)) if trip.mask >> t & 1
                ] + [(-1, x(t, i, s)) for s in range(1, r + 1)]
                writer.constraint(f"match_{t + 1}_{i + 1}", terms, "=", 0)
        for t in range(n):
            for s in range(1, r + 1):
                writer.constraint(
                    f"round_{t + 1}_{s}",
                    [(1, x(t, i, s)) for i in range(n) if i != t],
                    "=", 1,
                )
        for t in range(n):
            for i in range(t + 1, n):
                for s in range(1, r + 1):
                    writer.constraint(
                        f"sym_{t + 1}_{i + 1}_{s}",
                        [(1, x(t, i, s)), (-1, x(i, t, s))],
                        "=", 0,
                    )
    if variant == "DLB_MINLEG":
        terms = [
            (1, z(t, p)) for t in range(n) for p in range(len(catalog.trips(t)))
        ]
        writer.constraint(
            "minlegs", terms, ">=", trip_count_floor(n, r, instance.lam)
        )

    return _finish(writer, variant, out_dir, instance)
