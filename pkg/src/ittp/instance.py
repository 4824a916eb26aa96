"""Problem instances: synthetic families, file ingestion, and round derivation.

An instance couples an ``n x n`` integer distance matrix with a round count
``r`` (even, at most ``n - 2``) and the maximum home/away streak ``lam``.
Teams are numbered 1..n in all I/O; matrix storage is 0-indexed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InstanceLoadError, InvalidParametersError

FAMILIES = ("CIRC", "LINE", "CON")


@dataclass(frozen=True)
class Instance:
    """Immutable problem instance.

    Attributes:
        name: identifier such as ``CIRC40-10`` or ``NL16-4``.
        n: number of teams (positive even).
        r: number of rounds (positive even, at most ``n - 2``).
        lam: maximum number of consecutive home or away games (>= 1).
        dist: ``n x n`` tuple-of-tuples of non-negative integer distances,
            zero diagonal. Symmetry is not required.
    """

    name: str
    n: int
    r: int
    lam: int
    dist: tuple[tuple[int, ...], ...]
    symmetric: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.n <= 0 or self.n % 2 != 0:
            raise InvalidParametersError(f"n must be positive even, got {self.n}")
        if self.r <= 0 or self.r % 2 != 0:
            raise InvalidParametersError(f"r must be positive even, got {self.r}")
        if self.r > self.n - 2:
            raise InvalidParametersError(
                f"r must be at most n-2 ({self.n - 2}), got {self.r}"
            )
        if self.lam < 1:
            raise InvalidParametersError(f"lam must be >= 1, got {self.lam}")
        if len(self.dist) != self.n or any(len(row) != self.n for row in self.dist):
            raise InvalidParametersError("dist must be an n x n matrix")
        for i in range(self.n):
            if self.dist[i][i] != 0:
                raise InvalidParametersError(f"dist[{i}][{i}] must be 0")
            for j in range(self.n):
                if self.dist[i][j] < 0:
                    raise InvalidParametersError("distances must be non-negative")
        sym = all(
            self.dist[i][j] == self.dist[j][i]
            for i in range(self.n)
            for j in range(i + 1, self.n)
        )
        object.__setattr__(self, "symmetric", sym)

    def d(self, i: int, j: int) -> int:
        """Distance between teams ``i`` and ``j`` (0-indexed)."""
        return self.dist[i][j]


def _freeze(matrix: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in matrix)


def generate(family: str, n: int, r: int, lam: int) -> Instance:
    """Generate a synthetic instance of one of the CIRC/LINE/CON families.

    CIRC places teams on a circle (dist = circular index gap), LINE on a
    line (dist = index gap), and CON makes every off-diagonal distance 1.
    """
    fam = family.upper()
    if fam not in FAMILIES:
        raise InvalidParametersError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n <= 0 or n % 2 != 0 or r % 2 != 0 or not 2 <= r <= n - 2:
        raise InvalidParametersError(
            f"need even n, even r with 2 <= r <= n-2; got n={n}, r={r}"
        )
    if lam < 1:
        raise InvalidParametersError(f"lam must be >= 1, got {lam}")
    if fam == "CIRC":
        matrix = [[min(abs(i - j), n - abs(i - j)) for j in range(n)] for i in range(n)]
    elif fam == "LINE":
        matrix = [[abs(i - j) for j in range(n)] for i in range(n)]
    else:
        matrix = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    return Instance(name=f"{fam}{n}-{r}", n=n, r=r, lam=lam, dist=_freeze(matrix))


def load(path: str | Path, r: int, lam: int, name: str | None = None) -> Instance:
    """Load an instance from a whitespace-separated integer matrix file.

    Lines starting with ``#`` are comments. ``n`` is inferred from the row
    count; a nonzero diagonal entry is forced to 0 with a warning.
    """
    path = Path(path)
    rows: list[list[int]] = []
    try:
        text = path.read_text()
    except OSError as exc:
        raise InstanceLoadError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rows.append([int(tok) for tok in stripped.split()])
        except ValueError as exc:
            raise InstanceLoadError(f"{path}:{lineno}: unparseable token ({exc})") from exc
    n = len(rows)
    if n == 0:
        raise InstanceLoadError(f"{path}: no matrix rows found")
    if any(len(row) != n for row in rows):
        widths = sorted({len(row) for row in rows})
        raise InstanceLoadError(f"{path}: matrix is not square ({n} rows, widths {widths})")
    if n % 2 != 0:
        raise InstanceLoadError(f"{path}: team count must be even, got {n}")
    for i in range(n):
        if rows[i][i] != 0:
            warnings.warn(f"{path}: dist[{i}][{i}]={rows[i][i]} forced to 0", stacklevel=2)
            rows[i][i] = 0
        for j in range(n):
            if rows[i][j] < 0:
                raise InstanceLoadError(f"{path}: negative distance at ({i},{j})")
    if r % 2 != 0 or not 2 <= r <= n - 2:
        raise InstanceLoadError(
            f"{path}: r={r} invalid for n={n} (need even r with 2 <= r <= n-2)"
        )
    if lam < 1:
        raise InstanceLoadError(f"lam must be >= 1, got {lam}")
    base = name if name is not None else path.stem
    return Instance(name=f"{base}-{r}", n=n, r=r, lam=lam, dist=_freeze(rows))


def write(instance: Instance, path: str | Path) -> None:
    """Write the distance matrix in the native format read by :func:`load`."""
    path = Path(path)
    lines = [f"# {instance.name}"]
    for row in instance.dist:
        lines.append(" ".join(str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def derive_rounds(n: int) -> list[int]:
    """Round counts n/4, n/2, 3n/4 used for benchmark instances."""
    if n % 4 != 0:
        raise InvalidParametersError(f"n must be divisible by 4, got {n}")
    return [n // 4, n // 2, 3 * n // 4]
