"""Staircase tableaux: the core value type and the operations on a single tableau.

Boxes are addressed ``(i, j)`` with ``i`` the row counted from the top and ``j``
the column counted from the left, both starting at 1.  A box exists iff
``i + j <= n + 1``; the main diagonal is ``i + j == n + 1``.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping


class Symbol(str, enum.Enum):
    ALPHA = "A"
    BETA = "B"
    GAMMA = "G"
    DELTA = "D"
    EMPTY = "."

    @property
    def is_column_kind(self) -> bool:
        """True for the symbols that force the boxes above them to be empty."""
        return self is Symbol.ALPHA or self is Symbol.GAMMA

    @property
    def is_row_kind(self) -> bool:
        """True for the symbols that force the boxes left of them to be empty."""
        return self is Symbol.BETA or self is Symbol.DELTA

    def swapped(self) -> "Symbol":
        return _SWAP[self]


_SWAP = {
    Symbol.ALPHA: Symbol.BETA,
    Symbol.BETA: Symbol.ALPHA,
    Symbol.GAMMA: Symbol.DELTA,
    Symbol.DELTA: Symbol.GAMMA,
    Symbol.EMPTY: Symbol.EMPTY,
}

A, B, G, D, E = Symbol.ALPHA, Symbol.BETA, Symbol.GAMMA, Symbol.DELTA, Symbol.EMPTY


class Fill(str, enum.Enum):
    U = "u"
    Q = "q"


# Diagonal symbols that mark an occupied ASEP site.
ALPHA_DELTA = "alpha-delta"
ALPHA_GAMMA = "alpha-gamma"
_OCCUPIED = {
    ALPHA_DELTA: frozenset({A, D}),
    ALPHA_GAMMA: frozenset({A, G}),
}

# Column rule for the second u/q pass.
NEAREST = "nearest"
ANY_BELOW = "any"


class InvalidTableau(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    rule: int
    box: tuple[int, int]
    blocker: tuple[int, int] | None = None

    def __str__(self) -> str:
        if self.rule == 4:
            return f"rule-4: empty diagonal box {self.box}"
        return f"rule-{self.rule}: box {self.box} must be empty because of {self.blocker}"


@dataclass(frozen=True)
class Monomial:
    alpha: int = 0
    beta: int = 0
    gamma: int = 0
    delta: int = 0
    u: int = 0
    q: int = 0

    def evaluate(self, alpha=1, beta=1, gamma=1, delta=1, u=1, q=1):
        return (
            alpha**self.alpha
            * beta**self.beta
            * gamma**self.gamma
            * delta**self.delta
            * u**self.u
            * q**self.q
        )

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            self.alpha + other.alpha,
            self.beta + other.beta,
            self.gamma + other.gamma,
            self.delta + other.delta,
            self.u + other.u,
            self.q + other.q,
        )


@dataclass(frozen=True)
class Tableau:
    """A filling of the staircase shape ``(n, n-1, ..., 1)``.

    ``rows[i - 1][j - 1]`` holds the symbol of box ``(i, j)``; row ``i`` has
    ``n + 1 - i`` boxes.  Construction only checks the shape, so invalid
    fillings can be represented and then diagnosed with :func:`validate`.
    """

    n: int
    rows: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"tableau size must be positive, got {self.n}")
        if len(self.rows) != self.n or any(
            len(row) != self.n + 1 - i for i, row in enumerate(self.rows, 1)
        ):
            raise ValueError(f"rows do not form a staircase of size {self.n}")

    @classmethod
    def from_cells(cls, n: int, cells: Mapping[tuple[int, int], Symbol | str]) -> "Tableau":
        """Build from the non-empty boxes; every box not listed is empty."""
        grid = [[E] * (n + 1 - i) for i in range(1, n + 1)]
        for (i, j), s in cells.items():
            if not (1 <= i and 1 <= j and i + j <= n + 1):
                raise ValueError(f"box {(i, j)} is outside the size-{n} staircase")
            grid[i - 1][j - 1] = Symbol(s)
        return cls(n, tuple(tuple(r) for r in grid))

    def __getitem__(self, box: tuple[int, int]) -> Symbol:
        i, j = box
        if not self.has_box(i, j):
            raise IndexError(f"box {box} is outside the size-{self.n} staircase")
        return self.rows[i - 1][j - 1]

    def has_box(self, i: int, j: int) -> bool:
        return i >= 1 and j >= 1 and i + j <= self.n + 1

    def boxes(self) -> Iterator[tuple[int, int]]:
        """All boxes in row-major order."""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 2 - i):
                yield (i, j)

    def cells(self) -> Iterator[tuple[tuple[int, int], Symbol]]:
        """Non-empty boxes in row-major order."""
        for i, row in enumerate(self.rows, 1):
            for j, s in enumerate(row, 1):
                if s is not E:
                    yield (i, j), s

    @cached_property
    def counts(self) -> Counter:
        return Counter(s for row in self.rows for s in row if s is not E)

    @property
    def is_valid(self) -> bool:
        return not validate(self)

    def dumps(self) -> str:
        lines = [str(self.n)]
        lines.extend(f"{i} {j} {s.value}" for (i, j), s in self.cells())
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "\n".join(" ".join(s.value for s in row) for row in self.rows)


@dataclass(frozen=True)
class FilledTableau:
    base: Tableau
    fill: Mapping[tuple[int, int], Fill] = field(hash=False)

    def weight(self) -> Monomial:
        c = Counter(self.fill.values())
        return weight(self.base) * Monomial(u=c[Fill.U], q=c[Fill.Q])

    def dumps(self) -> str:
        lines = [self.base.dumps().rstrip("\n")]
        lines.extend(f"{i} {j} {f.value}" for (i, j), f in sorted(self.fill.items()))
        return "\n".join(lines) + "\n"


def validate(t: Tableau) -> list[Violation]:
    """Return every broken tableau rule; an empty list means ``t`` is valid."""
    out = []
    n = t.n
    for (i, j), s in t.cells():
        if s.is_column_kind:
            for k in range(1, i):
                if t.rows[k - 1][j - 1] is not E:
                    out.append(Violation(2, (k, j), (i, j)))
        elif s.is_row_kind:
            for k in range(1, j):
                if t.rows[i - 1][k - 1] is not E:
                    out.append(Violation(3, (i, k), (i, j)))
    for i in range(1, n + 1):
        if t.rows[i - 1][n - i] is E:
            out.append(Violation(4, (i, n + 1 - i)))
    return out


def _require_valid(t: Tableau) -> None:
    errors = validate(t)
    if errors:
        raise InvalidTableau("; ".join(map(str, errors)))


def weight(t: Tableau) -> Monomial:
    _require_valid(t)
    c = t.counts
    return Monomial(c[A], c[B], c[G], c[D])


def fill_uq(t: Tableau, column_rule: str = NEAREST) -> FilledTableau:
    """Fill the empty boxes with u's and q's.

    Boxes left of a beta get ``u`` and boxes left of a delta get ``q``.  Every
    other empty box gets ``u`` when the nearest symbol below it in its column
    is an alpha or a delta, and ``q`` otherwise.  ``column_rule="any"`` instead
    looks for an alpha or delta anywhere below; that reading does not give the
    ASEP steady state for n >= 3 and is kept for comparison only.
    """
    _require_valid(t)
    if column_rule not in (NEAREST, ANY_BELOW):
        raise ValueError(f"unknown column rule {column_rule!r}")
    n = t.n
    fill: dict[tuple[int, int], Fill] = {}
    for i, row in enumerate(t.rows, 1):
        # at most one beta/delta per row, and it is the leftmost symbol
        for j, s in enumerate(row, 1):
            if s.is_row_kind:
                for k in range(1, j):
                    fill[(i, k)] = Fill.U if s is B else Fill.Q
                break
    for i, j in t.boxes():
        if t.rows[i - 1][j - 1] is not E or (i, j) in fill:
            continue
        below = [t.rows[k - 1][j - 1] for k in range(i + 1, n + 2 - j)]
        below = [s for s in below if s is not E]
        if column_rule == NEAREST:
            up = bool(below) and below[0] in (A, D)
        else:
            up = any(s in (A, D) for s in below)
        fill[(i, j)] = Fill.U if up else Fill.Q
    return FilledTableau(t, fill)


def asep_type(t: Tableau, convention: str = ALPHA_DELTA) -> tuple[bool, ...]:
    """Occupancy of sites 1..n, read along the diagonal from (1, n) to (n, 1)."""
    _require_valid(t)
    occupied = _OCCUPIED[convention]
    return tuple(t.rows[k - 1][t.n - k] in occupied for k in range(1, t.n + 1))


def involution(t: Tableau) -> Tableau:
    """Transpose and swap alpha<->beta, gamma<->delta."""
    n = t.n
    rows = tuple(
        tuple(t.rows[j - 1][i - 1].swapped() for j in range(1, n + 2 - i))
        for i in range(1, n + 1)
    )
    return Tableau(n, rows)


def subtableau(t: Tableau, i: int, j: int) -> Tableau:
    """Drop the first ``i - 1`` rows and ``j - 1`` columns."""
    if i < 1 or j < 1 or i + j > t.n + 1:
        raise IndexError(f"box {(i, j)} is outside the size-{t.n} staircase")
    m = t.n - i - j + 2
    rows = tuple(t.rows[r][j - 1 : j - 1 + m - k] for k, r in enumerate(range(i - 1, i - 1 + m)))
    return Tableau(m, rows)


def delete_row_col(t: Tableau, i: int, j: int) -> Tableau:
    """Remove row ``i`` and column ``j`` and close up the gaps.

    The result is a staircase only when ``(i, j)`` is a main-diagonal box or
    the box just past it (``i + j`` is ``n + 1`` or ``n + 2``).
    """
    n = t.n
    if not (1 <= i <= n and 1 <= j <= n and i + j in (n + 1, n + 2)) or n < 2:
        raise IndexError(f"removing row {i} and column {j} of a size-{n} tableau is not a staircase")
    rows = []
    for r, row in enumerate(t.rows, 1):
        if r == i:
            continue
        rows.append(tuple(s for c, s in enumerate(row, 1) if c != j))
    return Tableau(n - 1, tuple(rows))


def diagonal_cells(t: Tableau, d: int) -> list[tuple[tuple[int, int], Symbol]]:
    """Boxes with ``i + j == d``, by increasing column."""
    if not 2 <= d <= t.n + 1:
        raise ValueError(f"diagonal {d} out of range 2..{t.n + 1}")
    return [((d - j, j), t.rows[d - j - 1][j - 1]) for j in range(1, d)]


def second_diagonal(t: Tableau) -> tuple[Symbol, ...]:
    """Symbols at positions 1..n-1 of the second main diagonal, position j being box (n-j, j)."""
    n = t.n
    return tuple(t.rows[n - j - 1][j - 1] for j in range(1, n))


def loads(text: str) -> Tableau | FilledTableau:
    """Parse one canonical block; returns a FilledTableau when u/q lines are present."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 1:
        raise ValueError("first line must hold the tableau size")
    n = int(lines[0][0])
    cells, fill = {}, {}
    for parts in lines[1:]:
        if len(parts) != 3:
            raise ValueError(f"malformed line: {' '.join(parts)!r}")
        i, j, s = int(parts[0]), int(parts[1]), parts[2]
        if s in ("u", "q"):
            fill[(i, j)] = Fill(s)
        elif s in ("A", "B", "G", "D"):
            if (i, j) in cells:
                raise ValueError(f"box {(i, j)} listed twice")
            cells[(i, j)] = Symbol(s)
        else:
            raise ValueError(f"unknown symbol {s!r}")
    t = Tableau.from_cells(n, cells)
    if fill:
        return FilledTableau(t, fill)
    return t


def loads_many(text: str) -> list[Tableau | FilledTableau]:
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [loads(b) for b in blocks]


def dumps_many(tableaux: Iterable[Tableau | FilledTableau]) -> str:
    return "\n".join(t.dumps() for t in tableaux)
