"""Open-boundary ASEP on n sites and its steady state from staircase tableaux.

States are integers whose bit ``k - 1`` is set when site ``k`` is occupied.
Particles enter site 1 at rate alpha and leave it at rate gamma, enter site n
at rate delta and leave it at rate beta, and hop right at rate u and left at
rate q.  The chain is continuous-time; the discrete-time version with all
rates scaled by a constant has the same stationary vector.
"""
from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import enumeration
from .tableau import ALPHA_DELTA, NEAREST, asep_type, fill_uq

MAX_SITES = 12


@dataclass(frozen=True)
class AsepRates:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    u: Fraction = Fraction(1)
    q: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "delta", "u", "q"):
            v = Fraction(getattr(self, name))
            if v < 0:
                raise ValueError(f"rate {name} must be non-negative")
            object.__setattr__(self, name, v)
        if not (self.alpha or self.delta):
            raise ValueError("need a positive entry rate (alpha or delta)")
        if not (self.beta or self.gamma):
            raise ValueError("need a positive exit rate (beta or gamma)")

    @classmethod
    def parse(cls, text: str) -> "AsepRates":
        """From ``"alpha,beta,gamma,delta,u,q"``."""
        parts = [Fraction(x.strip()) for x in text.split(",")]
        if len(parts) != 6:
            raise ValueError("expected six comma-separated rates: alpha,beta,gamma,delta,u,q")
        return cls(*parts)

    def symbol_values(self) -> dict[str, Fraction]:
        return dict(alpha=self.alpha, beta=self.beta, gamma=self.gamma, delta=self.delta, u=self.u, q=self.q)


class ReducibleChain(ValueError):
    pass


def state_index(sites: Sequence[bool]) -> int:
    return sum(1 << k for k, occ in enumerate(sites) if occ)


def state_sites(index: int, n: int) -> tuple[bool, ...]:
    return tuple(bool(index >> k & 1) for k in range(n))


def state_label(index: int, n: int) -> str:
    return "".join("1" if occ else "0" for occ in state_sites(index, n))


@dataclass(frozen=True)
class GeneratorMatrix:
    """Sparse generator; ``offdiag[s]`` maps target states to positive rates."""

    n: int
    offdiag: tuple[dict[int, Fraction], ...] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.offdiag)

    def __getitem__(self, st: tuple[int, int]) -> Fraction:
        s, t = st
        if s == t:
            return -sum(self.offdiag[s].values(), Fraction(0))
        return self.offdiag[s].get(t, Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        return [[self[s, t] for t in range(self.size)] for s in range(self.size)]

    def left_apply(self, pi: Sequence[Fraction]) -> list[Fraction]:
        """The row vector pi G."""
        out = [Fraction(0)] * self.size
        for s, row in enumerate(self.offdiag):
            for t, rate in row.items():
                out[t] += pi[s] * rate
                out[s] -= pi[s] * rate
        return out


def build_generator(n: int, rates: AsepRates) -> GeneratorMatrix:
    if not 1 <= n <= MAX_SITES:
        raise enumeration.CapExceeded(f"ASEP size must be in 1..{MAX_SITES}, got {n}")
    rows = []
    for s in range(1 << n):
        out: dict[int, Fraction] = defaultdict(Fraction)
        for k in range(n - 1):
            here, there = s >> k & 1, s >> (k + 1) & 1
            flipped = s ^ (0b11 << k)
            if here and not there and rates.u:
                out[flipped] += rates.u
            elif there and not here and rates.q:
                out[flipped] += rates.q
        first = s & 1
        last = s >> (n - 1) & 1
        # n == 1 puts all four boundary rates on the single site
        r = rates.gamma if first else rates.alpha
        if r:
            out[s ^ 1] += r
        r = rates.beta if last else rates.delta
        if r:
            out[s ^ (1 << (n - 1))] += r
        rows.append(dict(out))
    return GeneratorMatrix(n, tuple(rows))


def _reachable(adj: Sequence[Sequence[int]], start: int) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        for t in adj[s]:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    return seen


def is_irreducible(g: GeneratorMatrix) -> bool:
    fwd = [list(row) for row in g.offdiag]
    back: list[list[int]] = [[] for _ in range(g.size)]
    for s, row in enumerate(g.offdiag):
        for t in row:
            back[t].append(s)
    return len(_reachable(fwd, 0)) == g.size and len(_reachable(back, 0)) == g.size


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a non-singular rational system with fraction-free (Bareiss) elimination."""
    size = len(matrix)
    aug = []
    for row, b in zip(matrix, rhs):
        scale = math.lcm(*(Fraction(x).denominator for x in row), Fraction(b).denominator)
        aug.append([int(Fraction(x) * scale) for x in row] + [int(Fraction(b) * scale)])
    prev = 1
    for k in range(size):
        pivot = next((r for r in range(k, size) if aug[r][k]), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        for r in range(k + 1, size):
            rk = aug[r][k]
            row_r, row_k = aug[r], aug[k]
            for c in range(k + 1, size + 1):
                # exact division is the Bareiss invariant
                row_r[c] = (row_r[c] * pk - rk * row_k[c]) // prev
            row_r[k] = 0
        prev = pk
    x = [Fraction(0)] * size
    for k in range(size - 1, -1, -1):
        acc = Fraction(aug[k][size]) - sum((aug[k][c] * x[c] for c in range(k + 1, size)), Fraction(0))
        x[k] = acc / aug[k][k]
    return x


def stationary_distribution(g: GeneratorMatrix) -> list[Fraction]:
    """The probability vector pi with pi G = 0."""
    if not is_irreducible(g):
        raise ReducibleChain("the chain is not irreducible")
    size = g.size
    dense = g.dense()
    # transpose, then swap one balance equation for normalization
    system = [[dense[s][t] for s in range(size)] for t in range(size)]
    system[-1] = [Fraction(1)] * size
    rhs = [Fraction(0)] * (size - 1) + [Fraction(1)]
    return solve_exact(system, rhs)


def tableaux_steady_state(
    n: int, rates: AsepRates, convention: str = ALPHA_DELTA, column_rule: str = NEAREST
) -> list[Fraction]:
    """Weight of all filled tableaux of each type, normalized; indexed like the chain."""
    enumeration.check_cap(n, enumeration.filled_cap(), "filled-tableau enumeration")
    values = rates.symbol_values()
    totals = [Fraction(0)] * (1 << n)
    for t in enumeration.enumerate_full(n, cap=enumeration.filled_cap()):
        w = fill_uq(t, column_rule).weight().evaluate(**values)
        if w:
            totals[state_index(asep_type(t, convention))] += w
    z = sum(totals, Fraction(0))
    return [x / z for x in totals]


@dataclass
class CorrespondenceReport:
    n: int
    rates: AsepRates
    chain: list[Fraction]
    tableaux: list[Fraction]

    @property
    def max_discrepancy(self) -> Fraction:
        return max(abs(x - y) for x, y in zip(self.chain, self.tableaux))

    @property
    def equal(self) -> bool:
        return self.chain == self.tableaux

    def __bool__(self) -> bool:
        return self.equal

    def as_dict(self) -> dict:
        labels = [state_label(s, self.n) for s in range(len(self.chain))]
        return {
            "n": self.n,
            "rates": {k: str(v) for k, v in self.rates.symbol_values().items()},
            "chain": {lab: str(x) for lab, x in zip(labels, self.chain)},
            "tableaux": {lab: str(x) for lab, x in zip(labels, self.tableaux)},
            "max_discrepancy": str(self.max_discrepancy),
            "equal": self.equal,
        }


def verify_correspondence(
    n: int, rates: AsepRates, convention: str = ALPHA_DELTA, column_rule: str = NEAREST
) -> CorrespondenceReport:
    chain = stationary_distribution(build_generator(n, rates))
    tabs = tableaux_steady_state(n, rates, convention, column_rule)
    return CorrespondenceReport(n, rates, chain, tabs)
