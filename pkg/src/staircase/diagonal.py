"""Closed-form laws on the second main diagonal and their Poisson limits.

Position ``j`` (1..n-1) on the second main diagonal is box ``(n - j, j)``.
A set of positions is *spread* when consecutive positions differ by at least
two; two adjacent second-diagonal boxes can never both hold a symbol.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .enumeration import falling
from .measure import as_params, distribution, sample
from .tableau import A, B, E, Tableau, diagonal_cells, second_diagonal

STATISTICS = ("A", "B", "X")


@dataclass(frozen=True)
class Pmf:
    """Finite probability mass function on the non-negative integers."""

    masses: dict[int, Fraction]

    def __post_init__(self) -> None:
        if any(k < 0 for k in self.masses):
            raise ValueError("support must be non-negative")
        if any(p < 0 for p in self.masses.values()):
            raise ValueError("negative mass")
        if sum(self.masses.values()) != 1:
            raise ValueError(f"masses sum to {sum(self.masses.values())}, not 1")

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "Pmf":
        c = Counter(counts)
        total = sum(c.values())
        return cls({k: Fraction(v, total) for k, v in sorted(c.items())})

    def __getitem__(self, k: int) -> Fraction:
        return self.masses.get(k, Fraction(0))

    @property
    def support_max(self) -> int:
        return max((k for k, p in self.masses.items() if p), default=0)

    def trimmed(self) -> "Pmf":
        return Pmf({k: p for k, p in sorted(self.masses.items()) if p})

    def factorial_moment(self, r: int) -> Fraction:
        return sum((falling(k, r) * p for k, p in self.masses.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pmf):
            return NotImplemented
        keys = set(self.masses) | set(other.masses)
        return all(self[k] == other[k] for k in keys)

    def __hash__(self) -> int:
        return hash(frozenset(self.trimmed().masses.items()))

    def as_dict(self) -> dict[str, str]:
        return {str(k): str(p) for k, p in sorted(self.trimmed().masses.items())}


def is_spread(positions: Sequence[int]) -> bool:
    return all(y - x >= 2 for x, y in zip(positions, positions[1:]))


def _check_positions(n: int, positions: Sequence[int]) -> None:
    if any(not 1 <= j <= n - 1 for j in positions):
        raise ValueError(f"positions must lie in 1..{n - 1}")
    if any(y <= x for x, y in zip(positions, positions[1:])):
        raise ValueError("positions must be strictly increasing")


def spread_sets(r: int, m: int) -> Iterator[tuple[int, ...]]:
    """All of J_{r,m}: increasing r-tuples in 1..m with gaps of at least two."""
    if r == 0:
        yield ()
        return

    def rec(start: int, left: int, prefix: tuple) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield prefix
            return
        # the remaining left-1 positions need 2*(left-1) room after this one
        for j in range(start, m - 2 * (left - 1) + 1):
            yield from rec(j + 2, left - 1, prefix + (j,))

    yield from rec(1, r, ())


def count_spread_sets(r: int, m: int) -> int:
    return math.comb(m - r + 1, r) if m - r + 1 >= 0 else 0


def count_spread_sets_bruteforce(r: int, m: int) -> int:
    return sum(1 for _ in spread_sets(r, m))


# ---------------------------------------------------------------------------
# closed forms


# The max_symbols measure has a = b = 0; the closed forms apply to it wherever
# no denominator vanishes.
def _div(x, y) -> Fraction:
    if not y:
        raise ValueError("closed form undefined here: zero denominator at a = b = 0")
    return Fraction(x) / y


def p_box(n: int, params, i: int, j: int) -> tuple[Fraction, Fraction, Fraction]:
    """``(P(alpha), P(beta), P(empty))`` for box (i, j)."""
    params = as_params(params)
    a, b = params.a, params.b
    if i < 1 or j < 1 or i + j > n + 1:
        raise IndexError(f"box {(i, j)} is outside the size-{n} staircase")
    if i + j == n + 1:
        pa = _div(n - i + b, n + a + b - 1)
        return pa, 1 - pa, Fraction(0)
    den = (i + j + a + b - 1) * (i + j + a + b - 2)
    pa = _div(j - 1 + b, den)
    pb = _div(i - 1 + a, den)
    return pa, pb, 1 - pa - pb


def p_alpha_joint(n: int, params, positions: Sequence[int]) -> Fraction:
    """P(every listed second-diagonal position holds an alpha)."""
    params = as_params(params)
    positions = tuple(positions)
    _check_positions(n, positions)
    if not is_spread(positions):
        return Fraction(0)
    a, b = params.a, params.b
    r = len(positions)
    out = Fraction(1)
    for k in range(1, r + 1):
        top = b + positions[r - k] - 2 * r + 2 * k - 1
        c = a + b + n - 2 * r + 2 * k
        out *= _div(top, (c - 1) * (c - 2))
    return out


def p_nonempty_joint(n: int, params, positions: Sequence[int]) -> Fraction:
    """P(every listed second-diagonal position holds a symbol)."""
    params = as_params(params)
    positions = tuple(positions)
    _check_positions(n, positions)
    if not is_spread(positions):
        return Fraction(0)
    r = len(positions)
    out = Fraction(1)
    for k in range(1, r + 1):
        out = _div(out, n + params.a + params.b - r + k - 1)
    return out


def la_sum_bruteforce(r: int, m: int) -> int:
    """Sum over J_{r,m} of the product of the positions."""
    return sum(math.prod(js) for js in spread_sets(r, m))


def la_sum_closed(r: int, m: int) -> Fraction:
    if m < 2 * r - 1:
        return Fraction(0)
    return Fraction(falling(m + 1, 2 * r), 2**r * math.factorial(r))


def falling_power_sum(t: int, m: int) -> int:
    """sum_{j=0..m} (j)_t, by direct summation."""
    return sum(falling(j, t) for j in range(m + 1))


def falling_power_sum_closed(t: int, m: int) -> Fraction:
    return Fraction(falling(m + 1, t + 1), t + 1)


# ---------------------------------------------------------------------------
# factorial moments


def _complete_homogeneous(values: Sequence[Fraction], r: int) -> Fraction:
    """h_r(values): sum of all degree-r monomials."""
    h = [Fraction(1)] + [Fraction(0)] * r
    for x in values:
        for k in range(1, r + 1):
            h[k] += x * h[k - 1]
    return h[r]


def factorial_moment_A(n: int, params, r: int) -> Fraction:
    """E(A_n)_r = r! times the sum of the joint alpha probabilities over J_{r,n-1}.

    Shifting the m-th smallest position down by 2(m-1) turns the spread sets
    into non-decreasing sequences in 1..n-2r+1, and the numerator of each
    term into a product of (b + i - 1) over that sequence.  The sum is then a
    complete homogeneous polynomial, computed by dynamic programming instead
    of visiting the C(n-r, r) sets.
    """
    params = as_params(params)
    if r == 0:
        return Fraction(1)
    width = n - 2 * r + 1
    if width < 1:
        return Fraction(0)
    a, b = params.a, params.b
    den = Fraction(1)
    for k in range(1, r + 1):
        c = a + b + n - 2 * r + 2 * k
        den *= (c - 1) * (c - 2)
    numer = _complete_homogeneous([b + i - 1 for i in range(1, width + 1)], r)
    return math.factorial(r) * _div(numer, den)


def factorial_moment_A_bruteforce(n: int, params, r: int) -> Fraction:
    total = sum((p_alpha_joint(n, params, js) for js in spread_sets(r, n - 1)), Fraction(0))
    return math.factorial(r) * total


def factorial_moment_B(n: int, params, r: int) -> Fraction:
    return factorial_moment_A(n, as_params(params).swapped(), r)


def factorial_moment_X(n: int, params, r: int) -> Fraction:
    params = as_params(params)
    if r == 0:
        return Fraction(1)
    count = count_spread_sets(r, n - 1)
    if not count:
        return Fraction(0)
    out = Fraction(math.factorial(r) * count)
    for k in range(1, r + 1):
        out = _div(out, n + params.a + params.b - r + k - 1)
    return out


def factorial_moment_X_bruteforce(n: int, params, r: int) -> Fraction:
    total = sum((p_nonempty_joint(n, params, js) for js in spread_sets(r, n - 1)), Fraction(0))
    return math.factorial(r) * total


_MOMENTS = {"A": factorial_moment_A, "B": factorial_moment_B, "X": factorial_moment_X}


def max_count(n: int) -> int:
    """Largest number of symbols a spread set on the second diagonal can hold: ceil((n-1)/2)."""
    return n // 2


def moment_vector(n: int, params, stat: str, r_max: int | None = None) -> list[tuple[int, Fraction]]:
    """``[(r, E(stat)_r)]`` for r = 0..r_max (default: up to where moments vanish)."""
    fn = _MOMENTS[stat]
    top = max_count(n) if r_max is None else r_max
    return [(r, fn(n, params, r)) for r in range(top + 1)]


def pmf_from_factorial_moments(moments: Sequence[tuple[int, Fraction]], support_max: int) -> Pmf:
    """Invert factorial moments: P(N=k) = sum_{r>=k} (-1)^(r-k) C(r,k) E(N)_r / r!.

    Moments past the last one given are taken to be zero.
    """
    m = dict(moments)
    if m.get(0, 1) != 1:
        raise ValueError("the zeroth factorial moment must be 1")
    top = max(m)
    masses = {}
    for k in range(support_max + 1):
        p = Fraction(0)
        for r in range(k, top + 1):
            if m.get(r):
                p += (-1) ** (r - k) * math.comb(r, k) * Fraction(m[r]) / math.factorial(r)
        if p < 0:
            raise ValueError(f"negative mass {p} at {k}: inconsistent moments")
        masses[k] = p
    return Pmf(masses)


def pmf_formula(n: int, params, stat: str) -> Pmf:
    """Law of A_n, B_n or X_n from the closed-form moments (any n)."""
    return pmf_from_factorial_moments(moment_vector(n, params, stat), max_count(n))


def _statistic(stat: str):
    if stat == "A":
        return lambda t: sum(1 for s in second_diagonal(t) if s is A)
    if stat == "B":
        return lambda t: sum(1 for s in second_diagonal(t) if s is B)
    if stat == "X":
        return lambda t: sum(1 for s in second_diagonal(t) if s is not E)
    raise ValueError(f"unknown statistic {stat!r}; expected one of {STATISTICS}")


def pmf_exact(n: int, params, stat: str) -> Pmf:
    """Enumeration law of A_n, B_n or X_n."""
    return Pmf(distribution(n, params, _statistic(stat)))


# ---------------------------------------------------------------------------
# Poisson distance


def poisson_pmf(lam, k: int, prec: int = 60) -> Decimal:
    lam = Fraction(lam)
    with localcontext() as ctx:
        ctx.prec = prec
        x = Decimal(lam.numerator) / Decimal(lam.denominator)
        return (-x).exp() * x**k / math.factorial(k)


def tv_to_poisson(p: Pmf, lam, digits: int = 30) -> Decimal:
    """Total variation distance between ``p`` and Poisson(lam), tail included."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    prec = digits + 30
    with localcontext() as ctx:
        ctx.prec = prec
        x = Decimal(lam.numerator) / Decimal(lam.denominator)
        term = (-x).exp()  # Poisson mass at k = 0
        covered = Decimal(0)
        dist = Decimal(0)
        for k in range(p.support_max + 1):
            if k:
                term = term * x / k
            pk = p[k]
            dist += abs(Decimal(pk.numerator) / Decimal(pk.denominator) - term)
            covered += term
        dist += 1 - covered
        result = dist / 2
    with localcontext() as ctx:
        ctx.prec = digits
        return +result


def empirical_diagonal_pmf(
    n: int, params, d: int, sample_count: int | None = None, seed: int = 0
) -> Pmf:
    """Number of symbols on diagonal ``i + j == d``.

    Exact (enumeration) when ``sample_count`` is None, otherwise the empirical
    law of ``sample_count`` seeded draws.
    """
    if not 2 <= d <= n + 1:
        raise ValueError(f"diagonal {d} out of range 2..{n + 1}")

    def count(t: Tableau) -> int:
        return sum(1 for _, s in diagonal_cells(t, d) if s is not E)

    if sample_count is None:
        return Pmf(distribution(n, params, count))
    batch = sample(n, params, seed, sample_count)
    return Pmf.from_counts(count(t) for t in batch.tableaux)


def position_sets(m: int, r_max: int) -> Iterator[tuple[int, ...]]:
    """Every strictly increasing tuple in 1..m of size 1..r_max (spread or not)."""
    for r in range(1, r_max + 1):
        yield from itertools.combinations(range(1, m + 1), r)
