"""Exhaustive enumeration of staircase tableaux and exact sums over them.

Everything downstream that claims a closed form is checked against the sums
computed here.
"""
from __future__ import annotations

import os
from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Iterator

from .tableau import A, B, D, E, G, Monomial, Symbol, Tableau

DEFAULT_AB_CAP = 9
DEFAULT_FULL_CAP = 6
DEFAULT_FILLED_CAP = 5
CAP_ENV = "STAIRCASE_MAX_N"


class CapExceeded(ValueError):
    pass


def _cap(default: int) -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else default


def ab_cap() -> int:
    return _cap(DEFAULT_AB_CAP)


def full_cap() -> int:
    return _cap(DEFAULT_FULL_CAP)


def filled_cap() -> int:
    return _cap(DEFAULT_FILLED_CAP)


def check_cap(n: int, cap: int, what: str = "enumeration") -> None:
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    if n > cap:
        raise CapExceeded(f"{what} of size {n} exceeds the cap {cap} (set {CAP_ENV} to raise it)")


def rising(x, n: int):
    """x (x+1) ... (x+n-1); 1 for n == 0."""
    out = 1
    for k in range(n):
        out *= x + k
    return out


def falling(x, r: int):
    """x (x-1) ... (x-r+1); 1 for r == 0."""
    out = 1
    for k in range(r):
        out *= x - k
    return out


# Per-box choices in canonical order.  The canonical serialization lists boxes
# row-major and omits empties, so comparing serializations as strings amounts
# to comparing boxes row-major with A < B < D < G < empty (single-digit sizes).
_AB_CHOICES = (A, B, E)
_FULL_CHOICES = (A, B, D, G, E)


@lru_cache(maxsize=None)
def _row_patterns(length: int, blocked: int, full: bool) -> tuple[tuple[tuple[Symbol, ...], int], ...]:
    """All legal fillings of one row, with the updated column mask.

    ``blocked`` has bit ``j - 1`` set when column ``j`` already holds a symbol
    higher up, so an alpha/gamma there would break the column rule.
    """
    choices = _FULL_CHOICES if full else _AB_CHOICES
    out = []

    def rec(j: int, prefix: list, seen: bool, mask: int) -> None:
        if j > length:
            out.append((tuple(prefix), mask))
            return
        bit = 1 << (j - 1)
        for s in choices:
            if s is E:
                if j == length:
                    continue
                prefix.append(E)
                rec(j + 1, prefix, seen, mask)
                prefix.pop()
            elif s.is_column_kind:
                if blocked & bit:
                    continue
                prefix.append(s)
                rec(j + 1, prefix, True, mask | bit)
                prefix.pop()
            else:
                if seen:
                    continue
                prefix.append(s)
                rec(j + 1, prefix, True, mask | bit)
                prefix.pop()

    rec(1, [], False, blocked)
    return tuple(out)


def _enumerate(n: int, full: bool) -> Iterator[Tableau]:
    rows: list[tuple[Symbol, ...]] = []

    def rec(i: int, mask: int) -> Iterator[Tableau]:
        if i > n:
            yield Tableau(n, tuple(rows))
            return
        # columns beyond this row's length never matter again
        length = n + 1 - i
        for pattern, new_mask in _row_patterns(length, mask & ((1 << length) - 1), full):
            rows.append(pattern)
            yield from rec(i + 1, new_mask)
            rows.pop()

    return rec(1, 0)


def enumerate_ab(n: int, cap: int | None = None) -> Iterator[Tableau]:
    """Every valid alpha/beta staircase tableau of size ``n``, in canonical order."""
    check_cap(n, ab_cap() if cap is None else cap)
    return _enumerate(n, full=False)


def enumerate_full(n: int, cap: int | None = None) -> Iterator[Tableau]:
    """Every valid four-symbol staircase tableau of size ``n``, in canonical order."""
    check_cap(n, full_cap() if cap is None else cap)
    return _enumerate(n, full=True)


@lru_cache(maxsize=None)
def ab_tableaux(n: int) -> tuple[Tableau, ...]:
    """Materialized, cached :func:`enumerate_ab`."""
    return tuple(enumerate_ab(n))


def expand_symbols(t: Tableau) -> Iterator[Tableau]:
    """All four-symbol tableaux obtained by turning alphas into gammas and betas into deltas."""
    boxes = [(i, j) for (i, j), _ in t.cells()]
    k = len(boxes)
    for bits in range(1 << k):
        grid = [list(r) for r in t.rows]
        for b, (i, j) in enumerate(boxes):
            if bits >> b & 1:
                grid[i - 1][j - 1] = G if grid[i - 1][j - 1] is A else D
        yield Tableau(t.n, tuple(tuple(r) for r in grid))


@lru_cache(maxsize=None)
def weight_polynomial(n: int, full: bool = True) -> dict[Monomial, int]:
    """Generating polynomial: monomial -> number of tableaux of size ``n`` with that weight."""
    source = enumerate_full(n) if full else enumerate_ab(n)
    counts: Counter = Counter()
    for t in source:
        c = t.counts
        counts[Monomial(c[A], c[B], c[G], c[D])] += 1
    return dict(counts)


def partition_product(n: int, alpha, beta, gamma=0, delta=0) -> Fraction:
    """The closed product form of the four-parameter partition function."""
    alpha, beta, gamma, delta = map(Fraction, (alpha, beta, gamma, delta))
    out = Fraction(1)
    for i in range(n):
        out *= alpha + beta + gamma + delta + i * (alpha + gamma) * (beta + delta)
    return out


def partition_ab_closed(n: int, alpha, beta) -> Fraction:
    """alpha^n beta^n (a+b)^(rising n) with a, b the reciprocals."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    return alpha**n * beta**n * rising(1 / alpha + 1 / beta, n)


def partition_function(n: int, alpha, beta, gamma=0, delta=0) -> tuple[Fraction | None, Fraction]:
    """Return ``(enumerated, product)``.

    ``enumerated`` is the weight sum over all four-symbol tableaux, or None
    when ``n`` is past the four-symbol cap.
    """
    alpha, beta, gamma, delta = map(Fraction, (alpha, beta, gamma, delta))
    product = partition_product(n, alpha, beta, gamma, delta)
    if n > full_cap():
        return None, product
    total = sum(
        (k * m.evaluate(alpha, beta, gamma, delta) for m, k in weight_polynomial(n).items()),
        Fraction(0),
    )
    return total, product


def pushforward(
    n: int, params, key: Callable[[Tableau], Hashable]
) -> dict[Hashable, Fraction]:
    """Exact law of ``key(S)`` for a random alpha/beta tableau ``S`` of size ``n``."""
    from .measure import law

    out: dict = defaultdict(Fraction)
    for t, p in law(n, params):
        if p:
            out[key(t)] += p
    return dict(out)


def exact_event_probability(n: int, params, event: Callable[[Tableau], bool]) -> Fraction:
    from .measure import law

    return sum((p for t, p in law(n, params) if p and event(t)), Fraction(0))
