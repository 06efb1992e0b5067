"""The random alpha/beta staircase tableau and its exact sampler.

The law is parameterized by ``a = 1/alpha`` and ``b = 1/beta``.  In those
coordinates a tableau has probability

    a^(n - N_alpha) * b^(n - N_beta) / (a + b)^(rising n)

which stays finite at ``a = 0`` (alpha infinite) or ``b = 0`` (beta infinite).
Both infinite is the separate ``max_symbols`` mode: uniform over the tableaux
carrying the most symbols.
"""
from __future__ import annotations

import bisect
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable

import numpy as np

from . import enumeration
from .tableau import A, B, D, G, InvalidTableau, Tableau, delete_row_col, subtableau, validate


@dataclass(frozen=True)
class MeasureParams:
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    max_symbols: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a < 0 or self.b < 0:
            raise ValueError("a and b must be non-negative")
        if self.max_symbols:
            if self.a or self.b:
                raise ValueError("max_symbols requires a = b = 0")
        elif not (self.a or self.b):
            raise ValueError("a = b = 0 needs max_symbols=True")

    @classmethod
    def from_rates(cls, alpha, beta) -> "MeasureParams":
        """From alpha, beta; ``math.inf`` is accepted for either or both."""
        if alpha == math.inf and beta == math.inf:
            return cls(0, 0, True)
        a = 0 if alpha == math.inf else 1 / Fraction(alpha)
        b = 0 if beta == math.inf else 1 / Fraction(beta)
        return cls(a, b)

    def swapped(self) -> "MeasureParams":
        return MeasureParams(self.b, self.a, self.max_symbols)

    def shifted(self, da: int, db: int) -> "MeasureParams":
        if self.max_symbols:
            raise ValueError("cannot shift the max_symbols measure")
        return MeasureParams(self.a + da, self.b + db)

    def as_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "max_symbols": self.max_symbols}


def as_params(p) -> MeasureParams:
    if isinstance(p, MeasureParams):
        return p
    a, b = p
    return MeasureParams(a, b)


def _max_symbol_count(n: int) -> tuple[int, int]:
    tabs = enumeration.ab_tableaux(n)
    best = max(sum(t.counts.values()) for t in tabs)
    return best, sum(1 for t in tabs if sum(t.counts.values()) == best)


def _probability(n: int, n_alpha: int, n_beta: int, params: MeasureParams, norm) -> Fraction:
    if params.max_symbols:
        best, count = norm
        return Fraction(1, count) if n_alpha + n_beta == best else Fraction(0)
    # Python's 0**0 == 1 is the intended convention here
    return params.a ** (n - n_alpha) * params.b ** (n - n_beta) / norm


def _normalizer(n: int, params: MeasureParams):
    if params.max_symbols:
        return _max_symbol_count(n)
    return enumeration.rising(params.a + params.b, n)


def tableau_probability(t: Tableau, params) -> Fraction:
    params = as_params(params)
    if validate(t):
        raise InvalidTableau("not a valid staircase tableau")
    c = t.counts
    if c[G] or c[D]:
        raise InvalidTableau("the alpha/beta measure only charges alpha/beta tableaux")
    return _probability(t.n, c[A], c[B], params, _normalizer(t.n, params))


@lru_cache(maxsize=64)
def law(n: int, params) -> tuple[tuple[Tableau, Fraction], ...]:
    """Every alpha/beta tableau of size ``n`` with its probability, in canonical order."""
    params = as_params(params)
    norm = _normalizer(n, params)
    cache: dict[tuple[int, int], Fraction] = {}
    out = []
    for t in enumeration.ab_tableaux(n):
        c = t.counts
        k = (c[A], c[B])
        p = cache.get(k)
        if p is None:
            p = cache[k] = _probability(n, k[0], k[1], params, norm)
        out.append((t, p))
    return tuple(out)


def distribution(n: int, params, key: Callable[[Tableau], Hashable] = lambda t: t) -> dict:
    """Exact law of ``key(S)``; zero-probability outcomes are dropped."""
    return enumeration.pushforward(n, params, key)


# ---------------------------------------------------------------------------
# sampling


class ExactUniform:
    """Lazily refined uniform draws compared exactly against rational thresholds.

    Bits come 64 at a time from numpy's PCG64.  A draw starts as the dyadic
    interval ``[U, U + 1) / 2**64``; while a threshold falls strictly inside it,
    another 64 bits are appended.
    """

    def __init__(self, seed: int | np.random.SeedSequence):
        self._bits = np.random.Generator(np.random.PCG64(seed)).bit_generator

    def _word(self) -> int:
        return int(self._bits.random_raw())

    def choose(self, cumulative: list[int], denominator: int) -> int:
        """Index ``k`` with ``cumulative[k-1] <= x * denominator < cumulative[k]``.

        ``cumulative`` is non-decreasing integers ending at ``denominator``.
        """
        u, shift = self._word(), 64
        while True:
            lo = (u * denominator) >> shift  # floor of the interval start
            k = bisect.bisect_right(cumulative, lo)
            # interval [u, u+1)/2^shift maps into one cell iff its top stays below cumulative[k]
            if k >= len(cumulative) or ((u + 1) * denominator) <= (cumulative[k] << shift):
                return min(k, len(cumulative) - 1)
            u, shift = (u << 64) | self._word(), shift + 64

    def bernoulli(self, p: Fraction) -> bool:
        if p <= 0:
            return False
        if p >= 1:
            return True
        return self.choose([p.numerator, p.denominator], p.denominator) == 0


@dataclass(frozen=True)
class CumulativeTable:
    outcomes: tuple
    cumulative: list[int] = field(hash=False)
    denominator: int

    @classmethod
    def build(cls, items) -> "CumulativeTable":
        items = [(x, Fraction(p)) for x, p in items if p]
        den = math.lcm(*(p.denominator for _, p in items))
        cum, acc = [], 0
        for _, p in items:
            acc += p.numerator * (den // p.denominator)
            cum.append(acc)
        if acc != den:
            raise ValueError("probabilities do not sum to one")
        return cls(tuple(x for x, _ in items), cum, den)

    def draw(self, rng: ExactUniform):
        return self.outcomes[rng.choose(self.cumulative, self.denominator)]


@lru_cache(maxsize=32)
def cumulative_table(n: int, params: MeasureParams) -> CumulativeTable:
    return CumulativeTable.build(law(n, params))


@dataclass(frozen=True)
class SampleBatch:
    n: int
    params: object
    seed: int
    tableaux: tuple[Tableau, ...]

    def header(self) -> dict:
        params = self.params.as_dict() if isinstance(self.params, MeasureParams) else self.params
        return {"n": self.n, "params": params, "seed": self.seed, "count": len(self.tableaux)}


def sample(n: int, params, seed: int, count: int) -> SampleBatch:
    """``count`` i.i.d. exact draws from the alpha/beta law."""
    params = as_params(params)
    enumeration.check_cap(n, enumeration.ab_cap(), "sampling")
    table = cumulative_table(n, params)
    rng = ExactUniform(seed)
    return SampleBatch(n, params, seed, tuple(table.draw(rng) for _ in range(count)))


def sample_four(n: int, alpha, beta, gamma, delta, seed: int, count: int) -> SampleBatch:
    """Four-symbol draws: alpha/beta tableaux at (alpha+gamma, beta+delta), then independent relabelling."""
    alpha, beta, gamma, delta = map(Fraction, (alpha, beta, gamma, delta))
    if min(alpha, beta) <= 0 or min(gamma, delta) < 0:
        raise ValueError("alpha, beta must be positive and gamma, delta non-negative")
    enumeration.check_cap(n, enumeration.full_cap(), "four-symbol sampling")
    base = MeasureParams(1 / (alpha + gamma), 1 / (beta + delta))
    table = cumulative_table(n, base)
    seq = np.random.SeedSequence(seed)
    pick_rng, flip_rng = (ExactUniform(s) for s in seq.spawn(2))
    p_gamma = gamma / (alpha + gamma)
    p_delta = delta / (beta + delta)
    out = []
    for _ in range(count):
        t = table.draw(pick_rng)
        rows = []
        for row in t.rows:
            new = []
            for s in row:
                if s is A and flip_rng.bernoulli(p_gamma):
                    s = G
                elif s is B and flip_rng.bernoulli(p_delta):
                    s = D
                new.append(s)
            rows.append(tuple(new))
        out.append(Tableau(n, tuple(rows)))
    params = {k: str(v) for k, v in zip("alpha beta gamma delta".split(), (alpha, beta, gamma, delta))}
    return SampleBatch(n, params, seed, tuple(out))


def four_symbol_law(n: int, alpha, beta, gamma, delta) -> dict[Tableau, Fraction]:
    """Exact law of :func:`sample_four`'s output, by pushing the relabelling through the enumeration."""
    alpha, beta, gamma, delta = map(Fraction, (alpha, beta, gamma, delta))
    base = MeasureParams(1 / (alpha + gamma), 1 / (beta + delta))
    pg, pd = gamma / (alpha + gamma), delta / (beta + delta)
    out: dict = defaultdict(Fraction)
    for t, p in law(n, base):
        if not p:
            continue
        for u in enumeration.expand_symbols(t):
            c = u.counts
            w = pg ** c[G] * (1 - pg) ** c[A] * pd ** c[D] * (1 - pd) ** c[B]
            if w:
                out[u] += p * w
    return dict(out)


# ---------------------------------------------------------------------------
# distributional identities


@dataclass
class EqualityReport:
    name: str
    equal: bool
    left: dict = field(repr=False, default_factory=dict)
    right: dict = field(repr=False, default_factory=dict)
    note: str = ""

    def __bool__(self) -> bool:
        return self.equal

    def mismatches(self) -> list:
        keys = set(self.left) | set(self.right)
        return [k for k in keys if self.left.get(k, 0) != self.right.get(k, 0)]


def _same(left: dict, right: dict) -> bool:
    keys = set(left) | set(right)
    return all(left.get(k, 0) == right.get(k, 0) for k in keys)


def check_subtableau_law(n: int, params, i: int, j: int) -> EqualityReport:
    """Law of S[i, j] versus the law of size n-i-j+2 at (a+i-1, b+j-1)."""
    params = as_params(params)
    if i < 1 or j < 1 or i + j > n + 1:
        raise IndexError(f"box {(i, j)} is outside the size-{n} staircase")
    left = distribution(n, params, lambda t: subtableau(t, i, j))
    right = distribution(n - i - j + 2, params.shifted(i - 1, j - 1))
    return EqualityReport(f"subtableau[{i},{j}] n={n}", _same(left, right), left, right)


def conditional_law(n: int, params, given: Callable[[Tableau], bool], key=lambda t: t) -> dict | None:
    """Law of ``key(S)`` given the event; None when the event is null."""
    joint = distribution(n, params, lambda t: (given(t), key(t)))
    mass = sum((p for (g, _), p in joint.items() if g), Fraction(0))
    if not mass:
        return None
    return {k: p / mass for (g, k), p in joint.items() if g}


def check_corner_lemmas(n: int, params) -> tuple[EqualityReport, EqualityReport]:
    """The two corner conditionings at box (n-1, 1)."""
    params = as_params(params)
    if n < 3:
        raise ValueError("the corner lemmas need n >= 3")

    def box_is(i, j, s):
        return lambda t: t.rows[i - 1][j - 1] is s

    left = conditional_law(n, params, box_is(n - 1, 1, A), lambda t: subtableau(t, 1, 3))
    right = distribution(n - 2, params)
    if left is None:
        first = EqualityReport("corner-alpha", False, note="conditioning event has probability 0")
    else:
        first = EqualityReport("corner-alpha", _same(left, right), left, right)

    # in the size n-1 tableau, (n-1, 1) is the bottom diagonal corner
    left = conditional_law(n, params, box_is(n - 1, 1, B), lambda t: delete_row_col(t, n - 1, 2))
    right = conditional_law(n - 1, params, box_is(n - 1, 1, B))
    if left is None or right is None:
        second = EqualityReport("corner-beta", False, note="conditioning event has probability 0")
    else:
        second = EqualityReport("corner-beta", _same(left, right), left, right)
    return first, second
