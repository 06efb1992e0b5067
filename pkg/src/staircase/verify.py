"""Oracle-equality suites: every closed form against exhaustive enumeration."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import diagonal as dg
from .asep import AsepRates, verify_correspondence
from .enumeration import (
    enumerate_ab,
    partition_ab_closed,
    partition_function,
    partition_product,
    pushforward,
    weight_polynomial,
)
from .measure import MeasureParams, check_corner_lemmas, check_subtableau_law
from .tableau import A, B, E, second_diagonal

F = Fraction
PARAM_POINTS = (
    MeasureParams(1, 1),
    MeasureParams(2, F(1, 3)),
    MeasureParams(0, 1),
    MeasureParams(5, 5),
)
STRUCTURE_POINTS = (
    MeasureParams(1, 1),
    MeasureParams(F(1, 2), 2),
    MeasureParams(2, F(1, 3)),
    MeasureParams(0, 1),
)
RATE_POINTS = (
    (1, 1, 1, 1, 1, 1),
    (2, 1, 1, 3, 1, 1),
    (1, 2, F(1, 2), 1, 3, 1),
    (2, 3, 0, F(5, 7), 3, F(4, 3)),
    (F(1, 3), 1, 2, F(1, 2), 1, 4),
    (3, F(1, 2), F(1, 4), 0, F(2, 5), 1),
)
# (alpha, beta, gamma, delta) points for the partition identities
WEIGHT_POINTS = (
    (1, 1, 1, 1),
    (2, 3, F(1, 2), F(1, 5)),
    (F(1, 3), F(7, 2), 2, 1),
    (5, F(1, 4), 0, 3),
    (F(3, 7), F(9, 8), F(2, 3), F(4, 11)),
)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {len(self.failures)} failures"


def suite_counting(max_n: int) -> SuiteResult:
    res = SuiteResult("counting")
    for n in range(1, min(max_n, 8) + 1):
        res.expect(sum(1 for _ in enumerate_ab(n)) == math.factorial(n + 1), f"|S_{n}| != {n + 1}!")
    for n in range(1, min(max_n, 4) + 1):
        expanded = sum(k * 2 ** (m.alpha + m.beta) for m, k in weight_polynomial(n, full=False).items())
        full = sum(weight_polynomial(n, full=True).values())
        res.expect(expanded == full, f"four-symbol count at n={n}")
    return res


def suite_partition(max_n: int) -> SuiteResult:
    res = SuiteResult("partition")
    for n in range(1, min(max_n, 5) + 1):
        for al, be, ga, de in WEIGHT_POINTS:
            enumerated, product = partition_function(n, al, be, ga, de)
            res.expect(enumerated == product, f"Z_{n}{(al, be, ga, de)}")
            res.expect(
                product == partition_product(n, al + ga, be + de),
                f"Z_{n} merge identity at {(al, be, ga, de)}",
            )
    for n in range(1, min(max_n, 7) + 1):
        poly = weight_polynomial(n, full=False)
        for al, be, _, _ in WEIGHT_POINTS:
            total = sum((k * m.evaluate(F(al), F(be)) for m, k in poly.items()), F(0))
            res.expect(total == partition_ab_closed(n, al, be), f"Z_{n}(alpha, beta) at {(al, be)}")
    return res


def suite_box_laws(max_n: int) -> SuiteResult:
    res = SuiteResult("box-laws")
    for params in PARAM_POINTS:
        for n in range(1, min(max_n, 6) + 1):
            law = pushforward(n, params, lambda t: t.rows)
            for i in range(1, n + 1):
                for j in range(1, n + 2 - i):
                    pa = sum((p for rows, p in law.items() if rows[i - 1][j - 1] is A), F(0))
                    pb = sum((p for rows, p in law.items() if rows[i - 1][j - 1] is B), F(0))
                    res.expect(
                        dg.p_box(n, params, i, j) == (pa, pb, 1 - pa - pb),
                        f"box {(i, j)} n={n} {params}",
                    )
    return res


def _second_diagonal_law(n: int, params) -> dict:
    return pushforward(n, params, second_diagonal)


def suite_joint_laws(max_n: int) -> SuiteResult:
    res = SuiteResult("joint-laws")
    for params in PARAM_POINTS:
        for n in range(2, min(max_n, 7) + 1):
            law = _second_diagonal_law(n, params)
            for js in dg.position_sets(n - 1, 3):
                pa = sum((p for pat, p in law.items() if all(pat[j - 1] is A for j in js)), F(0))
                px = sum((p for pat, p in law.items() if all(pat[j - 1] is not E for j in js)), F(0))
                res.expect(dg.p_alpha_joint(n, params, js) == pa, f"alpha joint {js} n={n} {params}")
                res.expect(dg.p_nonempty_joint(n, params, js) == px, f"non-empty joint {js} n={n} {params}")
                if not dg.is_spread(js):
                    res.expect(pa == 0 and px == 0, f"adjacent positions {js} n={n} have mass")
    return res


def suite_lemma(max_n: int) -> SuiteResult:
    res = SuiteResult("lemma")
    for r in range(1, 6):
        for m in range(0, 15):
            res.expect(dg.la_sum_bruteforce(r, m) == dg.la_sum_closed(r, m), f"spread product sum r={r} m={m}")
    for t in range(0, 9):
        for m in range(0, 21):
            res.expect(
                dg.falling_power_sum(t, m) == dg.falling_power_sum_closed(t, m),
                f"falling power sum t={t} m={m}",
            )
    for r in range(0, 7):
        for m in range(0, 21):
            res.expect(
                dg.count_spread_sets_bruteforce(r, m) == dg.count_spread_sets(r, m),
                f"|J_(r={r},m={m})|",
            )
    return res


def suite_moments(max_n: int) -> SuiteResult:
    res = SuiteResult("moments")
    for params in PARAM_POINTS:
        for n in range(2, min(max_n, 7) + 1):
            for stat in ("A", "X"):
                exact = dg.pmf_exact(n, params, stat)
                for r in range(0, dg.max_count(n) + 2):
                    res.expect(
                        dg._MOMENTS[stat](n, params, r) == exact.factorial_moment(r),
                        f"E({stat}_{n})_{r} {params}",
                    )
                res.expect(dg.pmf_formula(n, params, stat) == exact, f"inverted PMF {stat}_{n} {params}")
    return res


def suite_symmetry(max_n: int) -> SuiteResult:
    res = SuiteResult("symmetry")
    for params in PARAM_POINTS:
        for n in range(2, min(max_n, 7) + 1):
            res.expect(
                dg.pmf_exact(n, params, "B") == dg.pmf_exact(n, params.swapped(), "A"),
                f"B_{n} vs A_{n} swapped {params}",
            )
    return res


def suite_subtableau(max_n: int) -> SuiteResult:
    res = SuiteResult("subtableau")
    for params in STRUCTURE_POINTS:
        for n in range(1, min(max_n, 6) + 1):
            for i in range(1, n + 1):
                for j in range(1, n + 2 - i):
                    res.expect(bool(check_subtableau_law(n, params, i, j)), f"S[{i},{j}] n={n} {params}")
    return res


def suite_corner_lemmas(max_n: int) -> SuiteResult:
    res = SuiteResult("corner-lemmas")
    for params in STRUCTURE_POINTS:
        for n in range(3, min(max_n, 6) + 1):
            first, second = check_corner_lemmas(n, params)
            res.expect(bool(first), f"alpha corner n={n} {params}")
            res.expect(bool(second), f"beta corner n={n} {params}")
    return res


def suite_asep(max_n: int) -> SuiteResult:
    res = SuiteResult("asep")
    for n in range(1, min(max_n, 3) + 1):
        for point in RATE_POINTS:
            rep = verify_correspondence(n, AsepRates(*point))
            res.expect(rep.equal, f"n={n} rates={point}: max discrepancy {rep.max_discrepancy}")
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "counting": suite_counting,
    "partition": suite_partition,
    "box-laws": suite_box_laws,
    "joint-laws": suite_joint_laws,
    "lemma": suite_lemma,
    "moments": suite_moments,
    "symmetry": suite_symmetry,
    "corner-lemmas": suite_corner_lemmas,
    "subtableau": suite_subtableau,
    "asep": suite_asep,
}
GROUPS = {
    "all": tuple(SUITES),
    "diagonals": ("box-laws", "joint-laws", "lemma", "moments", "symmetry"),
    "structure": ("corner-lemmas", "subtableau"),
}


def run_suites(name: str, max_n: int) -> list[SuiteResult]:
    names = GROUPS.get(name, (name,))
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; choose from {sorted(SUITES) + sorted(GROUPS)}")
    return [SUITES[s](max_n) for s in names]
