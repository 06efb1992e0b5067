from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from staircase.asep import (
    AsepRates,
    ReducibleChain,
    build_generator,
    solve_exact,
    state_index,
    stationary_distribution,
    tableaux_steady_state,
    verify_correspondence,
)
from staircase.enumeration import CapExceeded
from staircase.tableau import ALPHA_GAMMA

ONES = AsepRates(1, 1, 1, 1, 1, 1)
RATE_POINTS = [
    (1, 1, 1, 1, 1, 1),
    (2, 1, 1, 3, 1, 1),
    (1, 2, F(1, 2), 1, 3, 1),
    (2, 3, 0, F(5, 7), 3, F(4, 3)),
    (F(1, 3), 1, 2, F(1, 2), 1, 4),
]
rate = st.fractions(min_value=F(1, 9), max_value=9, max_denominator=9)


class TestRates:
    def test_guards(self):
        with pytest.raises(ValueError):
            AsepRates(0, 1, 1, 0)
        with pytest.raises(ValueError):
            AsepRates(1, 0, 0, 1)
        with pytest.raises(ValueError):
            AsepRates(1, 1, -1, 1)

    def test_parse(self):
        assert AsepRates.parse("1,2,1/2,1,3,1") == AsepRates(1, 2, F(1, 2), 1, 3, 1)
        with pytest.raises(ValueError):
            AsepRates.parse("1,2,3")


class TestGenerator:
    def test_single_site(self):
        g = build_generator(1, AsepRates(2, 3, 5, 7, 1, 1))
        assert g[0, 1] == 2 + 7 and g[1, 0] == 3 + 5

    def test_two_sites(self):
        g = build_generator(2, ONES)
        s = state_index((True, False))
        assert g.offdiag[s] == {
            state_index((False, False)): 1,  # gamma
            state_index((True, True)): 1,  # delta
            state_index((False, True)): 1,  # u
        }

    def test_hop_rates(self):
        r = AsepRates(1, 1, 1, 1, 3, F(1, 2))
        g = build_generator(3, r)
        assert g[state_index((False, True, False)), state_index((False, False, True))] == 3
        assert g[state_index((False, True, False)), state_index((True, False, False))] == F(1, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_rows_sum_to_zero(self, n):
        g = build_generator(n, AsepRates(2, 3, F(1, 2), F(5, 7), 3, F(4, 3)))
        for s, row in enumerate(g.dense()):
            assert sum(row) == 0
            assert all(x >= 0 for t, x in enumerate(row) if t != s)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            build_generator(13, ONES)


class TestStationary:
    def test_symmetric_two_state(self):
        assert stationary_distribution(build_generator(1, ONES)) == [F(1, 2), F(1, 2)]

    def test_balance(self):
        pi = stationary_distribution(build_generator(1, AsepRates(2, 1, 1, 0)))
        assert pi[1] == F(1, 2)

    @pytest.mark.parametrize("point", RATE_POINTS)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_null_vector(self, point, n):
        g = build_generator(n, AsepRates(*point))
        pi = stationary_distribution(g)
        assert sum(pi) == 1 and all(x > 0 for x in pi)
        assert all(x == 0 for x in g.left_apply(pi))

    def test_reducible(self):
        # no hopping and no entry at the right: site 2 is never reached
        with pytest.raises(ReducibleChain):
            stationary_distribution(build_generator(2, AsepRates(1, 1, 1, 0, 0, 0)))

    @given(st.lists(rate, min_size=6, max_size=6))
    def test_rate_scaling_invariant(self, rs):
        g1 = build_generator(2, AsepRates(*rs))
        g2 = build_generator(2, AsepRates(*(3 * x for x in rs)))
        assert stationary_distribution(g1) == stationary_distribution(g2)


@given(st.integers(1, 5).flatmap(lambda k: st.tuples(
    st.lists(st.lists(st.fractions(-5, 5, max_denominator=7), min_size=k, max_size=k), min_size=k, max_size=k),
    st.lists(st.fractions(-5, 5, max_denominator=7), min_size=k, max_size=k),
)))
def test_solver_against_sympy(system):
    matrix, rhs = system
    m = sympy.Matrix(matrix)
    if m.det() == 0:
        with pytest.raises(ZeroDivisionError):
            solve_exact(matrix, rhs)
        return
    expected = m.LUsolve(sympy.Matrix(rhs))
    assert solve_exact(matrix, rhs) == [F(int(x.p), int(x.q)) for x in expected]


class TestTableauxSide:
    def test_single_site(self):
        assert tableaux_steady_state(1, ONES) == [F(1, 2), F(1, 2)]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_normalized(self, n):
        assert sum(tableaux_steady_state(n, AsepRates(2, 3, F(1, 2), F(5, 7), 3, F(4, 3)))) == 1


class TestCorrespondence:
    def test_single_site(self):
        rep = verify_correspondence(1, AsepRates(2, 1, 1, 3))
        assert rep.equal and rep.chain[1] == F(5, 7)

    @pytest.mark.parametrize("n", [2, 3])
    def test_all_ones(self, n):
        assert verify_correspondence(n, ONES)

    def test_u_neq_q(self):
        rep = verify_correspondence(3, AsepRates(1, 2, F(1, 2), 1, 3, 1))
        assert rep.equal and rep.max_discrepancy == 0

    @pytest.mark.parametrize("point", RATE_POINTS)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_sweep(self, point, n):
        assert verify_correspondence(n, AsepRates(*point))

    def test_size_four(self):
        assert verify_correspondence(4, AsepRates(2, 3, F(1, 2), F(5, 7), 3, F(4, 3)))

    @given(st.lists(rate, min_size=6, max_size=6))
    def test_random_rates(self, rs):
        assert verify_correspondence(2, AsepRates(*rs))

    def test_alpha_gamma_reading_fails(self):
        rep = verify_correspondence(1, AsepRates(2, 1, 1, 3), convention=ALPHA_GAMMA)
        assert not rep.equal and rep.max_discrepancy == F(2, 7)

    def test_any_below_column_rule_fails(self):
        rates = AsepRates(2, 3, F(1, 2), F(5, 7), 3, F(4, 3))
        assert verify_correspondence(2, rates, column_rule="any")
        assert not verify_correspondence(3, rates, column_rule="any")

    def test_report_json(self):
        d = verify_correspondence(1, AsepRates(2, 1, 1, 3)).as_dict()
        assert d["equal"] is True and d["chain"] == {"0": "2/7", "1": "5/7"}
