from __future__ import annotations

from fractions import Fraction as F

from symdef.algebra import lp


def test_minimum_over_a_halfspace() -> None:
    # min x + 2y  s.t.  x + y - s = 2
    result = lp.solve([F(1), F(2), F(0)], [[F(1), F(1), F(-1)]], [F(2)])

    assert result.status == lp.OPTIMAL
    assert result.value == 2
    assert result.solution == (F(2), F(0), F(0))


def test_infeasible_and_unbounded_programs() -> None:
    assert lp.solve([F(1), F(1)], [[F(1), F(1)]], [F(-1)]).status == lp.INFEASIBLE
    assert not lp.feasible([[F(1), F(1)]], [F(-1)])
    assert lp.solve([F(-1), F(0)], [[F(1), F(-1)]], [F(0)]).status == lp.UNBOUNDED


def test_redundant_equalities_are_dropped_in_phase_one() -> None:
    result = lp.solve([F(1), F(0)], [[F(1), F(1)], [F(2), F(2)]], [F(1), F(2)])

    assert result.status == lp.OPTIMAL
    assert result.value == 0


def test_bland_rule_terminates_on_a_cycling_example() -> None:
    cost = [F(0), F(0), F(0), F(-3, 4), F(20), F(-1, 2), F(6)]
    a_eq = [
        [F(1), F(0), F(0), F(1, 4), F(-8), F(-1), F(9)],
        [F(0), F(1), F(0), F(1, 2), F(-12), F(-1, 2), F(3)],
        [F(0), F(0), F(1), F(0), F(0), F(1), F(0)],
    ]

    result = lp.solve(cost, a_eq, [F(0), F(0), F(1)])

    assert result.status == lp.OPTIMAL
    assert result.value == F(-5, 4)


def test_malformed_programs_raise() -> None:
    for call in (
        lambda: lp.solve([F(1)], [[F(1)], [F(1), F(2)]], [F(1), F(1)]),
        lambda: lp.solve([F(1)], [[F(1)]], [F(1), F(2)]),
        lambda: lp.solve([F(1), F(1)], [[F(1)]], [F(1)]),
    ):
        try:
            call()
        except lp.LPError:
            pass
        else:
            raise AssertionError("malformed LP should raise LPError")
