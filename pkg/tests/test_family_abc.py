from __future__ import annotations

from fractions import Fraction
import functools
import itertools
import random

from symdef.algebra.family_abc import (
    FamilyParams,
    VertexP,
    face_generators,
    family_ideal,
    family_sdef,
    height2_family,
    in_np,
    leading_coefficient,
    np_rows,
    off_face_generator,
    quasi_period,
    sp_rows,
    vertex_p,
)
from symdef.algebra.ideals import intersect_all, member, minimize, power
from symdef.algebra.polyhedra import isdef
from symdef.algebra.quasipoly import degree, fit, leading_coefficients
from symdef.algebra.symbolic_powers import sdef, symbolic_power


P234 = FamilyParams(2, 3, 4)
# n % 5 -> c with sdef(n) = (11n - c) / 5 for n >= 2
BRANCH_234 = {0: 10, 1: 6, 2: 7, 3: 3, 4: 4}


@functools.lru_cache(maxsize=None)
def _general_sdef(params: FamilyParams, n: int) -> int:
    return sdef(family_ideal(params), n)


def test_family_ideal_generators() -> None:
    assert family_ideal(FamilyParams(1, 1, 1)) == minimize([(1, 1, 0), (1, 0, 1), (0, 1, 1)], 3)
    assert family_ideal(P234).generators == ((0, 1, 4), (1, 1, 1), (1, 3, 0), (2, 0, 1))
    for params in (FamilyParams(2, 2, 2), P234, FamilyParams(3, 1, 2)):
        assert intersect_all(height2_family(params).components(), 3) == family_ideal(params)


def test_parameters_must_be_positive() -> None:
    try:
        FamilyParams(0, 1, 1)
    except ValueError:
        pass
    else:
        raise AssertionError("a = 0 should fail")


def test_vertex_p_values_and_row_equalities() -> None:
    assert vertex_p(FamilyParams(1, 1, 1)) == VertexP(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert vertex_p(P234) == VertexP(Fraction(4, 5), Fraction(3, 5), Fraction(4, 5))
    rng = random.Random(6)
    for _ in range(50):
        a, b, c = (rng.randint(1, 6) for _ in range(3))
        alpha, beta, gamma = vertex_p(FamilyParams(a, b, c)).as_tuple()
        assert alpha + a * beta == a
        assert beta + b * gamma == b
        assert c * alpha + gamma == c
        assert all(0 < v <= max(a, b, c) for v in (alpha, beta, gamma))


def test_face_generator_edge_cases() -> None:
    assert face_generators(FamilyParams(1, 1, 1), 2) == {(1, 1, 1)}
    assert face_generators(P234, 1) == set()
    assert face_generators(P234, 3) == {(4, 1, 3), (2, 2, 4), (3, 6, 1), (3, 3, 2), (1, 3, 8)}


def test_off_face_generator_for_234() -> None:
    assert off_face_generator(P234, 3) == (3, 2, 3)
    assert off_face_generator(P234, 6) == (5, 4, 5)
    assert off_face_generator(P234, 8) == (7, 5, 7)
    assert off_face_generator(P234, 11) == (9, 7, 9)
    for n in (1, 2, 4, 5, 7, 9, 10):
        assert off_face_generator(P234, n) is None, n
    for n in range(1, 31):
        found = off_face_generator(P234, n)
        assert (found is not None) == (n % 5 == 3 or (n % 5 == 1 and n > 1)), n


def test_face_candidates_already_in_the_ordinary_power_are_dropped() -> None:
    params = FamilyParams(1, 1, 2)

    assert face_generators(params, 2) == {(1, 1, 2)}
    assert family_sdef(params, 2) == 1


def test_off_face_generator_lies_strictly_between_face_levels() -> None:
    cases = [FamilyParams(*abc) for abc in itertools.product((2, 3), repeat=3)] + [P234]
    for params in cases:
        a, b, c = params.as_tuple()
        for n in range(1, 11):
            found = off_face_generator(params, n)
            if found is None:
                continue
            u, v, w = found
            for level in (Fraction(u, a) + v, Fraction(v, b) + w, Fraction(w, c) + u):
                assert n < level < n + 1
            assert member(found, symbolic_power(family_ideal(params), n))
            assert not member(found, power(family_ideal(params), n))


def test_family_sdef_examples() -> None:
    assert family_sdef(FamilyParams(1, 1, 1), 4) == 4
    assert family_sdef(FamilyParams(1, 1, 1), 7) == 9
    assert [family_sdef(P234, n) for n in (1, 2, 3, 5)] == [0, 3, 6, 9]


def test_period_and_leading_coefficient() -> None:
    assert (quasi_period(FamilyParams(1, 1, 1)), leading_coefficient(FamilyParams(1, 1, 1))) == (2, Fraction(3, 2))
    assert (quasi_period(P234), leading_coefficient(P234)) == (25, Fraction(11, 5))
    assert (quasi_period(FamilyParams(1, 1, 2)), leading_coefficient(FamilyParams(1, 1, 2))) == (3, Fraction(5, 3))


def test_closed_form_matches_general_engine_on_small_cube() -> None:
    for a, b, c in itertools.product((1, 2, 3), repeat=3):
        params = FamilyParams(a, b, c)
        for n in range(1, 13):
            assert family_sdef(params, n) == _general_sdef(params, n), (params, n)


def test_general_engine_reproduces_five_branch_formula() -> None:
    for n in range(1, 21):
        expected = 0 if n == 1 else (11 * n - BRANCH_234[n % 5]) // 5
        assert _general_sdef(P234, n) == expected, n
        assert family_sdef(P234, n) == expected, n


def test_jump_over_a_quasi_period_is_the_leading_coefficient_times_the_period() -> None:
    for params in (FamilyParams(1, 1, 1), FamilyParams(1, 1, 2), FamilyParams(2, 1, 2), P234):
        period = quasi_period(params)
        expected = leading_coefficient(params) * period
        for n in range(period + 2, 4 * period + 2):
            assert family_sdef(params, n + period) - family_sdef(params, n) == expected, (params, n)


def test_fits_of_general_engine_data_have_the_closed_form_slope() -> None:
    for params in (FamilyParams(1, 1, 1), FamilyParams(1, 1, 2), P234):
        values = {n: _general_sdef(params, n) for n in range(1, 31)}

        fitted = fit(values, max_period=6, max_degree=1)

        assert degree(fitted) <= 1, params
        assert leading_coefficients(fitted) == [leading_coefficient(params)] * fitted.period, params
        assert quasi_period(params) % fitted.period == 0, params


def test_isdef_equals_sdef_for_the_family() -> None:
    for params in (FamilyParams(1, 1, 1), FamilyParams(2, 2, 2), P234, FamilyParams(1, 1, 2)):
        for n in range(1, 9):
            assert isdef(family_ideal(params), n) == family_sdef(params, n), (params, n)


def test_row_systems_and_np_membership() -> None:
    rows = {(row.coeffs, row.rhs) for row in np_rows(P234).rows}
    assert rows == {
        ((1, 2, 0), 2),
        ((0, 1, 3), 3),
        ((4, 0, 1), 4),
        ((3, 3, 1), 7),
        ((6, 1, 2), 9),
        ((1, 1, 2), 4),
    }
    assert {(row.coeffs, row.rhs) for row in sp_rows(P234).rows} == {((1, 2, 0), 2), ((0, 1, 3), 3), ((4, 0, 1), 4)}
    try:
        np_rows(FamilyParams(1, 1, 1))
    except ValueError:
        pass
    else:
        raise AssertionError("closed-form Newton rows need a, b, c >= 2")
    assert not in_np(P234, (3, 2, 3), 3)
    for n in (1, 2, 3):
        for gen in power(family_ideal(P234), n).generators:
            assert in_np(P234, gen, n)
