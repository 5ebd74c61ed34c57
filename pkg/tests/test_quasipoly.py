from __future__ import annotations

from fractions import Fraction as F

from symdef.algebra.quasipoly import (
    BelowOnsetError,
    NoFitError,
    QuasiPolynomial,
    degree,
    evaluate,
    fit,
    from_json,
    leading_coefficients,
    sample,
    to_json,
)


# n % 5 -> c with value (11n - c) / 5 for n >= 2
BRANCH_234 = {0: 10, 1: 6, 2: 7, 3: 3, 4: 4}


def _triangle_values(top: int) -> dict[int, int]:
    return {n: 3 * n // 2 - 2 if n % 2 == 0 else (3 * n - 3) // 2 for n in range(1, top + 1)}


def _family_234_values(top: int) -> dict[int, int]:
    return {n: 0 if n == 1 else (11 * n - BRANCH_234[n % 5]) // 5 for n in range(1, top + 1)}


def test_fit_recovers_parity_branches() -> None:
    fitted = fit(_triangle_values(16), max_period=3, max_degree=2)

    assert fitted.period == 2
    assert fitted.onset == 1
    assert fitted.branches == ((F(-2), F(3, 2)), (F(-3, 2), F(3, 2)))
    assert fitted.window_limited is False
    assert evaluate(fitted, 100) == 148
    assert degree(fitted) == 1
    assert leading_coefficients(fitted) == [F(3, 2), F(3, 2)]


def test_fit_of_constant_zero_sequence() -> None:
    fitted = fit({n: 0 for n in range(1, 7)}, max_period=1, max_degree=1)

    assert fitted.period == 1
    assert fitted.branches == ((F(0),),)
    assert degree(fitted) == 0
    assert leading_coefficients(fitted) == [F(0)]


def test_fit_finds_late_onset_and_five_branches() -> None:
    fitted = fit(_family_234_values(30), max_period=6, max_degree=1)

    assert fitted.period == 5
    assert fitted.onset == 2
    for r, c in BRANCH_234.items():
        assert fitted.branches[r] == (F(-c, 5), F(11, 5))
    assert leading_coefficients(fitted) == [F(11, 5)] * 5
    try:
        evaluate(fitted, 1)
    except BelowOnsetError:
        pass
    else:
        raise AssertionError("n below the onset should fail")


def test_cubic_growth_has_no_linear_fit() -> None:
    try:
        fit({n: n**3 for n in range(1, 9)}, max_period=2, max_degree=1)
    except NoFitError as exc:
        assert "period <= 2" in str(exc)
    else:
        raise AssertionError("cubes should not fit a linear quasi-polynomial")


def test_fit_rejects_short_or_gapped_input() -> None:
    for values, period, deg in (
        ({n: n for n in range(1, 5)}, 2, 1),
        ({n: n for n in range(2, 12)}, 1, 1),
        ({1: 0, 2: 1, 4: 3, 5: 4, 6: 5}, 1, 1),
        ({n: n for n in range(1, 12)}, 0, 1),
    ):
        try:
            fit(values, period, deg)
        except ValueError:
            pass
        else:
            raise AssertionError(f"fit should reject {values}")


def test_short_tail_is_flagged_window_limited() -> None:
    values = {1: 0, 2: 0, 3: 5, 4: 0, 5: 9, 6: 6, 7: 7, 8: 8}

    fitted = fit(values, max_period=2, max_degree=1)

    assert (fitted.period, fitted.onset) == (1, 6)
    assert fitted.branches == ((F(0), F(1)),)
    assert fitted.window_limited is True

    settled = fit({1: 5, **{n: n for n in range(2, 10)}}, max_period=2, max_degree=1)
    assert (settled.period, settled.onset, settled.window_limited) == (1, 2, False)


def test_json_payload_and_round_trip() -> None:
    fitted = fit(_triangle_values(16), max_period=3, max_degree=2)

    payload = to_json(fitted)

    assert payload == {
        "schema_version": "1",
        "period": 2,
        "onset": 1,
        "degree": 1,
        "branches": [["-2", "3/2"], ["-3/2", "3/2"]],
        "leading_coefficients": ["3/2", "3/2"],
        "window_limited": False,
    }
    assert from_json(payload) == fitted
    try:
        from_json({**payload, "schema_version": "0"})
    except ValueError:
        pass
    else:
        raise AssertionError("unknown schema version should fail")


def test_sample_follows_the_branches() -> None:
    q = QuasiPolynomial(period=2, onset=3, branches=((F(0), F(1, 2)), (F(1, 2), F(1, 2))))

    assert sample(q, 3, 6) == {3: F(2), 4: F(2), 5: F(3), 6: F(3)}


def test_quasi_polynomial_validates_shape() -> None:
    for kwargs in (
        {"period": 0, "onset": 1, "branches": ()},
        {"period": 2, "onset": 1, "branches": ((F(1),),)},
        {"period": 1, "onset": -1, "branches": ((F(1),),)},
    ):
        try:
            QuasiPolynomial(**kwargs)
        except ValueError:
            pass
        else:
            raise AssertionError(f"{kwargs} should be rejected")
