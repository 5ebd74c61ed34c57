from __future__ import annotations

import logging

from symdef.algebra.ideals import ArityError, MonomialIdeal, format_ideal, minimize
from symdef.parser import IdealSyntaxError, parse_ideal, parse_variables, tokenize


XYZ = ("x", "y", "z")


def _syntax_error(text: str, variables=XYZ) -> IdealSyntaxError:
    try:
        parse_ideal(text, variables)
    except IdealSyntaxError as exc:
        return exc
    raise AssertionError(f"{text!r} should not parse")


def test_parse_generators_and_intersections() -> None:
    assert parse_ideal("(x^2, x*y)", ("x", "y")) == minimize([(2, 0), (1, 1)], 2)
    assert parse_ideal(" ( x * x , y ^ 3 ) ", ("x", "y")) == minimize([(2, 0), (0, 3)], 2)
    assert parse_ideal("(x,y) & (y,z) & (x,z)", XYZ) == minimize([(1, 1, 0), (1, 0, 1), (0, 1, 1)], 3)
    assert parse_ideal("(x^2, y) & (y^3, z) & (z^4, x)", XYZ) == minimize(
        [(1, 1, 1), (2, 0, 1), (1, 3, 0), (0, 1, 4)], 3
    )


def test_format_and_parse_agree() -> None:
    for text, variables in (
        ("(x^2, x*y)", ("x", "y")),
        ("(x*y, x*z, y*z)", XYZ),
        ("(a^3*b, c)", ("a", "b", "c")),
    ):
        ideal = parse_ideal(text, variables)
        assert format_ideal(ideal, variables) == text
        assert parse_ideal(format_ideal(ideal, variables), variables) == ideal


def test_error_positions() -> None:
    cases = {
        "(x^0)": 3,
        "(x*w)": 3,
        "(x, y": 5,
        "(x) &": 5,
        "(2*x)": 1,
        "(x$y)": 2,
        "": 0,
        "(x^)": 3,
        "(x) y": 4,
    }
    for text, position in cases.items():
        exc = _syntax_error(text)
        assert exc.position == position, text
        assert str(exc).endswith(f"at position {position}")


def test_error_messages_name_the_problem() -> None:
    assert "Undeclared variable 'w'" in str(_syntax_error("(x*w)"))
    assert "only the monomial 1" in str(_syntax_error("(2*x)"))
    assert "Expected ')'" in str(_syntax_error("(x, y"))


def test_unit_ideal_parses_with_a_warning(caplog) -> None:
    with caplog.at_level(logging.WARNING, logger="symdef.parser"):
        ideal = parse_ideal("(1, x)", XYZ)

    assert ideal == MonomialIdeal.unit(3)
    assert "unit ideal" in caplog.text


def test_variable_declarations() -> None:
    assert parse_variables("x, y,z") == XYZ
    assert parse_variables("x1,x2") == ("x1", "x2")
    for bad in ("x,x", "x,,y", "2x"):
        try:
            parse_variables(bad)
        except ArityError:
            pass
        else:
            raise AssertionError(f"{bad!r} should be rejected")
    try:
        parse_ideal("(x)", ())
    except ArityError:
        pass
    else:
        raise AssertionError("no variables should fail")


def test_tokenize_positions() -> None:
    tokens = tokenize("(x^12, y)")

    assert [(t.kind, t.text, t.position) for t in tokens] == [
        ("op", "(", 0),
        ("name", "x", 1),
        ("op", "^", 2),
        ("number", "12", 3),
        ("op", ",", 5),
        ("name", "y", 7),
        ("op", ")", 8),
        ("end", "", 9),
    ]
