from __future__ import annotations

from dataclasses import dataclass
import logging
import re
from typing import Sequence

from symdef.algebra.ideals import ArityError, MonomialIdeal, intersect_all, minimize


LOGGER = logging.getLogger("symdef.parser")

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<number>\d+)|(?P<op>[(),*^&]))")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class IdealSyntaxError(ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def parse_variables(text: str) -> tuple[str, ...]:
    names = tuple(part.strip() for part in text.split(","))
    for name in names:
        if not _NAME_RE.fullmatch(name):
            raise ArityError(f"Invalid variable name {name!r}.")
    if len(set(names)) != len(names):
        raise ArityError(f"Duplicate variable names in {text!r}.")
    return names


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    position = 0
    while position < len(text):
        if text[position:].strip() == "":
            break
        match = _TOKEN_RE.match(text, position)
        if match is None:
            offset = position + len(text[position:]) - len(text[position:].lstrip())
            raise IdealSyntaxError(f"Unexpected character {text[offset]!r}", offset)
        kind = match.lastgroup or "op"
        tokens.append(Token(kind=kind, text=match.group(kind), position=match.start(kind)))
        position = match.end()
    tokens.append(Token(kind="end", text="", position=len(text)))
    return tokens


class _Parser:
    """ideal := atom ('&' atom)* ; atom := '(' monomial (',' monomial)* ')'
    monomial := '1' | factor ('*' factor)* ; factor := var ('^' posint)?
    """

    def __init__(self, text: str, variables: Sequence[str]) -> None:
        self.tokens = tokenize(text)
        self.index = 0
        self.variables = {name: i for i, name in enumerate(variables)}
        self.arity = len(variables)

    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self, text: str) -> Token:
        token = self.peek()
        if token.text != text or token.kind == "end":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise IdealSyntaxError(f"Expected {text!r}, found {found}", token.position)
        self.index += 1
        return token

    def ideal(self) -> MonomialIdeal:
        atoms = [self.atom()]
        while self.peek().text == "&":
            self.index += 1
            atoms.append(self.atom())
        token = self.peek()
        if token.kind != "end":
            raise IdealSyntaxError(f"Unexpected {token.text!r}", token.position)
        return intersect_all(atoms, self.arity)

    def atom(self) -> MonomialIdeal:
        self.take("(")
        gens = [self.monomial()]
        while self.peek().text == ",":
            self.index += 1
            gens.append(self.monomial())
        self.take(")")
        return minimize(gens, self.arity)

    def monomial(self) -> list[int]:
        exponents = [0] * self.arity
        token = self.peek()
        if token.kind == "number":
            if token.text != "1":
                raise IdealSyntaxError(f"Coefficient {token.text!r} is not allowed; only the monomial 1", token.position)
            self.index += 1
            return exponents
        self.factor(exponents)
        while self.peek().text == "*":
            self.index += 1
            self.factor(exponents)
        return exponents

    def factor(self, exponents: list[int]) -> None:
        token = self.peek()
        if token.kind != "name":
            found = "end of input" if token.kind == "end" else repr(token.text)
            raise IdealSyntaxError(f"Expected a variable, found {found}", token.position)
        if token.text not in self.variables:
            raise IdealSyntaxError(f"Undeclared variable {token.text!r}", token.position)
        self.index += 1
        power = 1
        if self.peek().text == "^":
            self.index += 1
            number = self.peek()
            if number.kind != "number":
                raise IdealSyntaxError("Expected an exponent", number.position)
            power = int(number.text)
            if power < 1:
                raise IdealSyntaxError("Exponent must be a positive integer", number.position)
            self.index += 1
        exponents[self.variables[token.text]] += power


def parse_ideal(text: str, variables: Sequence[str]) -> MonomialIdeal:
    if not variables:
        raise ArityError("At least one variable must be declared.")
    result = _Parser(text, variables).ideal()
    if result.is_unit:
        LOGGER.warning("%r parses to the unit ideal", text)
    elif result.is_zero:
        LOGGER.warning("%r parses to the zero ideal", text)
    return result
