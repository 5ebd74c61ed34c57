"""Closed forms for the three-variable family (x^a, y) ∩ (y^b, z) ∩ (z^c, x)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from symdef.algebra.ideals import ExponentVector, MonomialIdeal, minimize
from symdef.algebra.polyhedra import HPolyhedron, Inequality, hrep, np_of
from symdef.algebra.symbolic_powers import Height2Family, height2_member, sdef


@dataclass(frozen=True)
class FamilyParams:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"Family parameter {name} must be a positive integer, got {value!r}.")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)


@dataclass(frozen=True)
class VertexP:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma)


def family_ideal(p: FamilyParams) -> MonomialIdeal:
    return minimize([(1, 1, 1), (p.a, 0, 1), (1, p.b, 0), (0, 1, p.c)], 3)


def height2_family(p: FamilyParams) -> Height2Family:
    # (z^c, x) is the pair (0, 2) with x exponent 1 and z exponent c
    return Height2Family.from_mapping(3, {(0, 1): (p.a, 1), (1, 2): (p.b, 1), (0, 2): (1, p.c)})


def vertex_p(p: FamilyParams) -> VertexP:
    a, b, c = p.as_tuple()
    denominator = a * b * c + 1
    return VertexP(
        alpha=Fraction(a * (b * c - b + 1), denominator),
        beta=Fraction(b * (a * c - c + 1), denominator),
        gamma=Fraction(c * (a * b - a + 1), denominator),
    )


def face_generators(p: FamilyParams, n: int) -> set[ExponentVector]:
    _require_positive(n)
    a, b, c = p.as_tuple()
    found: set[ExponentVector] = set()
    for v in range(1, n):
        found.add((a * n - a * v, v, max(n - v // b, c * n + c * a * v - c * a * n)))
    for w in range(1, n):
        found.add((max(n - w // c, a * n - a * b * n + a * b * w), b * n - b * w, w))
    for u in range(1, n):
        found.add((u, max(n - u // a, b * n - b * c * n + b * c * u), c * n - c * u))
    # with a parameter equal to 1 some candidates already sit in I^n
    return {point for point in found if _is_quotient_generator(p, point, n)}


def off_face_generator(p: FamilyParams, n: int) -> ExponentVector | None:
    """R_n = ceil(n * P) when it is a minimal generator of I^(n) off every face and outside I^n."""
    _require_positive(n)
    a, b, c = p.as_tuple()
    vertex = vertex_p(p)
    point = tuple(math.ceil(n * coordinate) for coordinate in vertex.as_tuple())
    u, v, w = point
    if u % a == 0 or v % b == 0 or w % c == 0:
        return None
    if Fraction(u, a) + v == n or Fraction(v, b) + w == n or Fraction(w, c) + u == n:
        return None
    return point if _is_quotient_generator(p, point, n) else None


def family_sdef(p: FamilyParams, n: int) -> int:
    _require_positive(n)
    if n == 1:
        return sdef(family_ideal(p), 1)
    return len(face_generators(p, n)) + (off_face_generator(p, n) is not None)


def quasi_period(p: FamilyParams) -> int:
    return p.a * p.b * p.c + 1


def leading_coefficient(p: FamilyParams) -> Fraction:
    return sum(vertex_p(p).as_tuple(), Fraction(0))


def np_rows(p: FamilyParams) -> HPolyhedron:
    """The six closed-form Newton polyhedron rows; they describe NP(I) once a, b, c >= 2."""
    a, b, c = p.as_tuple()
    if min(a, b, c) < 2:
        raise ValueError("The closed-form Newton rows need a, b, c >= 2; use polyhedra.hrep instead.")
    rows = [
        ((1, a, 0), a),
        ((0, 1, b), b),
        ((c, 0, 1), c),
        ((c - 1, (a - 1) * (c - 1), 1), (a - 1) * (c - 1) + c),
        (((b - 1) * (c - 1), 1, b - 1), (b - 1) * (c - 1) + b),
        ((1, a - 1, (a - 1) * (b - 1)), (a - 1) * (b - 1) + a),
    ]
    return _polyhedron(rows)


def sp_rows(p: FamilyParams) -> HPolyhedron:
    a, b, c = p.as_tuple()
    return _polyhedron([((1, a, 0), a), ((0, 1, b), b), ((c, 0, 1), c)])


def in_np(p: FamilyParams, point: ExponentVector, n: int) -> bool:
    """Exact test of point in n * NP(I); for this family that is membership in I^n."""
    return hrep(np_of(family_ideal(p))).member(point, n)


def _polyhedron(rows: list[tuple[tuple[int, int, int], int]]) -> HPolyhedron:
    normalized = set()
    for coeffs, rhs in rows:
        divisor = math.gcd(*coeffs, rhs)
        normalized.add(Inequality(coeffs=tuple(v // divisor for v in coeffs), rhs=rhs // divisor))
    ordered = sorted(normalized, key=lambda row: (row.coeffs, row.rhs), reverse=True)
    return HPolyhedron(arity=3, rows=tuple(ordered))


def _is_quotient_generator(p: FamilyParams, point: ExponentVector, n: int) -> bool:
    family = height2_family(p)
    if not height2_member(point, family, n):
        return False
    for i in range(3):
        lowered = list(point)
        lowered[i] -= 1
        if lowered[i] >= 0 and height2_member(lowered, family, n):
            return False
    return not in_np(p, point, n)


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}.")
