from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import functools
import logging
import math
from typing import Any, Iterable, Sequence

import numpy as np

from symdef.algebra import lp
from symdef.algebra.decomposition import DegenerateIdealError, has_embedded_primes, primary_decomposition, q_subset_p
from symdef.algebra.ideals import ArityError, ExponentVector, MonomialIdeal, member, minimize, mu_quotient, pure_power_exponents
from symdef.algebra.symbolic_powers import symbolic_power


LOGGER = logging.getLogger("symdef.polyhedra")
HREP_CACHE_SIZE = 256

RationalPoint = tuple[Fraction, ...]


@dataclass(frozen=True)
class VPolyhedron:
    """conv(points) + the nonnegative orthant."""

    arity: int
    points: tuple[RationalPoint, ...]


@dataclass(frozen=True)
class Inequality:
    """coeffs . u >= rhs"""

    coeffs: tuple[int, ...]
    rhs: int

    def holds(self, q: Sequence[Fraction | int], scale: int = 1) -> bool:
        return sum(c * v for c, v in zip(self.coeffs, q)) >= scale * self.rhs

    def render(self, variables: Sequence[str]) -> str:
        terms = []
        for coeff, name in zip(self.coeffs, variables):
            if coeff:
                terms.append(name if coeff == 1 else f"{coeff}{name}")
        return f"{' + '.join(terms)} >= {self.rhs}"


@dataclass(frozen=True)
class HPolyhedron:
    arity: int
    rows: tuple[Inequality, ...]

    def member(self, q: Sequence[Fraction | int], scale: int = 1) -> bool:
        if len(q) != self.arity:
            raise ArityError(f"Point of length {len(q)} for arity {self.arity}.")
        if any(v < 0 for v in q):
            return False
        return all(row.holds(q, scale) for row in self.rows)

    def to_json(self) -> dict[str, Any]:
        return {
            "arity": self.arity,
            "rows": [{"coeffs": list(row.coeffs), "rhs": row.rhs} for row in self.rows],
            "nonneg": True,
        }


@dataclass(frozen=True)
class SymbolicPolyhedron:
    arity: int
    factors: tuple[VPolyhedron, ...]


def as_point(values: Iterable[Fraction | int | str]) -> RationalPoint:
    return tuple(Fraction(v) for v in values)


def np_of(ideal: MonomialIdeal) -> VPolyhedron:
    if ideal.is_zero:
        raise DegenerateIdealError("The zero ideal has no Newton polyhedron.")
    return VPolyhedron(arity=ideal.arity, points=tuple(as_point(gen) for gen in ideal.generators))


def sp_of(ideal: MonomialIdeal) -> SymbolicPolyhedron:
    decomposition = primary_decomposition(ideal)
    factors = tuple(np_of(q_subset_p(decomposition, prime)) for prime in decomposition.max_supports)
    return SymbolicPolyhedron(arity=ideal.arity, factors=factors)


def v_member(poly: VPolyhedron, q: Sequence[Fraction | int], scale: int = 1) -> bool:
    """Exact LP test of q in scale * poly."""
    point = _check_point(q, poly.arity)
    return _in_hull(poly.points, point, scale)


def vertices(poly: VPolyhedron) -> VPolyhedron:
    """Drop generating points that lie in the polyhedron spanned by the others."""
    kept = sorted(set(poly.points))
    for point in list(kept):
        others = [other for other in kept if other != point]
        if others and _in_hull(others, point, 1):
            kept.remove(point)
    LOGGER.debug("vertex pruning: %d points -> %d vertices", len(poly.points), len(kept))
    return VPolyhedron(arity=poly.arity, points=tuple(kept))


@functools.lru_cache(maxsize=HREP_CACHE_SIZE)
def hrep(poly: VPolyhedron) -> HPolyhedron:
    """Fourier-Motzkin elimination of the convex multipliers, then LP pruning."""
    points = vertices(poly).points
    arity = poly.arity
    anchor = points[-1]
    free = points[:-1]
    # u_j - sum_t (p_t[j] - anchor[j]) * lam_t - anchor[j] >= 0, lam_t >= 0, 1 - sum lam_t >= 0
    system: list[tuple[int, ...]] = []
    for j in range(arity):
        unit = [Fraction(1 if i == j else 0) for i in range(arity)]
        lams = [-(p[j] - anchor[j]) for p in free]
        system.append(_normalize([*unit, *lams, -anchor[j]]))
    for t in range(len(free)):
        system.append(_normalize([Fraction(0)] * arity + [Fraction(1 if s == t else 0) for s in range(len(free))] + [Fraction(0)]))
    if free:
        system.append(_normalize([Fraction(0)] * arity + [Fraction(-1)] * len(free) + [Fraction(1)]))
    rows: dict[tuple[int, ...], frozenset[int]] = {}
    for index, row in enumerate(system):
        _keep(rows, row, frozenset({index}))
    for eliminated, column in enumerate(range(arity + len(free) - 1, arity - 1, -1), start=1):
        rows = _eliminate(rows, column, eliminated)
    inequalities = []
    for row in rows:
        coeffs, constant = row[:arity], row[-1]
        if any(coeffs) and -constant > 0:
            inequalities.append(Inequality(coeffs=tuple(coeffs), rhs=-constant))
    return HPolyhedron(arity=arity, rows=_irredundant(inequalities, arity))


def sp_hrep(poly: SymbolicPolyhedron) -> HPolyhedron:
    rows = {row for factor in poly.factors for row in hrep(factor).rows}
    return HPolyhedron(arity=poly.arity, rows=_irredundant(rows, poly.arity))


def h_member(poly: HPolyhedron, q: Sequence[Fraction | int], scale: int = 1) -> bool:
    return poly.member(q, scale)


def integral_closure(ideal: MonomialIdeal) -> MonomialIdeal:
    return power_closure(ideal, 1)


def power_closure(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """closure(I^n), read off the lattice points of n * NP(I)."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}.")
    if ideal.is_zero:
        raise DegenerateIdealError("The zero ideal has no integral closure here.")
    if ideal.is_unit:
        return ideal
    box = tuple(n * int(v) for v in ideal.matrix().max(axis=0))
    points = _minimal_lattice_points(hrep(np_of(ideal)).rows, ideal.arity, n, box)
    return minimize(points, ideal.arity)


def symbolic_closure(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """closure(I^(n)).

    The lattice points of n * SP(I) generate an ideal containing closure(I^(n)).
    When each of its generators already lies in NP(I^(n)) the two agree and no
    H-representation of NP(I^(n)) is needed.
    """
    symbolic = symbolic_power(ideal, n)
    lattice = minimize(minimal_lattice_points_sp(ideal, n), ideal.arity)
    newton = np_of(symbolic)
    if all(member(gen, symbolic) or v_member(newton, gen) for gen in lattice.generators):
        return lattice
    LOGGER.debug("n=%d: lattice points of n*SP leave NP(I^(n)); closing I^(n) directly", n)
    return integral_closure(symbolic)


def sp_member(poly: SymbolicPolyhedron, q: Sequence[Fraction | int], n: int, exact_lp: bool = False) -> bool:
    point = _check_point(q, poly.arity)
    if exact_lp:
        return all(_in_hull(factor.points, point, n) for factor in poly.factors)
    return all(hrep(factor).member(point, n) for factor in poly.factors)


def minimal_lattice_points_sp(ideal: MonomialIdeal, n: int, margin: int = 0) -> list[ExponentVector]:
    """Minimal lattice points of n * SP(I), in graded lex order.

    They generate the intersection of closure(Q^n) over the maximal-support
    components Q. That ideal contains closure(I^(n)) and can be strictly larger.
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}.")
    poly = sp_of(ideal)
    bound = [0] * ideal.arity
    for factor in poly.factors:
        for point in factor.points:
            bound = [max(b, int(math.ceil(v))) for b, v in zip(bound, point)]
    box = tuple(n * b + margin for b in bound)
    rows = [row for factor in poly.factors for row in hrep(factor).rows]
    points = _minimal_lattice_points(rows, ideal.arity, n, box)
    return sorted(points, key=lambda b: (sum(b), tuple(-e for e in b)))


def isdef(ideal: MonomialIdeal, n: int) -> int:
    """Minimal generator count of closure(I^(n)) / closure(I^n)."""
    value = mu_quotient(symbolic_closure(ideal, n), power_closure(ideal, n))
    LOGGER.debug("isdef n=%d -> %d", n, value)
    return value


def lattice_defect(ideal: MonomialIdeal, n: int) -> int:
    """Minimal lattice points of n * SP(I) outside n * NP(I).

    Equals isdef whenever those points generate closure(I^(n)).
    """
    newton = hrep(np_of(ideal))
    return sum(1 for b in minimal_lattice_points_sp(ideal, n) if not newton.member(b, n))


def pure_power_sp_rows(ideal: MonomialIdeal) -> HPolyhedron:
    """Rows sum_i u_i / a_i >= 1, one per pure-power primary component."""
    if has_embedded_primes(ideal):
        raise ValueError("Pure-power rows need an ideal without embedded primes.")
    rows = set()
    for component in primary_decomposition(ideal).components:
        exponents = pure_power_exponents(component.ideal)
        if exponents is None:
            raise ValueError(f"Component over {sorted(component.support)} is not generated by pure powers.")
        coeffs = [Fraction(1, exponents[i]) if i in exponents else Fraction(0) for i in range(ideal.arity)]
        row = _normalize([*coeffs, Fraction(-1)])
        rows.add(Inequality(coeffs=row[:-1], rhs=-row[-1]))
    return HPolyhedron(arity=ideal.arity, rows=_sorted_rows(rows))


def _in_hull(points: Sequence[RationalPoint], q: RationalPoint, scale: int) -> bool:
    # sum lam_g * scale * g_j + s_j = q_j ; sum lam_g = 1
    arity = len(q)
    count = len(points)
    a_eq = []
    for j in range(arity):
        slack = [Fraction(1 if i == j else 0) for i in range(arity)]
        a_eq.append([scale * p[j] for p in points] + slack)
    a_eq.append([Fraction(1)] * count + [Fraction(0)] * arity)
    return lp.feasible(a_eq, [*q, Fraction(1)])


def _eliminate(
    rows: dict[tuple[int, ...], frozenset[int]], column: int, eliminated: int
) -> dict[tuple[int, ...], frozenset[int]]:
    """One elimination step; rows built from more than eliminated + 1 originals are redundant."""
    positive = [(row, origin) for row, origin in rows.items() if row[column] > 0]
    negative = [(row, origin) for row, origin in rows.items() if row[column] < 0]
    result: dict[tuple[int, ...], frozenset[int]] = {}
    for row, origin in rows.items():
        if row[column] == 0:
            _keep(result, _drop(row, column), origin)
    for pos, pos_origin in positive:
        for neg, neg_origin in negative:
            origin = pos_origin | neg_origin
            if len(origin) > eliminated + 1:
                continue
            combined = [pos[k] * -neg[column] + neg[k] * pos[column] for k in range(len(pos))]
            _keep(result, _drop(_normalize(combined), column), origin)
    trimmed: dict[tuple[int, ...], frozenset[int]] = {}
    for row, origin in result.items():
        if not any(row[:-1]):
            if row[-1] < 0:
                raise lp.LPError("Elimination produced an infeasible constant row.")
            continue
        trimmed[row] = origin
    LOGGER.debug("eliminated column %d: %d rows", column, len(trimmed))
    return trimmed


def _keep(rows: dict[tuple[int, ...], frozenset[int]], row: tuple[int, ...], origin: frozenset[int]) -> None:
    current = rows.get(row)
    if current is None or len(origin) < len(current):
        rows[row] = origin


def _drop(row: Sequence[int], column: int) -> tuple[int, ...]:
    return tuple(row[:column]) + tuple(row[column + 1 :])


def _normalize(row: Sequence[Fraction | int]) -> tuple[int, ...]:
    values = [Fraction(v) for v in row]
    denominator = math.lcm(*(v.denominator for v in values))
    integers = [int(v * denominator) for v in values]
    divisor = math.gcd(*integers)
    if divisor > 1:
        integers = [v // divisor for v in integers]
    return tuple(integers)


def _irredundant(rows: Iterable[Inequality], arity: int) -> tuple[Inequality, ...]:
    kept = _sorted_rows(rows)
    for row in list(reversed(kept)):
        others = [other for other in kept if other != row]
        if _implied(row, others, arity):
            kept.remove(row)
    return tuple(kept)


def _implied(row: Inequality, others: Sequence[Inequality], arity: int) -> bool:
    """min row.coeffs . u over {others, u >= 0} reaches row.rhs."""
    if not others:
        return row.rhs <= 0
    a_eq = []
    for k, other in enumerate(others):
        surplus = [Fraction(-1 if i == k else 0) for i in range(len(others))]
        a_eq.append([Fraction(c) for c in other.coeffs] + surplus)
    cost = [Fraction(c) for c in row.coeffs] + [Fraction(0)] * len(others)
    result = lp.solve(cost, a_eq, [Fraction(other.rhs) for other in others])
    if result.status != lp.OPTIMAL:
        raise lp.LPError(f"Redundancy check ended {result.status}.")
    return result.value >= row.rhs


def _sorted_rows(rows: Iterable[Inequality]) -> tuple[Inequality, ...]:
    return tuple(sorted(set(rows), key=lambda row: (row.coeffs, row.rhs), reverse=True))


def _minimal_lattice_points(
    rows: Sequence[Inequality], arity: int, scale: int, box: Sequence[int]
) -> set[ExponentVector]:
    """Lattice points of {rows, u >= 0} in the box whose every decrement leaves the set.

    Each column over the first r-1 coordinates contributes at most its lowest
    admissible last coordinate, which is the only candidate there.
    """
    last = arity - 1
    if last:
        prefixes = np.indices(tuple(b + 1 for b in box[:last]), dtype=np.int64).reshape(last, -1).T
    else:
        prefixes = np.zeros((1, 0), dtype=np.int64)
    heads = np.array([row.coeffs[:last] for row in rows], dtype=np.int64).reshape(len(rows), last)
    tails = np.array([row.coeffs[last] for row in rows], dtype=np.int64)
    targets = np.array([scale * row.rhs for row in rows], dtype=np.int64)

    dots = prefixes @ heads.T
    needed = targets - dots
    lifting = tails > 0
    lowest = np.zeros(len(prefixes), dtype=np.int64)
    if lifting.any():
        lowest = np.maximum(lowest, (-(-needed[:, lifting] // tails[lifting])).max(axis=1))
    admissible = np.all(needed[:, ~lifting] <= 0, axis=1) & (lowest <= box[last])

    lifted = tails * lowest[:, None]
    minimal = admissible.copy()
    for i in range(last):
        lowered = dots - heads[:, i] + lifted
        stays = np.all(lowered >= targets, axis=1) & (prefixes[:, i] > 0)
        minimal &= ~stays
    found = np.column_stack([prefixes, lowest])[minimal]
    return {tuple(int(e) for e in row) for row in found.tolist()}


def _check_point(q: Sequence[Fraction | int], arity: int) -> RationalPoint:
    if len(q) != arity:
        raise ArityError(f"Point of length {len(q)} for arity {arity}.")
    return as_point(q)
