from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Mapping, Sequence

from symdef.algebra.decomposition import associated_primes, primary_decomposition, q_subset_p
from symdef.algebra.ideals import (
    ArityError,
    ExponentVector,
    MonomialIdeal,
    intersect_all,
    minimize,
    mu_quotient,
    power,
    pure_power_exponents,
    saturate_maximal,
)


LOGGER = logging.getLogger("symdef.symbolic_powers")

Pair = tuple[int, int]


class NotAMemberError(ValueError):
    pass


@dataclass(frozen=True)
class Height2Family:
    """I = intersection of (x_i^a_ij, x_j^a_ji) over the recorded pairs i < j."""

    arity: int
    exponents: tuple[tuple[Pair, Pair], ...]

    @staticmethod
    def from_mapping(arity: int, mapping: Mapping[Pair, Pair]) -> "Height2Family":
        rows = []
        for (i, j), (a_ij, a_ji) in mapping.items():
            if not 0 <= i < j < arity:
                raise ArityError(f"Pair {(i, j)} is not an ordered pair of variables below {arity}.")
            if a_ij < 1 or a_ji < 1:
                raise ValueError(f"Exponents for pair {(i, j)} must be positive, got {(a_ij, a_ji)}.")
            rows.append(((int(i), int(j)), (int(a_ij), int(a_ji))))
        if not rows:
            raise ValueError("A height-2 family needs at least one pair.")
        return Height2Family(arity=int(arity), exponents=tuple(sorted(rows)))

    def pairs(self) -> dict[Pair, Pair]:
        return dict(self.exponents)

    def exponent(self, i: int, j: int) -> int:
        """a_ij: the exponent of x_i in the component shared with x_j."""
        if i < j:
            return self.pairs()[(i, j)][0]
        return self.pairs()[(j, i)][1]

    def partners(self, i: int) -> list[int]:
        return [j if k == i else k for (k, j), _ in self.exponents if i in (k, j)]

    def components(self) -> list[MonomialIdeal]:
        ideals = []
        for (i, j), (a_ij, a_ji) in self.exponents:
            left = [0] * self.arity
            right = [0] * self.arity
            left[i] = a_ij
            right[j] = a_ji
            ideals.append(minimize([left, right], self.arity))
        return ideals

    def ideal(self) -> MonomialIdeal:
        return intersect_all(self.components(), self.arity)


def symbolic_power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    _require_positive(n)
    decomposition = primary_decomposition(ideal)
    parts = [power(q_subset_p(decomposition, prime), n) for prime in decomposition.max_supports]
    return intersect_all(parts, ideal.arity)


def sdef(ideal: MonomialIdeal, n: int) -> int:
    value = mu_quotient(symbolic_power(ideal, n), power(ideal, n))
    LOGGER.debug("sdef n=%d -> %d", n, value)
    return value


def has_dimension_one(ideal: MonomialIdeal) -> bool:
    """Every associated prime has height r - 1."""
    return all(len(prime) == ideal.arity - 1 for prime in associated_primes(ideal))


def saturation_symbolic_power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    """(I^n : m^inf); agrees with symbolic_power only when has_dimension_one(I)."""
    _require_positive(n)
    return saturate_maximal(power(ideal, n))


def height2_member(b: Sequence[int], family: Height2Family, n: int) -> bool:
    if len(b) != family.arity:
        raise ArityError(f"Exponent vector of length {len(b)} for arity {family.arity}.")
    return all(b[i] // a_ij + b[j] // a_ji >= n for (i, j), (a_ij, a_ji) in family.exponents)


def minimal_generator_mod_check(b: Sequence[int], family: Height2Family, n: int) -> bool:
    """Every coordinate whose decrement leaves I^(n) is a multiple of some a_ij."""
    if not height2_member(b, family, n):
        raise NotAMemberError(f"{tuple(b)} is not in the {n}-th symbolic power.")
    for i, value in enumerate(b):
        if value == 0:
            continue
        dropped = list(b)
        dropped[i] -= 1
        if height2_member(dropped, family, n):
            continue
        if not any(value % family.exponent(i, j) == 0 for j in family.partners(i)):
            return False
    return True


def height2_family_of(ideal: MonomialIdeal) -> Height2Family | None:
    """Recognise an intersection of two-variable pure-power components, else None."""
    decomposition = primary_decomposition(ideal)
    mapping: dict[Pair, Pair] = {}
    for component in decomposition.components:
        exponents = pure_power_exponents(component.ideal)
        if exponents is None or len(exponents) != 2 or len(component.support) != 2:
            return None
        i, j = sorted(exponents)
        mapping[(i, j)] = (exponents[i], exponents[j])
    if len(mapping) != len(decomposition.components):
        return None
    return Height2Family.from_mapping(ideal.arity, mapping)


def edge_generators_xyz(n: int) -> set[ExponentVector]:
    """Lattice points on the edges of n*SP(xy, xz, yz) minus n*NP, i.e. (n-t, t, t) and permutations."""
    _require_positive(n)
    points: set[ExponentVector] = set()
    for t in range((n + 1) // 2, n):
        points.update({(n - t, t, t), (t, n - t, t), (t, t, n - t)})
    return points


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}.")
