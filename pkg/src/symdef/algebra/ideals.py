from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


EXPONENT_LIMIT = 2**61
INFINITE = float("inf")

ExponentVector = tuple[int, ...]


class ArityError(ValueError):
    pass


class ExponentOverflowError(OverflowError):
    pass


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal stored as its antichain of minimal exponent vectors.

    Build instances through `minimize` (or the `unit`/`zero`/`maximal`
    constructors); the generator tuple is kept sorted so equality of two
    ideals is generator-set equality.
    """

    arity: int
    generators: tuple[ExponentVector, ...]

    @staticmethod
    def unit(arity: int) -> "MonomialIdeal":
        return MonomialIdeal(arity=_check_arity(arity), generators=((0,) * arity,))

    @staticmethod
    def zero(arity: int) -> "MonomialIdeal":
        return MonomialIdeal(arity=_check_arity(arity), generators=())

    @staticmethod
    def maximal(arity: int) -> "MonomialIdeal":
        return minimize((unit_vector(arity, i) for i in range(arity)), arity)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.arity,)

    @property
    def is_proper_nonzero(self) -> bool:
        return not self.is_zero and not self.is_unit

    def matrix(self) -> np.ndarray:
        return _matrix(self.generators, self.arity)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def unit_vector(arity: int, index: int) -> ExponentVector:
    return tuple(1 if i == index else 0 for i in range(arity))


def minimize(gens: Iterable[Sequence[int]], arity: int) -> MonomialIdeal:
    rows = [tuple(int(e) for e in gen) for gen in gens]
    _check_arity(arity)
    for row in rows:
        if len(row) != arity:
            raise ArityError(f"Exponent vector {row} has length {len(row)}, expected {arity}.")
        if any(e < 0 for e in row):
            raise ValueError(f"Exponent vector {row} has a negative entry.")
        if any(e > EXPONENT_LIMIT for e in row):
            raise ExponentOverflowError(f"Exponent vector {row} exceeds {EXPONENT_LIMIT}.")
    if not rows:
        return MonomialIdeal(arity=arity, generators=())
    return MonomialIdeal(arity=arity, generators=_antichain(np.array(rows, dtype=np.int64)))


def member(m: Sequence[int], ideal: MonomialIdeal) -> bool:
    vector = _vector(m, ideal.arity)
    if ideal.is_zero:
        return False
    return bool(np.all(ideal.matrix() <= vector, axis=1).any())


def contains(big: MonomialIdeal, small: MonomialIdeal) -> bool:
    """True when `small` ⊆ `big`."""
    _same_arity(big, small)
    if small.is_zero:
        return True
    if big.is_zero:
        return False
    return bool(_covered(small.matrix(), big.matrix()).all())


def multiply(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    arity = _same_arity(left, right)
    if left.is_zero or right.is_zero:
        return MonomialIdeal.zero(arity)
    sums = (left.matrix()[:, None, :] + right.matrix()[None, :, :]).reshape(-1, arity)
    return _from_matrix(sums, arity)


def power(ideal: MonomialIdeal, n: int) -> MonomialIdeal:
    if n < 0:
        raise ValueError(f"power exponent must be nonnegative, got {n}.")
    result = MonomialIdeal.unit(ideal.arity)
    for _ in range(n):
        result = multiply(result, ideal)
    return result


def intersect(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    arity = _same_arity(left, right)
    if left.is_zero or right.is_zero:
        return MonomialIdeal.zero(arity)
    lcms = np.maximum(left.matrix()[:, None, :], right.matrix()[None, :, :]).reshape(-1, arity)
    return _from_matrix(lcms, arity)


def intersect_all(ideals: Iterable[MonomialIdeal], arity: int) -> MonomialIdeal:
    result = MonomialIdeal.unit(arity)
    for ideal in ideals:
        result = intersect(result, ideal)
    return result


def add(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    arity = _same_arity(left, right)
    return minimize([*left.generators, *right.generators], arity)


def colon_monomial(ideal: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    vector = _vector(m, ideal.arity)
    if ideal.is_zero:
        return ideal
    return _from_matrix(np.maximum(ideal.matrix() - vector, 0), ideal.arity)


def saturate_maximal(ideal: MonomialIdeal) -> MonomialIdeal:
    saturated, _ = saturation_with_exponents(ideal)
    return saturated


def saturation_with_exponents(ideal: MonomialIdeal) -> tuple[MonomialIdeal, ExponentVector]:
    """Return (I : m^inf) and the per-variable step counts at which (I : x_i^k) stabilized."""
    arity = ideal.arity
    steps: list[int] = []
    result = MonomialIdeal.unit(arity)
    for index in range(arity):
        current = ideal
        count = 0
        step = unit_vector(arity, index)
        while True:
            following = colon_monomial(current, step)
            if following == current:
                break
            current = following
            count += 1
        steps.append(count)
        result = intersect(result, current)
    return result, tuple(steps)


def mu_quotient(big: MonomialIdeal, small: MonomialIdeal) -> int:
    """Minimal generator count of big/small, for monomial small ⊆ big."""
    _require_containment(big, small)
    if big.is_zero:
        return 0
    if small.is_zero:
        return len(big)
    return int((~_covered(big.matrix(), small.matrix())).sum())


def count_quotient_monomials(big: MonomialIdeal, small: MonomialIdeal) -> int | float:
    """Number of monomials in big/small, or INFINITE when the quotient is not m-torsion."""
    _require_containment(big, small)
    saturated, steps = saturation_with_exponents(small)
    if not contains(saturated, big):
        return INFINITE
    if big.is_zero or any(step == 0 for step in steps):
        return 0
    box = np.indices(steps).reshape(len(steps), -1).T
    in_big = _covered(box, big.matrix())
    in_small = _covered(box, small.matrix()) if not small.is_zero else np.zeros(len(box), dtype=bool)
    return int((in_big & ~in_small).sum())


def is_squarefree(ideal: MonomialIdeal) -> bool:
    return all(e <= 1 for gen in ideal.generators for e in gen)


def support(vector: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(vector) if e > 0)


def pure_power_exponents(ideal: MonomialIdeal) -> dict[int, int] | None:
    """Map variable -> exponent when every generator is a pure power, else None."""
    exponents: dict[int, int] = {}
    for gen in ideal.generators:
        indices = support(gen)
        if len(indices) != 1:
            return None
        (index,) = indices
        exponents[index] = gen[index]
    return exponents


def format_monomial(vector: Sequence[int], variables: Sequence[str]) -> str:
    factors = []
    for name, exponent in zip(variables, vector):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors) or "1"


def format_ideal(ideal: MonomialIdeal, variables: Sequence[str]) -> str:
    if len(variables) != ideal.arity:
        raise ArityError(f"{len(variables)} variable names for arity {ideal.arity}.")
    if ideal.is_zero:
        raise ValueError("The zero ideal has no generator form.")
    ordered = sorted(ideal.generators, key=lambda gen: (-sum(gen), tuple(-e for e in gen)))
    return "(" + ", ".join(format_monomial(gen, variables) for gen in ordered) + ")"


def _antichain(matrix: np.ndarray) -> tuple[ExponentVector, ...]:
    matrix = np.unique(matrix, axis=0)
    matrix = matrix[np.argsort(matrix.sum(axis=1), kind="stable")]
    kept = np.empty_like(matrix)
    count = 0
    for row in matrix:
        if count and np.all(kept[:count] <= row, axis=1).any():
            continue
        kept[count] = row
        count += 1
    return tuple(sorted(tuple(int(e) for e in row) for row in kept[:count].tolist()))


def _from_matrix(matrix: np.ndarray, arity: int) -> MonomialIdeal:
    if matrix.size and int(matrix.max()) > EXPONENT_LIMIT:
        raise ExponentOverflowError(f"Exponent exceeds {EXPONENT_LIMIT}.")
    if not len(matrix):
        return MonomialIdeal.zero(arity)
    return MonomialIdeal(arity=arity, generators=_antichain(matrix))


def _covered(points: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Boolean mask: which rows of `points` are divisible by some row of `gens`."""
    mask = np.zeros(len(points), dtype=bool)
    for gen in gens:
        mask |= np.all(points >= gen, axis=1)
    return mask


def _matrix(gens: Sequence[ExponentVector], arity: int) -> np.ndarray:
    return np.array(gens, dtype=np.int64).reshape(-1, arity)


def _vector(m: Sequence[int], arity: int) -> np.ndarray:
    if len(m) != arity:
        raise ArityError(f"Exponent vector {tuple(m)} has length {len(m)}, expected {arity}.")
    return np.array([int(e) for e in m], dtype=np.int64)


def _same_arity(left: MonomialIdeal, right: MonomialIdeal) -> int:
    if left.arity != right.arity:
        raise ArityError(f"Arity mismatch: {left.arity} vs {right.arity}.")
    return left.arity


def _check_arity(arity: int) -> int:
    if int(arity) < 1:
        raise ArityError(f"Arity must be at least 1, got {arity}.")
    return int(arity)


def _require_containment(big: MonomialIdeal, small: MonomialIdeal) -> None:
    if not contains(big, small):
        raise ContainmentError("Quotient requires the second ideal to lie inside the first.")
