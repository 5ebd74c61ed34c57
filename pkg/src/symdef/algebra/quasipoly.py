from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Any, Mapping, Sequence


LOGGER = logging.getLogger("symdef.quasipoly")
SCHEMA_VERSION = "1"

Coefficients = tuple[Fraction, ...]


class NoFitError(RuntimeError):
    pass


class BelowOnsetError(ValueError):
    pass


@dataclass(frozen=True)
class QuasiPolynomial:
    """Branch r (constant term first) applies to n with n % period == r, for n >= onset."""

    period: int
    onset: int
    branches: tuple[Coefficients, ...]
    window_limited: bool = False

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError(f"period must be positive, got {self.period}.")
        if len(self.branches) != self.period:
            raise ValueError(f"{len(self.branches)} branches for period {self.period}.")
        if self.onset < 0:
            raise ValueError(f"onset must be nonnegative, got {self.onset}.")


def fit(values: Mapping[int, int], max_period: int, max_degree: int) -> QuasiPolynomial:
    if max_period < 1 or max_degree < 0:
        raise ValueError("max_period must be positive and max_degree nonnegative.")
    top = len(values)
    if sorted(values) != list(range(1, top + 1)):
        raise ValueError("Values must be keyed on a contiguous range starting at n = 1.")
    needed = (max_degree + 2) * max_period + max_period
    if top < needed:
        raise ValueError(f"Need at least {needed} values for max_period={max_period}, max_degree={max_degree}; got {top}.")
    data = {int(n): Fraction(v) for n, v in values.items()}
    for period in range(1, max_period + 1):
        for onset in range(1, top + 1):
            classes = [[n for n in range(onset, top + 1) if n % period == r] for r in range(period)]
            if any(len(nodes) < max_degree + 2 for nodes in classes):
                break
            branches = []
            for nodes in classes:
                branch = _interpolate(nodes[: max_degree + 1], [data[n] for n in nodes[: max_degree + 1]])
                if any(_horner(branch, n) != data[n] for n in nodes):
                    break
                branches.append(branch)
            else:
                limited = top - onset + 1 < 2 * period * (max_degree + 1)
                LOGGER.debug("fit period=%d onset=%d window_limited=%s", period, onset, limited)
                return QuasiPolynomial(period=period, onset=onset, branches=tuple(branches), window_limited=limited)
    raise NoFitError(f"No quasi-polynomial with period <= {max_period} and degree <= {max_degree} fits {top} values.")


def evaluate(q: QuasiPolynomial, n: int) -> Fraction:
    if n < q.onset:
        raise BelowOnsetError(f"n={n} is below the onset {q.onset}.")
    return _horner(q.branches[n % q.period], n)


def degree(q: QuasiPolynomial) -> int:
    return max(len(branch) - 1 for branch in q.branches)


def leading_coefficients(q: QuasiPolynomial) -> list[Fraction]:
    top = degree(q)
    return [branch[top] if len(branch) > top else Fraction(0) for branch in q.branches]


def sample(q: QuasiPolynomial, n_from: int, n_to: int) -> dict[int, Fraction]:
    return {n: evaluate(q, n) for n in range(n_from, n_to + 1)}


def to_json(q: QuasiPolynomial) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "period": q.period,
        "onset": q.onset,
        "degree": degree(q),
        "branches": [[str(c) for c in branch] for branch in q.branches],
        "leading_coefficients": [str(c) for c in leading_coefficients(q)],
        "window_limited": q.window_limited,
    }


def from_json(payload: Mapping[str, Any]) -> QuasiPolynomial:
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValueError(f"Unsupported schema_version {version!r}.")
    branches = tuple(tuple(Fraction(c) for c in branch) for branch in payload["branches"])
    return QuasiPolynomial(
        period=int(payload["period"]),
        onset=int(payload["onset"]),
        branches=branches,
        window_limited=bool(payload.get("window_limited", False)),
    )


def _interpolate(nodes: Sequence[int], samples: Sequence[Fraction]) -> Coefficients:
    """Newton divided differences, expanded to monomial coefficients and trimmed."""
    table = list(samples)
    newton = [table[0]]
    for level in range(1, len(nodes)):
        table = [
            (table[k + 1] - table[k]) / (nodes[k + level] - nodes[k])
            for k in range(len(table) - 1)
        ]
        newton.append(table[0])
    coeffs = [newton[-1]]
    for k in range(len(newton) - 2, -1, -1):
        shifted = [Fraction(0), *coeffs]
        for i, value in enumerate(coeffs):
            shifted[i] -= nodes[k] * value
        shifted[0] += newton[k]
        coeffs = shifted
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _horner(coeffs: Coefficients, n: int) -> Fraction:
    result = Fraction(0)
    for c in reversed(coeffs):
        result = result * n + c
    return result
