from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Sequence


LOGGER = logging.getLogger("symdef.lp")

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None
    solution: tuple[Fraction, ...]

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class SimplexTableau:
    """Dense exact tableau for  min c.x  s.t.  A x = b, x >= 0.

    Pivoting follows Bland's rule (lowest entering index, ties in the ratio
    test broken by the lowest basic index), so it always terminates.
    """

    def __init__(self, a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]) -> None:
        if len(a_eq) != len(b_eq):
            raise LPError(f"{len(a_eq)} constraint rows but {len(b_eq)} right-hand sides.")
        widths = {len(row) for row in a_eq}
        if len(widths) > 1:
            raise LPError("Constraint rows have different lengths.")
        self.n = widths.pop() if widths else 0
        self.m = len(a_eq)
        self.rows: list[list[Fraction]] = []
        for row, rhs in zip(a_eq, b_eq):
            values = [Fraction(v) for v in row] + [Fraction(rhs)]
            if values[-1] < 0:
                values = [-v for v in values]
            self.rows.append(values)
        self.basis: list[int] = []
        self.pivots = 0

    def pivot(self, row: int, col: int) -> None:
        pivot_row = self.rows[row]
        factor = pivot_row[col]
        pivot_row[:] = [v / factor for v in pivot_row]
        for k, other in enumerate(self.rows):
            if k == row or other[col] == 0:
                continue
            scale = other[col]
            self.rows[k] = [a - scale * b for a, b in zip(other, pivot_row)]
        self.basis[row] = col
        self.pivots += 1

    def optimize(self, cost: Sequence[Fraction], allowed: int) -> str:
        while True:
            basic = set(self.basis)
            entering = None
            for j in range(allowed):
                if j in basic:
                    continue
                reduced = cost[j] - sum(cost[b] * self.rows[i][j] for i, b in enumerate(self.basis))
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL
            candidates = [
                (self.rows[i][-1] / self.rows[i][entering], self.basis[i], i)
                for i in range(len(self.rows))
                if self.rows[i][entering] > 0
            ]
            if not candidates:
                return UNBOUNDED
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * self.rows[i][-1] for i, b in enumerate(self.basis)), Fraction(0))

    def solution(self) -> tuple[Fraction, ...]:
        point = [Fraction(0)] * self.n
        for i, b in enumerate(self.basis):
            if b < self.n:
                point[b] = self.rows[i][-1]
        return tuple(point)

    def phase_one(self) -> bool:
        """Drive artificial variables out; False when the system is infeasible."""
        for i, row in enumerate(self.rows):
            row[-1:-1] = [Fraction(1) if k == i else Fraction(0) for k in range(self.m)]
        self.basis = [self.n + i for i in range(self.m)]
        cost = [Fraction(0)] * self.n + [Fraction(1)] * self.m
        self.optimize(cost, self.n + self.m)
        if self.value(cost) != 0:
            return False
        for i in range(len(self.rows) - 1, -1, -1):
            if self.basis[i] < self.n:
                continue
            col = next((j for j in range(self.n) if self.rows[i][j] != 0), None)
            if col is None:
                del self.rows[i]
                del self.basis[i]
            else:
                self.pivot(i, col)
        for row in self.rows:
            del row[self.n : self.n + self.m]
        return True


def solve(
    cost: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
) -> LPResult:
    tableau = SimplexTableau(a_eq, b_eq)
    if len(cost) != tableau.n:
        raise LPError(f"Cost vector has length {len(cost)}, expected {tableau.n}.")
    if not tableau.phase_one():
        LOGGER.debug("LP infeasible after %d pivots", tableau.pivots)
        return LPResult(status=INFEASIBLE, value=None, solution=())
    costs = [Fraction(c) for c in cost]
    status = tableau.optimize(costs, tableau.n)
    LOGGER.debug("LP %s after %d pivots", status, tableau.pivots)
    if status == UNBOUNDED:
        return LPResult(status=UNBOUNDED, value=None, solution=tableau.solution())
    return LPResult(status=OPTIMAL, value=tableau.value(costs), solution=tableau.solution())


def feasible(a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]) -> bool:
    tableau = SimplexTableau(a_eq, b_eq)
    return tableau.phase_one()
