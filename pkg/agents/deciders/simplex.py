"""Dense-tableau simplex over exact rationals.

Problems are given in equality form: maximize c·x subject to A x = b, x ≥ 0.
Bland's rule picks entering and leaving variables, so the method terminates
on degenerate problems; phase one uses one artificial variable per row.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LpResult:
    status: str
    x: List[Fraction] = field(default_factory=list)
    value: Optional[Fraction] = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class RationalSimplex:
    def __init__(self, A: Sequence[Sequence], b: Sequence, c: Sequence):
        self.n = len(c)
        self.c = [Fraction(v) for v in c]
        rows, rhs = [], []
        for row, value in zip(A, b):
            row = [Fraction(v) for v in row]
            value = Fraction(value)
            if len(row) != self.n:
                raise ValueError(f"constraint row has {len(row)} entries, expected {self.n}")
            if value < 0:
                row, value = [-v for v in row], -value
            rows.append(row)
            rhs.append(value)
        self.m = len(rows)
        # columns: n structural, then m artificial
        self.tableau = [row + [Fraction(int(i == k)) for k in range(self.m)] for i, row in enumerate(rows)]
        self.rhs = rhs
        self.basis = [self.n + i for i in range(self.m)]
        self.pivots = 0

    def _pivot(self, i: int, j: int) -> None:
        T = self.tableau
        piv = T[i][j]
        T[i] = [v / piv for v in T[i]]
        self.rhs[i] /= piv
        for k in range(len(T)):
            if k != i and T[k][j] != 0:
                f = T[k][j]
                T[k] = [a - f * b for a, b in zip(T[k], T[i])]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def _optimize(self, cost: Sequence[Fraction], allowed: int) -> str:
        """Bland's-rule iterations over the first ``allowed`` columns."""
        T = self.tableau
        while True:
            entering = None
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum(cost[self.basis[i]] * T[i][j] for i in range(len(T)) if T[i][j] != 0)
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL

            leaving = None
            for i in range(len(T)):
                if T[i][entering] > 0:
                    ratio = self.rhs[i] / T[i][entering]
                    if leaving is None or (ratio, self.basis[i]) < (best, self.basis[leaving]):
                        leaving, best = i, ratio
            if leaving is None:
                return UNBOUNDED
            self._pivot(leaving, entering)

    def _drop_artificials(self) -> None:
        i = 0
        while i < len(self.tableau):
            if self.basis[i] >= self.n:
                column = next((j for j in range(self.n) if self.tableau[i][j] != 0), None)
                if column is None:
                    # redundant equation
                    del self.tableau[i]
                    del self.rhs[i]
                    del self.basis[i]
                    continue
                self._pivot(i, column)
            i += 1

    def solve(self) -> LpResult:
        width = self.n + self.m
        phase_one = [Fraction(0)] * self.n + [Fraction(-1)] * self.m
        self._optimize(phase_one, width)
        infeasibility = sum(self.rhs[i] for i in range(len(self.tableau)) if self.basis[i] >= self.n)
        if infeasibility > 0:
            logger.debug("Phase one ended with infeasibility %s after %d pivots", infeasibility, self.pivots)
            return LpResult(INFEASIBLE)

        self._drop_artificials()
        cost = self.c + [Fraction(0)] * self.m
        status = self._optimize(cost, self.n)
        if status == UNBOUNDED:
            return LpResult(UNBOUNDED)

        x = [Fraction(0)] * self.n
        for i, j in enumerate(self.basis):
            x[j] = self.rhs[i]
        value = sum((cj * xj for cj, xj in zip(self.c, x)), Fraction(0))
        logger.debug("Optimum %s after %d pivots", value, self.pivots)
        return LpResult(OPTIMAL, x, value)


def maximize(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LpResult:
    return RationalSimplex(A, b, c).solve()
