import logging
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from multicutlab.exceptions import DimensionMismatch, Infeasible, Unbounded
from multicutlab.inequality import LinearInequality
from multicutlab._helpers import Rational, Vector, to_fractions

logger = logging.getLogger(__name__)


class LPProblem:
    """minimize ``c.x`` subject to the rows ``a.x >= b`` and ``x >= 0``.

    Rows are kept once per normalized form.
    """

    def __init__(self, objective: Sequence[Rational], rows: Iterable[LinearInequality] = ()) -> None:
        self.objective: Vector = to_fractions(objective)
        self.rows: List[LinearInequality] = []
        self._seen = set()
        for row in rows:
            self.add_row(row)

    @property
    def variable_count(self) -> int:
        return len(self.objective)

    def add_row(self, row: LinearInequality) -> bool:
        """Append ``row``; False when an equal row is already present."""
        if row.dimension != self.variable_count:
            raise DimensionMismatch('Row has {} coefficients, problem has {} variables'.format(
                row.dimension, self.variable_count))
        if row in self._seen:
            return False
        self._seen.add(row)
        self.rows.append(row)
        return True

    def __contains__(self, row: LinearInequality) -> bool:
        return row in self._seen


class LPResult:
    def __init__(self, point: Vector, value: Fraction, pivots: int) -> None:
        self.point = point
        self.value = value
        self.pivots = pivots

    def __iter__(self):
        return iter((self.point, self.value))

    def __repr__(self) -> str:
        return 'LPResult(value={}, point={})'.format(self.value, [str(v) for v in self.point])


class _Tableau:
    """Dense simplex tableau over Fractions with Bland's pivoting rule."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int, costs: List[Fraction]) -> Fraction:
        """Pivot on (r, c); update ``costs`` in place and return the objective change."""
        row = self.rows[r]
        factor = row[c]
        if factor != 1:
            self.rows[r] = row = [a / factor for a in row]
            self.rhs[r] = self.rhs[r] / factor
        for i, other in enumerate(self.rows):
            if i != r and other[c] != 0:
                k = other[c]
                self.rows[i] = [a - k * b for a, b in zip(other, row)]
                self.rhs[i] = self.rhs[i] - k * self.rhs[r]
        k = costs[c]
        delta = k * self.rhs[r]
        if k != 0:
            costs[:] = [a - k * b for a, b in zip(costs, row)]
        self.basis[r] = c
        self.pivots += 1
        return delta

    def reduced_costs(self, cost: Sequence[Fraction]) -> Tuple[List[Fraction], Fraction]:
        reduced = list(cost)
        value = Fraction(0)
        for i, j in enumerate(self.basis):
            if cost[j] != 0:
                k = cost[j]
                reduced = [a - k * b for a, b in zip(reduced, self.rows[i])]
                value += k * self.rhs[i]
        return reduced, value

    def optimize(self, cost: Sequence[Fraction], columns: Sequence[int]) -> Fraction:
        costs, value = self.reduced_costs(cost)
        while True:
            entering = next((j for j in columns if costs[j] < 0), None)
            if entering is None:
                return value
            best = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = self.rhs[i] / row[entering]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded('Objective is unbounded below')
            value += self.pivot(best[1], entering, costs)


def lp_solve(problem: LPProblem) -> LPResult:
    """Exact two-phase primal simplex.

    Raises:
        Infeasible: no point satisfies the rows.
        Unbounded: the objective decreases without bound.
    """
    n = problem.variable_count
    k = len(problem.rows)
    # columns: x (n), one surplus/slack per row (k), artificials after that
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    artificial_rows = []
    for i, ineq in enumerate(problem.rows):
        coeffs = [Fraction(a) for a in ineq.coeffs]
        slack = [Fraction(0)] * k
        b = Fraction(ineq.rhs)
        if b > 0:
            # a.x - s + r = b with artificial r
            slack[i] = Fraction(-1)
            rows.append(coeffs + slack)
            artificial_rows.append(i)
        else:
            # -a.x + s = -b
            slack[i] = Fraction(1)
            rows.append([-a for a in coeffs] + slack)
            b = -b
        rhs.append(b)
    width = n + k + len(artificial_rows)
    basis: List[Optional[int]] = [None] * k
    for i in range(k):
        rows[i] += [Fraction(0)] * len(artificial_rows)
    for position, i in enumerate(artificial_rows):
        rows[i][n + k + position] = Fraction(1)
        basis[i] = n + k + position
    for i in range(k):
        if basis[i] is None:
            basis[i] = n + i
    tableau = _Tableau(rows, rhs, basis)

    if artificial_rows:
        phase_one = [Fraction(0)] * (n + k) + [Fraction(1)] * len(artificial_rows)
        residual = tableau.optimize(phase_one, range(width))
        if residual > 0:
            logger.debug('Phase one ended with infeasibility %s after %d pivots', residual, tableau.pivots)
            raise Infeasible('Rows admit no nonnegative solution')
        _drive_out_artificials(tableau, n + k)

    cost = list(problem.objective) + [Fraction(0)] * (width - n)
    value = tableau.optimize(cost, range(n + k))
    point = [Fraction(0)] * n
    for i, j in enumerate(tableau.basis):
        if j < n:
            point[j] = tableau.rhs[i]
    logger.debug('LP optimum %s with %d rows after %d pivots', value, k, tableau.pivots)
    return LPResult(tuple(point), value, tableau.pivots)


def _drive_out_artificials(tableau: _Tableau, first_artificial: int) -> None:
    """Pivot zero-level artificials out of the basis; drop rows that are redundant."""
    dummy = [Fraction(0)] * len(tableau.rows[0]) if tableau.rows else []
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= first_artificial:
            column = next((j for j in range(first_artificial) if tableau.rows[i][j] != 0), None)
            if column is None:
                del tableau.rows[i]
                del tableau.rhs[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, column, dummy)
        i += 1
