"""Exact linear programming over the rationals.

Two-phase primal simplex with Bland's rule on a dense Fraction tableau. No
floating point anywhere: feasibility answers and optima are exact, and with
the fixed variable order the pivot sequence (hence the returned basic
solution) is fully deterministic. Problem sizes here are small (tens of rows
and columns), which is exactly the regime where a dense rational tableau is
the simplest correct tool.

`solve_standard` handles min c.x s.t. Ax = b, x >= 0. `LinearProgram` is a
small builder on top: named variables (optionally free), <=/>=/== rows, and
translation of the answer back to the caller's variables.
"""

from __future__ import annotations

from fractions import Fraction

from .jsonio import as_fraction


class InfeasibleLP(Exception):
    pass


class UnboundedLP(Exception):
    pass


def _pivot(tableau, obj, basis, row, col):
    piv = tableau[row][col]
    tableau[row] = [v / piv for v in tableau[row]]
    pivot_row = tableau[row]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, pivot_row)]
    if obj[col] != 0:
        f = obj[col]
        obj[:] = [a - f * b for a, b in zip(obj, pivot_row)]
    basis[row] = col


def _run(tableau, obj, basis, ncols):
    """Pivot to optimality (Bland's rule: smallest eligible indices)."""
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best = None
        for i, r in enumerate(tableau):
            coeff = r[enter]
            if coeff > 0:
                ratio = r[-1] / coeff
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise UnboundedLP(f"column {enter} improves without bound")
        _pivot(tableau, obj, basis, leave, enter)


def solve_standard(rows, rhs, costs):
    """Minimize costs.x subject to rows.x == rhs, x >= 0. Returns (value, x)."""
    m, n = len(rows), len(costs)
    tableau = []
    for row, b in zip(rows, rhs):
        row = [as_fraction(a) for a in row]
        b = as_fraction(b)
        if b < 0:
            row = [-a for a in row]
            b = -b
        tableau.append(row + [Fraction(0)] * m + [b])
    for i in range(m):
        tableau[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]

    # Phase 1: minimize the artificial mass.
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        obj = [a - b for a, b in zip(obj, tableau[i])]
    for i in range(m):
        obj[n + i] = Fraction(0)
    _run(tableau, obj, basis, n + m)
    if -obj[-1] != 0:
        raise InfeasibleLP(f"artificial mass {-obj[-1]} at phase-1 optimum")

    # Drive leftover artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(len(tableau)):
        if basis[i] < n:
            keep.append(i)
            continue
        col = next((j for j in range(n) if tableau[i][j] != 0), None)
        if col is not None:
            _pivot(tableau, obj, basis, i, col)
            keep.append(i)
    tableau = [[*tableau[i][:n], tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2 with the real costs.
    obj = [as_fraction(c) for c in costs] + [Fraction(0)]
    for i, r in enumerate(tableau):
        f = obj[basis[i]]
        if f != 0:
            obj = [a - f * b for a, b in zip(obj, r)]
    _run(tableau, obj, basis, n)

    solution = [Fraction(0)] * n
    for i, r in enumerate(tableau):
        solution[basis[i]] = r[-1]
    return -obj[-1], solution


class LinearProgram:
    """Incremental builder: variables, <=/>=/== rows, exact minimize."""

    def __init__(self):
        self._free = []
        self._costs = []
        self._rows = []

    def var(self, cost=0, free=False) -> int:
        self._free.append(free)
        self._costs.append(as_fraction(cost))
        return len(self._free) - 1

    def add(self, coeffs: dict, sense: str, rhs):
        if sense not in ("<=", ">=", "=="):
            raise ValueError(f"unknown constraint sense {sense!r}")
        self._rows.append(({v: as_fraction(a) for v, a in coeffs.items()}, sense, as_fraction(rhs)))

    def minimize(self):
        """Returns (value, assignment) or raises InfeasibleLP / UnboundedLP."""
        columns = []  # per variable: (positive column, negative column or -1)
        ncols = 0
        for is_free in self._free:
            if is_free:
                columns.append((ncols, ncols + 1))
                ncols += 2
            else:
                columns.append((ncols, -1))
                ncols += 1
        slack_of_row = []
        for _, sense, _ in self._rows:
            if sense == "==":
                slack_of_row.append(0)
            else:
                slack_of_row.append(1 if sense == "<=" else -1)
                ncols += 1

        rows, rhs = [], []
        slack_col = ncols - sum(1 for s in slack_of_row if s)
        for (coeffs, sense, b), slack in zip(self._rows, slack_of_row):
            row = [Fraction(0)] * ncols
            for v, a in coeffs.items():
                pos, neg = columns[v]
                row[pos] += a
                if neg >= 0:
                    row[neg] -= a
            if slack:
                row[slack_col] = Fraction(slack)
                slack_col += 1
            rows.append(row)
            rhs.append(b)

        costs = [Fraction(0)] * ncols
        for (pos, neg), c in zip(columns, self._costs):
            costs[pos] += c
            if neg >= 0:
                costs[neg] -= c

        value, x = solve_standard(rows, rhs, costs)
        assignment = []
        for pos, neg in columns:
            assignment.append(x[pos] - (x[neg] if neg >= 0 else Fraction(0)))
        return value, assignment

    def feasible(self) -> bool:
        saved = self._costs
        try:
            self._costs = [Fraction(0)] * len(saved)
            self.minimize()
            return True
        except InfeasibleLP:
            return False
        finally:
            self._costs = saved
