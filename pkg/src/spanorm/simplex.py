"""Small dense-tableau simplex solver for the lower-bound LP.

Solves  min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0  by the
two-phase method.  The LPs this package produces have at most a few dozen
rows and columns, so a dense tableau is entirely adequate; what matters is
that the same code runs either in floating point or in exact rational
arithmetic over ``fractions.Fraction``.

Float mode prices by the most negative reduced cost and switches to Bland's
rule after a run of degenerate pivots (anti-cycling).  Because repeated
pivots on ill-conditioned data can drift, the result of a float run is
always re-derived from the final basis against the original data and
verified (primal feasibility and non-negative reduced costs); failures fall
back to exact arithmetic.  Exact mode uses the float run for basis
discovery and certifies that basis with exact algebra, resorting to fully
exact pivoting only when the shortcut cannot be certified, so both modes
return genuine optima for the data they were handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["Infeasible", "LpSolution", "SimplexError", "Unbounded", "solve_lp"]

FLOAT_TOL = 1e-10
VERIFY_TOL = 1e-8
DEGENERATE_SWITCH = 40


class SimplexError(Exception):
    """Base class for solver failures."""


class Infeasible(SimplexError):
    """The constraint system has no solution."""


class Unbounded(SimplexError):
    """The objective is unbounded below on the feasible region."""


class _NeedsExact(Exception):
    """Internal: a float run could not be verified; redo exactly."""


@dataclass(frozen=True)
class LpSolution:
    objective: object
    x: tuple


class _Program:
    """Normalized data: min c.x, rows with slacks/artificials, x >= 0."""

    def __init__(self, c, a_ub, b_ub, a_eq, b_eq, conv):
        zero, one = conv(0), conv(1)
        n = len(c)
        self.n = n
        self.c = [conv(v) for v in c]
        m_ub, m_eq = len(a_ub), len(a_eq)
        self.m = m_ub + m_eq
        rows = []
        rhs = []
        for i in range(m_ub):
            row = [conv(v) for v in a_ub[i]] + [zero] * m_ub
            row[n + i] = one
            rows.append(row)
            rhs.append(conv(b_ub[i]))
        for i in range(m_eq):
            rows.append([conv(v) for v in a_eq[i]] + [zero] * m_ub)
            rhs.append(conv(b_eq[i]))
        for i in range(self.m):
            if rhs[i] < zero:
                rows[i] = [-v for v in rows[i]]
                rhs[i] = -rhs[i]
        self.start_basis = [-1] * self.m
        self.art_cols: list[int] = []
        width = n + m_ub
        for i in range(m_ub):
            if rows[i][n + i] == one:
                self.start_basis[i] = n + i
        for i in range(self.m):
            if self.start_basis[i] < 0:
                for r in range(self.m):
                    rows[r].append(one if r == i else zero)
                self.start_basis[i] = width
                self.art_cols.append(width)
                width += 1
        self.rows = rows
        self.rhs = rhs
        self.width = width
        self.full_c = self.c + [zero] * (width - n)
        self.zero, self.one = zero, one
        self._cols = None

    def column_nonzeros(self):
        if self._cols is None:
            self._cols = [
                [(i, self.rows[i][j]) for i in range(self.m) if self.rows[i][j] != 0]
                for j in range(self.width)
            ]
        return self._cols


def solve_lp(
    c: Sequence,
    a_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    a_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    exact: bool = False,
) -> LpSolution:
    """Minimize ``c.x`` over ``A_ub x <= b_ub``, ``A_eq x = b_eq``, ``x >= 0``."""
    if exact:
        prog = _Program(c, a_ub, b_ub, a_eq, b_eq, Fraction)
        try:
            basis = _float_basis(_Program(c, a_ub, b_ub, a_eq, b_eq, _to_float))
        except (SimplexError, ZeroDivisionError, OverflowError):
            basis = None
        if basis is not None:
            try:
                return _certified_from_basis(prog, basis, exact=True)
            except _NeedsExact:
                pass
            try:
                # float basis is near-optimal: re-optimize exactly from it
                return _exact_warm_start(prog, basis)
            except (_NeedsExact, SimplexError, ZeroDivisionError):
                pass
        basis = _pivot_phases(prog, Fraction(0))
        return _solution_from_tableau(prog, basis)
    prog = _Program(c, a_ub, b_ub, a_eq, b_eq, _to_float)
    try:
        basis = _float_basis(prog)
        return _certified_from_basis(prog, basis, exact=False)
    except _NeedsExact:
        eprog = _Program(c, a_ub, b_ub, a_eq, b_eq, _via_float_fraction)
        basis = _pivot_phases(eprog, Fraction(0))
        sol = _solution_from_tableau(eprog, basis)
        return LpSolution(
            objective=float(sol.objective), x=tuple(float(v) for v in sol.x)
        )


def _to_float(v):
    return float(v)


def _via_float_fraction(v):
    return Fraction(float(v))


def _float_basis(prog: _Program) -> list[int]:
    return _pivot_phases(prog, FLOAT_TOL)


def _certified_from_basis(prog: _Program, basis, exact: bool) -> LpSolution:
    """Rebuild x and the duals from the basis against the original data.

    Raises ``_NeedsExact`` unless the basis proves optimal: basic values
    non-negative, rows satisfied, and all reduced costs non-negative (within
    tolerance in float mode, exactly in exact mode).
    """
    m, width, n = prog.m, prog.width, prog.n
    tol = 0 if exact else VERIFY_TOL
    bmat = [[prog.rows[i][basis[r]] for r in range(m)] for i in range(m)]
    try:
        xb = _dense_solve(bmat, prog.rhs)
        yvec = _dense_solve(
            [[bmat[r][i] for r in range(m)] for i in range(m)],
            [prog.full_c[basis[r]] for r in range(m)],
        )
    except ZeroDivisionError:
        raise _NeedsExact
    xfull = [prog.zero] * width
    for r in range(m):
        if xb[r] < -tol:
            raise _NeedsExact
        xfull[basis[r]] = xb[r]
    for j in prog.art_cols:
        if xfull[j] > tol:
            raise _NeedsExact
    if not exact:
        for i in range(m):
            lhs = sum(prog.rows[i][j] * xfull[j] for j in range(width))
            if abs(lhs - prog.rhs[i]) > VERIFY_TOL * max(1.0, abs(prog.rhs[i])):
                raise _NeedsExact
    cols = prog.column_nonzeros()
    for j in range(width):
        if j in prog.art_cols:
            continue
        reduced = prog.full_c[j] - sum(v * yvec[i] for i, v in cols[j])
        if reduced < -tol:
            raise _NeedsExact
    x = xfull[:n]
    objective = sum(ci * xi for ci, xi in zip(prog.c, x))
    return LpSolution(objective=objective, x=tuple(x))


def _exact_warm_start(prog: _Program, start_basis) -> LpSolution:
    """Exact re-optimization beginning at a basis found in float arithmetic.

    Pivots the exact tableau into the given basis (bailing out if the basis
    is singular or infeasible in exact arithmetic), then runs the ordinary
    exact phase-2 pricing, which typically needs only a handful of pivots.
    """
    m, width = prog.m, prog.width
    zero = prog.zero
    tableau = [prog.rows[i][:] + [prog.rhs[i]] for i in range(m)]
    basis = [-1] * m
    remaining = set(range(m))
    for col in start_basis:
        row = None
        for r in remaining:
            if tableau[r][col] != 0:
                row = r
                break
        if row is None:
            raise _NeedsExact  # singular in exact arithmetic
        _pivot(tableau, basis, row, col)
        remaining.discard(row)
    for i in range(m):
        if tableau[i][-1] < zero:
            raise _NeedsExact  # float basis not exactly feasible
    obj = [zero] * (width + 1)
    for j in range(prog.n):
        obj[j] = prog.c[j]
    for i in range(m):
        bj = basis[i]
        if bj < prog.n and prog.c[bj] != 0:
            coef = prog.c[bj]
            for j in range(width + 1):
                obj[j] -= coef * tableau[i][j]
    _run_phase(tableau, obj, basis, Fraction(0), blocked=frozenset(prog.art_cols))
    prog._final_rhs = [tableau[i][-1] for i in range(m)]
    return _solution_from_tableau(prog, basis)


def _solution_from_tableau(prog: _Program, basis) -> LpSolution:
    x = [prog.zero] * prog.n
    for i, (b, tail) in enumerate(zip(basis, prog._final_rhs)):
        if b < prog.n:
            x[b] = tail
    objective = sum(ci * xi for ci, xi in zip(prog.c, x))
    return LpSolution(objective=objective, x=tuple(x))


def _pivot_phases(prog: _Program, tol) -> list[int]:
    """Run both simplex phases; returns the final basis (stores final rhs)."""
    m, width = prog.m, prog.width
    zero, one = prog.zero, prog.one
    basis = list(prog.start_basis)
    tableau = [prog.rows[i][:] + [prog.rhs[i]] for i in range(m)]

    if prog.art_cols:
        obj = [zero] * (width + 1)
        for j in prog.art_cols:
            obj[j] = one
        for i in range(m):
            if basis[i] in prog.art_cols:
                for j in range(width + 1):
                    obj[j] -= tableau[i][j]
        _run_phase(tableau, obj, basis, tol, blocked=frozenset())
        feas_tol = zero if not tol else 1e-7
        if obj[-1] < -feas_tol:
            raise Infeasible("phase-1 objective positive")
        for i in range(m):
            if basis[i] in prog.art_cols:
                piv = next(
                    (
                        j
                        for j in range(width)
                        if j not in prog.art_cols and _nonzero(tableau[i][j], tol)
                    ),
                    None,
                )
                if piv is not None:
                    _pivot(tableau, basis, i, piv)

    obj = [zero] * (width + 1)
    for j in range(prog.n):
        obj[j] = prog.c[j]
    for i in range(m):
        bj = basis[i]
        if bj < prog.n and prog.c[bj] != 0:
            coef = prog.c[bj]
            for j in range(width + 1):
                obj[j] -= coef * tableau[i][j]
    _run_phase(tableau, obj, basis, tol, blocked=frozenset(prog.art_cols))
    prog._final_rhs = [tableau[i][-1] for i in range(m)]
    return basis


def _nonzero(v, tol) -> bool:
    return v > tol or v < -tol


def _dense_solve(mat, vec):
    """Solve a square system by Gauss-Jordan elimination, partial pivoting.

    Skips zero entries (the LP basis matrices are sparse), which matters a
    lot when the scalars are Fractions.
    """
    n = len(vec)
    m = [list(row) + [v] for row, v in zip(mat, vec)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0:
            raise ZeroDivisionError("singular basis matrix")
        m[col], m[piv] = m[piv], m[col]
        prow = m[col]
        inv = prow[col]
        if inv != 1:
            m[col] = prow = [v / inv for v in prow]
        nonzero = [j for j in range(col, n + 1) if prow[j] != 0]
        for r in range(n):
            if r == col:
                continue
            row_r = m[r]
            factor = row_r[col]
            if factor == 0:
                continue
            for j in nonzero:
                row_r[j] -= factor * prow[j]
    return [m[r][n] for r in range(n)]


def _pivot(tableau, basis, row: int, col: int) -> None:
    prow = tableau[row]
    piv = prow[col]
    if piv != 1:
        tableau[row] = prow = [v / piv for v in prow]
    nonzero = [j for j, v in enumerate(prow) if v != 0]
    for r in range(len(tableau)):
        if r == row:
            continue
        trow = tableau[r]
        factor = trow[col]
        if factor == 0:
            continue
        for j in nonzero:
            trow[j] -= factor * prow[j]
    basis[row] = col


def _run_phase(tableau, obj, basis, tol, blocked) -> None:
    """Pivot to optimality: most-negative pricing, Bland's rule after stalling."""
    m = len(tableau)
    width = len(obj) - 1
    guard = 0
    limit = 10000 + 300 * (m + width)
    degenerate_run = 0
    bland = False
    while True:
        guard += 1
        if guard > limit:
            raise SimplexError("pivot limit exceeded")
        enter = None
        if bland:
            for j in range(width):
                if j not in blocked and obj[j] < -tol:
                    enter = j
                    break
        else:
            best_rc = -tol
            for j in range(width):
                if j not in blocked and obj[j] < best_rc:
                    best_rc = obj[j]
                    enter = j
        if enter is None:
            return
        leave = None
        best = None
        for i in range(m):
            a = tableau[i][enter]
            if a > tol:
                ratio = tableau[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave is None:
            # A barely-negative reduced cost with no pivotable entry is
            # round-off noise in float mode; true unboundedness shows a
            # substantial rate.
            if tol and obj[enter] > -1e-7:
                obj[enter] = 0.0
                continue
            raise Unbounded(f"column {enter} unbounded")
        if best == 0 or (tol and best < tol):
            degenerate_run += 1
            if degenerate_run >= DEGENERATE_SWITCH:
                bland = True
        else:
            degenerate_run = 0
        _pivot(tableau, basis, leave, enter)
        factor = obj[enter]
        if factor != 0:
            prow = tableau[leave]
            for j, v in enumerate(prow):
                if v:
                    obj[j] -= factor * v
