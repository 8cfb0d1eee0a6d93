"""Exact rational simplex for L1 minimization over an affine subspace.

The one entry point minimizes ``|u + x_1 d_1 + ... + x_k d_k|_1`` over
rational x. This is the classic least-absolute-deviations program: with
residual r = u + D x split as r = rp - rm and x = xp - xm,

    minimize  1 . (rp + rm)
    subject   rp - rm - D xp + D xm = u,   rp, rm, xp, xm >= 0.

Setting x = 0, rp = max(u, 0), rm = max(-u, 0) is already a basic
feasible solution, so no phase-1 is needed: rows with negative right
hand side are negated to put the matching rm variable in the basis.

All arithmetic is fractions.Fraction. The entering rule is largest
reduced cost, switching permanently to Bland's smallest-index rule when
the objective stalls, which rules out cycling.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

_STALL_LIMIT = 30
_MAX_PIVOTS = 20000


def min_l1_combination(
    u: Sequence, directions: Sequence[Sequence]
) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...], Fraction]:
    """Minimize the L1 norm of u plus a rational combination of directions.

    Returns ``(x, w, value)`` with ``w = u + sum x_j d_j`` evaluated
    exactly and ``value = |w|_1``. With no directions this is just
    ``((), u, |u|_1)``.
    """
    n = len(u)
    k = len(directions)
    u = tuple(Fraction(e) for e in u)
    for d in directions:
        if len(d) != n:
            raise ValueError(f"direction length {len(d)} != {n}")
    if k == 0 or n == 0:
        value = sum(abs(e) for e in u) if n else Fraction(0)
        return (Fraction(0),) * k, u, Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)
    width = 2 * n + 2 * k + 1  # rp, rm, xp, xm, rhs
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    for i in range(n):
        row = [zero] * width
        row[i] = one
        row[n + i] = -one
        for j, d in enumerate(directions):
            coeff = Fraction(d[i])
            row[2 * n + j] = -coeff
            row[2 * n + k + j] = coeff
        row[-1] = u[i]
        if u[i] < 0:
            row = [-e for e in row]
            basis.append(n + i)
        else:
            basis.append(i)
        rows.append(row)

    # Reduced costs z_j - c_j; every starting basic variable has cost 1.
    cost = [one] * (2 * n) + [zero] * (2 * k) + [zero]
    obj = [zero] * width
    for j in range(width):
        obj[j] = sum(rows[i][j] for i in range(n)) - cost[j]

    pivots = 0
    stall = 0
    last_objective = obj[-1]
    use_bland = False
    while True:
        entering = None
        if use_bland:
            for j in range(width - 1):
                if obj[j] > 0:
                    entering = j
                    break
        else:
            best = zero
            for j in range(width - 1):
                if obj[j] > best:
                    best = obj[j]
                    entering = j
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(n):
            coeff = rows[i][entering]
            if coeff > 0:
                ratio = rows[i][-1] / coeff
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise ArithmeticError("L1 objective cannot be unbounded below")
        pivot = rows[leaving][entering]
        rows[leaving] = [e / pivot for e in rows[leaving]]
        for i in range(n):
            if i != leaving and rows[i][entering] != 0:
                factor = rows[i][entering]
                rows[i] = [e - factor * p for e, p in zip(rows[i], rows[leaving])]
        if obj[entering] != 0:
            factor = obj[entering]
            obj = [e - factor * p for e, p in zip(obj, rows[leaving])]
        basis[leaving] = entering
        pivots += 1
        if pivots > _MAX_PIVOTS:
            raise ArithmeticError("simplex pivot limit exceeded")
        if obj[-1] == last_objective:
            stall += 1
            if stall > _STALL_LIMIT:
                use_bland = True
        else:
            stall = 0
            last_objective = obj[-1]

    values = {var: rows[i][-1] for i, var in enumerate(basis)}
    x = tuple(
        values.get(2 * n + j, zero) - values.get(2 * n + k + j, zero)
        for j in range(k)
    )
    w = tuple(
        u[i] + sum(x[j] * Fraction(directions[j][i]) for j in range(k))
        for i in range(n)
    )
    value = Fraction(sum(abs(e) for e in w))
    return x, w, value
