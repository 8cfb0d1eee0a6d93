"""Shared helpers: small random generators and independent oracles.

The oracles here are deliberately naive (exhaustive enumeration,
permutation expansion) so library results can be checked against
independent arithmetic.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from expansion_lab.exactla import IntMatrix, mat_vec


def rand_matrix(rng: random.Random, max_dim: int = 4, lo: int = -5, hi: int = 5) -> IntMatrix:
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return IntMatrix.from_rows(
        [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]
    )


def rand_unimodular(rng: random.Random, n: int, steps: int = 8) -> IntMatrix:
    """Random unimodular matrix from elementary row operations."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-2, 2)
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    if rng.random() < 0.5 and n > 1:
        i, j = rng.sample(range(n), 2)
        rows[i], rows[j] = rows[j], rows[i]
    return IntMatrix.from_rows(rows)


def det_by_permutations(m: IntMatrix) -> int:
    """Leibniz formula; only sane for tiny matrices."""
    n = m.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m.at(i, perm[i])
        total += term
    return total


def box_vectors(n: int, radius: int):
    return itertools.product(range(-radius, radius + 1), repeat=n)


def min_l1_preimage_by_box(a: IntMatrix, v, radius: int):
    """Exhaustive min of |u|_1 over integer preimages in a box, or None."""
    best = None
    best_u = None
    target = tuple(v)
    for u in box_vectors(a.cols, radius):
        if mat_vec(a, u) != target:
            continue
        weight = sum(abs(e) for e in u)
        if best is None or weight < best:
            best = weight
            best_u = u
    if best is None:
        return None
    return best, best_u


def in_lattice_by_box(rows: list[tuple[int, ...]], x, radius: int) -> bool:
    """Exhaustive lattice membership with coefficients in a box."""
    if not rows:
        return all(e == 0 for e in x)
    target = tuple(x)
    n = len(rows[0])
    for coeffs in box_vectors(len(rows), radius):
        combo = tuple(
            sum(c * row[i] for c, row in zip(coeffs, rows)) for i in range(n)
        )
        if combo == target:
            return True
    return False


def frac(p, q=1) -> Fraction:
    return Fraction(p, q)
