"""Shared builders for pencil-level tests."""

from __future__ import annotations

import random
from fractions import Fraction as F

from tropsdp.pencils import TropicalPencil
from tropsdp.signed import SignedTrop, TROP_MINUS_INF, parse_signed


def pencil_of(m: int, n: int, entries: dict) -> TropicalPencil:
    """Build a pencil from {(k, i, j): coeff} with 0-based indices, i <= j.

    Coefficients may be SignedTrop values or their textual encoding.
    """
    mats = [[[TROP_MINUS_INF] * m for _ in range(m)] for _ in range(n)]
    for (k, i, j), coeff in entries.items():
        if not isinstance(coeff, SignedTrop):
            coeff = parse_signed(coeff)
        mats[k][i][j] = coeff
        mats[k][j][i] = coeff
    return TropicalPencil.from_rows(m, n, mats)


def random_pencil(
    rng: random.Random,
    max_m: int = 3,
    max_n: int = 3,
    metzler: bool = False,
    density: float = 0.7,
    value_pool: int = 2,
) -> TropicalPencil:
    """Random symmetric pencil; value_pool controls how often values collide."""
    m = rng.randint(1, max_m)
    n = rng.randint(1, max_n)
    entries = {}
    for k in range(n):
        for i in range(m):
            for j in range(i, m):
                if rng.random() > density:
                    continue
                value = F(rng.randint(-4 * value_pool, 4 * value_pool), rng.randint(1, value_pool))
                if i == j:
                    sign = 1 if rng.random() < 0.7 else -1
                elif metzler:
                    sign = -1
                else:
                    sign = 1 if rng.random() < 0.5 else -1
                entries[(k, i, j)] = SignedTrop(sign, value)
    return pencil_of(m, n, entries)
