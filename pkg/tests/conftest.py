"""Shared random-structure generators for the test suite."""

import random
from math import gcd

from clusterkit.quiver import ExchangeMatrix, Quiver


def random_quiver(rng: random.Random, max_mutable=4, max_frozen=2, max_mult=2) -> Quiver:
    n = rng.randint(1, max_mutable)
    f = rng.randint(0, max_frozen)
    m = n + f
    arrows = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if i > n and j > n:
                continue
            r = rng.random()
            if r < 0.45:
                continue
            mult = 1 if rng.random() < 0.8 else rng.randint(1, max_mult)
            if rng.random() < 0.5:
                arrows[(i, j)] = mult
            else:
                arrows[(j, i)] = mult
    return Quiver(n, f, arrows)


def random_skew_symmetrizable(rng: random.Random, max_n=4, max_entry=2) -> ExchangeMatrix:
    n = rng.randint(2, max_n)
    d = [rng.randint(1, 3) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = rng.randint(-max_entry, max_entry)
            if c == 0:
                continue
            g = gcd(d[i], d[j])
            rows[i][j] = c * d[j] // g
            rows[j][i] = -c * d[i] // g
    return ExchangeMatrix(rows)
