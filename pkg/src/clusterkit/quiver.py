"""Quivers, exchange matrices, mutation, diagrams, and quiver products.

Vertices are labeled 1..m with 1..n mutable and n+1..m frozen. Arrows are a
multiset of ordered pairs; loops, 2-cycles, and arrows between two frozen
vertices are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd, lcm
from typing import Iterable, Mapping

from .errors import (
    FrozenVertexError,
    NotBipartiteError,
    NotSkewSymmetrizableError,
    ParseError,
)


class Quiver:
    """A finite quiver without loops or 2-cycles, with a mutable/frozen split."""

    __slots__ = ("n_mutable", "n_frozen", "arrows")

    def __init__(
        self,
        n_mutable: int,
        n_frozen: int = 0,
        arrows: Mapping[tuple[int, int], int] | Iterable[tuple[int, int]] = (),
    ):
        self.n_mutable = n_mutable
        self.n_frozen = n_frozen
        if isinstance(arrows, Mapping):
            items = arrows.items()
        else:
            counted: dict[tuple[int, int], int] = {}
            for pair in arrows:
                counted[tuple(pair)] = counted.get(tuple(pair), 0) + 1  # type: ignore[arg-type]
            items = counted.items()
        store: dict[tuple[int, int], int] = {}
        m = self.m
        for (s, t), mult in items:
            if mult == 0:
                continue
            if mult < 0:
                raise ValueError("arrow multiplicities must be positive")
            if not (1 <= s <= m and 1 <= t <= m):
                raise ValueError(f"arrow ({s},{t}) out of vertex range 1..{m}")
            if s == t:
                raise ValueError(f"loop at vertex {s}")
            if s > n_mutable and t > n_mutable:
                continue  # arrows between frozen vertices are dropped
            store[(s, t)] = store.get((s, t), 0) + mult
        for s, t in store:
            if (t, s) in store:
                raise ValueError(f"2-cycle between {s} and {t}")
        self.arrows = store

    @property
    def m(self) -> int:
        return self.n_mutable + self.n_frozen

    def multiplicity(self, s: int, t: int) -> int:
        return self.arrows.get((s, t), 0)

    def is_frozen(self, v: int) -> bool:
        return v > self.n_mutable

    def mutate(self, k: int) -> "Quiver":
        """Mutation at mutable vertex k: compose through k, reverse at k, cancel."""
        if not (1 <= k <= self.m):
            raise IndexError(f"vertex {k} out of range 1..{self.m}")
        if self.is_frozen(k):
            raise FrozenVertexError(f"vertex {k} is frozen")
        net: dict[tuple[int, int], int] = {}

        def bump(s: int, t: int, mult: int) -> None:
            if s > self.n_mutable and t > self.n_mutable:
                return
            net[(s, t)] = net.get((s, t), 0) + mult

        for (s, t), mult in self.arrows.items():
            if s == k or t == k:
                bump(t, s, mult)  # reverse arrows at k
            else:
                bump(s, t, mult)
        # add a composite arrow i -> j for every path i -> k -> j
        for (s1, t1), m1 in self.arrows.items():
            if t1 != k:
                continue
            for (s2, t2), m2 in self.arrows.items():
                if s2 == k:
                    bump(s1, t2, m1 * m2)
        # cancel two-cycles down to net multiplicities
        out: dict[tuple[int, int], int] = {}
        for s, t in net:
            if (t, s) in net and s > t:
                continue
            d = net[(s, t)] - net.get((t, s), 0)
            if d > 0:
                out[(s, t)] = d
            elif d < 0:
                out[(t, s)] = -d
        return Quiver(self.n_mutable, self.n_frozen, out)

    def sources_and_sinks(self) -> tuple[set[int], set[int]]:
        has_out = {s for s, _ in self.arrows}
        has_in = {t for _, t in self.arrows}
        sources = set(range(1, self.m + 1)) - has_in
        sinks = set(range(1, self.m + 1)) - has_out
        return sources, sinks

    def is_bipartite(self) -> bool:
        """Every vertex is a source or a sink."""
        sources, sinks = self.sources_and_sinks()
        return sources | sinks == set(range(1, self.m + 1))

    def to_matrix(self) -> "ExchangeMatrix":
        """Signed adjacency matrix: m rows, n columns (frozen-frozen data omitted)."""
        n, m = self.n_mutable, self.m
        b = [[0] * n for _ in range(m)]
        for (s, t), mult in self.arrows.items():
            if t <= n:
                b[s - 1][t - 1] += mult
            if s <= n:
                b[t - 1][s - 1] -= mult
        return ExchangeMatrix(b)

    def relabeled(self, perm: Mapping[int, int]) -> "Quiver":
        """Apply a vertex relabeling (a bijection on 1..m preserving the split)."""
        for v, w in perm.items():
            if (v <= self.n_mutable) != (w <= self.n_mutable):
                raise ValueError("relabeling must preserve mutable/frozen split")
        return Quiver(
            self.n_mutable,
            self.n_frozen,
            {(perm.get(s, s), perm.get(t, t)): mult for (s, t), mult in self.arrows.items()},
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Quiver)
            and self.n_mutable == other.n_mutable
            and self.n_frozen == other.n_frozen
            and self.arrows == other.arrows
        )

    def __hash__(self) -> int:
        return hash((self.n_mutable, self.n_frozen, frozenset(self.arrows.items())))

    def __repr__(self) -> str:
        arr = ", ".join(
            f"{s}->{t}" + (f" x{m}" if m > 1 else "")
            for (s, t), m in sorted(self.arrows.items())
        )
        return f"<Quiver n={self.n_mutable} m={self.m} [{arr}]>"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n_mutable,
            "m": self.m,
            "arrows": [[s, t, mult] for (s, t), mult in sorted(self.arrows.items())],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Quiver":
        try:
            n = int(data["n"])
            m = int(data.get("m", n))
            arrows = {(int(s), int(t)): int(mult) for s, t, mult in data.get("arrows", [])}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad quiver JSON: {exc}") from exc
        try:
            return cls(n, m - n, arrows)
        except ValueError as exc:
            raise ParseError(f"bad quiver JSON: {exc}") from exc

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for v in range(1, self.m + 1):
            shape = "box" if self.is_frozen(v) else "circle"
            lines.append(f'  {v} [shape={shape}];')
        for (s, t), mult in sorted(self.arrows.items()):
            label = f' [label="{mult}"]' if mult > 1 else ""
            lines.append(f"  {s} -> {t}{label};")
        lines.append("}")
        return "\n".join(lines)


class ExchangeMatrix:
    """An m x n integer matrix whose principal n x n part is skew-symmetrizable."""

    __slots__ = ("rows", "n", "m", "_skew_symmetrizer")

    def __init__(self, rows: Iterable[Iterable[int]], skew_symmetrizer=None):
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("ragged matrix")
        if self.m < self.n:
            raise ValueError("matrix must have at least as many rows as columns")
        self._skew_symmetrizer = tuple(skew_symmetrizer) if skew_symmetrizer else None

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def principal(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.rows[: self.n])

    def is_skew_symmetric(self) -> bool:
        return all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.n)
            for j in range(self.n)
        )

    def skew_symmetrizer(self) -> tuple[int, ...] | None:
        """Positive integers d with d_i b_ij = -d_j b_ji, or None if none exist."""
        if self._skew_symmetrizer is not None:
            return self._skew_symmetrizer
        n = self.n
        b = self.rows
        if any(b[i][i] != 0 for i in range(n)):
            return None
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if b[i][j] == 0 and b[j][i] == 0:
                        continue
                    if b[i][j] * b[j][i] >= 0:
                        return None  # needs strictly opposite signs
                    dj = -d[i] * b[i][j] / Fraction(b[j][i])
                    if d[j] is None:
                        d[j] = dj
                        stack.append(j)
                    elif d[j] != dj:
                        return None
        denom = lcm(*(f.denominator for f in d)) if n else 1
        ints = [int(f * denom) for f in d]
        g = 0
        for v in ints:
            g = gcd(g, v)
        result = tuple(v // g for v in ints) if g else tuple(ints)
        self._skew_symmetrizer = result
        return result

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation at column index k (1-based), by the four-case rule."""
        if not (1 <= k <= self.n):
            raise IndexError(f"mutation index {k} out of range 1..{self.n}")
        kk = k - 1
        b = self.rows
        new = []
        for i in range(self.m):
            row = []
            for j in range(self.n):
                if i == kk or j == kk:
                    row.append(-b[i][j])
                elif b[i][kk] > 0 and b[kk][j] > 0:
                    row.append(b[i][j] + b[i][kk] * b[kk][j])
                elif b[i][kk] < 0 and b[kk][j] < 0:
                    row.append(b[i][j] - b[i][kk] * b[kk][j])
                else:
                    row.append(b[i][j])
            new.append(row)
        result = ExchangeMatrix(new, skew_symmetrizer=self._skew_symmetrizer)
        if __debug__ and self._skew_symmetrizer is not None:
            d = self._skew_symmetrizer
            assert all(
                d[i] * result.rows[i][j] == -d[j] * result.rows[j][i]
                for i in range(self.n)
                for j in range(self.n)
            ), "mutation broke the skew-symmetrizer"
        return result

    def to_quiver(self, n_frozen: int | None = None) -> Quiver:
        """Decode a matrix with skew-symmetric principal part as a quiver."""
        if not self.is_skew_symmetric():
            raise NotSkewSymmetrizableError(
                "only skew-symmetric matrices encode quivers"
            )
        arrows: dict[tuple[int, int], int] = {}
        for i in range(self.m):
            for j in range(self.n):
                v = self.rows[i][j]
                if v > 0:
                    arrows[(i + 1, j + 1)] = v
                elif v < 0 and i >= self.n:
                    # mutable -> frozen arrows have no matrix row of their own
                    arrows[(j + 1, i + 1)] = -v
        return Quiver(self.n, self.m - self.n, arrows)

    def permuted(self, perm: tuple[int, ...]) -> "ExchangeMatrix":
        """Simultaneously permute mutable indices (rows 1..n and all columns).

        ``perm[i]`` is the new position (0-based) of old mutable index i.
        Frozen rows are never reordered.
        """
        n, m = self.n, self.m
        new = [[0] * n for _ in range(m)]
        for i in range(m):
            ni = perm[i] if i < n else i
            for j in range(n):
                new[ni][perm[j]] = self.rows[i][j]
        return ExchangeMatrix(new)

    def canonical_form(self) -> tuple[tuple[int, ...], ...]:
        """Lexicographically minimal row tuple over simultaneous permutations."""
        best = None
        for p in permutations(range(self.n)):
            cand = self.permuted(p).rows
            if best is None or cand < best:
                best = cand
        return best if best is not None else self.rows

    def __eq__(self, other) -> bool:
        return isinstance(other, ExchangeMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"<ExchangeMatrix {list(map(list, self.rows))}>"

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "ExchangeMatrix":
        try:
            return cls(data)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad matrix JSON: {exc}") from exc


def mutation_class(
    b: ExchangeMatrix, budget: int = 1000
) -> tuple[list[ExchangeMatrix], bool]:
    """BFS over the mutation orbit, up to simultaneous permutation of mutable
    indices. Returns (representatives, exceeded): the full class and False if
    its size fits the budget, otherwise the partial set and True.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    seen = {b.canonical_form(): b}
    frontier = [b]
    while frontier:
        nxt = []
        for mat in frontier:
            for k in range(1, mat.n + 1):
                mutated = mat.mutate(k)
                key = mutated.canonical_form()
                if key not in seen:
                    if len(seen) >= budget:
                        return list(seen.values()), True
                    seen[key] = mutated
                    nxt.append(mutated)
        frontier = nxt
    return list(seen.values()), False


# -- diagrams ------------------------------------------------------------------


class Diagram:
    """Weighted directed graph of a matrix: edge i->j iff b_ij > 0, weight |b_ij b_ji|."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Mapping[tuple[int, int], int]):
        self.n = n
        self.edges = dict(edges)
        if any(w <= 0 for w in self.edges.values()):
            raise ValueError("edge weights must be positive")

    @classmethod
    def of_matrix(cls, b: ExchangeMatrix) -> "Diagram":
        edges = {}
        for i in range(b.n):
            for j in range(b.n):
                if b.rows[i][j] > 0:
                    edges[(i + 1, j + 1)] = abs(b.rows[i][j] * b.rows[j][i])
        return cls(b.n, edges)

    def undirected_weights(self) -> dict[frozenset[int], int]:
        return {frozenset((i, j)): w for (i, j), w in self.edges.items()}

    def to_dot(self) -> str:
        lines = ["digraph diagram {"]
        for v in range(1, self.n + 1):
            lines.append(f"  {v};")
        for (s, t), w in sorted(self.edges.items()):
            label = f' [label="{w}"]' if w > 1 else ""
            lines.append(f"  {s} -> {t}{label};")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"<Diagram n={self.n} edges={sorted(self.edges.items())}>"


def diagram_of(b: ExchangeMatrix) -> Diagram:
    return Diagram.of_matrix(b)


# -- quiver products -----------------------------------------------------------


def _require_bipartite_unfrozen(q: Quiver, name: str) -> None:
    if q.n_frozen:
        raise NotBipartiteError(f"{name} must have no frozen vertices")
    if not q.is_bipartite():
        raise NotBipartiteError(f"{name} must have every vertex a source or sink")


def product_vertex_order(q: Quiver, q2: Quiver) -> list[tuple[int, int]]:
    """Flat ordering of I x I' used by the product quivers (i major)."""
    return [(i, i2) for i in range(1, q.m + 1) for i2 in range(1, q2.m + 1)]


def tensor_product(q: Quiver, q2: Quiver) -> Quiver:
    """Tensor product on I x I': arrows copy one factor when the other
    coordinate agrees."""
    _require_bipartite_unfrozen(q, "left factor")
    _require_bipartite_unfrozen(q2, "right factor")
    order = product_vertex_order(q, q2)
    idx = {v: i + 1 for i, v in enumerate(order)}
    arrows: dict[tuple[int, int], int] = {}
    for (s, t), mult in q2.arrows.items():
        for i in range(1, q.m + 1):
            arrows[(idx[(i, s)], idx[(i, t)])] = mult
    for (s, t), mult in q.arrows.items():
        for i2 in range(1, q2.m + 1):
            arrows[(idx[(s, i2)], idx[(t, i2)])] = mult
    return Quiver(q.m * q2.m, 0, arrows)


def square_product(q: Quiver, q2: Quiver) -> Quiver:
    """Square product: tensor product with arrows reversed inside the rows
    {i} x Q' for sinks i of Q and the columns Q x {i'} for sources i' of Q'."""
    _require_bipartite_unfrozen(q, "left factor")
    _require_bipartite_unfrozen(q2, "right factor")
    tensor = tensor_product(q, q2)
    order = product_vertex_order(q, q2)
    by_index = {i + 1: v for i, v in enumerate(order)}
    _, sinks = q.sources_and_sinks()
    sources2, _ = q2.sources_and_sinks()
    arrows: dict[tuple[int, int], int] = {}
    for (s, t), mult in tensor.arrows.items():
        (i, i2), (j, j2) = by_index[s], by_index[t]
        flip = False
        if i == j and i in sinks:
            flip = not flip
        if i2 == j2 and i2 in sources2:
            flip = not flip
        if flip:
            arrows[(t, s)] = arrows.get((t, s), 0) + mult
        else:
            arrows[(s, t)] = arrows.get((s, t), 0) + mult
    return Quiver(tensor.n_mutable, 0, arrows)


