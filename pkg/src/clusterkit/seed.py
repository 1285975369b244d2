"""Labeled seeds, seed mutation in both formalisms, and pattern exploration.

A geometric seed carries a cluster of rational functions in the ambient
variables x1..xm (frozen generators included) and an extended m x n exchange
matrix. A general seed carries a square matrix plus a coefficient tuple in an
explicit semifield. Every new cluster variable produced by geometric mutation
is checked to be a Laurent polynomial in the initial cluster; a failure would
be a bug in this package, not a counterexample, and raises immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Sequence

from .errors import (
    BudgetExceededError,
    FrozenVertexError,
    InvariantViolation,
    ParseError,
)
from .exactalg import Context, RationalFn, Semifield, TropicalSemifield, parse_ratfn
from .quiver import ExchangeMatrix, Quiver, diagram_of, mutation_class
from .dynkin import recognize_dynkin


class Seed:
    """A labeled seed, either geometric (extended matrix) or general (semifield)."""

    __slots__ = ("context", "cluster", "matrix", "coeffs", "semifield")

    def __init__(
        self,
        context: Context,
        cluster: Sequence[RationalFn],
        matrix: ExchangeMatrix,
        coeffs: tuple | None = None,
        semifield: Semifield | None = None,
    ):
        self.context = context
        self.cluster = tuple(cluster)
        self.matrix = matrix
        self.coeffs = tuple(coeffs) if coeffs is not None else None
        self.semifield = semifield
        if len(self.cluster) != matrix.n:
            raise ValueError("cluster length must equal the number of mutable vertices")
        if (coeffs is None) != (semifield is None):
            raise ValueError("coeffs and semifield must be given together")
        if coeffs is not None and matrix.m != matrix.n:
            raise ValueError("general seeds use a square exchange matrix")

    # -- construction ---------------------------------------------------------

    @classmethod
    def initial_geometric(cls, source: Quiver | ExchangeMatrix) -> "Seed":
        """The seed whose cluster is the generators x1..xn, frozen xn+1..xm."""
        matrix = source.to_matrix() if isinstance(source, Quiver) else source
        ctx = Context.numbered("x", matrix.m)
        cluster = ctx.ratfn_gens()[: matrix.n]
        return cls(ctx, cluster, matrix)

    @classmethod
    def initial_general(
        cls,
        matrix: ExchangeMatrix,
        semifield: Semifield,
        coeffs: Iterable,
        context: Context | None = None,
    ) -> "Seed":
        if context is None:
            context = Context.numbered("x", matrix.n)
        cluster = context.ratfn_gens()[: matrix.n]
        return cls(context, cluster, matrix, tuple(coeffs), semifield)

    @classmethod
    def general_from_extended(cls, matrix: ExchangeMatrix) -> "Seed":
        """Encode an extended matrix as a general seed over Trop(x_{n+1}..x_m).

        The coefficient tuple reads the frozen rows: y_j = prod x_i^{b_ij}.
        """
        n, m = matrix.n, matrix.m
        ctx = Context.numbered("x", m)
        trop = TropicalSemifield(m - n, positions=tuple(range(n, m)))
        coeffs = tuple(
            trop.element(tuple(matrix.rows[i][j] for i in range(n, m)))
            for j in range(n)
        )
        cluster = ctx.ratfn_gens()[:n]
        return cls(ctx, cluster, matrix.principal(), coeffs, trop)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def is_geometric(self) -> bool:
        return self.coeffs is None

    def frozen_variable(self, i: int) -> RationalFn:
        """The generator x_i for a frozen index i (n < i <= m)."""
        return RationalFn.from_laurent(self.context.var(i - 1))

    # -- mutation --------------------------------------------------------------

    def mutate(self, k: int) -> "Seed":
        if not (1 <= k <= self.n):
            if self.is_geometric and self.n < k <= self.matrix.m:
                raise FrozenVertexError(f"vertex {k} is frozen")
            raise IndexError(f"mutation index {k} out of range 1..{self.n}")
        if self.is_geometric:
            return self._mutate_geometric(k)
        return self._mutate_general(k)

    def _mutate_geometric(self, k: int) -> "Seed":
        b = self.matrix
        one = RationalFn.from_int(self.context, 1)
        pos, neg = one, one
        for i in range(1, b.m + 1):
            e = b[i, k]
            if e == 0:
                continue
            xi = self.cluster[i - 1] if i <= self.n else self.frozen_variable(i)
            if e > 0:
                pos = pos * xi**e
            else:
                neg = neg * xi ** (-e)
        new_var = (pos + neg) / self.cluster[k - 1]
        if new_var.as_laurent() is None:
            raise InvariantViolation(
                f"mutation at {k} produced a non-Laurent cluster variable "
                f"{new_var.render()}; this indicates a bug"
            )
        cluster = list(self.cluster)
        cluster[k - 1] = new_var
        return Seed(self.context, cluster, b.mutate(k))

    def _mutate_general(self, k: int) -> "Seed":
        b, p = self.matrix, self.semifield
        assert self.coeffs is not None and p is not None
        yk = self.coeffs[k - 1]
        yk_plus_one = p.add(yk, p.one())
        new_coeffs = []
        for j in range(1, self.n + 1):
            if j == k:
                new_coeffs.append(p.div(p.one(), yk))
                continue
            bkj = b[k, j]
            t = self.coeffs[j - 1]
            if bkj > 0:
                t = p.mul(t, p.pow(yk, bkj))
            t = p.mul(t, p.pow(yk_plus_one, -bkj))
            new_coeffs.append(t)
        one = RationalFn.from_int(self.context, 1)
        pos = p.to_field(yk, self.context)
        neg = one
        for i in range(1, self.n + 1):
            e = b[i, k]
            if e > 0:
                pos = pos * self.cluster[i - 1] ** e
            elif e < 0:
                neg = neg * self.cluster[i - 1] ** (-e)
        denom = p.to_field(yk_plus_one, self.context) * self.cluster[k - 1]
        new_var = (pos + neg) / denom
        cluster = list(self.cluster)
        cluster[k - 1] = new_var
        return Seed(self.context, cluster, b.mutate(k), tuple(new_coeffs), p)

    def mutate_path(self, path: Iterable[int]) -> "Seed":
        seed = self
        for k in path:
            seed = seed.mutate(k)
        return seed

    # -- identification ----------------------------------------------------------

    def canonical_key(self):
        """Canonical form under simultaneous permutation of the mutable indices."""
        n = self.n
        renders = [r.render() for r in self.cluster]
        best = None
        for perm in permutations(range(n)):
            cl = [""] * n
            for i in range(n):
                cl[perm[i]] = renders[i]
            key = (tuple(cl), self.matrix.permuted(perm).rows)
            if best is None or key < best:
                best = key
        return best

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Seed)
            and self.cluster == other.cluster
            and self.matrix == other.matrix
            and self.coeffs == other.coeffs
        )

    def __repr__(self) -> str:
        vars_ = ", ".join(r.render() for r in self.cluster)
        return f"<Seed ({vars_})>"

    # -- serialization -------------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "cluster": [r.render() for r in self.cluster],
            "matrix": self.matrix.to_json(),
            "frozen": list(self.context.names[self.n : self.matrix.m]),
        }
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "Seed":
        try:
            matrix = ExchangeMatrix.from_json(data["matrix"])
            cluster_strs = list(data["cluster"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad seed JSON: {exc}") from exc
        if len(cluster_strs) != matrix.n:
            raise ParseError("cluster length does not match matrix columns")
        ctx = Context.numbered("x", matrix.m)
        cluster = [parse_ratfn(ctx, s) for s in cluster_strs]
        return cls(ctx, cluster, matrix)


# -- Laurent verification ----------------------------------------------------------


@dataclass
class LaurentReport:
    """Outcome of expressing mutated cluster variables in the initial cluster."""

    checked: int = 0
    all_laurent: bool = True
    all_positive: bool = True
    failures: list[str] = field(default_factory=list)
    negative_examples: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "all_laurent": self.all_laurent,
            "all_positive_coefficients": self.all_positive,
            "failures": self.failures,
            "negative_coefficient_examples": self.negative_examples,
        }


def verify_laurent(initial: Seed, path: Sequence[int], budget: int = 10_000) -> LaurentReport:
    """Mutate along ``path`` and check every produced cluster variable.

    Laurent failures are collected (they would indicate a bug); coefficient
    positivity is recorded as an observation.
    """
    if len(path) > budget:
        raise BudgetExceededError(f"path length {len(path)} exceeds budget {budget}")
    report = LaurentReport()
    seed = initial
    for k in path:
        try:
            seed = seed.mutate(k)
        except InvariantViolation as exc:
            report.all_laurent = False
            report.failures.append(str(exc))
            return report
        var = seed.cluster[k - 1]
        report.checked += 1
        lp = var.as_laurent()
        if lp is None:
            report.all_laurent = False
            report.failures.append(var.render())
        elif any(c < 0 for c in lp.terms.values()):
            report.all_positive = False
            report.negative_examples.append(var.render())
    return report


# -- exchange graphs -----------------------------------------------------------------


@dataclass
class ExchangeGraph:
    """Unlabeled seeds (simultaneous-permutation classes) joined by mutations."""

    seeds: list[Seed]
    edges: set[tuple[int, int]]

    @property
    def n_vertices(self) -> int:
        return len(self.seeds)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self.degrees())

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return [sorted(nbrs) for nbrs in adj]

    def to_json_dict(self) -> dict:
        return {
            "vertices": [[r.render() for r in s.cluster] for s in self.seeds],
            "edges": sorted(list(e) for e in self.edges),
            "adjacency": self.adjacency(),
        }

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for i in range(self.n_vertices):
            lines.append(f"  {i};")
        for i, j in sorted(self.edges):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines)


def exchange_graph(initial: Seed, budget: int = 500) -> tuple[ExchangeGraph, bool]:
    """BFS over unlabeled seeds. Returns the graph and an exceeded flag; when
    the flag is set the graph is the explored portion only."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    start_key = initial.canonical_key()
    index = {start_key: 0}
    seeds = [initial]
    edges: set[tuple[int, int]] = set()
    frontier = [(initial, 0)]
    exceeded = False
    while frontier:
        nxt = []
        for seed, i in frontier:
            for k in range(1, seed.n + 1):
                neighbor = seed.mutate(k)
                key = neighbor.canonical_key()
                j = index.get(key)
                if j is None:
                    if len(seeds) >= budget:
                        exceeded = True
                        continue
                    j = len(seeds)
                    index[key] = j
                    seeds.append(neighbor)
                    nxt.append((neighbor, j))
                if i != j:
                    edges.add((min(i, j), max(i, j)))
        frontier = nxt
    return ExchangeGraph(seeds, edges), exceeded


# -- finite type -----------------------------------------------------------------------


@dataclass
class FiniteTypeReport:
    status: str  # "finite" | "infinite" | "exceeded"
    cartan_type: tuple[str, int] | None
    explored: int

    @property
    def type_name(self) -> str | None:
        if self.cartan_type is None:
            return None
        return f"{self.cartan_type[0]}{self.cartan_type[1]}"

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "type": self.type_name,
            "explored": self.explored,
        }


def is_finite_type(b: ExchangeMatrix, budget: int = 500) -> FiniteTypeReport:
    """Search the principal mutation class for a representative whose diagram
    is a finite-type shape.

    ``infinite`` is only reported when the whole class was enumerated without
    finding one; a budget stop reports ``exceeded``.
    """
    principal = b.principal()
    hit = recognize_dynkin(diagram_of(principal))
    if hit is not None:
        return FiniteTypeReport("finite", hit, 1)
    reps, exceeded = mutation_class(principal, budget)
    for rep in reps:
        hit = recognize_dynkin(diagram_of(rep))
        if hit is not None:
            return FiniteTypeReport("finite", hit, len(reps))
    return FiniteTypeReport("exceeded" if exceeded else "infinite", None, len(reps))


# -- cluster monomials ---------------------------------------------------------------


def cluster_monomials(graph: ExchangeGraph, max_degree: int) -> list[RationalFn]:
    """All products of 1..max_degree cluster variables drawn from a single
    cluster, deduplicated; degree 0 yields just the unit."""
    if not graph.seeds:
        return []
    ctx = graph.seeds[0].context
    if max_degree < 1:
        return [RationalFn.from_int(ctx, 1)]
    out: set[RationalFn] = set()
    for seed in graph.seeds:
        for d in range(1, max_degree + 1):
            for combo in combinations_with_replacement(seed.cluster, d):
                prod = combo[0]
                for f in combo[1:]:
                    prod = prod * f
                out.add(prod)
    return sorted(out, key=lambda r: (r.num.total_degree(), r.render()))
