"""Polygon triangulations, flips, their quivers, and the Plucker correspondence.

Polygon vertices are labeled 1..d counterclockwise; "clockwise" inside a
triangle is resolved against that fixed orientation. Diagonals get quiver
labels 1..d-3 in lexicographic order of their endpoint pairs, sides get
d-2..2d-3 the same way.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    InvalidTriangulationError,
    NotADiagonalError,
    ParseError,
    SelfFoldedUnsupportedError,
)
from .exactalg import Context, RationalFn
from .quiver import ExchangeMatrix, Quiver
from .seed import Seed

Chord = tuple[int, int]


def _norm(i: int, j: int) -> Chord:
    return (i, j) if i < j else (j, i)


def _sides(d: int) -> list[Chord]:
    return sorted([_norm(i, i + 1) for i in range(1, d)] + [(1, d)])


def chords_cross(a: Chord, b: Chord) -> bool:
    """Strict interior crossing of two chords of a convex polygon."""
    if set(a) & set(b):
        return False
    (p, q), (r, s) = a, b
    inside_r = p < r < q
    inside_s = p < s < q
    return inside_r != inside_s


class PolygonTriangulation:
    """A triangulation of a convex d-gon, given by its d-3 diagonals."""

    __slots__ = ("d", "diagonals")

    def __init__(self, d: int, diagonals: Iterable[Sequence[int]]):
        if d < 3:
            raise InvalidTriangulationError("a polygon needs at least 3 vertices")
        self.d = d
        diags = set()
        for pair in diagonals:
            i, j = pair
            if not (1 <= i <= d and 1 <= j <= d) or i == j:
                raise InvalidTriangulationError(f"bad chord {(i, j)}")
            c = _norm(i, j)
            span = (c[1] - c[0]) % d
            if span == 1 or span == d - 1:
                raise InvalidTriangulationError(f"{c} is a side, not a diagonal")
            diags.add(c)
        if len(diags) != d - 3:
            raise InvalidTriangulationError(
                f"expected {d - 3} diagonals, got {len(diags)}"
            )
        diag_list = sorted(diags)
        for i, a in enumerate(diag_list):
            for b in diag_list[i + 1 :]:
                if chords_cross(a, b):
                    raise InvalidTriangulationError(f"diagonals {a} and {b} cross")
        self.diagonals = tuple(diag_list)

    def sides(self) -> list[Chord]:
        return _sides(self.d)

    def edges(self) -> set[Chord]:
        return set(self.sides()) | set(self.diagonals)

    def triangles(self) -> list[tuple[int, int, int]]:
        """The d-2 triangular faces, as ascending vertex triples."""
        edges = self.edges()
        faces = []
        verts = range(1, self.d + 1)
        for a in verts:
            for b in range(a + 1, self.d + 1):
                if (a, b) not in edges:
                    continue
                for c in range(b + 1, self.d + 1):
                    if (a, c) in edges and (b, c) in edges:
                        faces.append((a, b, c))
        if len(faces) != self.d - 2:
            raise InvalidTriangulationError("face count mismatch")
        return faces

    def flip(self, diag: Sequence[int]) -> "PolygonTriangulation":
        """Replace a diagonal by the opposite diagonal of its quadrilateral."""
        old = _norm(*diag)
        if old not in self.diagonals:
            raise NotADiagonalError(f"{old} is not a diagonal of this triangulation")
        adjacent = [t for t in self.triangles() if set(old) <= set(t)]
        assert len(adjacent) == 2
        w, x, y, z = sorted(set(adjacent[0]) | set(adjacent[1]))
        new = (x, z) if old == (w, y) else (w, y)
        diags = [c for c in self.diagonals if c != old] + [new]
        return PolygonTriangulation(self.d, diags)

    def flip_quadrilateral(self, diag: Sequence[int]) -> tuple[int, int, int, int]:
        """The cyclically ordered quadrilateral that the flip acts in."""
        old = _norm(*diag)
        if old not in self.diagonals:
            raise NotADiagonalError(f"{old} is not a diagonal of this triangulation")
        adjacent = [t for t in self.triangles() if set(old) <= set(t)]
        w, x, y, z = sorted(set(adjacent[0]) | set(adjacent[1]))
        return (w, x, y, z)

    def vertex_labels(self) -> dict[Chord, int]:
        """Quiver labels: diagonals first (lex order), then sides."""
        labels = {}
        for idx, c in enumerate(self.diagonals, start=1):
            labels[c] = idx
        for idx, s in enumerate(self.sides(), start=self.d - 2):
            labels[s] = idx
        return labels

    def quiver(self) -> Quiver:
        """Inscribe a clockwise-oriented triangle in every face.

        For a face a < b < c (counterclockwise boundary a -> b -> c) the
        clockwise inscribed arrows are ab -> ac -> bc -> ab.
        """
        labels = self.vertex_labels()
        n = self.d - 3
        arrows: dict[tuple[int, int], int] = {}
        for a, b, c in self.triangles():
            cycle = [_norm(a, b), _norm(a, c), _norm(b, c)]
            for s, t in zip(cycle, cycle[1:] + cycle[:1]):
                ls, lt = labels[s], labels[t]
                if ls > n and lt > n:
                    continue
                arrows[(ls, lt)] = arrows.get((ls, lt), 0) + 1
        return Quiver(n, self.d, arrows)

    def abstract(self) -> "AbstractTriangulation":
        """The abstract (surface) form with clockwise-ordered side triples."""
        labels = self.vertex_labels()
        triangles = []
        for a, b, c in self.triangles():
            triangles.append(
                (labels[_norm(a, b)], labels[_norm(a, c)], labels[_norm(b, c)])
            )
        return AbstractTriangulation(self.d - 3, self.d, triangles)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolygonTriangulation)
            and self.d == other.d
            and self.diagonals == other.diagonals
        )

    def __hash__(self) -> int:
        return hash((self.d, self.diagonals))

    def __repr__(self) -> str:
        return f"<PolygonTriangulation d={self.d} {list(self.diagonals)}>"

    def to_json_dict(self) -> dict:
        return {"d": self.d, "diagonals": [list(c) for c in self.diagonals]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "PolygonTriangulation":
        try:
            return cls(int(data["d"]), [tuple(p) for p in data["diagonals"]])
        except (KeyError, TypeError, ValueError, InvalidTriangulationError) as exc:
            if isinstance(exc, InvalidTriangulationError):
                raise
            raise ParseError(f"bad triangulation JSON: {exc}") from exc

    @classmethod
    def fan(cls, d: int, apex: int = 1) -> "PolygonTriangulation":
        diags = []
        for j in range(1, d + 1):
            c = _norm(apex, j)
            span = (c[1] - c[0]) % d
            if j != apex and span != 1 and span != d - 1:
                diags.append(c)
        return cls(d, diags)


class AbstractTriangulation:
    """Triangle list of a triangulated surface: arcs 1..n, boundary n+1..n+c,
    each triangle a cyclically ordered (clockwise) triple of side labels."""

    __slots__ = ("n_arcs", "n_boundary", "triangles")

    def __init__(self, n_arcs: int, n_boundary: int, triangles: Iterable[Sequence[int]]):
        self.n_arcs = n_arcs
        self.n_boundary = n_boundary
        self.triangles = tuple(tuple(t) for t in triangles)
        counts = {label: 0 for label in range(1, n_arcs + n_boundary + 1)}
        for t in self.triangles:
            if len(t) != 3:
                raise InvalidTriangulationError(f"triangle {t} does not have 3 sides")
            if len(set(t)) != 3:
                raise SelfFoldedUnsupportedError(
                    f"triangle {t} repeats a side (self-folded triangles unsupported)"
                )
            for label in t:
                if label not in counts:
                    raise InvalidTriangulationError(f"unknown side label {label}")
                counts[label] += 1
        for label, cnt in counts.items():
            if label <= n_arcs and cnt not in (1, 2):
                raise InvalidTriangulationError(
                    f"arc {label} lies in {cnt} triangles, expected 1 or 2"
                )
            if label > n_arcs and cnt != 1:
                raise InvalidTriangulationError(
                    f"boundary segment {label} lies in {cnt} triangles, expected 1"
                )

    def exchange_matrix(self) -> ExchangeMatrix:
        """Signed count of clockwise adjacencies, rows for arcs then boundary."""
        n, c = self.n_arcs, self.n_boundary
        rows = [[0] * n for _ in range(n + c)]
        for t in self.triangles:
            for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                # b follows a in clockwise order
                if b <= n:
                    rows[a - 1][b - 1] += 1
                if a <= n:
                    rows[b - 1][a - 1] -= 1
        return ExchangeMatrix(rows)

    def to_json_dict(self) -> dict:
        return {
            "arcs": self.n_arcs,
            "boundary": self.n_boundary,
            "triangles": [list(t) for t in self.triangles],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "AbstractTriangulation":
        try:
            return cls(
                int(data["arcs"]),
                int(data["boundary"]),
                [tuple(t) for t in data["triangles"]],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad abstract triangulation JSON: {exc}") from exc


# -- enumeration ------------------------------------------------------------------


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Independent Catalan oracle via the convolution recurrence."""
    if n <= 1:
        return 1
    return sum(catalan(i) * catalan(n - 1 - i) for i in range(n))


def all_triangulations(d: int) -> list[PolygonTriangulation]:
    """Every triangulation of the d-gon, by recursive apex choice."""

    def rec(vertices: tuple[int, ...]) -> list[frozenset[Chord]]:
        if len(vertices) < 3:
            return [frozenset()]
        first, last = vertices[0], vertices[-1]
        out = []
        for idx in range(1, len(vertices) - 1):
            apex = vertices[idx]
            extra = []
            if idx > 1:
                extra.append(_norm(first, apex))
            if idx < len(vertices) - 2:
                extra.append(_norm(apex, last))
            for left in rec(vertices[: idx + 1]):
                for right in rec(vertices[idx:]):
                    out.append(left | right | frozenset(extra))
        return out

    seen = {}
    for diags in rec(tuple(range(1, d + 1))):
        if diags not in seen:
            seen[diags] = PolygonTriangulation(d, [tuple(c) for c in diags])
    return list(seen.values())


@dataclass
class FlipGraph:
    """All triangulations of a polygon joined by flips."""

    d: int
    triangulations: list[PolygonTriangulation]
    edges: set[tuple[int, int]]

    @property
    def n_vertices(self) -> int:
        return len(self.triangulations)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_connected(self) -> bool:
        if not self.triangulations:
            return True
        adj: dict[int, set[int]] = {i: set() for i in range(self.n_vertices)}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n_vertices

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "vertices": [t.to_json_dict()["diagonals"] for t in self.triangulations],
            "edges": sorted(list(e) for e in self.edges),
        }

    def to_dot(self) -> str:
        lines = ["graph flips {"]
        for i in range(self.n_vertices):
            lines.append(f"  {i};")
        for i, j in sorted(self.edges):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines)


def flip_graph(d: int) -> FlipGraph:
    if not (4 <= d <= 12):
        raise ValueError("flip graphs are enumerated for 4 <= d <= 12")
    tris = all_triangulations(d)
    index = {t: i for i, t in enumerate(tris)}
    edges = set()
    for t in tris:
        i = index[t]
        for diag in t.diagonals:
            j = index[t.flip(diag)]
            edges.add((min(i, j), max(i, j)))
    return FlipGraph(d, tris, edges)


# -- flip vs mutation ---------------------------------------------------------------


@dataclass
class FlipMutationReport:
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {"checked": self.checked, "ok": self.ok, "mismatches": self.mismatches}


def flip_is_mutation(t: PolygonTriangulation) -> FlipMutationReport:
    """Check Q(flip_k(T)) == mu_k(Q(T)) for every diagonal, up to the vertex
    relabeling induced by re-sorting the diagonals."""
    report = FlipMutationReport()
    q = t.quiver()
    labels = t.vertex_labels()
    for diag in t.diagonals:
        k = labels[diag]
        flipped = t.flip(diag)
        new_labels = flipped.vertex_labels()
        # translate the flipped quiver's labels back: shared diagonals map to
        # their old positions, the replacement diagonal takes position k
        perm = {}
        for c, new_label in new_labels.items():
            if c in labels:
                perm[new_label] = labels[c]
            else:
                perm[new_label] = k
        got = flipped.quiver().relabeled(perm)
        expected = q.mutate(k)
        report.checked += 1
        if got != expected:
            report.mismatches.append(f"diagonal {diag}: {got} != {expected}")
    return report


# -- Plucker correspondence -------------------------------------------------------------


@dataclass
class PluckerReport:
    d: int
    relations_checked: int
    non_plucker: list[str]
    variable_count: int
    expected_variables: int
    cluster_count: int
    expected_clusters: int
    bijection_consistent: bool

    @property
    def ok(self) -> bool:
        return (
            not self.non_plucker
            and self.bijection_consistent
            and self.variable_count == self.expected_variables
            and self.cluster_count == self.expected_clusters
        )

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "relations_checked": self.relations_checked,
            "all_three_term": not self.non_plucker,
            "non_plucker": self.non_plucker,
            "variables": self.variable_count,
            "expected_variables": self.expected_variables,
            "clusters": self.cluster_count,
            "expected_clusters": self.expected_clusters,
            "bijection_consistent": self.bijection_consistent,
            "ok": self.ok,
        }


def plucker_seed(t: PolygonTriangulation) -> tuple[Seed, Context]:
    """The seed of a triangulation with variables named by endpoint pairs."""
    names = [f"p{i}{j}" for i, j in t.diagonals] + [f"p{i}{j}" for i, j in t.sides()]
    ctx = Context(names)
    matrix = t.quiver().to_matrix()
    cluster = ctx.ratfn_gens()[: matrix.n]
    return Seed(ctx, cluster, matrix), ctx


def plucker_check(d: int) -> PluckerReport:
    """Walk the whole flip graph with the seed attached to a fan triangulation
    and verify that every exchange relation fired by a flip is the literal
    three-term relation on its quadrilateral, that diagonals and cluster
    variables correspond bijectively, and that clusters match triangulations.
    """
    if not (4 <= d <= 9):
        raise ValueError("plucker_check supports 4 <= d <= 9")
    t0 = PolygonTriangulation.fan(d)
    seed0, ctx = plucker_seed(t0)
    side_vars = {
        s: RationalFn.from_laurent(ctx.var(d - 3 + idx))
        for idx, s in enumerate(t0.sides())
    }
    # variable attached to each diagonal, grown as the walk discovers them
    var_of: dict[Chord, RationalFn] = {
        c: seed0.cluster[i] for i, c in enumerate(t0.diagonals)
    }
    consistent = True
    non_plucker: list[str] = []
    relations = 0
    clusters: set = set()

    def value(pair: Chord, cluster_map) -> RationalFn:
        if pair in side_vars:
            return side_vars[pair]
        return cluster_map[pair]

    # BFS state: triangulation plus the map diagonal -> current variable
    start_map = {c: seed0.cluster[i] for i, c in enumerate(t0.diagonals)}
    queue = [(t0, start_map)]
    seen = {t0}
    clusters.add(frozenset(start_map.values()))
    while queue:
        t, cmap = queue.pop()
        for diag in t.diagonals:
            w, x, y, z = t.flip_quadrilateral(diag)
            flipped = t.flip(diag)
            new_diag = next(c for c in flipped.diagonals if c not in t.diagonals)
            old_var = cmap[diag]
            # the three-term relation on the quadrilateral determines the
            # new variable
            rhs = value(_norm(w, x), cmap) * value(_norm(y, z), cmap) + value(
                _norm(w, z), cmap
            ) * value(_norm(x, y), cmap)
            new_var = rhs / old_var
            relations += 1
            # cross-check: the quiver-driven exchange relation fired by this
            # flip must produce the same variable
            labels = t.vertex_labels()
            seed_t = Seed(ctx, [cmap[c] for c in t.diagonals], t.quiver().to_matrix())
            mutated = seed_t.mutate(labels[diag])
            if mutated.cluster[labels[diag] - 1] != new_var:
                non_plucker.append(
                    f"flip of {diag} in quad {(w, x, y, z)} is not the three-term relation"
                )
            if new_diag in var_of:
                if var_of[new_diag] != new_var:
                    consistent = False
            else:
                var_of[new_diag] = new_var
            new_map = {c: v for c, v in cmap.items() if c != diag}
            new_map[new_diag] = new_var
            clusters.add(frozenset(new_map.values()))
            if flipped not in seen:
                seen.add(flipped)
                queue.append((flipped, new_map))
    n_diagonals = d * (d - 3) // 2
    distinct_vars = len(set(var_of.values()))
    if distinct_vars != len(var_of):
        consistent = False
    return PluckerReport(
        d=d,
        relations_checked=relations,
        non_plucker=non_plucker,
        variable_count=distinct_vars,
        expected_variables=n_diagonals,
        cluster_count=len(clusters),
        expected_clusters=catalan(d - 2),
        bijection_consistent=consistent,
    )
