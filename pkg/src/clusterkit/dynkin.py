"""Finite-type Dynkin diagram catalog and shape recognition.

The catalog stores Cartan matrices in Bourbaki numbering, the incidence
matrix (2*I - Cartan), Coxeter numbers, and a bipartition of the vertices
obtained by 2-coloring with vertex 1 in the minus class.
"""

from __future__ import annotations

import re

from .errors import NotSimplyLacedError, ParseError
from .quiver import Diagram, Quiver

COXETER_NUMBERS = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": {6: 12, 7: 18, 8: 30}.get,
    "F": {4: 12}.get,
    "G": {2: 6}.get,
}


def _tree_edges(letter: str, rank: int) -> list[tuple[int, int]]:
    if letter in "ABC":
        return [(i, i + 1) for i in range(1, rank)]
    if letter == "D":
        return [(i, i + 1) for i in range(1, rank - 2)] + [
            (rank - 2, rank - 1),
            (rank - 2, rank),
        ]
    if letter == "E":
        # Bourbaki: path 1-3-4-5-...-rank with node 2 attached to 4
        path = [(1, 3)] + [(i, i + 1) for i in range(3, rank)]
        return path + [(2, 4)]
    if letter == "F":
        return [(1, 2), (2, 3), (3, 4)]
    if letter == "G":
        return [(1, 2)]
    raise ValueError(letter)


class DynkinDiagram:
    """A finite-type Dynkin diagram with its standard combinatorial data."""

    __slots__ = ("letter", "rank", "cartan", "incidence", "coxeter", "plus", "minus")

    def __init__(self, letter: str, rank: int):
        letter = letter.upper()
        valid = {
            "A": rank >= 1,
            "B": rank >= 2,
            "C": rank >= 2,
            "D": rank >= 4,
            "E": rank in (6, 7, 8),
            "F": rank == 4,
            "G": rank == 2,
        }
        if letter not in valid or not valid[letter]:
            raise ValueError(f"no Dynkin diagram {letter}{rank}")
        self.letter = letter
        self.rank = rank
        cartan = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
        for i, j in _tree_edges(letter, rank):
            cartan[i - 1][j - 1] = -1
            cartan[j - 1][i - 1] = -1
        # multiple bonds: row index = the root whose length shrinks the pairing
        if letter == "B":
            cartan[rank - 1][rank - 2] = -2
        elif letter == "C":
            cartan[rank - 2][rank - 1] = -2
        elif letter == "F":
            cartan[2][1] = -2
        elif letter == "G":
            cartan[1][0] = -3
        self.cartan = tuple(tuple(r) for r in cartan)
        self.incidence = tuple(
            tuple((2 if i == j else 0) - cartan[i][j] for j in range(rank))
            for i in range(rank)
        )
        h = COXETER_NUMBERS[letter]
        self.coxeter = h(rank)  # type: ignore[operator]
        # 2-color the tree; vertex 1 goes to the minus class
        color = {1: -1}
        stack = [1]
        adj: dict[int, list[int]] = {v: [] for v in range(1, rank + 1)}
        for i, j in _tree_edges(letter, rank):
            adj[i].append(j)
            adj[j].append(i)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in color:
                    color[w] = -color[v]
                    stack.append(w)
        self.minus = frozenset(v for v, c in color.items() if c == -1)
        self.plus = frozenset(v for v, c in color.items() if c == 1)

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"

    def epsilon(self, i: int) -> int:
        return 1 if i in self.plus else -1

    def is_simply_laced(self) -> bool:
        return self.letter in "ADE"

    def edges(self) -> list[tuple[int, int]]:
        return _tree_edges(self.letter, self.rank)

    def bipartite_quiver(self) -> Quiver:
        """The orientation with every plus vertex a source and minus a sink."""
        if not self.is_simply_laced():
            raise NotSimplyLacedError(f"{self.name} is not simply laced")
        arrows = {}
        for i, j in self.edges():
            src, tgt = (i, j) if self.epsilon(i) == 1 else (j, i)
            arrows[(src, tgt)] = 1
        return Quiver(self.rank, 0, arrows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DynkinDiagram)
            and self.letter == other.letter
            and self.rank == other.rank
        )

    def __hash__(self) -> int:
        return hash((self.letter, self.rank))

    def __repr__(self) -> str:
        return f"<DynkinDiagram {self.name}>"


def dynkin(name: str) -> DynkinDiagram:
    """Parse names like ``A2``, ``D4``, ``E8``."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", name)
    if not m:
        raise ParseError(f"bad Dynkin name {name!r}")
    try:
        return DynkinDiagram(m.group(1), int(m.group(2)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def recognize_dynkin(d: Diagram) -> tuple[str, int] | None:
    """Match the underlying weighted graph (orientation ignored) against the
    finite-type shapes. Returns (letter, rank) or None.

    The weighted graph cannot tell B from C (same shape, same weights); such
    paths are reported as type B.
    """
    n = d.n
    weights = d.undirected_weights()
    if len(weights) != n - 1:
        return None  # a Dynkin diagram is a tree
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for pair in weights:
        i, j = tuple(pair)
        adj[i].add(j)
        adj[j].add(i)
    # connectivity
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    if len(seen) != n:
        return None
    heavy = {pair: w for pair, w in weights.items() if w != 1}
    if any(w >= 4 for w in heavy.values()) or len(heavy) > 1:
        return None
    degrees = sorted(len(adj[v]) for v in adj)
    is_path = n == 1 or (degrees[-1] <= 2 and degrees.count(1) == 2)
    if heavy:
        (pair, w), = heavy.items()
        if not is_path:
            return None
        if w == 3:
            return ("G", 2) if n == 2 else None
        # w == 2: position of the heavy edge along the path
        ends = [v for v in adj if len(adj[v]) == 1]
        if n == 2:
            return ("B", 2)
        if any(v in pair for v in ends):
            return ("B", n)
        # F4: the heavy edge joins the two middle nodes of a 4-path
        if n == 4 and all(len(adj[v]) == 2 for v in pair):
            return ("F", 4)
        return None
    if is_path:
        return ("A", n)
    # trees with one branch vertex: D and E shapes
    branch = [v for v in adj if len(adj[v]) == 3]
    if len(branch) != 1 or any(len(adj[v]) > 3 for v in adj):
        return None
    center = branch[0]
    lengths = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = adj[cur] - {prev}
            if not nxt:
                break
            (step,) = nxt
            prev, cur = cur, step
            length += 1
        lengths.append(length)
    lengths.sort()
    if lengths[0] == 1 and lengths[1] == 1:
        return ("D", n)
    if lengths == [1, 2, 2]:
        return ("E", 6)
    if lengths == [1, 2, 3]:
        return ("E", 7)
    if lengths == [1, 2, 4]:
        return ("E", 8)
    return None
