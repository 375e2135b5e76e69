"""Combinatorics and addressing for diamond hierarchical graphs.

The generation-n graph D_n is built by recursively replacing each edge of
a two-root skeleton with b parallel branches of s serial edges.  Edges at
depth k are addressed by k (branch, segment) pairs; a vertex is addressed
by its parent edge (the depth g-1 edge whose replacement created it), the
branch it sits on, and its slot along that branch.  Both addresses encode
to flat integers, which is what the keyed RNG and the array recursions
index by.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import RangeOverflowError, ResourceLimitError

MAX_EXACT = 2 ** 63 - 1       # exact counts must stay addressable as int64
PATH_ENUM_LIMIT = 10 ** 6     # enumerate_paths refuses beyond this many paths


@dataclass(frozen=True)
class GraphParams:
    """Branching b, segmenting s, and generation n of the graph D_n."""

    b: int
    s: int
    n: int

    def __post_init__(self):
        if self.b < 2 or self.s < 2:
            raise ValueError(f"need b >= 2 and s >= 2, got b={self.b}, s={self.s}")
        if self.n < 0:
            raise ValueError(f"need n >= 0, got n={self.n}")

    @property
    def bs(self) -> int:
        return self.b * self.s

    def require_critical(self) -> None:
        if self.b != self.s:
            raise ValueError(f"critical-mode routine requires b == s, got b={self.b}, s={self.s}")


def _guarded(value: int, what: str) -> int:
    if value > MAX_EXACT:
        raise RangeOverflowError(f"{what} = {value} exceeds the supported integer range")
    return value


def edge_count(params: GraphParams) -> int:
    """|E_n| = (bs)^n."""
    return _guarded(params.bs ** params.n, "edge count")


def new_vertex_count(params: GraphParams, g: int) -> int:
    """Number of generation-g vertices, b(s-1)(bs)^(g-1)."""
    if not 1 <= g <= params.n:
        raise ValueError(f"generation g must satisfy 1 <= g <= n={params.n}, got {g}")
    return _guarded(params.b * (params.s - 1) * params.bs ** (g - 1), "vertex count")


def total_vertex_count(params: GraphParams) -> int:
    """All non-root vertices of D_n (geometric sum over generations)."""
    total = params.b * (params.s - 1) * (params.bs ** params.n - 1) // (params.bs - 1)
    return _guarded(total, "vertex count")


def generation_offset(params: GraphParams, g: int) -> int:
    """Vertices of generations < g; start of generation g in the flat layout."""
    if not 1 <= g <= params.n:
        raise ValueError(f"generation g must satisfy 1 <= g <= n={params.n}, got {g}")
    return params.b * (params.s - 1) * (params.bs ** (g - 1) - 1) // (params.bs - 1)


def path_count(params: GraphParams) -> int:
    """|Gamma_n|, satisfying |Gamma_0| = 1 and |Gamma_{k+1}| = b |Gamma_k|^s."""
    count = 1
    for _ in range(params.n):
        count = params.b * count ** params.s
        _guarded(count, "path count")
    return count


@dataclass(frozen=True)
class EdgeAddress:
    """Depth-k edge address: k nested (branch, segment) pairs, 1-based."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def depth(self) -> int:
        return len(self.pairs)

    def encode(self, params: GraphParams) -> int:
        """Mixed-radix flat index; branch is the more significant digit of each pair."""
        code = 0
        for i, j in self.pairs:
            if not (1 <= i <= params.b and 1 <= j <= params.s):
                raise ValueError(f"pair ({i}, {j}) out of range for b={params.b}, s={params.s}")
            code = code * params.bs + (i - 1) * params.s + (j - 1)
        return code

    @classmethod
    def decode(cls, params: GraphParams, depth: int, code: int) -> "EdgeAddress":
        if not 0 <= code < params.bs ** depth:
            raise ValueError(f"code {code} out of range for depth {depth}")
        pairs = []
        for _ in range(depth):
            code, digit = divmod(code, params.bs)
            i, j = divmod(digit, params.s)
            pairs.append((i + 1, j + 1))
        return cls(tuple(reversed(pairs)))

    def child(self, i: int, j: int) -> "EdgeAddress":
        return EdgeAddress(self.pairs + ((i, j),))


ROOT_EDGE = EdgeAddress(())


def child_edges(h: EdgeAddress, params: GraphParams) -> list[EdgeAddress]:
    """The bs addresses h x (i, j), ordered lexicographically in (i, j)."""
    if h.depth >= params.n:
        raise ValueError(f"edge at depth {h.depth} has no children in D_{params.n}")
    return [h.child(i, j) for i in range(1, params.b + 1) for j in range(1, params.s + 1)]


@dataclass(frozen=True)
class VertexAddress:
    """Generation-g vertex: parent edge at depth g-1, branch in [1,b], slot in [1,s-1]."""

    parent_edge: EdgeAddress
    branch: int
    slot: int

    def __post_init__(self):
        if self.branch < 1 or self.slot < 1:
            raise ValueError(f"branch and slot are 1-based, got ({self.branch}, {self.slot})")

    @property
    def generation(self) -> int:
        return self.parent_edge.depth + 1

    def within_generation_index(self, params: GraphParams) -> int:
        if self.branch > params.b or self.slot > params.s - 1:
            raise ValueError(f"vertex ({self.branch}, {self.slot}) out of range "
                             f"for b={params.b}, s={params.s}")
        pe = self.parent_edge.encode(params)
        return (pe * params.b + self.branch - 1) * (params.s - 1) + self.slot - 1

    def global_index(self, params: GraphParams) -> int:
        """Flat index over all vertices, generations laid out consecutively."""
        return generation_offset(params, self.generation) + self.within_generation_index(params)


Path = tuple[VertexAddress, ...]


def _paths_below(params: GraphParams, depth: int, edge: EdgeAddress) -> Iterator[Path]:
    # Directed paths across the sub-diamond rooted at `edge`, as vertex
    # sequences.  A path picks a branch of the first-level skeleton, then one
    # sub-path per segment, joined by the s-1 junction vertices on the branch.
    if depth == params.n:
        yield ()
        return
    for i in range(1, params.b + 1):
        junctions = [VertexAddress(edge, i, ell) for ell in range(1, params.s)]
        segment_paths = [list(_paths_below(params, depth + 1, edge.child(i, j)))
                         for j in range(1, params.s + 1)]

        def walk(j: int, prefix: Path) -> Iterator[Path]:
            for sub in segment_paths[j - 1]:
                joined = prefix + sub
                if j == params.s:
                    yield joined
                else:
                    yield from walk(j + 1, joined + (junctions[j - 1],))

        yield from walk(1, ())


def enumerate_paths(params: GraphParams) -> list[Path]:
    """All directed root-to-root paths of D_n, each as its visited vertices."""
    total = path_count(params)
    if total > PATH_ENUM_LIMIT:
        raise ResourceLimitError(f"{total} paths exceed the enumeration budget {PATH_ENUM_LIMIT}")
    return list(_paths_below(params, 0, ROOT_EDGE))
