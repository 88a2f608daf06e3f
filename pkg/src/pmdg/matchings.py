"""Perfect matchings of the complete graph on an even vertex set.

Vertices are 0..2k-1.  A matching is a sorted tuple of sorted pairs, so
the enumeration order of `enumerate_matchings` coincides with
lexicographic order on the tuple form and is deterministic across runs.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence

from .partitions import Partition

# Enumeration beyond this k is refused: (2k-1)!! grows too fast for the
# downstream bit-vector adjacency to stay within desk-scale memory.
ENUMERATION_CAP = 7


class CapExceeded(RuntimeError):
    """A size parameter exceeded a declared resource cap."""

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what}={value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


def double_factorial(n: int) -> int:
    """n!! for odd n >= -1, with (-1)!! = 1 by convention."""
    if not isinstance(n, int) or n < -1 or n % 2 == 0:
        raise ValueError(f"double_factorial needs an odd integer >= -1, got {n}")
    out = 1
    for m in range(n, 1, -2):
        out *= m
    return out


class Matching(tuple):
    """A perfect matching, stored as a sorted tuple of sorted pairs."""

    def __new__(cls, pairs: Sequence[Sequence[int]]):
        canon = tuple(sorted(tuple(sorted(p)) for p in pairs))
        seen: set[int] = set()
        for a, b in canon:
            if a == b:
                raise ValueError(f"degenerate pair ({a},{b})")
            seen.update((a, b))
        if len(seen) != 2 * len(canon):
            raise ValueError(f"pairs are not disjoint: {canon}")
        if seen and (min(seen) < 0 or max(seen) != 2 * len(canon) - 1 or len(seen) != max(seen) + 1):
            raise ValueError(f"vertices must be exactly 0..{2 * len(canon) - 1}: {canon}")
        return tuple.__new__(cls, canon)

    @property
    def n_vertices(self) -> int:
        return 2 * len(self)

    def partner(self) -> dict[int, int]:
        out = {}
        for a, b in self:
            out[a] = b
            out[b] = a
        return out

    def relabel(self, sigma: Sequence[int]) -> "Matching":
        """Image under a permutation of the vertex set (sigma[v] is the new name of v)."""
        return Matching(tuple((sigma[a], sigma[b])) for a, b in self)

    def shares_edge(self, other: "Matching") -> bool:
        return bool(set(self) & set(other))

    def __str__(self) -> str:
        if self.n_vertices <= 10:
            return "-".join(f"{a}{b}" for a, b in self)
        return "-".join(f"{a}.{b}" for a, b in self)

    @classmethod
    def from_string(cls, text: str) -> "Matching":
        pairs = []
        for tok in text.strip().split("-"):
            if "." in tok:
                a, b = tok.split(".")
            elif len(tok) == 2:
                a, b = tok[0], tok[1]
            else:
                raise ValueError(f"bad pair token {tok!r} in {text!r}")
            pairs.append((int(a), int(b)))
        return cls(pairs)


def iter_matchings(k: int, cap: int = ENUMERATION_CAP) -> Iterator[Matching]:
    """Yield all perfect matchings of K_{2k} in lexicographic order."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > cap:
        raise CapExceeded("k", k, cap)

    def gen(free: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
        if not free:
            yield ()
            return
        a = free[0]
        rest = free[1:]
        for i, b in enumerate(rest):
            head = ((a, b),)
            for tail in gen(rest[:i] + rest[i + 1:]):
                yield head + tail

    for pairs in gen(tuple(range(2 * k))):
        yield tuple.__new__(Matching, pairs)  # already canonical by construction


def enumerate_matchings(k: int, cap: int = ENUMERATION_CAP) -> list[Matching]:
    """All (2k-1)!! perfect matchings of K_{2k}, deterministic order."""
    return list(iter_matchings(k, cap))


def union_cycle_type(m: Matching, other: Matching) -> Partition:
    """Cycle structure of the union multigraph, halved.

    Overlaying two perfect matchings on the same vertex set gives disjoint
    even cycles; a shared edge is a doubled edge, i.e. a 2-cycle.  The
    returned partition of k records half of each cycle length, so shared
    edges appear as parts equal to 1.
    """
    if m.n_vertices != other.n_vertices:
        raise ValueError("matchings are on different vertex sets")
    pa, pb = m.partner(), other.partner()
    seen: set[int] = set()
    parts = []
    for start in range(m.n_vertices):
        if start in seen:
            continue
        length = 0
        v = start
        use_a = True
        while True:
            seen.add(v)
            v = pa[v] if use_a else pb[v]
            use_a = not use_a
            length += 1
            if v == start:
                break
        parts.append(length // 2)
    return Partition(parts)


def all_edges(k: int) -> list[tuple[int, int]]:
    """Edges of K_{2k} in lexicographic order (the column order used everywhere)."""
    return list(combinations(range(2 * k), 2))


def edge_index_map(k: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(all_edges(k))}


def matching_count(k: int) -> int:
    """(2k-1)!!, the number of perfect matchings of K_{2k}."""
    return double_factorial(2 * k - 1)
