"""Branch-and-bound enumeration of maximum cocliques on bit-row adjacency.

The engine is deliberately plain: a graph is a list of neighbor bitmasks,
a vertex set is an int, and branching follows ascending vertex index so
every run produces the same answer in the same order.  The upper bound is
a greedy clique cover of the candidate set; a clique can meet a coclique
in at most one vertex, so the number of cliques needed to cover the
candidates bounds how much a partial coclique can still grow.
"""

from __future__ import annotations

import time


class SearchTimeout(RuntimeError):
    """Raised when a search deadline expires; carries the best certificate."""

    def __init__(self, best_size: int, best_masks: list[int], elapsed: float):
        super().__init__(
            f"coclique search timed out after {elapsed:.1f}s "
            f"(best size found: {best_size})"
        )
        self.best_size = best_size
        self.best_masks = best_masks
        self.elapsed = elapsed


def bit_indices(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def is_coclique(rows: list[int], mask: int) -> bool:
    """True when no two vertices of ``mask`` are adjacent."""
    m = mask
    while m:
        low = m & -m
        if rows[low.bit_length() - 1] & mask:
            return False
        m ^= low
    return True


def clique_cover_size(rows: list[int], candidates: int, stop_at: int) -> int:
    """Greedily strip cliques off ``candidates``; stop early at ``stop_at``.

    Returns the number of cliques used, capped at ``stop_at``.  The exact
    cover size is irrelevant once it reaches the caller's threshold.
    """
    count = 0
    while candidates:
        count += 1
        if count >= stop_at:
            return count
        v = (candidates & -candidates).bit_length() - 1
        candidates &= ~(1 << v)
        grow = candidates & rows[v]
        while grow:
            w = (grow & -grow).bit_length() - 1
            candidates &= ~(1 << w)
            grow = (grow & ~(1 << w)) & rows[w]
    return count


def maximum_cocliques(
    rows: list[int],
    *,
    lower_seed: int = 0,
    deadline_s: float | None = None,
) -> tuple[int, list[int]]:
    """All maximum cocliques of the graph given by neighbor masks.

    Returns ``(alpha, masks)`` with the masks in ascending numeric order.
    ``lower_seed`` may carry a known coclique size (its witnesses are
    rediscovered by the search, so completeness is unaffected); sets
    smaller than the seed are pruned away early.
    """
    n = len(rows)
    best = lower_seed
    sols: list[int] = []
    start = time.monotonic()
    ticks = 0

    def branch(size: int, chosen: int, cand: int) -> None:
        nonlocal best, sols, ticks
        ticks += 1
        if deadline_s is not None and ticks % 1024 == 0:
            elapsed = time.monotonic() - start
            if elapsed > deadline_s:
                raise SearchTimeout(best, sorted(sols), elapsed)
        if not cand:
            if size > best:
                best = size
                sols = [chosen]
            elif size == best and size > 0:
                sols.append(chosen)
            return
        need = best - size
        if cand.bit_count() < need:
            return
        if need > 0 and clique_cover_size(rows, cand, need) < need:
            # the candidate set splits into fewer than `need` cliques, and
            # a clique contributes at most one vertex: cannot tie best
            return
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if size + rest.bit_count() < best:
                return
            above = rest ^ low
            branch(size + 1, chosen | low, above & ~rows[v])
            rest = above

    branch(0, 0, (1 << n) - 1)
    return best, sorted(sols)
