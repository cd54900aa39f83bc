"""Exhaustive enumeration: connected coalition structures, brute-force solving,
and non-crossing partitions of an ordered boundary."""

from __future__ import annotations

from math import comb
from typing import Iterable, Iterator, NamedTuple

from .errors import CapExceededError
from .graph import Graph, canonical_structure
from .valuation import BoundaryConstraint, Valuation

__all__ = [
    "Solution",
    "enumerate_connected_structures",
    "count_connected_structures",
    "structure_count_bound",
    "solve_bruteforce",
    "enumerate_noncrossing",
    "noncrossing_labelling",
    "decode_labelling",
    "is_noncrossing",
]

DEFAULT_CAP = 12
NONCROSSING_CAP = 16


class Solution(NamedTuple):
    structure: tuple
    value: int


def _masks_to_structure(masks, ids=None):
    blocks = []
    for m in masks:
        block = []
        i = 0
        while m:
            if m & 1:
                block.append(i if ids is None else ids[i])
            m >>= 1
            i += 1
        blocks.append(frozenset(block))
    return canonical_structure(blocks)


def _to_mask(nodes) -> int:
    m = 0
    for u in nodes:
        m |= 1 << u
    return m


def _adj_masks(graph: Graph) -> list[int]:
    return [_to_mask(a) for a in graph.adj]


def _connected_sets(adj: list[int], root: int, allowed: int) -> Iterator[int]:
    """Every connected set containing ``root`` inside ``allowed``, once each.

    Binary branching on the lowest frontier node: take it (its neighbours join
    the frontier) or ban it for the rest of this branch.
    """
    start = 1 << root
    stack = [(start, adj[root] & allowed & ~start, 0)]
    while stack:
        sub, cand, banned = stack.pop()
        if not cand:
            yield sub
            continue
        low = cand & -cand
        v = low.bit_length() - 1
        # pushed in reverse so the "take" branch is explored first
        stack.append((sub, cand & ~low, banned | low))
        grown = sub | low
        stack.append((grown, (cand | adj[v]) & allowed & ~grown & ~banned, banned))


def _structures(adj: list[int], n: int, labels=None, label_masks=None, groups=None) -> Iterator[list[int]]:
    """Connected structures as lists of block masks.

    Optional boundary data: ``labels[u]`` is the required-block index of a
    terminal (or -1), ``label_masks[b]`` the nodes of required block ``b``, and
    ``groups[b]`` a group id; distinct blocks carrying the same group must not
    be adjacent.
    """
    full = (1 << n) - 1
    if labels is None:
        labels = [-1] * n
        label_masks = []
        groups = []
    term_mask = 0
    for u, lab in enumerate(labels):
        if lab >= 0:
            term_mask |= 1 << u
    nbhd = [_nbhd(adj, m) for m in label_masks]

    chosen: list[int] = []
    group_nbhd: dict[int, int] = {}

    def rec(remaining):
        if not remaining:
            yield list(chosen)
            return
        low = remaining & -remaining
        root = low.bit_length() - 1
        lab = labels[root]
        if lab >= 0:
            allowed = remaining & ~(term_mask & ~label_masks[lab]) & ~group_nbhd.get(groups[lab], 0)
            if label_masks[lab] & ~allowed:
                return
            candidates = _connected_sets(adj, root, allowed)
        else:
            candidates = _connected_sets(adj, root, remaining)
        for block in candidates:
            if lab >= 0:
                if label_masks[lab] & ~block:
                    continue
                b = lab
            else:
                touched = block & term_mask
                if touched:
                    t = touched & -touched
                    b = labels[t.bit_length() - 1]
                    if touched != label_masks[b]:
                        continue
                    if block & group_nbhd.get(groups[b], 0):
                        continue
                else:
                    b = -1
            chosen.append(block)
            if b >= 0:
                g = groups[b]
                prev = group_nbhd.get(g, 0)
                group_nbhd[g] = prev | _nbhd(adj, block)
                yield from rec(remaining & ~block)
                group_nbhd[g] = prev
            else:
                yield from rec(remaining & ~block)
            chosen.pop()

    yield from rec(full)


def _nbhd(adj, mask):
    out = 0
    m = mask
    while m:
        low = m & -m
        out |= adj[low.bit_length() - 1]
        m ^= low
    return out & ~mask


def enumerate_connected_structures(graph: Graph, cap: int = DEFAULT_CAP) -> Iterator[tuple]:
    """Yield every connected coalition structure of ``graph`` exactly once.

    The block holding the smallest unassigned node is grown over all its
    connected supersets among unassigned nodes, then the rest is recursed on.
    """
    if graph.n > cap:
        raise CapExceededError(f"n={graph.n} exceeds enumeration cap {cap}")
    adj = _adj_masks(graph)
    for masks in _structures(adj, graph.n):
        yield _masks_to_structure(masks)


def count_connected_structures(graph: Graph, cap: int = DEFAULT_CAP) -> int:
    if graph.n > cap:
        raise CapExceededError(f"n={graph.n} exceeds enumeration cap {cap}")
    adj = _adj_masks(graph)
    return sum(1 for _ in _structures(adj, graph.n))


def structure_count_bound(graph: Graph) -> int:
    """Upper bound C(e + n, n) on the number of connected structures."""
    return comb(graph.e + graph.n, graph.n)


def _constraint_arrays(n: int, constraint: BoundaryConstraint | None, groups=None):
    if constraint is None or not constraint.domain:
        return None, None, None
    labels = [-1] * n
    label_masks = []
    for b, block in enumerate(constraint.structure):
        for u in block:
            if not 0 <= u < n:
                raise ValueError(f"constraint node {u} outside node range")
            labels[u] = b
        label_masks.append(_to_mask(block))
    if groups is None:
        groups = list(range(len(label_masks)))
    return labels, label_masks, groups


def _best(adj, n, value_of, labels=None, label_masks=None, groups=None):
    best_val = None
    best_masks = None
    for masks in _structures(adj, n, labels, label_masks, groups):
        val = 0
        for m in masks:
            val += value_of(m)
        if best_val is None or val > best_val:
            best_val, best_masks = val, masks
    if best_val is None:
        return None
    return best_masks, best_val


def _best_memo(adj, n, value_of, labels=None, label_masks=None):
    """Same optimum and tie-breaking as :func:`_best` without group rules, but
    remembers the best completion of each set of unassigned nodes.

    Every block's validity depends on the block alone, so the best way to
    partition the unassigned nodes does not depend on how the rest was cut.
    """
    if labels is None:
        labels = [-1] * n
        label_masks = []
    term_mask = 0
    for u, lab in enumerate(labels):
        if lab >= 0:
            term_mask |= 1 << u
    memo: dict[int, tuple | None] = {0: (0, None)}

    def rec(remaining):
        if remaining in memo:
            return memo[remaining]
        low = remaining & -remaining
        root = low.bit_length() - 1
        lab = labels[root]
        if lab >= 0:
            allowed = remaining & ~(term_mask & ~label_masks[lab])
            if label_masks[lab] & ~allowed:
                memo[remaining] = None
                return None
        else:
            allowed = remaining
        best = None
        for block in _connected_sets(adj, root, allowed):
            if lab >= 0:
                if label_masks[lab] & ~block:
                    continue
            else:
                touched = block & term_mask
                if touched:
                    t = touched & -touched
                    if touched != label_masks[labels[t.bit_length() - 1]]:
                        continue
            rest = rec(remaining & ~block)
            if rest is None:
                continue
            val = value_of(block) + rest[0]
            if best is None or val > best[0]:
                best = (val, block)
        memo[remaining] = best
        return best

    top = rec((1 << n) - 1)
    if top is None:
        return None
    masks = []
    remaining = (1 << n) - 1
    while remaining:
        block = memo[remaining][1]
        masks.append(block)
        remaining &= ~block
    return masks, top[0]


def solve_bruteforce(graph: Graph, valuation: Valuation, constraint: BoundaryConstraint | None = None,
                     cap: int = DEFAULT_CAP) -> Solution | None:
    """Best connected structure by exhaustion; None if the constraint is infeasible.

    Ties keep the first structure in enumeration order. Completions of each
    set of unassigned nodes are solved once and reused.
    """
    if graph.n > cap:
        raise CapExceededError(f"n={graph.n} exceeds enumeration cap {cap}")
    if graph.n == 0:
        return Solution((), 0)
    adj = _adj_masks(graph)
    labels, label_masks, _ = _constraint_arrays(graph.n, constraint)
    cache: dict[int, int] = {}

    def value_of(m):
        val = cache.get(m)
        if val is None:
            val = cache[m] = valuation.evaluate(_masks_to_structure([m])[0])
        return val

    found = _best_memo(adj, graph.n, value_of, labels, label_masks)
    if found is None:
        return None
    masks, val = found
    return Solution(_masks_to_structure(masks), val)


# ---------------------------------------------------------------- non-crossing

def enumerate_noncrossing(r: int, cap: int = NONCROSSING_CAP) -> Iterator[tuple]:
    """Non-crossing partitions of ``0..r-1``, generated from F/L/M/S labellings.

    F opens a block, M adds to the innermost open block, L closes it, S is a
    singleton. Well-nested labellings are exactly the non-crossing partitions.
    """
    if r > cap:
        raise CapExceededError(f"r={r} exceeds cap {cap}")
    if r <= 0:
        return
    for labels in _labellings(r):
        yield decode_labelling(labels)


def _labellings(r: int) -> Iterator[str]:
    out = [""] * r

    def rec(i, depth):
        if i == r:
            if depth == 0:
                yield "".join(out)
            return
        left = r - i
        if depth < left:
            out[i] = "S"
            yield from rec(i + 1, depth)
        if depth + 1 < left:
            out[i] = "F"
            yield from rec(i + 1, depth + 1)
        if depth and depth < left:
            out[i] = "M"
            yield from rec(i + 1, depth)
        if depth:
            out[i] = "L"
            yield from rec(i + 1, depth - 1)

    yield from rec(0, 0)


def decode_labelling(labels: str) -> tuple:
    """Partition of ``0..len-1`` described by an F/L/M/S string.

    Raises ValueError for strings that are not well nested.
    """
    blocks = []
    stack: list[list[int]] = []
    for i, c in enumerate(labels):
        if c == "S":
            blocks.append([i])
        elif c == "F":
            stack.append([i])
        elif c == "M":
            if not stack:
                raise ValueError(f"M at {i} with no open block")
            stack[-1].append(i)
        elif c == "L":
            if not stack:
                raise ValueError(f"L at {i} with no open block")
            top = stack.pop()
            top.append(i)
            blocks.append(top)
        else:
            raise ValueError(f"bad label {c!r}")
    if stack:
        raise ValueError("unclosed block")
    return canonical_structure(blocks)


def noncrossing_labelling(structure: Iterable[Iterable[int]], r: int | None = None) -> str:
    blocks = [sorted(b) for b in structure]
    if r is None:
        r = sum(len(b) for b in blocks)
    out = ["?"] * r
    for b in blocks:
        if len(b) == 1:
            out[b[0]] = "S"
        else:
            out[b[0]] = "F"
            out[b[-1]] = "L"
            for u in b[1:-1]:
                out[u] = "M"
    return "".join(out)


def is_noncrossing(structure: Iterable[Iterable[int]], order=None) -> bool:
    """No ``a < b < c < d`` with ``a, c`` in one block and ``b, d`` in another.

    ``order`` maps nodes to positions; identity if omitted.
    """
    pos = (lambda u: u) if order is None else order.__getitem__
    owner = {}
    for idx, b in enumerate(structure):
        for u in b:
            owner[u] = idx
    seq = [owner[u] for u in sorted(owner, key=pos)]
    n = len(seq)
    for a in range(n):
        for b in range(a + 1, n):
            if seq[b] == seq[a]:
                continue
            for c in range(b + 1, n):
                if seq[c] != seq[a]:
                    continue
                for d in range(c + 1, n):
                    if seq[d] == seq[b]:
                        return False
    return True
