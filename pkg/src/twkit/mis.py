"""Maximum independent set, three ways.

``mis_branching`` branches on a vertex of degree at least three (the
solution either avoids it or takes it and discards its neighborhood) and
solves the leftover paths and cycles directly. ``mis_td`` is the classic
single-exponential table over a tree decomposition. ``mis_bruteforce``
checks every subset and exists to referee the other two.
"""

from __future__ import annotations

from .errors import guard
from .decomposition import TreeDecomposition, make_nice, validation_error
from .graph import Graph


def _bitmask_adj(G: Graph):
    adjm = [0] * G.n
    for u, v in G.edges:
        if u != v:
            adjm[u] |= 1 << v
            adjm[v] |= 1 << u
    return adjm


def mis_branching(G: Graph, stats: dict | None = None) -> int:
    """Size of a maximum independent set by branch-and-solve.

    Branch vertex: highest degree at least 3, lowest index on ties. Once
    the maximum degree drops to 2, each component is a path (independent
    set of ceil(size/2)) or a cycle (floor(size/2)).
    """
    if G.has_loops():
        raise ValueError("independent sets need a loopless graph")
    adjm = _bitmask_adj(G)
    if stats is not None:
        stats.setdefault("branch_nodes", 0)
        stats.setdefault("base_cases", 0)

    def base(mask: int) -> int:
        total = 0
        left = mask
        while left:
            bit = left & -left
            comp = bit
            frontier = bit
            while frontier:
                reach = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    reach |= adjm[b.bit_length() - 1]
                frontier = reach & left & ~comp
                comp |= frontier
            left &= ~comp
            size = comp.bit_count()
            edges = 0
            c = comp
            while c:
                b = c & -c
                c ^= b
                edges += (adjm[b.bit_length() - 1] & comp).bit_count()
            edges //= 2
            if edges == size:  # cycle
                total += size // 2
            else:  # path (isolated vertices included)
                total += (size + 1) // 2
        return total

    def solve(mask: int) -> int:
        pick, pick_deg = -1, 2
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            v = bit.bit_length() - 1
            d = (adjm[v] & mask).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick < 0:
            if stats is not None:
                stats["base_cases"] += 1
            return base(mask)
        if stats is not None:
            stats["branch_nodes"] += 1
        without = solve(mask & ~(1 << pick))
        closed = adjm[pick] | (1 << pick)
        with_v = 1 + solve(mask & ~closed)
        return max(without, with_v)

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, G.n * 4 + 100))
    try:
        return solve((1 << G.n) - 1)
    finally:
        sys.setrecursionlimit(old)


def mis_td(G: Graph, T: TreeDecomposition) -> int:
    """Maximum independent set by tables over all independent bag subsets."""
    if G.has_loops():
        raise ValueError("independent sets need a loopless graph")
    err = validation_error(G, T)
    if err is not None:
        raise ValueError(f"invalid tree decomposition: {err}")
    nice = make_nice(T)
    adj = G.adj
    tables = []
    for node in nice.nodes:
        if node.kind == "leaf":
            tables.append({frozenset(): 0})
            continue
        if node.kind == "join":
            t1 = tables[node.children[0]]
            t2 = tables[node.children[1]]
            tables.append({s: t1[s] + t2[s] - len(s) for s in t1 if s in t2})
            continue
        child = tables[node.children[0]]
        v = node.vertex
        t = {}
        if node.kind == "introduce":
            for s, best in child.items():
                t[s] = max(t.get(s, -1), best)
                if not (adj[v] & s):
                    sv = s | {v}
                    t[sv] = max(t.get(sv, -1), best + 1)
        else:  # forget
            for s, best in child.items():
                key = s - {v}
                if t.get(key, -1) < best:
                    t[key] = best
        tables.append(t)
    return tables[nice.root].get(frozenset(), 0)


def mis_bruteforce(G: Graph) -> int:
    """Oracle: sweep every vertex subset, reusing independence of the
    subset minus its lowest vertex."""
    guard(G.n, 24, "mis_bruteforce vertex count")
    if G.has_loops():
        raise ValueError("independent sets need a loopless graph")
    n = G.n
    if n == 0:
        return 0
    adjm = _bitmask_adj(G)
    independent = bytearray(1 << n)
    independent[0] = 1
    best = 0
    for mask in range(1, 1 << n):
        low = mask & -mask
        rest = mask ^ low
        if independent[rest] and not adjm[low.bit_length() - 1] & rest:
            independent[mask] = 1
            size = mask.bit_count()
            if size > best:
                best = size
    return best
