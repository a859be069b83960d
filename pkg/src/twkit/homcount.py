"""Counting graph homomorphisms by dynamic programming on a tree
decomposition of the pattern.

The pattern is decomposed per connected component (exactly at small scale,
min-fill beyond that), and the table at each nice-decomposition node maps
bag images to the number of edge-preserving extensions below. Counts are
exact Python integers; a pattern with a loop has no homomorphisms into a
loopless host.
"""

from __future__ import annotations

from .errors import ResourceLimitError, guard
from .decomposition import exact_treewidth, make_nice, minfill_decompose
from .graph import Graph, canonical_key, connected_components, induced_subgraph


def count_hom(H: Graph, G: Graph, _memo=None) -> int:
    """Number of edge-preserving maps from H into the loopless host G.

    Disconnected patterns multiply over components; ``_memo`` may carry a
    dict reused across calls with the same host to share per-component
    results.
    """
    if G.has_loops():
        raise ValueError("host must be loopless")
    if H.has_loops():
        return 0
    total = 1
    for comp in connected_components(H):
        sub = induced_subgraph(H, comp)
        if sub.n == 1:
            total *= G.n
            continue
        key = None
        if _memo is not None:
            try:
                key = canonical_key(sub)
            except ResourceLimitError:
                key = None
            if key is not None and key in _memo:
                total *= _memo[key]
                continue
        value = _count_hom_connected(sub, G)
        if _memo is not None and key is not None:
            _memo[key] = value
        total *= value
    return total


def _decompose_pattern(H: Graph):
    if H.n <= 14:
        return exact_treewidth(H)[1]
    return minfill_decompose(H)


def _count_hom_connected(H: Graph, G: Graph) -> int:
    nice = make_nice(_decompose_pattern(H))
    gadj = G.adj
    all_targets = tuple(range(G.n))
    tables = []
    for node in nice.nodes:
        if node.kind == "leaf":
            tables.append({(): 1})
            continue
        if node.kind == "join":
            t1 = tables[node.children[0]]
            t2 = tables[node.children[1]]
            if len(t2) < len(t1):
                t1, t2 = t2, t1
            t = {}
            for key, c1 in t1.items():
                c2 = t2.get(key)
                if c2:
                    t[key] = c1 * c2
            tables.append(t)
            continue
        child = tables[node.children[0]]
        v = node.vertex
        if node.kind == "introduce":
            bag_sorted = sorted(node.bag)
            pos = bag_sorted.index(v)
            others = [u for u in bag_sorted if u != v]
            partner_pos = [i for i, u in enumerate(others) if H.has_edge(v, u)]
            t = {}
            for key, cnt in child.items():
                if partner_pos:
                    cand = gadj[key[partner_pos[0]]]
                    for i in partner_pos[1:]:
                        cand = cand & gadj[key[i]]
                else:
                    cand = all_targets
                for img in cand:
                    t[key[:pos] + (img,) + key[pos:]] = cnt
            tables.append(t)
        else:  # forget
            child_sorted = sorted(nice.nodes[node.children[0]].bag)
            pos = child_sorted.index(v)
            t = {}
            for key, cnt in child.items():
                nk = key[:pos] + key[pos + 1:]
                t[nk] = t.get(nk, 0) + cnt
            tables.append(t)
    return tables[nice.root].get((), 0)


def brute_force_hom(H: Graph, G: Graph) -> int:
    """Oracle: exhaustive enumeration of all vertex maps, pruned early on
    the first violated edge."""
    if G.has_loops():
        raise ValueError("host must be loopless")
    guard(max(G.n, 1) ** H.n, 10 ** 7, "brute_force_hom map space")
    order = []
    seen = set()
    for comp in connected_components(H):
        stack = [comp[0]]
        seen.add(comp[0])
        while stack:
            x = stack.pop()
            order.append(x)
            for y in sorted(H.adj[x]):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    pos = {v: i for i, v in enumerate(order)}
    preds = [
        [pos[u] for u in H.adj[v] if pos[u] < pos[v] or u == v]
        for v in order
    ]
    gadj = G.adj
    targets = range(G.n)

    def extend(depth: int, partial) -> int:
        if depth == len(order):
            return 1
        total = 0
        for img in targets:
            ok = True
            for pi in preds[depth]:
                ref = img if pi == depth else partial[pi]
                if ref not in gadj[img]:
                    ok = False
                    break
            if ok:
                partial.append(img)
                total += extend(depth + 1, partial)
                partial.pop()
        return total

    return extend(0, [])
