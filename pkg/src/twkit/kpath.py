"""Deciding the existence of a long simple path.

``kpath_dp`` runs the classic linear-forest dynamic program over a nice
tree decomposition: a state records, per bag vertex, whether it is off the
partial path, a one-vertex segment, a segment endpoint, or interior, plus
the pairing of open endpoints and up to two frozen path ends. ``kpath_planar``
wraps it in the square-root threshold routine for planar inputs: a narrow
decomposition feeds the DP, a certified wide treewidth alone forces a YES,
and when neither materializes the DP runs on the wide decomposition anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decomposition import (
    TreeDecomposition,
    exact_treewidth,
    make_nice,
    minfill_decompose,
    mmd_lower_bound,
    validation_error,
)
from .graph import Graph, planarity_prefilter

CLOSED = -1
UNUSED, SINGLE, END, INTERIOR = 0, 1, 2, 3
_PATH_DEG = {UNUSED: 0, SINGLE: 0, END: 1, INTERIOR: 2}


class NotPlanarError(ValueError):
    """The input failed the Euler-formula planarity prefilter."""


def _partner(pairing, v):
    for a, b in pairing:
        if a == v:
            return b
        if b == v:
            return a
    raise KeyError(v)


def _without(pairing, v):
    return tuple(p for p in pairing if v not in p)


def _with_pair(pairing, a, b):
    return tuple(sorted(pairing + ((min(a, b), max(a, b)),)))


def _closed_ends(pairing):
    return sum(1 for a, _ in pairing if a == CLOSED)


def kpath_dp(G: Graph, T: TreeDecomposition, k: int) -> bool:
    """True iff G has a simple path on at least k vertices."""
    if k <= 0:
        raise ValueError("k must be positive")
    err = validation_error(G, T)
    if err is not None:
        raise ValueError(f"invalid tree decomposition: {err}")
    if k > G.n:
        return False
    if k == 1:
        return G.n >= 1
    nice = make_nice(T)
    adj = G.adj
    found = False

    def complete(size: int):
        nonlocal found
        if size >= k:
            found = True

    # vertices introduced in each subtree, for pruning states that cannot
    # reach k even if every remaining vertex joins the path
    below = []
    for node in nice.nodes:
        if node.kind == "leaf":
            below.append(0)
        elif node.kind == "introduce":
            below.append(below[node.children[0]] + 1)
        elif node.kind == "forget":
            below.append(below[node.children[0]])
        else:
            below.append(
                below[node.children[0]]
                + below[node.children[1]]
                - len(node.bag)
            )

    tables = []
    for idx, node in enumerate(nice.nodes):
        if found:
            break
        if node.kind == "leaf":
            tables.append({((), ()): 0})
            continue
        t = {}
        headroom = G.n - below[idx]

        def put(status, pairing, count):
            if count + headroom + status.count(UNUSED) < k:
                return
            key = (status, pairing)
            if t.get(key, -1) < count:
                t[key] = count

        if node.kind == "introduce":
            child = tables[node.children[0]]
            v = node.vertex
            ns = sorted(node.bag)
            cs = [u for u in ns if u != v]
            pos = ns.index(v)
            nbr_pos = [i for i, u in enumerate(cs) if u in adj[v]]
            for (st, pr), c in child.items():
                grown = min(c + 1, k)
                base = st[:pos] + (UNUSED,) + st[pos:]
                put(base, pr, c)
                put(st[:pos] + (SINGLE,) + st[pos:], pr, grown)
                open_nbrs = [
                    i for i in nbr_pos if st[i] in (SINGLE, END)
                ]
                # extend one segment by the edge (neighbor, v)
                for i in open_nbrs:
                    u = cs[i]
                    if st[i] == SINGLE:
                        st2 = list(base)
                        st2[pos] = END
                        ui = i if i < pos else i + 1
                        st2[ui] = END
                        put(tuple(st2), _with_pair(pr, u, v), grown)
                    else:
                        w = _partner(pr, u)
                        st2 = list(base)
                        st2[pos] = END
                        ui = i if i < pos else i + 1
                        st2[ui] = INTERIOR
                        put(tuple(st2), _with_pair(_without(pr, u), v, w), grown)
                # let v merge two segments, becoming interior
                for ai in range(len(open_nbrs)):
                    for bi in range(ai + 1, len(open_nbrs)):
                        i1, i2 = open_nbrs[ai], open_nbrs[bi]
                        u1, u2 = cs[i1], cs[i2]
                        s1, s2 = st[i1], st[i2]
                        st2 = list(base)
                        st2[pos] = INTERIOR
                        p1 = i1 if i1 < pos else i1 + 1
                        p2 = i2 if i2 < pos else i2 + 1
                        if s1 == SINGLE and s2 == SINGLE:
                            st2[p1] = END
                            st2[p2] = END
                            put(tuple(st2), _with_pair(pr, u1, u2), grown)
                        elif s1 == SINGLE or s2 == SINGLE:
                            lone, li = (u1, p1) if s1 == SINGLE else (u2, p2)
                            endv, ei = (u2, p2) if s1 == SINGLE else (u1, p1)
                            w = _partner(pr, endv)
                            st2[li] = END
                            st2[ei] = INTERIOR
                            put(
                                tuple(st2),
                                _with_pair(_without(pr, endv), lone, w),
                                grown,
                            )
                        else:
                            w1 = _partner(pr, u1)
                            if w1 == u2:
                                continue  # closing a cycle
                            w2 = _partner(pr, u2)
                            rest = _without(_without(pr, u1), u2)
                            st2[p1] = INTERIOR
                            st2[p2] = INTERIOR
                            if w1 == CLOSED and w2 == CLOSED:
                                if not rest and SINGLE not in st2:
                                    complete(grown)
                                continue
                            put(tuple(st2), _with_pair(rest, w1, w2), grown)
        elif node.kind == "forget":
            child = tables[node.children[0]]
            v = node.vertex
            cs = sorted(nice.nodes[node.children[0]].bag)
            pos = cs.index(v)
            for (st, pr), c in child.items():
                s = st[pos]
                st2 = st[:pos] + st[pos + 1:]
                if s in (UNUSED, INTERIOR):
                    put(st2, pr, c)
                elif s == SINGLE:
                    if not pr and SINGLE not in st2:
                        complete(c)
                    # a frozen one-vertex segment next to others is dead
                else:  # END: freeze this endpoint
                    w = _partner(pr, v)
                    rest = _without(pr, v)
                    if w == CLOSED:
                        if not rest and SINGLE not in st2:
                            complete(c)
                        continue
                    pr2 = _with_pair(rest, CLOSED, w)
                    if _closed_ends(pr2) <= 2:
                        put(st2, pr2, c)
        else:  # join
            t1 = tables[node.children[0]]
            t2 = tables[node.children[1]]
            width = len(node.bag)

            def indexed(table):
                by_pr = {}
                for (st, pr), c in table.items():
                    by_pr.setdefault(pr, []).append((st, c))
                return by_pr

            def combine_statuses(st1, st2):
                degs = []
                overlap = 0
                status = []
                for s1, s2 in zip(st1, st2):
                    d = _PATH_DEG[s1] + _PATH_DEG[s2]
                    if d > 2:
                        return None
                    if s1 == UNUSED and s2 == UNUSED:
                        status.append(UNUSED)
                    else:
                        if s1 != UNUSED and s2 != UNUSED:
                            overlap += 1
                        status.append((SINGLE, END, INTERIOR)[d])
                status = tuple(status)
                return (
                    status,
                    overlap,
                    status.count(UNUSED),
                    SINGLE in status,
                )

            by_pr1 = indexed(t1)
            by_pr2 = indexed(t2)
            combined = {}
            for pr1, lst1 in by_pr1.items():
                for pr2, lst2 in by_pr2.items():
                    glued = _glue(pr1, pr2)
                    if glued is None:
                        continue
                    pairs, completed = glued
                    if completed and (completed > 1 or pairs):
                        continue
                    if not completed and _closed_ends(pairs) > 2:
                        continue
                    for st1, c1 in lst1:
                        for st2, c2 in lst2:
                            key = (st1, st2)
                            res = combined.get(key, False)
                            if res is False:
                                res = combine_statuses(st1, st2)
                                combined[key] = res
                            if res is None:
                                continue
                            status, overlap, unused_cnt, has_single = res
                            c = min(c1 + c2 - overlap, k)
                            if completed:
                                if not has_single:
                                    complete(c)
                                continue
                            if c + headroom + unused_cnt < k:
                                continue
                            tk = (status, pairs)
                            if t.get(tk, -1) < c:
                                t[tk] = c
        tables.append(t)
    return found


def _glue(pr1, pr2):
    """Combine two endpoint pairings sharing a bag.

    Returns (pairing, completed-segment count) for the union of the two
    segment families, or None when the union closes a cycle. Frozen ends
    are distinct tokens, so two half-frozen segments may chain.
    """
    edges = []
    fresh = -2
    for pr in (pr1, pr2):
        for a, b in pr:
            if a == CLOSED:
                a = fresh
                fresh -= 1
            edges.append((a, b))
    nbs = {}
    for ei, (a, b) in enumerate(edges):
        nbs.setdefault(a, []).append((ei, b))
        nbs.setdefault(b, []).append((ei, a))
    seen_tokens = set()
    pairs = []
    completed = 0
    for start in nbs:
        if start in seen_tokens or len(nbs[start]) != 1:
            continue
        # walk the path from a degree-1 token to the far end
        seen_tokens.add(start)
        prev_edge = None
        cur = start
        while True:
            step = [
                (ei, o) for ei, o in nbs[cur] if ei != prev_edge
            ]
            if not step:
                break
            prev_edge, cur = step[0]
            seen_tokens.add(cur)
        a, b = start, cur
        a = CLOSED if a < 0 else a
        b = CLOSED if b < 0 else b
        if a == CLOSED and b == CLOSED:
            completed += 1
        else:
            pairs.append((min(a, b), max(a, b)))
    if len(seen_tokens) != len(nbs):
        return None  # leftover tokens all have degree 2: a cycle
    return tuple(sorted(pairs)), completed


def longest_path_td(G: Graph, T: TreeDecomposition) -> int:
    """Largest k for which ``kpath_dp`` answers True (0 on empty graphs)."""
    lo, hi = 0, G.n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if kpath_dp(G, T, mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


# ---------------------------------------------------------------------------
# planar routing


@dataclass(frozen=True)
class KPathReport:
    answer: bool
    branch: str  # "dp" | "width-certificate" | "fallback-dp"
    threshold: int
    accept_width: int
    width: int
    lower_bound: int

    def to_dict(self) -> dict:
        return {
            "answer": "YES" if self.answer else "NO",
            "branch": self.branch,
            "threshold": self.threshold,
            "accept_width": self.accept_width,
            "width": self.width,
            "lower_bound": self.lower_bound,
        }


def _attempt_decomposition(G: Graph):
    """Best effort decomposition: exact at small sizes, else min-fill.

    Returns (decomposition, is_exact)."""
    if G.n <= 14:
        return exact_treewidth(G)[1], True
    return minfill_decompose(G), False


def kpath_planar(G: Graph, k: int, planar_promise: bool) -> KPathReport:
    """Decide a k-vertex path on a planar graph via the width threshold.

    The caller asserts planarity; only the Euler edge-count prefilter is
    checked here. A decomposition of width within 5w*+4 settles the answer
    by DP; failing that, a certified treewidth lower bound of w* alone
    forces YES, because wide planar graphs contain grids whose snake paths
    are long. With neither, the DP runs on the wide decomposition.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    if not planar_promise:
        raise ValueError("planarity promise not given; pass planar_promise=True")
    if not planarity_prefilter(G):
        raise NotPlanarError(
            f"not planar: {G.m} edges exceed the Euler bound "
            f"3n-6 = {3 * G.n - 6} for n = {G.n}"
        )
    wstar = math.ceil(4.5 * math.ceil(math.sqrt(k)))
    accept = 5 * wstar + 4
    T, is_exact = _attempt_decomposition(G)
    if T.width <= accept:
        return KPathReport(
            answer=kpath_dp(G, T, k),
            branch="dp",
            threshold=wstar,
            accept_width=accept,
            width=T.width,
            lower_bound=T.width if is_exact else mmd_lower_bound(G),
        )
    lb = mmd_lower_bound(G)
    if is_exact:
        lb = max(lb, T.width)
    if lb >= wstar:
        return KPathReport(
            answer=True,
            branch="width-certificate",
            threshold=wstar,
            accept_width=accept,
            width=T.width,
            lower_bound=lb,
        )
    return KPathReport(
        answer=kpath_dp(G, T, k),
        branch="fallback-dp",
        threshold=wstar,
        accept_width=accept,
        width=T.width,
        lower_bound=lb,
    )
