"""Tree decompositions: validation, construction, normalization, bounds.

Constructors return decompositions whose width never undercuts the true
treewidth (min-fill heuristic, exact subset dynamic programming at small
scale) and ``mmd_lower_bound`` certifies treewidth from below. The nice
normal form is the substrate for every dynamic program in this package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalConsistencyError, ResourceLimitError
from .graph import Graph


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree of vertex bags; ``tree_edges`` connect bag indices."""

    bags: tuple
    tree_edges: tuple

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list:
        nbs = [[] for _ in self.bags]
        for i, j in self.tree_edges:
            nbs[i].append(j)
            nbs[j].append(i)
        return nbs


def validation_error(G: Graph, T: TreeDecomposition):
    """None if T is a valid tree decomposition of G, else a reason string."""
    nb = len(T.bags)
    if nb == 0:
        return "no bags"
    for b in T.bags:
        for v in b:
            if not 0 <= v < G.n:
                return f"bag vertex {v} outside 0..{G.n - 1}"
    seen = set()
    for i, j in T.tree_edges:
        if not (0 <= i < nb and 0 <= j < nb):
            return f"tree edge ({i}, {j}) references a missing bag"
        if i == j:
            return f"tree edge ({i}, {j}) is a self-loop"
        key = (min(i, j), max(i, j))
        if key in seen:
            return f"duplicate tree edge ({i}, {j})"
        seen.add(key)
    if len(T.tree_edges) != nb - 1:
        return f"{len(T.tree_edges)} tree edges for {nb} bags, expected {nb - 1}"
    nbs = T.neighbors()
    reach = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nbs[x]:
            if y not in reach:
                reach.add(y)
                stack.append(y)
    if len(reach) != nb:
        return "tree of bags is disconnected"
    covered = set()
    for b in T.bags:
        covered |= b
    missing = set(range(G.n)) - covered
    if missing:
        return f"vertex {min(missing)} appears in no bag"
    for u, v in G.edges:
        if not any(u in b and v in b for b in T.bags):
            return f"edge ({u}, {v}) is contained in no bag"
    for v in range(G.n):
        holding = [i for i, b in enumerate(T.bags) if v in b]
        comp = {holding[0]}
        stack = [holding[0]]
        hold = set(holding)
        while stack:
            x = stack.pop()
            for y in nbs[x]:
                if y in hold and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if comp != hold:
            return f"bags containing vertex {v} are not connected"
    return None


def validate(G: Graph, T: TreeDecomposition) -> bool:
    return validation_error(G, T) is None


def trivial_decomposition(G: Graph) -> TreeDecomposition:
    """The single bag holding every vertex."""
    return TreeDecomposition((frozenset(range(G.n)),), ())


def td_from_order(G: Graph, order) -> TreeDecomposition:
    """Decomposition induced by an elimination ordering.

    Simulates fill-in: each eliminated vertex contributes the bag of itself
    plus its current neighborhood, attached to the bag of the earliest
    still-alive member of that neighborhood.
    """
    n = G.n
    if n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    adj = [set(G.adj[v]) - {v} for v in range(n)]
    bags = []
    for v in order:
        nbv = adj[v]
        bags.append(frozenset(nbv | {v}))
        for a in nbv:
            adj[a].discard(v)
            adj[a] |= nbv - {a}
    edges = []
    for i, v in enumerate(order):
        rest = bags[i] - {v}
        if rest:
            edges.append((i, min(pos[u] for u in rest)))
        elif i + 1 < n:
            edges.append((i, i + 1))
    return TreeDecomposition(tuple(bags), tuple(edges))


def minfill_decompose(G: Graph) -> TreeDecomposition:
    """Greedy min-fill elimination; ties break to the lowest vertex index.

    The resulting width is an upper bound on the treewidth, with no
    approximation guarantee.
    """
    if G.has_loops():
        raise ValueError("min-fill requires a loopless graph")
    adj = [set(G.adj[v]) for v in range(G.n)]
    alive = set(range(G.n))
    order = []
    while alive:
        pick, pick_fill = None, None
        for v in sorted(alive):
            nbv = adj[v]
            k = len(nbv)
            present = sum(1 for a, b in itertools.combinations(sorted(nbv), 2) if b in adj[a])
            fill = k * (k - 1) // 2 - present
            if pick_fill is None or fill < pick_fill:
                pick, pick_fill = v, fill
        nbv = adj[pick]
        for a, b in itertools.combinations(sorted(nbv), 2):
            adj[a].add(b)
            adj[b].add(a)
        for a in nbv:
            adj[a].discard(pick)
        alive.remove(pick)
        order.append(pick)
    return td_from_order(G, order)


def mmd_lower_bound(G: Graph) -> int:
    """Maximum over the degeneracy ordering of the minimum degree.

    Always at most the treewidth, so it certifies "treewidth >= value".
    """
    if G.has_loops():
        raise ValueError("lower bound requires a loopless graph")
    adj = [set(G.adj[v]) for v in range(G.n)]
    alive = set(range(G.n))
    best = 0
    while alive:
        v = min(alive, key=lambda x: (len(adj[x]), x))
        best = max(best, len(adj[v]))
        for a in adj[v]:
            adj[a].discard(v)
        alive.remove(v)
    return best


def exact_treewidth(G: Graph, ubound: int | None = None):
    """Exact treewidth by dynamic programming over elimination prefixes.

    Returns ``(width, decomposition)`` or None when ``ubound`` is given and
    the treewidth exceeds it. The subset table limits this to n <= 14 unless
    a bound of at most 4 prunes the search.
    """
    if G.has_loops():
        raise ValueError("treewidth requires a loopless graph")
    n = G.n
    if not (n <= 14 or (ubound is not None and ubound <= 4)):
        raise ResourceLimitError(
            f"exact_treewidth: n={n} exceeds 14 and no bound <= 4 was given"
        )
    if n == 0:
        return (-1, TreeDecomposition((frozenset(),), ()))
    bound = n - 1 if ubound is None else min(ubound, n - 1)
    adjm = [0] * n
    for u, v in G.edges:
        if u != v:
            adjm[u] |= 1 << v
            adjm[v] |= 1 << u
    full = (1 << n) - 1
    INF = n

    def elim_cost(prefix: int, v: int) -> int:
        # vertices outside prefix+{v} seen from v through eliminated ones
        inside = prefix | (1 << v)
        comp = 1 << v
        frontier = 1 << v
        hit = 0
        while frontier:
            reach = 0
            f = frontier
            while f:
                bit = f & -f
                f ^= bit
                reach |= adjm[bit.bit_length() - 1]
            hit |= reach
            frontier = reach & inside & ~comp
            comp |= frontier
        return (hit & ~inside).bit_count()

    memo = {0: -1}

    def best(S: int) -> int:
        val = memo.get(S)
        if val is not None:
            return val
        res = INF
        T = S
        while T:
            bit = T & -T
            T ^= bit
            v = bit.bit_length() - 1
            c = elim_cost(S ^ bit, v)
            if c > bound:
                continue
            r = max(best(S ^ bit), c)
            if r < res:
                res = r
        memo[S] = res
        return res

    import sys

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, n * 4 + 100))
    try:
        width = best(full)
    finally:
        sys.setrecursionlimit(old_limit)
    if width > bound:
        return None
    # recover an elimination order by walking the table back from the full set
    order_rev = []
    S = full
    while S:
        target = memo[S]
        chosen = None
        T = S
        while T:
            bit = T & -T
            T ^= bit
            v = bit.bit_length() - 1
            c = elim_cost(S ^ bit, v)
            if c <= bound and max(memo.get(S ^ bit, INF), c) == target:
                chosen = (v, bit)
                break
        if chosen is None:
            raise InternalConsistencyError("treewidth table walk lost its path")
        order_rev.append(chosen[0])
        S ^= chosen[1]
    T = td_from_order(G, list(reversed(order_rev)))
    if T.width != max(width, 0):
        raise InternalConsistencyError(
            f"reconstructed width {T.width} differs from table value {width}"
        )
    return (T.width if n > 0 else -1, T)


# ---------------------------------------------------------------------------
# nice normal form


@dataclass(frozen=True)
class NiceNode:
    kind: str  # "leaf" | "introduce" | "forget" | "join"
    bag: frozenset
    children: tuple
    vertex: int | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Rooted binary normal form; nodes are listed children-before-parent
    with the root last, so a single forward pass is a bottom-up traversal."""

    nodes: tuple

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(nd.bag) for nd in self.nodes) - 1

    def flatten(self) -> TreeDecomposition:
        bags = tuple(nd.bag for nd in self.nodes)
        edges = []
        for i, nd in enumerate(self.nodes):
            for c in nd.children:
                edges.append((c, i))
        return TreeDecomposition(bags, tuple(edges))


def make_nice(T: TreeDecomposition) -> NiceTreeDecomposition:
    """Normalize into leaf/introduce/forget/join nodes of identical width.

    The root carries an empty bag; each original bag is reached by forgetting
    and introducing one vertex at a time, and joins duplicate their bag.
    """
    nb = len(T.bags)
    if nb == 0:
        raise ValueError("decomposition has no bags")
    nbs = T.neighbors()
    nodes = []

    def emit(kind, bag, children=(), vertex=None):
        nodes.append(NiceNode(kind, frozenset(bag), tuple(children), vertex))
        return len(nodes) - 1

    def transition(top: int, from_bag, to_bag) -> int:
        cur, bag = top, set(from_bag)
        for v in sorted(from_bag - to_bag):
            bag.discard(v)
            cur = emit("forget", bag, (cur,), v)
        for v in sorted(to_bag - from_bag):
            bag.add(v)
            cur = emit("introduce", bag, (cur,), v)
        return cur

    # iterative post-order from bag 0
    parent = {0: None}
    dfs_order = [0]
    stack = [0]
    while stack:
        x = stack.pop()
        for y in nbs[x]:
            if y not in parent:
                parent[y] = x
                dfs_order.append(y)
                stack.append(y)
    if len(dfs_order) != nb:
        raise ValueError("tree of bags is disconnected")
    built = {}
    for t in reversed(dfs_order):
        kids = [y for y in nbs[t] if parent.get(y) == t]
        bag = T.bags[t]
        if not kids:
            leaf = emit("leaf", frozenset())
            built[t] = transition(leaf, frozenset(), bag)
        else:
            tops = [transition(built[c], T.bags[c], bag) for c in kids]
            acc = tops[0]
            for other in tops[1:]:
                acc = emit("join", bag, (acc, other))
            built[t] = acc
    transition(built[0], T.bags[0], frozenset())
    return NiceTreeDecomposition(tuple(nodes))


# ---------------------------------------------------------------------------
# PACE 2017 .td serialization: header `s td <#bags> <max-bag-size> <n>`,
# bag lines `b <id> <v1> <v2> ...`, then tree edges `<i> <j>`, all 1-indexed.


def format_td(T: TreeDecomposition, n: int) -> str:
    size = max((len(b) for b in T.bags), default=0)
    lines = [f"s td {len(T.bags)} {size} {n}"]
    for i, b in enumerate(T.bags, 1):
        lines.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(b)]))
    for i, j in sorted((min(e), max(e)) for e in T.tree_edges):
        lines.append(f"{i + 1} {j + 1}")
    return "\n".join(lines) + "\n"


def parse_td(text: str):
    """Parse PACE format; returns (decomposition, host vertex count)."""
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "s":
            if header is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            if len(tok) != 5 or tok[1] != "td":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            header = (int(tok[2]), int(tok[3]), int(tok[4]))
        elif tok[0] == "b":
            bid = int(tok[1])
            if bid in bags:
                raise ValueError(f"line {lineno}: duplicate bag {bid}")
            bags[bid] = frozenset(int(x) - 1 for x in tok[2:])
        else:
            if len(tok) != 2:
                raise ValueError(f"line {lineno}: malformed tree edge {line!r}")
            edges.append((int(tok[0]) - 1, int(tok[1]) - 1))
    if header is None:
        raise ValueError("missing 's td' header line")
    nbags, _, n = header
    if set(bags) != set(range(1, nbags + 1)):
        raise ValueError("bag ids do not cover 1..#bags")
    ordered = tuple(bags[i] for i in range(1, nbags + 1))
    return TreeDecomposition(ordered, tuple(edges)), n
