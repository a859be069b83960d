"""Undirected graphs on dense integer vertices.

Construction, generators, minor and quotient operations, brute-force scale
oracles and isomorphism, and the DIMACS-like edge-list file format. All
operations are pure: they return new graphs and never mutate their inputs,
so callers may use them concurrently without coordination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import guard


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are unordered pairs (u, v) stored with u <= v. A loop (u, u) is
    accepted only when ``loops_allowed`` is set; quotienting by a partition
    with a non-independent block is the one place loops arise.
    """

    __slots__ = ("n", "edges", "loops_allowed", "_adj")

    def __init__(self, n: int, edges=(), loops_allowed: bool = False):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        normalized = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v and not loops_allowed:
                raise ValueError(f"loop at vertex {u} in a loopless graph")
            normalized.add((u, v) if u <= v else (v, u))
        self.n = n
        self.edges = frozenset(normalized)
        self.loops_allowed = bool(loops_allowed)
        self._adj = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adj(self) -> tuple:
        """Neighbor sets, indexed by vertex; a looped vertex contains itself."""
        if self._adj is None:
            sets = [set() for _ in range(self.n)]
            for u, v in self.edges:
                sets[u].add(v)
                sets[v].add(u)
            self._adj = tuple(frozenset(s) for s in sets)
        return self._adj

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.edges

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        flag = ", loops_allowed" if self.loops_allowed else ""
        return f"Graph(n={self.n}, m={self.m}{flag})"


# ---------------------------------------------------------------------------
# vertex partitions and quotients


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint nonempty vertex blocks, canonically ordered by minimum element.

    Build through :meth:`from_blocks`, which normalizes and validates; the
    raw constructor trusts its input.
    """

    blocks: tuple

    @staticmethod
    def from_blocks(blocks) -> "VertexPartition":
        bs = tuple(sorted((frozenset(b) for b in blocks), key=min))
        seen = set()
        for b in bs:
            if not b:
                raise ValueError("partition blocks must be nonempty")
            if seen & b:
                raise ValueError("partition blocks must be disjoint")
            seen |= b
        return VertexPartition(bs)

    @staticmethod
    def identity(n: int) -> "VertexPartition":
        return VertexPartition(tuple(frozenset((v,)) for v in range(n)))

    @property
    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def covers(self, n: int) -> bool:
        covered = set()
        for b in self.blocks:
            covered |= b
        return covered == set(range(n))

    def block_index(self) -> dict:
        """Map each vertex to the index of its block."""
        out = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                out[v] = i
        return out

    def sort_key(self):
        return tuple(tuple(sorted(b)) for b in self.blocks)


def identity_partition(n: int) -> VertexPartition:
    return VertexPartition.identity(n)


def quotient(H: Graph, rho: VertexPartition) -> Graph:
    """Consolidate each block of ``rho`` into a single vertex.

    Blocks become vertices in order of their minimum element. An edge of H
    inside a block becomes a loop, so the result always allows loops.
    """
    if not rho.covers(H.n):
        raise ValueError("partition does not cover the vertex set")
    idx = rho.block_index()
    edges = set()
    for u, v in H.edges:
        edges.add((idx[u], idx[v]))
    return Graph(len(rho.blocks), edges, loops_allowed=True)


# ---------------------------------------------------------------------------
# minor operations


def delete_vertex(G: Graph, v: int) -> Graph:
    """Remove v; vertices above v shift down by one to stay dense."""
    if not 0 <= v < G.n:
        raise ValueError(f"vertex {v} not in graph")

    def rl(x):
        return x if x < v else x - 1

    edges = [(rl(a), rl(b)) for a, b in G.edges if a != v and b != v]
    return Graph(G.n - 1, edges, G.loops_allowed)


def delete_edge(G: Graph, u: int, v: int) -> Graph:
    if not G.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) not in graph")
    key = (u, v) if u <= v else (v, u)
    return Graph(G.n, G.edges - {key}, G.loops_allowed)


def contract_edge(G: Graph, u: int, v: int) -> Graph:
    """Contract the edge uv into one vertex, dropping the uv loop and
    collapsing any parallel edges that result."""
    if u == v:
        raise ValueError("cannot contract a loop")
    if not G.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) not in graph")
    keep, drop = min(u, v), max(u, v)
    edges = []
    for a, b in G.edges:
        if {a, b} == {u, v}:
            continue
        a2 = keep if a == drop else a
        b2 = keep if b == drop else b
        edges.append((a2, b2))

    def rl(x):
        return x if x < drop else x - 1

    return Graph(G.n - 1, [(rl(a), rl(b)) for a, b in edges], G.loops_allowed)


def minor_op(G: Graph, op: str, *args) -> Graph:
    """Apply one minor operation, named ``delete-vertex``, ``delete-edge``
    or ``contract-edge``."""
    if op == "delete-vertex":
        return delete_vertex(G, *args)
    if op == "delete-edge":
        return delete_edge(G, *args)
    if op == "contract-edge":
        return contract_edge(G, *args)
    raise ValueError(f"unknown minor operation {op!r}")


def delete_vertices(G: Graph, vs) -> Graph:
    """Remove a set of vertices at once (relabeling to stay dense)."""
    vs = set(vs)
    remap = {}
    for x in range(G.n):
        if x not in vs:
            remap[x] = len(remap)
    edges = [
        (remap[a], remap[b]) for a, b in G.edges if a not in vs and b not in vs
    ]
    return Graph(len(remap), edges, G.loops_allowed)


def induced_subgraph(G: Graph, verts) -> Graph:
    """Subgraph induced by ``verts``, relabeled by their sorted order."""
    order = sorted(set(verts))
    remap = {v: i for i, v in enumerate(order)}
    edges = [
        (remap[a], remap[b]) for a, b in G.edges if a in remap and b in remap
    ]
    return Graph(len(order), edges, G.loops_allowed)


def connected_components(G: Graph) -> list:
    """Vertex sets of connected components, each sorted, in order of minimum."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        queue = [s]
        while queue:
            x = queue.pop()
            for y in G.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# small brute-force oracles


def longest_path_bruteforce(G: Graph) -> int:
    """Maximum number of vertices on a simple path, by exhaustive search.

    Dynamic programming over (vertex subset, endpoint) pairs; guarded at
    n <= 16 since the state space is exponential.
    """
    guard(G.n, 16, "longest_path_bruteforce vertex count")
    if G.n == 0:
        return 0
    adjm = [0] * G.n
    for u, v in G.edges:
        if u != v:
            adjm[u] |= 1 << v
            adjm[v] |= 1 << u
    # states: vertex set of a path -> bitmask of feasible endpoints; a mask's
    # popcount fixes its search level, so levels never revisit a mask
    frontier = {1 << v: 1 << v for v in range(G.n)}
    best = 1
    while frontier:
        nxt = {}
        for mask, ends in frontier.items():
            e = ends
            while e:
                bit = e & -e
                e ^= bit
                v = bit.bit_length() - 1
                ext = adjm[v] & ~mask
                while ext:
                    ubit = ext & -ext
                    ext ^= ubit
                    nm = mask | ubit
                    nxt[nm] = nxt.get(nm, 0) | ubit
        if nxt:
            best += 1
        frontier = nxt
    return best


def planarity_prefilter(G: Graph) -> bool:
    """Necessary condition for planarity: edge count within the Euler bound.

    Returns False when m > 3n - 6 (for n >= 3) and True otherwise; a True
    answer does not certify planarity.
    """
    if G.n >= 3 and G.m > 3 * G.n - 6:
        return False
    return True


# ---------------------------------------------------------------------------
# generators


def make_grid(k: int) -> Graph:
    """The k-by-k grid: vertices (x, y) adjacent iff |x-x'| + |y-y'| = 1."""
    if k < 1:
        raise ValueError("grid side must be positive")
    edges = []
    for x in range(k):
        for y in range(k):
            if x + 1 < k:
                edges.append((x * k + y, (x + 1) * k + y))
            if y + 1 < k:
                edges.append((x * k + y, x * k + y + 1))
    return Graph(k * k, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def matching_graph(k: int) -> Graph:
    """k disjoint edges on 2k vertices."""
    return Graph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    edges = list(G1.edges) + [(u + G1.n, v + G1.n) for u, v in G2.edges]
    return Graph(G1.n + G2.n, edges, G1.loops_allowed or G2.loops_allowed)


def subdivide_edge(G: Graph, u: int, v: int) -> Graph:
    """Replace edge uv by a path u - w - v through a fresh vertex w."""
    if not G.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) not in graph")
    key = (u, v) if u <= v else (v, u)
    w = G.n
    return Graph(G.n + 1, (G.edges - {key}) | {(u, w), (v, w)}, G.loops_allowed)


def random_graph(n: int, p: float, rng) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph(n, edges)


def random_tree(n: int, rng) -> Graph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return Graph(n, edges)


def random_outerplanar(n: int, rng) -> Graph:
    """Cycle plus a random set of non-crossing chords (outerplanar)."""
    if n <= 2:
        return path_graph(n)
    edges = set(cycle_graph(n).edges)

    def chords(lo, hi):
        if hi - lo < 2:
            return
        if rng.random() < 0.6:
            mid = rng.randint(lo + 1, hi - 1)
            for a, b in ((lo, mid), (mid, hi)):
                if b - a >= 2:
                    edges.add((a, b))
            chords(lo, mid)
            chords(mid, hi)

    chords(0, n - 1)
    return Graph(n, edges)


def random_subdivision(G: Graph, extra: int, rng) -> Graph:
    """Subdivide ``extra`` randomly chosen edges, one after another."""
    out = G
    for _ in range(extra):
        if not out.edges:
            break
        u, v = sorted(out.edges)[rng.randrange(out.m)]
        out = subdivide_edge(out, u, v)
    return out


# ---------------------------------------------------------------------------
# isomorphism at brute-force scale


def _refined_classes(verts, adjsets):
    """Partition ``verts`` into color classes by iterated degree refinement."""
    color = {v: len(adjsets[v]) for v in verts}
    while True:
        sig = {
            v: (color[v], tuple(sorted(color[u] for u in adjsets[v])))
            for v in verts
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {v: ranks[sig[v]] for v in verts}
        if new == color:
            break
        color = new
    classes = {}
    for v in verts:
        classes.setdefault(color[v], []).append(v)
    return [sorted(classes[c]) for c in sorted(classes)]


def _component_code(G: Graph, comp):
    """Lexicographically least relabeled edge list over color-preserving
    relabelings of one component. Exponential in the class sizes."""
    adjsets = {v: set(G.adj[v]) & set(comp) for v in comp}
    classes = _refined_classes(comp, adjsets)
    space = 1
    for cl in classes:
        for i in range(2, len(cl) + 1):
            space *= i
    guard(space, 2_000_000, "isomorphism search space")
    # label ranges are fixed per class, in class order
    starts = []
    base = 0
    for cl in classes:
        starts.append(base)
        base += len(cl)
    comp_edges = [
        (u, v) for u, v in G.edges if u in adjsets and v in adjsets
    ]
    best = None
    for perms in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        label = {}
        for cl_i, perm in enumerate(perms):
            for off, v in enumerate(perm):
                label[v] = starts[cl_i] + off
        code = tuple(
            sorted(
                (label[u], label[v]) if label[u] <= label[v] else (label[v], label[u])
                for u, v in comp_edges
            )
        )
        if best is None or code < best:
            best = code
    return (len(comp), best or ())


def canonical_key(G: Graph):
    """Hashable isomorphism invariant, exact at brute-force scale.

    Computed per connected component; raises ResourceLimitError when a
    component's relabeling space is too large (roughly beyond 9 or 10
    same-degree vertices).
    """
    codes = sorted(_component_code(G, comp) for comp in connected_components(G))
    return (G.n, tuple(codes))


def are_isomorphic(G1: Graph, G2: Graph) -> bool:
    if G1.n != G2.n or G1.m != G2.m:
        return False
    return canonical_key(G1) == canonical_key(G2)


# ---------------------------------------------------------------------------
# DIMACS-like edge-list format: `p <n> <m>` header, `e <u> <v>` lines,
# `c` comment lines, all 1-indexed.


def parse_gr(text: str) -> Graph:
    n = m = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tok = line.split()
        if tok[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            nums = tok[1:]
            if len(nums) == 3 and not nums[0].lstrip("-").isdigit():
                nums = nums[1:]  # tolerate a format tag, e.g. "p tw n m"
            if len(nums) != 2:
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            n, m = int(nums[0]), int(nums[1])
        elif tok[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before header")
            if len(tok) != 3:
                raise ValueError(f"line {lineno}: malformed edge {line!r}")
            u, v = int(tok[1]), int(tok[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"line {lineno}: endpoint out of range")
            if u == v:
                raise ValueError(f"line {lineno}: loops not supported in files")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"line {lineno}: duplicate edge")
            seen.add(key)
            edges.append((u - 1, v - 1))
        else:
            raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ValueError("missing 'p' header line")
    if len(edges) != m:
        raise ValueError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_gr(G: Graph) -> str:
    if G.has_loops():
        raise ValueError("loops not supported in files")
    lines = [f"p {G.n} {G.m}"]
    for u, v in sorted(G.edges):
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
