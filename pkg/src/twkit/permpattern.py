"""Permutation pattern containment and counting.

A pattern occurrence is witnessed by a point mapping that respects the
horizontal and vertical orders between each point of the pattern and its
grid neighbors; those neighbor inequalities chain into the full pairwise
order condition, so the occurrences correspond exactly to the solutions of
a binary CSP whose constraint graph is the pattern's incidence graph. The
counter decomposes that graph and hands the instance to the CSP engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import guard
from .csp import CspInstance, constraint_graph, count_solutions, solve
from .decomposition import minfill_decompose
from .graph import Graph


@dataclass(frozen=True)
class Permutation:
    """A bijection on 1..k given by its value sequence."""

    values: tuple

    def __post_init__(self):
        if len(self.values) == 0:
            raise ValueError("empty permutation")
        if sorted(self.values) != list(range(1, len(self.values) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.values)}")

    @staticmethod
    def of(seq) -> "Permutation":
        return Permutation(tuple(int(x) for x in seq))

    @staticmethod
    def parse(text: str) -> "Permutation":
        return Permutation.of(text.split())

    def __len__(self):
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def inverse(self, y: int) -> int:
        """Index i with value y."""
        return self.values.index(y) + 1

    def points(self) -> tuple:
        """The plane representation: points (i, value at i)."""
        return tuple((i, v) for i, v in enumerate(self.values, 1))


def neighbors(pi: Permutation, p) -> dict:
    """The defined grid neighbors of point p, keyed "R", "L", "U", "D".

    Sweeping the vertical line through p rightward meets the "R" neighbor
    first, and analogously for the other directions; neighbors may coincide.
    """
    x, y = p
    k = len(pi)
    if not (1 <= x <= k) or pi(x) != y:
        raise ValueError(f"point {p} is not a point of the permutation")
    out = {}
    if x + 1 <= k:
        out["R"] = (x + 1, pi(x + 1))
    if x - 1 >= 1:
        out["L"] = (x - 1, pi(x - 1))
    if y + 1 <= k:
        out["U"] = (pi.inverse(y + 1), y + 1)
    if y - 1 >= 1:
        out["D"] = (pi.inverse(y - 1), y - 1)
    return out


def incidence_graph(pi: Permutation) -> Graph:
    """Graph on the pattern's points, vertex i-1 standing for (i, pi(i)).

    The union of the index-order Hamiltonian path and the value-order
    Hamiltonian path; maximum degree 4.
    """
    k = len(pi)
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [
        (pi.inverse(y) - 1, pi.inverse(y + 1) - 1) for y in range(1, k)
    ]
    return Graph(k, edges)


def split_degree4(G: Graph) -> Graph:
    """Split every degree-4 vertex into two adjacent degree-3 vertices.

    The input is a minor of the output: contracting each split edge undoes
    the operation. Requires maximum degree at most 4.
    """
    return split_degree4_with_edges(G)[0]


def split_degree4_with_edges(G: Graph):
    """As :func:`split_degree4`, also returning the list of split edges
    (old vertex, fresh vertex) whose contraction recovers the input."""
    if any(G.degree(v) > 4 for v in range(G.n)):
        raise ValueError("maximum degree exceeds 4")
    if G.has_loops():
        raise ValueError("loopless graph required")
    edges = set(G.edges)
    n = G.n
    split_edges = []
    while True:
        deg = {}
        for u, v in edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        heavy = sorted(v for v, d in deg.items() if d > 3)
        if not heavy:
            break
        v = heavy[0]
        nbs = sorted(a if a != v else b for a, b in edges if v in (a, b))
        moved = nbs[2:]
        w = n
        n += 1
        for u in moved:
            edges.discard((min(u, v), max(u, v)))
            edges.add((min(u, w), max(u, w)))
        edges.add((v, w))
        split_edges.append((v, w))
    return Graph(n, edges), split_edges


def to_csp(pi: Permutation, sigma: Permutation) -> CspInstance:
    """The containment instance: pattern points are variables, text points
    the domain, with one strict order constraint per defined R/U neighbor.

    Its solutions are in bijection with the occurrences of the pattern.
    """
    pts = pi.points()
    dom = sigma.points()
    x_less = frozenset((a, b) for a in dom for b in dom if a[0] < b[0])
    y_less = frozenset((a, b) for a in dom for b in dom if a[1] < b[1])
    cons = []
    for p in pts:
        nb = neighbors(pi, p)
        if "R" in nb:
            cons.append(((p, nb["R"]), x_less))
        if "U" in nb:
            cons.append(((p, nb["U"]), y_less))
    return CspInstance(pts, dom, cons)


def count_occurrences(pi: Permutation, sigma: Permutation) -> int:
    """Exact number of occurrences of the pattern in the text."""
    if len(pi) > len(sigma):
        return 0
    inst = to_csp(pi, sigma)
    T = minfill_decompose(constraint_graph(inst))
    return count_solutions(inst, T)


def contains(pi: Permutation, sigma: Permutation) -> bool:
    """Containment decision; runs the satisfiability DP, which stops
    distinguishing counts beyond one."""
    if len(pi) > len(sigma):
        return False
    inst = to_csp(pi, sigma)
    T = minfill_decompose(constraint_graph(inst))
    return solve(inst, T) is not None


def find_occurrence(pi: Permutation, sigma: Permutation):
    """One occurrence as an increasing index tuple, or None."""
    if len(pi) > len(sigma):
        return None
    inst = to_csp(pi, sigma)
    T = minfill_decompose(constraint_graph(inst))
    f = solve(inst, T)
    if f is None:
        return None
    return tuple(f[p][0] for p in pi.points())


def is_occurrence(pi: Permutation, sigma: Permutation, indices) -> bool:
    """Check an index tuple directly against the containment definition."""
    k, n = len(pi), len(sigma)
    if len(indices) != k:
        return False
    if any(not 1 <= i <= n for i in indices):
        return False
    if any(indices[i] >= indices[i + 1] for i in range(k - 1)):
        return False
    vals = [sigma(i) for i in indices]
    return all(
        (vals[i] < vals[j]) == (pi.values[i] < pi.values[j])
        for i, j in combinations(range(k), 2)
    )


def brute_force_count(pi: Permutation, sigma: Permutation) -> int:
    """Oracle: enumerate all index subsequences of the text."""
    k, n = len(pi), len(sigma)
    if k > n:
        return 0
    guard(math.comb(n, k), 10 ** 7, "brute_force_count subsequence space")
    pattern = pi.values
    count = 0
    for idxs in combinations(range(1, n + 1), k):
        vals = [sigma(i) for i in idxs]
        ranks = {v: r for r, v in enumerate(sorted(vals), 1)}
        if all(ranks[vals[i]] == pattern[i] for i in range(k)):
            count += 1
    return count
