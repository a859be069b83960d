"""Counting injective homomorphisms and subgraph copies through the
homomorphism basis.

Homomorphisms out of a pattern H classify by the partition of V(H) they
collapse; against a loopless host only partitions with independent blocks
contribute, and inverting that classification writes the injective count
as an integer linear combination of homomorphism counts of quotients of H.
The coefficients depend on H alone, so one expansion serves any host.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import InternalConsistencyError, ResourceLimitError, guard
from .graph import (
    Graph,
    VertexPartition,
    canonical_key,
    quotient,
)
from .homcount import count_hom

PATTERN_GUARD = 10  # partition enumeration is Bell-number sized
AUT_GUARD = 9


def independent_partitions(H: Graph) -> list:
    """All partitions of V(H) whose blocks are independent sets, the
    identity partition included, in a deterministic order."""
    guard(H.n, PATTERN_GUARD, "independent_partitions pattern size")
    if H.has_loops():
        raise ValueError("pattern must be loopless")
    adj = H.adj
    out = []
    blocks = []

    def place(v: int):
        if v == H.n:
            out.append(VertexPartition.from_blocks(blocks))
            return
        for b in blocks:
            if not (adj[v] & b):
                b.add(v)
                place(v + 1)
                b.remove(v)
        blocks.append({v})
        place(v + 1)
        blocks.pop()

    place(0)
    return out


def _set_partitions(items):
    """All partitions of a small sequence, as tuples of frozensets."""
    items = list(items)
    if not items:
        return [()]
    out = []
    blocks = []

    def place(i: int):
        if i == len(items):
            out.append(tuple(frozenset(b) for b in blocks))
            return
        x = items[i]
        for b in blocks:
            b.add(x)
            place(i + 1)
            b.remove(x)
        blocks.append({x})
        place(i + 1)
        blocks.pop()

    place(0)
    return out


@dataclass
class HomExpansion:
    """Signed coefficients, one per independent partition of the pattern.

    Evaluating ``sum(coeff * #Hom(pattern / partition, G))`` over the terms
    yields the injective homomorphism count into any loopless G; the
    identity partition always carries coefficient +1.
    """

    pattern: Graph
    terms: dict
    _grouped: list | None = field(default=None, repr=False, compare=False)

    def quotient_of(self, rho: VertexPartition) -> Graph:
        return quotient(self.pattern, rho)

    def grouped(self) -> list:
        """Terms merged by quotient isomorphism class: pairs of a
        representative quotient and its total coefficient. Classes whose
        isomorphism test is out of brute-force range stay unmerged."""
        if self._grouped is not None:
            return self._grouped
        groups = {}
        order = []
        fallback = 0
        for rho in sorted(self.terms, key=VertexPartition.sort_key):
            q = self.quotient_of(rho)
            try:
                key = ("iso", canonical_key(q))
            except ResourceLimitError:
                key = ("raw", fallback)
                fallback += 1
            if key in groups:
                groups[key][1] += self.terms[rho]
            else:
                groups[key] = [q, self.terms[rho]]
                order.append(key)
        self._grouped = [
            (groups[k][0], groups[k][1]) for k in order if groups[k][1] != 0
        ]
        return self._grouped


@lru_cache(maxsize=64)
def emb_to_hom_expansion(H: Graph) -> HomExpansion:
    """Coefficients of the injective-count expansion, by memoized unrolling
    of the classification identity over the independent partitions.

    Working coarsest-to-finest, each partition's coefficient is minus the
    sum over its strict refinements, all of which quotient to strictly more
    vertices and are therefore already settled.
    """
    parts = independent_partitions(H)
    by_coarseness = sorted(parts, key=lambda p: (-len(p.blocks), p.sort_key()))
    beta = {}
    for rho in by_coarseness:
        if rho.is_identity:
            beta[rho] = 1
            continue
        acc = 0
        per_block = [_set_partitions(sorted(b)) for b in rho.blocks]
        for choice in _product(per_block):
            sigma = VertexPartition.from_blocks(
                [b for sub in choice for b in sub]
            )
            if sigma == rho:
                continue
            acc += beta[sigma]
        beta[rho] = -acc
    return HomExpansion(H, beta)


def _product(pools):
    if not pools:
        yield ()
        return
    for head in pools[0]:
        for rest in _product(pools[1:]):
            yield (head,) + rest


def count_emb(H: Graph, G: Graph) -> int:
    """Injective homomorphisms from H into the loopless host G, evaluated
    through the expansion with one homomorphism count per quotient class."""
    guard(H.n, PATTERN_GUARD, "count_emb pattern size")
    if G.has_loops():
        raise ValueError("host must be loopless")
    if H.has_loops():
        return 0
    expansion = emb_to_hom_expansion(H)
    memo = {}
    total = 0
    for rep, coeff in expansion.grouped():
        total += coeff * count_hom(rep, G, _memo=memo)
    if total < 0:
        raise InternalConsistencyError(
            f"negative injective count {total}; expansion must be wrong"
        )
    return total


def count_aut(H: Graph) -> int:
    """Number of automorphisms, by degree-pruned exhaustive search."""
    guard(H.n, AUT_GUARD, "count_aut vertex count")
    n = H.n
    if n == 0:
        return 1
    adj = H.adj
    degs = [len(adj[v]) for v in range(n)]
    image = [-1] * n

    def place(v: int) -> int:
        if v == n:
            return 1
        total = 0
        taken = set(image[:v])
        for u in range(n):
            if u in taken or degs[u] != degs[v]:
                continue
            ok = True
            for w in range(v):
                if (w in adj[v]) != (image[w] in adj[u]):
                    ok = False
                    break
            if ok and ((v in adj[v]) == (u in adj[u])):
                image[v] = u
                total += place(v + 1)
                image[v] = -1
        return total

    return place(0)


def count_sub(H: Graph, G: Graph) -> int:
    """Subgraph copies of H in G: the injective count divided by the
    automorphism count. The division must be exact."""
    emb = count_emb(H, G)
    aut = count_aut(H)
    copies, rem = divmod(emb, aut)
    if rem:
        raise InternalConsistencyError(
            f"injective count {emb} not divisible by automorphism count {aut}"
        )
    return copies


def _injections(H: Graph, G: Graph, images: set | None) -> int:
    """Count injective edge-preserving maps; optionally record the image
    (vertex set, edge set) pairs for subgraph-copy counting."""
    if G.has_loops():
        raise ValueError("host must be loopless")
    space = 1
    for i in range(H.n):
        space *= max(G.n - i, 0)
    guard(space, 10 ** 7, "injective map enumeration")
    if H.n > G.n:
        return 0
    hadj = H.adj
    order = sorted(range(H.n), key=lambda v: -len(hadj[v]))
    pos = {v: i for i, v in enumerate(order)}
    preds = [
        [(pos[u], u == v) for u in hadj[v] if pos[u] < pos[v] or u == v]
        for v in order
    ]
    gadj = G.adj
    count = 0
    partial = []
    used = set()

    def place(depth: int):
        nonlocal count
        if depth == H.n:
            count += 1
            if images is not None:
                vs = frozenset(partial)
                es = frozenset(
                    (min(partial[pos[a]], partial[pos[b]]),
                     max(partial[pos[a]], partial[pos[b]]))
                    for a, b in H.edges
                )
                images.add((vs, es))
            return
        for img in range(G.n):
            if img in used:
                continue
            ok = True
            for pi, is_self in preds[depth]:
                ref = img if is_self else partial[pi]
                if ref not in gadj[img]:
                    ok = False
                    break
            if ok:
                partial.append(img)
                used.add(img)
                place(depth + 1)
                used.discard(img)
                partial.pop()

    place(0)
    return count


def brute_force_emb(H: Graph, G: Graph) -> int:
    """Oracle: enumerate injective maps directly."""
    return _injections(H, G, None)


def brute_force_sub(H: Graph, G: Graph) -> int:
    """Oracle: enumerate injective maps and count distinct image
    (vertex set, edge set) pairs, which are exactly the subgraph copies."""
    images = set()
    _injections(H, G, images)
    return len(images)
