"""Binary constraint satisfaction over a shared finite domain.

Solving and exact solution counting run as dynamic programs over a nice
tree decomposition of the constraint graph; table entries hold the number
of consistent extensions below a node for each bag assignment, so joins
multiply without any double-counting correction. Counts are exact Python
integers.
"""

from __future__ import annotations

from .errors import InternalConsistencyError, guard
from .graph import Graph
from .decomposition import TreeDecomposition, make_nice, validation_error


class CspInstance:
    """Variables, a shared domain, and directional binary constraints.

    Each constraint is ``((x, y), R)`` with R a set of ordered value pairs;
    registering several constraints on the same ordered pair intersects
    their relations. An undirected relation should be registered once with
    a fixed orientation. Unary restrictions go through ``var_domains``,
    an optional per-variable whitelist of domain values.
    """

    def __init__(self, variables, domain, constraints=(), var_domains=None):
        self.variables = tuple(variables)
        self.domain = tuple(domain)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable ids")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("duplicate domain values")
        dom = set(self.domain)
        vset = set(self.variables)
        normalized = []
        for (x, y), rel in constraints:
            if x == y:
                raise ValueError(f"constraint on ({x!r}, {x!r}) is not binary")
            if x not in vset or y not in vset:
                raise ValueError(f"constraint references unknown variable")
            rel = frozenset(rel)
            for a, b in rel:
                if a not in dom or b not in dom:
                    raise ValueError("relation pair outside the domain")
            normalized.append(((x, y), rel))
        self.constraints = tuple(normalized)
        self.var_domains = dict(var_domains) if var_domains else {}
        for x, allowed in self.var_domains.items():
            if x not in vset or not set(allowed) <= dom:
                raise ValueError("bad per-variable domain restriction")

    def domain_of(self, x):
        if x in self.var_domains:
            allowed = set(self.var_domains[x])
            return tuple(d for d in self.domain if d in allowed)
        return self.domain


def constraint_graph(inst: CspInstance) -> Graph:
    """One vertex per variable (in listed order), one edge per
    co-constrained pair."""
    index = {x: i for i, x in enumerate(inst.variables)}
    edges = {(min(index[x], index[y]), max(index[x], index[y]))
             for (x, y), _ in inst.constraints}
    return Graph(len(inst.variables), edges)


def _pair_maps(inst: CspInstance):
    """Per ordered index pair (i, j) with i < j, the map from a value of j
    to the set of values of i allowed jointly, and vice versa."""
    index = {x: i for i, x in enumerate(inst.variables)}
    merged = {}
    for (x, y), rel in inst.constraints:
        i, j = index[x], index[y]
        pairs = rel if i < j else frozenset((b, a) for a, b in rel)
        key = (min(i, j), max(i, j))
        merged[key] = merged[key] & pairs if key in merged else pairs
    out = {}
    for (i, j), pairs in merged.items():
        by_j, by_i = {}, {}
        for a, b in pairs:
            by_j.setdefault(b, set()).add(a)
            by_i.setdefault(a, set()).add(b)
        out[(i, j)] = (by_j, by_i)
    return out


def _tables(inst: CspInstance, nice, cap=None):
    """Bottom-up DP tables: bag assignment tuple -> extension count below."""
    maps = _pair_maps(inst)
    doms = [inst.domain_of(x) for x in inst.variables]
    tables = []
    for node in nice.nodes:
        if node.kind == "leaf":
            tables.append({(): 1})
            continue
        if node.kind == "join":
            t1 = tables[node.children[0]]
            t2 = tables[node.children[1]]
            t = {}
            if len(t2) < len(t1):
                t1, t2 = t2, t1
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
            lookups = []
            for oi, u in enumerate(others):
                key = (min(u, v), max(u, v))
                if key in maps:
                    by_j, by_i = maps[key]
                    lookups.append((oi, by_j if v < u else by_i))
            t = {}
            base = tuple(doms[v])
            for key, cnt in child.items():
                cand = base
                for oi, table in lookups:
                    allowed = table.get(key[oi])
                    if not allowed:
                        cand = ()
                        break
                    cand = tuple(a for a in cand if a in allowed)
                    if not cand:
                        break
                for val in cand:
                    t[key[:pos] + (val,) + key[pos:]] = cnt
            tables.append(t)
        else:  # forget
            child_sorted = sorted(nice.nodes[node.children[0]].bag)
            pos = child_sorted.index(v)
            t = {}
            for key, cnt in child.items():
                nk = key[:pos] + key[pos + 1:]
                t[nk] = t.get(nk, 0) + cnt
            if cap is not None:
                for k in t:
                    if t[k] > cap:
                        t[k] = cap
            tables.append(t)
    return tables


def _checked_nice(inst: CspInstance, T: TreeDecomposition):
    err = validation_error(constraint_graph(inst), T)
    if err is not None:
        raise ValueError(f"not a tree decomposition of the constraint graph: {err}")
    return make_nice(T)


def count_solutions(inst: CspInstance, T: TreeDecomposition) -> int:
    """Exact number of satisfying assignments, independent of which valid
    decomposition is supplied."""
    nice = _checked_nice(inst, T)
    tables = _tables(inst, nice)
    return tables[nice.root].get((), 0)


def solve(inst: CspInstance, T: TreeDecomposition):
    """One satisfying assignment as a dict, or None if unsatisfiable.

    Recovered by walking the DP tables from the root; deterministic, picking
    the earliest domain value at every forgotten variable.
    """
    nice = _checked_nice(inst, T)
    tables = _tables(inst, nice, cap=1)
    if not tables[nice.root].get((), 0):
        return None
    assignment = {}
    stack = [(nice.root, ())]
    while stack:
        idx, key = stack.pop()
        node = nice.nodes[idx]
        if node.kind == "leaf":
            continue
        if node.kind == "join":
            stack.append((node.children[0], key))
            stack.append((node.children[1], key))
            continue
        child_idx = node.children[0]
        if node.kind == "introduce":
            pos = sorted(node.bag).index(node.vertex)
            stack.append((child_idx, key[:pos] + key[pos + 1:]))
        else:  # forget: choose a value for the reappearing variable
            pos = sorted(nice.nodes[child_idx].bag).index(node.vertex)
            var = inst.variables[node.vertex]
            for val in inst.domain_of(node.vertex):
                ck = key[:pos] + (val,) + key[pos:]
                if tables[child_idx].get(ck, 0):
                    assignment[var] = val
                    stack.append((child_idx, ck))
                    break
            else:
                raise InternalConsistencyError("table walk found no extension")
    _check_assignment(inst, assignment)
    return assignment


def _check_assignment(inst: CspInstance, f):
    for x in inst.variables:
        if x not in f or f[x] not in inst.domain_of(x):
            raise InternalConsistencyError(f"no admissible value for {x!r}")
    for (x, y), rel in inst.constraints:
        if (f[x], f[y]) not in rel:
            raise InternalConsistencyError(
                f"assignment violates constraint on ({x!r}, {y!r})"
            )


def brute_force_count(inst: CspInstance) -> int:
    """Exhaustive assignment enumeration; the oracle the DP is checked
    against."""
    doms = [inst.domain_of(x) for x in inst.variables]
    cost = 1
    for d in doms:
        cost *= max(len(d), 1)
    guard(cost, 10 ** 7, "brute_force_count assignment space")
    index = {x: i for i, x in enumerate(inst.variables)}
    checks = [((index[x], index[y]), rel) for (x, y), rel in inst.constraints]
    count = 0
    import itertools

    for combo in itertools.product(*doms):
        if all((combo[i], combo[j]) in rel for (i, j), rel in checks):
            count += 1
    return count
