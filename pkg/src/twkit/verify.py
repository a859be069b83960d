"""Built-in verification suites behind ``tw verify``.

Every check is deterministic (fixed seeds, no timing, sorted output), so
two runs of the command produce byte-identical reports.
"""

from __future__ import annotations

import random

from . import csp, homcount, kpath, mis, permpattern, subcount
from .decomposition import (
    exact_treewidth,
    make_nice,
    minfill_decompose,
    mmd_lower_bound,
    trivial_decomposition,
    validate,
)
from .graph import (
    Graph,
    VertexPartition,
    complete_graph,
    cycle_graph,
    delete_edge,
    delete_vertex,
    contract_edge,
    longest_path_bruteforce,
    make_grid,
    matching_graph,
    path_graph,
    petersen_graph,
    quotient,
    random_graph,
    random_outerplanar,
    random_tree,
    star_graph,
)


def _check_graph_core():
    g = make_grid(3)
    assert g.n == 9 and g.m == 12
    assert longest_path_bruteforce(g) == 9
    c4 = cycle_graph(4)
    p3 = quotient(c4, VertexPartition.from_blocks([{0, 2}, {1}, {3}]))
    assert p3.n == 3 and p3.m == 2 and not p3.has_loops()
    p2 = quotient(c4, VertexPartition.from_blocks([{0, 2}, {1, 3}]))
    assert p2.n == 2 and p2.m == 1
    rng = random.Random(101)
    for _ in range(40):
        h = random_graph(rng.randint(2, 7), rng.random(), rng)
        before = longest_path_bruteforce(h)
        op = rng.choice(("delete-vertex", "delete-edge", "contract-edge"))
        if op == "delete-vertex":
            h2 = delete_vertex(h, rng.randrange(h.n))
        elif h.edges:
            u, v = sorted(h.edges)[rng.randrange(h.m)]
            h2 = delete_edge(h, u, v) if op == "delete-edge" else contract_edge(h, u, v)
        else:
            continue
        assert longest_path_bruteforce(h2) <= before


def _check_decomposition():
    assert exact_treewidth(complete_graph(5))[0] == 4
    assert exact_treewidth(cycle_graph(6))[0] == 2
    assert exact_treewidth(make_grid(3))[0] == 3
    rng = random.Random(102)
    for _ in range(40):
        g = random_graph(rng.randint(1, 9), rng.random(), rng)
        T = minfill_decompose(g)
        assert validate(g, T)
        w, Te = exact_treewidth(g)
        assert validate(g, Te)
        assert mmd_lower_bound(g) <= w <= T.width
        nice = make_nice(T)
        assert nice.width == T.width
        assert validate(g, nice.flatten())


def _check_csp():
    rng = random.Random(103)
    for _ in range(100):
        nv = rng.randint(1, 5)
        nd = rng.randint(1, 4)
        variables = tuple(f"v{i}" for i in range(nv))
        domain = tuple(range(nd))
        cons = []
        for _ in range(rng.randint(0, 6)):
            if nv < 2:
                break
            x, y = rng.sample(variables, 2)
            rel = frozenset(
                (a, b) for a in domain for b in domain if rng.random() < 0.6
            )
            cons.append(((x, y), rel))
        inst = csp.CspInstance(variables, domain, cons)
        g = csp.constraint_graph(inst)
        want = csp.brute_force_count(inst)
        assert csp.count_solutions(inst, minfill_decompose(g)) == want
        assert csp.count_solutions(inst, trivial_decomposition(g)) == want
        assert (csp.solve(inst, minfill_decompose(g)) is not None) == (want > 0)


def _check_permpattern():
    sigma = permpattern.Permutation.parse("3 4 5 2 1 7 8 6")
    pat = permpattern.Permutation.parse("2 1 3 4")
    assert permpattern.contains(pat, sigma)
    assert permpattern.is_occurrence(pat, sigma, (1, 4, 6, 7))
    witness = permpattern.find_occurrence(pat, sigma)
    assert witness is not None and permpattern.is_occurrence(pat, sigma, witness)
    assert not permpattern.contains(permpattern.Permutation.parse("4 3 2 1"), sigma)
    rng = random.Random(104)
    for _ in range(100):
        k = rng.randint(1, 4)
        n = rng.randint(k, 8)
        pv = list(range(1, k + 1))
        rng.shuffle(pv)
        sv = list(range(1, n + 1))
        rng.shuffle(sv)
        p, s = permpattern.Permutation.of(pv), permpattern.Permutation.of(sv)
        assert permpattern.count_occurrences(p, s) == permpattern.brute_force_count(p, s)
    for _ in range(10):
        n = rng.randint(2, 30)
        sv = list(range(1, n + 1))
        rng.shuffle(sv)
        s = permpattern.Permutation.of(sv)
        inversions = sum(
            1 for i in range(n) for j in range(i + 1, n) if sv[i] > sv[j]
        )
        assert permpattern.count_occurrences(
            permpattern.Permutation.of([2, 1]), s
        ) == inversions


def _check_homcount():
    assert homcount.count_hom(complete_graph(2), complete_graph(3)) == 6
    assert homcount.count_hom(cycle_graph(4), complete_graph(3)) == 18
    rng = random.Random(105)
    for _ in range(60):
        h = random_graph(rng.randint(1, 5), rng.random(), rng)
        g = random_graph(rng.randint(1, 6), rng.random(), rng)
        assert homcount.count_hom(h, g) == homcount.brute_force_hom(h, g)


def _check_subcount():
    c4 = cycle_graph(4)
    grouped = dict()
    for q, coeff in subcount.emb_to_hom_expansion(c4).grouped():
        grouped[(q.n, q.m)] = coeff
    assert grouped == {(4, 4): 1, (3, 2): -2, (2, 1): 1}
    assert subcount.count_aut(c4) == 8
    assert subcount.count_aut(matching_graph(3)) == 48
    rng = random.Random(106)
    for _ in range(40):
        h = random_graph(rng.randint(1, 5), rng.random(), rng)
        g = random_graph(rng.randint(1, 6), rng.random(), rng)
        emb = subcount.brute_force_emb(h, g)
        assert subcount.count_emb(h, g) == emb
        assert emb == subcount.brute_force_sub(h, g) * subcount.count_aut(h)
        total = sum(
            subcount.brute_force_emb(quotient(h, rho), g)
            for rho in subcount.independent_partitions(h)
        )
        assert total == homcount.brute_force_hom(h, g)


def _check_kpath():
    rep = kpath.kpath_planar(make_grid(3), 9, True)
    assert rep.answer and rep.branch == "dp"
    rng = random.Random(107)
    suite = [make_grid(2), make_grid(3), path_graph(6), star_graph(4)]
    for _ in range(4):
        suite.append(random_tree(rng.randint(2, 9), rng))
    for _ in range(4):
        suite.append(random_outerplanar(rng.randint(3, 9), rng))
    for g in suite:
        best = longest_path_bruteforce(g)
        for k in range(1, g.n + 1):
            assert kpath.kpath_planar(g, k, True).answer == (best >= k)


def _check_mis():
    assert mis.mis_branching(cycle_graph(5)) == 2
    assert mis.mis_branching(complete_graph(4)) == 1
    assert mis.mis_branching(petersen_graph()) == 4
    rng = random.Random(108)
    for _ in range(60):
        g = random_graph(rng.randint(1, 10), rng.random(), rng)
        a = mis.mis_branching(g)
        assert a == mis.mis_td(g, minfill_decompose(g))
        assert a == mis.mis_bruteforce(g)


CHECKS = (
    ("graph-core", _check_graph_core),
    ("decomposition", _check_decomposition),
    ("csp", _check_csp),
    ("permpattern", _check_permpattern),
    ("homcount", _check_homcount),
    ("subcount", _check_subcount),
    ("kpath", _check_kpath),
    ("mis", _check_mis),
)


def run_verify(out) -> bool:
    """Run every suite, print one PASS/FAIL line each plus a summary."""
    passed = 0
    for name, fn in CHECKS:
        try:
            fn()
        except Exception as exc:  # report and keep going
            out.write(f"FAIL {name}: {exc}\n")
        else:
            passed += 1
            out.write(f"PASS {name}\n")
    out.write(f"passed {passed}/{len(CHECKS)} suites\n")
    return passed == len(CHECKS)
