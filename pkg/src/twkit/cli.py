"""The ``tw`` command line: decompose, homcount, subcount, permcount,
kpath, mis, and verify.

Output is machine-first JSON on stdout with keys sorted, counts rendered
as decimal strings so arbitrary precision survives the round trip;
``--pretty`` adds an aligned human table. Exit codes: 0 success, 1 internal
consistency failure, 2 bad input or arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import InternalConsistencyError, ResourceLimitError
from .csp import constraint_graph
from .decomposition import exact_treewidth, format_td, minfill_decompose
from .graph import format_gr, parse_gr
from .homcount import count_hom
from .kpath import kpath_planar
from .mis import mis_branching, mis_bruteforce, mis_td
from .permpattern import Permutation, contains as perm_contains, count_occurrences
from .subcount import count_emb, count_sub, emb_to_hom_expansion
from .verify import run_verify


def _emit(payload: dict, pretty: bool) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    if pretty:
        width = max(len(k) for k in payload)
        for key in sorted(payload):
            print(f"{key.ljust(width)}  {payload[key]}", file=sys.stderr)


def _read_graph(path: str):
    return parse_gr(Path(path).read_text())


def _read_permutation(value: str) -> Permutation:
    """A file path if one exists under that name, else an inline sequence."""
    p = Path(value)
    if p.exists():
        return Permutation.parse(p.read_text())
    return Permutation.parse(value)


def cmd_decompose(args) -> int:
    g = _read_graph(args.input)
    if args.method == "exact":
        result = exact_treewidth(g)
        if result is None:
            raise InternalConsistencyError("unbounded search reported a bound")
        T = result[1]
    else:
        T = minfill_decompose(g)
    text = format_td(T, g.n)
    payload = {"bags": len(T.bags), "method": args.method, "width": T.width}
    if args.out:
        Path(args.out).write_text(text)
        payload["out"] = args.out
    else:
        payload["td"] = text
    _emit(payload, args.pretty)
    return 0


def cmd_homcount(args) -> int:
    h = _read_graph(args.pattern)
    g = _read_graph(args.host)
    _emit({"hom": str(count_hom(h, g))}, args.pretty)
    return 0


def cmd_subcount(args) -> int:
    if args.expansion:
        h = _read_graph(args.expansion)
        terms = []
        expansion = emb_to_hom_expansion(h)
        for rho in sorted(expansion.terms, key=lambda r: r.sort_key()):
            q = expansion.quotient_of(rho)
            terms.append(
                {
                    "beta": str(expansion.terms[rho]),
                    "blocks": [sorted(v + 1 for v in b) for b in rho.blocks],
                    "quotient_edges": [
                        [u + 1, v + 1] for u, v in sorted(q.edges)
                    ],
                    "quotient_n": q.n,
                }
            )
        _emit({"n": h.n, "terms": terms}, args.pretty)
        return 0
    h = _read_graph(args.pattern)
    g = _read_graph(args.host)
    if args.emb:
        _emit({"emb": str(count_emb(h, g))}, args.pretty)
    else:
        _emit({"sub": str(count_sub(h, g))}, args.pretty)
    return 0


def cmd_permcount(args) -> int:
    pattern = _read_permutation(args.pattern)
    text = _read_permutation(args.text)
    if args.decide:
        _emit({"contains": perm_contains(pattern, text)}, args.pretty)
    else:
        _emit({"count": str(count_occurrences(pattern, text))}, args.pretty)
    return 0


def cmd_kpath(args) -> int:
    g = _read_graph(args.input)
    report = kpath_planar(g, args.k, args.planar)
    print("YES" if report.answer else "NO")
    print(json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":")))
    return 0


def cmd_mis(args) -> int:
    g = _read_graph(args.input)
    stats: dict = {}
    if args.method == "branch":
        value = mis_branching(g, stats)
    elif args.method == "td":
        T = minfill_decompose(g)
        value = mis_td(g, T)
        stats["width"] = T.width
    else:
        value = mis_bruteforce(g)
        stats["subsets"] = 2 ** g.n
    _emit({"mis": value, "stats": stats}, args.pretty)
    return 0


def cmd_verify(args) -> int:
    return 0 if run_verify(sys.stdout) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tw",
        description="Treewidth-driven exact algorithms and their oracles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        p.add_argument("--pretty", action="store_true",
                       help="also print an aligned table on stderr")
        return p

    p = add("decompose", cmd_decompose, "build a tree decomposition")
    p.add_argument("--input", required=True, help="graph in edge-list format")
    p.add_argument("--method", choices=("minfill", "exact"), default="minfill")
    p.add_argument("--out", help="write PACE-format decomposition here")

    p = add("homcount", cmd_homcount, "count homomorphisms pattern -> host")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)

    p = add("subcount", cmd_subcount, "count subgraph copies or embeddings")
    p.add_argument("--pattern")
    p.add_argument("--host")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--emb", action="store_true",
                       help="count injective homomorphisms instead of copies")
    group.add_argument("--sub", action="store_true",
                       help="count subgraph copies (the default)")
    p.add_argument("--expansion", metavar="PATTERN",
                   help="dump the homomorphism-basis expansion of a pattern")

    p = add("permcount", cmd_permcount, "count pattern occurrences in a permutation")
    p.add_argument("--pattern", required=True,
                   help="pattern permutation, inline or a file path")
    p.add_argument("--text", required=True,
                   help="text permutation, inline or a file path")
    p.add_argument("--decide", action="store_true",
                   help="report containment only")

    p = add("kpath", cmd_kpath, "decide a k-vertex path in a planar graph")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--planar", action="store_true",
                   help="assert that the input graph is planar")

    p = add("mis", cmd_mis, "maximum independent set")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("branch", "td", "brute"), default="branch")

    add("verify", cmd_verify, "run the built-in oracle suites")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ResourceLimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
