"""Command-line entry point: ``spectrex <command> ...``.

Tables and progress go to stderr; JSON goes to the ``-o`` path, or to stdout
when no path is given. Exit codes: 0 success or verdict recorded, 1 invalid
input, 2 capability limit, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from . import search
from .bounds import chvatal_hanson_report, erdos_stone_report, intersection_report, turan_report
from .canon import canonical_graph6
from .errors import CapabilityError, ConvergenceError, InputError
from .graph import Graph, turan_edges
from .graph6 import graph6_decode, graph6_encode
from .invariants import ProblemSpec
from .search import SCHEMA_VERSION, ExtremalCatalog, SearchInterrupted
from .spectral import DEFAULT_TOL, QuotientSpec, perron_formula_check, quotient_rho, spectral_radius

EXIT_OK, EXIT_INPUT, EXIT_CAPABILITY, EXIT_INTERNAL = 0, 1, 2, 3

BUILTINS = {
    "K3": "Bw",
    "K4": "C~",
    "K5": "D~{",
    "C5": "Dhc",
    "P3": "Bg",
    "Petersen": "IheA@GUAo",
}


def _eprint(*args) -> None:
    print(*args, file=sys.stderr)


def read_graph(text: str) -> Graph:
    """A builtin name, a graph6 string, or ``-`` for one graph6 line on stdin."""
    if text == "-":
        text = sys.stdin.readline()
    if text in BUILTINS:
        return graph6_decode(BUILTINS[text])
    return graph6_decode(text)


def parse_range(text: str) -> list[int]:
    """``"9"`` or ``"3..9"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad order range {text!r}; use N or A..B") from None
    if lo > hi or lo < 0:
        raise InputError(f"empty or negative order range {text!r}")
    return list(range(lo, hi + 1))


def _is_clique(g: Graph) -> bool:
    return g.edge_count == g.n * (g.n - 1) // 2


def build_spec(args, *, raw_search: bool = False) -> ProblemSpec:
    F = read_graph(args.F)
    a = getattr(args, "a", None)
    if a is None and _is_clique(F):
        a = 0  # ex(n, K_{r+1}) = e(T(n, r)) exactly
    try:
        spec = ProblemSpec(
            F,
            args.k,
            a=a,
            r=args.r,
            allow_bipartite=raw_search,
            allow_r_override=args.allow_r_override,
        )
    except InputError as exc:
        if "bipartite" in str(exc):
            raise InputError(f"{exc}; bipartite F is accepted only by `search`") from None
        raise
    if spec.chi < 3:
        _eprint(f"note: F is bipartite (chi = {spec.chi}); theorem checks do not apply, raw search only")
    if args.r is not None and args.r != spec.chi - 1:
        _eprint(f"warning: r overridden to {spec.r} (chi(F) - 1 = {spec.chi - 1})")
    return spec


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
        _eprint(f"wrote {path}")
    else:
        print(text)


# ---------------------------------------------------------------------------
# catalog cache


class CatalogCache:
    """Catalogs keyed by (F graph6, k, r, n, kind, tol, engine version) under ``SPECTREX_CACHE_DIR``."""

    def __init__(self, root: str | None):
        self.root = Path(root) if root else None

    def _path(self, kind: str, n: int, spec: ProblemSpec, tol: float | None) -> Path:
        key = json.dumps(
            [graph6_encode(spec.F), spec.k, spec.r, n, kind, tol, __version__], separators=(",", ":")
        )
        return self.root / f"{kind}-n{n}-{hashlib.sha256(key.encode()).hexdigest()[:16]}.json"

    def get(self, kind, n, spec, tol=None) -> ExtremalCatalog | None:
        if self.root is None:
            return None
        p = self._path(kind, n, spec, tol)
        if not p.exists():
            return None
        cat = ExtremalCatalog.load(p)
        cat.family = spec.descriptor()  # a is not part of the key
        return cat

    def put(self, cat: ExtremalCatalog, spec: ProblemSpec, tol=None) -> None:
        if self.root is None:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        cat.save(self._path(cat.kind, cat.n, spec, tol))

    def edge_fn(self, **opts):
        def run(n, spec, **kw):
            cat = self.get("edge", n, spec)
            if cat is None:
                cat = search.edge_extremal(n, spec, **{**opts, **kw})
                self.put(cat, spec)
            return cat

        return run

    def spectral_fn(self, **opts):
        def run(n, spec, tol, **kw):
            cat = self.get("spectral", n, spec, tol)
            if cat is None:
                cat = search.spectral_extremal(n, spec, tol, **{**opts, **kw})
                self.put(cat, spec, tol)
            return cat

        return run


def _cache(args) -> CatalogCache:
    return CatalogCache(os.environ.get("SPECTREX_CACHE_DIR"))


def _search_opts(args) -> dict:
    return {"cap": args.cap, "workers": args.workers, "split_depth": args.split_depth}


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args) -> int:
    spec = build_spec(args)
    cache = _cache(args)
    graphs = search.construct_candidates(args.n, spec, edge_fn=cache.edge_fn(**_search_opts(args)))
    rows = []
    for g in graphs:
        s = graph6_encode(g)
        print(s)
        rows.append({"graph6": s, "canonical_graph6": canonical_graph6(g), "n": g.n, "edges": g.edge_count})
        _eprint(f"n={g.n} edges={g.edge_count}")
    if args.output:
        _write_json(
            {
                "schema_version": SCHEMA_VERSION,
                "report": "construct",
                "engine_version": __version__,
                "family": spec.descriptor(),
                "n": args.n,
                "graphs": rows,
            },
            args.output,
        )
    return EXIT_OK


def cmd_search(args) -> int:
    spec = build_spec(args, raw_search=True)
    ckpt = args.checkpoint
    if ckpt and Path(ckpt).exists() and not args.resume:
        raise InputError(f"checkpoint {ckpt} exists; pass --resume to continue it or delete it")
    if args.resume and not ckpt:
        raise InputError("--resume needs --checkpoint PATH")
    cache = _cache(args)
    tol = args.tol if args.kind == "spectral" else None
    cat = cache.get(args.kind, args.n, spec, tol)
    if cat is None:
        opts = {
            **_search_opts(args),
            "prune": not args.no_prune,
            "checkpoint": ckpt,
            "stop_after": args.stop_after,
        }
        search.log_progress = (lambda msg: _eprint(msg)) if args.verbose else None
        try:
            if args.kind == "edge":
                cat = search.edge_extremal(args.n, spec, **opts)
            else:
                cat = search.spectral_extremal(args.n, spec, args.tol, **opts)
        except SearchInterrupted as exc:
            _eprint(f"stopped: {exc.done}/{exc.total} subtrees done; rerun with --resume --checkpoint {ckpt}")
            return EXIT_OK
        cache.put(cat, spec, tol)
    _eprint(f"{cat.kind} n={cat.n} value={cat.value} classes={len(cat.graphs)}")
    for s in cat.graphs:
        _eprint(f"  {s}")
    _write_json(cat.to_dict(), args.output)
    return EXIT_OK


def _unconditional(spec: ProblemSpec) -> bool:
    # k = 1 with a clique F: extremal uniqueness holds for every n
    return spec.k == 1 and _is_clique(spec.F)


def cmd_verify(args) -> int:
    spec = build_spec(args)
    ns = parse_range(args.n)
    cache = _cache(args)
    opts = _search_opts(args)
    if args.measure_a:
        spec = _measured(spec, ns, cache, opts)
    if args.kind == "edge":
        rep = search.verify_edge_theorem(ns, spec, edge_fn=cache.edge_fn(**opts))
        _eprint(f"{'n':>3} {'ex':>5} {'constr':>6} {'lower':>6}  verdict")
        for r in rep.rows:
            _eprint(
                f"{r['n']:>3} {r['ex']:>5} {str(r['construction_edges']):>6} {str(r.get('lower_bound')):>6}  {r['verdict']}"
            )
        series = [(r["n"], r["ex"]) for r in rep.rows]
        violated = _unconditional(spec) and any(r["verdict"] != search.EQUAL for r in rep.rows)
    else:
        rep = search.verify_spectral_theorem(
            ns, spec, args.tol, edge_fn=cache.edge_fn(**opts), spectral_fn=cache.spectral_fn(**opts)
        )
        _eprint(f"{'n':>3} {'rho_max':>12} {'gap':>10} {'residual':>9}  contained")
        for r in rep.rows:
            gap = "-" if r["gap"] is None else f"{r['gap']:.3e}"
            _eprint(f"{r['n']:>3} {r['rho_max']:>12.9f} {gap:>10} {r['residual']:>9.1e}  {r['contained']}")
        series = [(r["n"], r["rho_max"]) for r in rep.rows]
        violated = _unconditional(spec) and not all(r["contained"] for r in rep.rows)
    _eprint(f"stable from n = {rep.stable_from}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "ex" if args.kind == "edge" else "rho"])
            w.writerows(series)
    _write_json(rep.to_dict(), args.output)
    if violated:
        _eprint("invariant violation: an unconditional k = 1 clique statement failed")
        return EXIT_INTERNAL
    return EXIT_OK


def _measured(spec: ProblemSpec, ns, cache: CatalogCache, opts) -> ProblemSpec:
    base = spec.with_k(1)
    fn = cache.edge_fn(**opts)
    a = {n: fn(n, base).value - turan_edges(n, spec.r) for n in ns}
    top = [a[n] for n in ns[len(ns) // 2 :]]
    if len(set(top)) != 1:
        raise InputError(f"excess a(n) is not constant on the upper half of the range: {a}")
    _eprint(f"measured a = {top[0]} (a(n) = {a})")
    return dataclasses.replace(spec, a=top[0])


def cmd_spectral(args) -> int:
    if args.mode == "quotient":
        if not args.sizes:
            raise InputError("quotient mode needs --sizes")
        try:
            sizes = tuple(int(x) for x in args.sizes.split(",") if x.strip())
        except ValueError:
            raise InputError(f"bad --sizes {args.sizes!r}") from None
        q = QuotientSpec(sizes, args.clique)
        rho, y, res = quotient_rho(q, args.tol)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "report": "quotient",
            "sizes": list(sizes),
            "clique": args.clique,
            "rho": rho,
            "residual": res,
            "part_values": [float(v) for v in y],
        }
        if args.clique >= 1:
            payload["formula_deviation"] = perron_formula_check(q, args.tol)
        _eprint(f"rho = {rho:.12f} (residual {res:.1e})")
    else:
        if not args.graph6:
            raise InputError("graph mode needs --graph6 STRING (or - for stdin)")
        g = read_graph(args.graph6)
        res = spectral_radius(g, args.tol)
        payload = {"schema_version": SCHEMA_VERSION, "report": "spectral", "n": g.n, **res.to_dict()}
        _eprint(f"rho = {res.rho:.12f} (residual {res.residual:.1e}, {res.iterations} iterations)")
    _write_json(payload, args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.which == "chvatal-hanson":
        rep = chvatal_hanson_report(args.nu, args.delta, oracle=args.oracle)
    elif args.which == "turan":
        rep = turan_report(args.n, args.r)
    elif args.which == "intersection":
        try:
            sets = json.loads(Path(args.sets).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read sets from {args.sets}: {exc}") from None
        if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
            raise InputError("sets file must hold a JSON list of lists")
        rep = intersection_report([[json.dumps(x, sort_keys=True) for x in s] for s in sets])
    else:
        rep = erdos_stone_report(args.n, read_graph(args.F))
    _eprint(f"{rep.name}: bound {rep.to_dict()['bound_value']} witness {rep.to_dict()['witness_value']} satisfied {rep.satisfied}")
    payload = {"schema_version": SCHEMA_VERSION, "report": "bounds", **rep.to_dict()}
    _write_json(payload, args.output)
    return EXIT_OK if rep.satisfied else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# parser


def _add_family(p: argparse.ArgumentParser) -> None:
    p.add_argument("--F", required=True, help=f"forbidden graph: graph6 string or one of {', '.join(BUILTINS)}")
    p.add_argument("--k", type=int, default=1, help="number of disjoint copies (default 1)")
    p.add_argument("--r", type=int, default=None, help="override r (must equal chi(F) - 1 unless --allow-r-override)")
    p.add_argument("--allow-r-override", action="store_true")
    p.add_argument("--a", type=int, default=None, help="assert ex(n, F) - e(T(n, r)) = a (cliques default to 0)")


def _add_search_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cap", type=int, default=search.DEFAULT_CAP, help="largest order enumerated (default 11)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--split-depth", type=int, default=None)
    p.add_argument("-o", "--output", default=None, help="JSON output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spectrex", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build K_{k-1} v G for each extremal G")
    _add_family(p)
    p.add_argument("--n", type=int, required=True)
    _add_search_opts(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exact extremal catalog by exhaustive enumeration")
    p.add_argument("kind", choices=["edge", "spectral"])
    _add_family(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--no-prune", action="store_true", help="disable witness-based edge-count pruning")
    p.add_argument("--checkpoint", default=None, help="write progress here after every batch")
    p.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    p.add_argument("--stop-after", type=int, default=None, help=argparse.SUPPRESS)
    p.add_argument("-v", "--verbose", action="store_true")
    _add_search_opts(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="compare extremal catalogs with the join construction")
    p.add_argument("kind", choices=["edge", "spectral"])
    _add_family(p)
    p.add_argument("--n", required=True, help="order or inclusive range A..B")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--measure-a", action="store_true", help="measure a over the range instead of asserting it")
    p.add_argument("--csv", default=None, help="write the n vs ex (or rho) series here")
    _add_search_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectral", help="certified spectral radius of a graph or quotient")
    p.add_argument("mode", nargs="?", choices=["graph", "quotient"], default="graph")
    p.add_argument("--graph6", default=None, help="graph6 string, builtin name, or - for stdin")
    p.add_argument("--sizes", default=None, help="comma-separated part sizes (quotient mode)")
    p.add_argument("--clique", type=int, default=0, help="order of the joined clique (quotient mode)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("bounds", help="closed-form bounds with oracles")
    bsub = p.add_subparsers(dest="which", required=True)
    b = bsub.add_parser("chvatal-hanson")
    b.add_argument("--nu", type=int, required=True)
    b.add_argument("--delta", type=int, required=True)
    b.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    b = bsub.add_parser("turan")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--r", type=int, required=True)
    b = bsub.add_parser("intersection")
    b.add_argument("--sets", required=True, help="JSON file holding a list of lists")
    b = bsub.add_parser("erdos-stone")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--F", required=True)
    for b in bsub.choices.values():
        b.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bounds)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _eprint(f"error: {exc}")
        return EXIT_INPUT
    except (CapabilityError, ConvergenceError) as exc:
        _eprint(f"capability limit: {exc}")
        return EXIT_CAPABILITY
    except AssertionError as exc:
        _eprint(f"internal invariant violation: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
