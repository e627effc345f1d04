"""Command line front end: ``graphsplines {analyze,cohomology,resolve,classify,corpus}``.

Every failure prints one line ``error: <category>: <message>`` on stderr.
Exit codes: 1 bad input, 2 internal inconsistency, 3 usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from importlib import resources
from pathlib import Path

from .algebra import GREVLEX, LEX, hilbert_series_from_betti, minimal_free_resolution
from .analysis import (InconsistencyError, Pipeline, analyze, classify_constant_multiplicity,
                       classify_totally_free, graph_id)
from .cliques import build_clique_complex, leaf_ordering, simplicial_cohomology
from .corpus import DEFAULT_SEED, default_corpus, format_summary, run_corpus
from .graphs import GraphError, MultiGraph, blocks, is_chordal, longest_induced_cycle

EXIT_INPUT, EXIT_INCONSISTENT, EXIT_USAGE = 1, 2, 3


class CliError(Exception):
    def __init__(self, category: str, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.category = category
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, EXIT_USAGE)


# -- input ---------------------------------------------------------------------

def fixture_names() -> list:
    return sorted(p.name[:-5] for p in resources.files("graphsplines.data").iterdir()
                  if p.name.endswith(".json"))


def _read_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("parse", f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}")


def load_graph(arg: str) -> MultiGraph:
    """A graph JSON path, or the name of a bundled fixture such as ``prism``."""
    path = Path(arg)
    if path.exists():
        text, source, name = path.read_text(), str(path), path.stem
    elif arg in fixture_names():
        text = resources.files("graphsplines.data").joinpath(f"{arg}.json").read_text()
        source, name = f"fixture {arg}", arg
    else:
        raise CliError("input", f"no such file or fixture: {arg}")
    data = _read_json(text, source)
    try:
        return MultiGraph.from_json(data, name=name)
    except (GraphError, TypeError) as exc:
        raise CliError("graph", f"{source}: {exc}")


def apply_multiplicity(g: MultiGraph, arg: str | None) -> MultiGraph:
    """``const:K`` or a JSON file with per-edge entries ``[i, j, m]``."""
    if arg is None:
        return g
    if arg.startswith("const:"):
        try:
            k = int(arg[6:])
        except ValueError:
            raise CliError("usage", f"bad multiplicity {arg!r}", EXIT_USAGE)
        if k < 1:
            raise CliError("usage", "constant multiplicity must be >= 1", EXIT_USAGE)
        return g.with_multiplicity(k)
    path = Path(arg)
    if not path.exists():
        raise CliError("input", f"no such multiplicity file: {arg}")
    data = _read_json(path.read_text(), arg)
    entries = data.get("edges", []) if isinstance(data, dict) else data
    mult = {}
    for e in entries:
        if not (isinstance(e, list) and len(e) == 3):
            raise CliError("graph", f"{arg}: multiplicity entry {e!r} must be [i, j, m]")
        mult[(min(e[0], e[1]), max(e[0], e[1]))] = e[2]
    missing = [e for e in g.edges if e not in mult]
    extra = [e for e in mult if e not in set(g.edges)]
    if missing or extra:
        raise CliError("graph", f"{arg}: multiplicities must cover exactly the edges "
                                f"(missing {missing}, unknown {extra})")
    try:
        return g.with_multiplicity(mult)
    except GraphError as exc:
        raise CliError("graph", f"{arg}: {exc}")


# -- commands --------------------------------------------------------------------

def _order(args):
    return LEX if args.order == "lex" else GREVLEX


def _graph(args) -> MultiGraph:
    return apply_multiplicity(load_graph(args.graph), args.multiplicity)


def cmd_analyze(args) -> tuple:
    rep = analyze(_graph(args), _order(args))
    data = rep.to_json()
    lines = [f"graph {rep.graph_id} ({rep.multiplicity}, {rep.order})",
             f"pdim D = {rep.pdim_derivations}  free = {rep.is_free}",
             f"bounds: cycle lower {rep.bound_lower_cycle}, cohomology upper {rep.bound_upper}"
             f"{' (tight)' if rep.upper_tight else ''}, rank {rep.bound_global}",
             f"chordal {rep.chordal}  quasi-forest {rep.quasi_forest}  "
             f"blocks-are-cliques {rep.blocks_are_cliques}  totally-free-shape "
             f"{rep.totally_free_shape}"]
    for c in rep.cohomology:
        lines.append(f"H^{c.degree}(R/J): " + ("0" if c.zero else
                     f"pdim {c.pdim}, codim {c.codim}, generators in degrees {c.generator_degrees}"))
    for v in rep.violations:
        lines.append(f"VIOLATION {v}")
    return data, "\n".join(lines), rep.violations


def cmd_cohomology(args) -> tuple:
    g = _graph(args)
    p = Pipeline(g, _order(args))
    degrees = [args.degree] if args.degree is not None else range(p.top_degree + 1)
    names = p.ring.names()
    out, lines = [], []
    for i in degrees:
        if not 0 <= i <= p.top_degree:
            h_json, res = {"gen_degrees": [], "relations": None}, None
            betti = {"pdim": None, "betti": []}
            zero, hs = True, None
        else:
            h = p.cohomology(i)
            res = p.cohomology_resolution(i)
            h_json, betti = h.to_json(names), res.betti.to_json()
            hs = p.ring.full_series(hilbert_series_from_betti(res.betti, p.ring.nvars))
            zero = hs.is_zero()
        out.append({"degree": i, "zero": zero, "pdim": betti["pdim"], "presentation": h_json,
                    "betti": betti, "hilbert": hs.to_json() if hs else None})
        lines.append(f"H^{i}(R/J[{graph_id(g)}]): " + ("0" if zero else f"pdim {betti['pdim']}"))
        if res is not None and not zero:
            lines.append(res.betti.format())
    data = {"graph": graph_id(g), "variables": names, "cohomology": out}
    return data, "\n".join(lines), []


def cmd_resolve(args) -> tuple:
    g = _graph(args)
    p = Pipeline(g, _order(args))
    if args.module == "derivations":
        m, res = p.derivations, p.derivation_resolution
    else:
        i = int(args.module.split(":")[1])
        m = p.cohomology(i) if 0 <= i <= p.top_degree else None
        if m is None:
            raise CliError("usage", f"no cohomology in degree {i}", EXIT_USAGE)
        res = p.cohomology_resolution(i)
    names = p.ring.names()
    data = {"graph": graph_id(g), "module": args.module, "variables": names,
            "betti": res.betti.to_json(),
            "maps": [d.to_json(names) for d in res.maps]}
    text = f"{args.module} of {graph_id(g)}: pdim {res.pdim}\n{res.betti.format()}"
    return data, text, []


def cmd_classify(args) -> tuple:
    g = _graph(args)
    cert = is_chordal(g)
    cc = build_clique_complex(g)
    lo = leaf_ordering(cc)
    try:
        verdict = classify_constant_multiplicity(g)
    except InconsistencyError as exc:
        return {"graph": graph_id(g)}, "", [str(exc)]
    data = {
        "graph": graph_id(g),
        "chordal": cert.chordal,
        "certificate": {"elimination_order": list(cert.elimination_order),
                        "chordless_cycle": list(cert.cycle)},
        "clique_complex": cc.to_json(),
        "clique_complex_betti": simplicial_cohomology(cc),
        "leaf_ordering": [list(f) for f in lo.facets] if lo else None,
        "blocks": [list(b) for b in verdict.blocks],
        "maximal_cliques": [list(c) for c in verdict.maximal_cliques],
        "free_for_all_const_m_ge_2": verdict.free_for_all_const_m_ge_2,
        "vertex_separated_ordering": verdict.vertex_separated_ordering,
        "totally_free": classify_totally_free(g),
        "longest_induced_cycle": longest_induced_cycle(g),
    }
    text = "\n".join(f"{k}: {v}" for k, v in data.items() if k not in ("certificate",))
    return data, text, []


def cmd_corpus(args) -> tuple:
    items = default_corpus(seed=args.seed, slow=args.slow)
    res = run_corpus(items, _order(args), workers=args.workers)
    return res.to_json(), format_summary(res), res.violations


COMMANDS = {"analyze": cmd_analyze, "cohomology": cmd_cohomology, "resolve": cmd_resolve,
            "classify": cmd_classify, "corpus": cmd_corpus}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "table"], default="json")

    graph = _Parser(add_help=False)
    graph.add_argument("graph", help="graph JSON file or fixture name (" +
                       ", ".join(fixture_names()) + ")")
    graph.add_argument("--multiplicity", help="const:K or a JSON file of [i, j, m] entries")

    p = _Parser(prog="graphsplines", description="Splines, multi-derivations and "
                "projective dimension of graphic multi-arrangements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[graph, common], help="full report for one graph")
    c = sub.add_parser("cohomology", parents=[graph, common], help="cohomology of R/J[G]")
    c.add_argument("--degree", type=int)
    r = sub.add_parser("resolve", parents=[graph, common], help="minimal free resolution")
    r.add_argument("--module", default="derivations",
                   help="'derivations' (default) or 'H:i' for H^i(R/J[G])")
    sub.add_parser("classify", parents=[graph, common], help="combinatorial verdicts only")
    k = sub.add_parser("corpus", parents=[common], help="run the pinned corpus")
    k.add_argument("--slow", action="store_true", help="include W5, W6 and the Fritsch graph")
    k.add_argument("--seed", type=int, default=DEFAULT_SEED)
    k.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "resolve" and args.module != "derivations":
            if not (args.module.startswith("H:") and args.module[2:].isdigit()):
                raise CliError("usage", f"bad --module {args.module!r}", EXIT_USAGE)
        data, text, violations = COMMANDS[args.command](args)
        body = text if args.format == "table" else json.dumps(data, indent=2, default=str)
        if args.out:
            Path(args.out).write_text(body + "\n")
        else:
            sys.stdout.write(body + "\n")
        if violations:
            raise CliError("inconsistency", f"{len(violations)} violation(s); first: {violations[0]}",
                           EXIT_INCONSISTENT)
        return 0
    except CliError as exc:
        print(f"error: {exc.category}: {exc}", file=sys.stderr)
        return exc.code
    except InconsistencyError as exc:
        print(f"error: inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
