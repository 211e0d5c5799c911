"""
The ``raf`` command line.

Subcommands:
- solve: cons / cred (exit 10 or 20) and enum (exit 0) under a semantics
- encode: decomposition-guided QBF with provenance sidecar and induced TD
- decompose: heuristic TD (or a check of a given TD) of the primal graph
- translate: AF, CAF and twofold documents to RAF documents
- generate: hardness instances from QBFs and seeded random instances
- qbf-eval: truth of a QDIMACS file (built-in evaluator or external solver)

Library errors become exit codes here and nowhere else.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .config import RunConfig, load_config
from .core.classify import clausify_raf, is_clausal
from .core.model import AF, RAF, RcClass, Semantics
from .core.parser import parse_af, parse_caf, parse_document, parse_raf, parse_twofold, render_af, render_caf, render_raf
from .decomposition.graph import primal_graph, qbf_primal_graph
from .decomposition.pace import read_td, write_pace_graph, write_td
from .decomposition.td import Heuristic, TreeDecomposition, clausified_td, heuristic_td, is_normalized, validate_td
from .encodings import Fragment, check_width, encode
from .errors import ExitCode, RafError
from .generators import InstanceGenerator
from .qbf.evaluate import QbfEvaluator, evaluate_qbf
from .qbf.external import solve_external
from .qbf.io import read_qdimacs, write_qdimacs, write_qcir
from .qbf.model import QbfInstance
from .qbf.prenex import prenex_cnf
from .semantics.af import Extension
from .semantics.raf import Maximality, RafReasoner
from .translators.hardness import HardnessInstance, cred_hardness_instance, hardness_instance
from .translators.simulations import af_to_raf, caf_query_semantics, caf_to_raf, twofold_to_raf

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

HARDNESS_KINDS = {
    "sat-simple": (RcClass.SIMPLE, "e"),
    "qsat2-prop": (RcClass.PROPOSITIONAL, "ea"),
    "qsat2-tight": (RcClass.TIGHT, "ea"),
    "qsat3-disj": (RcClass.DISJUNCTIVE, "eae"),
}

CRED_SHAPES = {
    RcClass.SIMPLE: "ae",
    RcClass.PROPOSITIONAL: "aea",
    RcClass.DISJUNCTIVE: "aeae",
}

RANDOM_KINDS = ("random-af", "random-raf", "random-caf", "random-qbf")

QBF_SUFFIXES = (".qdimacs", ".cnf", ".dimacs")


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with ExitCode.USAGE instead of argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE, f"{self.prog}: error: {message}\n")


# output


def report(results: Iterable[Extension], fmt: str = "text") -> str:
    """One line per extension: JSON objects, or sorted sets in braces."""
    lines = []
    for ext in sorted(results, key=lambda e: e.sort_key()):
        if fmt == "json":
            lines.append(json.dumps(ext.to_dict(), sort_keys=True))
        else:
            lines.append("{" + ",".join(sorted(ext.members)) + "}")
    return "".join(line + "\n" for line in lines)


def _emit(text: str, path: Optional[Path] = None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", path)


def _read(path: Union[str, Path]) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


# input


def load_instance(path: Union[str, Path]) -> RAF:
    """RAF document, or an AF document (no ``#mode`` and no ``rc`` lines) read via af_to_raf."""
    text = _read(path)
    doc = parse_document(text, str(path))
    if doc.mode_token is None and not doc.rc:
        logger.debug("%s has no rejection conditions; reading it as an AF", path)
        return af_to_raf(parse_af(text, str(path)))
    return parse_raf(text, str(path))


def load_qbf(path: Union[str, Path]) -> QbfInstance:
    return read_qdimacs(_read(path), str(path))


# subcommands


def cmd_solve(args: argparse.Namespace, config: RunConfig) -> int:
    raf = load_instance(args.file)
    sigma = Semantics.parse(config.semantics)
    maximality = Maximality(config.maximality)
    with RafReasoner(raf, config.caps, maximality) as reasoner:
        if config.task == "enum":
            _emit(report(reasoner.enumerate(sigma), config.output_format))
            return ExitCode.OK
        if config.task == "cred":
            if not args.arg:
                raise argparse.ArgumentError(None, "--task cred needs --arg")
            verdict = reasoner.cred(sigma, args.arg)
        else:
            verdict = reasoner.cons(sigma)
    print("YES" if verdict else "NO")
    return ExitCode.YES if verdict else ExitCode.NO


def _source_td(obj: Union[AF, RAF], td_path: Optional[str], heuristic: str) -> TreeDecomposition:
    graph = primal_graph(obj)
    if td_path is None:
        return heuristic_td(graph, Heuristic(heuristic))
    td = read_td(_read(td_path), graph, td_path)
    validate_td(graph, td)
    if not is_normalized(td) or (isinstance(obj, RAF) and td.condition_slots is None):
        logger.warning("%s is not normalized; normalizing it before encoding", td_path)
    return td


def cmd_encode(args: argparse.Namespace, config: RunConfig) -> int:
    fragment = Fragment(config.fragment)
    raf = load_instance(args.file)
    obj: Union[AF, RAF] = raf.af if fragment is Fragment.STAB else raf
    if fragment is Fragment.PROP and not is_clausal(raf):
        obj = clausify_raf(raf)
        if args.td is None:
            td = _source_td(obj, None, config.heuristic)
        else:
            # a given TD describes the instance as written, before the Tseitin atoms
            td = clausified_td(_source_td(raf, args.td, config.heuristic), raf, obj)
    else:
        td = _source_td(obj, args.td, config.heuristic)
    encoding = encode(obj, td, fragment)
    check_width(encoding)

    qbf = prenex_cnf(encoding.qbf) if args.prenex else encoding.qbf
    if args.qbf_format == "qcir":
        formula, suffix = write_qcir(qbf), ".qcir"
    else:
        formula, suffix = write_qdimacs(qbf, allow_terms=True), ".qdimacs"

    if config.output_path is None:
        _emit(encoding.width_line() + "\n" + formula)
        return ExitCode.OK
    prefix = str(config.output_path)
    written = {
        Path(prefix + suffix): formula,
        Path(prefix + ".json"): encoding.provenance_json() + "\n",
        Path(prefix + ".td"): write_td(encoding.induced_td, qbf_primal_graph(encoding.qbf)),
    }
    for path, text in written.items():
        _emit(text, path)
    print("\n".join(str(p) for p in written))
    print(encoding.width_line())
    return ExitCode.OK


def _graph_of(path: str, kind: Optional[str]):
    if kind == "qbf" or (kind is None and path.endswith(QBF_SUFFIXES)):
        return qbf_primal_graph(load_qbf(path))
    return primal_graph(load_instance(path))


def cmd_decompose(args: argparse.Namespace, config: RunConfig) -> int:
    graph = _graph_of(args.file, args.input_kind)
    if args.graph:
        _emit(write_pace_graph(graph), config.output_path)
        return ExitCode.OK
    if args.check:
        td = read_td(_read(args.check), graph, args.check)
        print(f"c width {validate_td(graph, td)}")
        return ExitCode.OK
    td = heuristic_td(graph, Heuristic(config.heuristic))
    logger.info("%s decomposition of width %d", config.heuristic, td.width)
    _emit(write_td(td, graph), config.output_path)
    return ExitCode.OK


def cmd_translate(args: argparse.Namespace, config: RunConfig) -> int:
    text = _read(args.file)
    header = ""
    if args.source == "af":
        raf = af_to_raf(parse_af(text, args.file))
    elif args.source == "caf":
        sigma = Semantics.parse(config.semantics)
        raf = caf_to_raf(parse_caf(text, args.file), sigma)
        query = caf_query_semantics(sigma)
        header = f"% {sigma.value} extensions of the CAF are the {query.value} extensions\n"
    else:
        af, shrinking = parse_twofold(text, args.file)
        if args.shrink is not None:
            shrinking = tuple(name for name in args.shrink.split(",") if name)
        raf = twofold_to_raf(af, shrinking)
    _emit(header + render_raf(raf), config.output_path)
    return ExitCode.OK


def _hardness_header(instance: HardnessInstance) -> str:
    lines = [f"% class {instance.rc_class.value}", f"% semantics {instance.semantics.value}"]
    if instance.query is not None:
        lines.append(f"% query {instance.query} (not credulously accepted iff the formula is true)")
        lines.append(f"% maximality {instance.maximality.value}")
    return "".join(line + "\n" for line in lines)


def cmd_generate(args: argparse.Namespace, config: RunConfig) -> int:
    gen = InstanceGenerator(config.seed)
    size, groups = args.size, args.groups
    if args.kind in RANDOM_KINDS:
        if args.kind == "random-af":
            text = render_af(gen.af(size))
        elif args.kind == "random-raf":
            text = render_raf(gen.raf(RcClass(args.rc_class or "propositional"), size, args.auxiliary))
        elif args.kind == "random-caf":
            text = render_caf(gen.caf(size))
        else:
            text = write_qdimacs(gen.qbf(args.shape, size, groups), allow_terms=True)
        _emit(text, config.output_path)
        return ExitCode.OK

    if args.kind == "dw-cred":
        rc_class = RcClass(args.rc_class or "simple")
        shape = CRED_SHAPES.get(rc_class, "ae")
    else:
        rc_class, shape = HARDNESS_KINDS[args.kind]
    source = load_qbf(args.file) if args.file else gen.qbf(shape, size, groups)
    if args.kind == "dw-cred":
        instance = cred_hardness_instance(source, rc_class)
    else:
        instance = hardness_instance(source, rc_class)
    text = _hardness_header(instance) + render_raf(instance.raf)
    if config.output_path is None:
        _emit(text)
        return ExitCode.OK
    prefix = str(config.output_path)
    _emit(text, Path(prefix + ".raf"))
    _emit(write_qdimacs(source, allow_terms=True), Path(prefix + ".qdimacs"))
    print(f"{prefix}.raf\n{prefix}.qdimacs")
    return ExitCode.OK


def cmd_qbf_eval(args: argparse.Namespace, config: RunConfig) -> int:
    qbf = load_qbf(args.file)
    if args.external:
        verdict = solve_external(qbf, config.qbf_solver, args.timeout)
    elif args.brute_force:
        verdict = evaluate_qbf(qbf, config.caps)
    else:
        verdict = QbfEvaluator(qbf, config.caps).evaluate()
    print(f"s cnf {int(verdict)}")
    return ExitCode.YES if verdict else ExitCode.NO


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="raf", description="Rejection augmented argumentation frameworks")
    parser.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--config", type=Path, help="YAML configuration file (default: ./raf.yaml)")
    parser.add_argument("--seed", type=int, help="random seed (default 0)")
    parser.add_argument("-o", "--output", type=Path, dest="output_path", help="output file or prefix")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    solve = sub.add_parser("solve", help="decide or enumerate extensions")
    solve.add_argument("--sem", dest="semantics", help="conf, adm, comp, pref, stab, semiSt or stag")
    solve.add_argument("--task", choices=["cons", "cred", "enum"])
    solve.add_argument("--arg", help="query argument for --task cred")
    solve.add_argument("--maximality", choices=[m.value for m in Maximality])
    solve.add_argument("--format", dest="output_format", choices=["json", "text"])
    solve.add_argument("file")
    solve.set_defaults(handler=cmd_solve)

    enc = sub.add_parser("encode", help="decomposition-guided QBF encoding of stable existence")
    enc.add_argument("--fragment", choices=[f.value for f in Fragment])
    enc.add_argument("--format", dest="qbf_format", default="qdimacs", choices=["qdimacs", "qcir"])
    enc.add_argument("--td", help="PACE tree decomposition of the primal graph")
    enc.add_argument("--heuristic", choices=[h.value for h in Heuristic])
    enc.add_argument("--prenex", action="store_true", help="turn the term part into selector clauses")
    enc.add_argument("file")
    enc.set_defaults(handler=cmd_encode)

    dec = sub.add_parser("decompose", help="tree decomposition of the primal graph")
    dec.add_argument("--heuristic", choices=[h.value for h in Heuristic])
    dec.add_argument("--input", dest="input_kind", choices=["instance", "qbf"])
    dec.add_argument("--graph", action="store_true", help="print the primal graph in PACE format")
    dec.add_argument("--check", metavar="TD", help="validate a PACE TD and print its width")
    dec.add_argument("file")
    dec.set_defaults(handler=cmd_decompose)

    tr = sub.add_parser("translate", help="AF, CAF or twofold document to a RAF")
    tr.add_argument("--from", dest="source", required=True, choices=["af", "caf", "twofold"])
    tr.add_argument("--sem", dest="semantics", help="CAF semantics to simulate")
    tr.add_argument("--shrink", help="comma-separated shrinking; replaces shrink lines of the document")
    tr.add_argument("file")
    tr.set_defaults(handler=cmd_translate)

    gen = sub.add_parser("generate", help="hardness or random instances")
    gen.add_argument("--kind", required=True, choices=list(HARDNESS_KINDS) + ["dw-cred"] + list(RANDOM_KINDS))
    gen.add_argument("--class", dest="rc_class", choices=[c.value for c in RcClass])
    gen.add_argument("--size", type=int, default=3, help="arguments, or variables per block")
    gen.add_argument("--groups", type=int, default=4, help="clauses or terms")
    gen.add_argument("--auxiliary", type=int, default=3, help="auxiliary atoms of random RAFs")
    gen.add_argument("--shape", default="ea", help="prefix of random QBFs, e.g. eae")
    gen.add_argument("file", nargs="?", help="source QBF (random when omitted)")
    gen.set_defaults(handler=cmd_generate)

    ev = sub.add_parser("qbf-eval", help="truth value of a QDIMACS formula")
    ev.add_argument("--brute-force", action="store_true", help="plain expansion")
    ev.add_argument("--external", action="store_true", help="run the solver named by RAF_QBF_SOLVER")
    ev.add_argument("--timeout", type=float, default=60.0)
    ev.add_argument("file")
    ev.set_defaults(handler=cmd_qbf_eval)
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    overrides = {
        name: getattr(args, name, None)
        for name in ("task", "semantics", "fragment", "heuristic", "output_format", "maximality", "seed", "output_path")
    }
    source = getattr(args, "file", None)
    return load_config(args.config, input_path=Path(source) if source else None, **overrides)


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)
    try:
        config = _config_from(args)
        return int(args.handler(args, config))
    except argparse.ArgumentError as e:
        print(f"raf: error: {e.message}", file=sys.stderr)
        return ExitCode.USAGE
    except RafError as e:
        print(f"raf: error: {e}", file=sys.stderr)
        return int(e.exit_code)
    except OSError as e:
        print(f"raf: error: {e}", file=sys.stderr)
        return ExitCode.INPUT


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
