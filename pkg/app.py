"""Command-line entry point for the affine flip-action toolkit."""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence

import config
from affine_flip import gelfand, md_report, storage, utils
from affine_flip.flip_action import check_k, omega_base, transitivity_check
from affine_flip.stabilizers import coset_map_check

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def setup_logging() -> None:
    """Configure logging to file + stderr."""
    config.ensure_directories()
    formatter = logging.Formatter("%(asctime)s [%(levelname)s] %(message)s")
    handlers = [
        logging.FileHandler(config.LOG_FILE),
        logging.StreamHandler(),
    ]
    logging.basicConfig(level=config.LOG_LEVEL, format="%(message)s", handlers=handlers)
    for handler in logging.getLogger().handlers:
        handler.setFormatter(formatter)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affine-flip",
        description="Affine Weyl group flip actions and multiplicity-freeness certificates.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="rank n >= 2")
    common.add_argument("--k", type=int, help="number of zero trits (or filled inner positions for arc)")
    common.add_argument("--m", type=int, help="modulus of the carry coordinate")
    common.add_argument("--format", choices=config.FORMATS, default="json")
    common.add_argument("--out", type=Path, help="write output to this file instead of stdout")
    common.add_argument("--save", action="store_true", help="also store the report under the output directory")
    common.add_argument("--node-cap", type=int, default=None, help=f"state limit (default {config.NODE_CAP})")

    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("orbit", parents=[common], help="transitivity of the flip action on Omega(n,k,m)")

    counts = sub.add_parser("counts", parents=[common], help="enumeration sizes against closed formulas")
    counts.add_argument("--model", choices=config.MODELS, required=True)

    act = sub.add_parser("act", parents=[common], help="apply a generator word to a state")
    act.add_argument("--model", choices=config.MODELS, default="omega")
    act.add_argument("--state", required=True)
    act.add_argument("--word", default="", help="generator indices, applied right to left")

    equiv = sub.add_parser("equivariance", parents=[common], help="check a model encoding exhaustively")
    equiv.add_argument("--model", choices=("arc", "ctft", "lf", "gc"), required=True)

    gel = sub.add_parser("gelfand", parents=[common], help="multiplicity-freeness certificate")
    gel.add_argument("--model", choices=config.MODELS, default="omega")
    gel.add_argument("--group", choices=config.GROUP_TYPES, default="C")
    gel.add_argument("--signed", action="store_true")

    reps = sub.add_parser("coset-reps", parents=[common], help="validate involutive coset representatives")
    reps.add_argument("--group", choices=config.GROUP_TYPES, default="C")
    reps.add_argument("--d-bound", type=int, default=config.D_BOUND)

    schreier = sub.add_parser("schreier", parents=[common], help="export the Schreier graph")
    schreier.add_argument("--model", choices=config.MODELS, default="arc")
    schreier.add_argument("--group", choices=config.GROUP_TYPES, default="C")
    schreier.add_argument("--signed", action="store_true")
    return parser


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError(f"{args.command} needs {', '.join(missing)}")


def _validate(args: argparse.Namespace) -> None:
    if args.n < 2:
        raise ValueError(f"n must be at least 2, got {args.n}")
    model = getattr(args, "model", "omega")
    omega = model in ("omega", "omega_signed")
    if args.command in ("orbit", "coset-reps") or (omega and args.command != "act"):
        _require(args, "k")
        check_k(args.n, args.k)
    if args.command == "orbit" or (omega and args.command != "coset-reps"):
        _require(args, "m")
        if args.m < 1:
            raise ValueError(f"m must be at least 1, got {args.m}")
    if model == "arc" and args.k is not None and not 0 < args.k <= args.n:
        raise ValueError(f"arc model needs 0 < k <= {args.n}, got {args.k}")
    if getattr(args, "group", "C") == "B" and args.command == "gelfand":
        if model not in ("omega", "omega_signed"):
            raise ValueError("Type B certificates are computed on the signed omega orbit only")
        if model == "omega" and not args.signed:
            raise ValueError("Type B certificates need the signed quotient: pass --signed or --model omega_signed")


def _emit(args: argparse.Namespace, data: Dict, markdown_text: str, slug: str) -> None:
    if args.format == "json":
        text = storage.json_text(data)
    elif args.format == "markdown":
        text = markdown_text
    elif args.format == "html":
        text = md_report.render_html(markdown_text)
    elif args.format == "text":
        text = "\n".join(f"{key}: {value}" for key, value in sorted(data.items())) + "\n"
    else:
        raise ValueError(f"Format '{args.format}' is not available for {args.command}")
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        logging.info("Wrote %s", args.out)
    else:
        sys.stdout.write(text)
    if args.save:
        suffix = {"json": "json", "markdown": "md", "html": "html"}.get(args.format, "txt")
        path = storage.write_report(slug, text, suffix)
        logging.info("Saved report to %s", path)


def _params(args: argparse.Namespace) -> Dict:
    return {key: getattr(args, key) for key in ("n", "k", "m") if getattr(args, key) is not None}


def _cmd_orbit(args: argparse.Namespace) -> int:
    report = transitivity_check(args.n, args.k, args.m)
    data = {
        "params": _params(args),
        "transitive": report.transitive,
        "reached": report.reached,
        "expected": report.expected,
        "witnesses": {str(state): str(word) for state, word in report.witnesses.items()},
    }
    lines = [
        f"# Orbit of omega_{args.k} (n={args.n}, m={args.m})",
        f"**Reached:** {report.reached} of {report.expected}  ",
        f"**Transitive:** {'yes' if report.transitive else 'no'}  ",
        "",
    ]
    _emit(args, data, "\n".join(lines), f"orbit-n{args.n}-k{args.k}-m{args.m}")
    return EXIT_OK if report.transitive else EXIT_NEGATIVE


def _formula(model: str, n: int, k: Optional[int], m: Optional[int]) -> int:
    if model == "arc":
        size = n if k is None else k
        return math.comb(n, size) * 2 ** size * (n + 2)
    if model == "ctft":
        return (n + 4) * 2 ** n
    if model in ("lf", "gc"):
        return (n + 3) * 2 ** n
    full = math.comb(n, k) * 2 ** (n - k) * m
    return full // 2 if model == "omega_signed" else full


def _cmd_counts(args: argparse.Namespace) -> int:
    expected = _formula(args.model, args.n, args.k, args.m)
    cap = config.NODE_CAP if args.node_cap is None else args.node_cap
    if expected > cap:
        raise ValueError(f"{expected} states exceed the node cap of {cap}")
    states = gelfand.model_states(args.model, args.n, args.k, args.m)
    row = {
        "model": args.model,
        "params": _params(args),
        "count": len(states),
        "formula": expected,
        "match": len(states) == expected,
    }
    _emit(args, row, md_report.compose_counts_report([row]), f"counts-{args.model}-n{args.n}")
    return EXIT_OK if row["match"] else EXIT_NEGATIVE


def _cmd_act(args: argparse.Namespace) -> int:
    size = utils.ground_size(args.model, args.n, args.m)
    state = utils.parse_model_state(args.model, args.state, size)
    word = utils.parse_word(args.n, args.word)
    step = gelfand.model_step(args.model)
    image = state
    for letter in reversed(word.letters):
        image = step(letter, image)
    data = {"model": args.model, "state": str(state), "word": str(word), "image": str(image)}
    markdown_text = f"# Action of s[{word}] on {state}\n\n{image}\n"
    _emit(args, data, markdown_text, f"act-{args.model}-n{args.n}")
    return EXIT_OK


def _cmd_equivariance(args: argparse.Namespace) -> int:
    report = gelfand.bijection_check(args.model, args.n, args.k)
    lines = [
        f"# Encoding check: {args.model}, n={args.n}",
        f"**States:** {report.states} (target orbit {report.targets})  ",
        f"**Result:** {'consistent' if report.ok else 'FAILED'}  ",
        "",
        *[f"- {failure}" for failure in report.failures],
        "",
    ]
    _emit(args, report.to_dict(), "\n".join(lines), f"equivariance-{args.model}-n{args.n}")
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def _cmd_gelfand(args: argparse.Namespace) -> int:
    signed = args.signed or args.model == "omega_signed"
    if args.group == "B":
        certificate = gelfand.b_subgroup_action_check(args.n, args.k, args.m, node_cap=args.node_cap)
    else:
        action = gelfand.build_action(args.model, args.n, args.k, args.m, signed=signed, node_cap=args.node_cap)
        certificate = gelfand.certify(action, args.model, {**_params(args), "group": "C", "signed": signed})
    markdown_text = md_report.compose_certificate_report(certificate)
    if args.group == "C" and args.model in ("omega", "omega_signed") and args.format in ("markdown", "html"):
        base = omega_base(args.n, args.k, args.m)
        suborbits = gelfand.coset_involution_check(action, min(base, -base) if signed else base)
        markdown_text += "\n" + md_report.compose_involution_report(suborbits)
    slug = f"gelfand-{args.model}-{args.group}-n{args.n}"
    _emit(args, certificate.to_dict(), markdown_text, slug)
    return EXIT_OK if certificate.multiplicity_free else EXIT_NEGATIVE


def _cmd_coset_reps(args: argparse.Namespace) -> int:
    report = coset_map_check(args.n, args.k, args.group, args.d_bound)
    slug = f"coset-reps-{args.group}-n{args.n}-k{args.k}"
    _emit(args, report.to_dict(), md_report.compose_coset_report(report), slug)
    return EXIT_OK if report.verdict else EXIT_NEGATIVE


def schreier_export(args: argparse.Namespace) -> Path:
    if args.format not in ("dot", "json"):
        raise ValueError(f"Schreier graphs are exported as dot or json, not {args.format}")
    action = gelfand.build_action(
        args.model, args.n, args.k, args.m, group_type=args.group, signed=args.signed, node_cap=args.node_cap
    )
    graph = gelfand.schreier_graph(action)
    metadata = {
        "model": args.model,
        **_params(args),
        "group": args.group,
        "nodes": graph.number_of_nodes(),
        "generators": len(action.generators),
        "diameter": gelfand.schreier_diameter(graph),
    }
    if args.out:
        text = storage.dot_text(graph, metadata=metadata) if args.format == "dot" else storage.json_text(
            storage.graph_json(graph, metadata)
        )
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        path = args.out
    else:
        path = storage.write_graph(f"schreier-{args.model}-n{args.n}", graph, args.format, metadata)
    logging.info("Schreier graph with %d nodes, diameter %s, written to %s", metadata["nodes"], metadata["diameter"], path)
    sys.stdout.write(f"{path}\n")
    return path


def _cmd_schreier(args: argparse.Namespace) -> int:
    schreier_export(args)
    return EXIT_OK


COMMANDS = {
    "orbit": _cmd_orbit,
    "counts": _cmd_counts,
    "act": _cmd_act,
    "equivariance": _cmd_equivariance,
    "gelfand": _cmd_gelfand,
    "coset-reps": _cmd_coset_reps,
    "schreier": _cmd_schreier,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _validate(args)
        return COMMANDS[args.command](args)
    except (ValueError, OverflowError) as exc:
        logging.error("%s: %s", args.command, exc)
        return EXIT_USAGE


def main() -> None:
    setup_logging()
    sys.exit(run())


if __name__ == "__main__":
    main()
