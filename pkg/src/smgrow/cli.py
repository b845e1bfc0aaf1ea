"""Command-line surface.

Exit codes: 0 success, 1 domain error (invalid data, or a failed hypothesis
check under --strict), 2 usage error.  Randomized commands require --seed
and are bit-reproducible; outputs carry their full configuration in a
comment header and never contain timestamps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .algebra import EpsilonSequence, canonical_epsilon, check_theorem_hypotheses, validate
from .catalog import CATALOG_NAMES
from .errors import SmgrowError
from .groupfile import dumps_definition, load_group
from .growth import MetricSpec, ball_enumerate
from .mc import FIGURE_COLUMNS, SamplerSpec, estimate_distribution, figure_row
from .series import (
    PowerSeries,
    binomial_convolve,
    binomial_convolve_eta,
    model_rhs_diagnostic,
    radius_estimate,
    rho_recursion,
)
from .torsion import build_graph, torsion_verdict, verify_witness
from .words import Element, format_element, order_of, parse_element


def _default_threads() -> int:
    return int(os.environ.get("SMGROW_THREADS", "1"))


def _config_header(command: str, args: argparse.Namespace, keys: list[str]) -> str:
    config = {k: getattr(args, k) for k in keys}
    return f"# smgrow {command} {json.dumps(config, sort_keys=True)}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _read_series(path: str) -> PowerSeries:
    values = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.lower().startswith("n,"):
            continue
        parts = line.split(",")
        values.append(float(parts[-1]) if "." in parts[-1] or "e" in parts[-1] else int(parts[-1]))
    return PowerSeries.from_list(values)


def _series_csv(series_like, header: str) -> str:
    lines = [header, "n,coeff"]
    for n, c in enumerate(series_like):
        lines.append(f"{n},{format(c, '.12g') if isinstance(c, float) else c}")
    return "\n".join(lines) + "\n"


def _load_validated(source: str):
    data = load_group(source)
    problems = validate(data)
    if problems:
        raise SmgrowError("invalid group data: " + "; ".join(problems))
    return data


def cmd_catalog(args) -> int:
    if args.id:
        data = _load_validated(args.id)
        _emit(dumps_definition(data) + "\n", args.out)
    else:
        for name in CATALOG_NAMES:
            print(name)
    return 0


def cmd_validate(args) -> int:
    data = load_group(args.group)
    problems = validate(data)
    if problems:
        for p in problems:
            print(p)
        return 1
    print("valid")
    return 0


def cmd_hypotheses(args) -> int:
    data = _load_validated(args.group)
    report = check_theorem_hypotheses(data)
    if report.passed:
        print("pass")
        return 0
    for reason in report.reasons:
        print(f"fail: {reason}")
    return 1 if args.strict else 0


def cmd_canon(args) -> int:
    eps = tuple(int(e) for e in args.epsilon.split(","))
    result = canonical_epsilon(EpsilonSequence(args.d, eps))
    print(
        ",".join(map(str, result.sequence.eps)),
        "subdirect" if result.subdirect else "not-subdirect",
    )
    return 0


def cmd_act(args) -> int:
    data = _load_validated(args.group)
    element = Element.from_text(data, args.element, args.level)
    print(element.act(args.vertex))
    return 0


def cmd_mul(args) -> int:
    data = _load_validated(args.group)
    left = parse_element(data, args.left, args.level)
    right = parse_element(data, args.right, args.level)
    product = Element(data, left) * Element(data, right)
    print(format_element(data, product.word))
    return 0


def cmd_order(args) -> int:
    data = _load_validated(args.group)
    word = parse_element(data, args.element, args.level)
    result = order_of(data, word, args.cap)
    print(result if result is not None else f"exceeds cap {args.cap}")
    return 0


def cmd_growth(args) -> int:
    data = _load_validated(args.group)
    table = ball_enumerate(data, MetricSpec(args.metric), args.radius, args.cap)
    lines = [
        _config_header("growth", args, ["group", "metric", "radius", "cap"]),
        "n,sphere,ball,exhausted",
    ]
    exhaust = table.exhaust_radius
    for n, sphere, ball in table.rows:
        done = 1 if exhaust is not None and n >= exhaust else 0
        lines.append(f"{n},{sphere},{ball},{done}")
    if table.capped:
        lines.append("# element cap reached, table truncated")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_montecarlo(args) -> int:
    data = _load_validated(args.group)
    mode = "full-reduce" if args.mode == "full" else "syllable-count"
    spec = SamplerSpec(n=args.length, level=args.level, seed=args.seed, mode=mode)
    stats = estimate_distribution(data, spec, args.samples, threads=args.threads)
    header = _config_header(
        "montecarlo", args, ["group", "length", "samples", "seed", "mode", "level"]
    )
    body = "\n".join([header, FIGURE_COLUMNS, figure_row(data.name, spec, stats)])
    _emit(body + "\n", args.out)
    return 0


def cmd_torsion(args) -> int:
    data = _load_validated(args.group)
    verdict = torsion_verdict(build_graph(data))
    print("Torsion" if verdict.torsion else "NotTorsion")
    graph = verdict.graph
    for cycle in verdict.cycles:
        pretty = " -> ".join(
            f"({data.B.labels[b]},{data.label_of_a(a)}) e={graph.e[(b, a)]}" for b, a in cycle
        )
        print(f"cycle: {pretty}")
    if args.witness:
        if verdict.torsion:
            print("witness: not applicable (torsion verdict)")
        else:
            b, a = verdict.bad_vertex
            ok = verify_witness(verdict, args.witness)
            print(
                f"witness at ({data.B.labels[b]},{data.label_of_a(a)}), "
                f"k={args.witness}: {'verified' if ok else 'FAILED'}"
            )
            if not ok:
                return 1
    return 0


def cmd_series(args) -> int:
    if args.series_command == "convolve":
        a = _read_series(args.a)
        b = _read_series(args.b)
        if args.eta is None:
            result = binomial_convolve(a, b)
        else:
            result = binomial_convolve_eta(a, b, args.eta)
        _emit(_series_csv(result.coeffs, _config_header("series convolve", args, ["a", "b", "eta"])), args.out)
        return 0
    if args.series_command == "radius":
        report = radius_estimate(_read_series(args.series))
        print(f"root_estimate,{report.root_estimate}")
        print(f"ratio_estimate,{report.ratio_estimate}")
        print(f"tail_monotone,{int(report.tail_monotone)}")
        return 0
    if args.series_command == "rho":
        seq = rho_recursion(args.start, args.size_a, args.steps)
        _emit(
            _series_csv(seq, _config_header("series rho", args, ["start", "size_a", "steps"])),
            args.out,
        )
        return 0
    if args.series_command == "diagnostic":
        gamma = [int(c) for c in _read_series(args.gamma).coeffs]
        rows = model_rhs_diagnostic(gamma, args.size_a, args.d, args.eta, args.upto)
        lines = [
            _config_header("series diagnostic", args, ["gamma", "size_a", "d", "eta", "upto"]),
            "n,lhs,rhs,slack",
        ]
        lines += [
            f"{r.n},{format(r.lhs, '.12g')},{format(r.rhs, '.12g')},{format(r.slack, '.12g')}"
            for r in rows
        ]
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    raise SmgrowError(f"unknown series subcommand {args.series_command!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smgrow",
        description="Splitter-mixer groups on rooted trees: word problem, growth, "
        "contraction statistics, torsion.",
    )
    parser.add_argument("--version", action="version", version=f"smgrow {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in groups or export one as a definition file")
    p.add_argument("--id", help="catalog id, e.g. catalog:gupta-sidki:3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="report structural violations of a group definition")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("hypotheses", help="check the intermediate-growth hypotheses")
    p.add_argument("--group", required=True)
    p.add_argument("--strict", action="store_true", help="exit 1 when the check fails")
    p.set_defaults(func=cmd_hypotheses)

    p = sub.add_parser("canon", help="canonical form of an epsilon sequence")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--epsilon", required=True, help="comma-separated entries")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("act", help="apply an element to a vertex")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("mul", help="multiply two elements")
    p.add_argument("--group", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("order", help="order of an element up to a cap")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--level", type=int, default=1)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("growth", help="ball and sphere sizes by breadth-first search")
    p.add_argument("--group", required=True)
    p.add_argument("--metric", choices=["standard", "blength"], default="standard")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--cap", type=int, default=10_000_000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("montecarlo", help="contraction distribution of uniform words")
    p.add_argument("--group", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mode", choices=["full", "syllable"], default="syllable")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_montecarlo)

    p = sub.add_parser("torsion", help="torsion verdict via the successor graph")
    p.add_argument("--group", required=True)
    p.add_argument("--witness", type=int, default=0, help="verify the witness to depth K")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("series", help="power-series utilities")
    series_sub = p.add_subparsers(dest="series_command", required=True)
    q = series_sub.add_parser("convolve")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--eta", type=float, default=None)
    q.add_argument("--out")
    q.set_defaults(func=cmd_series)
    q = series_sub.add_parser("radius")
    q.add_argument("--series", required=True)
    q.set_defaults(func=cmd_series)
    q = series_sub.add_parser("rho")
    q.add_argument("--start", type=float, required=True)
    q.add_argument("--size-a", dest="size_a", type=int, required=True)
    q.add_argument("--steps", type=int, default=30)
    q.add_argument("--out")
    q.set_defaults(func=cmd_series)
    q = series_sub.add_parser("diagnostic")
    q.add_argument("--gamma", required=True, help="CSV of growth-series coefficients")
    q.add_argument("--size-a", dest="size_a", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--eta", type=float, default=1.0)
    q.add_argument("--upto", type=int, required=True)
    q.add_argument("--out")
    q.set_defaults(func=cmd_series)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SmgrowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
