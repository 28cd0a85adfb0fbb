"""Command-line entry point.

Batch-only and fully seeded: every run embeds its seed, package version and
a config hash in the report so experiments can be replayed byte-for-byte.
Exit codes: 0 decided/success, 2 unknown or budget exceeded, 1 usage or
validation error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    HoleParams,
    TargetTriple,
    construction_sizes,
    lemma_dwa_host_size,
    lemma_trzy_host_size,
    theorem_coefficient,
    xi,
)
from .constructions import (
    build_eeo_four_part,
    build_eeo_three_part,
    build_odd_triple,
    build_oee_four_part,
    verify_claims,
)
from .cycles import has_cycle_of_length, longest_cycle, verify_cycle
from .errors import BudgetExceededError, PreconditionViolated
from .graphs import (
    dump_coloring,
    load_coloring,
    load_graph,
)
from .harness import lemma_harness
from .matchings import (
    best_component_matching,
    bipartite_split,
    maximum_matching,
    tutte_partition,
)
from .search import (
    DEFAULT_SEED,
    AnnealSchedule,
    ArrowInstance,
    CycleTarget,
    MatchingTarget,
    arrow_exhaustive,
    arrow_randomized,
    instance_from_dict,
    ramsey_number_exact,
    tau_check,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNKNOWN = 2


def _config_hash(args: argparse.Namespace) -> str:
    payload = json.dumps(
        {k: str(v) for k, v in sorted(vars(args).items()) if k != "func"},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _meta(args: argparse.Namespace) -> dict:
    return {
        "version": __version__,
        "seed": args.seed,
        "config_hash": _config_hash(args),
        "threads": args.threads,
    }


def _emit(args: argparse.Namespace, payload: dict) -> None:
    payload = {"meta": _meta(args), **payload}
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        rows = ["key,value"]
        for key, value in sorted(_flatten(payload).items()):
            rows.append(f"{key},{value}")
        text = "\n".join(rows) + "\n"
    else:
        text = _human(payload)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _flatten(data, prefix="") -> dict:
    out = {}
    if isinstance(data, dict):
        for k, v in data.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(data, (list, tuple)):
        out[prefix[:-1]] = json.dumps(data)
    else:
        out[prefix[:-1]] = data
    return out


def _human(payload: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_human(value, indent + 1))
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(line for line in lines if line) + ("\n" if indent == 0 else "")


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def _parse_targets(text: str):
    """Targets like 'C3:1,C4:2' (cycles) or 'M4:1,M6n:2' (matchings).

    C<len>[+]:color  -- '+' demands length at least <len> instead of exactly.
    M<sat>[n]:color  -- 'n' demands a non-bipartite component.
    """
    by_color = {}
    for chunk in text.split(","):
        spec, _, color = chunk.strip().partition(":")
        if not color:
            raise ValueError(f"target {chunk!r} needs a ':color' suffix")
        color = int(color)
        kind = spec[0].upper()
        body = spec[1:]
        if kind == "C":
            exact = not body.endswith("+")
            length = int(body.rstrip("+"))
            by_color[color] = CycleTarget(length, exact)
        elif kind == "M":
            nonbip = body.endswith("n")
            sat = int(body.rstrip("n"))
            by_color[color] = MatchingTarget(sat, nonbip)
        else:
            raise ValueError(f"unknown target kind {kind!r} in {chunk!r}")
    k = len(by_color)
    if sorted(by_color) != list(range(1, k + 1)):
        raise ValueError("targets must cover colors 1..k exactly once each")
    return tuple(by_color[c] for c in range(1, k + 1))


def _read(path: str) -> str:
    return Path(path).read_text()


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _cmd_construct(args) -> int:
    if args.odd_triple is not None:
        report = build_odd_triple(args.odd_triple)
    elif args.eeo_four is not None:
        report = build_eeo_four_part(*args.eeo_four)
    elif args.eeo_three is not None:
        report = build_eeo_three_part(*args.eeo_three)
    elif args.oee_four is not None:
        report = build_oee_four_part(*args.oee_four)
    else:
        print("construct: choose one of --odd-triple/--eeo-four/--eeo-three/--oee-four",
              file=sys.stderr)
        return EXIT_USAGE
    report = verify_claims(report, budget=args.node_budget)
    if args.coloring_out:
        Path(args.coloring_out).write_text(dump_coloring(report.coloring))
    _emit(args, {"construction": report.to_dict()})
    if any(c.verified is None for c in report.claims):
        return EXIT_UNKNOWN  # some claim undecided within the budget
    return EXIT_OK


def _cmd_verify(args) -> int:
    coloring = load_coloring(_read(args.coloring))
    payload = {"valid": True, "n": coloring.n, "k": coloring.k}
    if args.report:
        report_data = json.loads(_read(args.report))
        from .constructions import Claim, ConstructionReport

        claims = tuple(
            Claim(c["color"], c["kind"], c["bound"])
            for c in report_data["construction"]["claims"]
        )
        rebuilt = ConstructionReport(
            name=report_data["construction"]["name"],
            params=report_data["construction"]["params"],
            coloring=coloring,
            parts=tuple(
                frozenset(p) for p in report_data["construction"]["parts"]
            ),
            claims=claims,
        )
        checked = verify_claims(rebuilt, budget=args.node_budget)
        payload["construction"] = checked.to_dict()
        if any(c.verified is None for c in checked.claims):
            _emit(args, payload)
            return EXIT_UNKNOWN
    _emit(args, payload)
    return EXIT_OK


def _cmd_cycles(args) -> int:
    g = load_graph(_read(args.graph))
    try:
        if args.length is not None:
            cert = has_cycle_of_length(g, args.length, budget=args.node_budget)
            payload = {
                "query": {"length": args.length},
                "found": cert is not None,
                "cycle": list(cert.vertices) if cert else None,
            }
        else:
            found = longest_cycle(g, args.parity, budget=args.node_budget)
            payload = {
                "query": {"longest": True, "parity": args.parity},
                "found": found is not None,
                "length": found[0] if found else None,
                "cycle": list(found[1].vertices) if found else None,
            }
    except BudgetExceededError as exc:
        _emit(args, {"error": "budget-exceeded", "nodes": exc.nodes})
        return EXIT_UNKNOWN
    if payload.get("cycle"):
        from .cycles import CycleCertificate

        assert verify_cycle(g, CycleCertificate(tuple(payload["cycle"])))
    _emit(args, payload)
    return EXIT_OK


def _cmd_matching(args) -> int:
    g = load_graph(_read(args.graph))
    if args.best_component:
        comp, match = best_component_matching(g, args.require_nonbipartite)
        payload = {
            "component": sorted(comp),
            "matching": [list(e) for e in match.edges],
            "saturation": match.saturation,
        }
    else:
        match = maximum_matching(g)
        payload = {
            "matching": [list(e) for e in match.edges],
            "saturation": match.saturation,
        }
    _emit(args, payload)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = load_graph(_read(args.graph))
    try:
        if args.n_target is not None:
            part = tutte_partition(g, args.n_target)
            payload = {
                "tutte_partition": {
                    "S": sorted(part.S),
                    "T": sorted(part.T),
                    "U": sorted(part.U),
                    "n_target": part.n_target,
                    "verified": part.verify(g),
                }
            }
        elif args.alpha is not None:
            split = bipartite_split(g, Fraction(args.alpha), args.n_scale)
            payload = {
                "bipartite_split": {
                    "Vprime": sorted(split.Vprime),
                    "Vdoubleprime": sorted(split.Vdoubleprime),
                    "alpha_bound": str(split.alpha_bound),
                    "verified": split.verify(g),
                }
            }
        else:
            print("decompose: pass --n-target or --alpha", file=sys.stderr)
            return EXIT_USAGE
    except PreconditionViolated as exc:
        _emit(args, {"error": "precondition-violated", "detail": str(exc)})
        return EXIT_USAGE
    _emit(args, payload)
    return EXIT_OK


def _cmd_bound(args) -> int:
    payload = {}
    if args.parities and args.alphas:
        parities = tuple(
            {"e": "even", "o": "odd"}[ch] for ch in args.parities.lower()
        )
        alphas = tuple(_parse_fraction(a) for a in args.alphas.split(","))
        triple = TargetTriple(alphas, parities, args.n)
        coeff = theorem_coefficient(triple)
        _, case, perm = triple.canonical()
        payload["coefficient"] = {
            "exact": str(coeff),
            "decimal": float(coeff),
            "case": case,
            "permutation": list(perm),
        }
        payload["target_lengths"] = list(triple.target_lengths())
        payload["construction_sizes"] = [
            {"construction": name, "N": size}
            for name, size in construction_sizes(triple)
        ]
    if args.xi:
        a, b, nu = (Fraction(x) for x in args.xi.split(","))
        payload["xi"] = {"exact": str(xi(a, b, nu)), "decimal": float(xi(a, b, nu))}
    if args.hole_params:
        a, b, nu, eps = (Fraction(x) for x in args.hole_params.split(","))
        hp = HoleParams(a, b, nu, eps)
        payload["hole_host_sizes"] = {
            "two_color": lemma_dwa_host_size(hp, args.n),
            "two_color_nonbipartite": lemma_trzy_host_size(hp, args.n),
        }
    if not payload:
        print("bound: pass --parities/--alphas, --xi, or --hole-params",
              file=sys.stderr)
        return EXIT_USAGE
    _emit(args, payload)
    return EXIT_OK


def _cmd_search(args) -> int:
    if args.range and args.targets:
        lo, hi = (int(x) for x in args.range.split(".."))
        result = ramsey_number_exact(
            _parse_targets(args.targets), range(lo, hi + 1),
            budget=args.node_budget, exact_cap=args.exact_cap,
            symmetry=not args.no_symmetry,
        )
        _emit(args, {"ramsey": result.to_dict(args.timings)})
        return EXIT_OK if result.value is not None else EXIT_UNKNOWN
    if args.instance:
        inst = instance_from_dict(json.loads(_read(args.instance)))
    elif args.targets and args.n:
        inst = ArrowInstance(n=args.n, targets=_parse_targets(args.targets))
    else:
        print("search: pass --instance FILE or --targets SPEC --n N", file=sys.stderr)
        return EXIT_USAGE
    if args.mode == "randomized":
        schedule = AnnealSchedule(steps=args.steps, restarts=args.restarts)
        verdict = arrow_randomized(
            inst, schedule=schedule, seed=args.seed, workers=args.threads
        )
    elif args.mode == "tau":
        verdict = tau_check(
            inst, budget=args.node_budget, exact_cap=args.exact_cap,
            symmetry=not args.no_symmetry,
        )
    else:
        verdict = arrow_exhaustive(
            inst, budget=args.node_budget, exact_cap=args.exact_cap,
            symmetry=not args.no_symmetry,
        )
    _emit(args, {"verdict": verdict.to_dict(args.timings)})
    return EXIT_OK if verdict.arrows is not None else EXIT_UNKNOWN


def _cmd_lemma(args) -> int:
    params = {}
    for key in ("alpha", "beta", "nu", "eps", "alpha1", "alpha2", "nu1", "nu2"):
        value = getattr(args, key)
        if value is not None:
            params[key] = Fraction(value)
    for key in ("n", "n1", "n2", "N"):
        value = getattr(args, key if key != "N" else "host_n")
        if value is not None:
            params[key] = value
    report = lemma_harness(
        args.id,
        params,
        samples=args.samples,
        seed=args.seed,
        strict=args.strict,
        adversary_steps=args.adversary_steps,
    )
    _emit(args, {"harness": report.to_dict()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for all randomness (fixed default, never wall clock)")
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")
    common.add_argument("--out", help="write the report to this path instead of stdout")
    common.add_argument("--threads", type=int, default=1,
                        help="worker count; results are identical for any value")
    common.add_argument("--node-budget", type=int, default=10**8)
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in reports (non-reproducible)")
    parser = argparse.ArgumentParser(
        prog="cycleramsey",
        description="Edge-colored graph toolkit: constructions, bounds, "
        "matchings, cycles and finite arrowing search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("construct", help="build an extremal coloring and verify it")
    p.add_argument("--odd-triple", type=int, metavar="M1")
    p.add_argument("--eeo-four", type=int, nargs=2, metavar=("M1", "M2"))
    p.add_argument("--eeo-three", type=int, nargs=3, metavar=("M1", "M2", "M3"))
    p.add_argument("--oee-four", type=int, nargs=2, metavar=("M1", "M2"))
    p.add_argument("--coloring-out", help="also write the coloring file here")
    p.set_defaults(func=_cmd_construct)

    p = add_parser("verify", help="validate a coloring file (optionally re-check a report)")
    p.add_argument("--coloring", required=True)
    p.add_argument("--report", help="construction report whose claims to re-check")
    p.set_defaults(func=_cmd_verify)

    p = add_parser("cycles", help="exact cycle queries on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--length", type=int, help="look for a cycle of exactly this length")
    p.add_argument("--parity", choices=("any", "odd", "even"), default="any")
    p.set_defaults(func=_cmd_cycles)

    p = add_parser("matching", help="maximum matchings on a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--best-component", action="store_true")
    p.add_argument("--require-nonbipartite", action="store_true")
    p.set_defaults(func=_cmd_matching)

    p = add_parser("decompose", help="barrier partition or bipartite split")
    p.add_argument("--graph", required=True)
    p.add_argument("--n-target", type=int)
    p.add_argument("--alpha", help="bipartite split bound (rational)")
    p.add_argument("--n-scale", type=int, default=1)
    p.set_defaults(func=_cmd_decompose)

    p = add_parser("bound", help="exact bound formulas")
    p.add_argument("--parities", help="three letters from {e,o}, e.g. eeo")
    p.add_argument("--alphas", help="comma-separated rationals, e.g. 1,1/2,2")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--xi", help="alpha,beta,nu")
    p.add_argument("--hole-params", help="alpha,beta,nu,eps")
    p.set_defaults(func=_cmd_bound)

    p = add_parser("search", help="finite arrowing decision")
    p.add_argument("--instance", help="instance file (coloring format plus targets)")
    p.add_argument("--targets", help="e.g. C3:1,C3:2 or M4:1,M6n:2")
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=("exhaustive", "randomized", "tau"),
                   default="exhaustive")
    p.add_argument("--range", help="N range lo..hi for a Ramsey number scan")
    p.add_argument("--exact-cap", type=int, default=13)
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--steps", type=int, default=6000)
    p.add_argument("--restarts", type=int, default=3)
    p.set_defaults(func=_cmd_search)

    p = add_parser("lemma", help="property harness for the matching lemmas")
    p.add_argument("--id", required=True,
                   choices=("l2", "double", "dwa", "trzy", "f1"))
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--strict", action="store_true",
                   help="reject parameters violating asymptotic guards")
    p.add_argument("--adversary-steps", type=int, default=20)
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--nu")
    p.add_argument("--eps")
    p.add_argument("--alpha1")
    p.add_argument("--alpha2")
    p.add_argument("--nu1")
    p.add_argument("--nu2")
    p.add_argument("--n", type=int)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--host-n", type=int, help="host size N (two-hole lemma)")
    p.set_defaults(func=_cmd_lemma)
    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded after {exc.nodes} nodes", file=sys.stderr)
        return EXIT_UNKNOWN


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
