"""Command-line front end: ``origami-genus <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import checks, distribution, origami, wreath_chars, young
from .perm import Permutation, cycle_type
from .wreath import WreathElement

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_schema(name: str) -> dict:
    """JSON schema shipped for the ``--format json`` output of a subcommand."""
    return json.loads(resources.files("origami_genus").joinpath("schemas", f"{name}.schema.json").read_text())


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _load_origami(args, prefix: str = "") -> origami.Origami:
    path = getattr(args, f"{prefix}input")
    n = getattr(args, f"{prefix}n")
    sa = getattr(args, f"{prefix}sigma_a")
    sb = getattr(args, f"{prefix}sigma_b")
    if path:
        return origami.load_origami(path)
    if n is None or sa is None or sb is None:
        raise UsageError("give an origami file or all of --n, --sigma-a, --sigma-b")
    return origami.make_origami(n, Permutation.parse(sa, n), Permutation.parse(sb, n))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_genus(args) -> int:
    o = _load_origami(args)
    inv = origami.genus(o, verify=True if args.verify else None)
    data = {"n": o.n, **inv.as_dict()}
    if args.orbits:
        data["orbit_sizes"] = origami.orbit_sizes(o)
    if args.format == "json":
        _emit(args, json.dumps(data, indent=1))
    else:
        keys = list(data)
        row = [" ".join(map(str, v)) if isinstance(v, list) else v for v in data.values()]
        _emit(args, _csv([keys, row]))
    return EXIT_OK


def cmd_orbits(args) -> int:
    o = _load_origami(args)
    orbs = origami.vertex_orbits(o)
    if args.format == "json":
        _emit(args, json.dumps({"n": o.n, "sigma_tau": str(origami.sigma_tau(o)),
                                "orbits": [[list(p) for p in orb] for orb in orbs]}, indent=1))
    else:
        rows = [["orbit", "position", "slot", "square"]]
        for k, orb in enumerate(orbs, 1):
            rows.extend([k, pos, i, j] for pos, (i, j) in enumerate(orb, 1))
        _emit(args, _csv(rows))
    return EXIT_OK


def cmd_chartable(args) -> int:
    table = young.character_table(args.n)
    _emit(args, table.to_json() if args.format == "json" else table.to_csv())
    return EXIT_OK


def cmd_wreath_chartable(args) -> int:
    ctx = wreath_chars.irreducible_system(args.n, full=not args.diagonal_only)
    if args.diagonal_only:
        rows = [{**d.describe(), "dimension": d.dimension()} for d in ctx.irreducibles]
        if args.format == "json":
            _emit(args, json.dumps({"group": f"C4 wr S{args.n}", "order": ctx.order, "irreducibles": rows}, indent=1))
        else:
            _emit(args, _csv([["base", "inertia", "top_character", "dimension"]]
                             + [["|".join(r["base"]), r["inertia"], r["top_character"], r["dimension"]] for r in rows]))
        return EXIT_OK
    if args.format == "json":
        _emit(args, ctx.to_json())
    else:
        rows = [["irreducible"] + list(ctx.class_labels)]
        rows.append(["class_size"] + list(ctx.class_sizes))
        for d, vals in zip(ctx.irreducibles, ctx.values):
            rows.append([str(d)] + [repr(v) for v in vals])
        _emit(args, _csv(rows))
    return EXIT_OK


def cmd_frobenius(args) -> int:
    n = args.n
    if args.group == "symmetric":
        ctx = wreath_chars.symmetric_class_table(n)
        parse = lambda s: Permutation.parse(s, n)  # noqa: E731
    else:
        ctx = wreath_chars.irreducible_system(n)
        parse = lambda s: WreathElement.parse(s, n)  # noqa: E731
    x, y, z = parse(args.c1), parse(args.c2), parse(args.z)
    count = wreath_chars.frobenius_count(ctx, ctx.classify(x), ctx.classify(y), z)
    data = {"group": args.group, "n": n, "c1": str(x), "c2": str(y), "z": str(z), "count": count}
    _emit(args, json.dumps(data, indent=1) if args.format == "json" else _csv([list(data), list(data.values())]))
    return EXIT_OK


def cmd_prob(args) -> int:
    n = args.n
    pi = Permutation.parse(args.pi, n)
    data: dict = {"n": n, "pi_prime": str(pi), "cycle_type": list(cycle_type(pi))}
    red = wreath_chars.reduced_probability(pi)
    data["reduced"] = _frac(red)
    data["pair_probability"] = _frac(wreath_chars.pair_commutator_probability(pi))
    if args.full:
        if n > wreath_chars.MAX_FULL_N:
            raise UsageError(f"--full needs the whole wreath table; n <= {wreath_chars.MAX_FULL_N}")
        ctx = wreath_chars.irreducible_system(n)
        e = Permutation.identity(n)
        elem = WreathElement(wreath_chars.C4.elements[3], (pi, e, e, e))
        data["wreath_sum"] = _frac(wreath_chars.sigma_tau_probability(elem, ctx))
    if n >= 4:
        lead, rest = wreath_chars.refined_probability(pi)
        data["refined_leading"] = _frac(lead)
        data["refined_remainder"] = _frac(rest)
    data["reduced_float"] = float(red)
    if args.format == "json":
        _emit(args, json.dumps(data, indent=1))
    else:
        _emit(args, _csv([list(data), [" ".join(map(str, v)) if isinstance(v, list) else v for v in data.values()]]))
    return EXIT_OK


def cmd_dist(args) -> int:
    if args.exact:
        if args.n > distribution.MAX_EXACT_N:
            raise UsageError(f"--exact enumerates all pairs; n <= {distribution.MAX_EXACT_N}")
        vertex, genus = distribution.exact_genus_distribution(args.n, args.mode)
        summary = {
            "n": args.n, "mode": args.mode, "samples": None, "seed": None, "exact": True,
            "mean": genus.mean(), "stddev": genus.stddev(),
            "theoretical_mean": None, "theoretical_stddev": None,
            "tv_vs_oracle": distribution.compare_distributions(vertex, distribution.alternating_cycle_distribution(args.n))[0],
            "ks_vs_normal": None,
        }
        if args.n >= 2:
            th = distribution.theoretical_genus_stats(args.n)
            summary["theoretical_mean"], summary["theoretical_stddev"] = th.mean, th.stddev
            summary["ks_vs_normal"] = distribution.ks_vs_normal(genus, th.mean, th.stddev)
    else:
        cfg = distribution.SamplerConfig(args.n, args.samples, args.seed, args.mode, args.workers)
        res = distribution.sample_genus_distribution(cfg)
        vertex, genus, summary = res.vertex, res.genus, {**res.summary(), "exact": False}
    if args.format == "json":
        _emit(args, json.dumps({"summary": summary, "vertex": vertex.to_json_obj(), "genus": genus.to_json_obj()}, indent=1))
    else:
        _emit(args, genus.to_csv())
        text = json.dumps(summary, indent=1) + "\n"
        if args.summary:
            Path(args.summary).write_text(text)
        else:
            sys.stderr.write(text)
    return EXIT_OK


def cmd_equiv(args) -> int:
    o1 = _load_origami(args, "first_")
    o2 = _load_origami(args, "second_")
    same = origami.are_equivalent(o1, o2)
    data = {"n": o1.n, "equivalent": same}
    _emit(args, json.dumps(data) if args.format == "json" else _csv([list(data), [o1.n, str(same).lower()]]))
    return EXIT_OK


def cmd_verify(args) -> int:
    def report(r: checks.CheckResult) -> None:
        if args.format != "json":
            status = "PASS" if r.ok else "FAIL"
            print(f"{status} {r.name} ({r.seconds:.2f}s) {r.detail}", file=sys.stderr if args.output else sys.stdout)

    results = checks.run_suite(args.level, report=report)
    failed = [r for r in results if not r.ok]
    data = {
        "level": args.level,
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "checks": [r.as_dict() for r in results],
    }
    if failed:
        data["first_counterexample"] = {"check": failed[0].name, **(failed[0].counterexample or {})}
    if args.format == "json":
        _emit(args, json.dumps(data, indent=1))
    else:
        tail = f"{data['passed']} passed, {data['failed']} failed"
        if failed:
            tail += "\nfirst counterexample: " + json.dumps(data["first_counterexample"])
        _emit(args, tail)
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def _origami_args(p: argparse.ArgumentParser, prefix: str = "") -> None:
    flag = f"--{prefix.replace('_', '-')}"
    p.add_argument(f"{flag}input", dest=f"{prefix}input", metavar="PATH", help="origami file (text or JSON)")
    p.add_argument(f"{flag}n", dest=f"{prefix}n", type=int)
    p.add_argument(f"{flag}sigma-a", dest=f"{prefix}sigma_a", metavar="CYCLES")
    p.add_argument(f"{flag}sigma-b", dest=f"{prefix}sigma_b", metavar="CYCLES")


def _common(p: argparse.ArgumentParser, default_format: str) -> None:
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="origami-genus", description="Genus, characters and random origamis.",
                                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("genus", help="vertex count, Euler characteristic and genus", allow_abbrev=False)
    _origami_args(p)
    p.add_argument("--orbits", action="store_true", help="include vertex orbit sizes")
    p.add_argument("--verify", action="store_true", help="run both vertex counts at any n")
    _common(p, "json")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("orbits", help="vertex orbits of sigma tau", allow_abbrev=False)
    _origami_args(p)
    _common(p, "json")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("chartable", help="character table of S_n", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    _common(p, "csv")
    p.set_defaults(func=cmd_chartable)

    p = sub.add_parser("wreath-chartable", help="character table of C4 wr S_n", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--diagonal-only", action="store_true", help="list only irreducibles with constant base")
    _common(p, "json")
    p.set_defaults(func=cmd_wreath_chartable)

    p = sub.add_parser("frobenius", help="count solutions of x y = z with x, y in given classes", allow_abbrev=False)
    p.add_argument("--group", choices=("symmetric", "wreath"), default="symmetric")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c1", required=True, help="element of the first class")
    p.add_argument("--c2", required=True, help="element of the second class")
    p.add_argument("--z", required=True)
    _common(p, "json")
    p.set_defaults(func=cmd_frobenius)

    p = sub.add_parser("prob", help="probability that the commutator equals pi'", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pi", required=True, metavar="CYCLES")
    p.add_argument("--full", action="store_true", help="also evaluate the full wreath character sum (n <= 3)")
    _common(p, "json")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("dist", help="vertex and genus distribution", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=distribution.MODES, default="reject-disconnected")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="enumerate all pairs (n <= 6)")
    p.add_argument("--summary", metavar="PATH", help="summary JSON destination for CSV output (default stderr)")
    _common(p, "csv")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("equiv", help="test two origamis for equivalence (n <= 8)", allow_abbrev=False)
    _origami_args(p, "first_")
    _origami_args(p, "second_")
    _common(p, "json")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify", help="run the self-verification suite", allow_abbrev=False)
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    _common(p, "csv")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except origami.DisconnectedOrigamiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
