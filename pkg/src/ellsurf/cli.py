"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .beauville import catalog, get_entry, verify_catalog_entry
from .bielliptic import (
    LegendrePair,
    curve_from_legendre_pair,
    fibered_product,
    newsetting_cover,
    split_jacobi,
    subcover_equations,
    verify_cover,
    weierstrass_counts,
    weierstrass_parity,
)
from .kodaira import InconsistencyError
from .lattices import embed_T_in_U3, named_lattice
from .report import DEFAULT_CHI, DEFAULT_RHO, analyze, dumps, render_table, run_table

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def cmd_analyze(args) -> str:
    rep = analyze(args.model, rho=args.rho, chi=args.chi)
    return rep.to_text() if args.text else rep.dumps()


def cmd_beauville(args) -> str:
    entries = catalog() if args.entry == "all" else [get_entry(args.entry)]
    reports = [verify_catalog_entry(e) for e in entries]
    if args.json:
        data = [r.to_json() for r in reports]
        return dumps(data if args.entry == "all" else data[0])
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        comps = ",".join(map(str, r.configuration.components()))
        lines.append(
            f"{r.entry.label:<22} [{comps}]  {r.torsion.group.format():<12} base point {r.base_point}  {status}"
        )
        if r.flags["van_geemen_sarti"]:
            lines.append("    2-torsion section present (Van Geemen-Sarti involution)")
    return "\n".join(lines)


def _fraction_json(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def cmd_bielliptic(args) -> str:
    pair = LegendrePair(args.t1, args.t2)
    sextic = curve_from_legendre_pair(pair)
    split = split_jacobi(sextic)
    sub = subcover_equations(pair)
    fp = fibered_product(pair)
    cover = newsetting_cover(args.t1, args.t2)
    counts = weierstrass_counts(cover)
    rule = weierstrass_parity(2)
    data = {
        "t1": str(args.t1),
        "t2": str(args.t2),
        "sextic": sextic.to_json(),
        "genus_two": sextic.is_genus_two(),
        "subcovers": {
            "E1": split.E1.to_json(),
            "E2": split.E2.to_json(),
            "E1_tilde": sub.E1_tilde.to_json(),
            "E2_tilde": sub.E2_tilde.to_json(),
        },
        "fibered_product": fp.to_json(),
        "newsetting": {
            "C": cover.C.to_json(),
            "E": cover.E.to_json(),
            "E_prime_quartic": cover.E_prime_quartic.to_json(),
            "E_prime_branch": [str(b) for b in cover.E_prime_branch],
            "quartic_scale": str(cover.quartic_scale),
            "y0_squared": _fraction_json(cover.y0_squared),
            "weierstrass_counts": {str(k): v for k, v in counts.items()},
            "parity_rule_holds": rule.holds(counts.values()),
        },
        "verified": {
            "pi1": verify_cover(split.pi1),
            "pi2": verify_cover(split.pi2),
            "change_E1": verify_cover(sub.changes[0]),
            "change_E2": verify_cover(sub.changes[1]),
            "pi1_tilde": verify_cover(sub.pi1),
            "pi2_tilde": verify_cover(sub.pi2),
            "f": verify_cover(cover.f),
            "to_E_prime": verify_cover(cover.to_E_prime),
            "homography": verify_cover(cover.homography),
        },
        "printed_scale_checks": list(sub.printed_scale_checks),
    }
    if args.json:
        return dumps(data)
    lines = [f"C: eta^2 = {sextic.polynomial().format('xi')}   genus 2: {data['genus_two']}"]
    lines.append(f"E1: {split.E1.format()}    E2: {split.E2.format()}")
    lines.append(f"nodes of the fibered product: {', '.join(str(v) for v in fp.nodes)}")
    lines.append(f"y0^2 = {cover.y0_squared}")
    lines.extend(f"verify {k}: {v}" for k, v in data["verified"].items())
    return "\n".join(lines)


_EMBED = re.compile(r"U3-embed:(\d+)")


def cmd_lattice(args) -> str:
    name = args.name.replace(" ", "")
    m = _EMBED.fullmatch(name)
    if m:
        cert = embed_T_in_U3(int(m.group(1)))
        return dumps(cert.to_json())
    return dumps(named_lattice(name).to_json())


def cmd_table(args) -> str:
    t = run_table(args.which)
    return dumps(t) if args.json else render_table(t)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ellsurf", description="Exact analysis of rational elliptic surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze a Weierstrass model given as JSON")
    a.add_argument("--model", required=True, metavar="FILE")
    fmt = a.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable output")
    a.add_argument("--rho", type=int, default=DEFAULT_RHO)
    a.add_argument("--chi", type=int, default=DEFAULT_CHI)
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("beauville", help="verify catalog pencils")
    b.add_argument("--entry", required=True, metavar="LABEL|all")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_beauville)

    c = sub.add_parser("bielliptic", help="genus-2 curve from a Legendre pair")
    c.add_argument("--t1", required=True, type=_rational)
    c.add_argument("--t2", required=True, type=_rational)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_bielliptic)

    d = sub.add_parser("lattice", help="named lattice or U^3 embedding certificate")
    d.add_argument("--name", required=True, metavar="T(k,m,n)|U3-embed:n|NAME")
    d.set_defaults(func=cmd_lattice)

    e = sub.add_parser("table", help="audit tables against reference values")
    e.add_argument("which", choices=["mw", "mwl", "subgroups"])
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; usage errors are invalid input here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        out = args.func(args)
    except InconsistencyError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, TypeError, OSError, ZeroDivisionError, json.JSONDecodeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
