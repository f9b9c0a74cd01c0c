"""Command-line entry point: ``galois2 {certify,scan,verify,disc,factor}``.

Exit codes: 0 certified or all checks passed, 1 not certified / conditional /
failed check, 2 input error or enumeration cap exceeded, 3 abstention because
factoring ran out of budget. ``GALOIS2_FACTOR_BUDGET`` sets the rho budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from galois2.arith import FactorBudget, FactorizationIncomplete, factor
from galois2.poly import discriminant, format_poly, parse_poly

EXIT_OK, EXIT_NOT, EXIT_INPUT, EXIT_ABSTAIN = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj: dict, human: bool) -> None:
    if human:
        for k, v in obj.items():
            print(f"{k}: {v}")
    else:
        print(json.dumps(obj, indent=2))


def cmd_certify(args, budget) -> int:
    from galois2 import certifier

    if args.roots is not None:
        if args.f is not None:
            raise InputError("--roots cannot be combined with --f")
        cert = certifier.certify_split(_int_list(args.roots), budget)
    else:
        if args.f is None or args.lam is None:
            raise InputError("certify needs --f with --lambda, or --roots")
        f = parse_poly(args.f)
        if args.lam2 is None:
            cert = certifier.certify_thm1(f, args.lam, budget)
        else:
            cert = certifier.certify_thm2(f, args.lam, args.lam2, budget)
    print(cert.human() if args.human else cert.to_json())
    return EXIT_OK if cert.status == certifier.CERTIFIED else EXIT_NOT


def cmd_scan(args, budget) -> int:
    from galois2 import certifier

    report = certifier.scan(parse_poly(args.f), args.lo, args.hi, budget)
    if args.human:
        print(f"f = {report.f}, lambda in [{args.lo}, {args.hi}]")
        for k, v in report.counts.items():
            print(f"{k}: {v}")
        print(f"non-certified: {report.non_certified}")
    else:
        print(json.dumps(report.to_dict(), indent=2))
    return EXIT_OK


def cmd_verify(args, budget) -> int:
    from galois2 import homology, symplectic

    what = args.what
    if what == "lemma33":
        report = symplectic.sp_basis_certify(args.g)
    elif what == "prop32":
        report = symplectic.prop32_certify(args.g, args.n, args.nprime, args.layers)
    elif what == "prop34":
        report = symplectic.prop34_certify(args.n, args.layers)
    elif what == "cclass":
        report = homology.c_class_report(args.g).to_dict()
    elif what == "moebius":
        if args.roots is None or args.p is None:
            raise InputError("verify moebius needs --roots and --p")
        report = homology.moebius_shift(_int_list(args.roots), args.p, args.beta).to_dict()
    elif what == "layers":
        report = symplectic.layer_structure_report(args.g, args.k).to_dict()
    else:  # congruences
        report = symplectic.proof_congruence_report(args.g)
    _emit(report, args.human)
    return EXIT_OK if report["pass"] else EXIT_NOT


def cmd_disc(args, budget) -> int:
    f = parse_poly(args.f)
    d = discriminant(f)
    out = {"f": format_poly(f), "discriminant": d}
    if d:
        out["factorization"] = [list(t) for t in factor(d, budget)]
    _emit(out, args.human)
    return EXIT_OK


def cmd_factor(args, budget) -> int:
    fac = factor(args.n, budget)
    _emit({"n": args.n, "unit": fac.unit, "factors": [list(t) for t in fac]}, args.human)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galois2", description=__doc__.splitlines()[0])
    out = argparse.ArgumentParser(add_help=False)
    mode = out.add_mutually_exclusive_group()
    mode.add_argument("--json", dest="human", action="store_false", help="JSON output (default)")
    mode.add_argument("--human", dest="human", action="store_true", help="plain-text output")
    out.set_defaults(human=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[out], help="certify a 2-adic image containment")
    p.add_argument("--f", help='monic polynomial, e.g. "x^3-2" or "[-2,0,0,1]"')
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--lambda2", "--lambdaprime", dest="lam2", type=int)
    p.add_argument("--roots", help="comma-separated integer roots; the last one is distinguished")
    p.set_defaults(run=cmd_certify)

    p = sub.add_parser("scan", parents=[out], help="certify over a range of lambda")
    p.add_argument("--f", required=True)
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.set_defaults(run=cmd_scan)

    p = sub.add_parser("verify", parents=[out], help="finite group-theoretic checks")
    p.add_argument(
        "what", choices=["lemma33", "prop32", "prop34", "cclass", "moebius", "layers", "congruences"]
    )
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--nprime", type=int, default=1)
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--p", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--roots")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("disc", parents=[out], help="discriminant of a polynomial")
    p.add_argument("--f", required=True)
    p.set_defaults(run=cmd_disc)

    p = sub.add_parser("factor", parents=[out], help="prime factorization")
    p.add_argument("n", type=int)
    p.set_defaults(run=cmd_factor)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = FactorBudget.from_env()
    except ValueError:
        print("error: GALOIS2_FACTOR_BUDGET must be an integer", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.run(args, budget)
    except FactorizationIncomplete as exc:
        print(json.dumps({"status": "Abstained", "reason": str(exc), "cofactor": exc.cofactor}))
        return EXIT_ABSTAIN
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RuntimeError as exc:
        from galois2.symplectic import CapExceeded

        if not isinstance(exc, CapExceeded):
            raise
        print(json.dumps({"status": "CapExceeded", "size": exc.size, "cap": exc.cap}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
