"""Command-line front end: ``qcommute {parse,classes,verify,exp}``.

Exit status is 0 for a confirmed/complete run, 2 when a claim is refuted or
mixed, and 1 for usage or runtime errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from .algebra import Mode, norm_sq
from .commutator import Verdict
from .errors import QuaternionError
from .exponential import JetPair, qexp, qexp_derivative
from .harness import CLAIMS, HarnessConfig, random_tuple, run_harness
from .literals import format_quaternion, parse_quaternion, parse_tuple
from .similarity import enumerate_class_partition

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


def _partition_dict(index, qs, part) -> dict:
    classes = []
    for cidx, cls in enumerate(part.classes):
        entry = {
            "re": str(cls.key.re),
            "norm_sq": str(cls.key.norm_sq),
            "members": [
                {"permutation": list(sigma.mapping), "product": format_quaternion(prod)}
                for sigma, prod in cls.members
            ],
        }
        if part.equality_classes is not None:
            entry["equality_classes"] = [[list(s.mapping) for s in group] for group in part.equality_classes[cidx]]
        classes.append(entry)
    return {
        "tuple": index,
        "inputs": [format_quaternion(q) for q in qs],
        "class_count": part.class_count,
        "sizes": part.sizes,
        "heuristic": part.heuristic,
        "classes": classes,
    }


def cmd_parse(args) -> int:
    q = parse_quaternion(args.literal, args.mode)
    out = {"mode": q.mode.value, "literal": format_quaternion(q), "components": [str(c) for c in q]}
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK


def _load_tuples(args) -> list:
    mode = Mode(args.mode)
    if args.input:
        with open(args.input) as fh:
            tuples = [parse_tuple(line, mode) for line in fh if line.strip() and not line.lstrip().startswith("#")]
        for t in tuples:
            if args.n is not None and len(t) != args.n:
                raise QuaternionError(f"expected {args.n} literals per line, got {len(t)}")
        return tuples
    if args.n is None:
        raise QuaternionError("--n is required with --random")
    return [random_tuple(random.Random(f"{args.seed}/{i}"), mode, args.n) for i in range(args.random)]


def cmd_classes(args) -> int:
    tuples = _load_tuples(args)
    results = []
    histogram: dict = {}
    for idx, qs in enumerate(tuples):
        part = enumerate_class_partition(qs)
        histogram[part.class_count] = histogram.get(part.class_count, 0) + 1
        results.append((idx, qs, part))
    if args.format == "json":
        doc = {
            "mode": args.mode,
            "seed": args.seed,
            "histogram": {str(k): histogram[k] for k in sorted(histogram)},
            "tuples": [_partition_dict(i, qs, p) for i, qs, p in results],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tuple", "class", "permutation", "product", "re", "norm_sq"])
        for idx, _, part in results:
            for cidx, cls in enumerate(part.classes):
                for sigma, prod in cls.members:
                    w.writerow([idx, cidx, str(sigma), format_quaternion(prod), str(prod.re), str(norm_sq(prod))])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_verify(args) -> int:
    config = HarnessConfig(
        claim=args.claim, trials=args.trials, seed=args.seed, mode=args.mode, n=args.n, bound=args.bound
    )
    report = run_harness(config)
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.verdict in (Verdict.CONFIRMED, Verdict.DEGENERATE) else EXIT_REFUTED


def cmd_exp(args) -> int:
    psi = parse_quaternion(args.psi, Mode.FLOAT)
    out = {"psi": format_quaternion(psi), "exp": format_quaternion(qexp(psi))}
    if args.deriv:
        if args.psi_prime is None:
            raise QuaternionError("--deriv requires --psi-prime")
        dpsi = parse_quaternion(args.psi_prime, Mode.FLOAT)
        out["psi_prime"] = format_quaternion(dpsi)
        out["derivative"] = format_quaternion(qexp_derivative(JetPair(psi, dpsi)))
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcommute", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a quaternion literal")
    p.add_argument("literal")
    p.add_argument("--mode", choices=["float", "exact"], default="exact")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("classes", help="similarity classes of all n! multiproducts")
    p.add_argument("--n", type=int)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="file with one tuple per line, literals separated by ';'")
    src.add_argument("--random", type=int, metavar="COUNT")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["float", "exact"], default="exact")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", help="run the claim harness")
    p.add_argument("--claim", required=True, choices=list(CLAIMS))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["float", "exact"], default=None)
    p.add_argument("--n", type=int)
    p.add_argument("--bound", type=int, default=9, help="numerator/denominator bound for exact sampling")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exp", help="evaluate exp(psi) and optionally its derivative")
    p.add_argument("--psi", required=True)
    p.add_argument("--deriv", action="store_true")
    p.add_argument("--psi-prime")
    p.set_defaults(func=cmd_exp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; 2 is reserved for refuted claims
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (QuaternionError, ZeroDivisionError, OSError) as exc:
        sys.stderr.write(f"qcommute: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
