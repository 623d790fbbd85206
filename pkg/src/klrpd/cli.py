"""Command line entry point: ``klrpd pd|gdim|engine|crystal|mult|verify``.

Machine-readable JSON goes to stdout (one object per line); human-readable
summaries go to stderr.  Exit codes: 0 on success, 1 when a computational
check finds a mismatch (oracle disagreement), 2 on usage or config errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable

from . import pdseq
from .cartan import (
    CartanDatum,
    CartanError,
    DominantWeight,
    RootVector,
    Sequence,
    builtin_datum,
    content,
    datum_from_config,
    parse_coord_map,
)
from .crystal import PathCrystal
from .engine import (
    Cocenter,
    CyclotomicQuotient,
    KLRRing,
    OracleMismatch,
    QChoice,
    verify_relations_lemma,
    verify_spanning,
    z_element,
    s_element,
)
from .gdim import graded_dim_algebra, graded_dim_pair
from .multiplicity import WeightMultiplicities, root_mults
from .verify import run_suite

EXIT_OK = 0
EXIT_FINDING = 1
EXIT_USAGE = 2


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def note(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _add_datum_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="builtin datum: a|b|c|d|e|f|g|affine-a|rank1")
    p.add_argument("--rank", type=int, help="rank (or e for affine-a)")
    p.add_argument("--config", help="JSON config file with labels/cartan_matrix/symmetrizers")
    p.add_argument("--labels", help="comma-separated labels for an explicit matrix")
    p.add_argument("--matrix", help="row-major Cartan matrix entries, comma-separated")
    p.add_argument("--symmetrizers", help="comma-separated positive integers")
    p.add_argument("--Lambda", dest="Lambda", default="", help='dominant weight, e.g. "0:4,1:1"')
    p.add_argument("--alpha", default="", help='root element, e.g. "0:1,1:2"')
    p.add_argument("--echo-datum", action="store_true", help="echo the parsed datum as JSON")


def _build_datum(args) -> tuple[CartanDatum, dict]:
    if args.config:
        with open(args.config) as handle:
            cfg = json.load(handle)
        return datum_from_config(cfg), cfg
    if args.family:
        return builtin_datum(args.family, args.rank), {}
    if args.matrix:
        if not args.labels or not args.symmetrizers:
            raise CartanError("--matrix needs --labels and --symmetrizers")
        labels = [s.strip() for s in args.labels.split(",")]
        flat = [int(s) for s in args.matrix.split(",")]
        sym = [int(s) for s in args.symmetrizers.split(",")]
        return datum_from_config(
            {"labels": labels, "cartan_matrix": flat, "symmetrizers": sym}
        ), {}
    raise CartanError("no datum given: use --family, --config, or --matrix")


def _context(args) -> tuple[CartanDatum, DominantWeight, RootVector]:
    datum, cfg = _build_datum(args)
    if args.Lambda:
        lam = datum.weight(parse_coord_map(args.Lambda))
    else:
        lam = datum.weight(cfg.get("Lambda", {}))
    if args.alpha:
        alpha = datum.root(parse_coord_map(args.alpha))
    else:
        alpha = datum.root(cfg.get("alpha", {}))
    if args.echo_datum:
        emit({"datum": datum.to_json_dict()})
    return datum, lam, alpha


def _parse_sequence(datum: CartanDatum, text: str) -> Sequence:
    if not text.strip():
        return Sequence(())
    return datum.sequence(s.strip() for s in text.split(","))


# -- subcommand handlers --------------------------------------------------------


def cmd_pd(args) -> int:
    datum, lam, alpha = _context(args)
    if args.action == "check":
        nu = _parse_sequence(datum, args.sequence)
        dec = pdseq.run_decompose(datum, lam, nu)
        ok, witness = pdseq.check_via_criterion(datum, lam, nu)
        emit(
            {
                "sequence": list(datum.labels_of(nu)),
                "is_pd": ok,
                "ells": list(dec.ells),
                "witness": list(witness.ks) if witness else None,
            }
        )
        return EXIT_OK
    if args.action == "enumerate":
        count = 0
        for nu in pdseq.enumerate_pd(datum, lam, alpha):
            emit({"sequence": list(datum.labels_of(nu))})
            count += 1
        note(f"{count} piecewise dominant sequence(s)")
        return EXIT_OK
    if args.action == "nonzero":
        ok, witness = pdseq.weight_nonzero(datum, lam, alpha)
        emit(
            {
                "nonzero": ok,
                "witness": list(datum.labels_of(witness)) if witness else None,
            }
        )
        return EXIT_OK
    nu = _parse_sequence(datum, args.sequence)
    if args.action == "z":
        zm = pdseq.z_monomial(datum, lam, nu)
        emit(
            {
                "sequence": list(datum.labels_of(nu)),
                "z_exponents": list(zm.exponents),
                "degree": zm.degree,
            }
        )
        return EXIT_OK
    if args.action == "s":
        sw = pdseq.s_word(datum, lam, nu)
        emit(
            {
                "sequence": list(datum.labels_of(nu)),
                "tau_word": list(sw.tau_word()),
                "x_exponents": list(sw.x_exponents()),
                "degree": sw.degree,
            }
        )
        return EXIT_OK
    raise CartanError(f"unknown pd action {args.action}")


def cmd_gdim(args) -> int:
    datum, lam, alpha = _context(args)
    if args.action == "pair":
        nu = _parse_sequence(datum, args.nu)
        nup = _parse_sequence(datum, args.nu_prime) if args.nu_prime else nu
        poly = graded_dim_pair(datum, lam, nu, nup, permutation_bound=args.bound)
        emit({"pair": [list(datum.labels_of(nu)), list(datum.labels_of(nup))],
              "dim_q": poly.to_json(), "dim": poly.at_one()})
        return EXIT_OK
    poly = graded_dim_algebra(datum, lam, alpha, permutation_bound=args.bound)
    emit({"alpha": {datum.labels[i]: c for i, c in enumerate(alpha.coeffs) if c},
          "dim_q": poly.to_json(), "dim": poly.at_one()})
    return EXIT_OK


def cmd_engine(args) -> int:
    datum, lam, alpha = _context(args)
    ring = KLRRing(datum)
    try:
        quotient = CyclotomicQuotient(
            ring, lam, alpha, char=args.char, height_bound=args.height_bound
        )
    except OracleMismatch as exc:
        note(f"oracle mismatch: {exc}")
        return EXIT_FINDING
    if args.action == "build":
        emit(
            {
                "characteristic": args.char,
                "dims": {str(d): v for d, v in quotient.dims().items()},
                "dim_q": quotient.gdim.to_json(),
                "defect": quotient.defect,
            }
        )
        return EXIT_OK
    cocenter = Cocenter(quotient)
    if args.action == "cocenter":
        emit(cocenter.report().to_json())
        return EXIT_OK
    if args.action == "class":
        nu = _parse_sequence(datum, args.sequence)
        kind = args.element
        if kind == "e":
            elem = ring.idempotent(nu)
        elif kind == "z":
            elem = z_element(quotient, nu)
        elif kind == "s":
            elem = s_element(quotient, nu)
        else:
            raise CartanError(f"unknown element kind {kind!r}")
        degree, coords = cocenter.class_of(elem)
        emit(
            {
                "element": kind,
                "sequence": list(datum.labels_of(nu)),
                "degree": degree,
                "class": [str(x) for x in coords],
                "nonzero": any(not quotient.field.is_zero(x) for x in coords),
            }
        )
        return EXIT_OK
    if args.action == "verify":
        status = EXIT_OK
        for mode in args.modes.split(","):
            mode = mode.strip()
            if mode == "relations":
                checks = verify_relations_lemma(cocenter, seed=args.seed)
                failed = [c for c in checks if c.asserted and not c.holds]
                findings = [c for c in checks if not c.asserted and not c.holds]
                emit(
                    {
                        "mode": "relations",
                        "checks": len(checks),
                        "failed": len(failed),
                        "findings": [
                            {"nu": list(c.nu), "composition": list(c.composition), "k": c.k}
                            for c in findings
                        ],
                    }
                )
                if failed:
                    status = EXIT_FINDING
            else:
                report = verify_spanning(cocenter, mode)
                emit(report.to_json())
                if not report.passed:
                    status = EXIT_FINDING
        return status
    raise CartanError(f"unknown engine action {args.action}")


def cmd_crystal(args) -> int:
    datum, lam, alpha = _context(args)
    crystal = PathCrystal(datum, lam)
    if args.action == "generate":
        vertices = crystal.generate(args.max_height)
        counts: dict[tuple[int, ...], int] = {}
        for b in vertices:
            counts[crystal.wt_alpha(b).coeffs] = counts.get(crystal.wt_alpha(b).coeffs, 0) + 1
        emit(
            {
                "size": len(vertices),
                "weights": [
                    {"alpha": list(a), "mult": m} for a, m in sorted(counts.items())
                ],
            }
        )
        return EXIT_OK
    if args.action == "mult":
        emit({"alpha": list(alpha.coeffs), "mult": crystal.weight_multiplicity(alpha)})
        return EXIT_OK
    if args.action == "pdpath":
        nu = _parse_sequence(datum, args.sequence)
        b = crystal.pd_path(nu)
        emit({"sequence": list(datum.labels_of(nu)), "path": b.to_json()})
        return EXIT_OK
    if args.action == "extract":
        nu = _parse_sequence(datum, args.sequence)
        b = crystal.pd_path(nu)
        out = crystal.extract_pd(b, tie_break=args.tie_break)
        emit(
            {
                "input": list(datum.labels_of(nu)),
                "extracted": list(datum.labels_of(out)),
                "roundtrip": crystal.pd_path(out) == b,
            }
        )
        return EXIT_OK
    if args.action == "classes":
        classes = crystal.pd_classes(alpha)
        emit(
            {
                "alpha": list(alpha.coeffs),
                "num_classes": len(classes),
                "class_sizes": sorted(len(v) for v in classes.values()),
                "weight_multiplicity": crystal.weight_multiplicity(alpha),
            }
        )
        return EXIT_OK
    raise CartanError(f"unknown crystal action {args.action}")


def _cache_path(datum: CartanDatum, lam: DominantWeight) -> str | None:
    root = os.environ.get("KLRPD_CACHE_DIR")
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    key = abs(hash((datum.fingerprint(), lam.coords))) % 10**12
    return os.path.join(root, f"mult-{key}.jsonl")


def cmd_mult(args) -> int:
    datum, lam, alpha = _context(args)
    if args.action == "roots":
        table = root_mults(datum, args.height_bound)
        for root, m in table.positive_roots():
            emit({"root": list(root.coeffs), "mult": m})
        return EXIT_OK
    mults = WeightMultiplicities(datum, lam, height_bound=max(alpha.height, 1))
    cache = _cache_path(datum, lam)
    if cache and os.path.exists(cache):
        with open(cache) as handle:
            entries = {}
            for line in handle:
                record = json.loads(line)
                entries[tuple(record["key"])] = record["value"]
            mults.preload(entries)
    value = mults.mult(alpha)
    emit({"alpha": list(alpha.coeffs), "mult": value})
    if cache:
        with open(cache, "w") as handle:
            for key, val in sorted(mults.snapshot().items()):
                handle.write(json.dumps({"key": list(key), "value": val}) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed, jobs=args.jobs)
    for item in report["items"]:
        emit(item)
    emit({"suite": report["suite"], "passed": report["passed"],
          "failures": report["failures"], "observations": report["observations"]})
    note(
        f"suite {report['suite']}: {report['passed']} passed, "
        f"{report['failures']} failed, {report['observations']} observation(s)"
    )
    return EXIT_OK if report["failures"] == 0 else EXIT_FINDING


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="klrpd",
        description="piecewise dominant sequences and cyclotomic KLR cocenters",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pd", help="piecewise dominance tools")
    p.add_argument("action", choices=["check", "enumerate", "nonzero", "z", "s"])
    _add_datum_args(p)
    p.add_argument("--sequence", default="", help="comma-separated residue labels")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("gdim", help="graded dimension formula")
    p.add_argument("action", choices=["pair", "algebra"])
    _add_datum_args(p)
    p.add_argument("--nu", default="", help="first sequence")
    p.add_argument("--nu-prime", default="", help="second sequence (default: nu)")
    p.add_argument("--bound", type=int, default=8, help="permutation enumeration bound")
    p.set_defaults(func=cmd_gdim)

    p = sub.add_parser("engine", help="concrete quotient construction")
    p.add_argument("action", choices=["build", "cocenter", "class", "verify"])
    _add_datum_args(p)
    p.add_argument("--char", type=int, default=0, help="field characteristic (0 or prime)")
    p.add_argument("--sequence", default="", help="sequence for class queries")
    p.add_argument("--element", default="e", help="class element kind: e|z|s")
    p.add_argument(
        "--modes",
        default="generator",
        help="verification modes: generator,principle1,principle2,principle3,relations",
    )
    p.add_argument("--height-bound", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_engine)

    p = sub.add_parser("crystal", help="path-model crystal")
    p.add_argument("action", choices=["generate", "mult", "pdpath", "extract", "classes"])
    _add_datum_args(p)
    p.add_argument("--sequence", default="")
    p.add_argument("--max-height", type=int, default=6)
    p.add_argument("--tie-break", choices=["min", "max"], default="min")
    p.set_defaults(func=cmd_crystal)

    p = sub.add_parser("mult", help="weight multiplicities")
    p.add_argument("action", choices=["roots", "weight"])
    _add_datum_args(p)
    p.add_argument("--height-bound", type=int, default=6)
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("verify", help="cross-module verification suite")
    p.add_argument("--suite", default="small-grid")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=0, help="worker pool size (0: sequential)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (CartanError, ValueError, OSError, json.JSONDecodeError) as exc:
        note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
