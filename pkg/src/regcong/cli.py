"""Command-line front end.

Subcommands map one-to-one onto the library workflows:

    eta        analyze an eta-quotient (weight, character, cusp orders)
    bseries    dump b_k residues or a progression window
    certify    Sturm certificate for one Hecke pair (family, m, l)
    search     scan primes l for vanishing certificates (NDJSON stream)
    verify     check a congruence string b<k>(<A>n+<B>) == 0 mod <m>
    criterion  residue-class witness scan
    lp         the mod-3 progression family b3(p^3 n + (p^2-1)/12)

Exit codes: 0 success / claim verified; 1 claim refuted (FAIL verdicts,
empty search, no witness); 2 usage or parse errors; 3 memory-cap overflow.
Progress for long series builds goes to stderr; results go to stdout.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import Dict, Optional

from .config import DEFAULT_MEMORY_CAP, ENV_PREFIX, Config
from .errors import LengthOverflow, NotOneMod12, ParseError, RegcongError
from .etaquot import parse_eta_quotient
from .hecke import verify_hecke_vanishing
from .regpart import bk_at_progression, bk_series
from .search import (criterion_scan_bound, find_vanishing_primes, lp_check,
                     parse_congruence, residue_criterion, verify_congruence)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--memory-cap", type=int, metavar="COEFFS",
                   default=int(_env("MEMORY_CAP", DEFAULT_MEMORY_CAP)),
                   help="series length cap in coefficients "
                        f"(default {DEFAULT_MEMORY_CAP}, env {ENV_PREFIX}MEMORY_CAP)")
    p.add_argument("--threads", type=int,
                   default=int(_env("THREADS", 1)),
                   help=f"worker threads for scans (env {ENV_PREFIX}THREADS)")
    p.add_argument("--cache-dir", type=Path,
                   default=_env("CACHE_DIR"),
                   help="directory for QS1 series cache files "
                        f"(env {ENV_PREFIX}CACHE_DIR)")
    p.add_argument("--output", choices=("text", "json"),
                   default=_env("OUTPUT", "text"),
                   help=f"report format (env {ENV_PREFIX}OUTPUT)")
    p.add_argument("--huge", action="store_true",
                   default=_env("HUGE", "") not in ("", "0", "false"),
                   help="lift the memory cap for multi-GB runs "
                        f"(env {ENV_PREFIX}HUGE)")


def _config_from(args) -> Config:
    return Config(memory_cap=args.memory_cap,
                  threads=args.threads,
                  cache_dir=Path(args.cache_dir) if args.cache_dir else None,
                  output=args.output,
                  huge=args.huge)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _emit(args, payload: Dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _family_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, choices=("b3", "b5"),
                   help="congruence family")


def _modulus_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--modulus", required=True, type=int, metavar="M",
                   help="prime modulus m")


# -- subcommand bodies --------------------------------------------------------

def _cmd_eta(args) -> int:
    quotient = parse_eta_quotient(args.quotient)
    report = quotient.report()
    lines = [
        f"quotient    : {report['quotient']}",
        f"level       : {report['level']}",
        f"weight      : {report['weight'] if report['weight'] is not None else 'half-integral'}",
        f"admissible  : {'yes' if report['admissible'] else 'no  ' + '; '.join(report['violations'])}",
        f"prefactor   : q^({report['prefactor24']}/24)",
        f"character   : ({report['character_top']}/n)" if report["character_top"] is not None
        else "character   : undefined",
    ]
    for cusp in report["cusps"]:
        lines.append(f"cusp d={cusp['d']:<4d}: order24 = {cusp['order24']}"
                     f" (order {cusp['order24']}/24)")
    lines.append(f"verdict     : {report['verdict']}")
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def _cmd_bseries(args) -> int:
    config = _config_from(args)
    if args.progression:
        A, B, count = args.progression
        residues = bk_at_progression(args.k, args.modulus, A, B, count,
                                     config=config, progress=_progress)
        payload = {"k": args.k, "m": args.modulus, "A": A, "B": B,
                   "count": count, "residues": [int(r) for r in residues]}
        _emit(args, payload, " ".join(str(int(r)) for r in residues))
    else:
        if args.length is None:
            raise ParseError("--length is required without --progression", 0)
        series = bk_series(args.k, args.length, args.modulus,
                           config=config, progress=_progress)
        payload = {"k": args.k, "m": args.modulus, "length": args.length,
                   "coefficients": series.tolist()}
        _emit(args, payload, " ".join(map(str, series.tolist())))
    return EXIT_OK


def _cmd_certify(args) -> int:
    config = _config_from(args)
    cert = verify_hecke_vanishing(args.family, args.modulus, args.l,
                                  config=config, progress=_progress)
    text = (f"certificate ({cert['family']}, m={cert['m']}, l={cert['l']}): "
            f"{cert['verdict']}\n"
            f"  space       : weight {cert['weight']}, level {cert['level']}\n"
            f"  sturm bound : {cert['sturm_bound']}\n"
            f"  precision   : {cert['precision']} coefficients\n"
            f"  series hash : {cert['series_hash']}")
    if "first_nonzero" in cert:
        fn = cert["first_nonzero"]
        text += f"\n  first nonzero: n={fn['n']} value={fn['value']}"
    _emit(args, cert, text)
    return EXIT_OK if cert["verdict"] == "vanishes" else EXIT_REFUTED


def _cmd_search(args) -> int:
    config = _config_from(args)

    def stream(record: Dict) -> None:
        if args.output == "json":
            print(json.dumps(record), flush=True)
        else:
            line = (f"l={record['l']}: {record['verdict']}")
            if record["verdict"] == "precision-overflow":
                line += f" (needs {record['needed']} > cap {record['cap']})"
            print(line, flush=True)

    hits = find_vanishing_primes(args.family, args.modulus,
                                 args.l_min, args.l_max,
                                 serre_filter=args.serre_filter,
                                 config=config, progress=_progress,
                                 on_result=stream)
    if args.output == "text":
        print(f"vanishing primes: {[h['l'] for h in hits]}")
    return EXIT_OK if hits else EXIT_REFUTED


def _cmd_verify(args) -> int:
    config = _config_from(args)
    cong = parse_congruence(args.congruence)
    report = verify_congruence(cong, args.count, config=config,
                               progress=_progress)
    text = (f"{report['congruence']}: {report['result']} "
            f"(n < {report['n_count']}, series length {report['length']})")
    if "first_violation" in report:
        fv = report["first_violation"]
        text += (f"\n  first violation: n={fv['n']} index={fv['index']} "
                 f"residue={fv['residue']}")
    _emit(args, report, text)
    return EXIT_OK if report["result"] == "PASS" else EXIT_REFUTED


def _cmd_criterion(args) -> int:
    config = _config_from(args)
    witness = residue_criterion(args.family, args.modulus,
                                config=config, progress=_progress)
    bound = criterion_scan_bound(args.family, args.modulus)
    payload = {
        "family": args.family, "m": args.modulus, "scan_bound": bound,
        "found": witness is not None,
        "witness": dataclasses.asdict(witness) if witness else None,
    }
    if witness:
        text = (f"witness: b_{args.family[1]}({witness.argument}) == "
                f"{witness.e} (mod {args.modulus}) at kprime={witness.kprime}"
                f" [{witness.regime} regime]")
    else:
        text = f"no witness below kprime = {bound}"
    _emit(args, payload, text)
    return EXIT_OK if witness else EXIT_REFUTED


def _cmd_lp(args) -> int:
    config = _config_from(args)
    report = lp_check(args.p, args.count, config=config, progress=_progress)
    text = (f"{report['congruence']}: {report['result']} "
            f"(n < {report['n_count']})")
    _emit(args, report, text)
    return EXIT_OK if report["result"] == "PASS" else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regcong",
        description="k-regular partition congruences: series, eta-quotients, "
                    "Sturm certificates, and progression search.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", help="analyze an eta-quotient",
                       description="Classify `eta(3)^21 * eta(1)^9 @ N=3`: "
                                   "weight, admissibility, character, cusp orders.")
    p.add_argument("quotient", help="e.g. 'eta(3)^21 * eta(1)^9 @ N=3'")
    _common_flags(p)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("bseries", help="dump b_k residues mod m")
    p.add_argument("k", type=int, help="regularity index (>= 2)")
    _modulus_flag(p)
    p.add_argument("--length", type=int, help="number of coefficients")
    p.add_argument("--progression", nargs=3, type=int, metavar=("A", "B", "COUNT"),
                   help="evaluate b_k(A*n+B) for n < COUNT instead of a prefix")
    _common_flags(p)
    p.set_defaults(func=_cmd_bseries)

    p = sub.add_parser("certify", help="Sturm certificate for one Hecke pair",
                       description="Exit 0 iff T(l) annihilates the attached "
                                   "form mod m through the Sturm bound.")
    _family_flag(p)
    _modulus_flag(p)
    p.add_argument("l", type=int, help="Hecke prime l (l != m)")
    _common_flags(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("search", help="scan primes l for vanishing certificates",
                       description="Streams one record per candidate prime "
                                   "(NDJSON with --output json). Exit 0 iff "
                                   "at least one certificate vanishes.")
    _family_flag(p)
    _modulus_flag(p)
    p.add_argument("l_max", type=int, help="scan primes up to this bound")
    p.add_argument("--l-min", dest="l_min", type=int, default=2)
    p.add_argument("--serre-filter", action="store_true",
                   default=_env("SERRE_FILTER", "") not in ("", "0", "false"),
                   help="only try l == -1 (mod N*m), the guaranteed class "
                        f"(default off; env {ENV_PREFIX}SERRE_FILTER)")
    _common_flags(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify", help="verify a congruence string",
                       description="Exit 0 on PASS, 1 on FAIL. Grammar: "
                                   "'b<k>(<A>n+<B>) == 0 mod <m>'.")
    p.add_argument("congruence", help="e.g. 'b3(18605n+127) == 0 mod 5'")
    p.add_argument("--count", type=int, default=None,
                   help="window size (default 100 or cap-limited)")
    _common_flags(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("criterion", help="residue-class witness scan",
                       description="Exit 0 iff a witness exists in the scan "
                                   "range (none exists for b5 at m=5).")
    _family_flag(p)
    _modulus_flag(p)
    _common_flags(p)
    p.set_defaults(func=_cmd_criterion)

    p = sub.add_parser("lp", help="check b3(p^3 n + (p^2-1)/12) == 0 mod 3",
                       description="Requires p == 1 (mod 12); exit 0 on PASS.")
    p.add_argument("p", type=int, help="prime p == 1 (mod 12)")
    p.add_argument("--count", type=int, default=100)
    _common_flags(p)
    p.set_defaults(func=_cmd_lp)

    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotOneMod12 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except LengthOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, RegcongError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
