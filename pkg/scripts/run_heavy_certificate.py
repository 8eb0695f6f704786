#!/usr/bin/env python3
"""Standalone runner for the large (b3, m=11, l=12553) Sturm certificate.

The certificate needs ~2.5e7 series coefficients mod 11 (about 25 MB of
uint8 storage, a few CPU-minutes on a laptop, ~10 s warm on a fast box).
It is excluded from the default pytest run; this script is the convenient
way to produce it, with slab-level progress on stderr.

    python3 scripts/run_heavy_certificate.py
    python3 scripts/run_heavy_certificate.py --cache-dir ~/.cache/regcong
"""
import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from regcong.config import Config
from regcong.hecke import verify_hecke_vanishing


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="b3", choices=("b3", "b5"))
    ap.add_argument("--modulus", type=int, default=11)
    ap.add_argument("--hecke-prime", type=int, default=12553)
    ap.add_argument("--memory-cap", type=int, default=None,
                    help="series length cap in coefficients")
    ap.add_argument("--huge", action="store_true",
                    help="lift the cap to the multi-GB ceiling")
    ap.add_argument("--cache-dir", type=Path, default=None,
                    help="reuse/write QS1 series files here")
    args = ap.parse_args()

    kwargs = {"huge": args.huge, "cache_dir": args.cache_dir}
    if args.memory_cap is not None:
        kwargs["memory_cap"] = args.memory_cap
    config = Config(**kwargs)

    def progress(msg: str) -> None:
        print(msg, file=sys.stderr, flush=True)

    t0 = time.perf_counter()
    cert = verify_hecke_vanishing(args.family, args.modulus,
                                  args.hecke_prime, config=config,
                                  progress=progress)
    elapsed = time.perf_counter() - t0
    print(json.dumps(cert, indent=2))
    print(f"# verdict={cert['verdict']} precision={cert['precision']} "
          f"elapsed={elapsed:.1f}s", file=sys.stderr)
    return 0 if cert["verdict"] == "vanishes" else 1


if __name__ == "__main__":
    raise SystemExit(main())
