#!/usr/bin/env python3
"""Compare the Kronecker-symbol descriptors floating around the two spaces.

The character attached to the level-432 spaces can be written several ways;
these are NOT all the same function, and silently swapping one for another
flips signs at half the units.  This prints the pointwise comparison over a
full period so the convention choice is data, not folklore:

  * (n/3)(-4/n)  -- the package's chi12; equals (12/n) = (n/3)(-1/n)
  * (-3/n)(n/3)  -- looks similar, disagrees at half the units mod 432
  * (-3/n)       -- the genuinely different level-3 character
  * (n/5)        -- the level-180 family's character, equal to (5/n)
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from regcong.etaquot import (CHI_DISC_MINUS3, CHI_MOD5, CHI_MOD12,
                             character_agreement, kron_bottom, kron_top,
                             parse_eta_quotient)


def show(result):
    verdict = ("identical" if result["agree"]
               else f"{len(result['disagreements'])} disagreements, "
                    f"first {result['disagreements'][:4]}")
    print(f"{result['first']:>16s} vs {result['second']:<16s} "
          f"on {result['checked']} units mod {result['modulus']}: {verdict}")


def main() -> int:
    minus1_times_n3 = kron_top(-1) * kron_bottom(3)
    minus1_times_n3.name = "(-1/n)(n/3)"
    minus3_times_n3 = CHI_DISC_MINUS3 * kron_bottom(3)
    minus3_times_n3.name = "(-3/n)(n/3)"

    show(character_agreement(minus1_times_n3, CHI_MOD12, 432))
    show(character_agreement(minus3_times_n3, CHI_MOD12, 432))
    show(character_agreement(CHI_DISC_MINUS3, CHI_MOD12, 432))
    show(character_agreement(kron_top(5, name="(5/n)"), CHI_MOD5, 180))

    # the character the quotient itself implies, from its reduced top
    quotient = parse_eta_quotient("eta(12)^4 * eta(36)^2 @ N=432")
    print(f"\nlevel-432 quotient character top: {quotient.character_top()} "
          f"-> {quotient.character().name}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
