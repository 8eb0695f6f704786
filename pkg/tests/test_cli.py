"""CLI behavior: exit codes, output grammar, env overrides, JSON schemas.

Runs main() in-process so coverage and monkeypatching work; JSON payloads are
validated against the schema files shipped in docs/schemas, which are part of
the public contract.
"""
import json
from pathlib import Path

import jsonschema
import pytest

from regcong.cli import (EXIT_OK, EXIT_REFUTED, EXIT_RESOURCE, EXIT_USAGE,
                         main)
from regcong.regpart import bk_exact

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def load_schema(name):
    with open(SCHEMA_DIR / f"{name}.schema.json") as fh:
        return json.load(fh)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exit_code_constants():
    assert (EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_RESOURCE) == (0, 1, 2, 3)


# -- eta ------------------------------------------------------------------------

def test_eta_text(capsys):
    code, out, _ = run(capsys, "eta", "eta(3)^21 * eta(1)^9 @ N=3")
    assert code == EXIT_OK
    assert "weight      : 15" in out
    assert "character   : (-3/n)" in out
    assert "cusp d=1   : order24 = 48" in out
    assert "cusp d=3   : order24 = 72" in out
    assert "verdict     : cusp-form" in out


def test_eta_json_schema(capsys):
    code, out, _ = run(capsys, "eta", "eta(12)^4*eta(36)^2@N=432",
                       "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("eta_report"))
    assert payload["weight"] == 3
    assert payload["character_top"] == -1
    assert payload["verdict"] == "cusp-form"
    assert len(payload["cusps"]) == 20


def test_eta_inadmissible_is_still_analysis(capsys):
    code, out, _ = run(capsys, "eta", "eta(1)^3", "--output", "json")
    assert code == EXIT_OK  # analysis succeeded; the quotient is just bad
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("eta_report"))
    assert payload["verdict"] == "not-admissible"
    assert payload["weight"] is None


def test_eta_parse_error(capsys):
    code, _, err = run(capsys, "eta", "eta(3)^^2")
    assert code == EXIT_USAGE
    assert "error:" in err and "(at position" in err


# -- bseries ----------------------------------------------------------------------

def test_bseries_prefix(capsys):
    code, out, _ = run(capsys, "bseries", "3", "--modulus", "5",
                       "--length", "10")
    assert code == EXIT_OK
    want = [v % 5 for v in bk_exact(3, 9)]
    assert out.strip() == " ".join(map(str, want))


def test_bseries_progression_json(capsys):
    code, out, _ = run(capsys, "bseries", "5", "--modulus", "5",
                       "--progression", "5", "4", "6", "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("bseries_report"))
    assert payload["residues"] == [0] * 6
    assert (payload["A"], payload["B"], payload["count"]) == (5, 4, 6)


def test_bseries_requires_length_or_progression(capsys):
    code, _, err = run(capsys, "bseries", "3", "--modulus", "5")
    assert code == EXIT_USAGE
    assert "--length" in err


def test_bseries_memory_cap_and_huge(capsys):
    code, _, err = run(capsys, "bseries", "3", "--modulus", "5",
                       "--length", "1001", "--memory-cap", "1000")
    assert code == EXIT_RESOURCE
    assert "error:" in err
    code, out, _ = run(capsys, "bseries", "3", "--modulus", "5",
                       "--length", "1001", "--memory-cap", "1000", "--huge")
    assert code == EXIT_OK
    assert len(out.split()) == 1001


def test_bseries_composite_modulus(capsys):
    code, _, err = run(capsys, "bseries", "3", "--modulus", "6",
                       "--length", "5")
    assert code == EXIT_USAGE


# -- certify ----------------------------------------------------------------------

def test_certify_vanishes(capsys):
    code, out, _ = run(capsys, "certify", "--family", "b3", "--modulus", "5",
                       "61", "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("certificate"))
    assert payload["verdict"] == "vanishes"
    assert payload["sturm_bound"] == 864


def test_certify_refuted(capsys):
    code, out, _ = run(capsys, "certify", "--family", "b3", "--modulus", "5",
                       "7")
    assert code == EXIT_REFUTED
    assert "does-not-vanish" in out
    assert "first nonzero: n=11" in out


def test_certify_l_equals_m(capsys):
    code, _, err = run(capsys, "certify", "--family", "b3", "--modulus", "5",
                       "5")
    assert code == EXIT_USAGE
    assert "l = m" in err


# -- search -----------------------------------------------------------------------

def test_search_ndjson_stream(capsys):
    code, out, _ = run(capsys, "search", "--family", "b5", "--modulus", "7",
                       "40", "--output", "json")
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.strip().splitlines()]
    schema = load_schema("certificate")
    for rec in records:
        jsonschema.validate(rec, schema)
    ls = [r["l"] for r in records]
    assert ls == sorted(ls) and 7 not in ls
    hits = [r["l"] for r in records if r["verdict"] == "vanishes"]
    assert hits == [17, 37]


def test_search_text_summary(capsys):
    code, out, _ = run(capsys, "search", "--family", "b5", "--modulus", "7",
                       "40")
    assert code == EXIT_OK
    assert "l=17: vanishes" in out
    assert "vanishing primes: [17, 37]" in out


def test_search_empty_is_refuted(capsys):
    code, out, _ = run(capsys, "search", "--family", "b3", "--modulus", "5",
                       "100", "--serre-filter")
    assert code == EXIT_REFUTED
    assert "vanishing primes: []" in out


def test_search_overflow_records_stream(capsys):
    code, out, _ = run(capsys, "search", "--family", "b3", "--modulus", "5",
                       "61", "--l-min", "59", "--memory-cap", "1000",
                       "--output", "json")
    assert code == EXIT_REFUTED
    records = [json.loads(line) for line in out.strip().splitlines()]
    schema = load_schema("certificate")
    for rec in records:
        jsonschema.validate(rec, schema)
        assert rec["verdict"] == "precision-overflow"
        assert rec["needed"] > rec["cap"] == 1000


# -- verify -----------------------------------------------------------------------

def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "b5(5n+4) == 0 mod 5",
                       "--count", "50")
    assert code == EXIT_OK
    assert "PASS" in out


def test_verify_fail(capsys):
    code, out, _ = run(capsys, "verify", "b3(2n+1) == 0 mod 5",
                       "--count", "10")
    assert code == EXIT_REFUTED
    assert "FAIL" in out and "first violation" in out


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "b3(18605n+127) == 0 mod 5",
                       "--count", "20", "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("verify_report"))
    assert payload["result"] == "PASS"
    assert payload["provenance"] == "external"


def test_verify_grammar_error(capsys):
    code, _, err = run(capsys, "verify", "b3(4n+1) = 0 mod 5")
    assert code == EXIT_USAGE
    assert "(at position" in err


# -- criterion ---------------------------------------------------------------------

def test_criterion_witness(capsys):
    code, out, _ = run(capsys, "criterion", "--family", "b3",
                       "--modulus", "5")
    assert code == EXIT_OK
    assert "witness: b_3(2) == 2 (mod 5)" in out
    assert "[primary regime]" in out


def test_criterion_no_witness(capsys):
    code, out, _ = run(capsys, "criterion", "--family", "b5",
                       "--modulus", "5", "--output", "json")
    assert code == EXIT_REFUTED
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("criterion_report"))
    assert payload["found"] is False and payload["witness"] is None
    assert payload["scan_bound"] == 48


def test_criterion_json_witness_schema(capsys):
    code, out, _ = run(capsys, "criterion", "--family", "b5",
                       "--modulus", "7", "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("criterion_report"))
    assert payload["witness"] == {"kprime": 0, "e": 5, "argument": 8,
                                  "regime": "primary"}


# -- lp ---------------------------------------------------------------------------

def test_lp_pass(capsys):
    code, out, _ = run(capsys, "lp", "13", "--count", "30")
    assert code == EXIT_OK
    assert "b3(2197n+14) == 0 mod 3" in out and "PASS" in out


def test_lp_json(capsys):
    code, out, _ = run(capsys, "lp", "13", "--count", "10",
                       "--output", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    jsonschema.validate(payload, load_schema("verify_report"))
    assert payload["p"] == 13


def test_lp_wrong_class(capsys):
    code, _, err = run(capsys, "lp", "17")
    assert code == EXIT_USAGE
    assert "(mod 12)" in err


def test_lp_composite(capsys):
    code, _, err = run(capsys, "lp", "14")
    assert code == EXIT_USAGE


# -- plumbing ----------------------------------------------------------------------

def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("REGCONG_OUTPUT", "json")
    code, out, _ = run(capsys, "eta", "eta(1)^24")
    assert code == EXIT_OK
    assert json.loads(out)["level"] == 1

    monkeypatch.setenv("REGCONG_MEMORY_CAP", "1000")
    code, _, _ = run(capsys, "bseries", "3", "--modulus", "5",
                     "--length", "1001")
    assert code == EXIT_RESOURCE

    monkeypatch.setenv("REGCONG_HUGE", "1")
    code, _, _ = run(capsys, "bseries", "3", "--modulus", "5",
                     "--length", "1001")
    assert code == EXIT_OK


def test_env_cache_dir(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("REGCONG_CACHE_DIR", str(tmp_path / "qs"))
    code, _, _ = run(capsys, "bseries", "3", "--modulus", "5",
                     "--length", "64")
    assert code == EXIT_OK
    assert list((tmp_path / "qs").glob("bk_k3_m5_L64.qs1"))


def test_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("REGCONG_OUTPUT", "json")
    code, out, _ = run(capsys, "criterion", "--family", "b3", "--modulus",
                       "5", "--output", "text")
    assert code == EXIT_OK
    assert out.startswith("witness:")


def test_progress_goes_to_stderr(capsys):
    # long builds report progress per slab on stderr; stdout stays clean
    code, out, err = run(capsys, "verify", "b3(1000000n+2) == 0 mod 5",
                         "--count", "5")
    assert code == EXIT_REFUTED
    assert "coefficients" in err
    assert "coefficients" not in out.replace("series length", "")


def test_argparse_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["certify", "--family", "b3", "61"])  # missing --modulus
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_subcommand_help_exits_zero(capsys):
    for cmd in ("eta", "bseries", "certify", "search", "verify",
                "criterion", "lp"):
        with pytest.raises(SystemExit) as exc:
            main([cmd, "--help"])
        assert exc.value.code == 0
        assert cmd in capsys.readouterr().out
