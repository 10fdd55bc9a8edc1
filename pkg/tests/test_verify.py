import json

import pytest

from kloosterkit.kloosterman import ResourceError, ksum_all
from kloosterkit.gf2n import FieldCtx
from kloosterkit.verify import THEOREMS, classification_rows, run_verify, run_zeros


def test_unknown_theorem():
    with pytest.raises(ValueError):
        run_verify("mod7")


def test_below_validity_is_informational():
    report = run_verify("mod8", 2, 3)
    low, ok = report.degrees
    assert low.informational and low.mismatch_count > 0
    assert not ok.informational and ok.mismatch_count == 0
    assert report.passed


def test_odd_only_skips_even():
    report = run_verify("mod48", 5, 6)
    assert [d.n for d in report.degrees] == [5]
    assert "n=6" in report.adjudications


def test_ternary9_n1_informational():
    report = run_verify("ternary9", 1, 2)
    assert report.degrees[0].informational
    assert report.degrees[0].mismatch_count > 0


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_default_ranges_pass(theorem):
    lo, _ = THEOREMS[theorem][2]
    report = run_verify(theorem, lo, lo + 2)
    assert report.passed


def test_report_json_deterministic():
    a = run_verify("mod16", 4, 6).to_json()
    b = run_verify("mod16", 4, 6).to_json()
    assert a == b
    data = json.loads(a)
    assert data["passed"] is True
    assert data["degrees"][0]["field_poly"] == "0x13"


def test_mismatch_list_capped():
    report = run_verify("mod16", 2, 3)
    for d in report.degrees:
        assert len(d.mismatches) <= 50


@pytest.mark.parametrize("n", range(2, 15))
def test_zeros_sieve_sound(fields, n):
    K = ksum_all(fields(n)).values
    assert run_zeros(n) == [int(a) for a in range(1 << n) if K[a] == 0]


def test_zeros_examples():
    # frozen from the brute-force oracle
    assert run_zeros(4) == [0, 1, 2, 3, 4, 5]
    assert run_zeros(5) == [0, 2, 4, 13, 16, 27]
    with pytest.raises(ResourceError):
        run_zeros(25)


def test_classification_rows_n7():
    rows = list(classification_rows(FieldCtx(7)))
    assert len(rows) == 128
    assert rows[0]["match_flags"] == "YY-Y-"
    for r in rows[1:]:
        assert set(r["match_flags"]) == {"Y"}
