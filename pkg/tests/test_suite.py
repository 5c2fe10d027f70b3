import csv
import io
import json

import pytest

from starplane.suite import (ENTRIES, bf_comm, bruteforce_nf, exit_code, run_suite, summary,
                             to_csv, to_json)
from starplane.weyl import NCPoly, Z, ZB, commutator


@pytest.fixture(scope="module")
def results():
    return run_suite("")


def test_entry_count(results):
    assert len(results) >= 60
    assert len({r.id for r in results}) == len(results)


def test_no_failures(results):
    assert exit_code(results) == 0
    assert not [r.id for r in results if r.status == "fail"]


def test_errata_set(results):
    errata = sorted(r.id for r in results if r.status == "paper-erratum")
    assert errata == sorted(["eq30.2", "eq53.3", "eq53.4", "eq56.3", "eq59.8", "eq61.2", "eq67.3",
                             "eq75.2", "eq76.2", "eq130.2", "eq140.4", "eq140.5"])


def test_errata_carry_oracle(results):
    for r in results:
        if r.status == "paper-erratum":
            assert r.oracle
            assert r.engine != r.paper


def test_eq59_erratum_values(results):
    row = next(r for r in results if r.id == "eq59.8")
    assert "72" in row.engine and "88" in row.paper


def test_csv_deterministic(results):
    text = to_csv(results)
    assert text == to_csv(run_suite(""))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0]) == ["id", "group", "status", "engine", "paper", "difference", "oracle"]


def test_json_roundtrip(results):
    data = json.loads(to_json(results[:5]))
    assert len(data["results"]) == 5
    assert data["summary"]["total"] == 5


def test_filter():
    assert len(run_suite("virasoro")) == 17
    assert run_suite("zzz-none") == []


def test_summary_counts(results):
    s = summary(results)
    assert s["total"] == len(results)
    assert s["pass"] + s["paper-erratum"] + s["fail"] == s["total"]


def test_entries_have_groups():
    assert all(e.group for e in ENTRIES)


@pytest.mark.parametrize("l,m", [(1, 1), (2, 3), (3, 3)])
def test_bruteforce_oracle(l, m):
    assert bf_comm(l, m) == commutator(NCPoly.word((Z,) * l), NCPoly.word((ZB,) * m))


def test_bruteforce_nf_handles_sums():
    got = bruteforce_nf({("bz", 0): 1, ("zb", 0): -1})
    assert got == NCPoly.word((), -2, 1)
