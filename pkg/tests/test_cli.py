import io
import json

import pytest

from higher_skein.algebra import parse_laurent
from higher_skein.cli import main
from higher_skein.diagram import DATA_DIR

LINKS = DATA_DIR / "links"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_eval_examples():
    assert run("eval", "--pd", str(LINKS / "trefoil.link"), "--invariant", "conway") == (0, "1 + h^2\n")
    assert run("eval", "--pd", str(LINKS / "unknot.link"), "--invariant", "p") == (0, "1 + O(u^12)\n")
    assert run("eval", "--pd", str(LINKS / "hopf_pos.link"), "--invariant", "p") == (0, "h + u + O(u^12)\n")


def test_eval_errors(tmp_path):
    bad = tmp_path / "bad.link"
    bad.write_text("x + 1>2\n")
    assert run("eval", "--pd", str(bad), "--invariant", "p")[0] == 2
    assert run("eval", "--pd", str(LINKS / "unknot.link"), "--invariant", "jones")[0] == 2
    assert run("eval", "--pd", str(tmp_path / "missing.link"), "--invariant", "p")[0] == 2


def test_series_output():
    code, out = run("series", "--order", "8")
    assert code == 0
    lines = out.splitlines()
    assert "alpha = -u - u^3 - u^5 - u^7 + O(u^8)" in lines
    assert "beta = u^2 + u^4 + u^6 + O(u^8)" in lines
    assert "gamma = -1 + O(u^8)" in lines


def test_table():
    code, out = run("table", "--pd", str(LINKS / "trefoil.link"), "--lmax", "2", "--mmax", "2")
    assert code == 0
    doc = json.loads(out)
    entries = {(e["l"], e["m"]): e["poly"] for e in doc["entries"]}
    assert doc["N"] == 12 and doc["link"] == "trefoil"
    assert entries[0, 0] == "1 + h^2" and entries[0, 1] == "2*h"
    # round trip: re-render every parsed entry
    for e in doc["entries"]:
        assert str(parse_laurent(e["poly"])) == e["poly"]
    assert json.dumps(doc, indent=2) + "\n" == out


def test_table_unknot():
    _, out = run("table", "--pd", str(LINKS / "unknot.link"), "--lmax", "2", "--mmax", "2")
    entries = {(e["l"], e["m"]): e["poly"] for e in json.loads(out)["entries"]}
    assert entries.pop((0, 0)) == "1"
    assert set(entries.values()) == {"0"}


def test_table_window():
    assert run("table", "--pd", str(LINKS / "trefoil.link"), "--lmax", "6", "--mmax", "6")[0] == 2


def test_resolve():
    code, out = run("resolve", "--pd", str(DATA_DIR / "G" / "G0_2.link"))
    assert code == 0 and len(out.splitlines()) == 9


@pytest.mark.parametrize("suite", ["series", "eightt"])
def test_verify(suite):
    code, out = run("verify", "--suite", suite)
    assert code == 0
    assert "FAIL" not in out


def test_verify_json_and_determinism():
    a = run("verify", "--suite", "skein", "--seed", "3", "--format", "json")
    b = run("verify", "--suite", "skein", "--seed", "3", "--format", "json")
    assert a == b and a[0] == 0
    assert all(item["passed"] for item in json.loads(a[1]))


def test_usage_errors():
    assert run()[0] == 2
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("verify", "--suite", "series", "--order", "3")[0] == 2


def test_verify_failure_exit(monkeypatch):
    import higher_skein.verify as v
    from higher_skein.report import CheckReport

    def broken(order=12, seed=0):
        r = CheckReport("broken")
        r.fail("boom")
        return [r]

    monkeypatch.setitem(v.SUITES, "eightt", broken)
    code, out = run("verify", "--suite", "eightt")
    assert code == 1 and "FAIL broken" in out
