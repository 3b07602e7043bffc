from pathlib import Path

import pytest

from altindex.cli import main

GOLDEN = Path(__file__).parent / "golden"
PUBS = GOLDEN / "input" / "publications.csv"
SCHOLARS = GOLDEN / "input" / "scholars.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_prints_summary_and_writes_outputs(tmp_path, capsys):
    code, out, err = run(capsys, "analyze", "--publications", str(PUBS), "--scholars", str(SCHOLARS),
                         "--out", str(tmp_path))
    assert code == 0
    assert "social_excess_pct=105.2\n" in out
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {"summary.csv", "indices.csv", "trends.csv", "breakdown.csv", "correlations_scholar.csv",
                     "correlations_paper.csv", "trend.svg", "breakdown.svg", "indices.svg", "legend.csv"}


def test_analyze_json_format(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", "--publications", str(PUBS), "--scholars", str(SCHOLARS),
                     "--out", str(tmp_path), "--format", "json")
    assert code == 0
    assert (tmp_path / "correlations_paper.json").exists()


def test_analyze_twice_is_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("a", "b"):
        code, out, _ = run(capsys, "analyze", "--publications", str(PUBS), "--scholars", str(SCHOLARS),
                           "--out", str(tmp_path / name))
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_analyze_empty_fixture(tmp_path, capsys):
    pubs = tmp_path / "p.csv"
    sch = tmp_path / "s.csv"
    pubs.write_text("pub_id,scholar_id,year,scholarly_citations\n")
    sch.write_text("scholar_id,display_name\n")
    code, out, _ = run(capsys, "analyze", "--publications", str(pubs), "--scholars", str(sch),
                       "--out", str(tmp_path / "out"))
    assert code == 0
    assert "publications=0\n" in out and "social_citations=0.0\n" in out and "social_excess_pct=0.0\n" in out


def test_analyze_missing_file(tmp_path, capsys):
    missing = tmp_path / "absent.csv"
    code, out, err = run(capsys, "analyze", "--publications", str(missing), "--scholars", str(SCHOLARS),
                         "--out", str(tmp_path / "o"))
    assert code == 1
    assert out == ""
    assert err.count("\n") == 1 and str(missing) in err and err.startswith("altindex: error: data:")


def test_analyze_with_weight_override(tmp_path, capsys):
    weights = tmp_path / "w.txt"
    weights.write_text("twitter_retweet = 0.5\nfacebook_share = 0.5\n")
    code, out, _ = run(capsys, "analyze", "--publications", str(PUBS), "--scholars", str(SCHOLARS),
                       "--out", str(tmp_path / "o"), "--weights", str(weights))
    assert code == 0
    # fixture has 7 retweets and 4 shares: 59.5 + 11 * 0.5
    assert "social_citations=65.0\n" in out


def test_bad_weight_file_is_data_error(tmp_path, capsys):
    weights = tmp_path / "w.txt"
    weights.write_text("retweets = 1\n")
    code, _, err = run(capsys, "analyze", "--publications", str(PUBS), "--scholars", str(SCHOLARS),
                       "--out", str(tmp_path / "o"), "--weights", str(weights))
    assert code == 1 and "unknown indicator 'retweets'" in err


@pytest.mark.parametrize("argv", [
    [],
    ["analyze", "--publications", "p.csv"],
    ["analyze", "--publications", "p", "--scholars", "s", "--out", "o", "--format", "xml"],
    ["analyze", "--publications", "p", "--scholars", "s", "--out", "o", "--from-year", "2015", "--to-year", "2010"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", "--publications", str(PUBS), "--scholars", str(SCHOLARS))
    assert code == 0 and out == ""


def test_validate_reports_violations(tmp_path, capsys):
    pubs = tmp_path / "p.csv"
    pubs.write_text("pub_id,scholar_id,year,scholarly_citations\nP7,S1,2012,1\nP7,S2,2012,1\nP8,S99,2013,0\n")
    code, out, _ = run(capsys, "validate", "--publications", str(pubs), "--scholars", str(SCHOLARS))
    assert code == 1
    lines = out.splitlines()
    assert len(lines) == 2
    assert any("P7" in line for line in lines) and any("S99" in line for line in lines)


def test_import_identity_then_analyze(tmp_path, capsys):
    mapping = tmp_path / "map.txt"
    cols = PUBS.read_text().splitlines()[0].split(",") + ["display_name", "missing_variables"]
    mapping.write_text("".join(f"{c} = {c}\n" for c in cols))
    code, _, _ = run(capsys, "import", "--upstream", str(PUBS), "--upstream-scholars", str(SCHOLARS),
                     "--mapping", str(mapping), "--out", str(tmp_path / "canon"))
    assert code == 0
    assert (tmp_path / "canon" / "publications.csv").read_bytes() == PUBS.read_bytes()
    assert (tmp_path / "canon" / "scholars.csv").read_bytes() == SCHOLARS.read_bytes()


def test_import_bad_mapping(tmp_path, capsys):
    up = tmp_path / "up.csv"
    up.write_text("id,author,yr,cites\nx,a,2012,1\n")
    mapping = tmp_path / "map.txt"
    mapping.write_text("pub_id = id\nscholar_id = author\nyear = yr\nscholarly_citations = cites\n"
                       "twitter_retweet = retweetz\n")
    code, _, err = run(capsys, "import", "--upstream", str(up), "--mapping", str(mapping), "--out", str(tmp_path / "o"))
    assert code == 1 and "retweetz" in err


def test_module_entry_point(tmp_path):
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "altindex", "validate", "--publications", str(PUBS),
                          "--scholars", str(SCHOLARS)], capture_output=True, text=True)
    assert res.returncode == 0
