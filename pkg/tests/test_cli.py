import json

import pytest

from cdx import cli
from cdx.ncpoly import NcPoly


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_compute_builtin_hypersimplex(capsys):
    rc, out, _ = run(capsys, "compute", "--builtin", "hypersimplex", "--k", "2", "--n", "5")
    assert rc == 0
    assert out.strip() == "cccc + 8*ccd + 20*cdc + 8*dcc + 14*dd"


def test_compute_fano_f_vector(capsys):
    rc, out, _ = run(capsys, "compute", "--builtin", "fano", "--f-vector")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[1].startswith("f-vector: 28 ")


def test_compute_json_format(capsys):
    rc, out, _ = run(capsys, "compute", "--builtin", "uniform", "--k", "2", "--n", "4",
                     "--format", "json", "--flag-f")
    assert rc == 0
    obj = json.loads(out)
    assert obj["cd"] == {"ccc": "1", "cd": "6", "dc": "4"}
    assert obj["flag_f"]["0,1"] == "24"


def test_compute_file_square(capsys, tmp_path):
    p = tmp_path / "square.json"
    p.write_text(json.dumps(
        {"n": 4, "rank": 2, "bases": [[1, 3], [1, 4], [2, 3], [2, 4]]}
    ))
    rc, out, _ = run(capsys, "compute", "--file", str(p))
    assert rc == 0
    assert out.strip() == "cc + 2*d"


def test_compute_file_cyclic_flats(capsys, tmp_path):
    p = tmp_path / "m535.json"
    p.write_text(json.dumps({
        "n": 5, "rank": 3,
        "cyclic_flats": [{"set": [1, 2, 3], "rank": 2}, {"set": [1, 4, 5], "rank": 2}],
    }))
    rc, out, _ = run(capsys, "compute", "--file", str(p))
    assert rc == 0
    assert out.strip() == "cccc + 5*ccd + 10*cdc + 6*dcc + 10*dd"


def test_exit_code_not_a_matroid(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 4, "rank": 2, "bases": [[1, 2], [3, 4]]}))
    rc, _, err = run(capsys, "compute", "--file", str(p))
    assert rc == 2
    assert "NOT_A_MATROID" in err


def test_exit_code_presentation_mismatch(capsys, tmp_path):
    p = tmp_path / "mismatch.json"
    p.write_text(json.dumps({
        "n": 4, "rank": 2, "cyclic_flats": [{"set": [1, 2, 3], "rank": 2}],
    }))
    rc, _, err = run(capsys, "compute", "--file", str(p))
    assert rc == 2
    assert "PRESENTATION_MISMATCH" in err


def test_exit_code_unsupported_and_fallback(capsys, tmp_path):
    p = tmp_path / "nested.json"
    p.write_text(json.dumps({
        "n": 6, "rank": 3,
        "cyclic_flats": [{"set": [1, 2], "rank": 1},
                         {"set": [1, 2, 3, 4], "rank": 2}],
    }))
    rc, _, err = run(capsys, "compute", "--file", str(p))
    assert rc == 3
    assert "UNSUPPORTED_MATROID" in err
    rc, out, _ = run(capsys, "compute", "--file", str(p), "--oracle-fallback")
    assert rc == 0
    assert NcPoly.from_text(out.strip()).degree() == 5


def test_exit_code_scale(capsys):
    rc, _, err = run(capsys, "compute", "--builtin", "uniform",
                     "--k", "2", "--n", "6", "--max-n", "5")
    assert rc == 4
    assert "SCALE_EXCEEDED" in err


def test_verify_small(capsys):
    rc, out, _ = run(capsys, "verify", "--max-n", "4")
    assert rc == 0
    assert "0 failed" in out
    assert "PASS hypersimplex-1-2" in out


def test_verify_only_filter(capsys):
    rc, out, _ = run(capsys, "verify", "--max-n", "5", "--only", "cuspidal")
    assert rc == 0
    lines = [l for l in out.splitlines() if l.startswith("PASS")]
    assert lines
    assert all("cuspidal-" in l for l in lines)


def test_verify_paper_values(capsys):
    rc, out, _ = run(capsys, "verify", "--only", "paper-values")
    assert rc == 0
    assert "PASS fano" in out
    assert "PASS example-m1" in out


def test_verify_rejects_big_max_n(capsys):
    rc, _, err = run(capsys, "verify", "--max-n", "9")
    assert rc == 2


def test_verify_threads_deterministic(capsys):
    rc1, out1, _ = run(capsys, "verify", "--max-n", "5")
    rc2, out2, _ = run(capsys, "verify", "--max-n", "5", "--threads", "4")
    assert (rc1, out1) == (rc2, out2)


def test_cache_roundtrip_and_transparency(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    rc, cold, _ = run(capsys, "compute", "--builtin", "fano", "--cache", str(cache))
    assert rc == 0 and cache.exists()
    n_records = len(cache.read_text().splitlines())
    assert n_records > 0
    rc, warm, _ = run(capsys, "compute", "--builtin", "fano", "--cache", str(cache))
    assert rc == 0
    assert cold == warm
    # warm run added nothing
    assert len(cache.read_text().splitlines()) == n_records
    rc, out, _ = run(capsys, "verify", "--cache", str(cache), "--cache-verify")
    assert rc == 0
    assert "records OK" in out


def test_cache_tamper_detected(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    run(capsys, "compute", "--builtin", "example-535", "--cache", str(cache))
    lines = cache.read_text().splitlines()
    rec = json.loads(lines[0])
    word = next(iter(rec["cd"]))
    rec["cd"][word] = str(int(rec["cd"][word]) + 7)
    lines[0] = json.dumps(rec)
    cache.write_text("\n".join(lines) + "\n")
    rc, out, _ = run(capsys, "verify", "--cache", str(cache), "--cache-verify")
    assert rc == 1
    assert "FAIL cache" in out


def test_cache_version_mismatch(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    cache.write_text(json.dumps(
        {"v": 99, "kind": "hypersimplex", "key": [1, 3], "cd": {"cc": "1", "d": "1"}}
    ) + "\n")
    rc, _, err = run(capsys, "compute", "--builtin", "fano", "--cache", str(cache))
    assert rc == 1
    assert "CACHE_VERSION_MISMATCH" in err


def test_cache_corrupt_tail_tolerated(capsys, tmp_path):
    cache = tmp_path / "cache.jsonl"
    run(capsys, "compute", "--builtin", "example-535", "--cache", str(cache))
    with cache.open("a") as fh:
        fh.write("{this is not json\n")
    rc, out, err = run(capsys, "compute", "--builtin", "example-535", "--cache", str(cache))
    assert rc == 0
    assert "corrupt" in err


def test_unknown_builtin(capsys):
    rc, _, err = run(capsys, "compute", "--builtin", "petersen")
    assert rc == 2
    assert "unknown builtin" in err


def test_builtin_missing_params(capsys):
    rc, _, err = run(capsys, "compute", "--builtin", "cuspidal", "--k", "2", "--n", "5")
    assert rc == 2
