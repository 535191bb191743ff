import json
import subprocess
import sys

import pytest

from cfpq.cli import BENCH_HEADER, main, selftest
from cfpq.example import data_text


@pytest.fixture
def files(tmp_path):
    (tmp_path / "g.txt").write_text(data_text("example_graph.txt"))
    (tmp_path / "q1.txt").write_text(data_text("query1.txt"))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_query_relational_tsv(files, capsys):
    code, out, _ = run(capsys, "query", "--graph", files / "g.txt", "--grammar", files / "q1.txt", "--start", "S")
    assert code == 0
    assert out == "0\t0\n0\t2\n1\t2\n"


def test_query_single_path_tsv(files, capsys):
    code, out, _ = run(capsys, "query", "--graph", files / "g.txt", "--grammar", files / "q1.txt", "--start", "S",
                       "--semantics", "single-path")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert "1\t2\t2\ttype_r,type" in lines


def test_json_and_tsv_agree(files, capsys):
    base = ["query", "--graph", files / "g.txt", "--grammar", files / "q1.txt", "--start", "S"]
    _, tsv, _ = run(capsys, *base)
    _, js, _ = run(capsys, *base, "--json")
    pairs = {tuple(p) for p in json.loads(js)["pairs"]}
    assert pairs == {tuple(line.split("\t")) for line in tsv.splitlines()}


def test_output_is_deterministic(files, capsys):
    base = ["query", "--graph", files / "g.txt", "--grammar", files / "q1.txt", "--start", "S",
            "--semantics", "single-path", "--json"]
    assert run(capsys, *base)[1] == run(capsys, *base)[1]


def test_output_file_and_names(tmp_path, capsys):
    (tmp_path / "g.txt").write_text("x type_r y\ny type z\n")
    (tmp_path / "q1.txt").write_text(data_text("query1.txt"))
    out_file = tmp_path / "out.tsv"
    code, out, _ = run(capsys, "query", "--graph", tmp_path / "g.txt", "--grammar", tmp_path / "q1.txt",
                       "--start", "S", "--output", out_file)
    assert code == 0 and out == ""
    assert out_file.read_text() == "x\tz\n"


def test_query_triples(tmp_path, capsys):
    (tmp_path / "t.nt").write_text("<c2> <subClassOf> <c1> .\n<c3> <subClassOf> <c2> .\n")
    (tmp_path / "q2.txt").write_text(data_text("query2.txt"))
    code, out, _ = run(capsys, "query", "--triples", tmp_path / "t.nt", "--add-inverses",
                       "--grammar", tmp_path / "q2.txt", "--start", "S")
    assert code == 0
    assert out == "c2\tc1\nc3\tc2\n"


def test_missing_grammar_file(files, capsys):
    code, _, err = run(capsys, "query", "--graph", files / "g.txt", "--grammar", files / "nope.txt", "--start", "S")
    assert code == 1 and "cannot read" in err


def test_bad_grammar_file(files, capsys):
    (files / "bad.txt").write_text("S -> \n")
    code, _, err = run(capsys, "query", "--graph", files / "g.txt", "--grammar", files / "bad.txt", "--start", "S")
    assert code == 1 and "empty right-hand side" in err


def test_unknown_start(files, capsys):
    code, _, err = run(capsys, "query", "--graph", files / "g.txt", "--grammar", files / "q1.txt", "--start", "Q")
    assert code == 2 and "Q" in err


def test_bench_empty_dir(tmp_path, capsys):
    (tmp_path / "q1.txt").write_text(data_text("query1.txt"))
    (tmp_path / "d").mkdir()
    code, out, _ = run(capsys, "bench", "--triples-dir", tmp_path / "d", "--grammar", tmp_path / "q1.txt",
                       "--start", "S", "--repeat", "1")
    assert code == 0
    assert out == ",".join(BENCH_HEADER) + "\n"


def test_bench_rows_and_duplicate_note(tmp_path, capsys):
    (tmp_path / "q1.txt").write_text(data_text("query1.txt"))
    d = tmp_path / "d"
    d.mkdir()
    # paths must start with type_r, which only leaves c: the one pair is (c, c) via a or b
    (d / "tiny.txt").write_text("a type c\nb type c\nb type c\n")
    code, out, err = run(capsys, "bench", "--triples-dir", d, "--grammar", tmp_path / "q1.txt", "--repeat", "2")
    assert code == 0
    header, row = out.splitlines()
    name, nodes, edges, results, ms = row.split(",")
    assert (name, nodes, edges, results) == ("tiny", "3", "4", "1")
    assert float(ms) >= 0
    assert "1 repeated triple" in err


def test_bench_missing_dir(tmp_path, capsys):
    (tmp_path / "q1.txt").write_text(data_text("query1.txt"))
    code, _, _ = run(capsys, "bench", "--triples-dir", tmp_path / "none", "--grammar", tmp_path / "q1.txt")
    assert code == 1


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "FAIL" not in out
    assert "fixpoint at iteration 6" in out


def test_selftest_corrupted_fails(capsys):
    code, out, _ = run(capsys, "selftest", "--corrupt")
    assert code == 1
    assert "FAIL  iteration state T3" in out


def test_selftest_verbose_first_iteration(capsys):
    assert selftest(verbose=True)
    out = capsys.readouterr().out
    block = out.split("T1:\n", 1)[1].split("T2:", 1)[0]
    assert "new: (1,2) {S}\n" in block


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cfpq", "selftest"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.rstrip().endswith("selftest (9/9 checks)")
