import io
import json

import pytest

from stretchwidth.cli import run_command
from stretchwidth.corpus import write_corpus
from stretchwidth.formats import parse_graph, read_sequence
from stretchwidth.stretch import verify_sequence


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    write_corpus(d)
    return d


def test_path3_exact(corpus, tmp_path):
    seq_path = tmp_path / "p3.seq"
    code, rep, _ = run_json("stw", "exact", "--input", str(corpus / "p3.graph"), "--output", str(seq_path))
    assert code == 0
    assert rep["value"] == 0 and rep["identity_order_value"] == 1
    code, rep, _ = run_json("stw", "verify", "--input", str(corpus / "p3.graph"),
                            "--sequence", str(seq_path), "--claim", "0")
    assert code == 0 and rep["within_claim"]


def test_exact_witness_is_in_original_labels(corpus, tmp_path):
    seq_path = tmp_path / "c5.seq"
    run("stw", "exact", "--input", str(corpus / "c5.graph"), "--output", str(seq_path))
    sf = read_sequence(seq_path.read_text())
    G = parse_graph((corpus / "c5.graph").read_text())
    from stretchwidth.graph import relabel, relabel_sequence
    inv = [0] * G.n
    for pos, v in enumerate(sf.order):
        inv[v] = pos
    assert verify_sequence(relabel(G, sf.order), relabel_sequence(sf.seq, inv)).max_stretch == 2


def test_gen_a3_to_stdout():
    code, out, _ = run("gen", "a3", "--h", "2")
    G = parse_graph(out)
    assert code == 0 and (G.n, G.m) == (9, 6)


def test_approx_on_matrix(corpus):
    code, rep, _ = run_json("stw", "approx", "--input", str(corpus / "a3h3.matrix"), "--k", "9")
    assert code == 0 and rep["success"] and rep["verified_stretch"] <= rep["bound"]


def test_approx_refusal_exits_one(tmp_path):
    from stretchwidth.formats import emit_matrix
    from test_matrix import dense_random_matrix
    p = tmp_path / "dense.matrix"
    p.write_text(emit_matrix(dense_random_matrix(500, 0)))
    code, rep, _ = run_json("stw", "approx", "--input", str(p), "--k", "1")
    assert code == 1 and not rep["success"] and rep["wide_k"] == 9


def test_fixed_order_cap(corpus):
    code, rep, _ = run_json("stw", "fixed-order", "--input", str(corpus / "c5.graph"), "--cap", "1")
    assert code == 1 and rep["cap_exceeded"]
    code, rep, _ = run_json("stw", "fixed-order", "--input", str(corpus / "c5.graph"), "--cap", "2")
    assert code == 0 and rep["value"] == 2


@pytest.mark.parametrize("argv", [
    ["gen", "random", "--n", "10", "--d", "3"],              # missing seed
    ["stw", "exact", "--bogus"],                             # unknown flag
    ["nonsense"],
])
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == 2


def test_malformed_input_exits_two(tmp_path):
    p = tmp_path / "bad.graph"
    p.write_text("graph 2 1\n0 x\n")
    code, _, err = run("stw", "exact", "--input", str(p))
    assert code == 2 and "line 2" in err


def test_output_with_several_inputs(corpus, tmp_path):
    code, _, _ = run("stw", "exact", "--input", str(corpus / "p3.graph"), "--input", str(corpus / "c5.graph"),
                     "--output", str(tmp_path / "x"))
    assert code == 2


def test_random_is_seed_stable():
    a = run("gen", "random", "--n", "12", "--d", "3", "--seed", "5")[1]
    b = run("gen", "random", "--n", "12", "--d", "3", "--seed", "5")[1]
    assert a == b and a.startswith("graph 12")


def test_json_is_byte_stable(corpus):
    args = ("separator", "balanced", "--input", str(corpus / "fgrid3.graph"), "--format", "json")
    assert run(*args)[1] == run(*args)[1]


def test_batch_jobs(corpus):
    files = [str(corpus / f) for f in ("p3.graph", "c5.graph", "p6.graph")]
    argv = ["stw", "exact", "--format", "json"]
    for f in files:
        argv += ["--input", f]
    code1, out1, _ = run(*argv)
    code2, out2, _ = run(*argv, "--jobs", "2")
    assert code1 == code2 == 0 and out1 == out2
    reps = json.loads(out1)
    assert [r["report"]["value"] for r in reps] == [0, 2, 1]


def test_stdin_input(corpus, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO((corpus / "p3.graph").read_text()))
    code, rep, _ = run_json("mis", "exact", "--input", "-")
    assert code == 0 and rep["size"] == 2


def test_certificate_round_trips(corpus, tmp_path):
    g = str(corpus / "fgrid3.graph")
    for cmd, extra in [(["separator", "balanced"], []), (["separator", "treedecomp"], []),
                       (["separator", "left-right"], ["--vertex", "5"])]:
        cert = tmp_path / "cert.json"
        assert run(*cmd, "--input", g, "--output", str(cert), *extra)[0] == 0
        assert run("separator", "verify", "--input", g, "--certificate", str(cert))[0] == 0
    mis = tmp_path / "mis.json"
    assert run("mis", "branch", "--input", g, "--output", str(mis))[0] == 0
    assert run("mis", "verify", "--input", g, "--certificate", str(mis))[0] == 0


def test_tampered_certificate_fails(corpus, tmp_path):
    g = str(corpus / "c40.graph")
    cert = tmp_path / "sep.json"
    run("separator", "balanced", "--input", g, "--output", str(cert))
    d = json.loads(cert.read_text())
    d["C"] = []
    d["A"] = [v for v in d["A"] if v not in d["B"]]
    cert.write_text(json.dumps(d))
    assert run("separator", "verify", "--input", g, "--certificate", str(cert))[0] != 0
