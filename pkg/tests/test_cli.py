import json
import subprocess
import sys

import pytest

from kecolor.bench import RunConfig, generate_events, generate_stream, replay, verify
from kecolor.cli import main
from kecolor.graph import DELETE, INSERT, parse_stream


@pytest.fixture
def tri_stream(tmp_path):
    p = tmp_path / "c3.txt"
    p.write_text("H 3 2\n+ 0 1\n+ 1 2\n+ 0 2\n")
    return str(p)


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_run_greedy_triangle_oracle(tri_stream, capsys):
    assert main(["run", "--algo", "greedy", "--k", "2", "--oracle", "--stream", tri_stream, "--metrics", "-"]) == 0
    recs = records(capsys.readouterr().out)
    assert len(recs) == 3
    assert [r["step"] for r in recs] == [1, 2, 3]
    last = recs[-1]
    assert last["colored"] == 2 and last["oracle_p_star"] == 2 and last["ratio"] == 1
    assert set(last) == {
        "step", "op", "colored", "recolored", "matcher_size", "sparsifier_size",
        "oracle_p_star", "ratio", "elapsed_ns",
    }


def test_run_empty_stream(tmp_path, capsys):
    s = tmp_path / "empty.txt"
    s.write_text("H 4 1\n")
    out = tmp_path / "m.jsonl"
    assert main(["run", "--algo", "matcho", "--k", "1", "--stream", str(s), "--metrics", str(out)]) == 0
    assert out.read_text() == ""


def test_run_matcha_eps_out_of_range(tri_stream, capsys):
    assert main(["run", "--algo", "matcha", "--k", "2", "--epsilon", "0.6", "--stream", tri_stream]) == 2
    assert "epsilon" in capsys.readouterr().err


def test_run_parse_error_reports_line(tmp_path, capsys):
    s = tmp_path / "bad.txt"
    s.write_text("H 2 1\n+ 0 1\n+ 0 0\n")
    assert main(["run", "--algo", "greedy", "--k", "1", "--stream", str(s)]) == 2
    assert "3" in capsys.readouterr().err


def test_run_matcha_records(tri_stream, capsys):
    assert main(["run", "--algo", "matcha", "--k", "1", "--stream", tri_stream, "--no-timing"]) == 0
    recs = records(capsys.readouterr().out)
    assert all(r["elapsed_ns"] == 0 for r in recs)
    assert any(r["recolored"] and r["sparsifier_size"] is not None for r in recs)


def test_oracle_oversize_warns_and_continues(tmp_path, capsys, caplog):
    s = tmp_path / "big.txt"
    s.write_text(generate_stream(12, 30, 0.0, 4, k=2))
    assert main(["run", "--algo", "greedy", "--k", "2", "--oracle", "--stream", str(s)]) == 0
    recs = records(capsys.readouterr().out)
    assert recs[-1]["oracle_p_star"] is None and recs[-1]["ratio"] is None
    assert recs[0]["oracle_p_star"] is not None
    assert "oracle skipped" in caplog.text


def test_gen_header_only(capsys):
    assert main(["gen", "--n", "5", "--steps", "0", "--p-delete", "0.5", "--seed", "1"]) == 0
    assert capsys.readouterr().out.strip() == "H 5 1"


def test_gen_inserts_only():
    n, _, events = parse_stream(generate_stream(10, 40, 0.0, 3))
    assert all(ev.kind == INSERT for ev in events) and len(events) == 40


def test_gen_deterministic(capsys):
    argv = ["gen", "--n", "30", "--steps", "200", "--p-delete", "0.4", "--seed", "9"]
    main(argv)
    a = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == a


def test_gen_valid_events():
    for bip in (False, True):
        events = generate_events(9, 800, 0.3, 5, bipartite=bip)
        present = set()
        for ev in events:
            if ev.kind == INSERT:
                assert ev.edge not in present
                present.add(ev.edge)
            else:
                assert ev.edge in present
                present.discard(ev.edge)
            if bip:
                assert ev.edge[0] < 4 <= ev.edge[1]


def test_gen_max_edges():
    present = set()
    for ev in generate_events(10, 300, 0.1, 2, max_edges=6):
        (present.add if ev.kind == INSERT else present.discard)(ev.edge)
        assert len(present) <= 6


def test_gen_rejects_bad_probability(capsys):
    assert main(["gen", "--n", "5", "--steps", "3", "--p-delete", "1.5", "--seed", "1"]) == 2


@pytest.mark.parametrize("algo", ["greedy", "matcho", "matcha", "matcho-bip", "matcha-bip"])
def test_verify_generated(tmp_path, algo):
    s = tmp_path / "s.txt"
    s.write_text(generate_stream(24, 600, 0.4, 8, bipartite=algo.endswith("bip")))
    assert main(["verify", "--algo", algo, "--k", "2", "--stream", str(s)]) == 0


@pytest.mark.parametrize("cmd", ["run", "verify"])
@pytest.mark.parametrize("algo", ["matcho-bip", "matcha-bip"])
def test_bip_variant_rejects_odd_cycle(tri_stream, capsys, cmd, algo):
    assert main([cmd, "--algo", algo, "--k", "2", "--stream", tri_stream]) == 2
    assert "bipartite" in capsys.readouterr().err


def test_verify_matcha_three_seeds(tmp_path):
    s = tmp_path / "s.txt"
    s.write_text(generate_stream(40, 2000, 0.4, 21))
    for seed in range(3):
        assert main(["verify", "--algo", "matcha", "--k", "2", "--seed", str(seed), "--stream", str(s)]) == 0


def test_verify_detects_corruption(tmp_path, capsys):
    s = tmp_path / "s.txt"
    s.write_text(generate_stream(10, 100, 0.3, 1))
    rc = main(["verify", "--algo", "greedy", "--k", "2", "--stream", str(s), "--corrupt-at", "40"])
    assert rc == 1
    assert "step 40" in capsys.readouterr().err


def test_metrics_byte_identical(tmp_path):
    s = tmp_path / "s.txt"
    s.write_text(generate_stream(20, 300, 0.4, 2))
    outs = []
    for i in range(2):
        m = tmp_path / f"m{i}.jsonl"
        main(["run", "--algo", "matcha", "--k", "2", "--seed", "5", "--stream", str(s), "--metrics", str(m), "--no-timing"])
        outs.append(m.read_bytes())
    assert outs[0] == outs[1] and outs[0]


def test_oracle_command(tri_stream, capsys):
    assert main(["oracle", "--stream", tri_stream, "--k", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert (out["p_star"], out["s_star"], out["frac_opt"]) == (2, 3, "3")


def test_oracle_refuses_large(tmp_path, capsys):
    s = tmp_path / "big.txt"
    s.write_text(generate_stream(12, 30, 0.0, 4, k=2))
    assert main(["oracle", "--stream", str(s)]) == 1


def test_module_entry_point(tri_stream):
    res = subprocess.run(
        [sys.executable, "-m", "kecolor", "verify", "--algo", "greedy", "--k", "2", "--stream", tri_stream],
        capture_output=True, text=True, env={"KEC_LOG": "INFO", "PATH": ""},
    )
    assert res.returncode == 0
    assert "verified 3 steps" in res.stderr


def test_replay_api():
    events = generate_events(15, 200, 0.4, 3)
    alg = replay(RunConfig(algo="matcho", k=2), 15, events, check=True)
    assert alg.graph.m == sum(1 if ev.kind == INSERT else -1 for ev in events)
    ok, msg = verify(RunConfig(algo="greedy", k=1), 15, events)
    assert ok and msg == "ok"
