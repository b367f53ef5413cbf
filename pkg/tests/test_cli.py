"""CLI behaviours: output formats, exit codes, round trips."""
from __future__ import annotations

import json

from latmax import cli
from latmax.report import CheckReport

PAPER_ARGS = ["cg-complements", "--perm", "3 6 7 10 1 8 9 5 2 4"]

PAPER_LINES = [
    "{(2)}\t(2)={1,2}",
    "{(4)}\t(4)={1,2,3,4}",
    "[(5),C1(5)]\t(5)={1,3,5}\tC1(5)={1,2,3,4,5}",
    "[(5),C2(5)]\t(5)={1,3,5}\tC2(5)={1,3,5,6,7,8,9,10}",
    "[(6),C1(6)]\t(6)={3,6}\tC1(6)={1,2,3,4,5,6}",
    "[(8),C1(8)] u [(8),C2(8)]\t(8)={1,3,6,7,8}\tC1(8)={1,2,3,4,5,6,7,8}\tC2(8)={1,3,6,7,8,10}",
    "[(9),C1(9)]\t(9)={1,3,6,7,8,9}\tC1(9)={1,2,3,4,5,6,7,8,9}",
    "[(9),C2(9)]\t(9)={1,3,6,7,8,9}\tC2(9)={1,3,6,7,8,9,10}",
    "{(10)}\t(10)={3,6,7,10}",
]


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_paper_example_text_output(capsys):
    rc, out, _ = run_cli(capsys, *PAPER_ARGS)
    assert rc == 0
    assert out.splitlines() == PAPER_LINES


def test_paper_example_with_verify(capsys):
    rc, out, _ = run_cli(capsys, *PAPER_ARGS, "--verify", "--oracle-bound", "64")
    assert rc == 0
    assert "verified against oracle: 9 complements agree" in out


def test_two_element_example(capsys):
    rc, out, _ = run_cli(capsys, "cg-complements", "--perm", "2 1")
    assert rc == 0
    assert out.splitlines() == ["{(1)}\t(1)={1}", "{(2)}\t(2)={2}"]


def test_json_output_parses(capsys):
    rc, out, _ = run_cli(capsys, *PAPER_ARGS, "--json")
    assert rc == 0
    rows = json.loads(out)
    assert len(rows) == 9
    assert rows[4] == {
        "j": 6,
        "shape": "IntervalChain1",
        "class": "Type2",
        "intervals": [[[3, 6], [1, 2, 3, 4, 5, 6]]],
    }


def test_parse_error_exit_code(capsys):
    rc, _, err = run_cli(capsys, "cg-complements", "--perm", "1 2 2")
    assert rc == 2 and "parse error" in err
    rc, _, err = run_cli(capsys, "cg-complements", "--perm", "banana")
    assert rc == 2


def test_geometry_file_input(tmp_path, capsys):
    p = tmp_path / "geom.txt"
    p.write_text("4 2\n1 2 3 4\n2 1 4 3\n")
    rc, out, _ = run_cli(capsys, "cg-complements", "--file", str(p), "--verify")
    assert rc == 0
    assert "verified" in out


def test_lattice_file_oracle(tmp_path, capsys):
    p = tmp_path / "lat.txt"
    p.write_text("4\n0 1\n0 2\n1 3\n2 3\n")
    rc, out, _ = run_cli(capsys, "oracle", "--file", str(p))
    assert rc == 0
    assert "# 2 complements" in out
    assert "# frattini sublattice" in out


def test_oracle_json_on_perm(capsys):
    rc, out, _ = run_cli(capsys, "oracle", "--perm", "2 1 3", "--json")
    assert rc == 0
    data = json.loads(out)
    assert data["complements"] == [["{1}"], ["{2}"]]
    assert data["frattini"] == ["{}", "{1,2}", "{1,2,3}"]


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    # Sabotage the fast path to force a disagreement with the oracle.
    import latmax.cli as cli_mod

    real = cli_mod.fast_complements

    def truncated(m, phi):
        comps, ops = real(m, phi)
        return comps[:-1], ops

    monkeypatch.setattr(cli_mod, "fast_complements", truncated)
    rc, _, err = run_cli(capsys, "cg-complements", "--perm", "2 1 3 4", "--verify")
    assert rc == 3
    assert "VERIFY MISMATCH" in err


def test_check_command_all_small(capsys):
    rc, out, _ = run_cli(capsys, "check", "hyp3", "--max-m", "4")
    assert rc == 0
    rep = CheckReport.from_json(out.strip().splitlines()[-1])
    assert rep.holds


def test_check_unknown_claim(capsys):
    rc, _, err = run_cli(capsys, "check", "nonsense")
    assert rc == 2 and "unknown claim" in err


def test_check_counterexample_exit_code(capsys, tmp_path, monkeypatch):
    import latmax.cli as cli_mod

    cli_mod._register_checks()

    def failing(corpus, label="x"):
        return CheckReport("stub", label, 1, "CounterexampleFound", {"claim": "stub"})

    monkeypatch.setitem(cli_mod.CHECKS, "hyp3", (failing, cli_mod.CHECKS["hyp3"][1]))
    out_file = tmp_path / "witness.json"
    rc, out, err = run_cli(
        capsys, "check", "hyp3", "--max-m", "2", "--out", str(out_file)
    )
    assert rc == 4
    assert out_file.exists()
    assert CheckReport.from_json(out_file.read_text()).status == "CounterexampleFound"


def test_bench_rows_and_assertion(capsys):
    rc, out, _ = run_cli(capsys, "bench", "--sizes", "10,100", "--seed", "1")
    assert rc == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("m=")]
    assert len(lines) == 2
    assert "linearity ok" in out


def test_dot_output_for_geometry(capsys):
    rc, out, _ = run_cli(capsys, "dot", "--perm", "2 1 3")
    assert rc == 0
    assert out.startswith("digraph hasse {")
    assert 'fillcolor="lightblue"' in out  # Type1 singleton complements shaded
    assert "penwidth=2.5" in out  # meet-irreducibles outlined
    assert "rank=same" in out


def test_dot_file_output(tmp_path, capsys):
    target = tmp_path / "g.dot"
    rc, out, _ = run_cli(capsys, "dot", "--perm", "2 1", "--out", str(target))
    assert rc == 0 and target.exists()
    assert target.read_text().startswith("digraph hasse {")


def test_missing_input_is_parse_error(capsys):
    rc, _, err = run_cli(capsys, "cg-complements")
    assert rc == 2


def test_both_inputs_rejected(tmp_path, capsys):
    p = tmp_path / "geom.txt"
    p.write_text("2 2\n1 2\n2 1\n")
    rc, _, err = run_cli(capsys, "cg-complements", "--perm", "2 1", "--file", str(p))
    assert rc == 2 and "mutually exclusive" in err


def test_geometry_file_with_nonidentity_first_chain(tmp_path, capsys):
    p = tmp_path / "geom.txt"
    p.write_text("4 2\n2 1 3 4\n4 3 1 2\n")
    rc, out, _ = run_cli(capsys, "cg-complements", "--file", str(p), "--verify")
    assert rc == 0 and "verified" in out


def test_oracle_accepts_multichain_geometry_file(tmp_path, capsys):
    # user-supplied chain files can probe geometries beyond cdim 2
    p = tmp_path / "geom3.txt"
    p.write_text("3 3\n1 2 3\n2 3 1\n3 1 2\n")
    rc, out, _ = run_cli(capsys, "oracle", "--file", str(p))
    assert rc == 0
    # cyclic rotations generate the cube 2^3: six atom/coatom intervals
    assert "# 6 complements" in out
