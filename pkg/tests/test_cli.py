"""CLI behavior: determinism, golden outputs, exit codes, formats."""

import pathlib

from click.testing import CliRunner

from chevtwist.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


def test_traces_golden():
    res = run_cli("traces", "--p", "3", "--f", "t", "--m-max", "2", "--r-max", "2")
    assert res.exit_code == 0
    assert res.output == (GOLDEN / "traces_p3_f_t.csv").read_text()


def test_traces_sweep_size():
    res = run_cli("traces", "--p", "3", "--f", "t", "--m-max", "3", "--r-max", "4")
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert len(lines) == 2 + 12  # comment, header, 3*4 certificates
    assert all(line.endswith(",ok") for line in lines[2:])


def test_fixed_s_golden_and_expect():
    res = run_cli("fixed-s", "--p", "3", "--f", "t")
    assert res.exit_code == 0
    assert res.output == (GOLDEN / "fixed_s_p3.csv").read_text()
    assert "2*t^6+2*t^4+2*t^2" in res.output
    ok = run_cli("fixed-s", "--p", "3", "--f", "t", "--expect", "2*t^6+2*t^4+2*t^2")
    assert ok.exit_code == 0
    bad = run_cli("fixed-s", "--p", "3", "--f", "t", "--expect", "t")
    assert bad.exit_code == 1


def test_reidemeister_golden_and_counts():
    res = run_cli("reidemeister", "--group", "SL", "--n", "2", "--q", "3", "--aut", "id")
    assert res.exit_code == 0
    assert res.output == (GOLDEN / "reidemeister_sl2_f3.csv").read_text()
    assert "count=7" in res.output
    res4 = run_cli("reidemeister", "--group", "PSL", "--n", "2", "--q", "3", "--aut", "id")
    assert "count=4" in res4.output


def test_reidemeister_expect_count_gate():
    ok = run_cli("reidemeister", "--group", "SL", "--n", "2", "--q", "3",
                 "--aut", "id", "--expect-count", "7")
    assert ok.exit_code == 0
    bad = run_cli("reidemeister", "--group", "SL", "--n", "2", "--q", "3",
                  "--aut", "id", "--expect-count", "999")
    assert bad.exit_code == 1


def test_reidemeister_frobenius_aut_grammar():
    res = run_cli("reidemeister", "--group", "SL", "--n", "2", "--q", "9",
                  "--aut", "ring=frob^1")
    assert res.exit_code == 0
    assert "method=orbit-partition+burnside" in res.output


def test_byte_identical_reruns():
    args = ("traces", "--p", "5", "--f", "t", "--m-max", "2", "--r-max", "3")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.output == second.output
    aut_args = ("aut-compose", "--group", "SL", "--n", "3", "--q", "3",
                "--seed", "11", "--samples", "15")
    assert run_cli(*aut_args).output == run_cli(*aut_args).output


def test_aut_compose_requires_seed():
    res = run_cli("aut-compose", "--group", "SL", "--n", "3", "--q", "3")
    assert res.exit_code != 0


def test_aut_compose_passes():
    res = run_cli("aut-compose", "--group", "SOeven", "--n", "3", "--q", "3",
                  "--seed", "5", "--samples", "10")
    assert res.exit_code == 0
    assert "FAIL" not in res.output


def test_witness_check_so_families():
    res = run_cli("witness-check", "--group", "SOodd", "--n", "2", "--p", "3",
                  "--denoms", "t", "--f", "t+1", "--r-max", "4", "--k-max", "3")
    assert res.exit_code == 0
    assert "FAIL" not in res.output
    res_even = run_cli("witness-check", "--group", "SOeven", "--n", "3", "--p", "3",
                       "--denoms", "t", "--f", "t+1", "--r-max", "4", "--k-max", "2")
    assert res_even.exit_code == 0


def test_witness_check_sp_doubling():
    res = run_cli("witness-check", "--group", "Sp", "--n", "2", "--p", "3",
                  "--f", "t", "--m-max", "2", "--r-max", "3")
    assert res.exit_code == 0
    assert "FAIL" not in res.output


def test_d4_command():
    res = run_cli("d4", "--p", "3", "--denoms", "t", "--f", "t+1", "--k-max", "2")
    assert res.exit_code == 0
    assert "reflection_order,2" in res.output


def test_markdown_format():
    res = run_cli("fixed-s", "--p", "3", "--f", "t", "--format", "md")
    assert res.exit_code == 0
    assert res.output.splitlines()[0].startswith("*run:")
    assert "| s |" in res.output


def test_output_file(tmp_path):
    out = tmp_path / "report.csv"
    res = run_cli("traces", "--p", "3", "--f", "t", "--m-max", "1", "--r-max", "1",
                  "--out", str(out))
    assert res.exit_code == 0
    assert out.read_text().startswith("# run: traces")


def test_bad_q_rejected():
    res = run_cli("reidemeister", "--group", "SL", "--n", "2", "--q", "12", "--aut", "id")
    assert res.exit_code == 2


def test_library_errors_surface_with_context():
    res = run_cli("fixed-s", "--p", "3", "--denoms", "t", "--f", "t")
    assert res.exit_code == 1
    assert "UnitInput" in res.output
