"""End-to-end CLI behaviour: formats, round trips, exit codes."""

import json

import pytest

from shiftprod.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_degree_equals_k_cell(self, capsys):
        code, out, _ = run(
            capsys, "count", "--k", "2", "--X", "10", "--shift", "minpoly:-2,0,1"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "k,X,shift,M,T,nondiag,distinct_nu,elapsed_ms"
        fields = lines[1].split(",")
        # the shift field itself contains commas, hence csv quoting
        assert lines[1].startswith('2,10,"minpoly:-2,0,1",190,190,0,')

    def test_transcendental_k1(self, capsys):
        code, out, _ = run(
            capsys, "count", "--k", "1", "--X", "5", "--shift", "transcendental"
        )
        assert code == 0
        assert out.strip().splitlines()[1].startswith("1,5,transcendental,5,5,0,")

    def test_rational_cell(self, capsys):
        code, out, _ = run(
            capsys, "count", "--k", "2", "--X", "7", "--shift", "rational:1/2"
        )
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert int(row[5]) >= 8

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "count", "--k", "2", "--X", "10", "--shift", "minpoly:-2,0,1",
            "--format", "json",
        )
        assert code == 0
        [payload] = json.loads(out)
        assert payload["M"] == payload["T"] == 190
        assert payload["shift"] == "minpoly:-2,0,1"

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "row.csv"
        code, out, _ = run(
            capsys, "count", "--k", "1", "--X", "3", "--shift", "rational:1/2",
            "--out", str(path),
        )
        assert code == 0 and out == ""
        assert path.read_text().startswith("k,X,shift,")


class TestScan:
    def test_rows_and_fit(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--k", "2", "--X-list", "10,20,40",
            "--shift", "rational:1/2",
        )
        assert code == 0
        assert "# fitted_alpha=" in out
        assert "# reference_exponent=2" in out

    def test_zero_count_marker(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--k", "2", "--X-list", "5,10,15",
            "--shift", "minpoly:-2,0,1",
        )
        assert code == 0
        assert "# fitted_alpha=zero-count" in out

    def test_single_x_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "scan", "--k", "2", "--X-list", "10", "--shift", "rational:1/2"
        )
        assert code == 1 and "three X values" in err

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "scan", "--k", "2", "--X-list", "10,20,40",
            "--shift", "rational:1/2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["rows"]) == 3
        assert payload["fit"]["alpha"] > 1


class TestWitnessAndLemmaCheck:
    def test_round_trip(self, capsys, tmp_path):
        path = tmp_path / "witnesses.json"
        code, out, _ = run(
            capsys, "witness", "--k", "2", "--X", "12", "--shift", "rational:1/2",
            "--out", str(path),
        )
        assert code == 0
        data = json.loads(path.read_text())
        assert {"x": [1, 7], "y": [2, 4]} in data
        code, out, err = run(
            capsys, "lemma-check", "--shift", "rational:1/2", "--X", "12",
            "--in", str(path),
        )
        assert code == 0, err
        reports = json.loads(out)
        assert len(reports) == len(data)
        assert all(all(r["lemma_ok"]) and r["norm_ok"] for r in reports)

    def test_algebraic_witnesses_check(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        code, _, _ = run(
            capsys, "witness", "--k", "3", "--X", "50", "--shift", "minpoly:-2,0,1",
            "--out", str(path),
        )
        assert code == 0
        assert len(json.loads(path.read_text())) == 2
        code, out, _ = run(
            capsys, "lemma-check", "--shift", "minpoly:-2,0,1", "--X", "50",
            "--in", str(path),
        )
        assert code == 0
        assert all(r["norm_ok"] for r in json.loads(out))

    def test_limit(self, capsys):
        code, out, _ = run(
            capsys, "witness", "--k", "2", "--X", "25", "--shift", "rational:1/2",
            "--limit", "2",
        )
        assert code == 0 and len(json.loads(out)) == 2

    def test_non_solution_rejected(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{"x": [1, 2, 5], "y": [3, 4, 6]}]))
        code, _, err = run(
            capsys, "lemma-check", "--shift", "minpoly:-2,0,1", "--in", str(path)
        )
        assert code == 3 and "does not divide" in err

    def test_diagonal_rejected(self, capsys, tmp_path):
        path = tmp_path / "diag.json"
        path.write_text(json.dumps([{"x": [1, 2], "y": [2, 1]}]))
        code, _, err = run(
            capsys, "lemma-check", "--shift", "rational:1/2", "--in", str(path)
        )
        assert code == 3 and "diagonal after cancellation" in err

    def test_transcendental_rejected(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text("[]")
        code, _, err = run(
            capsys, "lemma-check", "--shift", "transcendental", "--in", str(path)
        )
        assert code == 1

    def test_empty_witness_list_vacuous_pass(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        path.write_text("[]")
        code, out, _ = run(
            capsys, "lemma-check", "--shift", "rational:1/2", "--in", str(path)
        )
        assert code == 0 and json.loads(out) == []


class TestContrastCommand:
    def test_csv(self, capsys):
        code, out, _ = run(
            capsys, "contrast", "--k", "2", "--X-list", "10,20",
            "--rational-shift", "rational:1/2", "--algebraic-shift", "minpoly:-2,0,1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "X,k,shift_rational_nondiag,shift_algebraic_nondiag"
        assert lines[1].endswith(",0") and lines[2].endswith(",0")


class TestErrors:
    def test_bad_shift_grammar(self, capsys):
        code, _, err = run(capsys, "count", "--k", "2", "--X", "5", "--shift", "nope")
        assert code == 1 and "unrecognised shift" in err

    def test_missing_required_flag(self, capsys):
        code, _, _ = run(capsys, "count", "--k", "2", "--X", "5")
        assert code == 1

    def test_nonincreasing_x_list(self, capsys):
        code, _, err = run(
            capsys, "scan", "--k", "2", "--X-list", "10,10,20",
            "--shift", "rational:1/2",
        )
        assert code == 1 and "strictly increasing" in err

    def test_capacity_exit_code(self, capsys):
        code, _, err = run(
            capsys, "count", "--k", "3", "--X", "400", "--shift", "minpoly:-2,0,1",
            "--memory-budget-mb", "1",
        )
        assert code == 2 and "budget" in err

    def test_reducible_minpoly_rejected(self, capsys):
        code, _, err = run(
            capsys, "count", "--k", "2", "--X", "5", "--shift", "minpoly:-1,0,1"
        )
        assert code == 1 and "rational root" in err


class TestDeterminism:
    def test_identical_runs_identical_output(self, capsys):
        outputs = []
        for _ in range(2):
            code, out, _ = run(
                capsys, "witness", "--k", "2", "--X", "30", "--shift", "rational:1/2"
            )
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]

    def test_worker_counts_agree(self, capsys):
        outs = []
        for w in ("1", "2"):
            code, out, _ = run(
                capsys, "count", "--k", "3", "--X", "20", "--shift", "minpoly:-2,0,1",
                "--workers", w,
            )
            assert code == 0
            rows = [line.rsplit(",", 1)[0] for line in out.strip().splitlines()]
            outs.append(rows)
        assert outs[0] == outs[1]
