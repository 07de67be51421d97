"""Command-line client, driven in process through main(argv)."""

import pytest

from ais_inmaca.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from ais_inmaca.maca_model import serialize
from ais_inmaca.region_report import PROMOTER_TABLE_HEADER

from conftest import inr_model

INR_SEQ = "CCAT" + "A" * 116


@pytest.fixture
def table_file(tmp_path, table_text):
    path = tmp_path / "table.csv"
    path.write_text(table_text)
    return str(path)


@pytest.fixture
def fasta_file(tmp_path):
    path = tmp_path / "seqs.fa"
    path.write_text(f">g\n{INR_SEQ}\n")
    return str(path)


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text(serialize(inr_model(positive="C")), newline="")
    return str(path)


class TestTrain:
    def test_writes_model_and_curve(self, tmp_path, table_file, capsys):
        out = tmp_path / "model.txt"
        code = main(
            ["train", "--data", table_file, "--pop", "4", "--gens", "2",
             "--seed", "0", "--out", str(out)]
        )
        assert code == EXIT_OK
        text = out.read_text()
        assert text.startswith("AIS-INMACA-MODEL v1\n")
        captured = capsys.readouterr()
        lines = captured.out.splitlines()
        assert lines[0] == "generation\tbest_fitness"
        assert len(lines) == 1 + 3 + 2  # header, gens+1 curve rows, two summary rows
        assert lines[1].startswith("0\t0.")
        assert lines[-2].startswith("final_fitness\t")
        assert lines[-1] == "evaluations\t104"  # 4 + 2*(50 + 0)
        assert f"model written to {out}" in captured.err

    def test_same_seed_is_byte_identical(self, tmp_path, table_file, capsys):
        out_a = tmp_path / "a.txt"
        out_b = tmp_path / "b.txt"
        base = ["train", "--data", table_file, "--pop", "4", "--gens", "2", "--seed", "7"]
        assert main(base + ["--out", str(out_a)]) == EXIT_OK
        assert main(base + ["--out", str(out_b)]) == EXIT_OK
        assert out_a.read_bytes() == out_b.read_bytes()

    def test_bad_table_exits_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("0.1,x,C\n")
        code = main(["train", "--data", str(bad), "--out", str(tmp_path / "m.txt")])
        assert code == EXIT_INPUT
        assert "error: line 1: non-numeric attribute" in capsys.readouterr().err

    def test_bad_config_exits_usage(self, tmp_path, table_file, capsys):
        code = main(
            ["train", "--data", table_file, "--pop", "0", "--out", str(tmp_path / "m.txt")]
        )
        assert code == EXIT_USAGE
        assert "population must be >= 1" in capsys.readouterr().err

    def test_missing_data_file_exits_input(self, tmp_path, capsys):
        code = main(
            ["train", "--data", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "m.txt")]
        )
        assert code == EXIT_INPUT
        assert "error:" in capsys.readouterr().err


class TestPredict:
    def test_raw_report(self, model_file, fasta_file, capsys):
        code = main(
            ["predict", "--model", model_file, "--fasta", fasta_file,
             "--task", "promoter", "--format", "raw"]
        )
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 8
        assert lines[0] == "g\t1\t51\tC\t0.900000"
        assert lines[1] == "g\t11\t61\tN\t0.800000"

    def test_default_promoter_table(self, model_file, fasta_file, capsys):
        code = main(
            ["predict", "--model", model_file, "--fasta", fasta_file, "--task", "promoter"]
        )
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == PROMOTER_TABLE_HEADER
        assert lines[1] == f"1\t51\t0.90\t{INR_SEQ[:50]}"

    def test_schema_mismatch_exits_3(self, model_file, fasta_file, capsys):
        code = main(
            ["predict", "--model", model_file, "--fasta", fasta_file, "--task", "coding"]
        )
        assert code == EXIT_MISMATCH
        err = capsys.readouterr().err
        assert "error: model size 4 does not match the coding schema length 9" in err

    def test_bad_fasta_exits_input(self, tmp_path, model_file, capsys):
        bad = tmp_path / "bad.fa"
        bad.write_text(">g\nACGX\n")
        code = main(
            ["predict", "--model", model_file, "--fasta", str(bad), "--task", "promoter"]
        )
        assert code == EXIT_INPUT
        assert "illegal character" in capsys.readouterr().err

    def test_bad_threshold_exits_usage(self, model_file, fasta_file, capsys):
        code = main(
            ["predict", "--model", model_file, "--fasta", fasta_file,
             "--task", "promoter", "--threshold", "1.5"]
        )
        assert code == EXIT_USAGE


class TestEvaluate:
    def test_metrics_on_stdout(self, tmp_path, capsys):
        pred = tmp_path / "pred.tsv"
        truth = tmp_path / "truth.tsv"
        pred.write_text("r1\t3\t8\n")
        truth.write_text("r1\t6\t10\n")
        code = main(["evaluate", "--pred", str(pred), "--truth", str(truth), "--len", "20"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "tp\t3" in out
        assert "sn\t0.600000" in out
        assert "accuracy\t0.750000" in out

    def test_undefined_cc_renders_word(self, tmp_path, capsys):
        pred = tmp_path / "pred.tsv"
        truth = tmp_path / "truth.tsv"
        pred.write_text("r1\t1\t10\n")
        truth.write_text("r1\t1\t10\n")
        code = main(["evaluate", "--pred", str(pred), "--truth", str(truth), "--len", "10"])
        assert code == EXIT_OK
        assert "cc\tundefined" in capsys.readouterr().out

    def test_bad_region_file_exits_input(self, tmp_path, capsys):
        pred = tmp_path / "pred.tsv"
        truth = tmp_path / "truth.tsv"
        pred.write_text("r1\tthree\t8\n")
        truth.write_text("r1\t6\t10\n")
        code = main(["evaluate", "--pred", str(pred), "--truth", str(truth), "--len", "20"])
        assert code == EXIT_INPUT


class TestBasins:
    def test_rules_listing(self, capsys):
        code = main(["basins", "--rules", "ZERO*3", "--n", "6"])
        assert code == EXIT_OK
        assert capsys.readouterr().out == "Attractor\tSize\n0,0,0\t216\n"

    def test_model_listing(self, model_file, capsys):
        code = main(["basins", "--model", model_file])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "Attractor\tSize"
        assert len(lines) == 17

    def test_neither_source_exits_usage(self, capsys):
        code = main(["basins"])
        assert code == EXIT_USAGE
        assert "exactly one of 'model' or 'rules'" in capsys.readouterr().err

    def test_unknown_rule_exits_input(self, capsys):
        code = main(["basins", "--rules", "FOO", "--n", "6"])
        assert code == EXIT_INPUT
        assert "unknown rule token" in capsys.readouterr().err


class TestFeatures:
    def test_dump(self, fasta_file, capsys):
        code = main(["features", "--fasta", fasta_file, "--task", "promoter"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "id\tstart\tend\tgc_content\tcpg_ratio\ttata_score\tinr_score"
        assert len(lines) == 9

    def test_window_override(self, fasta_file, capsys):
        code = main(
            ["features", "--fasta", fasta_file, "--task", "promoter",
             "--window", "120", "--stride", "10"]
        )
        assert code == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) == 2


class TestUsageErrors:
    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == EXIT_USAGE

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == EXIT_USAGE

    def test_missing_required_option(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["predict"])
        assert exc.value.code == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_bad_choice(self, model_file, fasta_file, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["predict", "--model", model_file, "--fasta", fasta_file,
                  "--task", "exons"])
        assert exc.value.code == EXIT_USAGE

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["basins", "--rules", "ZERO", "--n", "2", "--frob"])
        assert exc.value.code == EXIT_USAGE
