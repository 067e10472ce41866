import io
import json
import os

import pytest

from cijt.cli import main

DATASETS = os.path.join(os.path.dirname(__file__), os.pardir, "datasets")


def ds(name):
    return os.path.join(DATASETS, name + ".json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestIterate:
    def test_hyperbolic_tsv(self, capsys):
        code, out, _ = run(
            capsys, "iterate", ds("s2_hyperbolic"),
            "--record", "h1", "--m-max", "3", "--format", "tsv",
        )
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        assert rows == [
            ["m", "index", "nullity"],
            ["1", "1", "0"], ["2", "2", "0"], ["3", "3", "0"],
        ]

    def test_elliptic_tsv(self, capsys):
        code, out, _ = run(
            capsys, "iterate", ds("s2_elliptic"),
            "--record", "c1", "--m-max", "3", "--format", "tsv",
        )
        assert code == 0
        body = [line.split("\t") for line in out.strip().splitlines()[1:]]
        assert body == [["1", "1", "0"], ["2", "1", "0"], ["3", "3", "0"]]

    def test_m_max_zero_empty(self, capsys):
        code, out, _ = run(
            capsys, "iterate", ds("s2_hyperbolic"),
            "--record", "h1", "--m-max", "0", "--format", "tsv",
        )
        assert code == 0
        assert out.strip().splitlines() == ["m\tindex\tnullity"]

    def test_unknown_record(self, capsys):
        code, _, err = run(
            capsys, "iterate", ds("s2_hyperbolic"), "--record", "nope"
        )
        assert code == 2 and "unknown record" in err


class TestBetti:
    def test_tsv(self, capsys):
        code, out, _ = run(
            capsys, "betti", "--d", "3", "--n", "1", "--l-max", "4",
            "--format", "tsv",
        )
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
        # p, b_p, direct partial, closed partial (blank below support)
        assert rows[2] == ["2", "1", "1", "1"]
        assert rows[4] == ["4", "2", "3", "3"]

    def test_json_has_resonance_constant(self, capsys):
        code, out, _ = run(capsys, "betti", "--d", "2", "--n", "1", "--l-max", "3")
        doc = json.loads(out)
        assert code == 0 and doc["resonance_constant"] == "-1"


class TestResonance:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "resonance", ds("s2_elliptic"))
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_fail(self, capsys, tmp_path):
        doc = json.load(open(ds("s2_elliptic")))
        doc["records"] = doc["records"][:1]
        p = tmp_path / "partial.json"
        p.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "resonance", str(p))
        assert code == 1
        assert json.loads(out)["pass"] is False


class TestCijt:
    def test_sqrt2_auto(self, capsys):
        code, out, _ = run(
            capsys, "cijt", ds("single_sqrt2"), "--delta", "1/100"
        )
        doc = json.loads(out)
        assert code == 0
        assert (doc["N"], doc["m"]) == (29, [70])
        assert doc["verification"]["ok"] is True

    def test_sqrt2_opposite(self, capsys):
        code, out, _ = run(
            capsys, "cijt", ds("single_sqrt2"), "--delta", "1/100",
            "--vertex", "opposite",
        )
        doc = json.loads(out)
        assert code == 0 and (doc["N"], doc["m"]) == (70, [169])

    def test_bits_vertex(self, capsys):
        # chi bit 0, angle bit 1 (High band) reproduces the auto result
        code, out, _ = run(
            capsys, "cijt", ds("single_sqrt2"), "--delta", "1/100",
            "--vertex", "bits:01",
        )
        doc = json.loads(out)
        assert code == 0 and doc["N"] == 29

    def test_bad_bits_length(self, capsys):
        code, _, err = run(
            capsys, "cijt", ds("single_sqrt2"), "--vertex", "bits:0",
        )
        assert code == 2 and "bits" in err

    def test_exhaustion_exit_code(self, capsys):
        code, _, err = run(
            capsys, "cijt", ds("single_sqrt2"), "--delta", "1/100",
            "--n-bound", "20",
        )
        assert code == 3 and "exhausted" in err

    def test_determinism(self, capsys):
        outs = []
        for _ in range(2):
            _, out, _ = run(
                capsys, "cijt", ds("s2_elliptic"), "--delta", "1/200",
                "--n-multiple", "2",
            )
            outs.append(out)
        assert outs[0] == outs[1]
        assert json.loads(outs[0])["N"] == 754


class TestVerify:
    def test_theorem_1_1_passes(self, capsys):
        code, out, _ = run(
            capsys, "verify", ds("s2_elliptic"), "--theorem", "1.1"
        )
        doc = json.loads(out)
        assert code == 0 and doc["pass"] is True

    def test_theorem_1_8_passes(self, capsys):
        code, out, _ = run(
            capsys, "verify", ds("s2_hyperbolic"), "--theorem", "1.8"
        )
        doc = json.loads(out)
        assert code == 0 and doc["contradiction_found"] is True

    def test_parity_rejection(self, capsys):
        code, _, err = run(
            capsys, "verify", ds("s2_elliptic"), "--theorem", "1.5"
        )
        assert code == 2 and "rejected" in err


class TestDatasetLoading:
    def test_bad_version(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"version": 99}')
        code, _, err = run(capsys, "resonance", str(p))
        assert code == 2 and "version" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "resonance", "/nonexistent.json")
        assert code == 2

    def test_round_trip_all_shipped(self):
        from cijt.cli import load_dataset

        for name in ("s2_elliptic", "s3_elliptic", "s2_hyperbolic", "single_sqrt2"):
            dataset = load_dataset(ds(name))
            assert dataset.records
