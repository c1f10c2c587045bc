"""Runner behavior: determinism, report format, witnesses, replay, CLI."""

import json
import subprocess
import sys

import numpy as np
import pytest

from normlab.checks import build_registry
from normlab.verify import (
    CONSTANTS,
    FORMAT_VERSION,
    SuiteConfig,
    decode_payload,
    encode_payload,
    load_goldens,
    replay,
    run,
    write_witness,
)
from normlab.dyadic import DyadicStepFunction


class TestConfig:
    def test_defaults_valid(self):
        cfg = SuiteConfig()
        assert cfg.selected_suites() == (
            "core", "duality", "operators", "interpolation", "dyadic", "seqspace"
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            SuiteConfig(trials=0)
        with pytest.raises(ValueError):
            SuiteConfig(levels=(15,))
        with pytest.raises(ValueError):
            SuiteConfig(suites=("nope",))

    def test_suite_subset(self):
        assert SuiteConfig(suites=("dyadic",)).selected_suites() == ("dyadic",)


class TestRegistry:
    def test_ids_unique_and_prefixed(self):
        checks = build_registry()
        ids = [c.check_id for c in checks]
        assert len(set(ids)) == len(ids)
        for c in checks:
            assert c.check_id.startswith(c.suite + ".")

    def test_every_spec_proposition_covered(self):
        """One registered record per quantitative proposition under test."""
        anchors_needed = [
            # convexity and inequalities
            "Minkowski", "older", "Cauchy-Schwarz", "parallelogram",
            "convexity inequality", "difference quotients",
            "(u + v)^p",
            # duality
            "lambda_w", "||v||**", "equal to mu on W", "Minkowski functional",
            "E' = E", "E = E''", "seminorm",
            # operators
            "C*-identity", "Schur", "|tr A|", "triangle inequality",
            "<T(y_h), z_h>", "||T(y_h)||_2", "tr(R T)", "tr A B >= 0",
            "||P||_op >= 1", "rad(T^n)", "orthonormal basis",
            "Schmidt decomposition", "invertible", "tr (A o B)",
            "Hilbert-Schmidt",
            # interpolation
            "log M_p is convex", "mu >= 0", "dual linear transformation",
            # dyadic
            "E_j(f) g", "positive integers j, k", "S(f)^2",
            "Weak-type estimate for M(f)", "modified weak-type",
            "2^p p/(p-1)", "constant 3", "union of dyadic",
            "E_j(beta)^p", "orthogonality", "h_0",
            "f_lambda", "S(g_lambda)", "lambda^(p-1)",
            "sum a_j^2", "Walsh", "S(f_1) S(f_2)",
            "empirical constants",
            # seqspace
            "present context", "smallest value of C", "||f||_1 <= ||f||_p",
            "||f||_inf", "double sums", "Fatou", "epsilon",
        ]
        blob = " || ".join(c.anchor for c in build_registry())
        missing = [a for a in anchors_needed if a not in blob]
        assert not missing, f"uncovered propositions: {missing}"


class TestPayloadCodec:
    def test_roundtrip(self):
        payload = {
            "real": np.arange(4.0),
            "cplx": np.arange(3.0) * (1 + 1j),
            "step": DyadicStepFunction(1, [0.5, -2.0]),
            "scalar": 3.5,
            "z": 1 - 2j,
            "name": "x",
            "items": [1, 2],
            "flag": True,
            "none": None,
        }
        enc = encode_payload(payload)
        # encoded form must be JSON-serializable
        text = json.dumps(enc)
        dec = decode_payload(json.loads(text))
        assert np.array_equal(dec["real"], payload["real"])
        assert np.array_equal(dec["cplx"], payload["cplx"])
        assert dec["step"] == payload["step"]
        assert dec["scalar"] == 3.5
        assert dec["z"] == 1 - 2j
        assert dec["items"] == [1, 2]


class TestRun:
    def test_deterministic_reports(self):
        cfg = SuiteConfig(suites=("core",), trials=20, seed=11)
        a = run(cfg).to_dict()
        b = run(cfg).to_dict()
        a.pop("wall_time_seconds")
        b.pop("wall_time_seconds")
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_report_structure(self):
        cfg = SuiteConfig(suites=("seqspace",), trials=5)
        rep = run(cfg)
        blob = rep.to_dict()
        assert blob["format_version"] == FORMAT_VERSION
        assert blob["summary"]["total"] == len(rep.records)
        for record in blob["checks"].values():
            assert set(record) == {
                "anchor", "trials", "worst_margin", "passed", "witness", "error"
            }

    def test_every_check_passes_on_defaults(self):
        rep = run(SuiteConfig(trials=15))
        failing = [r.check_id for r in rep.records if not r.passed]
        assert not failing, failing

    def test_goldens_present(self):
        goldens = load_goldens()
        assert len(goldens) >= 11
        assert all(v > 0 for v in goldens.values())


class TestMutations:
    def test_negated_lp_constant_fails(self):
        cfg = SuiteConfig(
            suites=("dyadic",), trials=10,
            overrides={"maximal_lp_sign": -1.0},
        )
        rep = run(cfg)
        failed = {r.check_id for r in rep.records if not r.passed}
        assert "dyadic.maximal_lp_bound" in failed
        record = next(
            r for r in rep.records if r.check_id == "dyadic.maximal_lp_bound"
        )
        assert record.witness is not None

    def test_weakened_weak_type_fails(self):
        cfg = SuiteConfig(
            suites=("dyadic",), trials=10,
            overrides={"maximal_weak_type": 0.95},
        )
        rep = run(cfg)
        failed = {r.check_id for r in rep.records if not r.passed}
        assert "dyadic.weak_type_maximal" in failed

    def test_weakened_golden_fails(self):
        cfg = SuiteConfig(
            suites=("dyadic",), trials=1,
            overrides={"golden:dyadic.golden_s_over_m_p1": 0.5},
        )
        rep = run(cfg)
        failed = {r.check_id for r in rep.records if not r.passed}
        assert "dyadic.golden_s_over_m_p1" in failed


class TestWitnessReplay:
    def test_failing_witness_replays_failing(self, tmp_path):
        cfg = SuiteConfig(
            suites=("dyadic",), trials=5,
            overrides={"maximal_lp_sign": -1.0},
        )
        rep = run(cfg)
        record = next(
            r for r in rep.records if r.check_id == "dyadic.maximal_lp_bound"
        )
        constants = dict(CONSTANTS)
        constants.update(cfg.overrides)
        path = tmp_path / "w.json"
        write_witness(str(path), record, constants)
        replayed = replay(str(path))
        assert not replayed.passed
        assert replayed.worst_margin == pytest.approx(
            record.worst_margin, rel=1e-9
        )

    def test_passing_witness_replays_passing(self, tmp_path):
        cfg = SuiteConfig(suites=("core",), trials=5)
        rep = run(cfg)
        record = rep.records[0]
        path = tmp_path / "w.json"
        write_witness(str(path), record, dict(CONSTANTS))
        assert replay(str(path)).passed

    def test_malformed_witness(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"format_version": 1, "check_id": "no.such"}')
        with pytest.raises((ValueError, KeyError)):
            replay(str(path))


class TestThreads:
    def test_threaded_run_matches_serial(self, monkeypatch):
        cfg = SuiteConfig(suites=("core",), trials=10, seed=3)
        serial = run(cfg).to_dict()
        monkeypatch.setenv("VERIFY_THREADS", "4")
        threaded = run(cfg).to_dict()
        serial.pop("wall_time_seconds")
        threaded.pop("wall_time_seconds")
        assert json.dumps(serial, sort_keys=True) == json.dumps(
            threaded, sort_keys=True
        )


class TestCli:
    def _run(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "normlab.cli", *args],
            capture_output=True,
            text=True,
        )

    def test_pass_exit_zero(self, tmp_path):
        out = tmp_path / "report.json"
        proc = self._run(
            "run", "--suites", "seqspace", "--trials", "5", "--out", str(out)
        )
        assert proc.returncode == 0, proc.stderr
        blob = json.loads(out.read_text())
        assert blob["summary"]["failed"] == 0

    def test_failure_exit_one_and_witness(self, tmp_path):
        wdir = tmp_path / "wits"
        proc = self._run(
            "run", "--suites", "dyadic", "--trials", "5",
            "--override", "maximal_lp_sign=-1",
            "--out", str(tmp_path / "r.json"),
            "--witness-dir", str(wdir),
        )
        assert proc.returncode == 1
        witnesses = list(wdir.glob("*.witness.json"))
        assert witnesses
        replay_proc = self._run("replay", "--witness", str(witnesses[0]))
        assert replay_proc.returncode == 1
        assert "FAIL" in replay_proc.stdout

    def test_bad_config_exit_two(self):
        proc = self._run("run", "--suites", "bogus")
        assert proc.returncode == 2

    def test_missing_witness_exit_two(self):
        proc = self._run("replay", "--witness", "/nonexistent/w.json")
        assert proc.returncode == 2
