import io
import json
import os
import tempfile
from unittest import mock
from contextlib import redirect_stderr, redirect_stdout
from unittest import TestCase

from weyl_moe.cli import process_args


def run_cli(*args):
    """
    :return: (exit code, stdout, stderr)
    """
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = process_args(["--logNone", *args])
        except SystemExit as e:
            code = e.code
    return code, out.getvalue(), err.getvalue()


def last_json_line(text):
    lines = [line for line in text.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


class TestVersion(TestCase):
    def test_version(self):
        code, out, _ = run_cli("version")
        self.assertEqual(0, code)
        self.assertIn("weyl-moe", out)


class TestVerifyDecomposition(TestCase):
    def test_example(self):
        code, out, _ = run_cli(
            "verify-decomposition", "--d", "3", "--r", "0.05", "--p", "0.02"
        )
        self.assertEqual(0, code)
        report = json.loads(out)
        self.assertEqual("verify-decomposition", report["command"])
        self.assertAlmostEqual(0.890244, report["lambda"], places=6)
        self.assertLessEqual(report["mix_residual"], 1e-10)
        self.assertTrue(report["passed"])
        self.assertEqual(3, report["config"]["d"])

    def test_composite_dimension(self):
        code, out, err = run_cli(
            "verify-decomposition", "--d", "4", "--r", "0.05", "--p", "0.02"
        )
        self.assertEqual(2, code)
        self.assertEqual("", out)
        error = last_json_line(err)
        self.assertEqual("HypothesisViolated", error["error"])
        self.assertEqual("d", error["parameter"])
        self.assertEqual("--d", error["flag"])

    def test_missing_flag(self):
        code, _, err = run_cli("verify-decomposition", "--d", "3", "--p", "0.02")
        self.assertEqual(2, code)
        self.assertEqual("--r", last_json_line(err)["flag"])

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "report.json")
            code, out, _ = run_cli(
                "verify-decomposition",
                "--d",
                "2",
                "--r",
                "0.2",
                "--p",
                "0.1",
                "-o",
                path,
            )
            with open(path) as f:
                report = json.load(f)
        self.assertEqual(0, code)
        self.assertEqual("", out)
        self.assertTrue(report["passed"])


class TestArgumentErrors(TestCase):
    def test_unknown_channel(self):
        code, _, err = run_cli("chi", "--channel", "amplitude-damping", "--d", "2")
        self.assertEqual(2, code)
        first = json.loads(err.splitlines()[0])
        self.assertEqual("ArgumentError", first["error"])

    def test_no_command(self):
        code, _, _ = run_cli()
        self.assertEqual(2, code)


class TestIntegerFlags(TestCase):
    THEOREM = ("verify-theorem", "--d", "2", "--r", "0.2", "--p", "0.1")

    def assert_rejected(self, flag, *args):
        code, out, err = run_cli(*args)
        self.assertEqual(2, code)
        self.assertEqual("", out)
        error = last_json_line(err)
        self.assertEqual("InvalidParameter", error["error"])
        self.assertEqual(flag, error["flag"])

    def test_empty_batch(self):
        self.assert_rejected("--n", *self.THEOREM, "--n", "0")

    def test_negative_batch(self):
        self.assert_rejected("--n", *self.THEOREM, "--n", "-3")

    def test_negative_seed(self):
        self.assert_rejected(
            "--seed",
            "chi",
            "--channel",
            "depolarizing",
            "--d",
            "2",
            "--q",
            "0.5",
            "--seed",
            "-1",
        )

    def test_zero_k(self):
        self.assert_rejected(
            "--k", "verify-theorem2", "--d", "2", "--q", "0.5", "--k", "0"
        )

    def test_zero_psi_rank(self):
        self.assert_rejected(
            "--psi-rank", *self.THEOREM, "--psi", "random", "--psi-rank", "0"
        )

    def test_threads_environment(self):
        with mock.patch.dict(os.environ, {"WEYL_MOE_THREADS": "many"}):
            code, _, err = run_cli(
                "verify-decomposition", "--d", "3", "--r", "0.05", "--p", "0.02"
            )
        self.assertEqual(2, code)
        error = last_json_line(err)
        self.assertEqual("threads", error["parameter"])
        self.assertNotIn("flag", error)


class TestChi(TestCase):
    ARGS = (
        "chi",
        "--channel",
        "depolarizing",
        "--d",
        "2",
        "--q",
        "0.5",
        "--starts",
        "4",
        "--samples",
        "200",
        "--seed",
        "7",
    )

    def test_depolarizing(self):
        code, out, _ = run_cli(*self.ARGS)
        self.assertEqual(0, code)
        report = json.loads(out)
        self.assertAlmostEqual(0.811278, report["chi"], places=6)
        self.assertAlmostEqual(0.811278, report["closed_form"], places=6)
        self.assertEqual(7, report["config"]["seed"])

    def test_reproducible(self):
        _, first, _ = run_cli(*self.ARGS)
        _, second, _ = run_cli(*self.ARGS)
        self.assertEqual(first, second)

    def test_nats(self):
        code, out, _ = run_cli(*self.ARGS, "--log-base", "e")
        self.assertEqual(0, code)
        self.assertAlmostEqual(0.562335, json.loads(out)["chi"], places=6)


class TestVerifyTheorem(TestCase):
    def test_small_batch(self):
        code, out, _ = run_cli(
            "verify-theorem",
            "--d",
            "2",
            "--r",
            "0.2",
            "--p",
            "0.1",
            "--psi",
            "random",
            "--k",
            "2",
            "--n",
            "6",
            "--seed",
            "1",
        )
        self.assertEqual(0, code)
        report = json.loads(out)
        self.assertTrue(report["gated"])
        self.assertEqual(6, len(report["reports"]))
        self.assertGreaterEqual(report["worst_margin"], -1e-8)

    def test_theorem2_csv(self):
        code, out, _ = run_cli(
            "verify-theorem2", "--d", "2", "--q", "1.0", "--n", "4", "--format", "csv"
        )
        self.assertEqual(0, code)
        lines = out.splitlines()
        self.assertEqual("d,r,p,lambda,lhs,rhs,margin,variant,seed,psi_spec", lines[0])
        self.assertEqual(5, len(lines))


class TestSweep(TestCase):
    def test_additivity_csv(self):
        _, out, _ = run_cli(
            "sweep",
            "--command",
            "additivity",
            "--d",
            "2",
            "--p-grid",
            "0:0.25:3",
            "--starts",
            "4",
            "--seed",
            "1",
            "--format",
            "csv",
        )
        lines = out.splitlines()
        self.assertEqual("d,r,p,lambda,chi_phi,chi_tensor,gap,seed", lines[0])
        self.assertEqual(4, len(lines))

    def test_decomposition_skips_outside_region(self):
        code, out, _ = run_cli(
            "sweep",
            "--command",
            "verify-decomposition",
            "--d",
            "3",
            "--p",
            "0.02",
            "--r-grid",
            "0:0.3:4",
        )
        self.assertEqual(0, code)
        rows = json.loads(out)["rows"]
        self.assertEqual(2, len(rows))
        self.assertAlmostEqual(0.1, rows[0]["r"])
        self.assertAlmostEqual(0.2, rows[1]["r"])


class TestCheckChannel(TestCase):
    def write_channel(self, directory, payload):
        path = os.path.join(directory, "channel.json")
        with open(path, "w+") as f:
            json.dump(payload, f)
        return path

    def test_weyl_table(self):
        with tempfile.TemporaryDirectory() as d:
            path = self.write_channel(
                d, {"kind": "weyl", "d": 2, "coeffs": [[0.7, 0.1], [0.1, 0.1]]}
            )
            code, out, _ = run_cli("check-channel", "--channel-json", path)
        self.assertEqual(0, code)
        report = json.loads(out)
        self.assertLessEqual(report["cp_defect"], 1e-10)
        self.assertLessEqual(report["covariance_defect"], 1e-10)

    def test_negative_table(self):
        with tempfile.TemporaryDirectory() as d:
            path = self.write_channel(
                d, {"kind": "weyl", "d": 2, "coeffs": [[-0.1, 0.5], [0.3, 0.3]]}
            )
            code, _, err = run_cli("check-channel", "--channel-json", path)
        self.assertEqual(2, code)
        self.assertEqual("--channel-json", last_json_line(err)["flag"])

    def test_missing_file(self):
        code, _, err = run_cli("check-channel", "--channel-json", "/nonexistent.json")
        self.assertEqual(2, code)
        self.assertEqual("channel-json", last_json_line(err)["parameter"])


class TestAdditivity(TestCase):
    def test_psi_is_phi(self):
        code, out, _ = run_cli(
            "additivity",
            "--d",
            "2",
            "--r",
            "0.2",
            "--p",
            "0.1",
            "--psi",
            "phi",
            "--starts",
            "8",
            "--seed",
            "3",
        )
        self.assertEqual(0, code)
        report = json.loads(out)
        self.assertEqual("phi", report["psi_spec"]["type"])
        self.assertLessEqual(abs(report["gap"]), 1e-5)

    def test_phi_as_theorem_psi(self):
        code, out, _ = run_cli(
            "verify-theorem",
            "--d",
            "2",
            "--r",
            "0.2",
            "--p",
            "0.1",
            "--psi",
            "phi",
            "--k",
            "5",
            "--n",
            "4",
        )
        self.assertEqual(0, code)
        self.assertEqual(4, len(json.loads(out)["reports"]))
