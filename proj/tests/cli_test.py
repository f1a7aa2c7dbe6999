import json
import subprocess
import sys
import unittest
from pathlib import Path

import jsonschema

DVA = sys.argv.pop(1)
SCHEMA = json.loads(Path(sys.argv.pop(1)).read_text())
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run(*args):
    return subprocess.run([DVA, *args], capture_output=True, text=True, timeout=600)


def run_json(*args):
    r = run(*args, "--format", "json")
    return r, json.loads(r.stdout) if r.stdout else None


class Examples(unittest.TestCase):
    def test_kacdet_ratio_constant(self):
        r, out = run_json("kacdet", "--level", "2", "--variant", "generic", "--seed", "7")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(list(out)[1:], ["level", "empirical_det", "formula", "ratio_constant", "specializations"])
        self.assertGreaterEqual(len(out["specializations"]), 5)
        ratios = {s["ratio"] for s in out["specializations"]}
        self.assertEqual(ratios, {out["ratio_constant"]})

    def test_appendix_b_singular(self):
        r = run("singular", "--appendix-b", "3", "3", "--p", "2", "--h", "5/3")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("verdict: singular\n", r.stdout)

    def test_reduced_character(self):
        r, out = run_json("char", "--kind", "reduced", "--N", "3", "--order", "5")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(out["coefficients"], ["1", "1", "2", "2", "4", "5"])


class ExitCodes(unittest.TestCase):
    def test_success(self):
        self.assertEqual(run("kostka", "--degree", "3").returncode, 0)

    def test_verdict_failure(self):
        r = run("singular", "--power", "1", "2", "--variant", "generic", "--p", "3", "--q", "5", "--h", "2")
        self.assertEqual(r.returncode, 1)
        self.assertIn("not singular", r.stdout)
        self.assertIn("positive_mode_images", r.stdout)

    def test_center_failure_reports_prediction(self):
        r, out = run_json("center-check", "--N", "3", "--m", "0", "--level", "2", "--kmax", "2", "--h", "1/2")
        self.assertEqual(r.returncode, 1)
        self.assertEqual(out["verdict"], "not central")
        self.assertEqual(out["difference"]["terms"], [])

    def test_usage_errors(self):
        cases = [
            ["gram"],
            ["gram", "--level", "x"],
            ["gram", "--level", "2", "--bogus"],
            ["nonsense"],
            [],
            ["gram", "--level", "2", "--variant", "q-root", "--N", "3", "--q", "2"],
            ["gram", "--level", "2", "--variant", "q-minus-1", "--q", "2"],
            ["gram", "--level", "2", "--variant", "t-infinity", "--N", "3", "--q", "2"],
            ["gram", "--level", "2", "--variant", "sideways"],
            ["gram", "--level", "2", "--p", "1/0"],
            ["singular", "--appendix-b", "3", "3", "--power", "1", "2"],
            ["singular", "--vector", "{broken"],
            ["singular", "--vector", '{"level":1,"terms":[{"partition":"1","coeff":"1/0"}]}'],
            ["singular", "--vector", '{"level":2,"terms":[{"partition":"1","coeff":"1"}]}'],
            ["singular", "--vector", '{"level":1,"terms":[{"partition":"1","coeff":"a"}]}', "--p", "2", "--q", "3", "--h", "1"],
            ["quotient-det", "--level", "2"],
            ["hl", "--lambda", "2,1", "--basis", "Z"],
            ["char", "--kind", "nope"],
            ["identity-suite", "no-such-suite"],
        ]
        for argv in cases:
            with self.subTest(argv=argv):
                r = run(*argv)
                self.assertEqual(r.returncode, 2, r.stdout)
                self.assertTrue(r.stderr.strip())


DETERMINISM = [
    ["kacdet", "--level", "3", "--seed", "11"],
    ["quotient-det", "--level", "3", "--variant", "q-root", "--N", "3", "--seed", "5"],
    ["gram", "--level", "3", "--variant", "t-infinity"],
    ["iota", "--word", "-2,-1"],
    ["milne", "--seq", "2,1,1"],
]


class Determinism(unittest.TestCase):
    def test_identical_output(self):
        for argv in DETERMINISM:
            for fmt in ("text", "json"):
                with self.subTest(argv=argv, fmt=fmt):
                    a = run(*argv, "--format", fmt)
                    b = run(*argv, "--format", fmt)
                    self.assertEqual(a.returncode, 0, a.stderr)
                    self.assertEqual(a.stdout, b.stdout)

    def test_seed_changes_samples(self):
        _, a = run_json("kacdet", "--level", "2", "--seed", "1")
        _, b = run_json("kacdet", "--level", "2", "--seed", "2")
        self.assertNotEqual(a["specializations"], b["specializations"])
        self.assertEqual(a["ratio_constant"], b["ratio_constant"])


SCHEMA_RUNS = [
    ["f-series", "--order", "3"],
    ["f-series", "--order", "4", "--variant", "q-root", "--N", "3"],
    ["gram", "--level", "2", "--variant", "q-root", "--N", "3", "--p", "2", "--h", "1/3"],
    ["kacdet", "--level", "2", "--variant", "t-infinity", "--seed", "3"],
    ["quotient-det", "--level", "3", "--variant", "q-minus-1"],
    ["singular", "--appendix-b", "4", "4"],
    ["singular", "--power", "2", "3", "--h", "2"],
    ["center-check", "--N", "3", "--m", "0", "--level", "2", "--kmax", "2", "--h", "1/2"],
    ["center-check", "--N", "2", "--m", "1", "--level", "3", "--kmax", "2"],
    ["hl", "--lambda", "2,1", "--basis", "P", "--to", "m"],
    ["hl", "--lambda", "2,2", "--basis", "Qp", "--to", "s", "--N", "2"],
    ["kostka", "--degree", "4", "--q", "1/2"],
    ["milne", "--seq", "1,-1,2"],
    ["char", "--kind", "witten", "--order", "6"],
    ["iota", "--word", "-1,-1", "--w", "2"],
    ["iota", "--word", "-3", "--tinf", "--q", "1/3"],
    ["pi-matrix", "--level", "2", "--sqrt-q", "2"],
    ["identity-suite", "--list"],
    ["identity-suite", "characters"],
]


class Schema(unittest.TestCase):
    def test_outputs_validate(self):
        for argv in SCHEMA_RUNS:
            with self.subTest(argv=argv):
                r, out = run_json(*argv)
                self.assertIn(r.returncode, (0, 1), r.stderr)
                errors = [e.message for e in VALIDATOR.iter_errors(out)]
                self.assertEqual(errors, [])

    def test_schema_rejects_malformed(self):
        _, out = run_json("kostka", "--degree", "2")
        out["matrix"][0][0] = "1.5e3"
        self.assertFalse(VALIDATOR.is_valid(out))

    def test_vector_round_trip(self):
        _, out = run_json("singular", "--appendix-b", "3", "3", "--p", "2", "--h", "5/3")
        r, again = run_json("singular", "--vector", json.dumps(out["vector"]), "--variant", "q-root", "--N", "3", "--p", "2", "--h", "5/3")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(again["vector"], out["vector"])
        self.assertEqual(again["verdict"], "singular")


if __name__ == "__main__":
    unittest.main(verbosity=2)
