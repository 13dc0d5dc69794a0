# Copyright 2026 The dimcert developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import io
import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

from dimcert.cli import main
from dimcert.correlations.io import load_pm
from dimcert.correlations.generators import gen_toy
from dimcert.realization.realization import load_realization, verify_realization


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is None:
        code = main(argv, stdout=out, stderr=err)
    else:
        with mock.patch("sys.stdin", io.StringIO(stdin)):
            code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def generate(self, name, *args):
        code, _, err = run(["generate"] + list(args) + ["-o", self.path(name)])
        self.assertEqual(code, 0, err)
        return self.path(name)

    def test_toy_bound(self):
        toy = self.generate("toy2.json", "toy", "--m", "2")
        code, out, _ = run(["bound", toy, "--q", "uniform"])
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["raw_bound"], 4.0)
        self.assertEqual(report["dimension_lb"], 4)
        self.assertIn('"raw_bound": 4.0', out)

    def test_loose_tolerance_bound(self):
        doc = '{"type": "pm", "N": 2, "M": 1, "K": 2, "p": [[[0.9995, 0.0]], [[0.0, 0.9995]]]}'
        code, out, err = run(["bound", "-", "--tol", "1e-3"], stdin=doc)
        self.assertEqual(code, 0, err)
        report = json.loads(out)
        self.assertEqual(report["dimension_lb"], 2)
        self.assertEqual(report["trivial_ub"], 2)

    def test_pipe_into_optimized_bound(self):
        code, generated, _ = run(["generate", "rac", "--m", "2", "--beta", "0.8536"])
        self.assertEqual(code, 0)
        code, out, _ = run(["bound", "-", "--q", "optimize"], stdin=generated)
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["dimension_lb"], 2)
        self.assertEqual(report["q_source"], "optimized")
        self.assertTrue(report["optimizer"]["certified_global"])

    def test_explicit_q(self):
        toy = self.generate("toy1.json", "toy", "--m", "1")
        code, out, _ = run(["bound", toy, "--q", "1,0"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["dimension_lb"], 1)
        with open(self.path("q.json"), "w") as f:
            f.write('{"q": [0.5, 0.5]}')
        code, out, _ = run(["bound", toy, "--q", "@" + self.path("q.json")])
        self.assertEqual(json.loads(out)["dimension_lb"], 2)
        code, _, _ = run(["bound", toy, "--q", "0.5,0.6"])
        self.assertEqual(code, 2)

    def test_witness_all(self):
        mixture = self.generate("mix.json", "nonconvexity")
        code, out, _ = run(["witness", mixture, "--kind", "all"])
        self.assertEqual(code, 0)
        report = json.loads(out)["witnesses"]
        self.assertEqual(report["quadratic"]["error"], "NotBinaryError")
        self.assertEqual(report["det-w2"]["error"], "WrongScenarioError")
        self.assertFalse(report["compressibility"]["triggered"])
        self.assertEqual(report["psdrank"]["witness_kind"], "psd_rank_lb")

    def test_witness_single_kind_error(self):
        mixture = self.generate("mix.json", "nonconvexity")
        code, _, err = run(["witness", mixture, "--kind", "quadratic"])
        self.assertEqual(code, 2)
        self.assertIn("K = 3", err)

    def test_nonconvexity_components(self):
        p1 = load_pm(self.generate("p1.json", "nonconvexity", "--component", "1"))
        mixture = load_pm(self.generate("mix.json", "nonconvexity", "--mix", "0.5,0.5"))
        self.assertEqual(p1.probs[2, 0, 1], 1.)
        self.assertEqual(mixture.probs[2, 0, 1], 0.5)

    def test_validation_and_parse_errors(self):
        with open(self.path("bad.json"), "w") as f:
            f.write('{"type": "pm", "N": 1, "M": 1, "K": 2, "p": [[[0.5, 0.6]]]}')
        code, _, err = run(["bound", self.path("bad.json"), "--json-errors"])
        self.assertEqual(code, 2)
        payload = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(payload["error"], "NormalizationError")
        self.assertEqual(payload["exit_code"], 2)

        code, _, err = run(["bound", "-", "--json-errors"], stdin='{"N": 1,\n')
        self.assertEqual(code, 3)
        payload = json.loads(err.strip().splitlines()[-1])
        self.assertEqual(payload["error"], "ParseError")
        self.assertIsNotNone(payload["line"])

        code, _, _ = run(["bound", self.path("missing.json")])
        self.assertEqual(code, 3)

    def test_tolerance_flag(self):
        with open(self.path("noisy.json"), "w") as f:
            f.write('{"type": "pm", "N": 1, "M": 1, "K": 2, "p": [[[0.5, 0.5000001]]]}')
        self.assertEqual(run(["bound", self.path("noisy.json")])[0], 2)
        self.assertEqual(run(["bound", self.path("noisy.json"), "--tol", "1e-6"])[0], 0)

    def test_usage_error(self):
        self.assertEqual(run(["frobnicate"])[0], 2)
        self.assertEqual(run(["generate", "rac", "--m", "2"])[0], 2)

    def test_out_of_range(self):
        code, _, err = run(["generate", "rac", "--m", "2", "--beta", "0.2", "--json-errors"])
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(err)["error"], "OutOfRangeError")

    def test_transform_then_bell(self):
        toy = self.generate("toy2.json", "toy", "--m", "2")
        code, bell_doc, _ = run(["transform", toy])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(bell_doc)["type"], "bell")
        code, out, _ = run(["bell", "-"], stdin=bell_doc)
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertAlmostEqual(report["bound_eq2"], 4., delta=1e-9)
        self.assertEqual(report["best_integer"], 4)

    def test_rac_scan(self):
        code, out, _ = run(["rac-scan", "--m", "2", "--beta-min", "0.85", "--beta-max", "0.99", "--step", "1e-4"])
        self.assertEqual(code, 0)
        intervals = json.loads(out)["intervals"]["nayak"]
        self.assertEqual(len(intervals), 2)
        self.assertAlmostEqual(intervals[0][0], 0.89, delta=0.002)
        self.assertAlmostEqual(intervals[1][1], 0.9714, delta=0.002)

        with mock.patch("sys.stdout", new_callable=io.StringIO) as process_stdout:
            code, csv_text, _ = run(["rac-scan", "--beta-min", "0.9", "--beta-max", "0.91", "--step", "0.005",
                                     "--csv", "-"])
        self.assertEqual(code, 0)
        self.assertEqual(process_stdout.getvalue(), "", "CSV must go to the stream handed to main")
        lines = csv_text.strip().splitlines()
        self.assertEqual(lines[0], "beta,eq3_raw,eq3_lb,nayak_lb,winner")
        self.assertEqual(len(lines), 4)
        self.assertTrue(lines[1].startswith("0.90000000000000002,"))

    def test_realize(self):
        toy = self.generate("toy2.json", "toy", "--m", "2")
        code, out, _ = run(["realize", toy, "--dim", "4", "--restarts", "2", "--max-iter", "200",
                            "-o", self.path("real.json")])
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["status"], "found")
        self.assertEqual(report["seed"], 1)
        self.assertIn("note", report)
        realization = load_realization(self.path("real.json"))
        self.assertLessEqual(verify_realization(realization, gen_toy(2)), 1e-9)

        code, out, _ = run(["realize", toy, "--dim", "2"])
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["annotation"], "impossible_by_lower_bound")
        self.assertEqual(report["residual"], {"unbounded": True})

    def test_determinism_across_threads(self):
        mixture = self.generate("mix.json", "nonconvexity")
        commands = [["bound", mixture, "--q", "optimize"],
                    ["bound", mixture, "--q", "optimize", "--exact-threshold", "2", "--restarts", "6"],
                    ["realize", mixture, "--dim", "3", "--restarts", "3", "--max-iter", "100", "--seed", "5"]]
        for argv in commands:
            outputs = [run(argv + ["--threads", t])[1] for t in ("1", "1", "3")]
            self.assertEqual(outputs[0], outputs[1], argv)
            self.assertEqual(outputs[0], outputs[2], argv)

    def test_timestamps_and_verbose(self):
        toy = self.generate("toy1.json", "toy", "--m", "1")
        code, out, err = run(["bound", toy, "--timestamps", "--verbose"])
        self.assertEqual(code, 0)
        self.assertIn("generated_at", json.loads(out))
        self.assertIn("INFO bound:", err)
        self.assertNotIn("generated_at", run(["bound", toy])[1])


if __name__ == '__main__':
    unittest.main()
