#!/usr/bin/env python3
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Functional tests to determine whether each script can execute successfully"""
import contextlib
import csv
import io
import os
import subprocess
import sys
import unittest
from unittest import mock
from tempfile import TemporaryDirectory

from fgldpc.constants import CSV_HEADER
from fgldpc.scripts import _get_subcommands

CWD = os.path.dirname(__file__)
TEST_DIR = os.path.join(CWD, "..", "data", "test")


class TestFgldpcScripts(unittest.TestCase):
    def setUp(self):
        self.tmp = TemporaryDirectory()
        self.sweep_config = os.path.join(TEST_DIR, "sweep.yaml")
        self.toy_alist = os.path.join(TEST_DIR, "toy.alist")

    def tearDown(self):
        self.tmp.cleanup()

    def out(self, name):
        return os.path.join(self.tmp.name, name)

    def read_csv(self, path):
        with open(path) as fh:
            return list(csv.DictReader(fh))

    def test_subcommands(self):
        self.assertEqual(
            sorted(_get_subcommands()), ["build-code", "rank", "sweep", "tune"]
        )

    def test_readme_covers_every_subcommand(self):
        with open(os.path.join(CWD, "..", "README.md")) as fh:
            readme = fh.read()
        for subcommand in _get_subcommands():
            self.assertIn(f"fgldpc {subcommand} ", readme)
        self.assertIn("## Hardware sharing", readme)

    def test_list_subcommands(self):
        from fgldpc.scripts import main

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["fgldpc", "--list-subcommands"])
        self.assertEqual(stdout.getvalue().strip(), "build-code rank sweep tune")

    def test_relay(self):
        from fgldpc.scripts import main

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["fgldpc", "rank", "--code", "pg:2"])
        self.assertIn("rank=", stdout.getvalue())

    def test_build_code(self):
        from fgldpc.scripts.build_code import main

        alist = self.out("pg4.alist")
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["--code", "pg:4", "--alist", alist])
        self.assertIn("| K ", stdout.getvalue())
        self.assertIn("191", stdout.getvalue())
        with open(alist) as fh:
            self.assertEqual(fh.readline().split(), ["273", "273"])

    def test_rank(self):
        from fgldpc.scripts.rank import main

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["--code", "eg:5"])
        self.assertEqual(stdout.getvalue().strip(), "eg:5: N=1023 M=1023 rank=242 K=781")

    def test_rank_of_alist(self):
        from fgldpc.scripts.rank import main

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["--code", f"alist:{self.toy_alist}"])
        self.assertIn("N=6 M=3 rank=3 K=3", stdout.getvalue())

    def test_sweep(self):
        from fgldpc.scripts.sweep import main

        out = self.out("sweep.csv")
        main(
            [
                "--code", "eg:2",
                "--scheme", "lf-wbf:2,2,2,0.5,0.2",
                "--scheme", "nms:1.5",
                "--hybrid", "lz-wbf:1.5+nms:1.5",
                "--sigma", "0.6,0.7",
                "--imax", "15",
                "--min-errors", "3",
                "--max-frames", "30",
                "--batch-size", "10",
                "--out", out,
            ]
        )
        rows = self.read_csv(out)
        self.assertEqual(len(rows), 2 * 2 + 3 * 2)
        self.assertEqual(list(rows[0]), list(CSV_HEADER))
        self.assertEqual([r["sigma"] for r in rows[:2]], ["0.6", "0.7"])

    def test_sweep_from_config(self):
        from fgldpc.scripts.sweep import main

        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            main(["--config", self.sweep_config, "--log-level", "WARNING"])
        lines = stdout.getvalue().splitlines()
        self.assertEqual(lines[0], ",".join(CSV_HEADER))
        self.assertEqual(len(lines), 1 + 2 * 2 + 3 * 2)

    def test_sweep_configuration_errors(self):
        from fgldpc.scripts.sweep import main

        bad = [
            ["--code", "eg:2", "--scheme", "lz-wbf", "--sigma", "0.6"],  # no preset
            ["--code", "eg:9", "--scheme", "nms:1.5", "--sigma", "0.6"],
            ["--code", "eg:2", "--scheme", "nms:1.5"],
            ["--code", "eg:2", "--hybrid", "nms:1.5+lz-wbf:1.5", "--sigma", "0.6"],
            ["--code", "eg:2", "--scheme", "nms:1.5", "--sigma", "0.6", "--workers", "0"],
            ["--scheme", "nms:1.5", "--sigma", "0.6"],
            ["--code", "eg:2", "--scheme", "nms:1.5", "--sigma", "0.6",
             "--out", os.path.join(self.tmp.name, "missing", "out.csv")],
        ]
        for args in bad:
            with self.subTest(args=args):
                with contextlib.redirect_stderr(io.StringIO()):
                    with self.assertRaises(SystemExit) as cm:
                        main(args)
                self.assertEqual(cm.exception.code, 2)

    def test_tune(self):
        from fgldpc.scripts.tune import main

        out = self.out("tune.csv")
        with contextlib.redirect_stderr(io.StringIO()) as stderr:
            main(
                [
                    "--code", "eg:2",
                    "--variant", "wz-wbf",
                    "--sigma", "0.7",
                    "--frames", "20",
                    "--population", "6",
                    "--generations", "3",
                    "--out", out,
                ]
            )
        rows = self.read_csv(out)
        # the search may stop early once the whole population scores the same
        generations = [int(r["generation"]) for r in rows]
        self.assertEqual(generations, list(range(1, len(rows) + 1)))
        self.assertLessEqual(len(rows), 3)
        self.assertEqual(len(rows[-1]["best_vector"].split()), 2)
        self.assertIn("differential evolution", stderr.getvalue())

    def test_tune_needs_parameters(self):
        from fgldpc.scripts.tune import main

        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main(["--code", "eg:2", "--variant", "lp-wbf", "--sigma", "0.7"])
        self.assertEqual(cm.exception.code, 2)

    def test_tune_rejects_unwritable_output_before_searching(self):
        from fgldpc.scripts.tune import main

        missing = os.path.join(self.tmp.name, "missing", "tune.csv")
        with mock.patch("fgldpc.scripts.tune.tune") as search:
            with contextlib.redirect_stderr(io.StringIO()):
                with self.assertRaises(SystemExit) as cm:
                    main(
                        [
                            "--code", "eg:2",
                            "--variant", "wz-wbf",
                            "--sigma", "0.7",
                            "--frames", "20",
                            "--out", missing,
                        ]
                    )
        self.assertEqual(cm.exception.code, 2)
        search.assert_not_called()

    def test_scripts_run_as_modules(self):
        result = subprocess.run(
            [sys.executable, "-m", "fgldpc.scripts.rank", "--code", "pg:3"],
            capture_output=True,
            text=True,
            check=True,
        )
        self.assertEqual(result.stdout.strip(), "pg:3: N=73 M=73 rank=28 K=45")

        result = subprocess.run(
            [
                sys.executable, "-m", "fgldpc.scripts.sweep",
                "--code", "eg:2",
                "--scheme", "nms:1.5@20",
                "--sigma", "0.5,0.7",
                "--max-frames", "40",
                "--workers", "2",
            ],
            capture_output=True,
            text=True,
            check=True,
        )
        # logs stay off stdout
        self.assertEqual(result.stdout.splitlines()[0], ",".join(CSV_HEADER))
        self.assertEqual(len(result.stdout.splitlines()), 3)


if __name__ == "__main__":
    unittest.main()
