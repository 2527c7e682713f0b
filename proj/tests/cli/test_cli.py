# Copyright 2026 The spinglass Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the spinglass CLI: exit codes, results, schemas."""

import json
import os
import pathlib
import subprocess
import tempfile
import unittest

import jsonschema
import referencing

CLI = os.environ["SPINGLASS_CLI"]
ROOT = pathlib.Path(os.environ["SPINGLASS_ROOT"])
DATA = ROOT / "data"
SCHEMAS = ROOT / "schemas"


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((path.name, referencing.Resource.from_contents(schema)))
    return referencing.Registry().with_resources(resources)


REGISTRY = _registry()


def run(*args, expect=0):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args}: exit {proc.returncode}, wanted {expect}\n{proc.stderr}")
    return proc


def run_json(*args, expect=0):
    return json.loads(run(*args, expect=expect).stdout)


def check(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


class Solve(unittest.TestCase):
    instance = DATA / "instances" / "three_spin.txt"

    def test_chunked_spectrum(self):
        doc = run_json("solve", self.instance, "--solver", "chunked", "--k", 5)
        check(doc, "spectrum")
        self.assertEqual([e["energy"] for e in doc["entries"]], [-5, -5, -5, -1, 3])

    def test_gray_reports_ising_energy(self):
        doc = run_json("solve", self.instance, "--solver", "gray")
        self.assertEqual(doc["entries"][0]["energy"], -5)

    def test_naive_and_qubo_input_agree(self):
        qubo = run("convert", self.instance, "--from", "ising").stdout
        with tempfile.TemporaryDirectory() as tmp:
            path = pathlib.Path(tmp) / "q.txt"
            path.write_text(qubo)
            a = run_json("solve", path, "--format", "qubo", "--solver", "naive", "--k", 8)
        b = run_json("solve", self.instance, "--solver", "naive", "--k", 8)
        self.assertEqual(a, b)

    def test_exit_codes(self):
        run("solve", self.instance, "--solver", "bogus", expect=2)
        run("solve", DATA / "missing.txt", expect=2)
        run("solve", DATA / "railway" / "line216_shaped.json", expect=2)
        run("solve", DATA / "instances" / "chain30.txt", "--solver", "naive", expect=3)
        run("solve", self.instance, "--solver", "sa", expect=2)
        run("solve", self.instance, "--solver", "mps", "--dbeta", "0.3", expect=4)

    def test_manifest_and_determinism(self):
        with tempfile.TemporaryDirectory() as tmp:
            outs = []
            for name in ("a.json", "b.json"):
                out = pathlib.Path(tmp) / name
                run("solve", self.instance, "--solver", "chunked", "--k", 8, "-o", out)
                outs.append(out.read_bytes())
                manifest = json.loads((pathlib.Path(str(out) + ".manifest.json")).read_text())
                check(manifest, "manifest")
                self.assertEqual(manifest["command"], "solve")
                self.assertEqual(manifest["parameters"]["k"], 8)
            self.assertEqual(outs[0], outs[1])

    def test_monte_carlo(self):
        a = run_json("solve", self.instance, "--solver", "pt", "--seed", 3,
                     "--sweeps", 50, "--replicas", 4, "--workers", 1)
        b = run_json("solve", self.instance, "--solver", "pt", "--seed", 3,
                     "--sweeps", 50, "--replicas", 4, "--workers", 2)
        check(a, "mc_result")
        for key in ("best_state", "best_energy", "sample_energies", "success_count"):
            self.assertEqual(a[key], b[key])
        doc = run_json("solve", self.instance, "--solver", "sa", "--seed", 1,
                       "--sweeps", 100, "--restarts", 10)
        check(doc, "mc_result")
        self.assertEqual(doc["best_energy"], -5)

    def test_tensor_network_solvers(self):
        doc = run_json("solve", self.instance, "--solver", "tn", "--clusters",
                       DATA / "instances" / "three_spin_clusters.txt", "--k", 5,
                       "--beta", 1, "--cutoff", "1e-9")
        check(doc, "tn_result")
        self.assertEqual([e["energy"] for e in doc["entries"]], [-5, -5, -5, -1, 3])
        doc = run_json("solve", self.instance, "--solver", "tn", "--rows", 1, "--cols", 3)
        self.assertEqual(doc["entries"][0]["energy"], -5)
        doc = run_json("solve", self.instance, "--solver", "mps", "--bond", 4, "--k", 2)
        check(doc, "tn_result")
        self.assertEqual([e["energy"] for e in doc["entries"]], [-5, -5])


class Railway(unittest.TestCase):
    line216 = DATA / "railway" / "line216_shaped.json"
    line191 = DATA / "railway" / "line191_shaped.json"

    def test_compile_counts(self):
        self.assertEqual(run("railway", "compile", self.line216).stdout.split()[0], "48")
        self.assertEqual(run("railway", "compile", self.line191).stdout.split()[0], "198")
        with tempfile.TemporaryDirectory() as tmp:
            run("railway", "compile", self.line216, "-o", tmp)
            variables = json.loads((pathlib.Path(tmp) / "variables.json").read_text())
            check(variables, "variable_map")
            self.assertEqual(len(variables["variables"]), 48)
            check(json.loads((pathlib.Path(tmp) / "manifest.json").read_text()), "manifest")

    def test_solve_onehot_passes(self):
        doc = run_json("railway", "solve", self.line216, "--oracle", "onehot")
        check(doc, "railway_solution")
        self.assertTrue(doc["onehot_valid"])
        self.assertTrue(doc["report"]["passed"])

    def test_validate_conflict(self):
        proc = run("railway", "validate", self.line216,
                   DATA / "railway" / "line216_conflict_delays.json", expect=1)
        report = json.loads(proc.stdout)
        check(report, "schedule_report")
        self.assertFalse(report["checks"]["deadlock"]["passed"])
        self.assertIn("deadlock", proc.stderr)


class Dynamics(unittest.TestCase):
    qubit = DATA / "dynamics" / "qubit_rotation.json"

    def test_rotation(self):
        doc = run_json("dynamics", self.qubit)
        check(doc, "trajectory")
        self.assertEqual(doc["normalized"], [[1, 0], [0, 1], [-1, 0], [0, -1]])
        self.assertEqual(doc["variables"], 16)

    def test_truncation_keeps_result(self):
        a = run_json("dynamics", self.qubit)
        b = run_json("dynamics", self.qubit, "--truncate", 6)
        self.assertEqual(a["raw"], b["raw"])

    def test_energy_form_needs_definite_matrix(self):
        proc = run("dynamics", DATA / "dynamics" / "growth.json", "--objective", "energy", expect=4)
        self.assertIn("positive-definite", proc.stderr)


class Misc(unittest.TestCase):
    def test_tts(self):
        doc = run_json("tts", "--time", 1, "--p-succ", 0.5, "--p-target", 0.99)
        check(doc, "tts")
        self.assertAlmostEqual(doc["tts"], 6.643856189774724, places=9)
        doc = run_json("tts", "--time", 2.5, "--p-succ", 0.99, "--p-target", 0.99)
        self.assertAlmostEqual(doc["tts"], 2.5, places=12)
        doc = run_json("tts", "--time", 1, "--p-succ", 0)
        self.assertTrue(doc["unbounded"])
        self.assertIsNone(doc["tts"])

    def test_topology(self):
        doc = run_json("topology", "--topology", "chimera", "--size", 16, "--summary")
        check(doc, "topology_summary")
        self.assertEqual((doc["nodes"], doc["edges"]), (2048, 6016))
        self.assertTrue(doc["bipartite"])
        doc = run_json("topology", "--topology", "pegasus", "--size", 16, "--summary")
        check(doc, "topology_summary")
        self.assertEqual(doc["nodes"], 5760)
        self.assertIsNone(doc["bipartite"])
        edges = run("topology", "--topology", "chimera", "--size", 1).stdout.split("\n")
        self.assertEqual(len([e for e in edges if e and not e.startswith("#")]), 16)

    def test_embed_and_resolve(self):
        emb = DATA / "instances" / "path_embedding.json"
        text = run("embed", DATA / "instances" / "path.txt", "--embedding", emb,
                   "--topology", "chimera", "--size", 1, "--alpha", 2).stdout
        self.assertIn("1 5 -2", text)
        with tempfile.TemporaryDirectory() as tmp:
            samples = pathlib.Path(tmp) / "s.txt"
            samples.write_text("1 1 1 1 -1 -1 1 1\n-1 1 1 -1 -1 1 1 1\n")
            out = run("resolve", samples, "--embedding", emb, "--strategy", "discard").stdout
            self.assertEqual(out, "-1 -1 1\n")
            run("resolve", samples, "--embedding", emb, expect=2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
