# -*- coding: utf-8 -*-
# SPDX-FileCopyrightText: 2024 rh-tools contributors
#
# SPDX-License-Identifier: GPL-3.0-or-later
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

import json
import math
import unittest

import numpy as np

from rhtools.boundary import Orientation
from rhtools.errors import ConfigError
from rhtools.problem import (
    ANNULUS,
    DISK,
    DataBlock,
    OutputPaths,
    ProblemConfig,
    SolverParams,
    VerifyParams,
)

from . import PROBLEMS

PHI = {"kind": "const", "params": {"value": 0}}


def disk(**changes):
    data = {"domain": {"type": "disk"}, "boundary": {"phi": PHI}}
    data.update(changes)
    return data


def annulus(**changes):
    data = {
        "domain": {"type": "annulus", "r": 0.5},
        "outer": {"phi": PHI},
        "inner": {"phi": PHI},
    }
    data.update(changes)
    return data


class LoadTestCase(unittest.TestCase):
    def test_disk(self):
        problem = ProblemConfig.load(PROBLEMS / "disk-dirichlet.json")

        self.assertEqual(problem.domain.type, DISK)
        self.assertEqual(problem.solver, SolverParams(256, 128, False))
        self.assertEqual(problem.interior_points, (0.5, -0.25j))
        self.assertEqual(problem.sheets, (0,))
        self.assertEqual(problem.family, ())

        data = problem.component("boundary")
        self.assertEqual(data.phi.kind, "fourier_mode")
        self.assertEqual(data.phi.params, {"m": 1, "part": "re"})

    def test_family_and_outputs(self):
        problem = ProblemConfig.load(PROBLEMS / "disk-mode.json")

        self.assertEqual(problem.family, (1.0, -3.7, 10.0))
        self.assertEqual(problem.outputs.coefficients, "coefficients.csv")
        self.assertEqual(problem.outputs.report, "report.csv")
        self.assertEqual(problem.verify.probes, 32)
        self.assertEqual(problem.verify.ladder_count, 4)
        self.assertEqual(problem.verify.ladder_base, 1e-2)

    def test_annulus(self):
        problem = ProblemConfig.load(PROBLEMS / "annulus-harmonic.json")

        self.assertEqual(problem.domain.type, ANNULUS)
        self.assertEqual(problem.domain.r, 0.5)
        self.assertEqual(
            [name for name, _ in problem.components], ["outer", "inner"]
        )

        lam, phi = problem.boundary_data("inner")
        self.assertEqual(lam.circle.radius, 0.5)
        self.assertEqual(lam.circle.orientation, Orientation.INNER)
        self.assertEqual(phi.n, 256)
        self.assertEqual(complex(lam.samples[3]), 1.0)

    def test_circular_domain(self):
        problem = ProblemConfig.load(PROBLEMS / "circular-annulus.json")

        self.assertEqual(problem.domain.type, ANNULUS)
        self.assertEqual(problem.domain.r, 0.5)
        self.assertEqual(problem.solver.m, 32)

    def test_three_circles(self):
        with self.assertRaises(ConfigError) as cm:
            ProblemConfig.load(PROBLEMS / "three-circles.json")

        self.assertEqual(cm.exception.field, "domain.circles")
        self.assertIn("annulus only", cm.exception.message)

    def test_malformed(self):
        with self.assertRaises(ConfigError) as cm:
            ProblemConfig.load(PROBLEMS / "malformed.json")

        self.assertEqual(cm.exception.line, 3)
        self.assertTrue(str(cm.exception).startswith("line 3: "))

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            ProblemConfig.load(PROBLEMS / "missing.json")

    def test_defaults(self):
        problem = ProblemConfig.from_dict(
            disk(),
            solver_defaults=SolverParams(64, 16, True),
            verify_defaults=VerifyParams(probes=16, tolerance=1e-5),
        )

        self.assertEqual(problem.solver, SolverParams(64, 16, True))
        self.assertEqual(problem.verify.probes, 16)
        self.assertEqual(problem.verify.tolerance, 1e-5)

    def test_inherited_mode_count_follows_grid(self):
        problem = ProblemConfig.from_dict(disk(solver={"n": 64}))

        self.assertEqual(problem.solver.m, 32)

    def test_dumps(self):
        problem = ProblemConfig.load(PROBLEMS / "disk-mode.json")
        text = problem.dumps()

        self.assertEqual(ProblemConfig.loads(text), problem)
        self.assertEqual(json.loads(text)["domain"], {"type": "disk"})

    def test_with_family(self):
        problem = ProblemConfig.from_dict(disk()).with_family([2, 3.5])

        self.assertEqual(problem.family, (2.0, 3.5))

    def test_unknown_component(self):
        problem = ProblemConfig.from_dict(disk())

        with self.assertRaises(KeyError):
            problem.component("outer")


class InvalidProblemTestCase(unittest.TestCase):
    def assertField(self, data, field):
        with self.assertRaises(ConfigError) as cm:
            ProblemConfig.from_dict(data)

        self.assertEqual(cm.exception.field, field)

    def test_not_an_object(self):
        with self.assertRaises(ConfigError):
            ProblemConfig.from_dict([1, 2])

    def test_missing_domain(self):
        self.assertField({"boundary": {"phi": PHI}}, "domain")

    def test_unknown_key(self):
        self.assertField(disk(extra=1), "extra")
        self.assertField(disk(solver={"n": 64, "k": 1}), "solver.k")

    def test_unknown_domain_type(self):
        self.assertField(disk(domain={"type": "strip"}), "domain.type")

    def test_annulus_radius(self):
        for r in (0.0, 1.0, "half", None):
            with self.subTest(r=r):
                data = annulus()
                data["domain"] = {"type": "annulus"}
                if r is not None:
                    data["domain"]["r"] = r
                self.assertField(data, "domain.r")

    def test_missing_phi(self):
        self.assertField(disk(boundary={}), "boundary.phi")

    def test_missing_component(self):
        data = annulus()
        del data["inner"]

        self.assertField(data, "inner")

    def test_component_of_other_domain(self):
        self.assertField(disk(outer={"phi": PHI}), "outer")

    def test_unknown_kind(self):
        self.assertField(
            disk(boundary={"phi": {"kind": "wavelet"}}), "boundary.phi.kind"
        )

    def test_missing_kind(self):
        self.assertField(
            disk(boundary={"phi": {"params": {}}}), "boundary.phi.kind"
        )

    def test_invalid_parameter(self):
        self.assertField(
            disk(boundary={"phi": {"kind": "const", "params": {}}}),
            "boundary.phi.params.value",
        )
        self.assertField(
            annulus(
                inner={
                    "lambda": {"kind": "fourier_mode", "params": {"m": "1"}},
                    "phi": PHI,
                }
            ),
            "inner.lambda.params.m",
        )

    def test_sum_weights(self):
        for weights in (5, "1", [1.0, 2.0]):
            with self.subTest(weights=weights):
                phi = {
                    "kind": "sum",
                    "params": {"terms": [PHI], "weights": weights},
                }
                self.assertField(
                    disk(boundary={"phi": phi}), "boundary.phi.params.weights"
                )

    def test_block_grid(self):
        self.assertField(
            disk(
                boundary={"phi": dict(PHI, n=64)},
                solver={"n": 128},
            ),
            "boundary.phi.n",
        )

    def test_block_jumps(self):
        for jumps in ([7.0], "0.5", [True]):
            with self.subTest(jumps=jumps):
                self.assertField(
                    disk(boundary={"phi": dict(PHI, jumps=jumps)}),
                    "boundary.phi.jumps",
                )

    def test_solver(self):
        self.assertField(disk(solver={"n": 100}), "solver.n")
        self.assertField(disk(solver={"n": 4}), "solver.n")
        self.assertField(disk(solver={"n": 64, "m": 33}), "solver.m")
        self.assertField(disk(solver={"n": 64, "m": 0}), "solver.m")
        self.assertField(disk(solver={"sigma": 1}), "solver.sigma")
        self.assertField(disk(solver={"n": 64.0}), "solver.n")

    def test_verify(self):
        self.assertField(disk(verify={"tolerance": 0}), "verify.tolerance")
        self.assertField(disk(verify={"probes": "8"}), "verify.probes")
        self.assertField(disk(verify={"delta_excl": -1}), "verify.delta_excl")
        self.assertField(
            disk(verify={"aperture": float("nan")}), "verify.aperture"
        )

    def test_outputs(self):
        self.assertField(
            disk(outputs={"traces": "out.csv", "report": "./out.csv"}),
            "outputs.report",
        )
        self.assertField(disk(outputs={"summary": ""}), "outputs.summary")
        self.assertField(disk(outputs={"plots": "p.csv"}), "outputs.plots")

    def test_family(self):
        self.assertField(disk(family=[1, "2"]), "family")
        self.assertField(disk(family=1.0), "family")

    def test_interior_points(self):
        self.assertField(disk(interior_points=[[1, 2, 3]]), "interior_points")

    def test_sheets(self):
        self.assertField(annulus(sheets=[]), "sheets")
        self.assertField(annulus(sheets=[0.5]), "sheets")

    def test_circular_domains(self):
        for circles in (
            [],
            [{"center": [0.1, 0], "radius": 1}],
            [{"radius": 2}],
            [{"radius": 1}, {"radius": 1}],
            [{"radius": 1}, {"center": [0], "radius": 0.5}],
        ):
            with self.subTest(circles=circles):
                data = disk(domain={"type": "circular", "circles": circles})
                with self.assertRaises(ConfigError) as cm:
                    ProblemConfig.from_dict(data)

                self.assertTrue(cm.exception.field.startswith("domain.circles"))

    def test_circular_unit_disk(self):
        problem = ProblemConfig.from_dict(
            disk(domain={"type": "circular", "circles": [{"radius": 1}]})
        )

        self.assertEqual(problem.domain.type, DISK)


class DataBlockTestCase(unittest.TestCase):
    def test_to_dict(self):
        block = DataBlock.parse(
            {"kind": "step", "params": {"a": 0, "b": 1}, "jumps": [1.0]},
            "phi",
            64,
        )

        self.assertEqual(
            block.to_dict(),
            {"kind": "step", "params": {"a": 0, "b": 1}, "jumps": [1.0]},
        )

    def test_sample(self):
        block = DataBlock("step", {"a": 0, "b": 1})
        f = block.sample(
            ProblemConfig.from_dict(annulus()).domain.circles["outer"], 64
        )

        self.assertEqual(f.jumps, (0.0, math.pi))

    def test_sample_error_without_path(self):
        with self.assertRaises(ConfigError) as cm:
            DataBlock("const").sample(
                ProblemConfig.from_dict(disk()).domain.circles["boundary"], 8
            )

        self.assertEqual(cm.exception.field, "params.value")


class BoundaryDataTestCase(unittest.TestCase):
    def load(self, lam, value=3.0):
        phi = {"kind": "const", "params": {"value": value}}
        return ProblemConfig.from_dict(
            disk(boundary={"lambda": lam, "phi": phi}, solver={"n": 64})
        )

    def test_unimodular_coefficient(self):
        problem = self.load({"kind": "fourier_mode", "params": {"m": 1}})

        lam, phi = problem.boundary_data("boundary")

        np.testing.assert_allclose(lam.samples, np.exp(1j * lam.thetas))
        np.testing.assert_allclose(phi.real, 3.0)

    def test_normalized_coefficient(self):
        problem = self.load({"kind": "const", "params": {"value": [0, 2]}})

        lam, phi = problem.boundary_data("boundary")

        np.testing.assert_allclose(lam.samples, 1j)
        np.testing.assert_allclose(phi.real, 1.5)

    def test_vanishing_coefficient(self):
        problem = self.load({"kind": "const", "params": {"value": 0}})

        with self.assertRaises(ConfigError) as cm:
            problem.boundary_data("boundary")

        self.assertEqual(cm.exception.field, "boundary.lambda")


class OutputPathsTestCase(unittest.TestCase):
    def test_defaults(self):
        paths = OutputPaths.parse({})

        self.assertEqual(paths.traces, "traces.csv")
        self.assertEqual(paths.summary, "summary.json")
        self.assertEqual(paths.monodromy, "monodromy.csv")
        self.assertIsNone(paths.coefficients)


if __name__ == "__main__":
    unittest.main()
