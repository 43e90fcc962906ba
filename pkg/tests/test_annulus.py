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

import math
import unittest

import numpy as np

from rhtools.annulus import (
    AnnulusDomain,
    core_loop,
    covering_map,
    lift_path,
    lifted_approach_angles,
    monodromy,
    solve_annulus,
)
from rhtools.boundary import TWO_PI, Orientation
from rhtools.errors import (
    ContinuationError,
    DomainError,
    ResolutionError,
    ValidationError,
)

from . import const, mode

R = 0.5


def harmonic_measure(n=256, r=R):
    domain = AnnulusDomain(r)
    return solve_annulus(
        r,
        const(1.0, n=n, circle=domain.outer),
        const(1.0, n=n, circle=domain.outer),
        const(1.0, n=n, circle=domain.inner),
        const(0.0, n=n, circle=domain.inner),
    )


SMALL_R = math.exp(-math.pi)


def cosine_data(r, n, m=1):
    domain = AnnulusDomain(r)
    return (
        const(1.0, n=n, circle=domain.outer),
        mode(m, part="re", n=n, circle=domain.outer),
        const(1.0, n=n, circle=domain.inner),
        const(0.0, n=n, circle=domain.inner),
    )


def cosine_solution(z, r):
    # the harmonic function with data cos θ on |z| = 1 and 0 on |z| = r
    rho = np.abs(z)
    return (rho - r**2 / rho) / (1.0 - r**2) * np.cos(np.angle(z))


class AnnulusDomainTestCase(unittest.TestCase):
    def test_circles(self):
        domain = AnnulusDomain(R)

        self.assertEqual(domain.outer.radius, 1.0)
        self.assertEqual(domain.inner.radius, R)
        self.assertEqual(domain.inner.orientation, Orientation.INNER)
        self.assertEqual(domain.core_radius, 0.75)
        self.assertEqual(domain.boundary, (domain.outer, domain.inner))

    def test_contains(self):
        domain = AnnulusDomain(R)

        self.assertTrue(domain.contains(0.75j))
        self.assertFalse(domain.contains(0.25))
        self.assertFalse(domain.contains(1.0))

    def test_invalid_radius(self):
        for r in (0.0, 1.0, -0.5):
            with self.subTest(r=r):
                with self.assertRaises(DomainError):
                    AnnulusDomain(r)


class CoveringMapTestCase(unittest.TestCase):
    def setUp(self):
        self.cover = covering_map(math.exp(-math.pi))
        rng = np.random.default_rng(7)
        radius = 0.9 * np.sqrt(rng.random(100))
        self.w = radius * np.exp(TWO_PI * 1j * rng.random(100))

    def test_invalid_radius(self):
        with self.assertRaises(DomainError):
            covering_map(1.0)

        with self.assertRaises(DomainError):
            covering_map(0.0)

    def test_constants(self):
        cover = covering_map(R)

        self.assertAlmostEqual(cover.a, math.log(2.0) / math.pi)
        self.assertAlmostEqual(math.log(cover.mu), TWO_PI / cover.a)

    def test_value_at_origin(self):
        self.assertAlmostEqual(
            complex(self.cover.G(0.0)), math.exp(-math.pi / 2)
        )

    def test_maps_into_annulus(self):
        modulus = np.abs(self.cover.G(self.w))

        self.assertTrue(np.all(modulus > self.cover.r))
        self.assertTrue(np.all(modulus < 1.0))

    def test_derivative(self):
        h = 1e-6
        difference = (self.cover.G(self.w + h) - self.cover.G(self.w - h)) / (
            2 * h
        )

        np.testing.assert_allclose(
            self.cover.dG(self.w), difference, rtol=1e-6, atol=1e-8
        )

    def test_deck_invariance(self):
        for power in (1, -1):
            with self.subTest(power=power):
                np.testing.assert_allclose(
                    self.cover.G(self.cover.deck(self.w, power)),
                    self.cover.G(self.w),
                    atol=1e-10,
                )

        np.testing.assert_allclose(
            self.cover.deck(self.cover.deck(self.w), -1), self.w, atol=1e-9
        )

    def test_deck_in_log_coordinates(self):
        cover = covering_map(R)
        w = cover.branch(0.75 * np.exp(-3.0j), 0)

        self.assertAlmostEqual(
            complex(cover.log_T(cover.deck(w)) - cover.log_T(w)),
            TWO_PI / cover.a,
            places=8,
        )

    def test_branches(self):
        z = np.array([0.1 * np.exp(2.0j), 0.5, 0.9 * np.exp(-1.0j)])

        for sheet in (-1, 0, 1):
            with self.subTest(sheet=sheet):
                w = self.cover.branch(z, sheet)

                self.assertTrue(np.all(np.abs(w) < 1.0))
                np.testing.assert_allclose(self.cover.G(w), z, atol=1e-10)
                np.testing.assert_array_equal(
                    self.cover.sheet_of(w), sheet
                )

    def test_neighbouring_sheets_differ_by_deck(self):
        z = 0.3 * np.exp(0.5j)

        np.testing.assert_allclose(
            self.cover.deck(self.cover.branch(z, 0)),
            self.cover.branch(z, 1),
            atol=1e-10,
        )

    def test_branch_outside_annulus(self):
        with self.assertRaises(DomainError):
            self.cover.branch(0.01)

        with self.assertRaises(DomainError):
            self.cover.branch(np.array([0.5, 1.0]))

    def test_boundary_point(self):
        component, angle = self.cover.boundary_point(1.5 * math.pi)
        self.assertEqual(component, Orientation.OUTER)
        self.assertAlmostEqual(min(angle, TWO_PI - angle), 0.0)

        component, angle = self.cover.boundary_point(0.5 * math.pi)
        self.assertEqual(component, Orientation.INNER)
        self.assertAlmostEqual(min(angle, TWO_PI - angle), 0.0)

        w = (1.0 - 1e-9) * np.exp(1.5j * math.pi)
        self.assertAlmostEqual(complex(self.cover.G(w)), 1.0, places=6)

    def test_boundary_point_at_fixed_angle(self):
        for theta in (0.0, math.pi):
            with self.subTest(theta=theta):
                with self.assertRaises(DomainError):
                    self.cover.boundary_point(theta)

    def test_pulled_jumps(self):
        step = TWO_PI / 256
        found, dropped = self.cover.pulled_jumps(
            [0.5], Orientation.OUTER, step
        )

        self.assertEqual(len(found), 1)
        self.assertEqual(dropped, 1)
        component, angle = self.cover.boundary_point(found[0])
        self.assertEqual(component, Orientation.OUTER)
        self.assertAlmostEqual(angle, 0.5)

        found, dropped = self.cover.pulled_jumps(
            [0.5], Orientation.INNER, step
        )
        component, angle = self.cover.boundary_point(found[0])
        self.assertEqual(component, Orientation.INNER)
        self.assertAlmostEqual(angle, 0.5)

    def test_pull_back(self):
        domain = AnnulusDomain(self.cover.r)
        pulled = self.cover.pull_back(
            const(1.0, n=64, circle=domain.outer),
            const(0.0, n=64, circle=domain.inner),
        )

        self.assertEqual(pulled.jumps, (0.0, math.pi))
        np.testing.assert_array_equal(pulled.real[:32], 0.0)
        np.testing.assert_array_equal(pulled.real[32:], 1.0)
        self.assertEqual(complex(pulled.value_at(1.5 * math.pi)), 1.0)

    def test_pull_back_of_a_mode(self):
        domain = AnnulusDomain(self.cover.r)
        pulled = self.cover.pull_back(
            mode(1, part="re", n=64, circle=domain.outer),
            const(0.0, n=64, circle=domain.inner),
        )
        theta = 1.5 * math.pi

        self.assertAlmostEqual(complex(pulled.value_at(theta)), 1.0)


class LiftPathTestCase(unittest.TestCase):
    def setUp(self):
        self.cover = covering_map(R)

    def test_there_and_back(self):
        path = [0.6, 0.6 * np.exp(1.0j), 0.9 * np.exp(1.0j), 0.6]
        start = complex(self.cover.branch(path[0]))

        lifted = lift_path(self.cover, path, start)

        self.assertEqual(lifted.shape, (4,))
        np.testing.assert_allclose(self.cover.G(lifted), path, atol=1e-10)
        self.assertAlmostEqual(lifted[-1], start, places=8)

    def test_core_loop_advances_one_deck_step(self):
        start = -0.75
        w = complex(self.cover.branch(start))
        lifted = lift_path(self.cover, core_loop(start), w)

        self.assertAlmostEqual(
            complex(self.cover.log_T(lifted[-1]) - self.cover.log_T(w)),
            TWO_PI / self.cover.a,
            places=6,
        )

    def test_core_loop(self):
        loop = core_loop(0.75j, vertices=8)

        self.assertEqual(loop.shape, (9,))
        self.assertAlmostEqual(loop[0], 0.75j)
        self.assertAlmostEqual(loop[-1], 0.75j)
        self.assertAlmostEqual(loop[2], -0.75)

    def test_path_leaves_annulus(self):
        start = complex(self.cover.branch(0.75))

        with self.assertRaises(DomainError):
            lift_path(self.cover, [0.75, 0.4], start)

        with self.assertRaises(DomainError):
            lift_path(self.cover, [0.75, 1.0], start)

    def test_start_branch_mismatch(self):
        with self.assertRaises(ValidationError) as cm:
            lift_path(self.cover, [0.75, 0.75j], 0j)

        self.assertEqual(cm.exception.argument, "start_branch")

    def test_step_halved_too_often(self):
        start = complex(self.cover.branch(0.75))

        with self.assertRaises(ContinuationError):
            lift_path(self.cover, [0.75, 0.75j], start, max_halvings=0)

    def test_lifted_approaches_are_nontangential(self):
        ts = [1e-2, 1e-3, 1e-4]

        for component in (Orientation.OUTER, Orientation.INNER):
            with self.subTest(component=component):
                angles = lifted_approach_angles(
                    self.cover, 1.0, ts, component
                )

                self.assertTrue(np.all(angles < math.pi / 4))
                self.assertLess(angles[-1], 1e-2)


class HarmonicMeasureTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.sol = harmonic_measure()

    def expected(self, z):
        return 1.0 + np.log(np.abs(z)) / math.log(1.0 / R)

    def test_value(self):
        value = self.sol.evaluate(0.75)

        self.assertLess(abs(value.real - 0.58496), 5e-3)
        self.assertAlmostEqual(value.real, self.expected(0.75), places=8)

    def test_sheets(self):
        for sheet, z in (
            (0, 0.6 * np.exp(1.0j)),
            (0, 0.9 * np.exp(-2.0j)),
            (1, 0.75 * np.exp(-2.8j)),
            (-1, 0.75 * np.exp(2.8j)),
        ):
            with self.subTest(sheet=sheet, z=z):
                self.assertAlmostEqual(
                    self.sol.evaluate(z, sheet).real,
                    self.expected(z),
                    places=6,
                )

    def test_monodromy(self):
        increment = monodromy(self.sol)

        self.assertAlmostEqual(increment, 1j * TWO_PI / math.log(2.0), places=6)
        self.assertAlmostEqual(abs(increment), 9.0647, places=4)

    def test_continuation_matches_next_sheet(self):
        values = self.sol.evaluate_along(
            core_loop(self.sol.basepoint, 64), self.sol.base_branch
        )

        self.assertAlmostEqual(
            values[-1], self.sol.evaluate(self.sol.basepoint, 1), places=8
        )
        self.assertAlmostEqual(values[0], self.sol.evaluate(self.sol.basepoint))

    def test_residual_does_not_depend_on_sheet(self):
        theta = np.array([-2.8, -2.5])
        z = (1.0 - 1e-4) * np.exp(1j * theta)

        np.testing.assert_allclose(
            self.sol.residual(Orientation.OUTER, theta, z, 0),
            self.sol.residual(Orientation.OUTER, theta, z, 1),
            atol=1e-8,
        )

    def test_residual(self):
        theta = np.array([0.3, 2.0, -1.0])
        t = 1e-5

        outer = self.sol.residual(
            Orientation.OUTER, theta, (1.0 - t) * np.exp(1j * theta)
        )
        inner = self.sol.residual(
            Orientation.INNER, theta, R * (1.0 + t) * np.exp(1j * theta)
        )

        self.assertLess(float(np.max(outer)), 1e-4)
        self.assertLess(float(np.max(inner)), 1e-4)

    def test_interior_rows(self):
        rows = self.sol.interior_rows(
            [0.75 * np.exp(-2.8j)], sheets=(0, 1)
        )

        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0][2], 0)
        self.assertEqual(rows[1][2], 1)
        self.assertAlmostEqual(rows[0][3], rows[1][3], places=8)

    def test_basepoint(self):
        self.assertEqual(self.sol.basepoint, -0.75)
        self.assertAlmostEqual(
            complex(self.sol.cover.G(self.sol.base_branch)), -0.75
        )


class GridReachTestCase(unittest.TestCase):
    def test_reach(self):
        self.assertLess(covering_map(R).grid_reach(256), math.pi)
        self.assertGreater(covering_map(SMALL_R).grid_reach(4096), math.pi)

    def test_samples_for_sheet(self):
        for r in (R, SMALL_R, 0.1):
            with self.subTest(r=r):
                cover = covering_map(r)
                self.assertAlmostEqual(
                    cover.grid_reach(cover.samples_for_sheet()), math.pi
                )

        self.assertGreater(covering_map(R).samples_for_sheet(), 4e6)


class NonConstantDataTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.sol = solve_annulus(SMALL_R, *cosine_data(SMALL_R, 4096))

    def test_values(self):
        for z in (0.5 * np.exp(0.7j), 0.3 * np.exp(-1.2j), 0.8 * np.exp(0.2j)):
            with self.subTest(z=z):
                expected = cosine_solution(z, SMALL_R)
                self.assertLess(abs(self.sol.evaluate(z).real - expected), 1e-2)

    def test_residual(self):
        theta = np.array([0.3, -0.5, 1.0])
        t = 1e-3

        outer = self.sol.residual(
            Orientation.OUTER, theta, (1.0 - t) * np.exp(1j * theta)
        )
        inner = self.sol.residual(
            Orientation.INNER, theta, SMALL_R * (1.0 + t) * np.exp(1j * theta)
        )

        self.assertLess(float(np.max(outer)), 1e-2)
        self.assertLess(float(np.max(inner)), 1e-2)

    def test_data_beyond_grid_reach(self):
        with self.assertRaises(ResolutionError) as cm:
            solve_annulus(R, *cosine_data(R, 256))

        self.assertIn("phi_outer", str(cm.exception))

    def test_data_not_resolved_on_sheet(self):
        with self.assertRaises(ResolutionError) as cm:
            solve_annulus(SMALL_R, *cosine_data(SMALL_R, 128, m=3))

        self.assertIn("phi_outer changes", str(cm.exception))

    def test_rotating_coefficient(self):
        domain = AnnulusDomain(R)

        with self.assertRaises(ResolutionError) as cm:
            solve_annulus(
                R,
                mode(1, n=256, circle=domain.outer),
                const(1.0, n=256, circle=domain.outer),
                const(1.0, n=256, circle=domain.inner),
                const(0.0, n=256, circle=domain.inner),
            )

        self.assertIn("lambda_outer", str(cm.exception))


class CoefficientTestCase(unittest.TestCase):
    def solve(self, r, lam_outer, lam_inner, n=256):
        domain = AnnulusDomain(r)
        return solve_annulus(
            r,
            const(lam_outer, n=n, circle=domain.outer),
            const(1.0, n=n, circle=domain.outer),
            const(lam_inner, n=n, circle=domain.inner),
            const(0.0, n=n, circle=domain.inner),
        )

    def test_same_constant_on_both_circles(self):
        sol = self.solve(R, 1j, 1j)

        # Re{-i·f} = Im f carries the harmonic measure
        self.assertAlmostEqual(sol.evaluate(0.75).imag, 0.58496, places=4)

    def test_unequal_coefficients(self):
        for r in (R, SMALL_R):
            with self.subTest(r=r):
                with self.assertRaises(ResolutionError) as cm:
                    self.solve(r, 1.0, 1j)

                self.assertIn("fixed point", str(cm.exception))


class SolveAnnulusTestCase(unittest.TestCase):
    def test_invalid_radius(self):
        with self.assertRaises(DomainError):
            harmonic_measure(n=16, r=1.5)

    def test_data_on_wrong_circle(self):
        domain = AnnulusDomain(R)

        with self.assertRaises(ValidationError) as cm:
            solve_annulus(
                R,
                const(1.0, n=16, circle=domain.outer),
                const(1.0, n=16, circle=domain.outer),
                const(1.0, n=16, circle=domain.outer),
                const(0.0, n=16, circle=domain.inner),
            )

        self.assertEqual(cm.exception.argument, "lambda_inner")

    def test_complex_data(self):
        domain = AnnulusDomain(R)

        with self.assertRaises(ValidationError) as cm:
            solve_annulus(
                R,
                const(1.0, n=16, circle=domain.outer),
                const(1.0, n=16, circle=domain.outer),
                const(1.0, n=16, circle=domain.inner),
                const(1j, n=16, circle=domain.inner),
            )

        self.assertEqual(cm.exception.argument, "phi_inner")

    def test_evaluate_outside(self):
        sol = harmonic_measure(n=16)

        with self.assertRaises(DomainError):
            sol.evaluate(0.25)

    def test_data(self):
        sol = harmonic_measure(n=16)

        self.assertIs(sol.data(Orientation.OUTER), sol.outer_data)
        self.assertIs(sol.data("inner"), sol.inner_data)


if __name__ == "__main__":
    unittest.main()
