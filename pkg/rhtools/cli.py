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
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import numpy as np

from rhtools.annulus import AnnulusSolution, monodromy, solve_annulus
from rhtools.boundary import TWO_PI, BoundaryFunction
from rhtools.config import Config
from rhtools.disk import (
    DiskSolution,
    homogeneous_family,
    mean_value_defect,
    solve_disk,
)
from rhtools.errors import ConfigError, RhError
from rhtools.helper import (
    Table,
    error_and_exit,
    print_error,
    write_csv,
    write_json,
)
from rhtools.parser import (
    COMMAND_FAMILY,
    COMMAND_SOLVE_ANNULUS,
    COMMAND_SOLVE_DISK,
    COMMAND_VERIFY,
    create_parser,
)
from rhtools.problem import ANNULUS, DISK, ProblemConfig
from rhtools.schwarz import coefficients_rows
from rhtools.verify import (
    ResidualReport,
    StolzApproach,
    annulus_limit_check,
    nontangential_limit_check,
    radial_ladder,
)

logger = logging.getLogger(__name__)

HELP_TEXT = """
    Command line tool to solve the Riemann–Hilbert problem
    Re{conj(λ)·f} = φ on the unit disk and on an annulus, and to verify the
    boundary condition along nontangential approaches

    Examples:
      rh-solve --config problem.json solve-disk
      rh-solve --config problem.json --tolerance 1e-6 verify
      rh-solve --config problem.json family -p 1 -p -3.7 -p 10
      rh-solve --config annulus.json solve-annulus --sheets 0 1

    Exit codes:
      0  residual within tolerance
      2  solved, but the residual exceeds the tolerance
      1  error"""

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNVERIFIED = 2

INTERIOR_SAMPLES = 16
MEAN_VALUE_RADII = (0.3, 0.6)

TRACES_HEADER = ("theta", "alpha", "beta", "phi", "weight", "residual_at_r")
INTERIOR_HEADER = ("re_z", "im_z", "re_f", "im_f")
SHEET_INTERIOR_HEADER = ("re_z", "im_z", "sheet_index", "re_f", "im_f")
REPORT_HEADER = ("theta", "psi", "t", "residual", "converged")
COEFFICIENTS_HEADER = ("k", "re", "im")
MONODROMY_HEADER = ("re", "im")
PLOT_HEADER = ("theta", "value")


def _suffixed(path: Path, suffix: str) -> Path:
    return path.with_name(f"{path.stem}{suffix}{path.suffix}")


def _complex_pair(z: complex):
    return [float(z.real), float(z.imag)]


class _Run:
    def __init__(
        self,
        problem: ProblemConfig,
        directory: Path,
        *,
        tolerance: Optional[float] = None,
        emit_plot_data: bool = False,
        seed: int = 0,
        coefficients: Optional[str] = None,
        sheets: Optional[Sequence[int]] = None,
        sheet: Optional[int] = None,
        family: Optional[Sequence[float]] = None,
    ):
        self.problem = problem
        self.directory = directory
        self.tolerance = (
            problem.verify.tolerance if tolerance is None else tolerance
        )
        self.emit_plot_data = emit_plot_data
        self.rng = np.random.default_rng(seed)
        self.coefficients = coefficients or problem.outputs.coefficients
        self.sheets = tuple(sheets) if sheets else problem.sheets
        self.sheet = problem.verify.sheet if sheet is None else sheet
        self.family = (
            tuple(family) if family is not None else problem.family
        )

        verify = problem.verify
        self.approach = StolzApproach(
            radius_ladder=radial_ladder(
                verify.ladder_base, verify.ladder_count
            ),
            aperture=verify.aperture,
        )

    def path(self, name: str) -> Path:
        return self.directory / getattr(self.problem.outputs, name)

    def execute(self, command: Optional[str]) -> int:
        domain = self.problem.domain.type
        if command is None:
            command = (
                COMMAND_SOLVE_DISK if domain == DISK else COMMAND_SOLVE_ANNULUS
            )

        wanted = {
            COMMAND_SOLVE_DISK: DISK,
            COMMAND_SOLVE_ANNULUS: ANNULUS,
            COMMAND_FAMILY: DISK,
        }.get(command)
        if wanted is not None and wanted != domain:
            raise ConfigError(
                f"{command} needs a {wanted} domain, got {domain}",
                field="domain.type",
            )

        if command == COMMAND_FAMILY:
            return self.run_family()
        if domain == DISK:
            return self.run_disk(full=command != COMMAND_VERIFY)
        return self.run_annulus(full=command != COMMAND_VERIFY)

    def _disk_solution(self) -> DiskSolution:
        lam, phi = self.problem.boundary_data("boundary")
        return solve_disk(
            lam,
            phi,
            self.problem.solver.m,
            sigma=self.problem.solver.sigma,
        )

    def _disk_report(self, sol: DiskSolution) -> ResidualReport:
        return nontangential_limit_check(
            sol,
            sol.lam,
            sol.phi,
            self.approach,
            self.problem.verify.probes,
            exclusion_radius=self.problem.verify.delta_excl,
        )

    def _summary(self, report: ResidualReport) -> Dict[str, Any]:
        summary = report.summary()
        summary["passed"] = report.passes(self.tolerance)
        return summary

    def _write_report(self, path: Path, report: ResidualReport) -> None:
        write_csv(path, REPORT_HEADER, report.csv_rows())

    def _interior_points(self, inner: float, outer: float) -> np.ndarray:
        if self.problem.interior_points:
            return np.array(self.problem.interior_points)
        radius = np.sqrt(
            inner**2
            + (outer**2 - inner**2) * self.rng.random(INTERIOR_SAMPLES)
        )
        angle = TWO_PI * self.rng.random(INTERIOR_SAMPLES)
        return radius * np.exp(1j * angle)

    def _write_plot_data(self, functions: Dict[str, BoundaryFunction]):
        directory = self.path("traces").parent
        for name, function in functions.items():
            write_csv(
                directory / f"plot-{name}.csv",
                PLOT_HEADER,
                zip(
                    map(float, function.thetas),
                    map(float, function.real),
                ),
            )

    def _finish(self, summaries: Dict[str, Dict[str, Any]], extra=None):
        passed = all(summary["passed"] for summary in summaries.values())
        data = dict(extra or {})
        data.update(summaries)
        data["tolerance"] = self.tolerance
        data["passed"] = passed
        write_json(self.path("summary"), data)

        table = Table(
            heading=["Check", "Sup residual", "Probes", "Excluded", "Status"],
            rows=[
                [
                    name,
                    f"{summary['sup_residual']:.3e}",
                    summary["probes"],
                    summary["excluded"],
                    "ok" if summary["passed"] else "exceeded",
                ]
                for name, summary in summaries.items()
            ],
        )
        print(table)

        if not passed:
            logger.info("Residual exceeds tolerance %r", self.tolerance)
            return EXIT_UNVERIFIED
        return EXIT_OK

    def run_disk(self, full: bool) -> int:
        sol = self._disk_solution()
        report = self._disk_report(sol)
        self._write_report(self.path("report"), report)

        extra = {}
        if full:
            write_csv(
                self.path("traces"),
                TRACES_HEADER,
                sol.trace_rows(self.approach.radius_ladder[-1]),
            )
            write_csv(
                self.path("interior"),
                INTERIOR_HEADER,
                sol.interior_rows(self._interior_points(0.0, 0.9)),
            )
            if self.coefficients:
                path = self.directory / self.coefficients
                for suffix, rep in (("-g", sol.g), ("-B", sol.B)):
                    write_csv(
                        _suffixed(path, suffix),
                        COEFFICIENTS_HEADER,
                        coefficients_rows(rep),
                    )
            if self.emit_plot_data:
                self._write_plot_data(
                    {
                        "alpha": sol.alpha.base,
                        "beta": sol.beta,
                        "phi": sol.phi,
                        "weight": sol.weight,
                    }
                )
            extra["mean_value_defect"] = max(
                mean_value_defect(sol, rho) for rho in MEAN_VALUE_RADII
            )

        return self._finish({"boundary": self._summary(report)}, extra)

    def run_family(self) -> int:
        if not self.family:
            raise ConfigError("no family parameters given", field="family")

        base = self._disk_solution()
        summaries = {}
        values = []
        report_path = self.path("report")
        for i, c in enumerate(self.family):
            sol = homogeneous_family(base, c)
            report = self._disk_report(sol)
            self._write_report(_suffixed(report_path, f"-c{i}"), report)

            summary = self._summary(report)
            summary["c"] = c
            summaries[f"c{i}"] = summary
            values.append(complex(sol.evaluate(0j)))

        a0 = abs(complex(base.A(0j)))
        separation = min(
            (
                abs(values[i] - values[j])
                / (abs(self.family[i] - self.family[j]) * a0)
                for i in range(len(values))
                for j in range(i + 1, len(values))
                if self.family[i] != self.family[j]
            ),
            default=1.0,
        )
        return self._finish(
            summaries,
            {
                "f0": [_complex_pair(z) for z in values],
                "separation_ratio": separation,
            },
        )

    def run_annulus(self, full: bool) -> int:
        problem = self.problem
        lam_outer, phi_outer = problem.boundary_data("outer")
        lam_inner, phi_inner = problem.boundary_data("inner")
        sol = solve_annulus(
            problem.domain.r,
            lam_outer,
            phi_outer,
            lam_inner,
            phi_inner,
            modes=problem.solver.m,
            sigma=problem.solver.sigma,
        )

        reports = annulus_limit_check(
            sol,
            self.approach,
            problem.verify.probes,
            self.sheet,
            exclusion_radius=problem.verify.delta_excl,
        )
        summaries = {}
        for component, report in reports.items():
            name = component.value
            self._write_report(
                _suffixed(self.path("report"), f"-{name}"), report
            )
            summaries[name] = self._summary(report)

        extra: Dict[str, Any] = {"sheet": self.sheet}
        if full:
            self._write_annulus_outputs(sol)
            increment = monodromy(sol)
            write_csv(
                self.path("monodromy"),
                MONODROMY_HEADER,
                [(increment.real, increment.imag)],
            )
            extra["monodromy"] = _complex_pair(increment)

        return self._finish(summaries, extra)

    def _write_annulus_outputs(self, sol: AnnulusSolution) -> None:
        r = sol.domain.inner_radius
        margin = 0.1 * (1.0 - r)
        points = self._interior_points(r + margin, 1.0 - margin)
        write_csv(
            self.path("interior"),
            SHEET_INTERIOR_HEADER,
            sol.interior_rows(points, self.sheets),
        )
        if self.emit_plot_data:
            self._write_plot_data(
                {
                    "lambda-pulled": _argument_of(sol.disk_solution.lam),
                    "phi-pulled": sol.disk_solution.phi,
                    "alpha": sol.disk_solution.alpha.base,
                    "beta": sol.disk_solution.beta,
                }
            )


def _argument_of(f: BoundaryFunction) -> BoundaryFunction:
    return f.with_samples(np.angle(f.samples), expr=None)


def run(
    config_path,
    command: Optional[str] = None,
    *,
    settings: Optional[Config] = None,
    tolerance: Optional[float] = None,
    emit_plot_data: bool = False,
    seed: int = 0,
    output_dir=None,
    coefficients: Optional[str] = None,
    sheets: Optional[Sequence[int]] = None,
    sheet: Optional[int] = None,
    family: Optional[Sequence[float]] = None,
) -> int:
    """Solve and verify the problem in a problem file

    Returns:
        0 if the residual is within tolerance, 2 if it is not and 1 on
        errors
    """
    settings = settings or Config()

    try:
        problem = ProblemConfig.load(
            Path(config_path),
            solver_defaults=settings.solver_defaults(),
            verify_defaults=settings.verify_defaults(),
        )
        if tolerance is not None and not (
            tolerance > 0 and math.isfinite(tolerance)
        ):
            raise ConfigError(
                f"tolerance must be positive, got {tolerance!r}",
                field="tolerance",
            )

        directory = Path(
            output_dir or settings.get("output", "directory") or "."
        ).expanduser()
        directory.mkdir(parents=True, exist_ok=True)

        return _Run(
            problem,
            directory,
            tolerance=tolerance,
            emit_plot_data=emit_plot_data,
            seed=seed,
            coefficients=coefficients,
            sheets=sheets,
            sheet=sheet,
            family=family,
        ).execute(command)
    except (RhError, OSError) as e:
        logger.error("%s: %s", config_path, e)
        print_error(f"{config_path}: {e}")
        return EXIT_ERROR


def main():
    parser = create_parser(description=HELP_TEXT, logfilename="rh-solve.log")

    try:
        args = parser.parse_args()
    except RuntimeError as e:
        error_and_exit(str(e))

    sys.exit(
        run(
            args.config,
            args.command,
            settings=parser.settings,
            tolerance=args.tolerance,
            emit_plot_data=args.emit_plot_data,
            seed=args.seed,
            output_dir=args.output_dir,
            coefficients=getattr(args, "coefficients", None),
            sheets=getattr(args, "sheets", None),
            sheet=getattr(args, "sheet", None),
            family=getattr(args, "family", None),
        )
    )


if __name__ == "__main__":
    main()
