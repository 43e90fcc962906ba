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
"""
Residuals of the boundary condition along nontangential approaches
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from rhtools.annulus import FIXED_ANGLES, AnnulusSolution
from rhtools.boundary import (
    TWO_PI,
    UNIT_CIRCLE,
    BoundaryCircle,
    BoundaryFunction,
    Orientation,
    circular_distance,
    merge_jumps,
)
from rhtools.errors import ConfigError
from rhtools.schwarz import RESOLUTION_THRESHOLD

logger = logging.getLogger(__name__)

DEFAULT_APERTURE = math.pi / 4
DEFAULT_PROBES = 64
DEFAULT_LADDER = (1e-2, 1e-3, 1e-4)
MIN_PROBES = 8

# residual changes below this count as noise
NOISE_FLOOR = 1e-12


def radial_ladder(base: float, count: int) -> Tuple[float, ...]:
    """Geometric ladder t_k = base·10^-k, k = 0..count-1

    Raises:
        ConfigError: base outside (0, 1) or count < 2
    """
    if not 0.0 < base < 1.0:
        raise ConfigError(
            f"ladder base must lie in (0, 1), got {base!r}",
            field="verify.ladder_base",
        )
    if count < 2:
        raise ConfigError(
            f"ladder needs at least 2 rungs, got {count!r}",
            field="verify.ladder_count",
        )
    return tuple(base / 10.0**k for k in range(count))


@dataclass(frozen=True)
class StolzApproach:
    """Approaches to a boundary circle inside a cone of half-angle
    ``aperture`` around the inward normal

    Towards an outer circle a probe is c + Rζ(1 - t e^{iψ}), towards an
    inner one c + Rζ(1 + t e^{iψ}), for ψ in {0, ±aperture/2}.
    """

    radius_ladder: Tuple[float, ...] = DEFAULT_LADDER
    aperture: float = DEFAULT_APERTURE
    circle: BoundaryCircle = UNIT_CIRCLE
    boundary_angle: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.aperture < math.pi / 2:
            raise ConfigError(
                f"aperture must lie in [0, π/2), got {self.aperture!r}",
                field="verify.aperture",
            )
        ladder = tuple(float(t) for t in self.radius_ladder)
        if not ladder:
            raise ConfigError("empty radius ladder", field="verify.ladder")
        for t in ladder:
            if not 0.0 < t < 1.0:
                raise ConfigError(
                    f"ladder rung {t!r} outside (0, 1)", field="verify.ladder"
                )
        for previous, current in zip(ladder, ladder[1:]):
            if not current < previous:
                raise ConfigError(
                    "radius ladder must be strictly decreasing",
                    field="verify.ladder",
                )
        object.__setattr__(self, "radius_ladder", ladder)

    @property
    def directions(self) -> Tuple[float, ...]:
        half = self.aperture / 2.0
        return (0.0, half, -half)

    def at(self, theta: float) -> "StolzApproach":
        return replace(self, boundary_angle=float(theta))

    def points(self, theta: Any = None, psi: float = 0.0) -> np.ndarray:
        """Probe points for each rung of the ladder

        ``theta`` may be an array; the ladder runs along the last axis.
        """
        if theta is None:
            theta = self.boundary_angle
        theta = np.asarray(theta, dtype=float)[..., None]
        t = np.asarray(self.radius_ladder)
        sign = -1.0 if self.circle.orientation == Orientation.OUTER else 1.0
        return self.circle.center + self.circle.radius * np.exp(
            1j * theta
        ) * (1.0 + sign * t * np.exp(1j * psi))


@dataclass(frozen=True)
class ResidualRow:
    theta: float
    psi: float
    t: float
    residual: float
    converged: bool


@dataclass(frozen=True)
class ResidualReport:
    rows: Tuple[ResidualRow, ...]
    excluded_angles: Tuple[float, ...]
    jumps: Tuple[float, ...]
    exclusion_radius: float
    ladder: Tuple[float, ...]
    circle: BoundaryCircle = UNIT_CIRCLE

    def _series(self) -> Dict[Tuple[float, float], List[float]]:
        series: Dict[Tuple[float, float], List[float]] = {}
        for row in self.rows:
            series.setdefault((row.theta, row.psi), []).append(row.residual)
        return series

    @property
    def probes(self) -> int:
        return len({row.theta for row in self.rows})

    @property
    def sup_residual(self) -> float:
        final = self.ladder[-1]
        return max(
            (row.residual for row in self.rows if row.t == final),
            default=0.0,
        )

    @property
    def monotone_fraction(self) -> float:
        series = self._series()
        if not series:
            return 1.0
        monotone = sum(
            all(
                later <= max(earlier, NOISE_FLOOR)
                for earlier, later in zip(values, values[1:])
            )
            for values in series.values()
        )
        return monotone / len(series)

    def summary(self) -> Dict[str, Any]:
        return {
            "sup_residual": self.sup_residual,
            "probes": self.probes,
            "excluded": len(self.excluded_angles),
            "monotone_fraction": self.monotone_fraction,
        }

    def passes(self, tolerance: float) -> bool:
        return self.sup_residual <= tolerance

    def csv_rows(self) -> List[Tuple]:
        return [
            (row.theta, row.psi, row.t, row.residual, int(row.converged))
            for row in self.rows
        ]


def probe_angles(n: int, probe_count: int) -> np.ndarray:
    """Grid midpoints (j + 1/2)·2π/n at j = floor(i·n/probe_count)"""
    indices = (np.arange(probe_count) * n) // probe_count
    return (indices + 0.5) * TWO_PI / n


def _evaluator(f: Any) -> Callable[[np.ndarray], np.ndarray]:
    evaluate = getattr(f, "evaluate", None)
    return evaluate if callable(evaluate) else f


def nontangential_limit_check(
    f: Any,
    lam: BoundaryFunction,
    phi: BoundaryFunction,
    approach: StolzApproach,
    probe_count: int = DEFAULT_PROBES,
    *,
    exclusion_radius: Optional[float] = None,
    jumps: Sequence[float] = (),
) -> ResidualReport:
    """Measure |Re{conj(λ(θ))·f(z)} - φ(θ)| as z approaches e^{iθ}

    Probe angles sit at grid midpoints. Angles closer than the exclusion
    radius (default 10/N) to a jump of λ, φ or the solution are excluded.

    Arguments:
        f: A solution with an ``evaluate`` method, or a callable
        lam: Coefficient on the approached circle
        phi: Data on the approached circle
        approach: Ladder, aperture and circle of the approaches
        probe_count: Number of probe angles, at least 8
        exclusion_radius: Angular radius excluded around each jump
        jumps: Extra exceptional angles

    Raises:
        ConfigError: Too few probes, or a rung below the resolution
            threshold of the evaluators
    """
    if probe_count < MIN_PROBES:
        raise ConfigError(
            f"need at least {MIN_PROBES} probes, got {probe_count}",
            field="verify.probes",
        )
    if approach.radius_ladder[-1] < RESOLUTION_THRESHOLD:
        raise ConfigError(
            f"ladder rung {approach.radius_ladder[-1]!r} is below the "
            f"resolution threshold {RESOLUTION_THRESHOLD}",
            field="verify.ladder",
        )

    n = lam.n
    if exclusion_radius is None:
        exclusion_radius = 10.0 / n

    evaluate = _evaluator(f)
    all_jumps = merge_jumps(
        lam.jumps, phi.jumps, getattr(f, "jumps", ()), jumps
    )

    thetas = probe_angles(n, probe_count)
    excluded = circular_distance(thetas, all_jumps) < exclusion_radius
    included = thetas[~excluded]

    lam_values = lam.value_at(included)
    phi_values = np.real(phi.value_at(included))

    rows = []
    ladder = approach.radius_ladder
    for psi in approach.directions:
        z = approach.points(included, psi)
        values = np.asarray(evaluate(z.reshape(-1))).reshape(z.shape)
        residual = np.abs(
            np.real(np.conj(lam_values)[:, None] * values)
            - phi_values[:, None]
        )
        for theta, series in zip(included, residual):
            converged = series[-1] <= max(series[0], NOISE_FLOOR)
            rows.extend(
                ResidualRow(
                    float(theta), float(psi), t, float(value), bool(converged)
                )
                for t, value in zip(ladder, series)
            )

    rows.sort(key=lambda row: (row.theta, -row.psi, -row.t))
    report = ResidualReport(
        rows=tuple(rows),
        excluded_angles=tuple(float(t) for t in thetas[excluded]),
        jumps=all_jumps,
        exclusion_radius=float(exclusion_radius),
        ladder=ladder,
        circle=approach.circle,
    )
    logger.debug("Residual check %r", report.summary())
    return report


def annulus_limit_check(
    sol: AnnulusSolution,
    approach: StolzApproach,
    probe_count: int = DEFAULT_PROBES,
    sheet: int = 0,
    *,
    exclusion_radius: Optional[float] = None,
) -> Dict[Orientation, ResidualReport]:
    """Residual reports for both circles of an annulus solution

    Exceptional angles of the disk solve are carried over to the annulus
    through the boundary correspondence.
    """
    mapped: Dict[Orientation, List[float]] = {
        Orientation.OUTER: [],
        Orientation.INNER: [],
    }
    for t in sol.disk_solution.jumps:
        if circular_distance(np.asarray(t), FIXED_ANGLES) <= 1e-15:
            continue
        component, angle = sol.cover.boundary_point(t)
        mapped[component].append(angle)

    reports = {}
    for component, circle in (
        (Orientation.OUTER, sol.domain.outer),
        (Orientation.INNER, sol.domain.inner),
    ):
        lam, phi = sol.data(component)
        reports[component] = nontangential_limit_check(
            lambda z: sol.evaluate(z, sheet),
            lam,
            phi,
            replace(approach, circle=circle),
            probe_count,
            exclusion_radius=exclusion_radius,
            jumps=mapped[component],
        )
    return reports
