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
Riemann–Hilbert problem on the unit disk

For a unimodular coefficient λ = exp(iα) and real data φ the solution is
f = A·B with A = exp(i·g), g the Schwarz integral of α, and B the Schwarz
integral of the weight φ·e^β, β being the conjugate boundary function of α.
On the circle Re{conj(λ)·f} = e^{-β}·Re B = φ.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from rhtools.boundary import (
    TWO_PI,
    ArgumentFunction,
    BoundaryFunction,
    Smoothness,
    argument_lift,
    fill_jump_samples,
    merge_jumps,
    scaled_sum,
)
from rhtools.errors import ScalingError, ValidationError
from rhtools.schwarz import (
    AnalyticRep,
    conjugate_samples,
    evaluate,
    linear_combination,
    schwarz_spectral,
)

logger = logging.getLogger(__name__)

# e^β overflows double precision beyond this exponent
MAX_EXPONENT = 700.0

# jump exponents closer than this to an integer are taken as that integer
EXPONENT_SNAP = 1e-9

MEAN_VALUE_POINTS = 512


@dataclass(frozen=True, eq=False)
class DiskSolution:
    """A solution f = A·B of Re{conj(λ)·f} = φ on the unit disk

    ``weight`` holds φ·e^β on the grid. ``regularized_weight`` is the data
    actually fed to the Schwarz integral for B; it differs from the weight
    by the factors |1 - ζ e^{-it}|² at singular jumps of α, which ``B``
    undoes through its boundary poles.
    """

    lam: BoundaryFunction
    phi: BoundaryFunction
    alpha: ArgumentFunction
    g: AnalyticRep
    beta: BoundaryFunction
    weight: BoundaryFunction
    regularized_weight: BoundaryFunction
    B: AnalyticRep
    family_parameter: float = 0.0

    @property
    def jumps(self) -> Tuple[float, ...]:
        return merge_jumps(self.alpha.jumps, self.phi.jumps)

    def A(self, z: Any) -> Any:
        return np.exp(1j * evaluate(self.g, z))

    def evaluate(self, z: Any) -> Any:
        return evaluate_f(self, z)

    def residual(self, theta: Any, z: Any) -> np.ndarray:
        """|Re{conj(λ(θ))·f(z)} - φ(θ)| for interior points z near e^{iθ}"""
        lam = self.lam.value_at(theta)
        phi = np.real(self.phi.value_at(theta))
        return np.abs(np.real(np.conj(lam) * self.evaluate(z)) - phi)

    def trace_rows(self, t: float = 1e-4) -> List[Tuple[float, ...]]:
        """Rows of theta, alpha, beta, phi, weight and the residual at
        radius 1 - t"""
        thetas = self.lam.thetas
        z = (1.0 - t) * np.exp(1j * thetas)
        residual = np.abs(
            np.real(np.conj(self.lam.samples) * self.evaluate(z))
            - self.phi.real
        )
        return [
            tuple(float(v) for v in row)
            for row in zip(
                thetas,
                self.alpha.values,
                self.beta.real,
                self.phi.real,
                self.weight.real,
                residual,
            )
        ]

    def interior_rows(self, points: Sequence[complex]) -> List[Tuple]:
        points = np.asarray(points, dtype=complex).reshape(-1)
        values = self.evaluate(points)
        return [
            (float(z.real), float(z.imag), float(f.real), float(f.imag))
            for z, f in zip(points, values)
        ]


def _check_grid(lam: BoundaryFunction, phi: BoundaryFunction) -> None:
    if lam.n != phi.n:
        raise ValidationError(
            f"Grid mismatch: λ has {lam.n} samples, φ has {phi.n}",
            argument="phi",
        )
    for name, f in (("lambda", lam), ("phi", phi)):
        if not f.circle.is_unit:
            raise ValidationError(
                "Disk data must live on the unit circle", argument=name
            )


def _check_exponent(values: np.ndarray, what: str) -> None:
    largest = float(np.max(values))
    if largest > MAX_EXPONENT:
        raise ScalingError(
            f"max {what} = {largest:.6g} exceeds {MAX_EXPONENT:g}; e^{what} "
            "would overflow",
            value=largest,
        )


def _snap(exponent: float) -> float:
    nearest = round(exponent)
    if abs(exponent - nearest) < EXPONENT_SNAP:
        return float(nearest)
    return exponent


def _regularized_weight(
    g: AnalyticRep,
    phi: BoundaryFunction,
    phi_values: np.ndarray,
) -> Tuple[BoundaryFunction, Tuple[float, ...]]:
    thetas = phi.thetas
    decomposition = g.decomposition
    beta_remainder = conjugate_samples(decomposition.remainder)
    _check_exponent(beta_remainder, "β")

    values = phi_values * np.exp(beta_remainder)
    poles = []
    with np.errstate(divide="ignore"):
        for t, d in decomposition.jumps:
            exponent = _snap(d / math.pi)
            if exponent < 0:
                poles.append(t)
                exponent = _snap(exponent + 2.0)
            if exponent != 0:
                values = values * np.abs(
                    2.0 * np.sin((thetas - t) / 2.0)
                ) ** exponent

    if poles:
        logger.debug("Regularized singular jumps of α at %r", poles)

    regularized = BoundaryFunction(
        phi.circle,
        values,
        jumps=phi.jumps,
        smoothness=Smoothness.PIECEWISE_SMOOTH,
    )
    return regularized, tuple(poles)


def solve_disk(
    lam: BoundaryFunction,
    phi: BoundaryFunction,
    modes: Optional[int] = None,
    *,
    sigma: bool = False,
) -> DiskSolution:
    """Solve Re{conj(λ)·f} = φ on the unit disk

    Arguments:
        lam: Unimodular coefficient on the unit circle
        phi: Real data on the same grid
        modes: Taylor modes for g and B, at most N/2
        sigma: Apply Lanczos sigma factors to the series

    Raises:
        ValidationError: Grid mismatch, non-unimodular λ or complex φ
        ScalingError: max β exceeds MAX_EXPONENT
    """
    _check_grid(lam, phi)
    phi_values = phi.require_real("phi")

    alpha = argument_lift(lam)
    g = schwarz_spectral(alpha.base, modes, sigma=sigma)

    beta = _conjugate_of(alpha, g)
    _check_exponent(beta.real, "β")

    jumps = merge_jumps(alpha.jumps, phi.jumps)
    weight = BoundaryFunction(
        phi.circle,
        phi_values * np.exp(beta.real),
        jumps=jumps,
        smoothness=Smoothness.PIECEWISE_SMOOTH if jumps else phi.smoothness,
    )

    regularized, poles = _regularized_weight(g, phi, phi_values)
    B = schwarz_spectral(
        regularized, modes, sigma=sigma, boundary_poles=poles
    )

    logger.debug(
        "Solved disk problem on %d samples, %d jumps, max β %.6g",
        lam.n,
        len(jumps),
        float(np.max(beta.real)),
    )

    return DiskSolution(
        lam=lam,
        phi=phi,
        alpha=alpha,
        g=g,
        beta=beta,
        weight=weight,
        regularized_weight=regularized,
        B=B,
    )


def _conjugate_of(alpha: ArgumentFunction, g: AnalyticRep) -> BoundaryFunction:
    # same result as conjugate_boundary(alpha.base), reusing g's jump split
    decomposition = g.decomposition
    thetas = alpha.thetas
    values = conjugate_samples(
        decomposition.remainder
    ) + decomposition.conjugate_part(thetas)
    values = fill_jump_samples(values, thetas, alpha.jumps)
    return BoundaryFunction(
        alpha.base.circle,
        values,
        jumps=alpha.jumps,
        smoothness=alpha.base.smoothness,
    )


def evaluate_f(sol: DiskSolution, z: Any) -> Any:
    """f(z) = exp(i·g(z))·B(z)

    Raises:
        DomainError: |z| >= 1
    """
    return np.exp(1j * evaluate(sol.g, z)) * evaluate(sol.B, z)


def homogeneous_family(sol: DiskSolution, c: float) -> DiskSolution:
    """The solution f + ic·A, which satisfies the same boundary condition

    Raises:
        ValidationError: c is not a finite real number
    """
    if (
        isinstance(c, (complex, np.complexfloating))
        or not np.isfinite(float(c))
    ):
        raise ValidationError(
            f"Family parameter must be a finite real, got {c!r}",
            argument="c",
        )
    c = float(c)
    if c == 0.0:
        return sol
    return replace(
        sol,
        B=sol.B.shifted(1j * c),
        family_parameter=sol.family_parameter + c,
    )


def combine_solutions(
    solutions: Sequence[DiskSolution], weights: Sequence[float]
) -> DiskSolution:
    """Real linear combination of solutions sharing the coefficient λ

    The result solves the problem for the data Σ w_i φ_i.

    Raises:
        ValidationError: The solutions have different coefficients or a
            weight is not real
    """
    if not solutions or len(solutions) != len(weights):
        raise ValidationError(
            "Need one weight per solution", argument="weights"
        )
    first = solutions[0]
    for other in solutions[1:]:
        if other.lam.n != first.lam.n or not np.array_equal(
            other.lam.samples, first.lam.samples
        ):
            raise ValidationError(
                "Solutions must share the coefficient λ", argument="lambda"
            )

    B = linear_combination([sol.B for sol in solutions], weights)
    weights = [float(np.real(w)) for w in weights]

    return replace(
        first,
        phi=scaled_sum([sol.phi for sol in solutions], weights),
        weight=scaled_sum([sol.weight for sol in solutions], weights),
        regularized_weight=scaled_sum(
            [sol.regularized_weight for sol in solutions], weights
        ),
        B=B,
        family_parameter=sum(
            w * sol.family_parameter for w, sol in zip(weights, solutions)
        ),
    )


def mean_value_defect(
    sol: DiskSolution, rho: float, points: int = MEAN_VALUE_POINTS
) -> float:
    """|mean of f over |z| = ρ - f(0)|, zero for analytic f"""
    z = rho * np.exp(1j * TWO_PI * np.arange(points) / points)
    return float(abs(np.mean(sol.evaluate(z)) - sol.evaluate(0j)))
