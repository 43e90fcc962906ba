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
The Schwarz integral on the unit disk

g(z) = 1/(2π) ∫ u(θ) (e^{iθ} + z)/(e^{iθ} - z) dθ reconstructs an analytic
function from the boundary values of its real part, with Im g(0) = 0.

Real data with declared jumps is split as u = r + Σ d_j σ(θ - t_j) with the
unit sawtooth σ(θ) = (π - θ)/(2π) on (0, 2π) and a continuous remainder r.
Only r goes through the FFT; the sawtooth terms have the closed forms

    Schwarz:    (i/π) log(1 - z e^{-it})
    conjugate:  (1/π) log|2 sin((θ - t)/2)|
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial
from scipy import fft, integrate, signal

from rhtools.boundary import (
    TWO_PI,
    BoundaryFunction,
    Smoothness,
    fill_jump_samples,
    jump_sizes,
    scaled_sum,
    trigonometric_interpolation,
    wrap_angle,
)
from rhtools.errors import (
    AliasingError,
    DomainError,
    ResolutionError,
    ValidationError,
)

logger = logging.getLogger(__name__)

# points outside this radius are delegated to the quadrature evaluator
# when the series was truncated below the grid's Nyquist limit
DELEGATION_RADIUS = 0.99

RESOLUTION_THRESHOLD = 1e-6

# refined grid size is at least N/2 + REFINEMENT / (1 - |z|)
REFINEMENT = 40
MAX_REFINED_SAMPLES = 2**24

ADAPTIVE_LIMIT = 400


def unit_sawtooth(theta: Any) -> np.ndarray:
    """σ(θ) = (π - θ)/(2π) on [0, 2π), periodically extended"""
    return (math.pi - wrap_angle(theta)) / TWO_PI


@dataclass(frozen=True)
class JumpDecomposition:
    """Real boundary data split into a continuous remainder and sawtooth
    terms, one per declared jump"""

    remainder: np.ndarray
    jumps: Tuple[Tuple[float, float], ...] = ()

    def sawtooth_part(self, theta: Any) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        total = np.zeros(theta.shape)
        for t, d in self.jumps:
            total = total + d * unit_sawtooth(theta - t)
        return total

    def conjugate_part(self, theta: Any) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        total = np.zeros(theta.shape)
        with np.errstate(divide="ignore"):
            for t, d in self.jumps:
                total = total + d / math.pi * np.log(
                    np.abs(2.0 * np.sin((theta - t) / 2.0))
                )
        return total

    def schwarz_part(self, z: Any) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape, dtype=complex)
        for t, d in self.jumps:
            total = total + d * 1j / math.pi * np.log(
                1.0 - z * np.exp(-1j * t)
            )
        return total

    def schwarz_coefficients(self, modes: int) -> np.ndarray:
        k = np.arange(1, modes)
        coefficients = np.zeros(modes, dtype=complex)
        for t, d in self.jumps:
            coefficients[1:] += -1j * d / math.pi * np.exp(-1j * k * t) / k
        return coefficients


def decompose(u: BoundaryFunction) -> JumpDecomposition:
    """Split real boundary data at its declared jumps

    Raises:
        ValidationError: u is complex-valued
    """
    values = u.require_real("u")

    if not u.jumps:
        return JumpDecomposition(remainder=values)

    sizes = tuple(
        (t, float(np.real(d)))
        for t, d in jump_sizes(u)
        if np.real(d) != 0.0
    )
    logger.debug("Jump sizes %r", sizes)

    decomposition = JumpDecomposition(remainder=values, jumps=sizes)
    remainder = values - decomposition.sawtooth_part(u.thetas)
    remainder = fill_jump_samples(remainder, u.thetas, u.jumps)
    return replace(decomposition, remainder=remainder)


def boundary_pole_factor(z: Any, t: float) -> np.ndarray:
    """Q_t(z) = -z e^{-it}/(1 - z e^{-it})^2

    Analytic in the disk and real on the circle away from e^{it}, where it
    equals |1 - ζ e^{-it}|^{-2}.
    """
    w = np.asarray(z, dtype=complex) * np.exp(-1j * t)
    return -w / (1.0 - w) ** 2


def _pole_coefficients(t: float, modes: int) -> np.ndarray:
    k = np.arange(modes)
    return -k * np.exp(-1j * k * t)


@dataclass(frozen=True, eq=False)
class AnalyticRep:
    """An analytic function on the unit disk

    The value at z is Π Q_t(z) · (S(z) + J(z)) + offset, where S is the
    Taylor series of the continuous remainder, J the closed-form sawtooth
    terms and Q_t the boundary pole factors. ``coeffs`` holds the combined
    Taylor coefficients of the whole function.
    """

    coeffs: np.ndarray
    smooth: np.ndarray
    decomposition: Optional[JumpDecomposition] = None
    boundary_poles: Tuple[float, ...] = ()
    offset: complex = 0j
    source: Optional[BoundaryFunction] = None
    truncated: bool = False
    domain_radius: float = 1.0

    @property
    def modes(self) -> int:
        return self.coeffs.shape[0]

    @property
    def jump_terms(self) -> Tuple[Tuple[float, float], ...]:
        if self.decomposition is None:
            return ()
        return self.decomposition.jumps

    def shifted(self, offset: complex) -> "AnalyticRep":
        """The same function plus a constant"""
        coeffs = np.array(self.coeffs, copy=True)
        coeffs[0] += offset
        coeffs.setflags(write=False)
        return replace(self, coeffs=coeffs, offset=self.offset + offset)


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=complex, copy=True)
    values.setflags(write=False)
    return values


def linear_combination(
    reps: Sequence[AnalyticRep], weights: Sequence[float]
) -> AnalyticRep:
    """Σ w_i rep_i for real weights and identical boundary poles

    Raises:
        ValidationError: weights are complex or the poles differ
    """
    if not reps or len(reps) != len(weights):
        raise ValidationError(
            "Need one weight per representation", argument="weights"
        )
    if any(np.imag(w) != 0 for w in weights):
        raise ValidationError(
            "Only real weights keep the boundary condition",
            argument="weights",
        )
    weights = [float(np.real(w)) for w in weights]
    poles = reps[0].boundary_poles
    modes = min(rep.modes for rep in reps)
    if any(rep.boundary_poles != poles for rep in reps):
        raise ValidationError(
            "Representations carry different boundary poles",
            argument="reps",
        )

    decomposition = None
    if all(rep.decomposition is not None for rep in reps):
        decomposition = JumpDecomposition(
            remainder=sum(
                w * rep.decomposition.remainder
                for w, rep in zip(weights, reps)
            ),
            jumps=tuple(
                (t, w * d)
                for w, rep in zip(weights, reps)
                for t, d in rep.decomposition.jumps
            ),
        )

    source = None
    if all(rep.source is not None for rep in reps):
        source = scaled_sum([rep.source for rep in reps], weights)

    return AnalyticRep(
        coeffs=_frozen(
            sum(w * rep.coeffs[:modes] for w, rep in zip(weights, reps))
        ),
        smooth=_frozen(
            sum(w * rep.smooth[:modes] for w, rep in zip(weights, reps))
        ),
        decomposition=decomposition,
        boundary_poles=poles,
        offset=sum(w * rep.offset for w, rep in zip(weights, reps)),
        source=source,
        truncated=any(rep.truncated for rep in reps),
    )


def _check_modes(n: int, modes: Optional[int]) -> int:
    if modes is None:
        return n // 2
    if modes > n // 2:
        raise AliasingError(
            f"Mode cutoff {modes} exceeds half the sample count {n}",
            argument="modes",
        )
    if modes < 1:
        raise ValidationError(
            f"Mode cutoff must be positive, got {modes}", argument="modes"
        )
    return int(modes)


def _remainder_series(
    remainder: np.ndarray, modes: int, sigma: bool
) -> np.ndarray:
    n = remainder.shape[0]
    fourier = fft.fft(remainder) / n
    series = np.zeros(modes, dtype=complex)
    series[0] = fourier[0].real
    series[1:] = 2.0 * fourier[1:modes]
    if sigma:
        series *= np.sinc(np.arange(modes) / modes)
    return series


def schwarz_spectral(
    u: BoundaryFunction,
    modes: Optional[int] = None,
    *,
    sigma: bool = False,
    boundary_poles: Sequence[float] = (),
) -> AnalyticRep:
    """Taylor representation of the Schwarz integral of real data

    The coefficients are c_0 = a_0 and c_k = 2 a_k for the Fourier
    coefficients a_k of u.

    Arguments:
        u: Real boundary data on the unit circle
        modes: Number of Taylor coefficients M, at most N/2. Defaults to N/2
        sigma: Apply Lanczos sigma factors to the remainder's series
        boundary_poles: Angles t of Q_t factors multiplying the result

    Raises:
        ValidationError: u is complex-valued
        AliasingError: M > N/2
    """
    modes = _check_modes(u.n, modes)
    decomposition = decompose(u)

    smooth = _remainder_series(decomposition.remainder, modes, sigma)
    coeffs = smooth + decomposition.schwarz_coefficients(modes)
    for t in boundary_poles:
        coeffs = np.convolve(coeffs, _pole_coefficients(t, modes))[:modes]

    logger.debug(
        "Schwarz series with %d modes, %d jump terms, %d boundary poles",
        modes,
        len(decomposition.jumps),
        len(boundary_poles),
    )

    return AnalyticRep(
        coeffs=_frozen(coeffs),
        smooth=_frozen(smooth),
        decomposition=decomposition,
        boundary_poles=tuple(boundary_poles),
        source=u,
        truncated=modes < u.n // 2,
    )


def series_rep(coeffs: Sequence[complex]) -> AnalyticRep:
    """A plain Taylor series"""
    coeffs = _frozen(coeffs)
    return AnalyticRep(coeffs=coeffs, smooth=coeffs)


def _check_inside(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1.0):
        worst = z.reshape(-1)[int(np.argmax(np.abs(z)))]
        raise DomainError(f"Point {worst!r} is not inside the unit disk")


def _pole_product(rep: AnalyticRep, z: np.ndarray) -> np.ndarray:
    product = np.ones(z.shape, dtype=complex)
    for t in rep.boundary_poles:
        product = product * boundary_pole_factor(z, t)
    return product


def evaluate(rep: AnalyticRep, z: Any) -> Any:
    """Evaluate an analytic representation inside the unit disk

    The remainder's series is summed with Horner's scheme. A truncated
    series built from boundary samples hands points beyond |z| > 0.99 to
    the quadrature evaluator.

    Raises:
        DomainError: |z| >= 1
    """
    shape = np.shape(z)
    z = np.asarray(z, dtype=complex).reshape(-1)
    _check_inside(z)

    values = polynomial.polyval(z, rep.smooth)
    if rep.decomposition is not None:
        values = values + rep.decomposition.schwarz_part(z)

    if rep.source is not None and rep.truncated:
        outer = np.abs(z) > DELEGATION_RADIUS
        if np.any(outer):
            values[outer] = [
                schwarz_quadrature(rep.source, point) for point in z[outer]
            ]

    values = _pole_product(rep, z) * values + rep.offset
    return complex(values[0]) if shape == () else values.reshape(shape)


def refined_size(n: int, radius: float) -> int:
    """Grid size for trapezoidal quadrature of the kernel at |z| = radius"""
    target = max(n, n // 2 + REFINEMENT / (1.0 - radius))
    size = 1 << int(math.ceil(math.log2(target)))
    return min(size, MAX_REFINED_SAMPLES)


def schwarz_quadrature(u: BoundaryFunction, z: complex) -> complex:
    """Trapezoidal evaluation of the Schwarz integral at one point

    The continuous remainder is resampled on a zero-padded grid that grows
    like 1/(1 - |z|). Jump terms use their closed form.

    Raises:
        DomainError: |z| >= 1
        ResolutionError: 1 - |z| is below the resolvable threshold
        ValidationError: u is complex-valued
    """
    z = complex(z)
    radius = abs(z)
    if radius >= 1.0:
        raise DomainError(f"Point {z!r} is not inside the unit disk")
    if 1.0 - radius < RESOLUTION_THRESHOLD:
        raise ResolutionError(
            f"Point {z!r} is within {RESOLUTION_THRESHOLD} of the circle; "
            "use the spectral evaluator"
        )

    decomposition = decompose(u)
    size = refined_size(u.n, radius)
    remainder = decomposition.remainder
    if size > u.n:
        remainder = signal.resample(remainder, size)

    logger.debug("Quadrature at %r on %d samples", z, size)

    zeta = np.exp(1j * TWO_PI * np.arange(size) / size)
    kernel = (zeta + z) / (zeta - z)
    value = np.mean(remainder * kernel)
    return complex(value + decomposition.schwarz_part(z))


def schwarz_adaptive(u: BoundaryFunction, z: complex) -> complex:
    """Adaptive quadrature of the Schwarz integral on the exact closed form

    Jumps are passed to the integrator as breakpoints.

    Raises:
        ValidationError: u was not built from a closed form
        DomainError: |z| >= 1
    """
    if u.expr is None:
        raise ValidationError(
            "Adaptive quadrature needs a closed form", argument="u"
        )
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"Point {z!r} is not inside the unit disk")

    def integrand(theta, part):
        zeta = np.exp(1j * theta)
        value = np.real(u.expr(np.asarray(theta))) * (zeta + z) / (zeta - z)
        return float(part(value))

    breakpoints = [t for t in u.jumps if 0.0 < t < TWO_PI] or None
    parts = []
    for part in (np.real, np.imag):
        value, _ = integrate.quad(
            integrand,
            0.0,
            TWO_PI,
            args=(part,),
            points=breakpoints,
            limit=ADAPTIVE_LIMIT,
            epsabs=1e-13,
            epsrel=1e-13,
        )
        parts.append(value / TWO_PI)
    return complex(parts[0], parts[1])


def cross_check(
    u: BoundaryFunction, points: Sequence[complex], modes: Optional[int] = None
) -> float:
    """Largest discrepancy between the spectral and quadrature evaluators"""
    rep = schwarz_spectral(u, modes)
    points = np.asarray(points, dtype=complex).reshape(-1)
    spectral = evaluate(rep, points)
    quadrature = np.array([schwarz_quadrature(u, z) for z in points])
    return float(np.max(np.abs(spectral - quadrature), initial=0.0))


def conjugate_boundary(u: BoundaryFunction) -> BoundaryFunction:
    """Boundary values β of the harmonic conjugate of u

    The Fourier multiplier -i·sgn(k) acts on the continuous remainder, the
    jumps contribute logarithmic singularities. β has zero mean, matching
    Im g(0) = 0, and keeps the jump set of u. Samples on a jump take the
    mean of their neighbours.

    Raises:
        ValidationError: u is complex-valued
    """
    decomposition = decompose(u)
    beta_remainder = conjugate_samples(decomposition.remainder)

    thetas = u.thetas
    values = beta_remainder + decomposition.conjugate_part(thetas)
    values = fill_jump_samples(values, thetas, u.jumps)

    def expr(theta):
        return trigonometric_interpolation(
            beta_remainder.astype(complex), theta
        ).real + decomposition.conjugate_part(theta)

    return BoundaryFunction(
        u.circle,
        values,
        jumps=u.jumps,
        smoothness=u.smoothness if not u.jumps else Smoothness.PIECEWISE_SMOOTH,
        expr=expr,
    )


def conjugate_samples(values: np.ndarray) -> np.ndarray:
    """Discrete conjugate function of real periodic samples"""
    n = values.shape[0]
    modes = fft.fftfreq(n, d=1.0 / n)
    multiplier = -1j * np.sign(modes)
    multiplier[n // 2] = 0.0
    return fft.ifft(multiplier * fft.fft(values)).real


def coefficients_rows(rep: AnalyticRep) -> List[Tuple[int, float, float]]:
    return [
        (k, float(c.real), float(c.imag)) for k, c in enumerate(rep.coeffs)
    ]
