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
Boundary data on circles: sampled values, declared jumps, total variation
and the argument lift of unimodular coefficients
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import (
    Any,
    Callable,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import numpy as np
from scipy import fft

from rhtools.errors import ConfigError, DomainError, ValidationError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

MIN_SAMPLES = 8
UNIMODULAR_TOLERANCE = 1e-9
ZERO_COEFFICIENT_TOLERANCE = 1e-12
REAL_TOLERANCE = 1e-12

# two angles closer than this are the same jump
ANGLE_TOLERANCE = 1e-10

# one-sided limits are extrapolated from at most this many samples
EXTRAPOLATION_POINTS = 3

Expression = Callable[[np.ndarray], np.ndarray]


class Orientation(str, Enum):
    OUTER = "outer"
    INNER = "inner"


class Smoothness(str, Enum):
    ANALYTIC = "analytic"
    PIECEWISE_SMOOTH = "piecewise_smooth"


@dataclass(frozen=True)
class BoundaryCircle:
    """A boundary circle of a circular domain

    The outer circle bounds the domain from outside, an inner circle is a
    hole. Approaches towards an outer circle go radially outwards.
    """

    center: complex = 0j
    radius: float = 1.0
    orientation: Orientation = Orientation.OUTER

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(
                f"Circle radius must be positive, got {self.radius}"
            )

        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(
            self, "orientation", Orientation(self.orientation)
        )

    @property
    def is_unit(self) -> bool:
        return (
            self.center == 0
            and self.radius == 1.0
            and self.orientation == Orientation.OUTER
        )

    def point(self, theta: Any) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * np.asarray(theta))


UNIT_CIRCLE = BoundaryCircle()


def angle_grid(n: int) -> np.ndarray:
    """Uniform angles 2πj/n, j = 0..n-1"""
    return TWO_PI * np.arange(n) / n


def wrap_angle(theta: Any) -> np.ndarray:
    """Reduce angles into [0, 2π)"""
    wrapped = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    # np.mod may round tiny negative angles up to exactly 2π
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


def principal_angle(values: Any) -> np.ndarray:
    """Argument of complex values in (-π, π]"""
    alpha = np.angle(np.asarray(values, dtype=complex))
    # np.angle returns -π for negative reals with a negative zero
    # imaginary part
    return np.where(alpha <= -math.pi, math.pi, alpha)


def merge_jumps(*jump_lists: Sequence[float]) -> Tuple[float, ...]:
    """Merge jump lists into one strictly increasing tuple in [0, 2π)"""
    angles = sorted(
        float(t) for jumps in jump_lists for t in wrap_angle(list(jumps))
    )
    merged: List[float] = []
    for t in angles:
        if merged and t - merged[-1] <= ANGLE_TOLERANCE:
            continue
        merged.append(t)

    if (
        len(merged) > 1
        and merged[0] + TWO_PI - merged[-1] <= ANGLE_TOLERANCE
    ):
        merged.pop()

    return tuple(merged)


def circular_distance(theta: Any, jumps: Sequence[float]) -> np.ndarray:
    """Distance of each angle to the nearest jump, measured along the
    circle. Returns infinity when there are no jumps."""
    theta = np.asarray(theta, dtype=float)
    if len(jumps) == 0:
        return np.full(theta.shape, np.inf)

    delta = np.abs(
        np.mod(theta[..., None] - np.asarray(jumps)[None, :], TWO_PI)
    )
    return np.min(np.minimum(delta, TWO_PI - delta), axis=-1)


def jump_sample_indices(
    thetas: np.ndarray, jumps: Sequence[float]
) -> np.ndarray:
    """Indices of grid samples sitting exactly on a jump"""
    if len(jumps) == 0:
        return np.zeros(0, dtype=int)
    return np.nonzero(circular_distance(thetas, jumps) <= ANGLE_TOLERANCE)[0]


def fill_jump_samples(
    values: np.ndarray, thetas: np.ndarray, jumps: Sequence[float]
) -> np.ndarray:
    """Replace samples sitting on jumps by the mean of their neighbours"""
    n = values.shape[0]
    filled = np.array(values, copy=True)
    for j in jump_sample_indices(thetas, jumps):
        filled[j] = 0.5 * (values[(j - 1) % n] + values[(j + 1) % n])
    return filled


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Samples of a function on a boundary circle

    The samples are taken at the uniform angles θ_j = 2πj/N. A sample at a
    jump angle holds the right-hand limit. When the function was built from
    a closed form, ``expr`` evaluates it exactly at arbitrary angles.
    """

    circle: BoundaryCircle
    samples: np.ndarray
    jumps: Tuple[float, ...] = ()
    smoothness: Smoothness = Smoothness.PIECEWISE_SMOOTH
    expr: Optional[Expression] = field(default=None, repr=False)

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex).reshape(-1)
        n = samples.shape[0]

        if n < MIN_SAMPLES or n & (n - 1):
            raise ValidationError(
                f"Sample count must be a power of two and at least "
                f"{MIN_SAMPLES}, got {n}",
                argument="samples",
            )

        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

        jumps = tuple(float(t) for t in self.jumps)
        for t in jumps:
            if not 0.0 <= t < TWO_PI:
                raise ValidationError(
                    "Jump angle outside [0, 2π)", angle=t, argument="jumps"
                )
        for previous, current in zip(jumps, jumps[1:]):
            if not current > previous:
                raise ValidationError(
                    "Jump angles must be strictly increasing",
                    angle=current,
                    argument="jumps",
                )

        object.__setattr__(self, "jumps", jumps)
        object.__setattr__(self, "smoothness", Smoothness(self.smoothness))

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    @property
    def step(self) -> float:
        return TWO_PI / self.n

    @property
    def thetas(self) -> np.ndarray:
        return angle_grid(self.n)

    @property
    def is_real(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.samples))))
        return bool(
            np.max(np.abs(self.samples.imag)) <= REAL_TOLERANCE * scale
        )

    @property
    def real(self) -> np.ndarray:
        return self.samples.real.copy()

    def require_real(self, argument: str) -> np.ndarray:
        if not self.is_real:
            worst = int(np.argmax(np.abs(self.samples.imag)))
            raise ValidationError(
                "Boundary data must be real-valued",
                angle=float(self.thetas[worst]),
                argument=argument,
            )
        return self.real

    def value_at(self, theta: Any) -> np.ndarray:
        """Evaluate the boundary function at arbitrary angles"""
        theta = wrap_angle(theta)

        if self.expr is not None:
            return np.asarray(self.expr(theta), dtype=complex) * np.ones(
                theta.shape
            )

        if self.smoothness == Smoothness.ANALYTIC:
            return trigonometric_interpolation(self.samples, theta)

        nodes = np.append(self.thetas, TWO_PI)
        values = np.append(self.samples, self.samples[0])
        return np.interp(theta, nodes, values.real) + 1j * np.interp(
            theta, nodes, values.imag
        )

    def with_samples(self, samples: Any, **changes) -> "BoundaryFunction":
        return replace(self, samples=samples, **changes)


def trigonometric_interpolation(
    samples: np.ndarray, theta: np.ndarray, chunk: int = 256
) -> np.ndarray:
    n = samples.shape[0]
    coefficients = fft.fft(samples) / n
    modes = fft.fftfreq(n, d=1.0 / n)
    nyquist = coefficients[n // 2]
    coefficients = coefficients.copy()
    coefficients[n // 2] = 0.0

    flat = theta.reshape(-1)
    result = np.empty(flat.shape, dtype=complex)
    for start in range(0, flat.shape[0], chunk):
        block = flat[start : start + chunk]
        phases = np.exp(1j * np.outer(block, modes))
        # the Nyquist mode is split evenly between ±n/2
        result[start : start + chunk] = phases @ coefficients + nyquist * (
            np.cos(n // 2 * block)
        )
    return result.reshape(theta.shape)


@dataclass(frozen=True)
class ArgumentFunction:
    """The lifted argument α of a unimodular coefficient λ = exp(iα)

    Values lie in (-π, π]. The jump set holds the jumps inherited from λ
    and the ±2π branch jumps introduced by taking principal values.
    """

    base: BoundaryFunction
    source: BoundaryFunction
    branch_jumps: Tuple[float, ...] = ()

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def thetas(self) -> np.ndarray:
        return self.base.thetas

    @property
    def values(self) -> np.ndarray:
        return self.base.real

    @property
    def jumps(self) -> Tuple[float, ...]:
        return self.base.jumps

    @property
    def inherited_jumps(self) -> Tuple[float, ...]:
        return self.source.jumps

    def value_at(self, theta: Any) -> np.ndarray:
        return principal_angle(self.source.value_at(theta))

    def arc_variations(self) -> List[Tuple[float, float, float]]:
        """Total variation over each maximal jump-free arc

        Returns (start, end, variation) triples; ``end`` may exceed 2π for
        the arc wrapping through zero. Samples sitting on a jump belong to
        the exceptional set and are left out.
        """
        values = self.values
        thetas = self.thetas

        if not self.jumps:
            closed = np.append(values, values[0])
            return [(0.0, TWO_PI, float(np.sum(np.abs(np.diff(closed)))))]

        arcs = []
        jumps = list(self.jumps)
        for i, start in enumerate(jumps):
            end = jumps[(i + 1) % len(jumps)]
            span = (end - start) % TWO_PI or TWO_PI
            offsets = np.mod(thetas - start, TWO_PI)
            inside = (offsets > ANGLE_TOLERANCE) & (
                offsets < span - ANGLE_TOLERANCE
            )
            ordered = values[inside][np.argsort(offsets[inside])]
            variation = (
                float(np.sum(np.abs(np.diff(ordered))))
                if ordered.shape[0] > 1
                else 0.0
            )
            arcs.append((start, start + span, variation))
        return arcs


def total_variation(
    f: BoundaryFunction,
    arc: Tuple[float, float],
    *,
    allow_jumps: bool = False,
) -> float:
    """Discrete total variation of f over the closed arc [a, b]

    The sum runs over the ordered grid samples inside the arc, which is the
    finest partition the samples allow.

    Arguments:
        f: Boundary function to measure
        arc: Tuple (a, b) with 0 <= a < b <= 2π
        allow_jumps: Accept jumps in the interior of the arc

    Raises:
        DomainError: The arc is empty or exceeds [0, 2π)
        ValidationError: The arc contains a jump and allow_jumps is False
    """
    a, b = float(arc[0]), float(arc[1])

    if a < 0.0 or b > TWO_PI:
        raise DomainError(f"Arc [{a}, {b}] exceeds [0, 2π)")
    if not b > a:
        raise DomainError(f"Arc [{a}, {b}] is empty")

    if not allow_jumps:
        for t in f.jumps:
            if a < t < b:
                raise ValidationError(
                    "Arc contains a jump of the function", angle=t
                )

    thetas = f.thetas
    inside = (thetas >= a - ANGLE_TOLERANCE) & (thetas <= b + ANGLE_TOLERANCE)
    values = f.samples[inside]

    if values.shape[0] < 2:
        return 0.0

    return float(np.sum(np.abs(np.diff(values))))


def _branch_jumps(
    thetas: np.ndarray, alpha: np.ndarray, inherited: Sequence[float]
) -> Tuple[float, ...]:
    n = thetas.shape[0]
    step = TWO_PI / n
    following = np.roll(alpha, -1)
    crossings = np.nonzero(np.abs(following - alpha) > math.pi)[0]

    found = []
    for j in crossings:
        offsets = np.mod(np.asarray(inherited) - thetas[j], TWO_PI)
        if np.any((offsets > 0.0) & (offsets <= step * (1 + 1e-9))):
            # the coefficient itself jumps inside this cell
            continue

        current, after = alpha[j], following[j]
        if after < current:
            fraction = (math.pi - current) / (after + TWO_PI - current)
        else:
            fraction = (-math.pi - current) / (after - TWO_PI - current)

        if fraction <= 1e-9:
            found.append(thetas[j])
        elif fraction >= 1 - 1e-9:
            found.append(thetas[(j + 1) % n])
        else:
            found.append(thetas[j] + fraction * step)

    return merge_jumps(found)


def argument_lift(lam: BoundaryFunction) -> ArgumentFunction:
    """Lift a unimodular coefficient to its argument function

    Each sample takes the principal value in (-π, π], so exp(iα) = λ holds
    sample by sample. Where the principal value wraps around, a branch jump
    is recorded.

    Raises:
        ValidationError: A sample is not unimodular; the error names the
            worst offending angle
    """
    deviation = np.abs(np.abs(lam.samples) - 1.0)
    worst = int(np.argmax(deviation))
    if deviation[worst] > UNIMODULAR_TOLERANCE:
        raise ValidationError(
            f"Coefficient is not unimodular (|λ| deviates from 1 by "
            f"{deviation[worst]:.3g})",
            angle=float(lam.thetas[worst]),
            argument="lambda",
        )

    alpha = principal_angle(lam.samples)
    branch = _branch_jumps(lam.thetas, alpha, lam.jumps)
    jumps = merge_jumps(lam.jumps, branch)

    logger.debug(
        "Lifted argument on %d samples, %d branch jumps, %d inherited jumps",
        lam.n,
        len(branch),
        len(lam.jumps),
    )

    expr = None
    if lam.expr is not None:
        source_expr = lam.expr

        def expr(theta):
            return principal_angle(source_expr(theta))

    base = BoundaryFunction(
        lam.circle,
        alpha,
        jumps=jumps,
        smoothness=(
            Smoothness.PIECEWISE_SMOOTH if jumps else lam.smoothness
        ),
        expr=expr,
    )
    return ArgumentFunction(base=base, source=lam, branch_jumps=branch)


def normalize_coefficient(
    lam: BoundaryFunction, phi: BoundaryFunction
) -> Tuple[BoundaryFunction, BoundaryFunction]:
    """Reduce Re{conj(λ)f} = φ with nonvanishing λ to a unimodular
    coefficient by dividing through by |λ|

    Raises:
        ValidationError: λ vanishes at a sample or φ is not real
    """
    _check_same_grid((lam, phi))
    phi_values = phi.require_real("phi")

    moduli = np.abs(lam.samples)
    worst = int(np.argmin(moduli))
    if moduli[worst] < ZERO_COEFFICIENT_TOLERANCE:
        raise ValidationError(
            "Coefficient vanishes",
            angle=float(lam.thetas[worst]),
            argument="lambda",
        )

    lam_expr = phi_expr = None
    if lam.expr is not None and phi.expr is not None:
        source_lam, source_phi = lam.expr, phi.expr

        def lam_expr(theta):
            values = source_lam(theta)
            return values / np.abs(values)

        def phi_expr(theta):
            return np.real(source_phi(theta)) / np.abs(source_lam(theta))

    return (
        lam.with_samples(lam.samples / moduli, expr=lam_expr),
        phi.with_samples(
            phi_values / moduli,
            jumps=merge_jumps(phi.jumps, lam.jumps),
            expr=phi_expr,
        ),
    )


def _check_same_grid(functions: Sequence[BoundaryFunction]) -> None:
    first = functions[0]
    for other in functions[1:]:
        if other.n != first.n:
            raise ValidationError(
                f"Grid mismatch: {first.n} against {other.n} samples",
                argument="samples",
            )
        if other.circle != first.circle:
            raise ValidationError(
                "Boundary functions live on different circles",
                argument="circle",
            )


def scaled_sum(
    functions: Sequence[BoundaryFunction], weights: Sequence[complex]
) -> BoundaryFunction:
    """Linear combination Σ w_i f_i on a common grid"""
    if not functions or len(functions) != len(weights):
        raise ValidationError(
            "Need one weight per function", argument="weights"
        )
    _check_same_grid(functions)

    samples = sum(w * f.samples for w, f in zip(weights, functions))

    expr = None
    if all(f.expr is not None for f in functions):
        parts = [(w, f.expr) for w, f in zip(weights, functions)]

        def expr(theta):
            return sum(w * e(theta) for w, e in parts)

    analytic = all(f.smoothness == Smoothness.ANALYTIC for f in functions)
    return BoundaryFunction(
        functions[0].circle,
        samples,
        jumps=merge_jumps(*(f.jumps for f in functions)),
        smoothness=(
            Smoothness.ANALYTIC if analytic else Smoothness.PIECEWISE_SMOOTH
        ),
        expr=expr,
    )


def _lagrange_at_zero(nodes: np.ndarray, values: np.ndarray) -> complex:
    total = 0j
    for i, node in enumerate(nodes):
        others = np.delete(nodes, i)
        total += values[i] * np.prod(-others / (node - others))
    return total


def one_sided_limits(
    f: BoundaryFunction,
) -> List[Tuple[float, complex, complex]]:
    """Left and right limits of f at each declared jump

    Each limit is extrapolated from up to three samples on its own side of
    the jump, never reaching past a neighbouring jump. A sample sitting on
    the jump itself is not used.
    """
    thetas = f.thetas
    jumps = list(f.jumps)
    limits = []

    for i, t in enumerate(jumps):
        previous_gap = (t - jumps[i - 1]) % TWO_PI or TWO_PI
        next_gap = (jumps[(i + 1) % len(jumps)] - t) % TWO_PI or TWO_PI

        sides = []
        for direction, gap in ((-1.0, previous_gap), (1.0, next_gap)):
            offsets = np.mod(direction * (thetas - t), TWO_PI)
            usable = np.nonzero(
                (offsets > ANGLE_TOLERANCE)
                & (offsets < gap - ANGLE_TOLERANCE)
            )[0]
            nearest = usable[np.argsort(offsets[usable])][
                :EXTRAPOLATION_POINTS
            ]
            if nearest.shape[0] == 0:
                logger.warning(
                    "No samples between jumps near angle %r, taking a "
                    "zero jump",
                    t,
                )
                sides.append(None)
                continue
            sides.append(
                _lagrange_at_zero(
                    direction * offsets[nearest], f.samples[nearest]
                )
            )

        left, right = sides
        if left is None or right is None:
            left = right = left if left is not None else right
            if left is None:
                left = right = 0j
        limits.append((t, complex(left), complex(right)))

    return limits


def jump_sizes(f: BoundaryFunction) -> List[Tuple[float, complex]]:
    """Jump sizes d = f(t+) - f(t-) at each declared jump"""
    return [(t, right - left) for t, left, right in one_sided_limits(f)]


def _complex_param(params: Mapping[str, Any], name: str, default=None):
    value = params.get(name, default)
    if value is None:
        raise ConfigError("missing parameter", field=f"params.{name}")
    if isinstance(value, bool):
        raise ConfigError("expected a number", field=f"params.{name}")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for v in value
        )
    ):
        return complex(value[0], value[1])
    raise ConfigError(
        "expected a number or a [re, im] pair", field=f"params.{name}"
    )


def _real_param(params: Mapping[str, Any], name: str, default=None) -> float:
    value = _complex_param(params, name, default)
    if value.imag != 0:
        raise ConfigError("expected a real number", field=f"params.{name}")
    return value.real


def _const(params):
    value = _complex_param(params, "value")
    return (
        lambda theta: np.full(np.shape(theta), value, dtype=complex),
        (),
        Smoothness.ANALYTIC,
    )


def _fourier_mode(params):
    mode = params.get("m", 1)
    if isinstance(mode, bool) or not isinstance(mode, int):
        raise ConfigError("expected an integer", field="params.m")
    amplitude = _complex_param(params, "amplitude", 1.0)
    phase = _real_param(params, "phase", 0.0)
    part = params.get("part", "complex")

    if part == "complex":
        def expr(theta):
            return amplitude * np.exp(1j * (mode * theta + phase))
    elif part == "re":
        def expr(theta):
            return amplitude * np.cos(mode * theta + phase)
    elif part == "im":
        def expr(theta):
            return amplitude * np.sin(mode * theta + phase)
    else:
        raise ConfigError(
            f"unknown part {part!r}, expected complex, re or im",
            field="params.part",
        )

    return expr, (), Smoothness.ANALYTIC


def _step(params):
    low = _complex_param(params, "a")
    high = _complex_param(params, "b")
    at = float(wrap_angle(_real_param(params, "at", math.pi)))
    back = float(wrap_angle(_real_param(params, "back", 0.0)))
    if abs(at - back) <= ANGLE_TOLERANCE:
        raise ConfigError(
            "step needs two distinct jump angles", field="params.at"
        )
    span = (at - back) % TWO_PI

    def expr(theta):
        position = np.mod(theta - back, TWO_PI)
        return np.where(position < span, low, high).astype(complex)

    return expr, (back, at), Smoothness.PIECEWISE_SMOOTH


def _sawtooth(params):
    shift = _real_param(params, "shift", 0.0)
    slope = _real_param(params, "slope", 1.0)

    def expr(theta):
        return slope * (
            np.mod(theta - shift + math.pi, TWO_PI) - math.pi
        ).astype(complex)

    return expr, (shift + math.pi,), Smoothness.PIECEWISE_SMOOTH


def _holder(params):
    at = _real_param(params, "at", 0.0)
    gamma = _real_param(params, "gamma", 0.5)
    amplitude = _complex_param(params, "amplitude", 1.0)
    if not gamma > 0:
        raise ConfigError("exponent must be positive", field="params.gamma")

    def expr(theta):
        return amplitude * np.abs(2.0 * np.sin((theta - at) / 2.0)) ** gamma

    return expr, (), Smoothness.PIECEWISE_SMOOTH


def _block(value, name):
    if not isinstance(value, Mapping) or "kind" not in value:
        raise ConfigError(
            "expected a block with a kind", field=f"params.{name}"
        )
    return _closed_form(value["kind"], value.get("params", {}))


def _sum(params):
    terms = params.get("terms")
    if not isinstance(terms, (list, tuple)) or not terms:
        raise ConfigError("expected a list of blocks", field="params.terms")
    weights = params.get("weights", [1.0] * len(terms))
    if not isinstance(weights, (list, tuple)):
        raise ConfigError(
            "expected a list of weights", field="params.weights"
        )
    if len(weights) != len(terms):
        raise ConfigError(
            "need one weight per term", field="params.weights"
        )

    parts = [_block(term, "terms") for term in terms]
    factors = [
        _complex_param({"w": w}, "w") for w in weights
    ]

    def expr(theta):
        return sum(w * part[0](theta) for w, part in zip(factors, parts))

    analytic = all(part[2] == Smoothness.ANALYTIC for part in parts)
    return (
        expr,
        merge_jumps(*(part[1] for part in parts)),
        Smoothness.ANALYTIC if analytic else Smoothness.PIECEWISE_SMOOTH,
    )


def _phase(params):
    inner, jumps, smoothness = _block(params.get("of"), "of")

    def expr(theta):
        return np.exp(1j * np.real(inner(theta)))

    return expr, jumps, smoothness


CLOSED_FORMS: Dict[str, Callable] = {
    "const": _const,
    "fourier_mode": _fourier_mode,
    "step": _step,
    "sawtooth": _sawtooth,
    "holder": _holder,
    "sum": _sum,
    "phase": _phase,
}


def _closed_form(kind, params):
    builder = CLOSED_FORMS.get(kind)
    if builder is None:
        raise ConfigError(f"unknown boundary data kind {kind!r}", field="kind")
    if not isinstance(params, Mapping):
        raise ConfigError("expected an object", field="params")
    return builder(params)


def sample_closed_form(
    kind: str,
    params: Mapping[str, Any],
    circle: BoundaryCircle = UNIT_CIRCLE,
    n: int = 4096,
    jumps: Sequence[float] = (),
) -> BoundaryFunction:
    """Sample a built-in closed form on the uniform grid of a circle

    Arguments:
        kind: One of const, fourier_mode, step, sawtooth, holder, sum,
            phase or samples
        params: Parameters of the closed form
        circle: Circle carrying the data
        n: Number of samples, a power of two
        jumps: Additional jump angles

    Raises:
        ConfigError: Unknown kind or malformed parameters
    """
    if kind == "samples":
        return _explicit_samples(params, circle, n, jumps)

    expr, intrinsic, smoothness = _closed_form(kind, params)
    merged = merge_jumps(intrinsic, jumps)

    return BoundaryFunction(
        circle,
        expr(angle_grid(n)),
        jumps=merged,
        smoothness=Smoothness.PIECEWISE_SMOOTH if merged else smoothness,
        expr=expr,
    )


def _explicit_samples(params, circle, n, jumps):
    values = params.get("values")
    if not isinstance(values, (list, tuple)):
        raise ConfigError("expected a list of values", field="params.values")
    if len(values) != n:
        raise ConfigError(
            f"got {len(values)} values for a grid of {n}",
            field="params.values",
        )
    samples = [
        _complex_param({"v": value}, "v") for value in values
    ]
    smoothness = params.get("smoothness", Smoothness.PIECEWISE_SMOOTH.value)
    try:
        smoothness = Smoothness(smoothness)
    except ValueError:
        raise ConfigError(
            f"unknown smoothness {smoothness!r}", field="params.smoothness"
        ) from None

    return BoundaryFunction(
        circle, samples, jumps=merge_jumps(jumps), smoothness=smoothness
    )
