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
Riemann–Hilbert problem on the annulus r < |z| < 1

The universal cover of the annulus by the unit disk is the composition

    w ↦ T(w) = i(1 + w)/(1 - w)     disk onto the upper half-plane
    T ↦ exp(i·a·log T)              half-plane onto the annulus

with a = -ln(r)/π. The positive real axis of the half-plane goes to the
outer circle, the negative one to the inner circle. The deck group is
generated by the dilation T ↦ μT, μ = e^{2π/a}; one counterclockwise turn
around the annulus advances a lift by one deck step.

Boundary data is pulled back to the disk, solved there, and the annulus
solution is the multivalued f = F∘h with h the inverse of the cover. Its
branches are indexed by integer sheets, see CoveringMap.branch.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from rhtools.boundary import (
    TWO_PI,
    BoundaryCircle,
    BoundaryFunction,
    Orientation,
    Smoothness,
    angle_grid,
    jump_sample_indices,
    merge_jumps,
    wrap_angle,
)
from rhtools.disk import EXPONENT_SNAP, DiskSolution, solve_disk
from rhtools.errors import (
    ContinuationError,
    DomainError,
    ResolutionError,
    ValidationError,
)

logger = logging.getLogger(__name__)

# the deck transformation fixes the disk points w = ±1, i.e. θ = 0 and π
FIXED_ANGLES = (0.0, math.pi)

PATH_MARGIN = 1e-8
START_TOLERANCE = 1e-8
MAX_HALVINGS = 40

NEWTON_ITERATIONS = 30
NEWTON_STEP_TOLERANCE = 1e-15
NEWTON_RESIDUAL_TOLERANCE = 1e-14

# an accepted step moves the lift by at most this share of its distance
# to the circle
STEP_SAFETY = 0.25

CORE_LOOP_VERTICES = 512

# one step of the disk grid may move pulled-back data by at most this share
# of its range on the arcs over sheet 0
MAX_STEP_VARIATION = 0.25

# data beyond the grid's reach must be constant to this relative tolerance
CONSTANT_TOLERANCE = 1e-12
UNREACHED_ANGLES = 256


@dataclass(frozen=True)
class AnnulusDomain:
    inner_radius: float
    outer: BoundaryCircle = field(init=False)
    inner: BoundaryCircle = field(init=False)

    def __post_init__(self):
        r = float(self.inner_radius)
        if not 0.0 < r < 1.0:
            raise DomainError(f"Inner radius must lie in (0, 1), got {r}")
        object.__setattr__(self, "inner_radius", r)
        object.__setattr__(
            self, "outer", BoundaryCircle(0j, 1.0, Orientation.OUTER)
        )
        object.__setattr__(
            self, "inner", BoundaryCircle(0j, r, Orientation.INNER)
        )

    @property
    def boundary(self) -> Tuple[BoundaryCircle, BoundaryCircle]:
        return (self.outer, self.inner)

    @property
    def core_radius(self) -> float:
        return (1.0 + self.inner_radius) / 2.0

    def contains(self, z: Any, margin: float = 0.0) -> np.ndarray:
        modulus = np.abs(np.asarray(z, dtype=complex))
        return (modulus > self.inner_radius + margin) & (
            modulus < 1.0 - margin
        )


@dataclass(frozen=True)
class CoveringMap:
    """The universal covering map G of the annulus by the unit disk"""

    r: float

    def __post_init__(self):
        if not 0.0 < self.r < 1.0:
            raise DomainError(f"Inner radius must lie in (0, 1), got {self.r}")

    @property
    def a(self) -> float:
        return -math.log(self.r) / math.pi

    @property
    def mu(self) -> float:
        return math.exp(TWO_PI / self.a)

    @staticmethod
    def T(w: Any) -> Any:
        w = np.asarray(w, dtype=complex)
        return 1j * (1.0 + w) / (1.0 - w)

    @staticmethod
    def T_inv(x: Any) -> Any:
        x = np.asarray(x, dtype=complex)
        return (x - 1j) / (x + 1j)

    def log_T(self, w: Any) -> Any:
        return np.log(self.T(w))

    def G(self, w: Any) -> Any:
        return np.exp(1j * self.a * self.log_T(w))

    def dG(self, w: Any) -> Any:
        w = np.asarray(w, dtype=complex)
        return self.G(w) * 2j * self.a / (1.0 - w**2)

    def deck(self, w: Any, power: int = 1) -> Any:
        return self.T_inv(self.mu**power * self.T(w))

    def branch(self, z: Any, sheet: int = 0) -> Any:
        """The inverse branch w of G at z on the given sheet

        Sheet k is the preimage with ln|T(w)| = (θ_z + 2πk)/a where
        θ_z ∈ [-π, π) is the argument of z. Sheets k and k + 1 differ by
        one deck step.

        Raises:
            DomainError: z is not inside the annulus
        """
        z = np.asarray(z, dtype=complex)
        modulus = np.abs(z)
        if np.any((modulus <= self.r) | (modulus >= 1.0)):
            raise DomainError("Point is not inside the annulus")

        theta = np.angle(z)
        theta = np.where(theta >= math.pi, -math.pi, theta)
        log_t = (theta + TWO_PI * sheet) / self.a - 1j * np.log(
            modulus
        ) / self.a
        return self.T_inv(np.exp(log_t))

    def grid_reach(self, n: int) -> float:
        """Largest |θ| on sheet 0 whose preimages on the unit circle lie
        between samples of the n-point grid

        The samples next to the fixed points sit at ln|T| = ±ln cot(π/n).
        """
        return self.a * math.log(1.0 / math.tan(math.pi / n))

    def samples_for_sheet(self) -> float:
        """Grid size at which grid_reach covers all of sheet 0"""
        return math.pi / math.atan(math.exp(-min(math.pi / self.a, 700.0)))

    def sheet_of(self, w: Any) -> Any:
        """Sheet index of disk points, inverse of branch"""
        z = self.G(w)
        theta = np.angle(z)
        theta = np.where(theta >= math.pi, -math.pi, theta)
        real_log = np.real(self.log_T(w))
        return np.rint((real_log * self.a - theta) / TWO_PI).astype(int)

    def _correspondence(self, theta: Any) -> Tuple[np.ndarray, np.ndarray]:
        theta = wrap_angle(theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            x = -1.0 / np.tan(theta / 2.0)
            angle = wrap_angle(
                np.nan_to_num(self.a * np.log(np.abs(x)), posinf=0.0)
            )
        return x > 0, angle

    def boundary_point(self, theta: float) -> Tuple[Orientation, float]:
        """Annulus boundary point corresponding to the disk point e^{iθ}

        Raises:
            DomainError: θ is a fixed point of the deck transformation
        """
        theta = float(wrap_angle(theta))
        if any(abs(theta - t) <= 1e-15 for t in FIXED_ANGLES):
            raise DomainError(
                f"Angle {theta!r} is a fixed point of the deck group"
            )
        on_outer, angle = self._correspondence(theta)
        component = Orientation.OUTER if on_outer else Orientation.INNER
        return component, float(angle)

    def pulled_jumps(
        self, jumps: Sequence[float], component: Orientation, step: float
    ) -> Tuple[List[float], int]:
        """Disk angles of all preimages of boundary jumps, except those
        closer than one grid step to a fixed point"""
        found, dropped = [], 0
        reach = math.log(4.0 / step) + 1.0
        k_max = int(math.ceil(reach * self.a / TWO_PI)) + 1

        for s in jumps:
            for k in range(-k_max, k_max + 1):
                exponent = (s + TWO_PI * k) / self.a
                if abs(exponent) > reach:
                    continue
                x = math.exp(exponent)
                if component == Orientation.OUTER:
                    theta = TWO_PI - 2.0 * math.atan(1.0 / x)
                else:
                    theta = 2.0 * math.atan(1.0 / x)
                if min(abs(theta - t) for t in (0.0, math.pi, TWO_PI)) <= step:
                    dropped += 1
                    continue
                found.append(theta)
        return found, dropped

    def pull_back(
        self,
        outer: BoundaryFunction,
        inner: BoundaryFunction,
        n: Optional[int] = None,
    ) -> BoundaryFunction:
        """Data on the unit circle composed with the boundary correspondence

        One period of the correspondence determines the result, which is
        invariant under the deck group. The fixed points θ = 0 and π are
        always jumps; their samples take the value of the next sample.
        """
        n = n or outer.n
        thetas = angle_grid(n)
        step = TWO_PI / n

        def expr(theta):
            theta = np.asarray(theta, dtype=float)
            on_outer, angle = self._correspondence(theta)
            return np.where(
                on_outer, outer.value_at(angle), inner.value_at(angle)
            )

        values = expr(thetas)
        for j in jump_sample_indices(thetas, FIXED_ANGLES):
            values[j] = values[(j + 1) % n]

        outer_jumps, outer_dropped = self.pulled_jumps(
            outer.jumps, Orientation.OUTER, step
        )
        inner_jumps, inner_dropped = self.pulled_jumps(
            inner.jumps, Orientation.INNER, step
        )
        if outer_dropped or inner_dropped:
            logger.warning(
                "Dropped %d pulled-back jumps within one grid step of a "
                "deck fixed point",
                outer_dropped + inner_dropped,
            )

        return BoundaryFunction(
            BoundaryCircle(),
            values,
            jumps=merge_jumps(FIXED_ANGLES, outer_jumps, inner_jumps),
            smoothness=Smoothness.PIECEWISE_SMOOTH,
            expr=expr,
        )


def covering_map(r: float) -> CoveringMap:
    """The explicit universal cover of r < |z| < 1

    Raises:
        DomainError: r outside (0, 1)
    """
    return CoveringMap(float(r))


def _newton(
    cover: CoveringMap, z: complex, w: complex
) -> Optional[complex]:
    for _ in range(NEWTON_ITERATIONS):
        defect = complex(cover.G(w)) - z
        if abs(defect) <= NEWTON_RESIDUAL_TOLERANCE:
            return w
        delta = defect / complex(cover.dG(w))
        w = w - delta
        if abs(w) >= 1.0:
            return None
        if abs(delta) <= NEWTON_STEP_TOLERANCE:
            return w
    if abs(complex(cover.G(w)) - z) <= 1e3 * NEWTON_RESIDUAL_TOLERANCE:
        return w
    return None


def lift_path(
    cover: CoveringMap,
    path: Sequence[complex],
    start_branch: complex,
    *,
    max_halvings: int = MAX_HALVINGS,
) -> np.ndarray:
    """Continue a branch of the inverse cover along a polyline

    Each segment is walked in steps that Newton's method inverts from the
    previous lift. A step is accepted once the predicted move of the lift
    stays well inside the disk; otherwise it is halved.

    Arguments:
        cover: The covering map
        path: Polyline vertices inside the annulus
        start_branch: Disk point over the first vertex
        max_halvings: Smallest admissible step is 2^-max_halvings of a
            segment

    Returns:
        The lifted vertices

    Raises:
        DomainError: The path leaves the annulus or comes closer than
            PATH_MARGIN to its boundary
        ValidationError: start_branch does not lie over the first vertex
        ContinuationError: The step had to be halved too often
    """
    path = np.asarray(path, dtype=complex).reshape(-1)
    if path.shape[0] == 0:
        raise ValidationError("Empty path", argument="path")

    modulus = np.abs(path)
    if np.any(
        (modulus <= cover.r + PATH_MARGIN) | (modulus >= 1.0 - PATH_MARGIN)
    ):
        raise DomainError(
            f"Path leaves the annulus or comes within {PATH_MARGIN} of "
            "its boundary"
        )

    w = complex(start_branch)
    if abs(w) >= 1.0 or abs(complex(cover.G(w)) - path[0]) > START_TOLERANCE:
        raise ValidationError(
            "Start branch does not lie over the start of the path",
            argument="start_branch",
        )

    lifted = [w]
    steps = 0
    smallest = 2.0**-max_halvings
    for begin, end in zip(path[:-1], path[1:]):
        done, fraction, current = 0.0, 1.0, begin
        while done < 1.0:
            fraction = min(fraction, 1.0 - done)
            target = begin + (done + fraction) * (end - begin)
            predicted = abs(target - current) / abs(complex(cover.dG(w)))
            moved = None
            if predicted <= STEP_SAFETY * (1.0 - abs(w)):
                moved = _newton(cover, target, w)

            if moved is None:
                fraction /= 2.0
                if fraction < smallest:
                    raise ContinuationError(
                        f"Step halved more than {max_halvings} times near "
                        f"{complex(current)!r}; refine the path"
                    )
                continue

            w, current = moved, target
            done += fraction
            fraction *= 2.0
            steps += 1
        lifted.append(w)

    logger.debug(
        "Lifted %d vertices in %d continuation steps", path.shape[0], steps
    )
    return np.array(lifted)


def core_loop(
    start: complex, vertices: int = CORE_LOOP_VERTICES
) -> np.ndarray:
    """Closed counterclockwise polyline through start, centered at 0"""
    start = complex(start)
    angles = np.angle(start) + TWO_PI * np.arange(vertices + 1) / vertices
    return abs(start) * np.exp(1j * angles)


@dataclass(frozen=True, eq=False)
class AnnulusSolution:
    """The multivalued solution f = F∘h on the annulus"""

    domain: AnnulusDomain
    cover: CoveringMap
    disk_solution: DiskSolution
    basepoint: complex
    base_branch: complex
    outer_data: Tuple[BoundaryFunction, BoundaryFunction]
    inner_data: Tuple[BoundaryFunction, BoundaryFunction]

    def data(
        self, component: Orientation
    ) -> Tuple[BoundaryFunction, BoundaryFunction]:
        """Coefficient and data on one boundary circle"""
        if Orientation(component) == Orientation.OUTER:
            return self.outer_data
        return self.inner_data

    def evaluate(self, z: Any, sheet: int = 0) -> Any:
        return self.disk_solution.evaluate(self.cover.branch(z, sheet))

    def evaluate_along(
        self, path: Sequence[complex], start_branch: Optional[complex] = None
    ) -> np.ndarray:
        """Values of f continued along a polyline"""
        path = np.asarray(path, dtype=complex).reshape(-1)
        if start_branch is None:
            start_branch = complex(self.cover.branch(path[0], 0))
        lifted = lift_path(self.cover, path, start_branch)
        return self.disk_solution.evaluate(lifted)

    def residual(
        self,
        component: Orientation,
        theta: Any,
        z: Any,
        sheet: int = 0,
    ) -> np.ndarray:
        """|Re{conj(λ(θ))·f(z)} - φ(θ)| against the data of one circle"""
        lam, phi = self.data(component)
        return np.abs(
            np.real(np.conj(lam.value_at(theta)) * self.evaluate(z, sheet))
            - np.real(phi.value_at(theta))
        )

    def interior_rows(
        self, points: Sequence[complex], sheets: Sequence[int] = (0,)
    ) -> List[Tuple]:
        points = np.asarray(points, dtype=complex).reshape(-1)
        rows = []
        for sheet in sheets:
            values = self.evaluate(points, sheet)
            rows.extend(
                (
                    float(z.real),
                    float(z.imag),
                    int(sheet),
                    float(f.real),
                    float(f.imag),
                )
                for z, f in zip(points, values)
            )
        return rows


def _check_data(
    data: Sequence[Tuple[str, BoundaryFunction, BoundaryCircle]],
) -> None:
    n = data[0][1].n
    for name, f, circle in data:
        if f.circle != circle:
            raise ValidationError(
                f"Data lives on {f.circle}, expected {circle}", argument=name
            )
        if f.n != n:
            raise ValidationError(
                f"Grid mismatch: {f.n} samples against {n}", argument=name
            )


def _check_reach(
    cover: CoveringMap,
    data: Sequence[Tuple[str, BoundaryFunction]],
) -> None:
    # beyond the grid's reach the cover squeezes sheet 0 into the last grid
    # step before w = ±1, where only constant data survives sampling
    n = data[0][1].n
    reach = cover.grid_reach(n)
    if reach >= math.pi:
        return

    unreached = np.linspace(reach, math.pi, UNREACHED_ANGLES)
    unreached = np.concatenate([unreached, -unreached])
    for name, f in data:
        thetas = f.thetas
        centered = np.where(thetas >= math.pi, thetas - TWO_PI, thetas)
        values = np.concatenate(
            [f.samples[np.abs(centered) >= reach], f.value_at(unreached)]
        )
        spread = float(np.max(np.abs(values - values[0])))
        scale = max(1.0, float(np.max(np.abs(f.samples))))
        if spread > CONSTANT_TOLERANCE * scale:
            raise ResolutionError(
                f"{name} varies on {reach:.4g} < |θ| ≤ π, which the "
                f"{n}-sample grid does not reach on the cover; the data "
                f"must be constant there or the grid needs about "
                f"{cover.samples_for_sheet():.3g} samples"
            )


def _check_variation(
    cover: CoveringMap,
    name: str,
    pulled: BoundaryFunction,
    outer: BoundaryFunction,
    inner: BoundaryFunction,
) -> None:
    samples = np.concatenate([outer.samples, inner.samples])
    scale = 2.0 * float(np.max(np.abs(samples - np.mean(samples))))
    if scale == 0.0:
        return

    n = pulled.n
    thetas = pulled.thetas
    step = TWO_PI / n
    with np.errstate(divide="ignore"):
        log_x = -np.log(np.abs(np.tan(thetas / 2.0)))
    on_arc = np.abs(log_x) <= math.pi / cover.a
    on_arc[jump_sample_indices(thetas, FIXED_ANGLES)] = False

    usable = on_arc & np.roll(on_arc, -1)
    for t in pulled.jumps:
        position = t / step
        usable[int(math.floor(position - 1e-9)) % n] = False
        usable[int(math.floor(position + 1e-9)) % n] = False

    values = pulled.samples
    change = np.abs(np.roll(values, -1) - values)
    change[~usable] = 0.0
    worst = int(np.argmax(change))
    if change[worst] <= MAX_STEP_VARIATION * scale:
        return

    on_outer = thetas[worst] > math.pi
    component = Orientation.OUTER if on_outer else Orientation.INNER
    angle = float(cover.a * log_x[worst])
    raise ResolutionError(
        f"{name}_{component.value} changes by {change[worst]:.3g} between "
        f"neighbouring disk samples near θ = {angle:.4g}; the {n}-sample "
        "grid does not resolve its pullback there"
    )


def _check_fixed_points(sol: DiskSolution) -> None:
    for t, d in sol.g.decomposition.jumps:
        distance = min(abs(math.remainder(t - f, TWO_PI)) for f in FIXED_ANGLES)
        if distance > 1e-10:
            continue
        if abs(d) > EXPONENT_SNAP * math.pi:
            raise ResolutionError(
                f"The coefficient's argument jumps by {d:.6g} at the deck "
                f"fixed point w = {math.cos(t):+.0f}; the pulled-back "
                "weight is singular there on scales the disk grid cannot "
                "resolve"
            )


def solve_annulus(
    r: float,
    lam_outer: BoundaryFunction,
    phi_outer: BoundaryFunction,
    lam_inner: BoundaryFunction,
    phi_inner: BoundaryFunction,
    *,
    modes: Optional[int] = None,
    sigma: bool = False,
    basepoint: Optional[complex] = None,
) -> AnnulusSolution:
    """Solve Re{conj(λ)·f} = φ on both circles of r < |z| < 1

    The data is pulled back to the unit disk through the cover and solved
    there.

    The uniform disk grid reaches sheet 0 of the cover only up to
    CoveringMap.grid_reach; beyond it the data must be constant. Pulled
    back onto the arcs over sheet 0 the data must be resolved by the grid,
    and the coefficient's argument must not jump at the deck fixed points.

    Arguments:
        r: Inner radius
        lam_outer, phi_outer: Coefficient and data on |z| = 1
        lam_inner, phi_inner: Coefficient and data on |z| = r
        modes: Taylor modes of the disk solve
        sigma: Apply Lanczos sigma factors
        basepoint: Base point for branch bookkeeping, default -(1 + r)/2

    Raises:
        DomainError: r outside (0, 1) or basepoint outside the annulus
        ValidationError: Mismatched grids or circles, invalid data
        ResolutionError: The disk grid does not resolve the pulled-back
            problem; the message names the offending arc or fixed point
        ScalingError: See solve_disk
    """
    domain = AnnulusDomain(r)
    cover = covering_map(r)
    _check_data(
        [
            ("lambda_outer", lam_outer, domain.outer),
            ("phi_outer", phi_outer, domain.outer),
            ("lambda_inner", lam_inner, domain.inner),
            ("phi_inner", phi_inner, domain.inner),
        ],
    )
    phi_outer.require_real("phi_outer")
    phi_inner.require_real("phi_inner")

    _check_reach(
        cover,
        [
            ("lambda_outer", lam_outer),
            ("phi_outer", phi_outer),
            ("lambda_inner", lam_inner),
            ("phi_inner", phi_inner),
        ],
    )

    lam = cover.pull_back(lam_outer, lam_inner)
    phi = cover.pull_back(phi_outer, phi_inner)
    _check_variation(cover, "lambda", lam, lam_outer, lam_inner)
    _check_variation(cover, "phi", phi, phi_outer, phi_inner)

    disk_solution = solve_disk(lam, phi, modes, sigma=sigma)
    _check_fixed_points(disk_solution)

    if basepoint is None:
        basepoint = -domain.core_radius
    basepoint = complex(basepoint)
    base_branch = complex(cover.branch(basepoint, 0))

    logger.debug(
        "Solved annulus problem r=%r, base branch %r over %r",
        r,
        base_branch,
        basepoint,
    )

    return AnnulusSolution(
        domain=domain,
        cover=cover,
        disk_solution=disk_solution,
        basepoint=basepoint,
        base_branch=base_branch,
        outer_data=(lam_outer, phi_outer),
        inner_data=(lam_inner, phi_inner),
    )


def monodromy(sol: AnnulusSolution) -> complex:
    """Increment of f after one counterclockwise turn around the core

    Raises:
        ContinuationError: The loop could not be lifted
    """
    loop = core_loop(sol.basepoint)
    lifted = lift_path(sol.cover, loop, sol.base_branch)
    values = sol.disk_solution.evaluate(lifted[[0, -1]])
    return complex(values[1] - values[0])


def lifted_approach_angles(
    cover: CoveringMap,
    theta: float,
    ts: Sequence[float],
    component: Orientation,
    sheet: int = 0,
) -> np.ndarray:
    """Angles between lifted radial approaches and the disk normal

    A radial approach to the annulus boundary point at angle θ is lifted
    to the given sheet. The result holds, per distance t, the angle between
    the chord from the limiting disk boundary point to the lifted point and
    the inward normal there; values below π/2 mean a nontangential lift.
    """
    ts = np.asarray(ts, dtype=float)
    phase = np.exp(1j * theta)
    if Orientation(component) == Orientation.OUTER:
        z = (1.0 - ts) * phase
        arg_t = 0.0
    else:
        z = cover.r * (1.0 + ts) * phase
        arg_t = math.pi

    lifted = cover.branch(z, sheet)

    angle = float(np.angle(phase))
    if angle >= math.pi:
        angle = -math.pi
    limit = complex(
        cover.T_inv(
            np.exp((angle + TWO_PI * sheet) / cover.a + 1j * arg_t)
        )
    )
    return np.abs(np.angle((lifted - limit) / -limit))
