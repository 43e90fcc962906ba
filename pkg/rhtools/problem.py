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
Problem files: the JSON description of a single Riemann–Hilbert problem
"""

import json
import logging
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from rhtools.boundary import (
    TWO_PI,
    UNIMODULAR_TOLERANCE,
    BoundaryCircle,
    BoundaryFunction,
    Orientation,
    normalize_coefficient,
    sample_closed_form,
)
from rhtools.errors import ConfigError, RhError

logger = logging.getLogger(__name__)

DISK = "disk"
ANNULUS = "annulus"

DEFAULT_LAMBDA = {"kind": "const", "params": {"value": 1.0}}


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _take(
    data: Mapping[str, Any], key: str, kind: type, path: str, default: Any
) -> Any:
    if key not in data:
        return default

    value = data[key]
    name = f"{path}.{key}" if path else key
    if kind is float:
        if not _is_number(value) or not math.isfinite(value):
            raise ConfigError("expected a finite number", field=name)
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError("expected an integer", field=name)
        return value
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError("expected true or false", field=name)
        return value
    if kind is str:
        if not isinstance(value, str) or not value:
            raise ConfigError("expected a non-empty string", field=name)
        return value
    raise TypeError(kind)


def _object(data: Any, path: str) -> Mapping[str, Any]:
    if not isinstance(data, Mapping):
        raise ConfigError("expected an object", field=path or None)
    return data


def _reject_unknown(data: Mapping[str, Any], known, path: str) -> None:
    for key in data:
        if key not in known:
            name = f"{path}.{key}" if path else key
            raise ConfigError("unknown key", field=name)


@dataclass(frozen=True)
class DataBlock:
    """A closed-form boundary data description"""

    kind: str
    params: Dict[str, Any] = field(default_factory=dict)
    jumps: Tuple[float, ...] = ()

    @classmethod
    def parse(cls, data: Any, path: str, n: int) -> "DataBlock":
        data = _object(data, path)
        _reject_unknown(data, ("kind", "params", "jumps", "n"), path)

        kind = _take(data, "kind", str, path, None)
        if kind is None:
            raise ConfigError("missing key", field=f"{path}.kind")
        params = dict(_object(data.get("params", {}), f"{path}.params"))

        if "n" in data and _take(data, "n", int, path, None) != n:
            raise ConfigError(
                f"block grid {data['n']} differs from solver.n = {n}",
                field=f"{path}.n",
            )

        jumps = data.get("jumps", [])
        if not isinstance(jumps, list) or not all(
            _is_number(t) and 0.0 <= t < TWO_PI for t in jumps
        ):
            raise ConfigError(
                "expected a list of angles in [0, 2π)", field=f"{path}.jumps"
            )

        block = cls(kind, params, tuple(float(t) for t in jumps))
        # fail at parse time rather than halfway through a solve
        block.sample(BoundaryCircle(), n, path)
        return block

    def sample(
        self, circle: BoundaryCircle, n: int, path: str = ""
    ) -> BoundaryFunction:
        try:
            return sample_closed_form(
                self.kind, self.params, circle, n, self.jumps
            )
        except ConfigError as e:
            if not path:
                raise
            name = f"{path}.{e.field}" if e.field else path
            raise ConfigError(e.message, field=name) from None
        except RhError as e:
            raise ConfigError(e.message, field=path or None) from None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "params": self.params,
            "jumps": list(self.jumps),
        }


@dataclass(frozen=True)
class ComponentData:
    """Coefficient λ and data φ on one boundary circle"""

    lam: DataBlock
    phi: DataBlock

    @classmethod
    def parse(cls, data: Any, path: str, n: int) -> "ComponentData":
        data = _object(data, path)
        _reject_unknown(data, ("lambda", "phi"), path)
        if "phi" not in data:
            raise ConfigError("missing key", field=f"{path}.phi")
        return cls(
            lam=DataBlock.parse(
                data.get("lambda", DEFAULT_LAMBDA), f"{path}.lambda", n
            ),
            phi=DataBlock.parse(data["phi"], f"{path}.phi", n),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {"lambda": self.lam.to_dict(), "phi": self.phi.to_dict()}


@dataclass(frozen=True)
class DomainSpec:
    type: str = DISK
    r: Optional[float] = None

    @classmethod
    def parse(cls, data: Any) -> "DomainSpec":
        data = _object(data, "domain")
        kind = _take(data, "type", str, "domain", None)

        if kind == DISK:
            _reject_unknown(data, ("type",), "domain")
            return cls(DISK)

        if kind == ANNULUS:
            _reject_unknown(data, ("type", "r"), "domain")
            r = _take(data, "r", float, "domain", None)
            if r is None or not 0.0 < r < 1.0:
                raise ConfigError(
                    "inner radius must lie in (0, 1)", field="domain.r"
                )
            return cls(ANNULUS, r)

        if kind == "circular":
            _reject_unknown(data, ("type", "circles"), "domain")
            return cls._from_circles(data.get("circles"))

        raise ConfigError(
            f"unknown domain type {kind!r}", field="domain.type"
        )

    @classmethod
    def _from_circles(cls, circles: Any) -> "DomainSpec":
        if not isinstance(circles, list) or not circles:
            raise ConfigError(
                "expected a list of circles", field="domain.circles"
            )
        if len(circles) > 2:
            raise ConfigError(
                f"annulus only: got {len(circles)} boundary circles",
                field="domain.circles",
            )

        parsed = []
        for i, circle in enumerate(circles):
            path = f"domain.circles.{i}"
            circle = _object(circle, path)
            _reject_unknown(circle, ("center", "radius"), path)
            center = circle.get("center", [0.0, 0.0])
            if (
                not isinstance(center, list)
                or len(center) != 2
                or not all(_is_number(c) for c in center)
            ):
                raise ConfigError(
                    "expected a [x, y] pair", field=f"{path}.center"
                )
            radius = _take(circle, "radius", float, path, None)
            if radius is None or radius <= 0:
                raise ConfigError(
                    "expected a positive radius", field=f"{path}.radius"
                )
            parsed.append((complex(center[0], center[1]), radius))

        if any(center != 0 for center, _ in parsed):
            raise ConfigError(
                "annulus only: circles must be centered at the origin",
                field="domain.circles",
            )

        radii = sorted(radius for _, radius in parsed)
        if radii[-1] != 1.0:
            raise ConfigError(
                "annulus only: the outer circle must be the unit circle",
                field="domain.circles",
            )
        if len(radii) == 1:
            return cls(DISK)
        if not radii[0] < 1.0:
            raise ConfigError(
                "annulus only: circles must be disjoint",
                field="domain.circles",
            )
        return cls(ANNULUS, radii[0])

    @property
    def circles(self) -> Dict[str, BoundaryCircle]:
        if self.type == DISK:
            return {"boundary": BoundaryCircle()}
        return {
            "outer": BoundaryCircle(0j, 1.0, Orientation.OUTER),
            "inner": BoundaryCircle(0j, self.r, Orientation.INNER),
        }

    def to_dict(self) -> Dict[str, Any]:
        if self.type == DISK:
            return {"type": DISK}
        return {"type": ANNULUS, "r": self.r}


@dataclass(frozen=True)
class SolverParams:
    n: int = 4096
    m: int = 2048
    sigma: bool = False

    @classmethod
    def parse(cls, data: Any, defaults: "SolverParams") -> "SolverParams":
        data = _object(data, "solver")
        _reject_unknown(data, ("n", "m", "sigma"), "solver")

        n = _take(data, "n", int, "solver", defaults.n)
        if n < 8 or n & (n - 1):
            raise ConfigError(
                "must be a power of two and at least 8", field="solver.n"
            )
        # an inherited mode count shrinks with the grid
        m = _take(data, "m", int, "solver", min(defaults.m, n // 2))
        if not 1 <= m <= n // 2:
            raise ConfigError(
                f"must lie in [1, n/2] = [1, {n // 2}]", field="solver.m"
            )
        sigma = _take(data, "sigma", bool, "solver", defaults.sigma)
        return cls(n, m, sigma)

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "m": self.m, "sigma": self.sigma}


@dataclass(frozen=True)
class VerifyParams:
    probes: int = 64
    ladder_base: float = 1e-2
    ladder_count: int = 3
    aperture: float = math.pi / 4
    delta_excl: Optional[float] = None
    tolerance: float = 1e-3
    sheet: int = 0

    @classmethod
    def parse(cls, data: Any, defaults: "VerifyParams") -> "VerifyParams":
        data = _object(data, "verify")
        _reject_unknown(
            data,
            (
                "probes",
                "ladder_base",
                "ladder_count",
                "aperture",
                "delta_excl",
                "tolerance",
                "sheet",
            ),
            "verify",
        )
        params = cls(
            probes=_take(data, "probes", int, "verify", defaults.probes),
            ladder_base=_take(
                data, "ladder_base", float, "verify", defaults.ladder_base
            ),
            ladder_count=_take(
                data, "ladder_count", int, "verify", defaults.ladder_count
            ),
            aperture=_take(
                data, "aperture", float, "verify", defaults.aperture
            ),
            delta_excl=(
                None
                if data.get("delta_excl", defaults.delta_excl) is None
                else _take(
                    data, "delta_excl", float, "verify", defaults.delta_excl
                )
            ),
            tolerance=_take(
                data, "tolerance", float, "verify", defaults.tolerance
            ),
            sheet=_take(data, "sheet", int, "verify", defaults.sheet),
        )
        if params.tolerance <= 0:
            raise ConfigError("must be positive", field="verify.tolerance")
        if params.delta_excl is not None and params.delta_excl < 0:
            raise ConfigError("must not be negative", field="verify.delta_excl")
        return params

    def to_dict(self) -> Dict[str, Any]:
        return {
            "probes": self.probes,
            "ladder_base": self.ladder_base,
            "ladder_count": self.ladder_count,
            "aperture": self.aperture,
            "delta_excl": self.delta_excl,
            "tolerance": self.tolerance,
            "sheet": self.sheet,
        }


OUTPUT_NAMES = (
    "traces",
    "interior",
    "report",
    "summary",
    "monodromy",
    "coefficients",
)


@dataclass(frozen=True)
class OutputPaths:
    traces: str = "traces.csv"
    interior: str = "interior.csv"
    report: str = "report.csv"
    summary: str = "summary.json"
    monodromy: str = "monodromy.csv"
    coefficients: Optional[str] = None

    @classmethod
    def parse(cls, data: Any) -> "OutputPaths":
        data = _object(data, "outputs")
        _reject_unknown(data, OUTPUT_NAMES, "outputs")
        defaults = cls()
        paths = {}
        for name in OUTPUT_NAMES:
            if data.get(name) is None:
                paths[name] = getattr(defaults, name)
            else:
                paths[name] = _take(data, name, str, "outputs", None)

        seen = {}
        for name in OUTPUT_NAMES:
            if paths[name] is None:
                continue
            key = os.path.normpath(paths[name])
            if key in seen:
                raise ConfigError(
                    f"same path as outputs.{seen[key]}",
                    field=f"outputs.{name}",
                )
            seen[key] = name
        return cls(**paths)

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in OUTPUT_NAMES}


@dataclass(frozen=True)
class ProblemConfig:
    """A parsed problem file

    Component names are ``boundary`` for the disk and ``outer``/``inner``
    for the annulus.
    """

    domain: DomainSpec
    components: Tuple[Tuple[str, ComponentData], ...]
    solver: SolverParams = SolverParams()
    verify: VerifyParams = VerifyParams()
    outputs: OutputPaths = OutputPaths()
    family: Tuple[float, ...] = ()
    interior_points: Tuple[complex, ...] = ()
    sheets: Tuple[int, ...] = (0,)

    @classmethod
    def from_dict(
        cls,
        data: Any,
        solver_defaults: SolverParams = SolverParams(),
        verify_defaults: VerifyParams = VerifyParams(),
    ) -> "ProblemConfig":
        data = _object(data, "")
        _reject_unknown(
            data,
            (
                "domain",
                "boundary",
                "outer",
                "inner",
                "solver",
                "verify",
                "outputs",
                "family",
                "interior_points",
                "sheets",
            ),
            "",
        )
        if "domain" not in data:
            raise ConfigError("missing key", field="domain")

        domain = DomainSpec.parse(data["domain"])
        solver = SolverParams.parse(data.get("solver", {}), solver_defaults)
        verify = VerifyParams.parse(data.get("verify", {}), verify_defaults)

        components = []
        for name in domain.circles:
            if name not in data:
                raise ConfigError(
                    f"missing key for a {domain.type} domain", field=name
                )
            components.append(
                (name, ComponentData.parse(data[name], name, solver.n))
            )
        for name in ("boundary", "outer", "inner"):
            if name in data and name not in domain.circles:
                raise ConfigError(
                    f"not a boundary of a {domain.type} domain", field=name
                )

        return cls(
            domain=domain,
            components=tuple(components),
            solver=solver,
            verify=verify,
            outputs=OutputPaths.parse(data.get("outputs", {})),
            family=_parse_family(data.get("family", [])),
            interior_points=_parse_points(data.get("interior_points", [])),
            sheets=_parse_sheets(data.get("sheets", [0])),
        )

    @classmethod
    def loads(cls, text: str, **defaults) -> "ProblemConfig":
        """Parse a problem from JSON text

        Raises:
            ConfigError: Malformed JSON (with line number) or an invalid
                field (with its dotted path)
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"{e.msg} (column {e.colno})", line=e.lineno
            ) from None
        return cls.from_dict(data, **defaults)

    @classmethod
    def load(cls, path: Path, **defaults) -> "ProblemConfig":
        text = Path(path).expanduser().read_text(encoding="utf-8")
        logger.debug("Loaded problem file %s", path)
        return cls.loads(text, **defaults)

    def component(self, name: str) -> ComponentData:
        for key, data in self.components:
            if key == name:
                return data
        raise KeyError(name)

    def boundary_data(
        self, name: str
    ) -> Tuple[BoundaryFunction, BoundaryFunction]:
        """Sampled λ and φ of one boundary component

        A nonvanishing λ that is not unimodular is divided out, leaving
        λ/|λ| and φ/|λ|.

        Raises:
            ConfigError: A block fails to sample or λ vanishes
        """
        data = self.component(name)
        circle = self.domain.circles[name]
        n = self.solver.n
        lam = data.lam.sample(circle, n, f"{name}.lambda")
        phi = data.phi.sample(circle, n, f"{name}.phi")

        deviation = float(np.max(np.abs(np.abs(lam.samples) - 1.0)))
        if deviation <= UNIMODULAR_TOLERANCE:
            return lam, phi

        logger.info(
            "Normalizing %s coefficient, |λ| deviates from 1 by %.3e",
            name,
            deviation,
        )
        try:
            return normalize_coefficient(lam, phi)
        except RhError as e:
            raise ConfigError(e.message, field=f"{name}.lambda") from None

    def with_family(self, family) -> "ProblemConfig":
        return replace(self, family=_parse_family(list(family)))

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "domain": self.domain.to_dict(),
            "solver": self.solver.to_dict(),
            "verify": self.verify.to_dict(),
            "outputs": self.outputs.to_dict(),
            "family": list(self.family),
            "interior_points": [[z.real, z.imag] for z in self.interior_points],
            "sheets": list(self.sheets),
        }
        for name, component in self.components:
            data[name] = component.to_dict()
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _parse_family(values: Any) -> Tuple[float, ...]:
    if not isinstance(values, list) or not all(
        _is_number(c) and math.isfinite(c) for c in values
    ):
        raise ConfigError("expected a list of finite numbers", field="family")
    return tuple(float(c) for c in values)


def _parse_points(values: Any) -> Tuple[complex, ...]:
    if not isinstance(values, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(_is_number(v) for v in p)
        for p in values
    ):
        raise ConfigError(
            "expected a list of [re, im] pairs", field="interior_points"
        )
    return tuple(complex(p[0], p[1]) for p in values)


def _parse_sheets(values: Any) -> Tuple[int, ...]:
    if (
        not isinstance(values, list)
        or not values
        or not all(
            isinstance(s, int) and not isinstance(s, bool) for s in values
        )
    ):
        raise ConfigError("expected a list of integers", field="sheets")
    return tuple(values)
