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
Module to store rh-tools settings
"""

import configparser
import logging
import math

from rhtools.errors import ConfigError
from rhtools.problem import SolverParams, VerifyParams

logger = logging.getLogger(__name__)


class Config:
    def __init__(self):
        self._config = {}

        self._config["solver"] = dict(n="4096", m="2048", sigma="false")
        self._config["verify"] = dict(
            probes="64",
            ladder_base="1e-2",
            ladder_count="3",
            aperture=repr(math.pi / 4),
            delta_excl="",
            tolerance="1e-3",
        )
        self._config["output"] = dict(directory=".")

        self._defaults = dict()

    def load(self, filepath):
        path = filepath.expanduser()

        config = configparser.ConfigParser(default_section="main")

        with path.open() as f:
            config.read_file(f)

        if "defaults" in config:
            logger.warning(
                "Warning: Loaded config file %s contains deprecated "
                "'defaults' section. Use the 'solver' section instead.",
                str(filepath),
            )
            for key in ("n", "m", "sigma"):
                value = config.get("defaults", key, fallback=None)
                if value is not None:
                    self._config["solver"][key] = value

        self._defaults.update(config.defaults())

        for section in config.sections():
            if section == "defaults":
                continue

            for key, value in config.items(section):
                self._config.setdefault(section, dict())[key] = value

    def defaults(self):
        return self._defaults

    def get(self, section, name):
        if section not in self._config:
            return None

        return self._config[section].get(name)

    def _typed(self, section, name, convert):
        value = self.get(section, name)
        try:
            return convert(value)
        except (TypeError, ValueError):
            raise ConfigError(
                f"invalid value {value!r}", field=f"{section}.{name}"
            ) from None

    def getint(self, section, name):
        return self._typed(section, name, int)

    def getfloat(self, section, name):
        return self._typed(section, name, float)

    def getboolean(self, section, name):
        def convert(value):
            return configparser.ConfigParser.BOOLEAN_STATES[
                str(value).lower()
            ]

        try:
            return convert(self.get(section, name))
        except KeyError:
            raise ConfigError(
                f"invalid value {self.get(section, name)!r}",
                field=f"{section}.{name}",
            ) from None

    def solver_defaults(self) -> SolverParams:
        return SolverParams(
            n=self.getint("solver", "n"),
            m=self.getint("solver", "m"),
            sigma=self.getboolean("solver", "sigma"),
        )

    def verify_defaults(self) -> VerifyParams:
        delta_excl = self.get("verify", "delta_excl")
        return VerifyParams(
            probes=self.getint("verify", "probes"),
            ladder_base=self.getfloat("verify", "ladder_base"),
            ladder_count=self.getint("verify", "ladder_count"),
            aperture=self.getfloat("verify", "aperture"),
            delta_excl=(
                self.getfloat("verify", "delta_excl") if delta_excl else None
            ),
            tolerance=self.getfloat("verify", "tolerance"),
        )
