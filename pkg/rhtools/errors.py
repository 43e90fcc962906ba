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
Exceptions raised by rh-tools
"""

from typing import Any, Optional


class RhError(Exception):
    """Base class for all exceptions originating in rh-tools"""

    def __init__(self, message: str, *args):
        super().__init__(message, *args)
        self.message = message

    def __repr__(self):
        return f'<{self.__class__.__name__} message="{self.message}">'

    def __str__(self):
        return self.message


class DomainError(RhError):
    """A point, radius or arc lies outside the admissible set"""


class ResolutionError(DomainError):
    """A point or an arc is finer than the sampling grid can resolve"""


class ValidationError(RhError):
    """Input data violates a precondition

    Arguments:
        message: Description of the violation
        angle: Boundary angle of the worst offending sample, if any
        argument: Name of the offending argument, if any
    """

    def __init__(
        self,
        message: str,
        *,
        angle: Optional[float] = None,
        argument: Optional[str] = None,
    ):
        super().__init__(message, angle, argument)
        self.angle = angle
        self.argument = argument

    def __str__(self):
        if self.argument and self.angle is not None:
            return (
                f"{self.message} (argument {self.argument}, "
                f"angle {self.angle!r})"
            )
        if self.angle is not None:
            return f"{self.message} (angle {self.angle!r})"
        if self.argument:
            return f"{self.message} (argument {self.argument})"
        return self.message


class AliasingError(ValidationError):
    """More series modes were requested than the sample grid resolves"""


class ConfigError(RhError):
    """Configuration could not be parsed or is inconsistent

    Arguments:
        message: Description of the problem
        field: Dotted path of the offending field, e.g. ``outer.phi.kind``
        line: Line number in the configuration file
    """

    def __init__(
        self,
        message: str,
        *,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        super().__init__(message, field, line)
        self.field = field
        self.line = line

    def __str__(self):
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        if self.field:
            return f"field '{self.field}': {self.message}"
        return self.message


class ScalingError(RhError):
    """The exponential weight of the solution would overflow

    Arguments:
        message: Description of the problem
        value: The offending exponent
    """

    def __init__(self, message: str, *, value: Any = None):
        super().__init__(message, value)
        self.value = value


class ContinuationError(RhError):
    """Analytic continuation along a path could not be carried out"""
