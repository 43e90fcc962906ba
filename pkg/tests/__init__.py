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

import os
import sys
from pathlib import Path

from rhtools.boundary import UNIT_CIRCLE, BoundaryCircle, sample_closed_form

__here__ = Path(__file__).parent.resolve()

PROBLEMS = __here__ / "problems"


class SuppressOutput:
    def __init__(self, *, suppress_stdout=False, suppress_stderr=False):
        self.suppress_stdout = suppress_stdout
        self.suppress_stderr = suppress_stderr
        self.original_stdout = None
        self.original_stderr = None

    def __enter__(self):
        self.devnull = open(os.devnull, "w", encoding="utf-8")

        # Suppress streams
        if self.suppress_stdout:
            self.original_stdout = sys.stdout
            sys.stdout = self.devnull

        if self.suppress_stderr:
            self.original_stderr = sys.stderr
            sys.stderr = self.devnull

    def __exit__(self, *args, **kwargs):
        # Restore streams
        if self.suppress_stdout:
            sys.stdout = self.original_stdout

        if self.suppress_stderr:
            sys.stderr = self.original_stderr

        self.devnull.close()


def const(value, n=256, circle: BoundaryCircle = UNIT_CIRCLE):
    return sample_closed_form("const", {"value": value}, circle, n)


def mode(m=1, part="complex", n=256, circle=UNIT_CIRCLE, **params):
    return sample_closed_form(
        "fourier_mode", dict(params, m=m, part=part), circle, n
    )


def sawtooth(n=256, **params):
    return sample_closed_form("sawtooth", params, UNIT_CIRCLE, n)


def step(a, b, n=256, circle=UNIT_CIRCLE, **params):
    return sample_closed_form("step", dict(params, a=a, b=b), circle, n)
