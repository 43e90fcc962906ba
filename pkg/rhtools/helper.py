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
import json
import re
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, TextIO

__all__ = [
    "CSVInvalidCharacterError",
    "CSVShapeError",
    "CSVWriter",
    "Table",
    "error_and_exit",
    "print_error",
    "write_csv",
    "write_json",
]


class Table:
    def __init__(self, heading=None, rows=None, divider=" | "):
        self.heading = heading or []
        self.rows = [[str(column) for column in row] for row in rows or []]
        self.divider = divider

    def _calculate_dimensions(self):
        column_sizes = [len(column) for column in self.heading]

        for row in self.rows:
            for i, column in enumerate(row):
                column_sizes[i] = max(column_sizes[i], len(column))

        return column_sizes

    def _create_column(self, column, size):
        return f'{column}{" " * (size - len(column))}'

    def _create_row(self, columns):
        return self.divider.join(columns)

    def __str__(self):
        column_sizes = self._calculate_dimensions()

        row_strings = [
            self._create_row(
                self._create_column(column, size)
                for column, size in zip(self.heading, column_sizes)
            ),
            self._create_row(
                "-" * size for size in column_sizes
            ),
        ]

        for row in self.rows:
            row_strings.append(
                self._create_row(
                    self._create_column(column, size)
                    for column, size in zip(row, column_sizes)
                )
            )

        return "\n".join(row_strings)


class CSVShapeError(Exception):
    """Data to write did not have a consistent amount of columns

    The want and got fields of an object may be user-accessed.
    """

    def __init__(self, want: int, got: int) -> None:
        Exception.__init__(
            self, f"got {got} column{got != 1 and 's' or ''} but wanted {want}"
        )
        self.want = want
        self.got = got


class CSVInvalidCharacterError(Exception):
    """A cell contains the separator or a line break"""

    def __init__(self, value: str) -> None:
        Exception.__init__(self, "prohibited character in cell")
        self.questionable_content = value


class CSVWriter:
    """Unquoted CSV writer for numeric result files

    Floats are written with repr, so equal data gives byte-identical
    files. Every row must have as many cells as the header.
    """

    def __init__(
        self,
        file: TextIO,
        header: Sequence[str],
        sep: str = ",",
        eol: str = "\n",
    ) -> None:
        self._sep = sep
        self._eol = eol
        self._invf = re.compile(f"[\x00\r\n{re.escape(sep)}]")
        self._ncols = len(header)
        self.outfile = file
        self.write(*header)

    def _mapcell(self, cell: Any) -> str:
        if isinstance(cell, bool):
            cstr = str(int(cell))
        elif isinstance(cell, float):
            cstr = repr(cell)
        else:
            cstr = str(cell)
        if self._invf.search(cstr) is not None:
            raise CSVInvalidCharacterError(cstr)
        return cstr

    def format(self, *args) -> str:
        """Produce a CSV row, including the line terminator"""
        if self._ncols != len(args):
            raise CSVShapeError(self._ncols, len(args))
        return self._sep.join(map(self._mapcell, args)) + self._eol

    def write(self, *args) -> None:
        self.outfile.write(self.format(*args))

    def writerows(self, rows: Iterable[Sequence[Any]]) -> None:
        for row in rows:
            self.write(*row)


def write_csv(
    path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        CSVWriter(f, header).writerows(rows)


def write_json(path: Path, data: Mapping[str, Any]) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as f:
        f.write(json.dumps(data, sort_keys=True, indent=2))
        f.write("\n")


def print_error(msg: str, file: Optional[TextIO] = None) -> None:
    """Prints a one line error message to stderr"""
    print(f"Error: {msg}", file=file or sys.stderr)


def error_and_exit(msg: str) -> None:
    """Prints an error message and quits rh-solve

    Arguments:
        msg (str): The error message, that will be printed
    """
    print_error(msg)
    sys.exit(1)
