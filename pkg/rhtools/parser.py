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
"""Command Line Interface Parser
"""

import argparse
import logging
from pathlib import Path

from rhtools import get_version
from rhtools.config import Config

logger = logging.getLogger(__name__)

__version__ = get_version()

DEFAULT_SETTINGS_PATH = "~/.config/rh-tools.conf"

COMMAND_SOLVE_DISK = "solve-disk"
COMMAND_SOLVE_ANNULUS = "solve-annulus"
COMMAND_VERIFY = "verify"
COMMAND_FAMILY = "family"


class CliParser:
    def __init__(
        self,
        description: str,
        logfilename,
        *,
        prog=None,
        ignore_settings=False,
    ):
        bootstrap_parser = argparse.ArgumentParser(
            prog=prog,
            description=description,
            formatter_class=argparse.RawTextHelpFormatter,
            # don't parse help initially. the args from parser wouldn't be shown
            add_help=False,
        )

        bootstrap_parser.add_argument(
            "-s",
            "--settings",
            nargs="?",
            default=DEFAULT_SETTINGS_PATH,
            help="Settings file path (default: %(default)s)",
        )

        choices = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

        bootstrap_parser.add_argument(
            "--log",
            nargs="?",
            dest="loglevel",
            const="INFO",
            type=lambda arg: {x.upper(): x for x in choices}[arg.upper()],
            choices=choices,
            help="Activate logging (default level: %(default)s)",
        )

        parser = argparse.ArgumentParser(prog=prog, parents=[bootstrap_parser])

        parser.add_argument(
            "-c",
            "--config",
            required=True,
            help="Problem file (JSON) to solve",
        )
        parser.add_argument(
            "--tolerance",
            type=float,
            help="Bound for the verification residual, overrides the "
            "problem file",
        )
        parser.add_argument(
            "--emit-plot-data",
            action="store_true",
            default=False,
            help="Write additional theta,value CSV files for plotting",
        )
        parser.add_argument(
            "--seed",
            type=int,
            default=0,
            help="Seed for generated interior sample points "
            "(default: %(default)s)",
        )
        parser.add_argument(
            "-o",
            "--output-dir",
            help="Directory for result files (default: %(default)s)",
        )
        parser.add_argument(
            "-V",
            "--version",
            action="version",
            version=f"%(prog)s {__version__}",
            help="Show version information and exit",
        )

        subparsers = parser.add_subparsers(
            metavar="COMMAND",
            title="commands",
            description="valid commands",
            help="Command to run",
        )
        subparsers.required = True
        subparsers.dest = "command"

        self._subparsers = subparsers

        self._parser = parser
        self._bootstrap_parser = bootstrap_parser

        self._logfilename = logfilename
        self._ignore_settings = ignore_settings
        self._config = Config()

        self._add_subparsers()

    @property
    def settings(self) -> Config:
        return self._config

    def parse_args(self, args=None):
        args, unkown_args = self.parse_known_args(args)
        if unkown_args:
            self._parser.error(
                f'unrecognized arguments {" ".join(unkown_args)}'
            )
        return args

    def parse_known_args(self, args=None):
        args_before, _ = self._bootstrap_parser.parse_known_args(args)

        if args_before.loglevel is not None:
            level = logging.getLevelName(args_before.loglevel)
            logging.basicConfig(filename=self._logfilename, level=level)

        self._set_defaults(
            None if self._ignore_settings else args_before.settings
        )

        args, unknown_args = self._parser.parse_known_args(args)

        logging.debug("Parsed arguments %r", args)

        return args, unknown_args

    def add_argument(self, *args, **kwargs):
        for subparser in self._command_parsers.values():
            subparser.add_argument(*args, **kwargs)

    def _load_config(self, configfile):
        config = Config()

        if not configfile:
            return config

        configpath = Path(configfile)

        if not configpath.expanduser().resolve().exists():
            logger.debug("Ignoring non existing settings file %s", configfile)
            return config

        try:
            config.load(configpath)
            logger.debug("Loaded settings %s", configfile)
        except Exception as e:  # pylint: disable=broad-except
            raise RuntimeError(
                f"Error while parsing config file {configfile}. Error was {e}"
            ) from None

        return config

    def _add_subparsers(self):
        parser_disk = self._subparsers.add_parser(
            COMMAND_SOLVE_DISK,
            help="Solve a problem on the unit disk and write traces, "
            "interior samples and the residual report",
        )
        parser_disk.add_argument(
            "--coefficients",
            help="Dump the Taylor coefficients of g and B to this CSV path "
            "(suffixes -g and -B are added)",
        )

        parser_annulus = self._subparsers.add_parser(
            COMMAND_SOLVE_ANNULUS,
            help="Solve a problem on an annulus and write branch-resolved "
            "samples, per-circle reports and the monodromy",
        )
        parser_annulus.add_argument(
            "--sheets",
            type=int,
            nargs="+",
            help="Sheet indices of the exported interior samples",
        )

        parser_verify = self._subparsers.add_parser(
            COMMAND_VERIFY,
            help="Solve and write the residual report and summary only",
        )
        parser_verify.add_argument(
            "--sheet",
            type=int,
            help="Sheet to verify on for annulus problems",
        )

        parser_family = self._subparsers.add_parser(
            COMMAND_FAMILY,
            help="Verify the homogeneous family f + icA of a disk solution",
        )
        parser_family.add_argument(
            "-p",
            "--parameter",
            dest="family",
            type=float,
            action="append",
            help="Family parameter c, may be repeated; overrides the "
            "problem file",
        )

        self._command_parsers = {
            COMMAND_SOLVE_DISK: parser_disk,
            COMMAND_SOLVE_ANNULUS: parser_annulus,
            COMMAND_VERIFY: parser_verify,
            COMMAND_FAMILY: parser_family,
        }

    def _set_defaults(self, configfilename=None):
        self._config = self._load_config(configfilename)

        self._parser.set_defaults(
            output_dir=self._config.get("output", "directory"),
            **self._config.defaults(),
        )
        self._command_parsers[COMMAND_SOLVE_DISK].set_defaults(
            coefficients=None
        )
        self._command_parsers[COMMAND_SOLVE_ANNULUS].set_defaults(sheets=None)
        self._command_parsers[COMMAND_VERIFY].set_defaults(sheet=None)
        self._command_parsers[COMMAND_FAMILY].set_defaults(family=None)


def create_parser(description, logfilename):
    return CliParser(description, logfilename)
