"""Argument helpers shared by the command modules."""

from __future__ import annotations

import argparse

from netmap.services.errors import UsageError
from netmap.services.lattice_core import IntMatrix2
from netmap.services.modular_lift import ModularElement, parse_modular_element
from netmap.services.presentation import NetMapPresentation, load_presentation


def add_element_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--matrix", nargs=4, type=int, required=required, metavar=("A", "B", "C", "D"),
        help="matrix [[A,B],[C,D]] given row-major",
    )
    parser.add_argument(
        "--translation", nargs=2, type=int, default=None, metavar=("X", "Y"),
        help="translation term, taken mod 2 (default 0 0)",
    )


def element_from_args(args: argparse.Namespace) -> ModularElement:
    return parse_modular_element(args.matrix, args.translation)


def matrix_from_args(args: argparse.Namespace) -> IntMatrix2:
    """The presentation file's matrix, or --matrix when no file was given."""
    if args.presentation:
        return load_presentation(args.presentation).matrix
    if args.matrix:
        return IntMatrix2(*args.matrix)
    raise UsageError("give a presentation file or --matrix A B C D")


def presentation_from_args(args: argparse.Namespace) -> NetMapPresentation:
    return load_presentation(args.presentation)
