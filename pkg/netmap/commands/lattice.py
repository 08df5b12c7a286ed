"""
Lattice commands: elementary divisors, Smith form, index bound
"""
import argparse

from loguru import logger

from netmap.commands.common import matrix_from_args
from netmap.schemas.reports import ElementaryDivisorsReport, IndexBoundReport, SmithFormReport
from netmap.schemas.run_config import RunConfig
from netmap.services.lattice_core import elementary_divisors, snf2
from netmap.services.modular_lift import liftable_index_bound


def run_ed(args: argparse.Namespace, config: RunConfig) -> ElementaryDivisorsReport:
    """Elementary divisors of a presentation matrix"""
    m, n = elementary_divisors(matrix_from_args(args))
    return ElementaryDivisorsReport(m=m, n=n, degree=m * n)


def run_snf(args: argparse.Namespace, config: RunConfig) -> SmithFormReport:
    """Smith normal form A = Q·D·R with unimodular Q, R"""
    smith = snf2(matrix_from_args(args))
    return SmithFormReport(Q=smith.Q.to_rows(), D=smith.D.to_rows(), R=smith.R.to_rows())


def run_index_bound(args: argparse.Namespace, config: RunConfig) -> IndexBoundReport:
    """Upper bound on the index of the liftable subgroup"""
    bound = liftable_index_bound(args.degree)
    logger.info("Index bound computed", degree=args.degree, bound=str(bound))
    return IndexBoundReport(degree=args.degree, bound=int(bound))


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    for name, handler, help_text in (
        ("ed", run_ed, "elementary divisors (m, n) of a presentation matrix"),
        ("snf", run_snf, "Smith normal form of a presentation matrix"),
    ):
        parser = subparsers.add_parser(name, parents=[parent], help=help_text)
        parser.add_argument("presentation", nargs="?", help="presentation file")
        parser.add_argument(
            "--matrix", nargs=4, type=int, metavar=("A", "B", "C", "D"),
            help="matrix [[A,B],[C,D]] given row-major, instead of a file",
        )
        parser.set_defaults(handler=handler)

    parser = subparsers.add_parser(
        "index-bound", parents=[parent], help="bound on the index of the liftable subgroup"
    )
    parser.add_argument("--degree", type=int, required=True)
    parser.set_defaults(handler=run_index_bound)
