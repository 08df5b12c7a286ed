"""
Hurwitz-class commands
"""
import argparse

from loguru import logger

from netmap.commands.common import presentation_from_args
from netmap.schemas.reports import (
    DeckGroupReport,
    HurwitzClassesReport,
    HurwitzCountReport,
    HurwitzEqualReport,
    HurwitzInvariantReport,
    WitnessReport,
)
from netmap.schemas.run_config import RunConfig
from netmap.services.hurwitz_classes import (
    canonical_hurwitz_invariant,
    deck_group,
    enumerate_hurwitz_classes,
    hs_from_presentation,
    hurwitz_witness,
)
from netmap.services.lattice_core import divisor_pairs
from netmap.services.presentation import load_presentation


def run_invariant(args: argparse.Namespace, config: RunConfig) -> HurwitzInvariantReport:
    """Canonical modular-group Hurwitz invariant of a presentation"""
    invariant = canonical_hurwitz_invariant(hs_from_presentation(presentation_from_args(args)))
    m, n = invariant.divisors
    return HurwitzInvariantReport(
        m=m,
        n=n,
        invariant=[list(h) for h in invariant.pairs],
        display=str(invariant),
    )


def run_equal(args: argparse.Namespace, config: RunConfig) -> HurwitzEqualReport:
    """Decide Hurwitz equivalence of two presentations and exhibit a witness"""
    first = load_presentation(args.first)
    second = load_presentation(args.second)
    witness = hurwitz_witness(hs_from_presentation(first), hs_from_presentation(second))
    if witness is None:
        return HurwitzEqualReport(equivalent=False)
    phi = witness.automorphism
    return HurwitzEqualReport(
        equivalent=True,
        witness=WitnessReport(
            automorphism=[phi.a, phi.b, phi.c, phi.d],
            translation=list(witness.translation),
            matrix=witness.matrix.to_rows(),
        ),
    )


def run_enumerate(args: argparse.Namespace, config: RunConfig) -> HurwitzClassesReport:
    """List the Hurwitz classes of NET maps with elementary divisors (m, n)"""
    config.check_degree(args.m * args.n)
    classes = enumerate_hurwitz_classes(args.m, args.n, workers=config.workers)
    return HurwitzClassesReport(
        m=args.m, n=args.n, count=len(classes), classes=[str(hs) for hs in classes]
    )


def run_count(args: argparse.Namespace, config: RunConfig) -> HurwitzCountReport:
    """Count Hurwitz classes of NET maps of a given degree"""
    config.check_degree(args.degree)
    by_divisors = {}
    for m, n in divisor_pairs(args.degree):
        by_divisors[f"({m},{n})"] = len(enumerate_hurwitz_classes(m, n, workers=config.workers))
    total = sum(by_divisors.values())
    logger.info("Hurwitz classes counted", degree=args.degree, count=total)
    return HurwitzCountReport(degree=args.degree, count=total, by_divisors=by_divisors)


def run_deck(args: argparse.Namespace, config: RunConfig) -> DeckGroupReport:
    """Deck group of the NET map of a presentation"""
    group = deck_group(hs_from_presentation(presentation_from_args(args)))
    return DeckGroupReport(order=group.order, generators=[list(g) for g in group.generators])


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "hurwitz-invariant", parents=[parent], help="canonical Hurwitz invariant of a presentation"
    )
    parser.add_argument("presentation", help="presentation file")
    parser.set_defaults(handler=run_invariant)

    parser = subparsers.add_parser(
        "hurwitz-equal", parents=[parent], help="decide Hurwitz equivalence of two presentations"
    )
    parser.add_argument("first", help="presentation file")
    parser.add_argument("second", help="presentation file")
    parser.set_defaults(handler=run_equal)

    parser = subparsers.add_parser(
        "enumerate-hurwitz", parents=[parent], help="Hurwitz classes for elementary divisors (m, n)"
    )
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.set_defaults(handler=run_enumerate)

    parser = subparsers.add_parser(
        "count-hurwitz", parents=[parent], help="number of Hurwitz classes of a degree"
    )
    parser.add_argument("--degree", type=int, required=True)
    parser.set_defaults(handler=run_count)

    parser = subparsers.add_parser("deck", parents=[parent], help="deck group of a presentation")
    parser.add_argument("presentation", help="presentation file")
    parser.set_defaults(handler=run_deck)
