"""
Dynamic portrait commands
"""
import argparse

from loguru import logger

from netmap.commands.common import presentation_from_args
from netmap.schemas.reports import (
    PortraitCountReport,
    PortraitReport,
    PresentationReport,
    RealizabilityReport,
)
from netmap.schemas.run_config import RunConfig
from netmap.services.errors import UsageError
from netmap.services.portrait import (
    branch_data,
    exceptional_ok,
    mod2_divisors,
    realizable_with,
    require_valid,
    validate_portrait,
)
from netmap.services.portrait_builder import (
    REFERENCE_CHOICE_POLICY,
    portrait_from_presentation,
    presentation_from_portrait,
)
from netmap.services.portrait_census import enumerate_portraits
from netmap.services.portrait_io import (
    load_choice_policy,
    load_portrait,
    portrait_to_document,
    portrait_to_dot,
)
from netmap.services.presentation import serialize_presentation


def run_portrait(args: argparse.Namespace, config: RunConfig) -> PortraitReport:
    """Dynamic portrait of the NET map of a presentation"""
    portrait = portrait_from_presentation(presentation_from_args(args))
    return PortraitReport(
        degree=require_valid(portrait),
        portrait=portrait_to_document(portrait),
        anonymous_critical=sum(portrait.extra_counts().values()),
        dot=portrait_to_dot(portrait),
    )


def run_from_portrait(args: argparse.Namespace, config: RunConfig) -> PresentationReport:
    """Presentation realizing a portrait with elementary divisors (m, n)"""
    portrait = load_portrait(args.portrait)
    if args.paper_choices:
        policy = REFERENCE_CHOICE_POLICY
    else:
        policy = load_choice_policy(config.choice_policy) if config.choice_policy else None
    p = presentation_from_portrait(portrait, args.m, args.n, policy)
    return PresentationReport(
        matrix=p.matrix.to_rows(),
        translation=list(p.translation),
        arcs=[[list(arc.initial), list(arc.terminal)] for arc in p.arcs],
        text=serialize_presentation(p),
    )


def run_realizable(args: argparse.Namespace, config: RunConfig) -> RealizabilityReport:
    """Portrait conditions, mod 2 divisors and branch data of a portrait"""
    portrait = load_portrait(args.portrait)
    validation = validate_portrait(portrait)
    if not validation.valid:
        return RealizabilityReport(degree=None, valid=False, diagnostics=list(validation.diagnostics))

    if (args.m is None) != (args.n is None):
        raise UsageError("--m and --n must be given together")
    data = branch_data(portrait)
    return RealizabilityReport(
        degree=validation.degree,
        valid=True,
        mod2_divisors=list(mod2_divisors(portrait)),
        exceptional_ok=exceptional_ok(portrait),
        branch_data=str(data),
        branch_data_type=data.kind,
        realizable_with=realizable_with(portrait, args.m, args.n) if args.m is not None else None,
    )


def run_count(args: argparse.Namespace, config: RunConfig) -> PortraitCountReport:
    """Number of NET portraits of a degree up to isomorphism"""
    config.check_degree(args.degree)
    census = enumerate_portraits(args.degree, workers=config.workers)
    logger.info("Portraits counted", degree=args.degree, count=census.count)
    return PortraitCountReport(degree=args.degree, count=census.count)


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "portrait", parents=[parent], help="dynamic portrait of a presentation (text, json or dot)"
    )
    parser.add_argument("presentation", help="presentation file")
    parser.set_defaults(handler=run_portrait)

    parser = subparsers.add_parser(
        "from-portrait", parents=[parent], help="presentation realizing a portrait"
    )
    parser.add_argument("portrait", help="portrait JSON file")
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    choices = parser.add_mutually_exclusive_group()
    choices.add_argument("--choices", default=None, help="choice-policy JSON file")
    choices.add_argument(
        "--paper-choices", action="store_true", help="built-in choices for the degree-4 reference portrait"
    )
    parser.set_defaults(handler=run_from_portrait)

    parser = subparsers.add_parser(
        "realizable", parents=[parent], help="realizability data of a portrait"
    )
    parser.add_argument("portrait", help="portrait JSON file")
    parser.add_argument("--m", type=int, default=None)
    parser.add_argument("--n", type=int, default=None)
    parser.set_defaults(handler=run_realizable)

    parser = subparsers.add_parser(
        "count-portraits", parents=[parent], help="number of NET portraits of a degree"
    )
    parser.add_argument("--degree", type=int, required=True)
    parser.set_defaults(handler=run_count)
