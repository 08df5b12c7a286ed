"""
Liftability and virtual multi-endomorphism commands
"""
import argparse

from loguru import logger

from netmap.commands.common import add_element_arguments, element_from_args, presentation_from_args
from netmap.schemas.reports import AffineMapReport, LiftabilityReport, VMEReport
from netmap.schemas.run_config import RunConfig
from netmap.services.errors import UsageError
from netmap.services.modular_lift import (
    ModularElement,
    element_type,
    hs_classes,
    is_liftable,
    is_pure_liftable,
)
from netmap.services.presentation import NetMapPresentation
from netmap.services.slope_vme import (
    Slope,
    SlopeOracle,
    euclidean_oracle,
    load_slope_oracle,
    matrix_on_slope,
    virtual_multiendomorphism,
)
from netmap.services.teichmuller import teichmuller_action

_AXES = (Slope(0, 1), Slope(1, 0))


def _is_pure(e: ModularElement) -> bool:
    M = e.matrix
    return M.a % 2 == 1 and M.d % 2 == 1 and M.b % 2 == 0 and M.c % 2 == 0 and e.translation == (0, 0)


def _is_euclidean(p: NetMapPresentation) -> bool:
    return hs_classes(p) == frozenset(p.group.corners())


def _oracle_for(args: argparse.Namespace, p: NetMapPresentation, e: ModularElement) -> SlopeOracle:
    if args.slopes:
        return load_slope_oracle(args.slopes)
    if not _is_euclidean(p):
        raise UsageError("--slopes is required unless the presentation is Euclidean")
    slopes = list(_AXES) + [matrix_on_slope(e.matrix, s) for s in _AXES]
    return euclidean_oracle(p.matrix, slopes)


def run_liftable(args: argparse.Namespace, config: RunConfig) -> LiftabilityReport:
    """Liftability of a modular-group element through a NET map"""
    p = presentation_from_args(args)
    e = element_from_args(args)
    representatives = is_liftable(p, e)
    return LiftabilityReport(
        element=str(e),
        element_type=element_type(e).value,
        liftable=bool(representatives),
        representatives=[
            AffineMapReport(matrix=rep.matrix.to_rows(), translation=list(rep.translation))
            for rep in representatives
        ],
        pure_liftable=is_pure_liftable(p, e) if _is_pure(e) else None,
    )


def run_vme(args: argparse.Namespace, config: RunConfig) -> VMEReport:
    """Values of the virtual multi-endomorphism at a liftable element"""
    p = presentation_from_args(args)
    e = element_from_args(args)
    values = virtual_multiendomorphism(p, e, _oracle_for(args, p, e))
    linear = values[0].matrix
    logger.info("Virtual multi-endomorphism evaluated", element=str(e), linear=str(linear))
    return VMEReport(
        element=str(e),
        linear_part=linear.to_rows(),
        values=[
            AffineMapReport(matrix=value.matrix.to_rows(), translation=list(value.translation))
            for value in values
        ],
        teichmuller=str(teichmuller_action(ModularElement(linear))),
    )


def register(subparsers, parent: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "liftable", parents=[parent], help="liftability of a modular-group element"
    )
    parser.add_argument("presentation", help="presentation file")
    add_element_arguments(parser)
    parser.set_defaults(handler=run_liftable)

    parser = subparsers.add_parser(
        "vme", parents=[parent], help="virtual multi-endomorphism at a liftable element"
    )
    parser.add_argument("presentation", help="presentation file")
    add_element_arguments(parser)
    parser.add_argument("--slopes", default=None, help="slope-oracle file (optional for Euclidean maps)")
    parser.set_defaults(handler=run_vme)
