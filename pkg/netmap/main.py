"""
Command-line entry point
"""
import argparse
import json
import sys
from typing import List, Optional

from loguru import logger
from pydantic import ValidationError

from netmap import __version__
from netmap.commands import COMMAND_MODULES
from netmap.config import settings
from netmap.logger import initialize_logger
from netmap.schemas.reports import Report
from netmap.schemas.run_config import RunConfig
from netmap.services.errors import NetMapError, UsageError


class _ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors become UsageError (exit code 1)"""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parent = _ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=("text", "json", "dot"), default="text", help="report format")
    parent.add_argument(
        "--workers", type=int, default=settings.DEFAULT_WORKERS, help="worker processes for enumerations"
    )
    parent.add_argument(
        "--allow-large", action="store_true", help="lift the enumeration degree cap"
    )
    parent.add_argument("--log-level", default=None, help="loguru level for stderr logging")

    parser = _ArgumentParser(
        prog=settings.APP_NAME,
        description="Exact computations with nearly Euclidean Thurston maps",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for module in COMMAND_MODULES:
        module.register(subparsers, parent)
    return parser


def render(report: Report, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2)
    if output_format == "dot":
        if not hasattr(report, "to_dot"):
            raise UsageError("--format dot is only available for the portrait command")
        return report.to_dot().rstrip("\n")
    return report.to_text()


def _report_error(exc: NetMapError, output_format: str) -> None:
    if output_format == "json":
        payload = {"error": {"category": exc.category, "message": str(exc)}}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    else:
        print(f"error[{exc.category}]: {exc}", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    # errors raised while parsing arguments are always reported as text
    output_format = "text"
    try:
        args = build_parser().parse_args(argv)
        output_format = args.format
        initialize_logger(args.log_level)
        try:
            config = RunConfig(
                command=args.command,
                inputs=[
                    path
                    for path in (getattr(args, name, None) for name in ("presentation", "first", "second", "portrait"))
                    if path
                ],
                max_degree=settings.MAX_ENUMERATION_DEGREE,
                allow_large=args.allow_large,
                output_format=args.format,
                choice_policy=getattr(args, "choices", None),
                workers=args.workers,
            )
        except ValidationError as exc:
            raise UsageError(f"invalid arguments: {exc.errors()[0]['msg']}") from exc

        logger.debug("Running command", command=config.command, inputs=config.inputs)
        report = args.handler(args, config)
        print(render(report, config.output_format))
        logger.info("Command finished", command=config.command)
        return 0
    except NetMapError as exc:
        logger.debug("Command failed", category=exc.category, error=str(exc))
        _report_error(exc, output_format)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
