"""
Command modules: each registers its subcommands on the main parser
"""

from netmap.commands import hurwitz, lattice, lifting, portraits

COMMAND_MODULES = (lattice, hurwitz, lifting, portraits)

__all__ = ["COMMAND_MODULES"]
