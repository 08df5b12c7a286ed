"""
NET map toolkit: exact lattice, Hurwitz-class, lifting and portrait computations
"""
from loguru import logger

__version__ = "0.1.0"

# Silent as a library; initialize_logger turns the package's records back on
logger.disable("netmap")
