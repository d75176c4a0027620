"""Coherent and generalized coherent states on truncated Fock spaces, with numerical checks."""

__version__ = "0.1.0"

from .errors import CoherentKitError  # noqa: E402
from .params import RepParams  # noqa: E402

__all__ = ["CoherentKitError", "RepParams", "__version__"]
