"""Four-level PT-symmetric model: spectra, metrics, exceptional points."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
