"""hml - workbench for hierarchical provability logics."""

__version__ = "0.1.0"
__license__ = "MIT"

from .main import app

__all__ = ["app", "__version__"]
