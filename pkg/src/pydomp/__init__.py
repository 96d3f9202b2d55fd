from . import errors, models
from .client import DOMPSolver
from .config import DOMPConfig

__all__ = ["DOMPConfig", "DOMPSolver", "errors", "models"]
