"""Executable reductions between clique problems and dynamic tree edit
distance, string folding problems, and an online scored-parsing engine."""

from .kernels import backend

__version__ = "0.1.0"
__all__ = ["backend", "__version__"]
