"""galelab: finite-depth experiments with supergales, scales and circuit complexity."""

__version__ = "0.1.0"
