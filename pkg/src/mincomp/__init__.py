"""Minimal components of substitution subshifts."""

from .components import census
from .report import build_report
from .substitution import Substitution, classify, load, parse

__all__ = ["Substitution", "build_report", "census", "classify", "load", "parse"]
__version__ = "0.1.0"
