"""Quaternion/octonion clutching constructions and a numerical verification harness."""
from . import algebra, geometry, maps, starbundle
from .algebra import Convention, DoublingRule, Octonion, Quaternion, Sp2Matrix
from .report import SuiteConfig, emit_report, parse_report, run_suite

__version__ = "0.1.0"

__all__ = [
    "algebra", "geometry", "maps", "starbundle",
    "Convention", "DoublingRule", "Octonion", "Quaternion", "Sp2Matrix",
    "SuiteConfig", "emit_report", "parse_report", "run_suite",
]
