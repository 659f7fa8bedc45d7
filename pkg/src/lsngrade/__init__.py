"""Exact Z-gradings of finite and affine Lie algebras by long simple roots."""

from .construct import Outcome, roundtrip, run
from .diagram import GCM, catalog, classify
from .grading import grade, structural_checks
from .reps import Irrep, RepSum
from .rootsys import SimpleType, build_root_system
from .scalars import scalar_report
from .survey import load_golden, run_golden, run_survey

__all__ = [
    "GCM", "Irrep", "Outcome", "RepSum", "SimpleType", "build_root_system", "catalog", "classify", "grade",
    "load_golden", "roundtrip", "run", "run_golden", "run_survey",
    "scalar_report", "structural_checks",
]
__version__ = "0.1.0"
