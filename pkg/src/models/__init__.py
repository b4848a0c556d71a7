"""
Data Models Package

Export all Pydantic data models for the verification engine.
"""

from src.models.algebra import (
    Decomposition,
    DecompositionComponent,
    GradedReport,
    GradedRow,
    HilbertRow,
    VeroneseRelation,
)
from src.models.base import (
    CheckRecord,
    SuiteStats,
    VerificationReport,
)
from src.models.run_config import RunConfig

__all__ = [
    # Algebra results
    "Decomposition",
    "DecompositionComponent",
    "GradedReport",
    "GradedRow",
    "HilbertRow",
    "VeroneseRelation",
    # Reports
    "CheckRecord",
    "SuiteStats",
    "VerificationReport",
    # Run configuration
    "RunConfig",
]
