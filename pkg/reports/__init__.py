"""
Problem-file and report schemas with their serialization
"""

from .schemas import (
    SCHEMA_VERSION,
    BoundHarnessReport,
    CalculusModel,
    EffectiveOptions,
    ErrorRecord,
    ErrorReport,
    HarnessSampleOut,
    InterpNormReport,
    InvariantChecks,
    MatrixBoundReport,
    ModelMatrixReport,
    NodeModel,
    NodeOut,
    OptionsModel,
    PickCheckReport,
    ProblemFile,
    PsiModel,
    SpaceModel,
    from_pairs,
    psi_model,
    to_pairs,
)
from .writer import report_json, write_report, write_series

__all__ = [
    "SCHEMA_VERSION",
    "BoundHarnessReport",
    "CalculusModel",
    "EffectiveOptions",
    "ErrorRecord",
    "ErrorReport",
    "HarnessSampleOut",
    "InterpNormReport",
    "InvariantChecks",
    "MatrixBoundReport",
    "ModelMatrixReport",
    "NodeModel",
    "NodeOut",
    "OptionsModel",
    "PickCheckReport",
    "ProblemFile",
    "PsiModel",
    "SpaceModel",
    "from_pairs",
    "psi_model",
    "to_pairs",
    "report_json",
    "write_report",
    "write_series",
]
