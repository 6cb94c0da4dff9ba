"""
Pick-matrix criteria
"""

from .pick_matrix import PickReport, pick_min_c_h2, pick_min_c_hinf, pick_report_h2, szego_matrix

__all__ = [
    "PickReport",
    "pick_min_c_h2",
    "pick_min_c_hinf",
    "pick_report_h2",
    "szego_matrix",
]
