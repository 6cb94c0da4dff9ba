"""
Command-line interface
"""

from .commands import cli, parse_psi

__all__ = ["cli", "parse_psi"]
