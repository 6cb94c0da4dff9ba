#!/usr/bin/env python3
"""
Main entry point for interpnorm - minimal-norm interpolation toolkit
"""

from cli import cli


if __name__ == "__main__":
    cli()
