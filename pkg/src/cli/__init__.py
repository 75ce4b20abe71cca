"""
Command-line interface of the gain/loss balance toolkit.

Usage:
    gainloss <subcommand> <config-file> [--out DIR] [--jobs N] [-v]

Subcommands: spectrum, matrix-model, balance, sweep, scan, boundary.
"""

__version__ = "1.0.0"
