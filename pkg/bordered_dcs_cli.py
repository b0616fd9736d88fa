#!/usr/bin/env python3
"""Shim for running from a checkout without installing.

The maintained implementation lives in the package module:
`python -m bordered_dcs.reporting.cli`
"""

from __future__ import annotations


def main() -> None:
    from bordered_dcs.reporting.cli import main as _main

    _main()


if __name__ == "__main__":
    main()
