#!/usr/bin/env python3
"""Run the full verification batch with the default configuration and write
the report next to this script.

Usage: python scripts/run_verify.py [output.json]
"""

import sys

from orbitforge.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "verify_report.json"
    sys.exit(main(["verify", "--output", out]))
