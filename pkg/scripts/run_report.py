#!/usr/bin/env python3
"""Run the full verification report from a checkout (wrapper around the CLI).

Examples:
    python scripts/run_report.py
    python scripts/run_report.py --q 13 --format json
    python scripts/run_report.py --variant parahoric verify cocycle
"""

import sys

from sl8hecke.cli import main

if __name__ == "__main__":
    sys.exit(main())
