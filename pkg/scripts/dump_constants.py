#!/usr/bin/env python3
"""Dump the structure constants of the example twisted group algebra as CSV."""

import sys

from sl8hecke.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:] + ["dump-constants"]))
