#!/usr/bin/env python3
"""Run every experiment with defaults and write reports to a directory.

Equivalent to `fockalg run-all --out reports --seed 7`.
"""

import sys

from fockalg.cli import main

if __name__ == "__main__":
    argv = sys.argv[1:]
    if "--out" not in argv:
        argv = ["--out", "reports"] + argv
    sys.exit(main(["run-all"] + argv))
