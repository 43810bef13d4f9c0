#!/usr/bin/env python3
"""Reproduce the three figure datasets (CSV + SVG) in one go.

Writes into out/figures by default:
  figure1.csv/.svg   truncation-excess constant over the memory range
  figure2.csv/.svg   improvement ratio of AR(k) over truncation
  figure3.csv/.svg   mmse / tpmse / llspe against the horizon at d=0.4, k=80
"""

import sys

from longpred.cli import main


def run(out_dir: str = "out/figures") -> int:
    for command in ("figure1", "figure2", "figure3"):
        code = main([command, "--out", out_dir, "--svg"])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run(*sys.argv[1:]))
