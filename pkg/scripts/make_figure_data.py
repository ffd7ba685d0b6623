"""Emit the full figure data set (Wigner field, marginals, certainty curves,
variance sweep, phase-point scan) into one directory.

Usage:
    python scripts/make_figure_data.py --out data
"""

import argparse
import sys

from jwmsim.cli import main as cli_main


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data", help="output directory")
    parser.add_argument("--q-reading", default=None, help="override the ancilla reading for figure1")
    args = parser.parse_args()

    fig1 = ["figure1", "--out", args.out]
    if args.q_reading is not None:
        fig1 += ["--q-reading", args.q_reading]
    for cmd in (fig1, ["figure2", "--out", args.out], ["variances", "--out", args.out], ["dirac-scan", "--out", args.out]):
        rc = cli_main(cmd)
        if rc != 0:
            sys.exit(rc)
    print(f"figure data written to {args.out}")


if __name__ == "__main__":
    main()
