"""Run the closed-form oracle suite and write oracle_report.json.

Usage:
    python scripts/run_oracle.py [--config oracle_config.json] [--out .]
"""

import argparse
import sys

from jwmsim.cli import cmd_verify


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--config", default=None, help="suite config JSON")
    parser.add_argument("--out", default=".", help="report directory")
    args = parser.parse_args()
    sys.exit(cmd_verify(args.config, args.out))


if __name__ == "__main__":
    main()
