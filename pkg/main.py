"""
Main entry point for zeta-gap-lab.

Examples:
    python main.py zeros find --from 10 --to 100
    python main.py prime witness --y 1 --t 100
    python main.py zerosum run --t1 5000 --t2 5250 --y 1 --x auto --theta 1 --a 1
    python main.py lemma all --out output/lemmas.jsonl
"""

import sys

from src.cli import run


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
