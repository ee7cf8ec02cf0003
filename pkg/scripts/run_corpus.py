"""Analyze every scenario file and write JSON/TSV reports plus a summary table.

    python3 scripts/run_corpus.py --out reports/ [--oracle]
"""

import argparse
import sys
from pathlib import Path

from roughideal.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scenarios", type=Path, default=ROOT / "scenarios")
    ap.add_argument("--out", type=Path, default=ROOT / "reports")
    ap.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    status = {}
    for path in sorted(args.scenarios.glob("*.scn")):
        cmd = ["oracle" if args.oracle else "analyze", str(path),
               "--json-out", str(args.out / f"{path.stem}.json")]
        print(f"== {path.stem}", flush=True)
        status[path.stem] = cli_main(cmd)
    print()
    cli_main(["report", str(args.out), "--tsv-out", str(args.out / "summary.tsv")])
    print()
    for name, code in status.items():
        print(f"{name:28s} exit {code}")
    return 0 if all(c == 0 for c in status.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
