"""Run the acceptance suite and print only the per-criterion verdicts."""

import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-k", default=None, help="pytest -k expression, e.g. criterion_8")
    args = ap.parse_args()
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-s", "-p", "no:cacheprovider"]
    if args.k:
        cmd += ["-k", args.k]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=ROOT)
    verdicts = sorted({line.lstrip(".") for line in proc.stdout.splitlines() if "criterion " in line and ": " in line},
                      key=lambda s: int(s.split()[1].rstrip(":")))
    print("\n".join(verdicts))
    return proc.returncode


if __name__ == "__main__":
    sys.exit(main())
