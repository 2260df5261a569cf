"""Record the golden CLI outputs in tests/golden/ from a reference run.

    python scripts/make_golden.py

Re-run only when an output format changes on purpose; the tests compare
against these files byte for byte.
"""

import subprocess
import sys
from pathlib import Path

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

RUNS = {
    "ci_hcr.csv": ["ci", "--fixture", "hcr", "--seed", "0"],
    "ci_hcr.json": ["ci", "--fixture", "hcr", "--seed", "0", "--format", "json"],
    "ci_hcr_normalized.csv": ["ci", "--fixture", "hcr", "--seed", "0", "--normalization", "iglesias",
                              "--stat", "mean"],
    "coverage_hcr.csv": ["coverage", "--fixture", "hcr", "--seed", "0", "--reps", "200",
                         "--b", "200"],
    "coverage_hcr.json": ["coverage", "--fixture", "hcr", "--seed", "0", "--reps", "200",
                          "--b", "200", "--format", "json"],
    "chart_hcr.svg": ["chart", "--fixture", "hcr", "--seed", "0", "--no-total"],
}


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, args in RUNS.items():
        out = subprocess.run([sys.executable, "-m", "hboot.cli", *args], check=True,
                             capture_output=True).stdout
        (GOLDEN / name).write_bytes(out)
        print(f"{name}: {len(out)} bytes")


if __name__ == "__main__":
    main()
