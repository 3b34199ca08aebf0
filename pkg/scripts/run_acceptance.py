#!/usr/bin/env python3
"""Run the acceptance criteria and print one verdict line per criterion."""
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                        str(ROOT / "tests" / "test_acceptance.py")] + sys.argv[1:], cwd=ROOT)
    sys.exit(r.returncode)
