#!/usr/bin/env python3
"""Exercise every worked example through the CLI, one invocation each.

Runs the bundled state files in scripts/states/ through the operator zoo
and prints each command next to its output, so the whole set of golden
numbers can be eyeballed (or diffed) in one go. Exits non-zero if any
invocation fails unexpectedly.
"""

import shlex
import subprocess
import sys
from pathlib import Path

STATES = Path(__file__).resolve().parent / "states"

# (description, argv, expected exit code)
EXAMPLES = [
    ("reciprocal weight on the 0.3/0.7 state",
     ["change", "--op", "edi-rcp", "--eta", "1",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 0),
    ("reciprocal weight on certainty",
     ["change", "--op", "edi-rcp", "--eta", "1",
      "--state", str(STATES / "b10.json"), "--evidence", "!q"], 0),
    ("difference weight on the 0.3/0.7 state",
     ["change", "--op", "edi-dfr", "--eta", "1",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 0),
    ("difference weight on certainty",
     ["change", "--op", "edi-dfr", "--eta", "1",
      "--state", str(STATES / "b10.json"), "--evidence", "!q"], 0),
    ("equal-split imaging on the 0.3/0.7 state",
     ["change", "--op", "gi",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 0),
    ("equal-split imaging on certainty",
     ["change", "--op", "gi",
      "--state", str(STATES / "b10.json"), "--evidence", "!q"], 0),
    ("closest-world imaging on certainty",
     ["change", "--op", "li",
      "--state", str(STATES / "b10.json"), "--evidence", "!q"], 0),
    ("conditioning the book/magazine state",
     ["change", "--op", "bc",
      "--state", str(STATES / "km.json"), "--evidence", "book"], 0),
    ("conditioning undefined on contradicting evidence",
     ["change", "--op", "bc",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 1),
    ("direct revision of the book/magazine state",
     ["change", "--op", "dct-rev", "--inner", "dfr", "--eta", "1",
      "--state", str(STATES / "km.json"), "--evidence", "book"], 0),
    ("direct revision against certain beliefs, then a repeat",
     ["change", "--op", "dct-rev", "--inner", "dfr", "--eta", "1/10",
      "--iterations", "2",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 0),
    ("direct update applied twice",
     ["change", "--op", "dct-upd", "--inner", "dfr", "--eta", "1/10",
      "--iterations", "2",
      "--state", str(STATES / "b37.json"), "--evidence", "!q"], 0),
    ("classical-revision-guided change of the book/magazine state",
     ["change", "--op", "cls-rev",
      "--state", str(STATES / "km.json"), "--evidence", "book"], 0),
    ("classical-update-guided change of the book/magazine state",
     ["change", "--op", "cls-upd",
      "--state", str(STATES / "km.json"), "--evidence", "book"], 0),
    ("reciprocal weight properties",
     ["check-weights", "--weight", "rcp", "--eta", "1", "--atoms", "2",
      "--expect",
      "inverse-distance,strict-inversity,equi-distance,faithfulness,relaxed"],
     0),
    ("conditioning weight is not strictly inverse",
     ["check-weights", "--weight", "bc", "--atoms", "2",
      "--expect", "strict-inversity"], 1),
    ("difference weight at a tiny eta",
     ["check-weights", "--weight", "dfr", "--eta", "1/10000", "--atoms", "3"],
     0),
    ("revision cores for the direct operator",
     ["postulates", "--suite", "revision", "--op", "dct-rev",
      "--atoms", "2", "--grid", "4"], 0),
    ("update cores for the classically-guided operator",
     ["postulates", "--suite", "update", "--op", "cls-upd", "--atoms", "2"],
     0),
    ("update report including the certainty-evidence violation",
     ["postulates", "--suite", "update", "--op", "dct-upd",
      "--atoms", "2", "--report-all"], 0),
]


def main() -> int:
    failures = 0
    for description, argv, expected in EXAMPLES:
        command = [sys.executable, "-m", "edimaging.cli", *argv]
        print(f"# {description}")
        print("$ edimaging " + " ".join(shlex.quote(a) for a in argv))
        proc = subprocess.run(command, capture_output=True, text=True)
        print(proc.stdout, end="")
        if proc.stderr:
            print(proc.stderr, end="")
        if proc.returncode != expected:
            print(f"!! expected exit {expected}, got {proc.returncode}")
            failures += 1
        print()
    if failures:
        print(f"{failures} example(s) did not run as documented")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
