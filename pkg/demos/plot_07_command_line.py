"""
Running suites from the command line
====================================

The ``dualquerm`` command runs verification suites, convergence tables and
searches from JSON configs or built-in suite names.  Here the same entry point
is called in-process and the CSV it writes is read back.
"""

import csv
import json
import tempfile
from pathlib import Path

from dualquerm.cli import main

out = Path(tempfile.mkdtemp())

# Built-in suite of balls and dilates: every row is an equality certificate.
code = main(["verify", "--config", "paper-smoke", "--out", str(out)])
with open(out / "paper-smoke.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        print(f"{row['check_name']:<24} {row['verdict']:<20} rel_slack {float(row['rel_slack']):+.1e}")
print("exit code", code)

# A config file of your own: named bodies, explicit checks, and random tuples.
config = {
    "n": 3,
    "name": "mine",
    "seed": 5,
    "bodies": {"E": {"ellipsoid": {"axes": [1, 1.5, 2]}}, "P": {"lpball": {"p": 3}}},
    "checks": [{"check": "minkowski_mixed", "K": "E", "L": "P"}, {"check": "bm_corollary"}],
    "random": {"tuples": 3},
    "resolution": {"outer": 16},
}
path = out / "mine.json"
path.write_text(json.dumps(config))
print("exit code", main(["verify", "--config", str(path), "--out", str(out), "--format", "json"]))
print(json.loads((out / "mine.json").read_text())["rows"][0]["verdict"])

# Convergence of the volume of the intersection body of Ellipsoid(1, 1, 2).
main(["converge", "--config", "paper-converge", "--out", str(out)])
