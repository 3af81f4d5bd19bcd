"""
Reports from the command line
=============================

The ``loopgroupoid`` command reads JSON documents and prints a deterministic
report.  This script drives it in-process on the test fixtures; the same
calls work from a shell, e.g.

    loopgroupoid h2 --inputs tests/fixtures klein.json --modulus 2
"""

import json
import tempfile
from pathlib import Path

from loopgroupoid.cli import JobSpec, render_text, run

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# %% H² of the Klein four-group, with its discrete-torsion image
code, doc = run(JobSpec("h2", ("klein.json",), inputs_dir=str(fixtures), modulus=2))
print("exit code", code)
print("H² factors:", doc["results"]["cohomology"]["invariant_factors"])
print("torsion factors:", doc["results"]["discrete_torsion"]["invariant_factors"])

# %% Twisted sectors of S3 acting on itself by conjugation, as text
code, doc = run(JobSpec("sectors", ("s3_conjugation.json",), inputs_dir=str(fixtures)))
print(render_text(doc["results"]))

# %% A broken input gives exit code 1 and names what failed
broken = {"kind": "cocycle", "group": {"kind": "group", "catalog": "C3"}, "modulus": 3,
          "values": [[0, 0, 0], [0, 1, 0], [0, 0, 0]]}
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "broken_cocycle.json"
    path.write_text(json.dumps(broken))
    code, doc = run(JobSpec("validate", (str(path),)))
print("exit code", code, "->", doc["error"]["message"])
