"""
Driving the verification harness
================================

The ``chronoscale`` command reads one JSON config, runs the listed checks
and writes a CSV, JSON or table report. The exit status is 0 when every
inequality holds, 1 on a violation and 2 on bad input.
"""

import json
import tempfile
from pathlib import Path

from chronoscale.cli import main

workdir = Path(tempfile.mkdtemp())
config = {
    "scale": [{"integers": [0, 4]}],
    "function": "power 2",
    "checks": [
        {"type": "young", "a": [2, 3], "b": [1, 4, 9]},
        {"type": "sandwich", "a": [3], "a_hat": [1], "b": [9], "b_hat": [1], "variant": "all"},
    ],
    "format": "table",
}
path = workdir / "run.json"
path.write_text(json.dumps(config))
print(f"$ chronoscale verify --config {path.name}", flush=True)
status = main(["verify", "--config", str(path)])
print(f"exit status {status}")

# a sweep reruns the config once per grid point; keys are dotted paths
sweep = {
    "scale": [{"integers": [0, 1]}],
    "function": "identity",
    "checks": [{"type": "examples", "name": "GeometricB", "params": {"B": 2, "range": [0, 2]}}],
    "grid": {"checks.0.params.B": [2, "3/2"]},
}
path = workdir / "sweep.json"
path.write_text(json.dumps(sweep))
print(f"\n$ chronoscale sweep --config {path.name} --format csv", flush=True)
status = main(["sweep", "--config", str(path), "--format", "csv"])
print(f"exit status {status}")
