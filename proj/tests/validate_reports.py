#!/usr/bin/env python3
"""Run the CLI over representative inputs and validate every emitted JSON
report against docs/report.schema.json. Exit codes 0/1/2 from the tool are
all legitimate report-emitting outcomes; anything else is a failure here."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["decide", "z^2*w - 1"],
    ["decide", "z + w - 2"],
    ["--grid", "256", "--probes", "4", "decide", "(z + w + 2)*(z^-1 + w^-1 + 2)"],
    ["--grid", "512", "decide", "2*z^2*(w^2 + 1) - w*(z^2 + 1)^2"],
    ["solve", "z + w - 1"],
    ["solve", "z^2*w^2 + z*w - 2"],
    ["solve", "z*w - 2"],
    ["circle-map", "make", "z - 2"],
    ["circle-map", "verify", "z - 2", "1 - 2*z"],
    ["circle-map", "verify", "z + 1", "z - 1"],
    ["circle-map", "factor", "z - 1/2", "1 - 1/2*z"],
]


def main():
    if len(sys.argv) != 3:
        print("usage: validate_reports.py <torus-locus binary> <schema.json>")
        return 2
    bin_path, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        validator = jsonschema.Draft7Validator(json.load(f))

    failures = 0
    for args in CASES:
        label = " ".join(args)
        proc = subprocess.run([bin_path] + args, capture_output=True, text=True)
        if proc.returncode not in (0, 1, 2):
            print(f"FAIL {label}: exit {proc.returncode}")
            failures += 1
            continue
        try:
            rep = json.loads(proc.stdout)
        except json.JSONDecodeError as exc:
            print(f"FAIL {label}: output is not JSON ({exc})")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(rep), key=lambda e: e.json_path)
        if errors:
            for err in errors[:3]:
                print(f"FAIL {label}: {err.json_path}: {err.message}")
            failures += 1
        else:
            print(f"ok   {label}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
