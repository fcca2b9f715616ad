#!/usr/bin/env python3
"""Run every bench command and validate each run record against the shipped schema."""

import json
import subprocess
import sys

import jsonschema


def run(binary, *args):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def main():
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    records = []
    records.append(run(binary, "fft1d", "--n", "256", "--variant", "wide128"))
    records.append(run(binary, "fft1d", "--n", "256", "--flags", "NNYNN"))
    records.append(run(binary, "fft2d", "--rows", "32", "--cols", "32", "--cores", "4"))
    records += run(binary, "ladder", "--n", "1024")["rows"]
    records += run(binary, "ablate", "--n", "1024")["rows"]
    records += run(binary, "sweep", "--sizes", "64,128", "--variants", "initial,single_copy")["points"]
    records += run(binary, "sweep", "--rows", "16", "--cols", "16", "--core-counts", "1,2,4")["points"]

    failures = 0
    for i, record in enumerate(records):
        for error in validator.iter_errors(record):
            failures += 1
            print(f"record {i} ({record.get('variant')}): {error.message}")
    print(f"{len(records)} records checked, {failures} schema violations")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
