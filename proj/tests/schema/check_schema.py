"""Validate every JSON-emitting command of the rho binary against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["spectrum", "--lambda", "-1", "--mass", "1", "--omega", "1", "--levels", "4"],
    ["spectrum", "--lambda", "1", "--mass", "2", "--omega", "1", "--verify"],
    ["spectrum", "--lambda", "0", "--mass", "1", "--omega", "0.1", "--levels", "1"],
    ["trajectory", "--lambda", "-1", "--energy", "2", "--t-max", "1", "--format", "json"],
    ["trajectory", "--lambda", "1", "--energy", "2", "--t-max", "1", "--format", "json"],
    ["wavefunction", "--lambda", "0.5", "--mass", "2", "--n", "1", "--grid", "33", "--format", "json"],
    ["verify", "--suite", "special"],
    ["scan", "--param", "lambda", "--from", "-1", "--to", "1", "--steps", "5", "--n", "0,1"],
    ["scan", "--param", "mass-ratio", "--from", "10", "--to", "1000", "--steps", "3", "--log",
     "--lambda", "-1"],
]


def main(binary: str, schema_path: str) -> int:
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, *args], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        for err in errors:
            print(f"FAIL {' '.join(args)}: {err.message} at {list(err.absolute_path)}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
