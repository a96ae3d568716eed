"""Validates `qfound report` output against docs/report.schema.json."""

import json
import subprocess
import sys

import jsonschema


def main():
    cli, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    for args, expected in ((["report"], 0), (["report", "--inject-fault"], 2)):
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        if proc.returncode != expected:
            print(f"{args}: exit {proc.returncode}, expected {expected}")
            return 1
        jsonschema.validate(json.loads(proc.stdout), schema)
        print(f"{args}: exit {proc.returncode}, schema valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
