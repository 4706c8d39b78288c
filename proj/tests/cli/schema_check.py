"""Validates `cpo check --json` output against the report schema.

usage: schema_check.py CPO DATA_DIR GOLDEN_DIR
"""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main():
    cpo, data, golden = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schema = json.loads((data / "report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)

    inputs = sorted(data.glob("*.cpo")) + sorted((data / "tight").glob("*.cpo"))
    failures = 0
    for path in inputs:
        args = [cpo, "check", "--json", str(path)]
        first = path.read_text().splitlines()[0] if path.read_text() else ""
        if first.startswith("# relax "):
            args += ["--relax", first.split()[2]]
        run = subprocess.run(args, capture_output=True, text=True)
        if run.returncode not in (0, 1, 2):
            print(f"{path.name}: exit {run.returncode}: {run.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(run.stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)

    for path in sorted(golden.glob("*.json")):
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        for e in errors:
            print(f"golden {path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)

    print(f"{len(inputs)} reports checked, {failures} invalid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
