"""Runs omega-bounds and validates every JSON output against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
import referencing

SCHEMAS = pathlib.Path(__file__).resolve().parent.parent / "schemas"


def registry():
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        schema = json.loads(path.read_text())
        resources.append((schema["$id"], referencing.Resource.from_contents(schema)))
    return referencing.Registry().with_resources(resources)


def validate(reg, name, document):
    schema = reg.contents(name)
    jsonschema.Draft202012Validator(schema, registry=reg).validate(document)


def run(binary, *args):
    result = subprocess.run([binary, *args], capture_output=True, text=True)
    if result.returncode not in (0, 1, 3):
        sys.exit(f"{' '.join(args)} exited with {result.returncode}: {result.stderr}")
    return result.stdout


def main():
    binary = sys.argv[1]
    reg = registry()
    validate(reg, "sum.schema.json", json.loads(run(binary, "sum", "--x", "1000")))
    validate(reg, "hyperbola.schema.json", json.loads(run(binary, "hyperbola", "--x", "1000", "--y", "30")))
    validate(reg, "constants.schema.json", json.loads(run(binary, "constants", "--digits", "30")))
    for claim in ["THM_2_1", "THM_2_2", "J_BOUNDS", "THRESHOLDS", "H_CROSSING", "INEQ_33X"]:
        validate(reg, "report.schema.json", json.loads(run(binary, "verify", "--claim", claim, "--from", "2", "--to", "20000")))
    with tempfile.TemporaryDirectory() as tmp:
        dump = pathlib.Path(tmp) / "d.jsonl"
        run(binary, "sum", "--x", "5000", "--segment", "1024", "--dump", "jsonl", "--out", str(dump))
        lines = dump.read_text().splitlines()
        for line in lines:
            validate(reg, "prefix_state.schema.json", json.loads(line))
        checkpoint = pathlib.Path(tmp) / "c.jsonl"
        run(binary, "verify", "--claim", "THM_2_1", "--from", "2", "--to", "200000",
            "--shard", "65536", "--checkpoint", str(checkpoint))
        records = checkpoint.read_text().splitlines()
        for line in records:
            validate(reg, "checkpoint.schema.json", json.loads(line))
    print(f"schemas ok: {len(lines)} dump lines, {len(records)} checkpoint records")


if __name__ == "__main__":
    main()
