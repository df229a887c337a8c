"""Runs each CLI command and validates every response, and every sample input, against the schema."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, root = sys.argv[1], Path(sys.argv[2])
schema = json.loads((root / "schemas" / "torelli-v1.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
response = jsonschema.Draft202012Validator(schema)


def part(name):
    return jsonschema.Draft202012Validator({"$ref": f"#/$defs/{name}", "$defs": schema["$defs"]})


s = lambda name: str(root / "samples" / name)
tmp = Path(tempfile.mkdtemp())
commands = [
    ["lattice", "info", "k3"],
    ["lattice", "info", "nope"],
    ["lattice", "kernel", "--lattice", "3u", "--input", s("kernel_3u.json")],
    ["period", "check", "--lattice", "3u", "--input", s("x_3u.json")],
    ["period", "random", "--lattice", "3u", "--field", "root:3:2", "--seed", "2", "-o", str(tmp / "p.json")],
    ["period", "picard", "--lattice", "3u", "--input", str(tmp / "p.json")],
    ["twistor", "check", "--lattice", "3u", "--input", s("line_3u.json"), "-o", str(tmp / "t.json")],
    ["twistor", "genericize", "--lattice", "3u", "--input", str(tmp / "t.json"), "--field", "sqrt:2"],
    ["connect", "--lattice", "3u", "--from", s("x_3u.json"), "--to", s("y_3u.json"), "-o", str(tmp / "c.json")],
    ["verify", str(tmp / "c.json")],
    ["connect", "--lattice", "3u", "--mode", "ball", "--radius", "1/4", "--field", "sqrt:2",
     "--from", s("sqrt2_x_3u.json"), "--to", s("sqrt2_y_3u.json")],
    ["weyl", "reduce", "--lattice", "u", "--omega", "2,1", "--ref", "1,3"],
    ["weyl", "reduce", "--lattice", "u", "--omega", "2,1", "--ref", "1,3", "--max-steps", "0"],
    ["isom", "orientation", "--lattice", "3u", "--matrix", s("negation_3u.json")],
]
failures = 0
for argv in commands:
    proc = subprocess.run([cli, *argv], capture_output=True, text=True)
    out = proc.stdout
    if "-o" in argv:
        out = Path(argv[argv.index("-o") + 1]).read_text()
    try:
        doc = json.loads(out)
        response.validate(doc)
        if doc["certificate"] is not None:
            part("chain").validate(doc["certificate"])
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL", " ".join(argv), e)

for name, kind in [("x_3u.json", "period"), ("y_3u.json", "period"), ("sqrt2_x_3u.json", "period"),
                   ("sqrt2_y_3u.json", "period"), ("sqrt2_edge_3u.json", "period"), ("line_3u.json", "line"),
                   ("kernel_3u.json", "constraints")]:
    try:
        part(kind).validate(json.loads(Path(s(name)).read_text()))
    except Exception as e:  # noqa: BLE001
        failures += 1
        print("FAIL sample", name, e)

print(f"{len(commands)} responses and 7 samples checked, {failures} failures")
sys.exit(1 if failures else 0)
