#!/usr/bin/env python3
"""Run each clustercat subcommand once and validate its JSON against docs/schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schema"
DATA = ROOT / "tests" / "data"

CASES = [
    ("classify", ["classify", "-w", "2,3,5"], 0),
    ("kth", ["kth", "gram", "-w", "2,2"], 0),
    ("kth", ["kth", "radical", "-w", "2,2,2,2"], 0),
    ("slope-word", ["slope-word", "-5/3", "-w", "2,2,2,2"], 0),
    ("interval", ["interval", "1/2", "0", "1"], 0),
    ("tube-hom", ["tube", "hom", "--rank", "3", "--x", "0,2", "--y", "1,4"], 0),
    ("tube-report", ["tube", "check-yp", "--rank", "2", "--max", "4"], 0),
    ("tube-report", ["tube", "check-ar", "--rank", "3", "--max", "4"], 0),
    ("hom", ["hom", "L(0,0,0;0)", "T(1,0,1)", "-w", "2,3,5"], 0),
    ("hom", ["ideal", "SP(1)", "PP(0,1)", "-w", "2,2,2"], 0),
    ("tilting", ["tilt", "squid", "-w", "2,3,4"], 0),
    ("tilting", ["tilt", "check", str(DATA / "squid_235.json"), "-w", "2,3,5"], 0),
    ("mutation", ["mutate", str(DATA / "canonical_235.json"), "L(0,0,4;0)", "-w", "2,3,5"], 0),
    ("mutation", ["mutate", str(DATA / "d4_regular.json"), "R(1,1,1)", "-w", "2,2,2"], 0),
    ("replay-squid", ["replay-squid", "-w", "2,3,5"], 0),
    ("exchange", ["exchange", "-w", "2,2,2", "--depth", "2"], 0),
    ("reduce-torsion", ["reduce-torsion", str(DATA / "d4_regular.json"), "-w", "2,2,2"], 0),
    ("fz-mutate", ["fz", "mutate", str(DATA / "d4_affine.json"), "0"], 0),
    ("fz-class", ["fz", "class", str(DATA / "d4_affine.json"), "--exhaustive"], 0),
    ("fz-presentation", ["fz", "canonical-presentation", "-w", "2,3,5"], 0),
    ("verify", ["verify", "--suite", "classification"], 0),
    ("error", ["exchange", "-w", "2,2,2,2"], 1),
    ("error", ["fz", "canonical-presentation", "-w", "2,2"], 1),
]

INPUTS = [
    ("input-set", DATA / "squid_235.json"),
    ("input-set", DATA / "canonical_235.json"),
    ("input-set", DATA / "d4_regular.json"),
    ("input-quiver", DATA / "d4_affine.json"),
]


def main() -> int:
    cli = sys.argv[1]
    resources = []
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
        resources.append((path.name, Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)

    def validator(name):
        schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
        return jsonschema.Draft202012Validator(schema, registry=registry)

    failures = 0
    for name, args, code in CASES:
        run = subprocess.run([cli, *args], capture_output=True, text=True)
        if run.returncode != code:
            print(f"FAIL {' '.join(args)}: exit {run.returncode}, expected {code}")
            failures += 1
            continue
        errors = list(validator(name).iter_errors(json.loads(run.stdout)))
        status = "ok  " if not errors else "FAIL"
        print(f"{status} {name:16} {' '.join(args)}")
        for e in errors:
            print(f"     {e.json_path}: {e.message}")
        failures += bool(errors)
    for name, path in INPUTS:
        errors = list(validator(name).iter_errors(json.loads(path.read_text())))
        print(f"{'ok  ' if not errors else 'FAIL'} {name:16} {path.name}")
        failures += bool(errors)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
