#!/usr/bin/env python3
"""Validate every kgsf --format json report on the corpus against the shipped schema.

Usage: schema_check.py KGSF_BINARY CORPUS_DIR SCHEMA_FILE
"""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main():
    cli, corpus, schema_path = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    checked = 0

    def report(*args):
        nonlocal checked
        out = subprocess.run([cli, *args, "--format", "json"], capture_output=True, text=True)
        if out.returncode >= 64:
            raise SystemExit(f"{' '.join(args)}: exit {out.returncode}: {out.stderr}")
        doc = json.loads(out.stdout)
        errors = sorted(validator.iter_errors(doc), key=str)
        if errors:
            raise SystemExit(f"{' '.join(args)}: {errors[0].message} at {list(errors[0].absolute_path)}")
        checked += 1
        return out.stdout

    graphs = sorted(p for p in corpus.glob("*.json") if not p.name.endswith(".expect.json"))
    with tempfile.TemporaryDirectory() as tmp:
        for g in graphs:
            path = str(g)
            report("validate", path)
            report("ktheory", path)
            report("lattice", path)
            for cond in ("m", "n", "trace", "cofinal", "coord1", "coord2"):
                report("check", path, "--condition", cond)
            cert = Path(tmp) / (g.stem + ".cert.json")
            cert.write_text(report("certify", path, "--oracle-box", "2"))
            report("replay", path, str(cert), "--oracle-box", "2")
        broken = Path(tmp) / "broken.json"
        broken.write_text('{"vertices": ["v"], "blue_edges": [], "red_edges": [], "squares": []}')
        report("validate", str(broken))

    print(f"{checked} reports match {schema_path.name}")


if __name__ == "__main__":
    main()
