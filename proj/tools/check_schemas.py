#!/usr/bin/env python3
"""Validate samples and k3cover outputs against schemas/.

usage: check_schemas.py K3COVER_BINARY REPO_ROOT
"""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        schemas[path.name] = doc
    resources = [(doc["$id"], Resource.from_contents(doc)) for doc in schemas.values()]
    return schemas, Registry().with_resources(resources)


def main():
    binary, root = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
    schemas, registry = load_registry(root / "schemas")
    for doc in schemas.values():
        jsonschema.Draft202012Validator.check_schema(doc)

    failures = []

    def check(doc, name, label):
        v = jsonschema.Draft202012Validator(schemas[name], registry=registry)
        errors = sorted(v.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:3]:
            failures.append(f"{label}: {'/'.join(map(str, e.path))}: {e.message[:200]}")
        print(f"{'ok ' if not errors else 'BAD'} {label} against {name}")

    samples = root / "samples"
    for path in sorted(samples.glob("*.json")):
        doc = json.loads(path.read_text())
        check(doc, {"surface": "surface.schema.json", "sextic": "sextic.schema.json"}[doc["kind"]], path.name)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        (tmp / "curve.json").write_text('{"kind": "curve", "a": ["0", "0", "0", "-2", "0"]}')
        (tmp / "point.json").write_text('{"kind": "point", "x": "-1", "y": "1"}')
        check(json.loads((tmp / "curve.json").read_text()), "curve.schema.json", "curve input")
        check(json.loads((tmp / "point.json").read_text()), "point.schema.json", "point input")

        runs = [
            (["smooth", samples / "x0.json"], "smoothness"),
            (["tangent", samples / "x0.json"], "tangency_datum"),
            (["count", "--q", "9", samples / "x0.json"], "point_count"),
            (["certify", "--mode", "rational", samples / "x0.json", "-o", tmp / "rc.json"], None),
            (["certify", samples / "fermat_minus.json", "-o", tmp / "ec.json"], None),
            (["verify", tmp / "rc.json"], "verification"),
            (["points", tmp / "rc.json", "-n", "3"], "points"),
            (["points", tmp / "ec.json", "-n", "2"], "points"),
            (["torsion", tmp / "curve.json", tmp / "point.json"], "torsion_certificate"),
            (["family", "--h", samples / "h_example.json"], "surface"),
            (["family", "--check-mprime", samples / "x0.json"], "mprime_membership"),
            (["family", "--mod3", samples / "x0.json"], "mod3_certificate"),
            (["family", "--normalize", samples / "x0.json"], "normalization"),
            (["density", "--point", "2,3/2,1,69/8"], "density_report"),
            (["density", "--point", "1,2,-1,8"], "density_report"),
        ]
        for i, (args, kind) in enumerate(runs):
            manifest = tmp / f"run{i}.manifest.json"
            cmd = [str(binary), "--manifest", str(manifest)] + [str(a) for a in args]
            proc = subprocess.run(cmd, capture_output=True, text=True)
            label = " ".join(str(a) for a in args[:2])
            if proc.returncode == 2:
                failures.append(f"{label}: usage error: {proc.stderr.strip()}")
                continue
            if kind:
                check(json.loads(proc.stdout), f"{kind}.schema.json", label)
            check(json.loads(manifest.read_text()), "run_manifest.schema.json", label + " manifest")
        check(json.loads((tmp / "rc.json").read_text()), "rational_certificate.schema.json", "rational certificate")
        check(json.loads((tmp / "ec.json").read_text()), "extension_certificate.schema.json", "extension certificate")

    for f in failures:
        print(f, file=sys.stderr)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
