"""Validate shipped configs against docs/config.schema.json, and reject a few bad ones."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
schema = json.loads((root / "docs" / "config.schema.json").read_text())
validator = jsonschema.Draft202012Validator(schema)

failed = 0
for path in sorted((root / "configs").glob("*.json")):
    errors = list(validator.iter_errors(json.loads(path.read_text())))
    for e in errors:
        print(f"{path.name}: /{'/'.join(map(str, e.path))}: {e.message}")
    failed += bool(errors)
    print(f"{path.name}: {'ok' if not errors else 'INVALID'}")

bad = [{"sed": 1}, {"spsa": {"eta": "x"}}, {"dro": {"box": "wide"}}, {"game": {"N": 0}}]
for doc in bad:
    if validator.is_valid(doc):
        print(f"accepted a bad document: {json.dumps(doc)}")
        failed += 1

sys.exit(1 if failed else 0)
