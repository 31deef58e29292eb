import json
import os
import pathlib

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMA_DIR = pathlib.Path(os.environ.get("ARITHLAB_SCHEMA_DIR", ROOT / "schemas"))
DATA_DIR = ROOT / "data"


def _load_schemas():
    schemas = {}
    for path in SCHEMA_DIR.glob("*.schema.json"):
        schemas[path.name] = json.loads(path.read_text())
    registry = Registry().with_resources(
        (s["$id"], Resource.from_contents(s)) for s in schemas.values()
    )
    registry = registry.with_resources((name, Resource.from_contents(s)) for name, s in schemas.items())
    return schemas, registry


@pytest.fixture(scope="session")
def validate():
    schemas, registry = _load_schemas()

    def check(report):
        name = "error.schema.json" if "error" in report else f"{report['command']}.schema.json"
        Draft202012Validator(schemas[name], registry=registry).validate(report)
        assert report["schema_version"] == "1.0"

    return check


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR
