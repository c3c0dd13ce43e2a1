"""The published JSON Schemas accept the shipped fixture and solved plans,
and reject documents the loader would reject."""

import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from scgep.oracle import solve_monolithic
from scgep.report import plan_from_monolithic, render_plan_json

from models import mini2z

ROOT = Path(__file__).parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
FIXTURE = Path(__file__).parent / "fixtures" / "mini2z"

_PAIRS = [
    ("manifest.json", "manifest.schema.json"),
    ("topology.json", "topology.schema.json"),
    ("catalog.json", "catalog.schema.json"),
    ("assets.json", "assets.schema.json"),
    ("policies.json", "policies.schema.json"),
    ("supply_chain.json", "supply_chain.schema.json"),
]


def _schema(name: str) -> dict:
    return json.loads((SCHEMAS / name).read_text())


@pytest.mark.parametrize("doc_name,schema_name", _PAIRS)
def test_fixture_documents_conform(doc_name, schema_name):
    doc = json.loads((FIXTURE / doc_name).read_text())
    jsonschema.validate(doc, _schema(schema_name))


@pytest.mark.parametrize("schema_name", sorted(p[1] for p in _PAIRS) + ["plan.schema.json"])
def test_schemas_are_valid_draft07(schema_name):
    schema = _schema(schema_name)
    jsonschema.Draft7Validator.check_schema(schema)
    assert schema["$schema"] == "http://json-schema.org/draft-07/schema#"


def test_solved_plan_conforms():
    model = mini2z()
    plan = plan_from_monolithic(model, solve_monolithic(model))
    doc = json.loads(render_plan_json(plan))
    jsonschema.validate(doc, _schema("plan.schema.json"))


def test_schema_rejects_what_the_loader_rejects():
    assets = json.loads((FIXTURE / "assets.json").read_text())
    del assets["assets"][0]["capacity_mw"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(assets, _schema("assets.schema.json"))

    manifest = json.loads((FIXTURE / "manifest.json").read_text())
    del manifest["time"]["weights"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(manifest, _schema("manifest.schema.json"))

    catalog = json.loads((FIXTURE / "catalog.json").read_text())
    catalog["technologies"][0]["type"] = "fusion"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(catalog, _schema("catalog.schema.json"))

    policies = json.loads((FIXTURE / "policies.json").read_text())
    del policies["penalties"]["voll_per_mwh"]
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(policies, _schema("policies.schema.json"))


def test_schema_rejects_reserved_id_characters():
    topo = {"zones": ["Z1", "Z:2"]}
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(topo, _schema("topology.schema.json"))
