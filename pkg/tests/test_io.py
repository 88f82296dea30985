import json

import pytest

from kssdomain import fixtures
from kssdomain.errors import InputError, ModelValidationError
from kssdomain.io import dumps, load_family, load_model, model_from_json, table_from_json


@pytest.mark.parametrize("name", list(fixtures.ALL))
def test_fixture_files_match_builders(fixture_dir, name):
    assert load_model(fixture_dir / f"{name}.json").to_json() == fixtures.ALL[name]().to_json()


@pytest.mark.parametrize("name", list(fixtures.ALL))
def test_round_trip(name):
    m = fixtures.ALL[name]()
    assert model_from_json(json.loads(dumps(m.to_json()))).to_json() == m.to_json()


def test_unknown_keys_rejected():
    base = fixtures.model_b().to_json()
    with pytest.raises(InputError):
        model_from_json(dict(base, colour="red"))
    t = fixtures.model_t().to_json()
    t["rows"][0]["extra"] = "1"
    with pytest.raises(InputError):
        model_from_json(t)
    with pytest.raises(InputError):
        model_from_json({"kind": "fan"})


def test_float_entries_rejected():
    t = fixtures.model_t().to_json()
    t["rows"][0]["A"] = 0.5
    with pytest.raises(InputError):
        model_from_json(t)
    with pytest.raises(InputError):
        model_from_json({"kind": "toric", "rays": [[1.0], [-1]]})


def test_bad_rays_file(fixture_dir):
    with pytest.raises(ModelValidationError) as err:
        load_model(fixture_dir / "bad-rays.json")
    assert err.value.reason == "NON_PRIMITIVE_RAY"


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_model(tmp_path / "nope.json")
    (tmp_path / "bad.json").write_text("{", encoding="utf-8")
    with pytest.raises(InputError):
        load_model(tmp_path / "bad.json")


def test_family_paths_and_inline(fixture_dir, tmp_path):
    fam = load_family(fixture_dir / "family-BCE.json")
    assert [m.name for m in fam] == ["MODEL-B", "MODEL-C", "MODEL-E"]
    path = tmp_path / "fam.json"
    path.write_text(json.dumps({"models": [fixtures.model_t().to_json()]}), encoding="utf-8")
    assert load_family(path)[0].name == "MODEL-T"


def test_table_from_json_requires_table():
    with pytest.raises(InputError):
        table_from_json(fixtures.model_b().to_json())


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
