import json

import pytest

from hopfsquare import examples, groups, manifest
from hopfsquare.exactla import GF
from hopfsquare.manifest import ManifestError
from hopfsquare.square import square_to_2action, square_to_cat2
from hopfsquare.twoaction import twoaction_to_pt2
from hopfsquare.xmod import xmod_to_cat1

from conftest import corpus_square


def objects():
    unit = corpus_square("unit", algebra="k_c2")
    cm = examples.named_xmod("conj_a3_s3")
    return {
        "hopf": examples.named_algebra("s3"),
        "group": groups.symmetric(3),
        "morphism": cm.d,
        "action": cm.act,
        "xmod": cm,
        "cat1": xmod_to_cat1(cm),
        "square": unit,
        "2action": square_to_2action(unit),
        "pt2": twoaction_to_pt2(square_to_2action(unit)).split,
        "cat2": square_to_cat2(unit),
        "group_xmod": examples.group_xmod("conj_a3_s3"),
        "group_square": groups.normal_pair_square(groups.klein(), [0, 1], [0, 2]),
    }


@pytest.mark.parametrize("kind", manifest.KINDS)
def test_dump_load_dump_is_byte_identical(kind):
    obj = objects()[kind]
    text = manifest.dumps(obj)
    back = manifest.loads(text)
    assert manifest.kind_of(back) == kind
    assert manifest.dumps(back) == text


def test_identical_inputs_give_identical_files():
    a = manifest.dumps(examples.gen_example("normal-pair", group="v4"))
    b = manifest.dumps(examples.gen_example("normal-pair", group="v4"))
    assert a == b


def test_shared_algebras_are_written_once():
    doc = manifest.to_manifest(corpus_square("unit", algebra="k_c2"))
    assert list(doc["objects"]) == ["K[C2]"]
    assert doc["payload"]["L"] == doc["payload"]["P"] == "#K[C2]"


def test_prime_field_manifest():
    H = examples.named_algebra("c3", GF(5))
    doc = json.loads(manifest.dumps(H))
    assert doc["field"] == "fp:5"
    assert manifest.loads(manifest.dumps(H)).field is GF(5)


def test_worked_c2_example_matches_docs():
    doc = manifest.to_manifest(examples.named_algebra("c2"))
    rec = doc["objects"]["K[C2]"]
    assert rec["mult"] == [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "1"]]
    assert rec["comult"] == [[0, 0, 0, "1"], [1, 1, 1, "1"]]
    assert rec["counit"] == [[0, "1"], [1, "1"]]
    assert rec["antipode"] == [[0, 0, "1"], [1, 1, "1"]]


def test_file_references(tmp_path):
    H = examples.named_algebra("c2")
    manifest.save(H, tmp_path / "k_c2.json")
    doc = manifest.to_manifest(examples.named_xmod("c2_c2"))
    doc["objects"] = {}
    p = doc["payload"]
    p["B"] = p["X"] = p["d"]["dom"] = p["d"]["cod"] = p["act"]["acting"] = p["act"]["acted"] = "k_c2.json"
    (tmp_path / "cm.json").write_text(json.dumps(doc))
    cm = manifest.load(str(tmp_path / "cm.json"))
    assert cm.B is cm.X


def bad(mutate):
    doc = manifest.to_manifest(examples.named_xmod("c2_c2"))
    mutate(doc)
    return json.dumps(doc)


@pytest.mark.parametrize("mutate, where", [
    (lambda d: d.update(schema_version="0"), "schema_version"),
    (lambda d: d.update(field="reals"), "field"),
    (lambda d: d.update(kind="bogus"), "kind"),
    (lambda d: d["payload"].update(B="#nowhere"), "payload.B"),
    (lambda d: d["objects"]["K[B]"]["mult"][0].__setitem__(3, "0.5"), "mult[0]"),
    (lambda d: d["objects"]["K[B]"]["mult"][0].__setitem__(0, 9), "mult[0]"),
    (lambda d: d["payload"]["d"].pop("matrix"), "payload.d"),
    (lambda d: d["payload"]["act"].update(acting="#K[X]"), "payload.act"),
])
def test_input_errors_carry_a_location(mutate, where):
    with pytest.raises(ManifestError) as info:
        manifest.loads(bad(mutate))
    assert where in str(info.value)
    assert str(info.value).count("<string>") == 1, "location must be reported once"


def test_invalid_json():
    with pytest.raises(ManifestError, match="line 1"):
        manifest.loads("{not json")
