"""Test the command line interface"""
import io
import json
from fractions import Fraction

import pytest

from veerweave import cli
from veerweave.triangulation import FORMAT_VERSION

from helper_methods import retrieve_fixture, write_document, f8_document


def _run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), stdout=out)
    return code, out.getvalue()


def _run_json(*argv):
    code, text = _run(*(list(argv) + ["--json"]))
    return code, json.loads(text)


def test_validate():
    code, doc = _run_json("validate", "f8.vtri")
    assert code == cli.EXIT_OK
    assert doc["valid"]
    assert doc["tets"] == 2
    assert doc["veers"][1] == "red"
    assert doc["veerweave"]["command"] == "validate"
    assert doc["veerweave"]["format"] == FORMAT_VERSION


def test_validate_invalid():
    doc = f8_document()
    doc["top_edges"][0] = [1, 3]
    path = write_document(doc)
    code, out = _run_json("validate", str(path))
    assert code == cli.EXIT_NEGATIVE
    assert not out["valid"]


def test_validate_human():
    code, text = _run("validate", str(retrieve_fixture("f8.vtri")))
    assert code == cli.EXIT_OK
    assert "tets: 2" in text.split("\n")


def test_cone():
    code, doc = _run_json("cone", "f8.vtri", "--class", "1")
    assert code == cli.EXIT_OK
    assert doc["verdict"] == "member"
    assert doc["verified"]
    code, doc = _run_json("cone", "f8.vtri", "--class=-1")
    assert code == cli.EXIT_NEGATIVE
    assert doc["verdict"] == "non-member"
    assert doc["witness"]["pairing"] == -1


def test_cone_weights():
    code, doc = _run_json("cone", "f8.vtri", "--weights", "[0, 1, 0, 1]",
                          "--seed", "1")
    assert code == cli.EXIT_OK
    assert doc["witness"] == [1, 0, 1, 0]
    code, _ = _run("cone", "f8.vtri", "--weights", "1,0,0,0")
    assert code == cli.EXIT_ERROR


def test_norm_and_carry():
    code, doc = _run_json("norm", "f8.vtri", "--class", "2")
    assert code == cli.EXIT_OK
    assert doc["value"] == 2
    code, doc = _run_json("norm", "f8.vtri", "--class", '["1/2"]')
    assert doc["value"] == "1/2"
    code, doc = _run_json("carry", "f8.vtri", "--weights", "0,1,0,1")
    assert code == cli.EXIT_OK
    assert doc["euler_char"] == -1


def test_flip():
    code, doc = _run_json("flip", "f8.vtri", "--weights", "0,1,0,1",
                          "--walk")
    assert code == cli.EXIT_OK
    assert doc["repeated"]
    code, doc = _run_json("flip", "f8.vtri", "--weights", "0,1,0,1",
                          "--tet", "1")
    assert doc["weights"] == [1, 0, 1, 0]
    code, _ = _run("flip", "f8.vtri", "--weights", "0,1,0,1", "--tet", "0")
    assert code == cli.EXIT_ERROR


def test_homology_and_tubes():
    code, doc = _run_json("homology", "f8.vtri")
    assert code == cli.EXIT_OK
    assert doc["betti_1"] == 1
    assert doc["euler_class"]["values"] == [-1]
    code, doc = _run_json("tubes", "f8.vtri", "--tubes", "f8_solid.json")
    assert code == cli.EXIT_OK
    assert doc["strict"]
    code, _ = _run("tubes", "f8.vtri")
    assert code == cli.EXIT_ERROR


def test_cusps():
    code, doc = _run_json("cusps", "f8.vtri")
    assert code == cli.EXIT_OK
    assert len(doc["cusps"]) == 1
    assert doc["cusps"][0]["tips"] == 8
    assert doc["cusps"][0]["up_ladders"] == 2


def test_transverse_and_birkhoff():
    code, doc = _run_json("transverse", "f8.vtri", "--class=-1")
    assert code == cli.EXIT_NEGATIVE
    assert doc["verdict"] == "not_transverse"
    code, doc = _run_json("birkhoff", "f8.vtri", "--class", "1")
    assert code == cli.EXIT_OK
    assert doc["birkhoff_section"]
    assert doc["framing"] == "relative"
    code, doc = _run_json("birkhoff", "f8.vtri", "--class=-1")
    assert code == cli.EXIT_NEGATIVE
    assert doc["pairing"] == -1


def test_blowup():
    code, doc = _run_json("blowup", "--arcs", "empty_arcs.json")
    assert code == cli.EXIT_OK
    assert doc["trivial"]
    assert len(doc["vertices"]) == 1
    code, text = _run("blowup", "--arcs", "six_prong_arcs.json", "--dot")
    assert code == cli.EXIT_OK
    assert text.count("->") == 1


def test_cone_face_dot():
    code, text = _run("cone-face", "f8.vtri", "--dot")
    assert code == cli.EXIT_OK
    assert text.startswith("digraph")
    code, doc = _run_json("cone-face", "f8.vtri")
    assert doc["extreme_rays"] == [[1]]


def test_errors(capsys):
    assert _run()[0] == cli.EXIT_ERROR
    assert _run("frobnicate")[0] == cli.EXIT_ERROR
    assert _run("validate", "no_such_file.vtri")[0] == cli.EXIT_ERROR
    assert _run("cone", "f8.vtri")[0] == cli.EXIT_ERROR
    assert _run("cone", "f8.vtri", "--class", "x")[0] == cli.EXIT_ERROR
    assert "veerweave: error:" in capsys.readouterr().err


def test_version(capsys):
    assert _run("--version")[0] == cli.EXIT_OK
    assert "format {}".format(FORMAT_VERSION) in capsys.readouterr().out


def test_deterministic_output():
    texts = []
    for _ in range(2):
        _, doc = _run_json("transverse", "f8.vtri", "--class", "1")
        doc.pop("veerweave")
        texts.append(json.dumps(doc, sort_keys=True))
    assert texts[0] == texts[1]


def test_parse_numbers():
    assert cli.parse_numbers("1,-2") == [1, -2]
    assert cli.parse_numbers("[1, -2]") == [1, -2]
    assert cli.parse_numbers('["1/2", 3]') == [Fraction(1, 2), 3]
    with pytest.raises(ValueError):
        cli.parse_numbers("[1.5]")
    with pytest.raises(ValueError):
        cli.parse_numbers("[true]")
    with pytest.raises(ValueError):
        cli.parse_numbers('{"a": 1}')


if __name__ == "__main__":
    # Run all tests
    _loc = locals()
    for _key in sorted(list(_loc.keys())):
        if _key.startswith("test_") and hasattr(_loc[_key], "__call__"):
            _loc[_key]()
