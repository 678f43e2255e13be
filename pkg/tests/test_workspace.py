import json

import numpy as np
import pytest

from conftest import data
from semiab import zoo
from semiab.errors import (NotAssociative, NotCommuting, ParseError, UnresolvedReference,
                           ValidationError)
from semiab.groups import is_isomorphic
from semiab.workspace import load_workspace, parse_cycles


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def test_empty_workspace():
    ws = load_workspace([])
    assert len(ws) == 0


def test_cyclic_generator_closes_to_z4(tmp_path):
    p = write(tmp_path, "z4.json", {"name": "C4", "degree": 4, "generators": ["(0 1 2 3)"]})
    ws = load_workspace([p])
    G = ws.groups["C4"]
    assert G.order == 4 and G.table.shape == (4, 4)
    assert is_isomorphic(G, zoo.group("Z4"))


def test_image_list_generators(tmp_path):
    p = write(tmp_path, "s3.json", {"groups": [
        {"name": "S", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "order": 6}]})
    assert load_workspace([p]).groups["S"].order == 6


def test_non_associative_table_reports_triple(tmp_path):
    t = [[(x - y) % 3 for y in range(3)] for x in range(3)]
    p = write(tmp_path, "bad.json", {"name": "B", "order": 3, "table": t})
    with pytest.raises(NotAssociative) as e:
        load_workspace([p])
    a, b, c = e.value.witness["triple"]
    T = np.array(t)
    assert T[T[a, b], c] != T[a, T[b, c]]
    assert e.value.witness["file"] == p


def test_declared_order_mismatch(tmp_path):
    p = write(tmp_path, "z2.json", {"name": "T", "order": 3, "table": [[0, 1], [1, 0]]})
    with pytest.raises(ValidationError):
        load_workspace([p])


def test_duplicate_names_rejected(tmp_path):
    g = {"name": "G", "table": [[0, 1], [1, 0]]}
    p = write(tmp_path, "a.json", {"groups": [g]})
    q = write(tmp_path, "b.json", {"groups": [g]})
    with pytest.raises(ValidationError) as e:
        load_workspace([p, q])
    assert e.value.witness["name"] == "G"


def test_unresolved_reference(tmp_path):
    p = write(tmp_path, "h.json", {"homs": [{"name": "f", "source": "Nope", "target": "Z2",
                                             "map": [0]}]})
    with pytest.raises(UnresolvedReference) as e:
        load_workspace([p])
    assert e.value.witness["location"] == "homs[0]"


def test_malformed_json_location(tmp_path):
    p = write(tmp_path, "x.json", '{"groups": [\n  {"name": }\n]}')
    with pytest.raises(ParseError) as e:
        load_workspace([p])
    assert e.value.witness["location"].startswith("line 2")


def test_homs_by_images(tmp_path):
    p = write(tmp_path, "h.json", {"homs": [
        {"name": "q", "source": "Z6", "target": "Z3", "generators": [1], "images": [1]}]})
    ws = load_workspace([p])
    assert ws.homs["q"].is_surjective and ws.hom("q").kernel().order == 2


def test_diagram_file_and_commutation(tmp_path):
    ws = load_workspace([data("snake.json")])
    assert "double" in ws.homs
    bad = json.load(open(data("snake.json")))
    bad["homs"][0]["map"] = [0, 1, 2, 3]
    p = write(tmp_path, "bad.json", bad)
    with pytest.raises(NotCommuting):
        load_workspace([p])


def test_parse_cycles():
    assert parse_cycles("(0 1 2 3)") == [1, 2, 3, 0]
    assert parse_cycles("(0 1)(2 3)", 5) == [1, 0, 3, 2, 4]
    with pytest.raises(ParseError):
        parse_cycles("(0 1)(1 2)")
    with pytest.raises(ParseError):
        parse_cycles("0 1")


def test_named_single_objects(tmp_path):
    p = write(tmp_path, "x.json", {"name": "conj", "T": "S3", "G": "S3", "boundary": "id:S3",
                                   "action": "conjugation"})
    ws = load_workspace([p])
    assert ws.xmod("conj").G.order == 6
