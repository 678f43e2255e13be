import json

import pytest

from semiab import zoo
from semiab.corpus import SUITES, gen_surjection, register_suite, run_property_corpus
from semiab.errors import NotProper, UnknownSuite, ValidationError
from semiab.groups import center


@pytest.fixture
def scratch_suite():
    names = []

    def register(name, *args, **kw):
        names.append(name)
        return register_suite(name, *args, **kw)
    yield register
    for n in names:
        SUITES.pop(n, None)


def test_short_five_seed_1():
    r = run_property_corpus("short-five", 1)
    assert r["failed"] == 0 and r["passed"] == r["cases"] >= 100


def test_moore_proper_seed_1():
    r = run_property_corpus("moore-proper", 1)
    assert r["failed"] == 0 and r["cases"] >= 100


def test_falsified_lemma_is_caught(scratch_suite):
    # "every surjection has a central kernel" is false; S3 -> Z2 refutes it
    scratch_suite("false-central", lambda r: gen_surjection(r, 12),
                  lambda c: {"kernel-central": c.data.kernel() <= center(c.data.source)},
                  count=60)
    r = run_property_corpus("false-central", 1)
    assert r["failed"] > 0
    ce = r["counterexample"]
    assert ce["failed"] == ["kernel-central"]
    case = json.loads(json.dumps(ce["case"]))
    assert case["kind"] == "surjection"
    # the witness rebuilds to a genuine counterexample
    from semiab.groups import Subgroup
    X = zoo.group(case["X"])
    assert not Subgroup(X, case["kernel"]) <= center(X)


def test_raising_check_is_a_failure(scratch_suite):
    def boom(case):
        raise NotProper("image is not normal", which=1)
    scratch_suite("boom", lambda r: gen_surjection(r, 8), boom, count=3)
    r = run_property_corpus("boom", 1)
    assert r["failed"] == 3
    assert r["counterexample"]["error"]["error"] == "NotProper"
    assert r["counterexample"]["failed"] == ["raised"]


def test_determinism():
    a = run_property_corpus("centrality", 7, 40)
    b = run_property_corpus("centrality", 7, 40)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    c = run_property_corpus("centrality", 8, 40)
    assert c["seed"] == 8


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_property_corpus("no-such-suite")


def test_duplicate_registration():
    with pytest.raises(ValidationError):
        register_suite("snake", None, None)


def test_every_suite_small_run():
    for name in sorted(SUITES):
        if name == "xmod":
            continue
        r = run_property_corpus(name, 3, 5)
        assert r["failed"] == 0, (name, r["counterexample"])
