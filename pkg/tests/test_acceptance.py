"""Acceptance gate: criteria 1-13, one pass/fail line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import json
import sys
import time

import pytest

from semiab import zoo
from semiab.baer import centrality_equivalence, delta_v, lower_central_series, v1
from semiab.centrext import (check_sum_matches_classes, hochschild_serre_5term,
                             perfect_and_universal, uct_check)
from semiab.cli import run_command
from semiab.cocycles import cocycle_h2
from semiab.config import configured
from semiab.corpus import SUITES, run_property_corpus
from semiab.groups import (abelianization, center, cokernel, compose, derived_subgroup,
                           direct_product, image_factorization, is_isomorphic)

RESULTS = {}


def suite_ok(name, minimum, seed=1):
    r = run_property_corpus(name, seed)
    ok = r["failed"] == 0 and r["cases"] >= minimum
    return ok, f"{name}: {r['passed']}/{r['cases']} cases, {r['checks']} checks"


def combine(*parts):
    return all(ok for ok, _ in parts), "; ".join(d for _, d in parts)


def c1():
    a, b = zoo.hom("incl:D4:D8"), zoo.hom("incl:D8:D16")
    got = [image_factorization(a).is_proper, image_factorization(b).is_proper,
           image_factorization(compose(b, a)).is_proper]
    return got == [True, True, False], f"D4<D8, D8<D16, D4<D16 proper: {got}"


def c2():
    Q, _ = cokernel(zoo.hom("incl:A4:A5"))
    return Q.order == 1, f"|coker(A4 -> A5)| = {Q.order}"


def c3():
    return suite_ok("hk-iso", 200)


def c4():
    return combine(suite_ok("snake", 100), suite_ok("les-complex", 50),
                   suite_ok("les-simplicial", 50))


def c5():
    return combine(suite_ok("moore-proper", 100), suite_ok("kan", 100))


def c6():
    S3, D8, Q8 = (zoo.group(n) for n in ("S3", "D8", "Q8"))
    checks = {
        "[S3,S3]=A3": derived_subgroup(S3) == zoo.hom("sign:S3").kernel(),
        "[D8,D8]=Z2": is_isomorphic(derived_subgroup(D8).as_group()[0], zoo.group("Z2")),
        "Z(Q8)=Z2": is_isomorphic(center(Q8).as_group()[0], zoo.group("Z2")),
        "Ab Q8=Z2xZ2": is_isomorphic(abelianization(Q8)[0], zoo.group("Z2xZ2")),
        "V1(S3->Z2)=A3": v1(zoo.hom("sign:S3")) == derived_subgroup(S3),
    }
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} anchors" + \
        (f", failing {bad}" if bad else "")


def c7():
    split_bad = []
    names = zoo.known_names(12)
    for a in names:
        for b in names:
            A, B = zoo.group(a), zoo.group(b)
            if A.order * B.order > 96:
                continue
            P = direct_product(A, B)
            if delta_v(P.p1).group.order != 1:
                split_bad.append(f"{a}x{b}")
    z2 = zoo.group("Z2")
    q8 = is_isomorphic(delta_v(zoo.hom("proj:Q8:Z2xZ2")).group, z2)
    d8 = is_isomorphic(delta_v(zoo.hom("proj:D8:Z2xZ2")).group, z2)
    ok, detail = suite_ok("v1-generic", 200)
    return (not split_bad and q8 and d8 and ok,
            f"split presentations with nonzero dV: {split_bad or 'none'}; "
            f"dV(Q8)=Z2 {q8}; dV(D8)=Z2 {d8}; {detail}")


def c8():
    return suite_ok("centrality", 500)


def c9():
    cls = {n: lower_central_series(zoo.group(n), 4).nilpotency_class
           for n in ("Z6", "Z2xZ2", "D8", "Q8", "S3")}
    s3 = lower_central_series(zoo.group("S3"), 3)
    refl = is_isomorphic(s3.reflections[2], zoo.group("Z2"))
    want = {"Z6": 1, "Z2xZ2": 1, "D8": 2, "Q8": 2, "S3": None}
    return cls == want and refl, f"classes {cls}; S3 reflection at 2 is Z2: {refl}"


def c10():
    g = zoo.group
    orders = [cocycle_h2(g(y), g(a)).order for y, a in (("Z2", "Z2"), ("Z3", "Z2"),
                                                          ("Z2xZ2", "Z2"))]
    sums = [check_sum_matches_classes(cocycle_h2(g(y), g("Z2")))
            for y in ("Z2", "Z3", "Z2xZ2")]
    uct_bad = [(y, a) for y in zoo.known_names(16) for a in ("Z2", "Z3", "Z4")
               if not uct_check(g(y), g(a)).order_identity]
    uct_count = len(zoo.known_names(16)) * 3
    hs = hochschild_serre_5term(zoo.hom("mult:Z2:Z4:2"), zoo.hom("mod:Z4:Z2"), g("Z2"))
    hs_ok = all(hs.exact.values()) and hs.maps[3].is_trivial and hs.maps[2].is_injective
    ok = orders == [2, 1, 8] and all(sums) and not uct_bad and hs_ok
    return ok, (f"|H2| = {orders}; Baer sums match {sums}; UCT holds on "
                f"{uct_count - len(uct_bad)}/{uct_count} pairs; five-term exact, inflation 0, "
                f"transgression injective: {hs_ok}")


def c11():
    start = time.time()
    A5 = zoo.group("A5")
    ab = abelianization(A5)[0].order
    u = zoo.hom("proj:SL(2,5):A5")
    split = direct_product(A5, zoo.group("Z2"))
    rep = perfect_and_universal(A5, u, [split.p1, u])
    secs = time.time() - start
    ok = ab == 1 and rep.is_universal and len(rep.hom_counts) >= 2 and secs < 600
    return ok, f"|Ab A5| = {ab}; hom counts over sample {rep.hom_counts}; {secs:.1f}s"


def c12():
    return suite_ok("xmod", 100)


def c13():
    commands = [["group", "check", "Z4"], ["baer", "nilpotency", "D8", "--max", "3"],
                ["ext", "h2", "--base", "Z2xZ2", "--coeff", "Z2", "--cocycles"],
                ["ext", "uct", "--base", "D8", "--coeff", "Z4"],
                ["baer", "delta", "proj:Q8:Z2xZ2"]]
    first = [json.dumps(run_command(c), sort_keys=True) for c in commands]
    second = [json.dumps(run_command(c), sort_keys=True) for c in commands]
    suites = sorted(SUITES)
    a = [json.dumps(run_property_corpus(s, 2, 15), sort_keys=True) for s in suites]
    b = [json.dumps(run_property_corpus(s, 2, 15), sort_keys=True) for s in suites]
    ok = first == second and a == b
    return ok, f"{len(commands)} commands and {len(suites)} suites identical across two runs"


CRITERIA = [
    (1, "properness anchor", c1), (2, "simple-quotient anchor", c2),
    (3, "H/K isomorphism suite", c3), (4, "snake and long exact sequences", c4),
    (5, "Moore complex and Kan suite", c5), (6, "commutator anchors", c6),
    (7, "Baer-invariant anchors", c7), (8, "centrality equivalence", c8),
    (9, "nilpotency anchors", c9), (10, "cohomology anchors", c10),
    (11, "perfect anchor", c11), (12, "crossed-module suite", c12), (13, "determinism", c13),
]


def evaluate(number, title, fn):
    try:
        ok, detail = fn()
    except Exception as exc:             # a crash is a failed criterion, reported as such
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS[number] = line
    return ok, line


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    ok, line = evaluate(number, title, fn)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failures = 0
    for number, title, fn in CRITERIA:
        ok, line = evaluate(number, title, fn)
        print(line, flush=True)
        failures += not ok
    sys.exit(1 if failures else 0)
