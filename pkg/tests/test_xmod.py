import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semiab import zoo
from semiab.corpus import check_xmod, gen_xmod_case
from semiab.errors import EquationFails, PeifferFails
from semiab.groups import (GroupHom, derived_subgroup, direct_product, identity_hom,
                           is_isomorphic, zero_hom)
from semiab.homsearch import find_homs, find_isomorphism
from semiab.simplicial import all_homology, constant_tower
from semiab.xmod import (check_xmod_morphism, discrete_category, from_internal_category,
                         functor_of, huq_commutator_xmod, identity_xmod, model_predicates,
                         natural_iso_check, nerve, nerve_homology_agreement,
                         normal_inclusion_xmod, roundtrip_witnesses, to_internal_category,
                         trivial_action, validate_xmod, xmod_homology, xmod_report)

ONE = zoo.group("1")


def a3_in_s3():
    S3 = zoo.group("S3")
    return normal_inclusion_xmod(S3, derived_subgroup(S3))


def to_point(A):
    return validate_xmod(A, ONE, zero_hom(A, ONE), trivial_action(ONE, A))


def from_point(G):
    return validate_xmod(ONE, G, zero_hom(ONE, G), trivial_action(G, ONE))


def test_normal_inclusion_is_crossed():
    x = a3_in_s3()
    assert to_internal_category(x).A1.order == 18
    h = xmod_homology(x)
    assert h.H0.order == 2 and h.H1.order == 1


@pytest.mark.parametrize("name,crossed", [("Z3", True), ("Z2xZ2", True), ("S3", False),
                                          ("Q8", False)])
def test_to_point_crossed_iff_abelian(name, crossed):
    A = zoo.group(name)
    rep = xmod_report(A, ONE, zero_hom(A, ONE), trivial_action(ONE, A))
    assert rep["isCrossed"] == crossed and rep["isPrecrossed"]
    if not crossed:
        with pytest.raises(PeifferFails):
            to_point(A)


def test_homology_anchors():
    h = xmod_homology(to_point(zoo.group("Z4")))
    assert h.H0.order == 1 and h.H1.order == 4
    h = xmod_homology(from_point(zoo.group("S3")))
    assert is_isomorphic(h.H0, zoo.group("S3")) and h.H1.order == 1
    assert xmod_report(zoo.group("S3"), zoo.group("S3"), identity_hom(zoo.group("S3")),
                       zoo.group("S3").conjugation)["isCrossed"]


def test_one_object_category():
    A = zoo.group("Z3")
    C = to_internal_category(to_point(A))
    y = from_internal_category(C)
    assert y.G.order == 1 and is_isomorphic(y.T, A)
    N = nerve(C, 3)
    assert N.orders()[:3] == [1, 3, 9]
    hs = all_homology(N)
    assert hs[0].order == 1 and is_isomorphic(hs[1], A)


def test_discrete_nerve_is_constant():
    G = zoo.group("S3")
    N = nerve(discrete_category(G), 3)
    K = constant_tower(G, 3)
    assert N.orders() == K.orders()
    assert all(f.is_iso for fs in N.faces[1:] for f in fs)


def test_nerve_of_a3_in_s3():
    N = nerve(to_internal_category(a3_in_s3()), 2)
    hs = all_homology(N)
    assert hs[0].order == 2 and hs[1].order == 1
    assert nerve_homology_agreement(a3_in_s3(), 2)


@pytest.mark.parametrize("make", [a3_in_s3, lambda: identity_xmod(zoo.group("D8")),
                                  lambda: to_point(zoo.group("Z2xZ2")),
                                  lambda: from_point(zoo.group("Q8"))])
def test_roundtrip(make):
    rt = roundtrip_witnesses(make())
    assert rt.xmod_iso.h.is_iso and rt.category_iso.f1.is_iso


def test_predicates_identity():
    x = a3_in_s3()
    p = model_predicates(check_xmod_morphism(x, x, identity_hom(x.T), identity_hom(x.G)))
    assert all([p.is_weak_equivalence, p.is_fibration, p.is_fully_faithful,
                p.is_essentially_surjective])


def test_predicates_quotient_is_weak_equivalence():
    x = a3_in_s3()
    Z2 = zoo.group("Z2")
    y = from_point(Z2)
    m = check_xmod_morphism(x, y, zero_hom(x.T, ONE), zoo.hom("sign:S3"))
    p = model_predicates(m)
    assert p.is_weak_equivalence and p.is_fibration


def test_predicates_not_essentially_surjective():
    Z2 = zoo.group("Z2")
    P = direct_product(Z2, Z2)
    x, y = from_point(Z2), from_point(P.group)
    p = model_predicates(check_xmod_morphism(x, y, identity_hom(ONE), P.i1))
    assert not p.is_essentially_surjective and not p.is_weak_equivalence


def test_morphism_equations():
    x = a3_in_s3()
    with pytest.raises(EquationFails):
        check_xmod_morphism(x, x, identity_hom(x.T), zero_hom(x.G, x.G))


def test_natural_transformations():
    x = identity_xmod(zoo.group("S3"))
    m = check_xmod_morphism(x, x, identity_hom(x.T), identity_hom(x.G))
    F = functor_of(m)
    C, E = F.source, F.target
    assert natural_iso_check(F.f0.then(E.i), F, F)
    # transformations F => conjugate of F into the codiscrete groupoid, found by scan
    S3 = x.G
    c = GroupHom(S3, S3, S3.conjugation[1])
    mc = check_xmod_morphism(x, x, c, c)
    G = functor_of(mc)
    found = []
    for mu in find_homs(C.A0, E.A1):
        try:
            found.append(natural_iso_check(mu, F, G))
        except EquationFails:
            pass
    assert found and all(found)
    bad = GroupHom(C.A0, E.A1, np.zeros(C.A0.order, dtype=np.int64))
    with pytest.raises(EquationFails):
        natural_iso_check(bad, F, F)


def test_sub_crossed_module_commutator():
    x = identity_xmod(zoo.group("S3"))
    W = x.G.whole()
    top, bottom = huq_commutator_xmod(x, W, W, W, W)
    assert top.order == 3 and bottom.order == 3


@settings(max_examples=10)
@given(st.integers(0, 2 ** 32))
def test_xmod_properties(seed):
    assert all(check_xmod(gen_xmod_case(random.Random(seed))).values())
