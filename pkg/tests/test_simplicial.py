import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiab import zoo
from semiab.corpus import (check_kan, check_les_simplicial, check_moore_kan, gen_tower,
                           gen_tower_ses)
from semiab.errors import IdentityViolated, NotAContraction, NotSimplicialMorphism
from semiab.groups import GroupHom, derived_subgroup, identity_hom, is_isomorphic, zero_hom
from semiab.homsearch import find_isomorphism
from semiab.simplicial import (Horn, SimplicialHomotopy, acyclicity_check, all_homology,
                               check_simplicial_morphism, constant_morphism, constant_tower,
                               contractible_check, degeneracy_contraction,
                               degeneracy_homotopy, fibration_diagnostics,
                               fundamental_groupoid, homology_agreement, homotopy_check,
                               horn_fill, identity_morphism, kernel_tower,
                               les_from_ses_of_simplicial, moore_complex, nabla_surjective,
                               simplicial_homology, trivial_tower, validate_simplicial)
from semiab.xmod import (normal_inclusion_xmod, nerve, to_internal_category, trivial_action,
                         validate_xmod)

seeds = st.integers(0, 2 ** 32)


def one_object(A, D=3):
    """Nerve of the one-object internal category on an abelian group A."""
    one = zoo.group("1")
    x = validate_xmod(A, one, zero_hom(A, one), trivial_action(one, A))
    return nerve(to_internal_category(x), D)


def a3_in_s3(D=3):
    S3 = zoo.group("S3")
    return nerve(to_internal_category(normal_inclusion_xmod(S3, derived_subgroup(S3))), D)


def test_constant_tower_homology():
    A = constant_tower(zoo.group("S3"), 4)
    validate_simplicial(A.groups, A.faces, A.degeneracies)
    M = moore_complex(A)
    assert [s.order for s in M.subgroups] == [6, 1, 1, 1, 1]
    hs = all_homology(A)
    assert is_isomorphic(hs[0], zoo.group("S3"))
    assert [h.order for h in hs[1:]] == [1, 1, 1]


def test_trivial_tower():
    A = trivial_tower(3)
    assert [h.order for h in all_homology(A)] == [1, 1, 1]
    assert acyclicity_check(A).acyclic


def test_one_object_nerve():
    A = one_object(zoo.group("Z3"))
    validate_simplicial(A.groups, A.faces, A.degeneracies)
    assert A.orders()[:3] == [1, 3, 9]
    assert [s.order for s in moore_complex(A).subgroups][:3] == [1, 3, 1]
    assert simplicial_homology(A, 0).order == 1
    assert is_isomorphic(simplicial_homology(A, 1), zoo.group("Z3"))


def test_swapped_face_violates_identity():
    A = a3_in_s3()
    faces = [list(f) for f in A.faces]
    faces[2][0], faces[2][1] = faces[2][1], faces[2][0]
    with pytest.raises(IdentityViolated):
        validate_simplicial(A.groups, faces, A.degeneracies)


def brute_fillers(A, n, k, faces):
    return [y for y in range(A.groups[n].order)
            if all(A.face(n, i)(y) == x for i, x in faces.items())]


@given(st.integers(0, 10 ** 6), st.data())
def test_horn_fill_from_existing_simplex(z_seed, data):
    A = a3_in_s3(3)
    n = data.draw(st.integers(1, 3))
    k = data.draw(st.integers(0, n))
    z = z_seed % A.groups[n].order
    faces = {i: A.face(n, i)(z) for i in range(n + 1) if i != k}
    y = horn_fill(A, Horn(n, k, faces))
    assert y in brute_fillers(A, n, k, faces)


def test_identity_horn_and_constant_tower():
    A = constant_tower(zoo.group("Z4"), 2)
    assert horn_fill(A, Horn(2, 1, {0: 0, 2: 0})) == 0
    y = horn_fill(A, Horn(1, 0, {1: 3}))
    assert y == A.deg(0, 0)(3)


def test_fibration_anchors():
    A = a3_in_s3(3)
    r = fibration_diagnostics(identity_morphism(A))
    assert r.is_kan_fibration and r.is_acyclic_fibration
    q = constant_morphism(zoo.hom("mod:Z4:Z2"), 3)
    assert fibration_diagnostics(q).is_kan_fibration
    one, Z2 = zoo.group("1"), zoo.group("Z2")
    inc = check_simplicial_morphism(constant_tower(one, 3), constant_tower(Z2, 3),
                                    [zero_hom(one, Z2)] * 4)
    assert not fibration_diagnostics(inc).is_acyclic_fibration


def test_acyclicity_anchors():
    A = constant_tower(zoo.group("Z3"), 3)
    r = acyclicity_check(A)
    assert not r.acyclic and not nabla_surjective(A, 0)
    K, _ = kernel_tower(identity_morphism(a3_in_s3(3)))
    assert acyclicity_check(K).acyclic


def test_kernel_tower_les_of_constant_surjection():
    q = constant_morphism(zoo.hom("mod:Z4:Z2"), 3)
    K, k = kernel_tower(q)
    les = les_from_ses_of_simplicial(k, q)
    assert les.all_exact and les.routes_agree


def test_contraction():
    r = contractible_check(*degeneracy_contraction(zoo.group("Q8"), 3))
    assert r.ok
    A, eps, fm, fs = degeneracy_contraction(zoo.group("Z4"), 3)
    fs = list(fs)
    fs[1] = zero_hom(A.groups[1], A.groups[2])
    with pytest.raises(NotAContraction):
        contractible_check(A, eps, fm, fs)


def test_degeneracy_homotopy_and_perturbation():
    f = identity_morphism(a3_in_s3(3))
    h = degeneracy_homotopy(f)
    assert homotopy_check(h, f, f)
    assert all(homology_agreement(f, f, h))
    maps = [list(m) for m in h.maps]
    maps[1][0] = zero_hom(maps[1][0].source, maps[1][0].target)
    with pytest.raises(IdentityViolated):
        homotopy_check(SimplicialHomotopy(maps), f, f)


def test_fundamental_groupoid():
    C, _ = fundamental_groupoid(constant_tower(zoo.group("S3"), 3))
    assert C.A1.order == 6 and C.d0.is_iso and C.d1.is_iso
    S3 = zoo.group("S3")
    E = to_internal_category(normal_inclusion_xmod(S3, derived_subgroup(S3)))
    C, _ = fundamental_groupoid(nerve(E, 3))
    assert find_isomorphism(C.A0, E.A0) is not None
    assert find_isomorphism(C.A1, E.A1) is not None
    assert C.A1.order == 18
    C, _ = fundamental_groupoid(trivial_tower(3))
    assert C.A1.order == 1


def test_morphism_must_commute():
    A = constant_tower(zoo.group("Z2"), 2)
    Z2 = zoo.group("Z2")
    with pytest.raises(NotSimplicialMorphism):
        check_simplicial_morphism(A, A, [identity_hom(Z2), zero_hom(Z2, Z2), identity_hom(Z2)])


@given(seeds)
def test_moore_kan_properties(seed):
    assert all(check_moore_kan(gen_tower(random.Random(seed))).values())


@given(seeds)
def test_kan_properties(seed):
    assert all(check_kan(gen_tower(random.Random(seed))).values())


@given(seeds)
def test_les_properties(seed):
    assert all(check_les_simplicial(gen_tower_ses(random.Random(seed))).values())
