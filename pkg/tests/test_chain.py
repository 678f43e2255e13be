import random

import pytest
from hypothesis import given, strategies as st

from semiab import zoo
from semiab.chain import (check_chain_map, homology, les_from_ses_of_complexes,
                          validate_proper_complex)
from semiab.corpus import check_hk_iso, check_les_complex, gen_complex_ses, gen_proper_complex
from semiab.errors import CompositeNotZero, NotCommuting, NotProper
from semiab.groups import GroupHom, identity_hom, is_isomorphic, trivial_group, zero_hom

seeds = st.integers(0, 2 ** 32)
Z2, Z4 = zoo.group("Z2"), zoo.group("Z4")
ONE = trivial_group()


def brute_homology_order(C, n):
    d_out, d_in = C.d(n), C.d(n + 1)
    cycles = sum(1 for x in range(C.group(n).order) if d_out.map[x] == 0)
    boundaries = len(set(int(x) for x in d_in.map))
    return cycles // boundaries


def test_trivial_complex():
    C = validate_proper_complex([ONE, ONE], [identity_hom(ONE)])
    assert homology(C, 0).H.order == homology(C, 1).H.order == 1


def test_zero_boundaries_give_the_groups():
    C = validate_proper_complex([Z2, zoo.group("S3")], [zero_hom(zoo.group("S3"), Z2)])
    assert homology(C, 0).H.order == 2
    assert is_isomorphic(homology(C, 1).H, zoo.group("S3"))
    assert homology(C, 1).lam.is_iso


def test_short_exact_complex_is_exact():
    C = validate_proper_complex([Z2, Z4, Z2], [zoo.hom("mod:Z4:Z2"), zoo.hom("mult:Z2:Z4:2")])
    assert [homology(C, n).H.order for n in range(3)] == [1, 1, 1]
    assert all(C.is_exact_at(n) for n in range(3))


def test_doubling_on_z4():
    C = validate_proper_complex([Z4, Z4], [GroupHom(Z4, Z4, [0, 2, 0, 2])])
    h1, h0 = homology(C, 1), homology(C, 0)
    assert list(h1.cycles.elements) == [0, 2]
    assert h1.H.order == 2 and h0.H.order == 2


def test_improper_boundary_rejected():
    A5 = zoo.group("A5")
    with pytest.raises(NotProper) as e:
        validate_proper_complex([A5, zoo.group("A4")], [zoo.hom("incl:A4:A5")])
    assert e.value.which == 1


def test_nonzero_composite_rejected():
    with pytest.raises(CompositeNotZero):
        validate_proper_complex([Z4, Z4, Z4], [identity_hom(Z4), identity_hom(Z4)])


@given(seeds)
def test_homology_orders_match_brute_force(seed):
    C = validate_proper_complex(*gen_proper_complex(random.Random(seed), 24, 4).data)
    for n in range(C.length + 1):
        h = homology(C, n)
        assert h.H.order == brute_homology_order(C, n)
        assert h.lam.is_iso
        assert (h.H.order == 1) == C.is_exact_at(n)


@given(seeds)
def test_hk_iso_properties(seed):
    assert all(check_hk_iso(gen_proper_complex(random.Random(seed), 24, 4)).values())


@given(seeds)
def test_les_properties(seed):
    assert all(check_les_complex(gen_complex_ses(random.Random(seed))).values())


def test_connecting_map_iso_when_middle_exact():
    A = validate_proper_complex([Z2, ONE], [zero_hom(ONE, Z2)])
    B = validate_proper_complex([Z2, Z2], [identity_hom(Z2)])
    C = validate_proper_complex([ONE, Z2], [zero_hom(Z2, ONE)])
    L = les_from_ses_of_complexes(A, B, C, [identity_hom(Z2), zero_hom(ONE, Z2)],
                                  [zero_hom(Z2, ONE), identity_hom(Z2)])
    assert L.all_exact and L.routes_agree
    assert L.labels == ["H1(A)", "H1(B)", "H1(C)", "H0(A)", "H0(B)", "H0(C)"]
    assert [g.order for g in L.groups] == [1, 1, 2, 2, 1, 1]
    assert L.deltas[1].is_iso


def test_chain_map_must_commute():
    C = validate_proper_complex([Z2, Z2], [identity_hom(Z2)])
    with pytest.raises(NotCommuting):
        check_chain_map(C, C, [identity_hom(Z2), zero_hom(Z2, Z2)])
