import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from semiab import zoo
from semiab.corpus import check_short_five, check_snake, gen_ladder, gen_snake_case
from semiab.diagram import (check_ladder, check_short_exact, is_pullback_square,
                            is_regular_pushout, noether_quotient, ses_of_normal, snake)
from semiab.errors import ImageNotKernel, NotCommuting, NotEpiRows, NotMono
from semiab.groups import (GroupHom, derived_subgroup, generated_subgroup, identity_hom,
                           is_isomorphic, trivial_group, zero_hom)

seeds = st.integers(0, 2 ** 32)


def double(n):
    G = zoo.group(f"Z{n}")
    return GroupHom(G, G, [(2 * x) % n for x in range(n)])


def z2_z4_z2():
    return check_short_exact(zoo.hom("mult:Z2:Z4:2"), zoo.hom("mod:Z4:Z2"))


def chase(d):
    """Elementwise snake oracle: kernel orders, cokernel orders and the
    kernel and image sizes of the connecting map, using the first preimage."""
    top, bot = d.top, d.bottom
    ker = lambda h: [x for x in range(h.source.order) if h.map[x] == 0]
    im_u = set(int(x) for x in d.u.map)
    ku, kv, kw = ker(d.u), ker(d.v), ker(d.w)
    coset = {}
    for a in range(bot.K.order):
        coset[a] = min(int(bot.K.table[a, b]) for b in im_u)
    kinv = {int(bot.k.map[a]): a for a in range(bot.K.order)}
    delta = {}
    for y in kw:
        x = next(x for x in range(top.X.order) if top.f.map[x] == y)
        delta[y] = coset[kinv[int(d.v.map[x])]]
    q = lambda h: h.target.order // len(set(int(x) for x in h.map))
    return ([len(ku), len(kv), len(kw), q(d.u), q(d.v), q(d.w)],
            sum(1 for y in kw if delta[y] == 0), len(set(delta.values())))


def test_short_exact_anchors():
    z2_z4_z2()
    S3 = zoo.group("S3")
    ses_of_normal(S3, derived_subgroup(S3))
    G = zoo.group("Z5")
    check_short_exact(zero_hom(trivial_group(), G), identity_hom(G))
    with pytest.raises(NotMono):
        check_short_exact(zoo.hom("mod:Z4:Z2"), identity_hom(zoo.group("Z2")))
    with pytest.raises(ImageNotKernel):
        check_short_exact(zoo.hom("mult:Z2:Z4:2"), identity_hom(zoo.group("Z4")))


def test_snake_connecting_iso():
    r = z2_z4_z2()
    Z2 = zoo.group("Z2")
    d = check_ladder(r, r, zero_hom(Z2, Z2), double(4), zero_hom(Z2, Z2))
    s = snake(d)
    assert s.orders() == [2, 2, 2, 2, 2, 2]
    assert s.delta.is_iso and s.all_exact and s.delta_choice_independent
    assert chase(d) == (s.orders(), 1, 2)


def test_snake_all_isos_trivial():
    r = z2_z4_z2()
    d = check_ladder(r, r, *(identity_hom(G) for G in (r.K, r.X, r.Y)))
    assert snake(d).orders() == [1] * 6


def test_snake_all_zero():
    r = z2_z4_z2()
    d = check_ladder(r, r, *(zero_hom(G, G) for G in (r.K, r.X, r.Y)))
    s = snake(d)
    assert s.orders() == [2, 4, 2, 2, 4, 2]
    assert s.delta.is_trivial and s.all_exact


def test_ladder_must_commute():
    r = z2_z4_z2()
    Z2 = zoo.group("Z2")
    with pytest.raises(NotCommuting):
        check_ladder(r, r, identity_hom(Z2), zero_hom(r.X, r.X), identity_hom(Z2))


@given(seeds)
def test_snake_matches_chase_oracle(seed):
    d = gen_ladder(random.Random(seed), 16, proper=True).data
    s = snake(d)
    orders, ker_delta, im_delta = chase(d)
    assert s.orders() == orders
    assert s.delta.kernel().order == ker_delta
    assert s.delta.image().order == im_delta


@given(seeds)
def test_snake_properties(seed):
    assert all(check_snake(gen_snake_case(random.Random(seed))).values())


@given(seeds)
def test_short_five_properties(seed):
    assert all(check_short_five(gen_ladder(random.Random(seed), 16, proper=False)).values())


def test_noether_quotients():
    Z8 = zoo.group("Z8")
    A, B = generated_subgroup(Z8, [4]), generated_subgroup(Z8, [2])
    s = noether_quotient(Z8, A, B)
    assert (s.K.order, s.X.order, s.Y.order) == (2, 4, 2)
    assert is_isomorphic(s.X, zoo.group("Z4"))
    S3 = zoo.group("S3")
    s = noether_quotient(S3, S3.trivial(), derived_subgroup(S3))
    assert (s.K.order, s.X.order, s.Y.order) == (3, 6, 2)
    s = noether_quotient(S3, S3.whole(), S3.whole())
    assert (s.K.order, s.X.order, s.Y.order) == (1, 1, 1)


def test_regular_pushout_anchors():
    p = zoo.hom("mod:Z4:Z2")
    Z2 = zoo.group("Z2")
    r = is_regular_pushout(p, identity_hom(p.source), identity_hom(Z2), p)
    assert r.is_pushout_comparison and r.kernel_criterion
    one = trivial_group()
    r = is_regular_pushout(identity_hom(one), zero_hom(one, p.source), zero_hom(one, Z2), p)
    assert not r.is_pushout_comparison and not r.kernel_criterion
    with pytest.raises(NotEpiRows):
        is_regular_pushout(zoo.hom("mult:Z2:Z4:2"), identity_hom(Z2),
                           identity_hom(zoo.group("Z4")), zoo.hom("mult:Z2:Z4:2"))


def test_pullback_square_of_kernel_pair():
    p = zoo.hom("mod:Z4:Z2")
    Z4 = p.source
    # the kernel pair of p has order 8, so the diagonal square is not a pullback
    assert not is_pullback_square(identity_hom(Z4), identity_hom(Z4), p, p)
    assert is_pullback_square(p, identity_hom(Z4), identity_hom(p.target), p)
