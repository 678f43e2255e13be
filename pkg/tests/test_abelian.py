import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from semiab import zoo
from semiab.abelian import (abelian_invariants, decompose_abelian, ext_invariants,
                            factorize, hom_order, invariant_factors, primary_orders,
                            prime_power, smith_mod)
from semiab.errors import ValidationError
from semiab.groups import direct_product


def _valuation(d, p, k):
    if d == 0:
        return k
    v = 0
    while d % p == 0 and v < k:
        d //= p
        v += 1
    return v


@given(st.integers(1, 5), st.integers(1, 5), st.sampled_from([(2, 1), (2, 3), (3, 2), (5, 1)]),
       st.data())
def test_smith_mod_matches_integer_snf(rows, cols, pk, data):
    p, k = pk
    q = p ** k
    M = np.array(data.draw(st.lists(st.lists(st.integers(-20, 20), min_size=cols,
                                             max_size=cols), min_size=rows, max_size=rows)))
    S = smith_mod(M % q, p, k, track_rows=True)
    D = (S.U @ (M % q) @ S.V) % q
    for t in range(rows):
        for s in range(cols):
            want = p ** S.vals[t] % q if (t == s and t < S.rank) else 0
            assert D[t, s] == want
    snf = smith_normal_form(Matrix(M.tolist()), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(rows, cols))]
    expected = sorted(v for v in (_valuation(d, p, k) for d in diag) if v < k)
    assert sorted(S.vals) == expected


@given(st.lists(st.integers(2, 8), min_size=1, max_size=3))
def test_invariants_of_products_of_cyclics(ns):
    G = zoo.group("Z%d" % ns[0])
    for n in ns[1:]:
        G = direct_product(G, zoo.group(f"Z{n}")).group
    snf = smith_normal_form(Matrix.diag(*ns), domain=ZZ)
    want = sorted(abs(int(snf[i, i])) for i in range(len(ns)) if abs(int(snf[i, i])) > 1)
    assert abelian_invariants(G) == want


@pytest.mark.parametrize("name,inv", [("1", []), ("Z6", [6]), ("Z2xZ2", [2, 2]),
                                      ("Z2xZ6", [2, 6]), ("Z4xZ4", [4, 4]), ("Z2^3", [2, 2, 2])])
def test_named_invariants(name, inv):
    assert abelian_invariants(zoo.group(name)) == inv


def test_decomposition_rejects_nonabelian():
    with pytest.raises(ValidationError):
        decompose_abelian(zoo.group("S3"))


@given(st.sampled_from(["Z4", "Z2xZ4", "Z3xZ3", "Z2xZ6", "Z12", "Z2^3"]))
def test_decomposition_coordinates_are_a_bijection(name):
    d = decompose_abelian(zoo.group(name))
    assert len({tuple(r) for r in d.coords}) == d.group.order
    for a in range(d.group.order):
        assert d.element(d.coords[a]) == a


@given(st.lists(st.integers(1, 60), max_size=4))
def test_invariant_factor_roundtrip(ds):
    inv = invariant_factors(primary_orders(ds))
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    prod = 1
    for d in ds:
        prod *= d
    got = 1
    for d in inv:
        got *= d
    assert got == prod


def test_factorize_and_prime_power():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert prime_power(27) == (3, 3)
    assert prime_power(12) is None


def test_hom_and_ext_formulas():
    assert hom_order([2, 4], [4]) == 8
    assert ext_invariants([2], [2]) == [2]
    assert ext_invariants([3], [2]) == []
