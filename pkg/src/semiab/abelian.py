"""Finite abelian groups: Smith normal form over ``Z/p^k``, primary
decompositions with explicit bases, and the classical Hom/Ext formulas."""

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import List, Optional

import numpy as np

from .errors import PostconditionFailed, ValidationError
from .groups import FiniteGroup, Subgroup, quotient

_INT = np.int64


def factorize(n: int) -> dict:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_power(n: int):
    """``(p, k)`` with ``n = p^k``, or None."""
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, k), = f.items()
    return p, k


@dataclass
class SmithForm:
    """``U M V = D`` over ``Z/p^k``; ``D`` has ``p^vals[t]`` at ``(t, t)``
    for ``t < rank`` and zeros elsewhere."""
    p: int
    k: int
    vals: List[int]
    V: np.ndarray
    Vinv: np.ndarray
    U: Optional[np.ndarray] = None
    Uinv: Optional[np.ndarray] = None

    @property
    def rank(self):
        return len(self.vals)


def smith_mod(M, p: int, k: int, track_rows=False) -> SmithForm:
    """Smith normal form over the local ring ``Z/p^k``, pivoting on an entry
    of least valuation. Column operations are always tracked; row
    operations only with ``track_rows`` (they are as large as the row count
    squared)."""
    q = p ** k
    M = np.array(M, dtype=_INT) % q
    m, n = M.shape
    val = np.full(q, k, dtype=_INT)
    for e in range(k):
        val[np.arange(p ** e, q, p ** e)] = e
    V, Vinv = np.eye(n, dtype=_INT), np.eye(n, dtype=_INT)
    U = Uinv = None
    if track_rows:
        U, Uinv = np.eye(m, dtype=_INT), np.eye(m, dtype=_INT)
    vals = []
    for t in range(min(m, n)):
        sub = val[M[t:, t:]]
        flat = int(np.argmin(sub))
        e = int(sub.flat[flat])
        if e == k:
            break
        i, j = divmod(flat, n - t)
        i, j = i + t, j + t
        if i != t:
            M[[t, i]] = M[[i, t]]
            if track_rows:
                U[[t, i]] = U[[i, t]]
                Uinv[:, [t, i]] = Uinv[:, [i, t]]
        if j != t:
            M[:, [t, j]] = M[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
            Vinv[[t, j]] = Vinv[[j, t]]
        pe = p ** e
        u = int(M[t, t]) // pe
        uinv = pow(u, -1, q)
        M[t] = M[t] * uinv % q
        if track_rows:
            U[t] = U[t] * uinv % q
            Uinv[:, t] = Uinv[:, t] * u % q
        c = M[t + 1:, t] // pe
        nz = np.nonzero(c)[0]
        if len(nz):
            rows = nz + t + 1
            M[rows] = (M[rows] - c[nz, None] * M[t]) % q
            if track_rows:
                U[rows] = (U[rows] - c[nz, None] * U[t]) % q
                Uinv[:, t] = (Uinv[:, t] + Uinv[:, rows] @ c[nz]) % q
        c = M[t, t + 1:] // pe
        nz = np.nonzero(c)[0]
        if len(nz):
            cols = nz + t + 1
            M[t, cols] = 0
            V[:, cols] = (V[:, cols] - V[:, t:t + 1] * c[nz]) % q
            Vinv[t] = (Vinv[t] + c[nz] @ Vinv[cols]) % q
        vals.append(e)
    return SmithForm(p, k, vals, V, Vinv, U, Uinv)


def quotient_of_free(M, p: int, k: int):
    """``(Z/p^k)^r / colspan(M)`` as ``(orders, Uinv, U)``: summand t is
    cyclic of order ``orders[t]``, generated by ``Uinv[:, t]``; ``U`` maps a
    vector to its summand coordinates. Trivial summands are dropped."""
    r = M.shape[0]
    if M.shape[1] == 0:
        M = np.zeros((r, 1), dtype=_INT)
    S = smith_mod(M, p, k, track_rows=True)
    exps = list(S.vals) + [k] * (r - S.rank)
    keep = [t for t in range(r) if exps[t] > 0]
    return [p ** exps[t] for t in keep], S.Uinv[:, keep], S.U[keep]


# -- decompositions ---------------------------------------------------------------

def _p_basis(G: FiniteGroup) -> List[int]:
    """Basis of an abelian p-group: element of largest order, then lifts of
    a basis of the quotient by it."""
    if G.order == 1:
        return []
    orders = G.element_orders
    x = int(np.argmax(orders))
    cyc = [0]
    while True:
        nxt = int(G.table[cyc[-1], x])
        if nxt == 0:
            break
        cyc.append(nxt)
    C = Subgroup(G, cyc, check=False)
    Q, proj = quotient(G, C)
    out = [x]
    pos = {g: i for i, g in enumerate(cyc)}
    for yq in _p_basis(Q):
        e = int(Q.element_orders[yq])
        y = int(np.nonzero(proj.map == yq)[0][0])
        m = pos[int(G.power(y, e))]
        if m % e:
            raise PostconditionFailed("lifting in a p-group failed")
        y = int(G.table[y, G.power(G.inverses[x], m // e)])
        out.append(y)
    return out


@dataclass
class AbelianDecomposition:
    """``A ≅ ⊕ Z_{orders[i]}`` with ``basis[i]`` generating summand i;
    orders are prime powers sorted by prime, then exponent."""
    group: FiniteGroup
    orders: List[int]
    basis: List[int]

    @cached_property
    def coords(self) -> np.ndarray:
        """Row a holds the coordinates of element a."""
        A = self.group
        r = len(self.orders)
        out = np.full((A.order, r), -1, dtype=_INT)
        grids = np.stack([g.ravel() for g in np.meshgrid(
            *[np.arange(o) for o in self.orders], indexing="ij")], axis=1) if r else \
            np.zeros((1, 0), dtype=_INT)
        for c in grids:
            out[self.element(c)] = c
        if (out < 0).any():
            raise PostconditionFailed("basis does not span the group")
        return out

    def element(self, c) -> int:
        A = self.group
        x = 0
        for b, ci in zip(self.basis, c):
            x = int(A.table[x, A.power(b, int(ci))])
        return x

    @property
    def invariant_factors(self):
        return invariant_factors(self.orders)


def decompose_abelian(A: FiniteGroup) -> AbelianDecomposition:
    if not A.is_abelian:
        raise ValidationError("group is not abelian")
    orders, basis = [], []
    for p in sorted(factorize(A.order)):
        ords = A.element_orders
        pe = [a for a in range(A.order) if prime_power(int(ords[a])) is not None and
              prime_power(int(ords[a]))[0] == p or a == 0]
        S = Subgroup(A, pe, check=False)
        sg, inc = S.as_group()
        bs = sorted(_p_basis(sg), key=lambda b: (int(sg.element_orders[b]), b))
        for b in bs:
            orders.append(int(sg.element_orders[b]))
            basis.append(int(inc.map[b]))
    d = AbelianDecomposition(A, orders, basis)
    d.coords
    return d


def invariant_factors(primary_orders) -> List[int]:
    """Combine prime-power orders into invariant factors ``d1 | d2 | ...``."""
    by_p = {}
    for o in primary_orders:
        if o == 1:
            continue
        p, _ = prime_power(o)
        by_p.setdefault(p, []).append(o)
    if not by_p:
        return []
    length = max(len(v) for v in by_p.values())
    out = []
    for i in range(length):
        d = 1
        for v in by_p.values():
            v = sorted(v, reverse=True)
            if i < len(v):
                d *= v[i]
        out.append(d)
    return sorted(out)


def primary_orders(invariants) -> List[int]:
    out = []
    for d in invariants:
        for p, e in factorize(d).items():
            out.append(p ** e)
    return sorted(out)


def abelian_invariants(A: FiniteGroup) -> List[int]:
    return decompose_abelian(A).invariant_factors


def hom_order(B, A) -> int:
    """``|Hom(⊕Z_b, ⊕Z_a)| = ∏ gcd(b, a)``."""
    out = 1
    for b in B:
        for a in A:
            out *= gcd(b, a)
    return out


def ext_invariants(B, A) -> List[int]:
    """``Ext(⊕Z_b, ⊕Z_a) ≅ ⊕ Z_gcd(b, a)``, as invariant factors."""
    return invariant_factors(primary_orders([gcd(b, a) for b in B for a in A]))


def hom_invariants(B, A) -> List[int]:
    return ext_invariants(B, A)


def order_of(invariants) -> int:
    out = 1
    for d in invariants:
        out *= d
    return out
