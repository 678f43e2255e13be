"""Second cohomology with trivial coefficients by linear algebra on
normalized 2-cochains.

Cochains take values in a finite abelian group decomposed into cyclic
prime-power summands; each summand is solved separately over ``Z/p^k``.
The cocycle equations are imposed only for the last argument in a
generating set of Y: the set of ``w`` for which the associativity of the
twisted product holds for all ``(x, y)`` is closed under products, so this
already cuts out every cocycle.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import List

import numpy as np

from .abelian import AbelianDecomposition, decompose_abelian, invariant_factors, \
    prime_power, quotient_of_free, smith_mod
from .config import CONFIG
from .errors import NotCocycle, NotNormalized, PostconditionFailed, SizeCapExceeded
from .groups import FiniteGroup

_INT = np.int64


def _var(n, y, z):
    return (y - 1) * (n - 1) + (z - 1)


@lru_cache(maxsize=64)
def _cocycle_rows(Y: FiniteGroup, full=False) -> np.ndarray:
    """Integer matrix of ``δf(x, y, w) = f(y,w) - f(xy,w) + f(x,yw) - f(x,y)``
    on normalized cochains, for w in a generating set (every w if ``full``)."""
    n = Y.order
    N = (n - 1) ** 2
    ws = list(range(n)) if full else list(Y.generators)
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    x, y = x.ravel(), y.ravel()
    blocks = []
    for w in ws:
        M = np.zeros((n * n, N + 1), dtype=_INT)     # last column collects dropped terms
        rows = np.arange(n * n)
        for sign, a, b in ((1, y, np.full_like(y, w)), (-1, Y.table[x, y], np.full_like(y, w)),
                           (1, x, Y.table[y, w]), (-1, x, y)):
            col = np.where((a == 0) | (b == 0), N, (a - 1) * (n - 1) + (b - 1))
            np.add.at(M, (rows, col), sign)
        blocks.append(M[:, :N])
    M = np.concatenate(blocks) if blocks else np.zeros((0, N), dtype=_INT)
    return M[np.any(M != 0, axis=1)]


@lru_cache(maxsize=64)
def _coboundary_matrix(Y: FiniteGroup) -> np.ndarray:
    """Columns: ``δg(x, y) = g(y) - g(xy) + g(x)`` for the basis cochains
    ``g = e_v``, ``v ≠ 1``."""
    n = Y.order
    N = (n - 1) ** 2
    M = np.zeros((N + 1, n), dtype=_INT)
    x, y = np.meshgrid(np.arange(1, n), np.arange(1, n), indexing="ij")
    x, y = x.ravel(), y.ravel()
    rows = (x - 1) * (n - 1) + (y - 1)
    for sign, v in ((1, y), (-1, Y.table[x, y]), (1, x)):
        np.add.at(M, (rows, v), sign)
    return M[:N, 1:]


class CyclicH2:
    """``H²(Y, Z/p^k)``: summand orders, representative cocycle vectors and
    a classifier for arbitrary cocycles."""

    def __init__(self, Y: FiniteGroup, p: int, k: int):
        self.Y, self.p, self.k = Y, p, k
        q = self.q = p ** k
        D2 = _cocycle_rows(Y) % q
        self.D2 = D2
        N = D2.shape[1]
        if N == 0:
            self.orders, self.reps = [], np.zeros((0, 0), dtype=_INT)
            self._gens = []
            return
        S = smith_mod(D2, p, k)
        self.S = S
        # kernel generators: column t of V scaled so that D kills it
        gens = []
        for t in range(N):
            e = S.vals[t] if t < S.rank else k
            if e > 0:
                gens.append((t, p ** (k - e), p ** e))
        self._gens = gens
        B = _coboundary_matrix(Y) % q
        C = self._coordinates(B)
        r = len(gens)
        M = np.concatenate([np.diag([o for _, _, o in gens]).astype(_INT).reshape(r, r), C],
                           axis=1) % q
        self.orders, Uinv, self.U = quotient_of_free(M, p, k)
        G = np.stack([S.V[:, t] * s for t, s, _ in gens], axis=1) % q if gens else \
            np.zeros((N, 0), dtype=_INT)
        self.reps = (G @ Uinv % q).T if len(self.orders) else np.zeros((0, N), dtype=_INT)
        for v in self.reps:
            if (D2 @ v % q).any():
                raise PostconditionFailed("representative is not a cocycle")

    def _coordinates(self, Z):
        """Coordinates of cocycle columns ``Z`` on the kernel generators."""
        S, q = self.S, self.q
        Yc = S.Vinv @ Z % q
        out = []
        kept = {t for t, _, _ in self._gens}
        for t in range(Yc.shape[0]):
            if t not in kept and Yc[t].any():
                raise NotCocycle("vector is not a cocycle")
        for t, s, _ in self._gens:
            if (Yc[t] % s).any():
                raise NotCocycle("vector is not a cocycle")
            out.append(Yc[t] // s)
        return np.array(out, dtype=_INT).reshape(len(self._gens), Z.shape[1])

    def is_cocycle(self, v) -> bool:
        return not (self.D2 @ (np.asarray(v) % self.q) % self.q).any()

    def classify(self, v) -> List[int]:
        v = np.asarray(v, dtype=_INT) % self.q
        if not self.is_cocycle(v):
            raise NotCocycle("vector is not a cocycle")
        if not self.orders:
            return []
        c = self._coordinates(v[:, None])[:, 0]
        w = self.U @ c % self.q
        return [int(x % o) for x, o in zip(w, self.orders)]


@dataclass
class CocycleClassGroup:
    """``H²(Y, A)`` for trivial action: a direct sum of cyclic summands, each
    with a representative normalized cocycle table ``Y × Y → A``."""
    Y: FiniteGroup
    A: FiniteGroup
    decomposition: AbelianDecomposition
    parts: list                                    # CyclicH2 per summand of A
    orders: List[int] = field(default_factory=list)  # orders of the H² summands
    representatives: List[np.ndarray] = field(default_factory=list)

    @property
    def invariant_factors(self):
        return invariant_factors(self.orders)

    @property
    def order(self):
        out = 1
        for o in self.orders:
            out *= o
        return out

    def _split(self, table):
        """Per A-summand cochain vectors of an A-valued table."""
        n = self.Y.order
        table = np.asarray(table, dtype=_INT)
        if table.shape != (n, n):
            raise NotCocycle("cocycle table has the wrong shape")
        if (table[0] != 0).any() or (table[:, 0] != 0).any():
            raise NotNormalized("cocycle is not normalized")
        co = self.decomposition.coords[table[1:, 1:]]
        return [co[:, :, i].ravel() for i in range(len(self.parts))]

    def is_cocycle(self, table) -> bool:
        try:
            vs = self._split(table)
        except NotNormalized:
            return False
        return all(P.is_cocycle(v) for P, v in zip(self.parts, vs))

    def classify(self, table) -> tuple:
        out = []
        for P, v in zip(self.parts, self._split(table)):
            out.extend(P.classify(v))
        return tuple(out)

    def table_of(self, vectors) -> np.ndarray:
        """A-valued table from per-summand cochain vectors."""
        n = self.Y.order
        d = self.decomposition
        coords = np.zeros(((n - 1) ** 2, len(d.orders)), dtype=_INT)
        for i, v in enumerate(vectors):
            coords[:, i] = np.asarray(v) % d.orders[i]
        lookup = _coords_lookup(d)
        out = np.zeros((n, n), dtype=_INT)
        out[1:, 1:] = lookup[_mixed(coords, d.orders)].reshape(n - 1, n - 1)
        return out

    def element(self, coords) -> np.ndarray:
        """Cocycle table representing the class with the given coordinates."""
        n = self.Y.order
        vecs = [np.zeros((n - 1) ** 2, dtype=_INT) for _ in self.parts]
        j = 0
        for i, P in enumerate(self.parts):
            for r in P.reps:
                vecs[i] = vecs[i] + int(coords[j]) * r
                j += 1
        return self.table_of(vecs)

    def zero(self):
        return tuple(0 for _ in self.orders)

    def add(self, c1, c2):
        return tuple((a + b) % o for a, b, o in zip(c1, c2, self.orders))

    def neg(self, c):
        return tuple(-a % o for a, o in zip(c, self.orders))

    def elements(self):
        grids = np.meshgrid(*[np.arange(o) for o in self.orders], indexing="ij")
        return [tuple(int(g.flat[i]) for g in grids) for i in range(self.order)] \
            if self.orders else [()]

    def to_json(self):
        return {"invariantFactors": self.invariant_factors, "order": self.order,
                "representatives": [r.tolist() for r in self.representatives]}


def _mixed(coords, orders):
    code = np.zeros(len(coords), dtype=_INT)
    for i, o in enumerate(orders):
        code = code * o + coords[:, i]
    return code


def _coords_lookup(d: AbelianDecomposition):
    out = np.zeros(max(1, int(np.prod(d.orders, dtype=_INT))), dtype=_INT)
    out[_mixed(d.coords, d.orders)] = np.arange(d.group.order)
    return out


def add_cocycles(A: FiniteGroup, c1, c2):
    return A.table[np.asarray(c1), np.asarray(c2)]


def cocycle_h2(Y: FiniteGroup, A: FiniteGroup) -> CocycleClassGroup:
    """``H²(Y, A)`` with trivial action."""
    if Y.order > CONFIG.cochain_cap:
        raise SizeCapExceeded(f"2-cochains of a group of order {Y.order} exceed the cap "
                              f"{CONFIG.cochain_cap}", order=Y.order)
    d = decompose_abelian(A)
    parts = []
    for o in d.orders:
        p, k = prime_power(o)
        parts.append(_cyclic_h2(Y, p, k))
    out = CocycleClassGroup(Y, A, d, parts)
    for i, P in enumerate(parts):
        out.orders.extend(P.orders)
    n = Y.order
    for i, P in enumerate(parts):
        for r in P.reps:
            vecs = [np.zeros((n - 1) ** 2, dtype=_INT) for _ in parts]
            vecs[i] = r
            out.representatives.append(out.table_of(vecs))
    return out


@lru_cache(maxsize=128)
def _cyclic_h2(Y, p, k):
    return CyclicH2(Y, p, k)
