"""Finite groups as Cayley tables, and the limits, colimits and
factorizations of the category of finite groups.

Elements are the integers ``0 .. order-1`` and the identity is always ``0``.
Every derived group (quotient, subgroup, pullback, product) is labelled in
a canonical order so that repeated runs give identical tables.
"""

from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .config import CONFIG
from .errors import (NoIdentityAtZero, NoInverse, NotAssociative,
                     NotHomomorphism, NotNormal, NotSubgroup, NotSurjective,
                     OutOfRange, PostconditionFailed, SearchBudgetExceeded,
                     SizeCapExceeded, ValidationError)

_INT = np.int64


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=_INT)
    a.setflags(write=False)
    return a


def _validate_table(table):
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise ValidationError("table must be a non-empty square array",
                              shape=list(table.shape))
    n = table.shape[0]
    bad = np.argwhere((table < 0) | (table >= n))
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise OutOfRange(f"entry table[{x}][{y}] = {int(table[x, y])} is not an element id",
                         x=x, y=y, value=int(table[x, y]))
    ar = np.arange(n)
    for a in range(n):
        lhs = table[table[a]]           # (a*b)*c indexed by [b, c]
        rhs = table[a][table]           # a*(b*c)
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            b, c = (int(v) for v in diff[0])
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", triple=[a, b, c])
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        x = int(np.argmax((table[0] != ar) | (table[:, 0] != ar)))
        raise NoIdentityAtZero(f"element 0 does not act as identity on {x}", x=x)
    return _inverses(table)


def _inverses(table):
    n = table.shape[0]
    hits = table == 0
    has = hits.any(axis=1)
    if not has.all():
        x = int(np.argmin(has))
        raise NoInverse(f"element {x} has no inverse", x=x)
    inv = hits.argmax(axis=1)
    bad = np.nonzero(table[inv, np.arange(n)] != 0)[0]
    if len(bad):
        x = int(bad[0])
        raise NoInverse(f"element {x} has no two-sided inverse", x=x)
    return inv


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, table, label: Optional[str] = None, *, check: bool = True):
        table = np.asarray(table, dtype=_INT)
        if table.ndim == 2 and table.shape[0] > CONFIG.table_cap:
            raise SizeCapExceeded(f"group of order {table.shape[0]} exceeds table cap "
                                  f"{CONFIG.table_cap}", order=table.shape[0])
        inv = _validate_table(table) if check else _inverses(table)
        self.table = _frozen(table)
        self.inverses = _frozen(inv)
        self.order = table.shape[0]
        self.label = label

    identity = 0

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.label or '?'}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.order == other.order and \
            np.array_equal(self.table, other.table)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.table.tobytes())

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverses[a])

    def conj(self, g, x):
        """``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverses[g]])

    def commutator(self, a, b):
        """``a b a^-1 b^-1``."""
        t = self.table
        return int(t[t[t[a, b], self.inverses[a]], self.inverses[b]])

    def prod(self, elements):
        r = 0
        for x in elements:
            r = self.table[r, x]
        return int(r)

    def power(self, x, k):
        if k < 0:
            x, k = self.inverses[x], -k
        r = 0
        for _ in range(k):
            r = self.table[r, x]
        return int(r)

    @cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def element_orders(self):
        n = self.order
        base = np.arange(n)
        orders = np.zeros(n, dtype=_INT)
        p = base.copy()
        k = 1
        while (orders == 0).any():
            hit = (p == 0) & (orders == 0)
            orders[hit] = k
            p = self.table[p, base]
            k += 1
        return _frozen(orders)

    @cached_property
    def conjugation(self):
        """``conjugation[g, x] = g x g^-1``."""
        t = self.table
        return _frozen(t[t, self.inverses[:, None]])

    @cached_property
    def conjugacy_classes(self):
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for x in range(self.order):
            if not seen[x]:
                cls = np.unique(self.conjugation[:, x])
                seen[cls] = True
                classes.append(tuple(int(c) for c in cls))
        return tuple(classes)

    @cached_property
    def exponent(self):
        return int(np.lcm.reduce(self.element_orders))

    def whole(self):
        return Subgroup(self, np.arange(self.order), check=False)

    def trivial(self):
        return Subgroup(self, [0], check=False)

    @cached_property
    def generators(self):
        """A small generating set, greedily by decreasing element order."""
        order = sorted(range(self.order), key=lambda x: (-self.element_orders[x], x))
        gens = []
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for x in order:
            if mask.all():
                break
            if not mask[x]:
                gens.append(x)
                mask = generated_subgroup(self, gens).mask.copy()
        return tuple(gens)

    def summary(self):
        return {"label": self.label, "order": self.order, "abelian": self.is_abelian}


def validate_group(table, label=None):
    """Check a Cayley table and return the group it defines."""
    return FiniteGroup(table, label)


def trivial_group():
    return FiniteGroup([[0]], "1", check=False)


class Subgroup:
    """A subgroup of ``parent`` given by its sorted element ids."""

    def __init__(self, parent: FiniteGroup, elements, *, check: bool = True):
        els = np.unique(np.asarray(elements, dtype=_INT))
        self.parent = parent
        self.array = _frozen(els)
        if check:
            mask = self.mask
            if not mask[0]:
                raise NotSubgroup("subgroup must contain the identity")
            prods = parent.table[np.ix_(els, els)]
            if not mask[prods].all():
                i, j = np.argwhere(~mask[prods])[0]
                raise NotSubgroup("not closed under multiplication",
                                  pair=[int(els[i]), int(els[j])])
            if not mask[parent.inverses[els]].all():
                raise NotSubgroup("not closed under inverses")

    @cached_property
    def elements(self):
        return tuple(int(x) for x in self.array)

    @cached_property
    def mask(self):
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.array] = True
        m.setflags(write=False)
        return m

    @property
    def order(self):
        return len(self.array)

    def __len__(self):
        return len(self.array)

    def __contains__(self, x):
        return bool(self.mask[x])

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and \
            np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other):
        return bool(other.mask[self.array].all())

    def __lt__(self, other):
        return self <= other and self.order < other.order

    @cached_property
    def is_normal(self):
        conj = self.parent.conjugation[:, self.array]
        return bool(self.mask[conj].all())

    @property
    def is_trivial(self):
        return self.order == 1

    def index_of(self, x):
        """Position of parent element(s) ``x`` in this subgroup's labelling."""
        return np.searchsorted(self.array, x)

    @cached_property
    def _as_group(self):
        els = self.array
        pos = np.full(self.parent.order, -1, dtype=_INT)
        pos[els] = np.arange(len(els))
        table = pos[self.parent.table[np.ix_(els, els)]]
        g = FiniteGroup(table, None, check=False)
        return g, GroupHom(g, self.parent, els, check=False)

    def as_group(self):
        """The subgroup as a group in its own right, with its inclusion."""
        return self._as_group

    def intersect(self, other):
        return Subgroup(self.parent, np.intersect1d(self.array, other.array), check=False)

    def join(self, other):
        return generated_subgroup(self.parent, np.union1d(self.array, other.array))

    def to_json(self):
        return list(self.elements)


class GroupHom:
    """A homomorphism given by the image of every element."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping, *,
                 check: bool = True, label: Optional[str] = None):
        m = np.asarray(mapping, dtype=_INT)
        self.source = source
        self.target = target
        self.label = label
        if check:
            if m.shape != (source.order,):
                raise NotHomomorphism(f"map has {m.size} entries, source has order "
                                      f"{source.order}")
            if ((m < 0) | (m >= target.order)).any():
                x = int(np.argmax((m < 0) | (m >= target.order)))
                raise OutOfRange(f"image of {x} is not an element of the target", x=x)
            if m[0] != 0:
                raise NotHomomorphism("identity is not sent to identity", x=0)
            lhs = m[source.table]
            rhs = target.table[m[:, None], m[None, :]]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                x, y = (int(v) for v in bad[0])
                raise NotHomomorphism(f"f({x}*{y}) != f({x})*f({y})", pair=[x, y])
        self.map = _frozen(m)

    def __call__(self, x):
        return int(self.map[x])

    def __repr__(self):
        return f"GroupHom({self.source.label or '?'} -> {self.target.label or '?'})"

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.source == other.source and \
            self.target == other.target and np.array_equal(self.map, other.map)

    def __hash__(self):
        return hash(self.map.tobytes())

    def image(self):
        return Subgroup(self.target, np.unique(self.map), check=False)

    def kernel(self):
        return Subgroup(self.source, np.nonzero(self.map == 0)[0], check=False)

    @cached_property
    def is_injective(self):
        return len(np.unique(self.map)) == self.source.order

    @cached_property
    def is_surjective(self):
        return len(np.unique(self.map)) == self.target.order

    @property
    def is_iso(self):
        return self.is_injective and self.is_surjective

    @property
    def is_trivial(self):
        return not self.map.any()

    @property
    def is_proper(self):
        return self.image().is_normal

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other ∘ self``."""
        if other.source != self.target:
            raise ValidationError("homomorphisms are not composable")
        return GroupHom(self.source, other.target, other.map[self.map], check=False)

    def restrict(self, sub: Subgroup):
        g, inc = sub.as_group()
        return inc.then(self)

    def corestrict(self, sub: Subgroup):
        """View ``self`` as a map into ``sub`` (which must contain the image)."""
        if not sub.mask[self.map].all():
            raise ValidationError("image is not contained in the given subgroup")
        g, _ = sub.as_group()
        return GroupHom(self.source, g, sub.index_of(self.map), check=False)

    def inverse(self):
        if not self.is_iso:
            raise ValidationError("not an isomorphism")
        inv = np.empty_like(self.map)
        inv[self.map] = np.arange(self.source.order)
        return GroupHom(self.target, self.source, inv, check=False)

    def preimage(self, sub: Subgroup):
        return Subgroup(self.source, np.nonzero(sub.mask[self.map])[0], check=False)

    def apply(self, sub: Subgroup):
        return Subgroup(self.target, np.unique(self.map[sub.array]), check=False)

    def to_json(self):
        return [int(x) for x in self.map]


def compose(*homs):
    """Right-to-left composite ``homs[0] ∘ homs[1] ∘ ...``."""
    out = homs[-1]
    for h in reversed(homs[:-1]):
        out = out.then(h)
    return out


def identity_hom(G):
    return GroupHom(G, G, np.arange(G.order), check=False)


def zero_hom(A, B):
    return GroupHom(A, B, np.zeros(A.order, dtype=_INT), check=False)


# -- generation ---------------------------------------------------------------

def generated_subgroup(G: FiniteGroup, gens) -> Subgroup:
    gens = np.unique(np.asarray(list(gens), dtype=_INT))
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=_INT)
    if len(gens):
        while len(frontier):
            new = np.unique(G.table[np.ix_(frontier, gens)])
            new = new[~mask[new]]
            mask[new] = True
            frontier = new
    return Subgroup(G, np.nonzero(mask)[0], check=False)


def normal_closure(G: FiniteGroup, elements) -> Subgroup:
    els = np.unique(np.asarray(list(elements), dtype=_INT))
    if not len(els):
        return G.trivial()
    conj = np.unique(G.conjugation[:, els])
    return generated_subgroup(G, conj)


def commutator_subgroup(H: Subgroup, K: Subgroup) -> Subgroup:
    """Normal closure, in the common parent, of all ``[h, k]``."""
    G = H.parent
    if K.parent != G:
        raise ValidationError("subgroups of different groups")
    t, inv = G.table, G.inverses
    h = H.array[:, None]
    k = K.array[None, :]
    comms = t[t[t[h, k], inv[h]], inv[k]]
    return normal_closure(G, np.unique(comms))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    W = G.whole()
    return commutator_subgroup(W, W)


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, np.nonzero((t == t.T).all(axis=1))[0], check=False)


def centralizer(G: FiniteGroup, sub: Subgroup) -> Subgroup:
    t = G.table
    cols = sub.array
    return Subgroup(G, np.nonzero((t[:, cols] == t[cols, :].T).all(axis=1))[0], check=False)


def normal_subgroups(G: FiniteGroup):
    """Every normal subgroup, ordered by (order, elements)."""
    if G.order > CONFIG.search_cap:
        raise SearchBudgetExceeded(f"normal subgroup lattice of a group of order {G.order} "
                                   f"exceeds search cap {CONFIG.search_cap}", order=G.order)
    return _normal_subgroups(G)


_NSUB_CACHE = {}


def _normal_subgroups(G):
    key = G
    if key in _NSUB_CACHE:
        return _NSUB_CACHE[key]
    found = {G.trivial().elements: G.trivial()}
    for cls in G.conjugacy_classes:
        N = normal_closure(G, cls)
        found.setdefault(N.elements, N)
    layer = list(found.values())
    while layer:
        new = []
        items = list(found.values())
        for N in layer:
            for M in items:
                J = Subgroup(G, np.unique(G.table[np.ix_(N.array, M.array)]), check=False)
                if J.elements not in found:
                    found[J.elements] = J
                    new.append(J)
        layer = new
    out = tuple(sorted(found.values(), key=lambda s: (s.order, s.elements)))
    if len(_NSUB_CACHE) > 256:
        _NSUB_CACHE.clear()
    _NSUB_CACHE[key] = out
    return out


# -- constructions ------------------------------------------------------------

def _encode(coords, radices):
    code = np.zeros(coords.shape[:-1], dtype=_INT)
    for j, r in enumerate(radices):
        code = code * r + coords[..., j]
    return code


def tuple_group(factors: Sequence[FiniteGroup], coords, label=None):
    """The subgroup of ``∏ factors`` made of the given coordinate tuples.

    Tuples are relabelled in lexicographic order, so the identity tuple gets
    id 0. Returns the group and the sorted coordinate array.
    """
    coords = np.asarray(coords, dtype=_INT).reshape(-1, len(factors))
    radices = [f.order for f in factors]
    codes = _encode(coords, radices)
    order = np.argsort(codes, kind="stable")
    coords, codes = coords[order], codes[order]
    if len(codes) == 0 or codes[0] != 0:
        raise NotSubgroup("tuple set does not contain the identity")
    m = len(codes)
    if m > CONFIG.table_cap:
        raise SizeCapExceeded(f"group of order {m} exceeds table cap {CONFIG.table_cap}",
                              order=m)
    prod = np.stack([f.table[np.ix_(coords[:, j], coords[:, j])]
                     for j, f in enumerate(factors)], axis=-1)
    pcodes = _encode(prod, radices)
    idx = np.searchsorted(codes, pcodes)
    idx = np.minimum(idx, m - 1)
    if not (codes[idx] == pcodes).all():
        raise NotSubgroup("tuple set is not closed under multiplication")
    return FiniteGroup(idx, label, check=False), _frozen(coords)


def locate(coords_sorted, radices, tuples):
    """Ids of ``tuples`` inside a group built by :func:`tuple_group`."""
    codes = _encode(coords_sorted, radices)
    want = _encode(np.asarray(tuples, dtype=_INT), radices)
    idx = np.minimum(np.searchsorted(codes, want), len(codes) - 1)
    if not (codes[idx] == want).all():
        raise ValidationError("tuple not present in the group")
    return idx


class Product(NamedTuple):
    group: FiniteGroup
    p1: GroupHom
    p2: GroupHom
    i1: GroupHom
    i2: GroupHom


def direct_product(A: FiniteGroup, B: FiniteGroup, label=None) -> Product:
    """``A × B`` with pair ``(a, b)`` encoded as ``a·|B| + b``."""
    n, m = A.order, B.order
    if n * m > CONFIG.table_cap:
        raise SizeCapExceeded(f"product of order {n * m} exceeds table cap", order=n * m)
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = A.table[a[:, None], a[None, :]] * m + B.table[b[:, None], b[None, :]]
    if label is None and A.label and B.label:
        label = f"{A.label}x{B.label}"
    P = FiniteGroup(table, label, check=False)
    return Product(P, GroupHom(P, A, a, check=False), GroupHom(P, B, b, check=False),
                   GroupHom(A, P, np.arange(n) * m, check=False),
                   GroupHom(B, P, np.arange(m), check=False))


def product_of(*groups):
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g).group
    return out


def product_hom(f: GroupHom, g: GroupHom, P=None, Q=None):
    """``f × g`` between the encoded products."""
    P = P or direct_product(f.source, g.source).group
    Q = Q or direct_product(f.target, g.target).group
    m, m2 = g.source.order, g.target.order
    ids = np.arange(P.order)
    return GroupHom(P, Q, f.map[ids // m] * m2 + g.map[ids % m], check=False)


class Pullback(NamedTuple):
    group: FiniteGroup
    p1: GroupHom
    p2: GroupHom


def pullback(f: GroupHom, g: GroupHom) -> Pullback:
    """``{(a, b) : f(a) = g(b)}`` with its two projections."""
    if f.target != g.target:
        raise ValidationError("pullback needs a common codomain")
    coords = np.argwhere(f.map[:, None] == g.map[None, :])
    P, coords = tuple_group([f.source, g.source], coords)
    return Pullback(P, GroupHom(P, f.source, coords[:, 0], check=False),
                    GroupHom(P, g.source, coords[:, 1], check=False))


def kernel_pair(f: GroupHom) -> Pullback:
    return pullback(f, f)


def pullback_pair(pb: Pullback, x: GroupHom, y: GroupHom) -> GroupHom:
    """The map ``(x, y)`` into the pullback, for a cone ``x``, ``y``."""
    A, B = pb.p1.target, pb.p2.target
    coords = np.stack([pb.p1.map, pb.p2.map], axis=1)
    idx = locate(coords, [A.order, B.order], np.stack([x.map, y.map], axis=1))
    return GroupHom(x.source, pb.group, idx, check=False)


def kernel(f: GroupHom):
    """The kernel of ``f`` and its inclusion."""
    K = f.kernel()
    _, inc = K.as_group()
    return K, inc


def quotient(G: FiniteGroup, N: Subgroup, label=None):
    """``G/N``; each coset is labelled by its least element, cosets in order."""
    if N.parent != G:
        raise ValidationError("subgroup of a different group")
    if not N.is_normal:
        raise NotNormal("cannot form a quotient by a non-normal subgroup",
                        elements=list(N.elements))
    mins = G.table[:, N.array].min(axis=1)
    reps = np.unique(mins)
    proj = np.searchsorted(reps, mins)
    table = proj[G.table[np.ix_(reps, reps)]]
    Q = FiniteGroup(table, label, check=False)
    return Q, GroupHom(G, Q, proj, check=False)


def cokernel(f: GroupHom):
    """Quotient of the target by the normal closure of the image."""
    N = normal_closure(f.target, np.unique(f.map))
    return quotient(f.target, N)


def coequalizer(f: GroupHom, g: GroupHom):
    if f.source != g.source or f.target != g.target:
        raise ValidationError("coequalizer needs a parallel pair")
    B = f.target
    diffs = B.table[f.map, B.inverses[g.map]]
    return quotient(B, normal_closure(B, np.unique(diffs)))


class ImageFactorization(NamedTuple):
    surjection: GroupHom
    image: Subgroup
    injection: GroupHom
    is_proper: bool


def image_factorization(f: GroupHom) -> ImageFactorization:
    im = f.image()
    _, inc = im.as_group()
    surj = GroupHom(f.source, inc.source, im.index_of(f.map), check=False)
    return ImageFactorization(surj, im, inc, im.is_normal)


def direct_image(m: Subgroup, p: GroupHom) -> Subgroup:
    if m.parent != p.source:
        raise ValidationError("subgroup does not live in the domain of p")
    if not p.is_surjective:
        raise NotSurjective("direct image is taken along a surjection")
    out = p.apply(m)
    if m.is_normal and not out.is_normal:
        raise PostconditionFailed("direct image of a normal subgroup is not normal")
    return out


def abelianization(G: FiniteGroup):
    Q, eta = quotient(G, derived_subgroup(G))
    if not Q.is_abelian:
        raise PostconditionFailed("abelianization is not abelian")
    return Q, eta


def factor_through(q: GroupHom, h: GroupHom) -> Optional[GroupHom]:
    """The unique ``u`` with ``u ∘ q = h`` for surjective ``q``, or None."""
    if q.source != h.source:
        raise ValidationError("cone has the wrong domain")
    if not q.is_surjective:
        raise NotSurjective("factorization is taken through a surjection")
    first = np.full(q.target.order, -1, dtype=_INT)
    first[q.map[::-1]] = np.arange(q.source.order)[::-1]
    u = h.map[first]
    if not np.array_equal(u[q.map], h.map):
        return None
    return GroupHom(q.target, h.target, u, check=False)


def verify_couniversal(q: GroupHom, cones) -> list:
    """For each supplied cone, whether it factors uniquely through ``q``.

    Uniqueness is automatic since ``q`` is surjective; a cone that does not
    satisfy the defining condition simply fails to factor.
    """
    return [factor_through(q, h) is not None for h in cones]


class Congruence:
    """The congruence ``x ~ y  iff  x y^-1 ∈ N`` of a normal subgroup."""

    def __init__(self, base: FiniteGroup, normal: Subgroup):
        if normal.parent != base:
            raise ValidationError("normal subgroup of a different group")
        if not normal.is_normal:
            raise NotNormal("a congruence needs a normal subgroup")
        self.base = base
        self.normal = normal

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.normal == other.normal

    def __hash__(self):
        return hash(self.normal)

    def related(self, x, y):
        return bool(self.normal.mask[self.base.table[x, self.base.inverses[y]]])

    @cached_property
    def relation(self) -> Pullback:
        """The relation as a subgroup of ``G × G`` with projections ``d0, d1``."""
        _, proj = quotient(self.base, self.normal)
        return kernel_pair(proj)

    def normalization(self) -> Subgroup:
        """``d1`` applied to the kernel of ``d0``."""
        R = self.relation
        k = R.p1.kernel()
        return R.p2.apply(k)

    @classmethod
    def discrete(cls, G):
        return cls(G, G.trivial())

    @classmethod
    def indiscrete(cls, G):
        return cls(G, G.whole())


def is_isomorphic(G, H):
    from .homsearch import find_isomorphism
    return find_isomorphism(G, H) is not None
