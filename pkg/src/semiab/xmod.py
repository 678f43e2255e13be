"""Crossed modules, internal categories (groupoids) in groups, the nerve,
homology, and the predicates of the regular-epimorphism model structure.

Semidirect product convention: ``A_1 = G ⋉ T`` with ``(g, t)`` encoded as
``g·|T| + t``, product ``(g,t)(g',t') = (gg', t·ᵍt')``, source
``d0(g,t) = g``, target ``d1(g,t) = ∂(t)·g`` and identity ``i(g) = (g,1)``.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (EquationFails, NotAnAction, NotEquivariant, NotSubXMod,
                     PeifferFails, PostconditionFailed, ValidationError)
from .groups import (FiniteGroup, GroupHom, Subgroup, commutator_subgroup,
                     generated_subgroup, identity_hom, locate, pullback, quotient, tuple_group,
                     zero_hom)
from .simplicial import SimplicialGroup, SimplicialMorphism, validate_simplicial

_INT = np.int64


# -- internal categories ------------------------------------------------------

class InternalCategory:
    """Objects ``A0``, arrows ``A1``, source ``d0``, target ``d1``, identity ``i``.

    Composition of a composable pair ``(a, b)`` (``d1 a = d0 b = y``) is
    ``a · i(y)^-1 · b``, the only choice compatible with the group structure.
    """

    def __init__(self, A0, A1, d0, d1, i):
        self.A0, self.A1 = A0, A1
        self.d0, self.d1, self.i = d0, d1, i

    def compose(self, a, b):
        T, inv = self.A1.table, self.A1.inverses
        a, b = np.asarray(a), np.asarray(b)
        y = self.d1.map[a]
        return T[T[a, inv[self.i.map[y]]], b]

    def inverse_arrow(self, a):
        """The arrow ``b`` with ``compose(a, b) = i(d0 a)``."""
        T, inv = self.A1.table, self.A1.inverses
        a = np.asarray(a)
        return T[T[self.i.map[self.d1.map[a]], inv[a]], self.i.map[self.d0.map[a]]]

    def composable_pairs(self):
        """Pullback of ``d1`` along ``d0`` with its projections."""
        return pullback(self.d1, self.d0)

    def homology(self):
        """``H_0 = Coeq[d0, d1]`` as a quotient of ``A0``, and
        ``H_1 = K[d0] ∩ K[d1]`` as a subgroup of ``A1``."""
        N = Subgroup(self.A0, np.unique(self.d1.map[self.d0.kernel().array]), check=False)
        H0, q = quotient(self.A0, N)
        H1 = self.d0.kernel().intersect(self.d1.kernel())
        return H0, q, H1

    def summary(self):
        return {"objects": self.A0.order, "arrows": self.A1.order}


def validate_internal_category(A0, A1, d0, d1, i) -> InternalCategory:
    for name, h, s, t in (("d0", d0, A1, A0), ("d1", d1, A1, A0), ("i", i, A0, A1)):
        if h.source != s or h.target != t:
            raise ValidationError(f"{name} has the wrong source or target")
    ident = np.arange(A0.order)
    if not np.array_equal(d0.map[i.map], ident):
        raise EquationFails("d0 ∘ i != 1", which="d0-i")
    if not np.array_equal(d1.map[i.map], ident):
        raise EquationFails("d1 ∘ i != 1", which="d1-i")
    C = InternalCategory(A0, A1, d0, d1, i)
    if not commutator_subgroup(d0.kernel(), d1.kernel()).is_trivial:
        raise EquationFails("composition is not a homomorphism: [K[d0], K[d1]] != 1",
                            which="composition")
    pb = C.composable_pairs()
    m = C.compose(pb.p1.map, pb.p2.map)
    GroupHom(pb.group, A1, m)           # composition is multiplicative
    if not (np.array_equal(d0.map[m], d0.map[pb.p1.map]) and
            np.array_equal(d1.map[m], d1.map[pb.p2.map])):
        raise EquationFails("composite has the wrong ends", which="composition")
    a = np.arange(A1.order)
    b = C.inverse_arrow(a)
    if not np.array_equal(C.compose(a, b), i.map[d0.map[a]]):
        raise PostconditionFailed("internal category is not a groupoid")
    return C


def discrete_category(G: FiniteGroup) -> InternalCategory:
    idh = identity_hom(G)
    return InternalCategory(G, G, idh, idh, idh)


# -- crossed modules ------------------------------------------------------------

class CrossedModule:
    """``∂: T → G`` with ``action[g, t] = ᵍt``."""

    def __init__(self, T, G, boundary, action):
        self.T, self.G = T, G
        self.boundary = boundary
        self.action = np.asarray(action, dtype=_INT)
        self.action.setflags(write=False)

    def summary(self):
        return {"T": self.T.order, "G": self.G.order}

    def to_json(self):
        return {"boundary": self.boundary.to_json(), "action": self.action.tolist()}


def xmod_report(T, G, boundary, action):
    """Flags ``{isAction, isPrecrossed, isCrossed, isAbelian}`` and the first
    failing witness, without raising."""
    try:
        validate_xmod(T, G, boundary, action)
        return {"isAction": True, "isPrecrossed": True, "isCrossed": True,
                "isAbelian": _is_abelian(T, G, action)}
    except PeifferFails as exc:
        return {"isAction": True, "isPrecrossed": True, "isCrossed": False,
                "isAbelian": False, "witness": exc.witness}
    except NotEquivariant as exc:
        return {"isAction": True, "isPrecrossed": False, "isCrossed": False,
                "isAbelian": False, "witness": exc.witness}
    except NotAnAction as exc:
        return {"isAction": False, "isPrecrossed": False, "isCrossed": False,
                "isAbelian": False, "witness": exc.witness}


def _is_abelian(T, G, action):
    return T.is_abelian and G.is_abelian and bool(
        (np.asarray(action) == np.arange(T.order)[None, :]).all())


def validate_xmod(T, G, boundary, action) -> CrossedModule:
    act = np.asarray(action, dtype=_INT)
    if act.shape != (G.order, T.order):
        raise NotAnAction("action table must be |G| × |T|")
    if boundary.source != T or boundary.target != G:
        raise ValidationError("boundary must map T to G")
    if ((act < 0) | (act >= T.order)).any():
        raise NotAnAction("action entries out of range")
    for g in range(G.order):
        row = act[g]
        if len(np.unique(row)) != T.order:
            raise NotAnAction(f"action of {g} is not bijective", g=g)
        bad = np.argwhere(row[T.table] != T.table[row[:, None], row[None, :]])
        if len(bad):
            raise NotAnAction(f"action of {g} is not a homomorphism", g=g,
                              pair=bad[0].tolist())
    if not np.array_equal(act[0], np.arange(T.order)):
        raise NotAnAction("identity does not act trivially")
    comp = act[:, act]                              # comp[g, h, t] = ᵍ(ʰt)
    prod = act[G.table]                             # prod[g, h, t] = ^{gh}t
    bad = np.argwhere(comp != prod)
    if len(bad):
        g, h, t = bad[0].tolist()
        raise NotAnAction("action is not compatible with multiplication", g=g, h=h, t=t)
    d = boundary.map
    lhs = d[act]                                    # ∂(ᵍt)
    rhs = G.conjugation[:, d]                       # g ∂t g^-1
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g, t = bad[0].tolist()
        raise NotEquivariant("∂(ᵍt) != g ∂(t) g^-1", g=g, t=t)
    peiffer = act[d]                                # [t, s] -> ^{∂t}s
    bad = np.argwhere(peiffer != T.conjugation)
    if len(bad):
        t, s = bad[0].tolist()
        raise PeifferFails("^{∂t}s != t s t^-1", t=t, s=s)
    return CrossedModule(T, G, boundary, act)


def conjugation_action(G: FiniteGroup, N: Subgroup):
    """Action of ``G`` on a normal subgroup by conjugation, in N's labels."""
    conj = G.conjugation[:, N.array]
    return N.index_of(conj)


def normal_inclusion_xmod(G: FiniteGroup, N: Subgroup) -> CrossedModule:
    Ng, inc = N.as_group()
    return validate_xmod(Ng, G, inc, conjugation_action(G, N))


def identity_xmod(G):
    return validate_xmod(G, G, identity_hom(G), G.conjugation)


def trivial_action(G, T):
    return np.tile(np.arange(T.order), (G.order, 1))


# -- the equivalence -----------------------------------------------------------

def to_internal_category(x: CrossedModule) -> InternalCategory:
    T, G, act = x.T, x.G, x.action
    nt, ng = T.order, G.order
    ids = np.arange(ng * nt)
    g, t = ids // nt, ids % nt
    gg = G.table[g[:, None], g[None, :]]
    tt = T.table[t[:, None], act[g[:, None], t[None, :]]]
    A1 = FiniteGroup(gg * nt + tt, None, check=False)
    d0 = GroupHom(A1, G, g, check=False)
    d1 = GroupHom(A1, G, G.table[x.boundary.map[t], g], check=False)
    i = GroupHom(G, A1, np.arange(ng) * nt, check=False)
    return validate_internal_category(G, A1, d0, d1, i)


def from_internal_category(C: InternalCategory) -> CrossedModule:
    """``d0`` restricted to ``K[d1]``, with ``A0`` acting by conjugation
    through ``i``."""
    K = C.d1.kernel()
    Kg, inc = K.as_group()
    boundary = GroupHom(Kg, C.A0, C.d0.map[K.array])
    A1 = C.A1
    ii = C.i.map
    conj = A1.table[A1.table[ii[:, None], K.array[None, :]], A1.inverses[ii][:, None]]
    return validate_xmod(Kg, C.A0, boundary, K.index_of(conj))


@dataclass
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    h: GroupHom       # T → T'
    g: GroupHom       # G → G'


def check_xmod_morphism(X, Y, h, g) -> XModMorphism:
    if not np.array_equal(Y.boundary.map[h.map], g.map[X.boundary.map]):
        raise EquationFails("∂' h != g ∂", which="boundary")
    lhs = h.map[X.action]                           # h(ᵍt)
    rhs = Y.action[g.map][:, h.map]                 # ^{g(x)} h(t)
    if not np.array_equal(lhs, rhs):
        raise EquationFails("h is not equivariant along g", which="action")
    return XModMorphism(X, Y, h, g)


def xmod_iso(m: XModMorphism) -> bool:
    return m.h.is_iso and m.g.is_iso


@dataclass
class InternalFunctor:
    source: InternalCategory
    target: InternalCategory
    f0: GroupHom
    f1: GroupHom


def check_internal_functor(C, E, f0, f1) -> InternalFunctor:
    for name, a, b in (("d0", C.d0, E.d0), ("d1", C.d1, E.d1)):
        if not np.array_equal(b.map[f1.map], f0.map[a.map]):
            raise EquationFails(f"functor does not commute with {name}", which=name)
    if not np.array_equal(f1.map[C.i.map], E.i.map[f0.map]):
        raise EquationFails("functor does not preserve identities", which="i")
    return InternalFunctor(C, E, f0, f1)


def functor_of(m: XModMorphism, C=None, E=None) -> InternalFunctor:
    """Internal functor ``(g, g ⋉ h)`` between the semidirect products."""
    C = C or to_internal_category(m.source)
    E = E or to_internal_category(m.target)
    nt, nt2 = m.source.T.order, m.target.T.order
    ids = np.arange(C.A1.order)
    f1 = GroupHom(C.A1, E.A1, m.g.map[ids // nt] * nt2 + m.h.map[ids % nt])
    return check_internal_functor(C, E, m.g, f1)


@dataclass
class RoundTrip:
    xmod_iso: XModMorphism            # X → from(to(X))
    category_iso: InternalFunctor     # to(from(C)) → C


def roundtrip_witnesses(x: CrossedModule) -> RoundTrip:
    """Explicit isomorphisms for both round trips starting from ``x``."""
    C = to_internal_category(x)
    y = from_internal_category(C)
    K = C.d1.kernel()
    T, nt = x.T, x.T.order
    # t ↦ (∂t, t^-1), which has trivial target
    enc = x.boundary.map * nt + T.inverses
    h = GroupHom(T, y.T, K.index_of(enc))
    m1 = check_xmod_morphism(x, y, h, identity_hom(x.G))
    if not xmod_iso(m1):
        raise PostconditionFailed("crossed module round trip is not an isomorphism")
    # (g, k) ↦ i(d0 k) k^-1 i(g) from the semidirect product of y back to C
    D = to_internal_category(y)
    ny = y.T.order
    ids = np.arange(D.A1.order)
    g, kk = ids // ny, K.array[ids % ny]
    A1 = C.A1
    ii = C.i.map
    phi = A1.table[A1.table[ii[C.d0.map[kk]], A1.inverses[kk]], ii[g]]
    f1 = GroupHom(D.A1, C.A1, phi)
    F = check_internal_functor(D, C, identity_hom(C.A0), f1)
    if not f1.is_iso:
        raise PostconditionFailed("internal category round trip is not an isomorphism")
    return RoundTrip(m1, F)


def internal_category_roundtrip(C: InternalCategory) -> InternalFunctor:
    """Isomorphism ``to(from(C)) → C``."""
    y = from_internal_category(C)
    D = to_internal_category(y)
    K = C.d1.kernel()
    ny = y.T.order
    ids = np.arange(D.A1.order)
    g, kk = ids // ny, K.array[ids % ny]
    A1, ii = C.A1, C.i.map
    phi = A1.table[A1.table[ii[C.d0.map[kk]], A1.inverses[kk]], ii[g]]
    F = check_internal_functor(D, C, identity_hom(C.A0), GroupHom(D.A1, C.A1, phi))
    if not F.f1.is_iso:
        raise PostconditionFailed("internal category round trip is not an isomorphism")
    return F


# -- nerve ---------------------------------------------------------------------

def nerve(C: InternalCategory, D: int) -> SimplicialGroup:
    """Composable n-tuples ``(a_1, …, a_n)`` with ``d1 a_j = d0 a_{j+1}``.

    ``∂_0`` drops ``a_1``, ``∂_n`` drops ``a_n`` and ``∂_i`` composes
    ``a_i, a_{i+1}``; ``σ_i`` inserts an identity at vertex i.
    """
    if D < 1:
        raise ValidationError("nerve needs dimension at least 1")
    A1 = C.A1
    d0, d1 = C.d0.map, C.d1.map
    groups = [C.A0, A1]
    coords = [None, np.arange(A1.order)[:, None]]
    for n in range(2, D + 1):
        prev = coords[n - 1]
        last = d1[prev[:, -1]]
        order = np.argsort(d0, kind="stable")
        sd = d0[order]
        lo, hi = np.searchsorted(sd, last, "left"), np.searchsorted(sd, last, "right")
        counts = hi - lo
        r = np.repeat(np.arange(len(prev)), counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        e = order[np.repeat(lo, counts) + offs]
        rows = np.hstack([prev[r], e[:, None]])
        G, rows = tuple_group([A1] * n, rows)
        groups.append(G)
        coords.append(rows)

    def locate_rows(n, rows):
        if n == 0:
            return rows[:, 0]
        if n == 1:
            return rows[:, 0]
        return locate(coords[n], [A1.order] * n, rows)

    def vertex(n, rows, i):
        if i == 0:
            return d0[rows[:, 0]]
        return d1[rows[:, i - 1]]

    faces = [[]]
    for n in range(1, D + 1):
        fs = []
        rows = coords[n]
        for i in range(n + 1):
            if n == 1:
                img = d1 if i == 0 else d0
                fs.append(GroupHom(A1, C.A0, img, check=False))
                continue
            if i == 0:
                new = rows[:, 1:]
            elif i == n:
                new = rows[:, :-1]
            else:
                comp = C.compose(rows[:, i - 1], rows[:, i])
                new = np.hstack([rows[:, :i - 1], comp[:, None], rows[:, i + 1:]])
            fs.append(GroupHom(groups[n], groups[n - 1], locate_rows(n - 1, new), check=False))
        faces.append(fs)
    degs = []
    for n in range(D):
        ss = []
        for i in range(n + 1):
            if n == 0:
                ss.append(C.i)
                continue
            rows = coords[n]
            ident = C.i.map[vertex(n, rows, i)]
            new = np.hstack([rows[:, :i], ident[:, None], rows[:, i:]])
            ss.append(GroupHom(groups[n], groups[n + 1], locate_rows(n + 1, new), check=False))
        degs.append(ss)
    return validate_simplicial(groups, faces, degs)


def nerve_morphism(F: InternalFunctor, A: SimplicialGroup, B: SimplicialGroup):
    """Degreewise ``F`` on nerves built with the same D."""
    from .groups import _encode
    maps = [F.f0, F.f1]
    for n in range(2, A.dim + 1):
        rows = _rows_of(A, n, F.source)
        img = F.f1.map[rows]
        brows = _rows_of(B, n, F.target)
        codes = _encode(brows, [F.target.A1.order] * n)
        want = _encode(img, [F.target.A1.order] * n)
        idx = np.searchsorted(codes, want)
        maps.append(GroupHom(A.groups[n], B.groups[n], idx))
    return SimplicialMorphism(A, B, maps)


def _rows_of(A: SimplicialGroup, n: int, C: InternalCategory):
    """Arrow tuples of n-simplices: the j-th arrow is the image under the
    vertex-(j, j+1) edge map, obtained by applying faces."""
    cols = []
    for j in range(n):
        # keep vertices j, j+1: drop the last n-j-1 vertices then the first j
        idx = np.arange(A.groups[n].order)
        m = n
        for _ in range(n - j - 1):
            idx = A.face(m, m).map[idx]
            m -= 1
        for _ in range(j):
            idx = A.face(m, 0).map[idx]
            m -= 1
        cols.append(idx)
    return np.stack(cols, axis=1)


# -- homology and predicates ------------------------------------------------------

@dataclass
class XModHomology:
    H0: FiniteGroup
    H0_proj: GroupHom      # G ↠ H0
    H1: Subgroup           # ker ∂ ⊆ T


def xmod_homology(x: CrossedModule) -> XModHomology:
    img = x.boundary.image()
    if not img.is_normal:
        raise PostconditionFailed("image of the boundary is not normal")
    H0, q = quotient(x.G, img)
    H1 = x.boundary.kernel()
    Hg, _ = H1.as_group()
    if not Hg.is_abelian:
        raise PostconditionFailed("ker ∂ is not abelian")
    return XModHomology(H0, q, H1)


def nerve_homology_agreement(x: CrossedModule, D: int = 2) -> bool:
    """Compare ``H_0, H_1`` of the nerve with ``G/∂T`` and ``ker ∂``, as
    subgroups of the same ambient groups, and check the nerve vanishes above
    degree 1 up to the truncation."""
    from .simplicial import moore_complex
    from .chain import homology
    C = to_internal_category(x)
    A = nerve(C, D)
    M = moore_complex(A)
    h0 = homology(M.complex, 0)
    hx = xmod_homology(x)
    ok = h0.boundaries == x.boundary.image()
    h1 = homology(M.complex, 1)
    nt = x.T.order
    cyc = Subgroup(A.groups[1], M.subgroups[1].array[h1.cycles.array], check=False)
    ok &= cyc == Subgroup(A.groups[1], hx.H1.array, check=False)      # (1, t), ∂t = 1
    ok &= h1.boundaries.is_trivial
    H0c, _, H1c = C.homology()
    ok &= H0c.order == hx.H0.order and H1c == cyc
    for n in range(2, D):
        ok &= homology(M.complex, n).is_trivial
    return bool(ok)


def _induced_h0(m: XModMorphism):
    hs, ht = xmod_homology(m.source), xmod_homology(m.target)
    from .groups import factor_through
    u = factor_through(hs.H0_proj, m.g.then(ht.H0_proj))
    if u is None:
        raise PostconditionFailed("morphism does not descend to H_0")
    return u


def _induced_h1(m: XModMorphism):
    hs, ht = xmod_homology(m.source), xmod_homology(m.target)
    Ks, _ = hs.H1.as_group()
    Kt, _ = ht.H1.as_group()
    return GroupHom(Ks, Kt, ht.H1.index_of(m.h.map[hs.H1.array]))


@dataclass
class ModelPredicates:
    is_weak_equivalence: bool
    is_fibration: bool
    is_fully_faithful: bool
    is_essentially_surjective: bool
    H0_iso: bool
    H1_iso: bool

    def to_json(self):
        return {"isWeakEquivalence": self.is_weak_equivalence,
                "isFibration": self.is_fibration,
                "isFullyFaithful": self.is_fully_faithful,
                "isEssentiallySurjective": self.is_essentially_surjective,
                "H0iso": self.H0_iso, "H1iso": self.H1_iso}


def model_predicates(m: XModMorphism) -> ModelPredicates:
    F = functor_of(m)
    C, E = F.source, F.target
    h0, h1 = _induced_h0(m), _induced_h1(m)
    H0_iso, H1_iso = h0.is_iso, h1.is_iso
    we = H0_iso and H1_iso
    fib = m.h.is_surjective
    # cross-check: a ↦ (d1 a, F a) onto pairs (x, b) with F x = d1 b
    pairs = np.argwhere(F.f0.map[:, None] == E.d1.map[None, :])
    nb = E.A1.order
    img = np.unique(C.d1.map * nb + F.f1.map)
    if fib != (len(img) == len(pairs)):
        raise PostconditionFailed("fibration criteria disagree")
    # fully faithful: a ↦ (d0 a, d1 a, F a) bijective onto the pullback
    n0 = C.A0.order
    count = int(sum(np.count_nonzero((E.d0.map == F.f0.map[x]) & (E.d1.map == F.f0.map[y]))
                    for x in range(n0) for y in range(n0)))
    codes = (C.d0.map * n0 + C.d1.map) * nb + F.f1.map
    ff = len(np.unique(codes)) == C.A1.order == count
    # essentially surjective: objects reached by an arrow out of the image
    hit = np.isin(E.d1.map, F.f0.map)
    es = len(np.unique(E.d0.map[hit])) == E.A0.order
    if we != (ff and es):
        raise PostconditionFailed("weak equivalence differs from fully faithful and "
                                  "essentially surjective")
    if ff != (h0.is_injective and H1_iso):
        raise PostconditionFailed("fully faithful differs from H_0 mono and H_1 iso")
    if es != h0.is_surjective:
        raise PostconditionFailed("essentially surjective differs from H_0 epi")
    return ModelPredicates(we, fib, ff, es, H0_iso, H1_iso)


def natural_iso_check(mu: GroupHom, F: InternalFunctor, G: InternalFunctor) -> bool:
    """``μ: A0 → B1`` a transformation from F to G."""
    C, E = F.source, F.target
    if mu.source != C.A0 or mu.target != E.A1:
        raise ValidationError("transformation must map objects to arrows")
    if not np.array_equal(E.d0.map[mu.map], F.f0.map):
        raise EquationFails("d0 ∘ μ != F0", which="source")
    if not np.array_equal(E.d1.map[mu.map], G.f0.map):
        raise EquationFails("d1 ∘ μ != G0", which="target")
    a = np.arange(C.A1.order)
    lhs = E.compose(F.f1.map[a], mu.map[C.d1.map[a]])
    rhs = E.compose(mu.map[C.d0.map[a]], G.f1.map[a])
    if not np.array_equal(lhs, rhs):
        raise EquationFails("naturality square fails", which="naturality")
    # naturally isomorphic functors agree on homology
    H0c, qc, H1c = C.homology()
    H0e, qe, H1e = E.homology()
    if not np.array_equal(qe.map[F.f0.map], qe.map[G.f0.map]):
        raise PostconditionFailed("H_0 F != H_0 G")
    if not np.array_equal(F.f1.map[H1c.array], G.f1.map[H1c.array]):
        raise PostconditionFailed("H_1 F != H_1 G")
    return True


# -- commutators of sub-crossed-modules ---------------------------------------------

def _check_normal_sub(x: CrossedModule, N: Subgroup, R: Subgroup):
    if N.parent != x.T or R.parent != x.G:
        raise NotSubXMod("components live in the wrong groups")
    if not (N.is_normal and R.is_normal):
        raise NotSubXMod("components must be normal")
    if not R.mask[x.boundary.map[N.array]].all():
        raise NotSubXMod("∂N is not contained in R")
    if not N.mask[x.action[:, N.array]].all():
        raise NotSubXMod("N is not stable under the action")
    T = x.T
    mixed = T.table[x.action[R.array][:, :], T.inverses[None, :]]    # ʳt t^-1
    if not N.mask[mixed].all():
        raise NotSubXMod("ʳt t^-1 is not in N for some r ∈ R")


def _action_commutator(x, K: Subgroup, S: Subgroup) -> Subgroup:
    """``⟨ ᵏs s^-1 : k ∈ K, s ∈ S ⟩`` in T."""
    T = x.T
    vals = T.table[x.action[np.ix_(K.array, S.array)], T.inverses[S.array][None, :]]
    return generated_subgroup(T, np.unique(vals))


def huq_commutator_xmod(x: CrossedModule, N: Subgroup, R: Subgroup, Q: Subgroup,
                        F: Subgroup):
    """Commutator of the normal sub-crossed-modules ``(N, R)`` and ``(Q, F)``:
    ``([R,Q]·[F,N], [R,F])``."""
    _check_normal_sub(x, N, R)
    _check_normal_sub(x, Q, F)
    a = _action_commutator(x, R, Q)
    b = _action_commutator(x, F, N)
    top = a.join(b)
    bottom = commutator_subgroup(R, F)
    try:
        _check_normal_sub(x, top, bottom)
    except NotSubXMod as exc:
        raise PostconditionFailed(f"commutator is not a normal sub-crossed-module: {exc}")
    return top, bottom
