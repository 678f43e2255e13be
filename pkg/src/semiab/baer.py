"""Presentations, Baer invariants relative to abelianization, the V1
commutator, Huq and Smith commutators, centrality and nilpotency."""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional

import numpy as np

from .config import CONFIG
from .diagram import check_short_exact, is_exact_at
from .errors import (NotOverIdentity, NotSurjective, PostconditionFailed,
                     SearchBudgetExceeded, ValidationError)
from .groups import (Congruence, FiniteGroup, GroupHom, Subgroup, abelianization,
                     center, commutator_subgroup, derived_subgroup, factor_through,
                     normal_subgroups, quotient)
from .homsearch import find_isomorphism

_INT = np.int64


class Presentation:
    """A surjection ``p: X0 ↠ A``."""

    def __init__(self, p: GroupHom):
        if not p.is_surjective:
            raise NotSurjective("a presentation is a surjection")
        self.p = p

    @property
    def X0(self):
        return self.p.source

    @property
    def A(self):
        return self.p.target

    @cached_property
    def kernel(self) -> Subgroup:
        return self.p.kernel()


def _pres(p):
    return p if isinstance(p, Presentation) else Presentation(p)


def _pair_ops(X: FiniteGroup):
    t, inv, n = X.table, X.inverses, X.order

    def mul(a, b):
        return t[a // n, b // n] * n + t[a % n, b % n]

    def inverse(a):
        return inv[a // n] * n + inv[a % n]
    return mul, inverse


def _normal_closure_pairs(X: FiniteGroup, seeds, ambient_gens):
    """Normal closure of ``seeds`` inside the subgroup of ``X × X`` generated
    by ``ambient_gens``; pairs are coded ``x |X| + y``."""
    mul, inverse = _pair_ops(X)
    seen = np.zeros(X.order ** 2, dtype=bool)
    seen[0] = True
    frontier = np.unique(np.asarray(seeds, dtype=_INT))
    seen[frontier] = True
    gens = np.asarray(ambient_gens, dtype=_INT)
    while len(frontier):
        found = []
        for g in gens:
            found.append(mul(mul(g, frontier), inverse(g)))
        for s in seeds:
            found.append(mul(frontier, s))
        cand = np.unique(np.concatenate(found))
        frontier = cand[~seen[cand]]
        seen[frontier] = True
    return np.nonzero(seen)[0]


def derived_kernel_pair(p) -> np.ndarray:
    """``[R, R]`` for the kernel pair ``R ⊆ X0 × X0`` of p, as pair codes."""
    p = _pres(p)
    X = p.X0
    n = X.order
    mul, inverse = _pair_ops(X)
    rg = [g * n + g for g in X.generators] + generated_gens(p.kernel)
    comms = [mul(mul(mul(a, b), inverse(a)), inverse(b)) for a in rg for b in rg]
    return _normal_closure_pairs(X, comms, rg)


def v1_generic(p) -> Subgroup:
    """Second coordinates of the elements of ``[R, R]`` with trivial first
    coordinate."""
    p = _pres(p)
    n = p.X0.order
    VR = derived_kernel_pair(p)
    return Subgroup(p.X0, np.unique((VR % n)[VR // n == 0]), check=False)


def generated_gens(S: Subgroup):
    """A generating set of a subgroup, in parent labels."""
    g, inc = S.as_group()
    return [int(inc.map[x]) for x in g.generators]


def v1(p) -> Subgroup:
    """``V1 p = [K, X0]``, checked against the kernel-pair construction."""
    p = _pres(p)
    closed = commutator_subgroup(p.kernel, p.X0.whole())
    generic = v1_generic(p)
    if closed != generic:
        raise PostconditionFailed("V1 closed form and kernel-pair route differ",
                                  closed=list(closed.elements), generic=list(generic.elements))
    return closed


def v1_map(p, q, f0: GroupHom) -> GroupHom:
    """Restriction of a presentation morphism ``f0: X0 → Y0`` to
    ``V1 p → V1 q``."""
    p, q = _pres(p), _pres(q)
    a, b = v1(p), v1(q)
    img = f0.map[a.array]
    if not b.mask[img].all():
        raise PostconditionFailed("presentation morphism does not preserve V1")
    return GroupHom(a.as_group()[0], b.as_group()[0], b.index_of(img))


@dataclass
class DeltaV:
    group: FiniteGroup
    numerator: Subgroup          # K ∩ [X0, X0]
    denominator: Subgroup        # [K, X0]
    proj: GroupHom               # numerator (as group) ↠ group


def delta_v(p) -> DeltaV:
    """``ΔV(p) = (K ∩ [X0,X0]) / [K, X0]``."""
    p = _pres(p)
    num = p.kernel.intersect(derived_subgroup(p.X0))
    den = v1(p)
    if not den <= num:
        raise PostconditionFailed("[K, X0] is not inside K ∩ [X0, X0]")
    ng, _ = num.as_group()
    Q, q = quotient(ng, Subgroup(ng, num.index_of(den.array), check=False))
    return DeltaV(Q, num, den, q)


def nabla_v(p) -> FiniteGroup:
    """``[X0,X0] / (K ∩ [X0,X0])``, checked to be ``p[X0,X0] = [A,A]``."""
    p = _pres(p)
    V = derived_subgroup(p.X0)
    img = p.p.apply(V)
    if img != derived_subgroup(p.A):
        raise PostconditionFailed("p[X0, X0] differs from [A, A]")
    vg, _ = V.as_group()
    Q, _ = quotient(vg, Subgroup(vg, V.index_of(V.intersect(p.kernel).array), check=False))
    if Q.order != img.order:
        raise PostconditionFailed("∇V has the wrong order")
    return Q


def induced_delta_map(p, q, f0: GroupHom) -> GroupHom:
    """``ΔV(f0): ΔV(p) → ΔV(q)`` for a morphism of presentations over the
    identity (``q ∘ f0 = p``)."""
    p, q = _pres(p), _pres(q)
    if p.A != q.A or not np.array_equal(q.p.map[f0.map], p.p.map):
        raise NotOverIdentity("f0 is not a morphism of presentations over the identity")
    dp, dq = delta_v(p), delta_v(q)
    img = f0.map[dp.numerator.array]
    if not dq.numerator.mask[img].all():
        raise PostconditionFailed("f0 does not preserve K ∩ [X0, X0]")
    h = GroupHom(dp.proj.source, dq.proj.source, dq.numerator.index_of(img))
    u = factor_through(dp.proj, h.then(dq.proj))
    if u is None:
        raise PostconditionFailed("f0 does not descend to ΔV")
    return u


@dataclass
class BaerInvarianceReport:
    isomorphic: bool
    induced_is_iso: bool
    roundtrips_identity: bool


def baer_invariance_check(p, q, f0: GroupHom, g0: GroupHom) -> BaerInvarianceReport:
    """Presentations of the same object with morphisms both ways over the
    identity: ``ΔV`` values are isomorphic and the induced maps are mutually
    inverse (composites are homotopic to identities)."""
    p, q = _pres(p), _pres(q)
    f = induced_delta_map(p, q, f0)
    g = induced_delta_map(q, p, g0)
    iso = find_isomorphism(f.source, f.target) is not None
    rt = bool(np.array_equal(g.map[f.map], np.arange(f.source.order)) and
              np.array_equal(f.map[g.map], np.arange(g.source.order)))
    if not (iso and rt and f.is_iso):
        raise PostconditionFailed("ΔV is not invariant across the given presentations")
    return BaerInvarianceReport(iso, f.is_iso, rt)


@dataclass
class FiveTermReport:
    groups: List[FiniteGroup]        # ΔV(A), ΔV(B), K/[K,A], Ab A, Ab B
    maps: List[GroupHom]
    exact: dict
    presentation_relative: List[str]


def five_term_sequence(k: GroupHom, f: GroupHom, pA) -> FiveTermReport:
    """``ΔV(A) → ΔV(B) → K/[K,A] → Ab A → Ab B → 1`` for the presentation
    ``pA`` of A and ``pB = f ∘ pA`` of B."""
    check_short_exact(k, f)
    pA = _pres(pA)
    if pA.A != f.source:
        raise ValidationError("presentation does not present the middle group")
    pB = Presentation(pA.p.then(f))
    X0 = pA.X0
    A, B = f.source, f.target
    dA, dB = delta_v(pA), delta_v(pB)
    m1 = induced_delta_map_over(pA, pB, dA, dB)
    Ksub = k.image()
    VK = commutator_subgroup(Ksub, A.whole())
    kg, _ = Ksub.as_group()
    KQ, kq = quotient(kg, Subgroup(kg, Ksub.index_of(VK.array), check=False))
    # γ: ΔV(B) → K/[K,A], x ↦ class of pA(x)
    vals = pA.p.map[dB.numerator.array]
    if not Ksub.mask[vals].all():
        raise PostconditionFailed("γ leaves K")
    h = GroupHom(dB.proj.source, KQ, kq.map[Ksub.index_of(vals)])
    gamma = factor_through(dB.proj, h)
    if gamma is None:
        raise PostconditionFailed("γ is not well defined on ΔV(B)")
    AbA, ea = abelianization(A)
    AbB, eb = abelianization(B)
    incl = factor_through(kq, GroupHom(kg, AbA, ea.map[Ksub.array]))
    abf = factor_through(ea, f.then(eb))
    if incl is None or abf is None:
        raise PostconditionFailed("tail maps are not well defined")
    exact = {"K/[K,A]": is_exact_at(gamma, incl), "AbA": is_exact_at(incl, abf),
             "AbB": abf.is_surjective, "ΔV(B)": is_exact_at(m1, gamma)}
    for node in ("K/[K,A]", "AbA", "AbB"):
        if not exact[node]:
            raise PostconditionFailed(f"five-term sequence not exact at {node}")
    return FiveTermReport([dA.group, dB.group, KQ, AbA, AbB], [m1, gamma, incl, abf],
                          exact, ["ΔV(B)"])


def induced_delta_map_over(p: Presentation, q: Presentation, dp: DeltaV, dq: DeltaV):
    """ΔV of the morphism ``(1_X0, f)`` from p to q with the same domain."""
    img = dp.numerator.array
    if not dq.numerator.mask[img].all():
        raise PostconditionFailed("identity does not preserve K ∩ [X0, X0]")
    h = GroupHom(dp.proj.source, dq.proj.source, dq.numerator.index_of(img))
    u = factor_through(dp.proj, h.then(dq.proj))
    if u is None:
        raise PostconditionFailed("identity does not descend to ΔV")
    return u


# -- Huq and Smith commutators -----------------------------------------------------

def _commute_mod(X: FiniteGroup, H: Subgroup, K: Subgroup, N: Subgroup) -> bool:
    t, inv = X.table, X.inverses
    h = H.array[:, None]
    k = K.array[None, :]
    comms = t[t[t[h, k], inv[h]], inv[k]]
    return bool(N.mask[comms].all())


def huq_commutator(k: GroupHom, k2: GroupHom, certify=True) -> Subgroup:
    """Normal closure of ``[k(a), k'(b)]`` in the common codomain.

    With ``certify``, every normal subgroup of the codomain is scanned: the
    images commute modulo N exactly when N contains the result.
    """
    if k.target != k2.target:
        raise ValidationError("Huq commutator needs coterminal maps")
    X = k.target
    H, K = k.image(), k2.image()
    C = commutator_subgroup(H, K)
    if certify:
        if X.order > CONFIG.search_cap:
            raise SearchBudgetExceeded("minimality certificate exceeds the search cap",
                                       order=X.order)
        for N in normal_subgroups(X):
            if _commute_mod(X, H, K, N) != (C <= N):
                raise PostconditionFailed("Huq commutator is not the least such subgroup",
                                          normal=list(N.elements))
    return C


def _triples(R: Congruence, S: Congruence):
    """All ``(x, y, z)`` with ``x R y`` and ``y S z``, as ``(a y, y, b y)``."""
    X = R.base
    NR, NS = R.normal.array, S.normal.array
    y = np.arange(X.order)
    a, yy, b = np.meshgrid(NR, y, NS, indexing="ij")
    x = X.table[a.ravel(), yy.ravel()]
    z = X.table[b.ravel(), yy.ravel()]
    return np.stack([x, yy.ravel(), z], axis=1)


def centralize_check(R: Congruence, S: Congruence) -> bool:
    """Whether ``(x, y, z) ↦ x y^-1 z`` is a connector: multiplicative on
    ``{(x,y,z) : x R y, y S z}`` (the relational conditions hold in any
    group)."""
    X = R.base
    if S.base != X:
        raise ValidationError("congruences on different groups")
    t, inv = X.table, X.inverses
    P = _triples(R, S)

    def p(rows):
        return t[t[rows[:, 0], inv[rows[:, 1]]], rows[:, 2]]
    pv = p(P)
    if not (R.normal.mask[t[pv, inv[P[:, 2]]]].all() and
            S.normal.mask[t[pv, inv[P[:, 0]]]].all()):
        raise PostconditionFailed("connector is not double-relational")
    gens = ([(r, 0, 0) for r in R.normal.array] + [(0, 0, s) for s in S.normal.array] +
            [(g, g, g) for g in X.generators])
    for g in gens:
        prod = np.stack([t[g[c], P[:, c]] for c in range(3)], axis=1)
        if not np.array_equal(p(prod), t[p(np.array([g])), pv]):
            return False
    return True


def smith_commutator(R: Congruence, S: Congruence) -> Congruence:
    """Congruence of ``[N_R, N_S]``, with its defining properties checked over
    the normal subgroup lattice."""
    X = R.base
    C = commutator_subgroup(R.normal, S.normal)
    T = Congruence(X, C)
    if centralize_check(R, S) != C.is_trivial:
        raise PostconditionFailed("connector test disagrees with the commutator")
    if X.order > CONFIG.search_cap:
        raise SearchBudgetExceeded("minimality certificate exceeds the search cap",
                                   order=X.order)
    for N in normal_subgroups(X):
        Q, q = quotient(X, N)
        ok = centralize_check(Congruence(Q, q.apply(R.normal)), Congruence(Q, q.apply(S.normal)))
        if ok != (C <= N):
            raise PostconditionFailed("Smith commutator is not the least centralizing "
                                      "congruence", normal=list(N.elements))
    return T


@dataclass
class CentralityReport:
    jk_central: bool
    v1_central: bool
    smith_central: bool
    huq_central: bool

    @property
    def agree(self):
        return len({self.jk_central, self.v1_central, self.smith_central,
                    self.huq_central}) == 1

    def to_json(self):
        return {"jkCentral": self.jk_central, "v1Central": self.v1_central,
                "smithCentral": self.smith_central, "huqCentral": self.huq_central}


def centrality_equivalence(f: GroupHom) -> CentralityReport:
    """Four independent centrality tests for a surjection ``f: X ↠ Y``."""
    p = Presentation(f)
    X = f.source
    K = p.kernel
    v1c = v1(p).is_trivial
    # Smith: kernel-pair congruence centralizes the indiscrete one
    smith = centralize_check(Congruence(X, K), Congruence.indiscrete(X))
    # Huq: K commutes elementwise with X, i.e. sits in the centre
    huq = K <= center(X)
    # Janelidze-Kelly: [R, R] is the diagonal on [X, X]
    VR = derived_kernel_pair(p)
    DX = derived_subgroup(X).array
    jk = np.array_equal(VR, DX * X.order + DX)
    rep = CentralityReport(bool(jk), bool(v1c), bool(smith), bool(huq))
    if not rep.agree:
        raise PostconditionFailed("centrality notions disagree", **rep.to_json())
    return rep


# -- nilpotency --------------------------------------------------------------------

@dataclass
class LowerCentralSeries:
    series: List[Subgroup]
    nilpotency_class: Optional[int]
    reflections: List[FiniteGroup]         # reflections[n] = G / V^n
    projections: List[GroupHom]

    def to_json(self):
        return {"series": [s.order for s in self.series], "class": self.nilpotency_class}


def lower_central_series(G: FiniteGroup, n_max: int = 8) -> LowerCentralSeries:
    """``V^0 = G``, ``V^{n+1} = V1(G ↠ G/V^n) = [V^n, G]``."""
    series = [G.whole()]
    cls = 0 if G.order == 1 else None
    while len(series) <= n_max and cls is None:
        _, q = quotient(G, series[-1])
        nxt = v1(q)
        series.append(nxt)
        if nxt.is_trivial:
            cls = len(series) - 1
        elif nxt == series[-2]:
            # stabilized away from the identity; keep reporting up to n_max
            while len(series) <= n_max:
                series.append(nxt)
            break
    reflections, projections = [], []
    for n, V in enumerate(series):
        Q, q = quotient(G, V)
        sub = lower_central_series_class(Q)
        if sub is None or sub > n:
            raise PostconditionFailed(f"reflection at {n} is not of class at most {n}")
        reflections.append(Q)
        projections.append(q)
    return LowerCentralSeries(series, cls, reflections, projections)


def lower_central_series_class(G: FiniteGroup) -> Optional[int]:
    """Nilpotency class by iterated commutators, or None."""
    cur = G.whole()
    n = 0
    while not cur.is_trivial:
        nxt = commutator_subgroup(cur, G.whole())
        n += 1
        if nxt == cur:
            return None
        cur = nxt
    return n


def reflection_is_couniversal(lcs: LowerCentralSeries, n: int, cones) -> List[bool]:
    """Each supplied surjection onto a group of class ≤ n factors through the
    n-th reflection."""
    out = []
    for h in cones:
        out.append(factor_through(lcs.projections[n], h) is not None)
    return out
