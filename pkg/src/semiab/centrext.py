"""Central extensions: the centralizing reflection, Baer sums, the bridge to
2-cocycles, universal coefficients, the Hochschild-Serre five-term sequence
and universal central extensions."""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .abelian import (abelian_invariants, ext_invariants, factorize, hom_invariants,
                      hom_order, invariant_factors, order_of, primary_orders)
from .baer import centrality_equivalence
from .cocycles import CocycleClassGroup, cocycle_h2
from .diagram import check_short_exact, is_exact_at
from .errors import (KernelMismatch, NotCentral, NotCocycle, NotEpi, NotNormalized,
                     PostconditionFailed, ValidationError)
from .groups import (FiniteGroup, GroupHom, Subgroup, abelianization, center,
                     commutator_subgroup, derived_subgroup, direct_product, factor_through,
                     kernel, pullback, quotient)
from .homsearch import find_homs

_INT = np.int64


@dataclass(frozen=True)
class CentralExtension:
    """``A ↣ X ↠ Y`` with A central in X; ``k`` is the kernel inclusion."""
    f: GroupHom
    k: GroupHom

    @property
    def X(self):
        return self.f.source

    @property
    def Y(self):
        return self.f.target

    @property
    def A(self):
        return self.k.source

    @property
    def kernel_subgroup(self) -> Subgroup:
        return self.k.image()

    def summary(self):
        return {"X": self.X.order, "Y": self.Y.order, "A": self.A.order}


def central_extension(f: GroupHom, k: Optional[GroupHom] = None) -> CentralExtension:
    if k is None:
        if not f.is_surjective:
            raise NotEpi("extension map is not surjective")
        _, k = kernel(f)
    check_short_exact(k, f)
    if not k.source.is_abelian:
        raise NotCentral("kernel is not abelian")
    if not k.image() <= center(f.source):
        raise NotCentral("kernel is not central",
                         kernel=list(k.image().elements), center=list(center(f.source).elements))
    return CentralExtension(f, k)


def is_central(f: GroupHom) -> bool:
    """Kernel inside the centre, cross-checked against the other centrality
    tests."""
    if not f.is_surjective:
        raise NotEpi("map is not surjective")
    direct = f.kernel() <= center(f.source)
    rep = centrality_equivalence(f)
    if rep.huq_central != direct:
        raise PostconditionFailed("centre scan disagrees with the centrality tests")
    return bool(direct)


@dataclass
class Reflection:
    extension: CentralExtension
    unit: GroupHom                      # X ↠ X/[K, X]


def centr_reflect(f: GroupHom) -> Reflection:
    """``X/[K,X] ↠ Y`` for a surjection ``f: X ↠ Y`` with kernel K."""
    if not f.is_surjective:
        raise NotEpi("map is not surjective")
    X = f.source
    C = commutator_subgroup(f.kernel(), X.whole())
    Q, q = quotient(X, C)
    fbar = factor_through(q, f)
    if fbar is None:
        raise PostconditionFailed("f does not factor through X/[K,X]")
    return Reflection(central_extension(fbar), q)


def reflection_couniversal(r: Reflection, f: GroupHom, cones) -> List[bool]:
    """For each ``(g, h)`` with g a central extension of Y and ``g∘h = f``,
    whether h factors through the unit (compatibly over Y)."""
    out = []
    for g, h in cones:
        if not np.array_equal(g.f.map[h.map], f.map):
            raise ValidationError("cone does not lie over f")
        u = factor_through(r.unit, h)
        out.append(u is not None and
                   np.array_equal(g.f.map[u.map], r.extension.f.map))
    return out


# -- building and comparing extensions ---------------------------------------------

def _check_cocycle_table(Y, A, c):
    c = np.asarray(c, dtype=_INT)
    n = Y.order
    if c.shape != (n, n) or c.min(initial=0) < 0 or c.max(initial=0) >= A.order:
        raise NotCocycle("cocycle table has the wrong shape or values")
    if (c[0] != 0).any() or (c[:, 0] != 0).any():
        raise NotNormalized("cocycle is not normalized")
    t = Y.table
    lhs = A.table[c[:, :, None], c[t][:, :, :]]                  # c(x,y) + c(xy,z)
    rhs = A.table[c[None, :, :], c[:, t]]                        # c(y,z) + c(x,yz)
    if not np.array_equal(lhs, rhs):
        raise NotCocycle("cocycle law fails")
    return c


def extension_from_cocycle(Y: FiniteGroup, A: FiniteGroup, c) -> CentralExtension:
    """``A × Y`` with ``(a, y)(b, z) = (a + b + c(y, z), yz)``; element
    ``(a, y)`` is coded ``y |A| + a``."""
    if not A.is_abelian:
        raise ValidationError("coefficients must be abelian")
    c = _check_cocycle_table(Y, A, c)
    na = A.order
    y = np.repeat(np.arange(Y.order), na)
    a = np.tile(np.arange(na), Y.order)
    yz = Y.table[y[:, None], y[None, :]]
    ab = A.table[A.table[a[:, None], a[None, :]], c[y[:, None], y[None, :]]]
    X = FiniteGroup(yz * na + ab, check=False)
    f = GroupHom(X, Y, y, check=False)
    k = GroupHom(A, X, np.arange(na), check=False)
    return central_extension(f, k)


def split_extension(Y: FiniteGroup, A: FiniteGroup) -> CentralExtension:
    return extension_from_cocycle(Y, A, np.zeros((Y.order, Y.order), dtype=_INT))


def min_section(e: CentralExtension) -> np.ndarray:
    """Least element of each fibre."""
    s = np.full(e.Y.order, e.X.order, dtype=_INT)
    np.minimum.at(s, e.f.map, np.arange(e.X.order))
    return s


def cocycle_from_extension(e: CentralExtension, section=None) -> np.ndarray:
    """``c(y, z) = k^-1(s(y) s(z) s(yz)^-1)`` for a normalized section s."""
    s = min_section(e) if section is None else np.asarray(section, dtype=_INT)
    if not np.array_equal(e.f.map[s], np.arange(e.Y.order)):
        raise ValidationError("not a section")
    if s[0] != 0:
        raise NotNormalized("section does not send the identity to the identity")
    X, Y = e.X, e.Y
    prod = X.table[X.table[s[:, None], s[None, :]], X.inverses[s[Y.table]]]
    kinv = np.full(X.order, -1, dtype=_INT)
    kinv[e.k.map] = np.arange(e.A.order)
    c = kinv[prod]
    if (c < 0).any():
        raise PostconditionFailed("section product left the kernel")
    return c


def extensions_equivalent(e1: CentralExtension, e2: CentralExtension) -> Optional[GroupHom]:
    """An isomorphism ``X1 → X2`` over Y restricting to the identification
    of kernels, or None."""
    if e1.Y != e2.Y or e1.A != e2.A:
        raise KernelMismatch("extensions have different base or kernel")
    if e1.X.order != e2.X.order:
        return None
    fixed = {int(e1.k.map[a]): int(e2.k.map[a]) for a in range(e1.A.order)}
    res = find_homs(e1.X, e2.X, injective=True, over=(e1.f, e2.f), fixed=fixed, limit=1)
    return res[0] if res else None


def baer_sum(e1: CentralExtension, e2: CentralExtension) -> CentralExtension:
    """Pullback over Y modulo the antidiagonal ``{(a, a^-1)}``."""
    if e1.Y != e2.Y:
        raise KernelMismatch("extensions of different groups")
    if e1.A != e2.A:
        raise KernelMismatch("extensions with different kernels")
    A = e1.A
    pb = pullback(e1.f, e2.f)
    P = pb.group
    rows = np.stack([pb.p1.map, pb.p2.map], axis=1)
    code = rows[:, 0] * e2.X.order + rows[:, 1]
    pos = np.full(e1.X.order * e2.X.order, -1, dtype=_INT)
    pos[code] = np.arange(P.order)
    anti = pos[e1.k.map * e2.X.order + e2.k.map[A.inverses]]
    diag = pos[e1.k.map * e2.X.order]                       # (k1 a, 1)
    if (anti < 0).any() or (diag < 0).any():
        raise PostconditionFailed("antidiagonal is not in the pullback")
    Q, q = quotient(P, Subgroup(P, anti))
    f = factor_through(q, pb.p1.then(e1.f))
    k = GroupHom(A, Q, q.map[diag])
    out = central_extension(f, k)
    return out


def twist(e: CentralExtension) -> CentralExtension:
    """The same extension with kernel identified through ``a ↦ a^-1``."""
    return CentralExtension(e.f, GroupHom(e.A, e.X, e.k.map[e.A.inverses]))


def pushout_extension(e: CentralExtension, a: GroupHom) -> tuple:
    """Push e out along ``a: A → B`` (B abelian): ``(B × X)/{(a(κ), κ^-1)}``.

    Returns the extension and the ladder map ``X → P``."""
    if a.source != e.A:
        raise KernelMismatch("map does not start at the kernel")
    B = a.target
    if not B.is_abelian:
        raise ValidationError("pushout target must be abelian")
    prod = direct_product(B, e.X)
    P = prod.group
    inj = prod.i1, prod.i2
    kap = np.arange(e.A.order)
    rel = P.table[inj[0].map[a.map[kap]], inj[1].map[e.X.inverses[e.k.map[kap]]]]
    Q, q = quotient(P, Subgroup(P, rel))
    f = factor_through(q, prod.p2.then(e.f))
    if f is None:
        raise PostconditionFailed("pushout does not lie over Y")
    ext = central_extension(f, inj[0].then(q))
    ladder = inj[1].then(q)
    if not (np.array_equal(ladder.map[e.k.map], ext.k.map[a.map]) and
            np.array_equal(ext.f.map[ladder.map], e.f.map)):
        raise PostconditionFailed("pushout ladder does not commute")
    return ext, ladder


def class_of(e: CentralExtension, H: Optional[CocycleClassGroup] = None) -> tuple:
    H = H or cocycle_h2(e.Y, e.A)
    return H.classify(cocycle_from_extension(e))


def check_sum_matches_classes(H: CocycleClassGroup) -> bool:
    """Baer sums of all pairs of representative extensions land in the sum of
    their classes."""
    reps = [np.zeros((H.Y.order, H.Y.order), dtype=_INT)] + list(H.representatives)
    exts = [extension_from_cocycle(H.Y, H.A, c) for c in reps]
    cls = [H.classify(c) for c in reps]
    for i in range(len(exts)):
        for j in range(i, len(exts)):
            s = baer_sum(exts[i], exts[j])
            if class_of(s, H) != H.add(cls[i], cls[j]):
                return False
    return True


# -- universal coefficients -------------------------------------------------------

@dataclass
class ReconstructedH2:
    invariant_factors: List[int]
    probes: dict                       # (p, j) -> c_j
    assumption: str = "the universal coefficient sequence is exact on the right"


def h1_invariants(Y: FiniteGroup) -> List[int]:
    Ab, _ = abelianization(Y)
    return abelian_invariants(Ab)


def reconstruct_h2(Y: FiniteGroup) -> ReconstructedH2:
    """Invariant factors of ``H2(Y)`` from the orders of ``H²(Y, Z_{p^j})``.

    ``h_j = |H²(Y, Z_{p^j})| / |Ext(H1 Y, Z_{p^j})| = |Hom(H2 Y, Z_{p^j})|``
    and ``c_j = log_p(h_j / h_{j-1})`` counts the summands of order at
    least ``p^j``.
    """
    from .zoo import cyclic
    h1 = h1_invariants(Y)
    primary, probes = [], {}
    for p, v in sorted(factorize(Y.order).items()):
        prev, counts = 1, []
        for j in range(1, v + 2):
            Z = cyclic(p ** j)
            H = cocycle_h2(Y, Z)
            h, rem = divmod(H.order, order_of(ext_invariants(h1, [p ** j])))
            if rem or h % prev:
                raise PostconditionFailed("probe orders are inconsistent")
            c = _log(h // prev, p)
            probes[(p, j)] = c
            counts.append(c)
            prev = h
        if counts[-1]:
            raise PostconditionFailed("H2 has a summand beyond the order bound")
        for j in range(1, v + 1):
            primary.extend([p ** j] * (counts[j - 1] - counts[j]))
    return ReconstructedH2(invariant_factors(primary), probes)


def _log(x, p):
    e = 0
    while x > 1:
        if x % p:
            raise PostconditionFailed("probe ratio is not a power of p")
        x //= p
        e += 1
    return e


@dataclass
class UCTReport:
    h2_order: int
    h2_invariants: List[int]
    ext_invariants: List[int]
    hom_invariants: List[int]
    h1: List[int]
    h2_homology: List[int]
    order_identity: bool
    splits: bool

    def to_json(self):
        return {"H2": self.h2_invariants, "ext": self.ext_invariants,
                "hom": self.hom_invariants, "H1Y": self.h1, "H2Y": self.h2_homology,
                "orderIdentity": self.order_identity, "splits": self.splits}


def uct_check(Y: FiniteGroup, A: FiniteGroup) -> UCTReport:
    """``|H²(Y,A)| = |Ext(H1 Y, A)| |Hom(H2 Y, A)|``."""
    H = cocycle_h2(Y, A)
    a = abelian_invariants(A)
    h1 = h1_invariants(Y)
    h2 = reconstruct_h2(Y).invariant_factors
    ext = ext_invariants(h1, a)
    hom = hom_invariants(h2, a)
    ok = H.order == order_of(ext) * order_of(hom)
    splits = H.invariant_factors == invariant_factors(primary_orders(ext) + primary_orders(hom))
    return UCTReport(H.order, H.invariant_factors, ext, hom, h1, h2, ok, splits)


# -- Hochschild-Serre ---------------------------------------------------------------

def hom_group(B: FiniteGroup, A: FiniteGroup):
    """``Hom(B, A)`` for abelian A under pointwise addition, with the maps."""
    homs = find_homs(B, A)
    maps = np.array([h.map for h in homs], dtype=_INT).reshape(len(homs), B.order)
    index = {m.tobytes(): i for i, m in enumerate(maps)}
    table = np.empty((len(maps), len(maps)), dtype=_INT)
    for i, m in enumerate(maps):
        s = A.table[m[None, :], maps]
        table[i] = [index[r.tobytes()] for r in s]
    return FiniteGroup(table, check=True), maps, index


def _class_group(H: CocycleClassGroup) -> FiniteGroup:
    els = H.elements()
    index = {c: i for i, c in enumerate(els)}
    table = np.array([[index[H.add(a, b)] for b in els] for a in els], dtype=_INT)
    return FiniteGroup(table.reshape(len(els), len(els)), check=True), els, index


@dataclass
class HSReport:
    labels: List[str]
    groups: List[FiniteGroup]
    maps: List[GroupHom]
    exact: dict

    def orders(self):
        return [1] + [g.order for g in self.groups]

    def to_json(self):
        return {"labels": self.labels, "orders": self.orders(),
                "exact": self.exact, "maps": [m.map.tolist() for m in self.maps]}


def hochschild_serre_5term(k: GroupHom, f: GroupHom, A: FiniteGroup) -> HSReport:
    """``0 → Hom(Ab Y, A) → Hom(Ab X, A) → Hom(K/[K,X], A) → H²(Y, A) → H²(X, A)``."""
    check_short_exact(k, f)
    if not A.is_abelian:
        raise ValidationError("coefficients must be abelian")
    X, Y = f.source, f.target
    AbX, ex = abelianization(X)
    AbY, ey = abelianization(Y)
    Ab_f = factor_through(ex, f.then(ey))
    refl = centr_reflect(f)
    Kbar = refl.extension.A
    kbar = refl.extension.k
    # K/[K,X] → X/[K,X] → Ab X
    to_ab = factor_through(refl.unit, ex)
    m_in = kbar.then(to_ab)

    G1, M1, _ = hom_group(AbY, A)
    G2, M2, I2 = hom_group(AbX, A)
    G3, M3, I3 = hom_group(Kbar, A)
    HY = cocycle_h2(Y, A)
    HX = cocycle_h2(X, A)
    G4, E4, I4 = _class_group(HY)
    G5, E5, I5 = _class_group(HX)

    inf1 = GroupHom(G1, G2, [I2[m[Ab_f.map].tobytes()] for m in M1])
    res = GroupHom(G2, G3, [I3[m[m_in.map].tobytes()] for m in M2])
    tra_vals = []
    for m in M3:
        a = GroupHom(Kbar, A, m)
        ext, _ = pushout_extension(refl.extension, a)
        tra_vals.append(I4[HY.classify(cocycle_from_extension(ext))])
    tra = GroupHom(G3, G4, tra_vals)
    inf_vals = []
    for c in E4:
        table = HY.element(c)
        pulled = table[f.map[:, None], f.map[None, :]]
        inf_vals.append(I5[HX.classify(pulled)])
    inf2 = GroupHom(G4, G5, inf_vals)
    exact = {"Hom(AbY,A)": inf1.is_injective, "Hom(AbX,A)": is_exact_at(inf1, res),
             "Hom(K/[K,X],A)": is_exact_at(res, tra), "H2(Y,A)": is_exact_at(tra, inf2)}
    if not all(exact.values()):
        raise PostconditionFailed("five-term sequence is not exact", **exact)
    return HSReport(["Hom(AbY,A)", "Hom(AbX,A)", "Hom(K/[K,X],A)", "H2(Y,A)", "H2(X,A)"],
                    [G1, G2, G3, G4, G5], [inf1, res, tra, inf2], exact)


# -- perfect groups and universal central extensions -------------------------------

@dataclass
class UniversalReport:
    is_perfect: bool
    candidate_central: Optional[bool] = None
    candidate_perfect: Optional[bool] = None
    hom_counts: List[int] = field(default_factory=list)

    @property
    def is_universal(self):
        return bool(self.candidate_central and self.candidate_perfect and
                    all(c == 1 for c in self.hom_counts))

    def to_json(self):
        return {"isPerfect": self.is_perfect, "candidateCentral": self.candidate_central,
                "candidatePerfect": self.candidate_perfect, "homCounts": self.hom_counts,
                "universal": self.is_universal}


def homs_over(u: GroupHom, g: GroupHom) -> List[GroupHom]:
    """All homs ``φ`` with ``g ∘ φ = u``."""
    return find_homs(u.source, g.source, over=(u, g))


def is_perfect(G: FiniteGroup) -> bool:
    return derived_subgroup(G).order == G.order


def perfect_and_universal(Y: FiniteGroup, candidate: Optional[GroupHom] = None,
                          sample=()) -> UniversalReport:
    rep = UniversalReport(is_perfect(Y))
    if candidate is None:
        return rep
    if candidate.target != Y:
        raise ValidationError("candidate does not cover Y")
    rep.candidate_central = is_central(candidate)
    rep.candidate_perfect = is_perfect(candidate.source)
    for g in sample:
        gf = g.f if isinstance(g, CentralExtension) else g
        rep.hom_counts.append(len(homs_over(candidate, gf)))
    return rep
