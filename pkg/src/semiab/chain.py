"""Proper chain complexes of finite groups, their homology and long exact
homology sequences."""

from dataclasses import dataclass, field
from typing import List

import numpy as np

from .config import CONFIG
from .diagram import ShortExactSequence, check_ladder, check_short_exact, snake
from .errors import (CompositeNotZero, DegreeOutOfRange, NotCommuting,
                     NotDegreewiseExact, NotProper, PostconditionFailed, SemiabError,
                     ValidationError)
from .groups import (FiniteGroup, GroupHom, Subgroup, factor_through, quotient,
                     trivial_group, zero_hom)


class ProperChainComplex:
    """``C_D → … → C_1 → C_0`` with ``boundaries[n-1] = d_n: C_n → C_{n-1}``."""

    def __init__(self, groups: List[FiniteGroup], boundaries: List[GroupHom]):
        self.groups = list(groups)
        self.boundaries = list(boundaries)

    @property
    def length(self):
        return len(self.groups) - 1

    def d(self, n) -> GroupHom:
        """``d_n``; zero outside ``1..D``."""
        if 1 <= n <= self.length:
            return self.boundaries[n - 1]
        if n == self.length + 1:
            return zero_hom(trivial_group(), self.groups[-1])
        if n == 0:
            return zero_hom(self.groups[0], trivial_group())
        raise DegreeOutOfRange(f"no boundary in degree {n}", n=n)

    def group(self, n):
        return self.groups[n]

    def is_exact_at(self, n) -> bool:
        return self.d(n + 1).image() == self.d(n).kernel()

    def to_json(self):
        return {"orders": [g.order for g in self.groups],
                "boundaries": [d.to_json() for d in self.boundaries]}


def validate_proper_complex(groups, boundaries) -> ProperChainComplex:
    groups = list(groups)
    boundaries = list(boundaries)
    if not groups:
        raise ValidationError("a complex needs at least one group")
    if len(boundaries) != len(groups) - 1:
        raise ValidationError("need exactly one boundary per positive degree")
    if len(groups) - 1 > CONFIG.max_degree:
        raise DegreeOutOfRange(f"length {len(groups) - 1} exceeds cap {CONFIG.max_degree}")
    for n, d in enumerate(boundaries, start=1):
        if d.source != groups[n] or d.target != groups[n - 1]:
            raise ValidationError(f"d_{n} has the wrong source or target", n=n)
    for n in range(1, len(boundaries)):
        dn, dn1 = boundaries[n - 1], boundaries[n]
        if dn.map[dn1.map].any():
            raise CompositeNotZero(f"d_{n} ∘ d_{n + 1} is not trivial", n=n)
    for n, d in enumerate(boundaries, start=1):
        if not d.is_proper:
            raise NotProper(f"image of d_{n} is not normal", which=n, n=n)
    return ProperChainComplex(groups, boundaries)


@dataclass
class Homology:
    """Degree-n homology, computed both as ``Z_n / B_n`` and as the kernel
    of the map induced by ``d_n`` on ``C_n / B_n``."""
    n: int
    cycles: Subgroup          # Z_n = ker d_n in C_n
    boundaries: Subgroup      # B_n = im d_{n+1} in C_n
    H: FiniteGroup
    proj: np.ndarray          # C_n id -> H id, valid on cycles, -1 elsewhere
    K: FiniteGroup
    lam: GroupHom             # λ_n: H_n → K_n

    @property
    def lambda_is_iso(self):
        return self.lam.is_iso

    @property
    def is_trivial(self):
        return self.H.order == 1

    def class_of(self, x):
        return self.proj[x]

    @property
    def representatives(self):
        """Least cycle in each class."""
        reps = np.full(self.H.order, -1, dtype=np.int64)
        zs = self.cycles.array
        reps[self.proj[zs][::-1]] = zs[::-1]
        return reps


def homology(C: ProperChainComplex, n: int) -> Homology:
    if n < 0 or n > C.length:
        raise DegreeOutOfRange(f"degree {n} outside 0..{C.length}", n=n)
    Cn = C.group(n)
    Z = C.d(n).kernel()
    B = C.d(n + 1).image()
    if not B <= Z:
        raise CompositeNotZero("boundaries are not cycles", n=n)
    # H_n: cokernel of C_{n+1} → Z_n
    Zg, _ = Z.as_group()
    Bz = Subgroup(Zg, Z.index_of(B.array), check=False)
    H, pH = quotient(Zg, Bz)
    proj = np.full(Cn.order, -1, dtype=np.int64)
    proj[Z.array] = pH.map
    # K_n: kernel of C_n / B_n → C_{n-1}
    Q, q = quotient(Cn, B)
    dbar = factor_through(q, C.d(n))
    if dbar is None:
        raise PostconditionFailed("boundary does not descend to the cokernel", n=n)
    Ksub = dbar.kernel()
    Kg, _ = Ksub.as_group()
    # λ_n sends the class of z to q(z)
    reps = np.full(H.order, -1, dtype=np.int64)
    reps[pH.map[::-1]] = Z.array[::-1]
    lam = GroupHom(H, Kg, Ksub.index_of(q.map[reps]))
    if not lam.is_iso:
        raise PostconditionFailed(f"H_{n} → K_{n} is not an isomorphism", n=n)
    return Homology(n, Z, B, H, proj, Kg, lam)


def induced_on_homology(hA: Homology, hB: Homology, f: GroupHom) -> GroupHom:
    """``H_n(f)``; checks that every cycle representative gives the same class."""
    imgs = hB.proj[f.map[hA.cycles.array]]
    if (imgs < 0).any():
        raise NotCommuting("chain map does not send cycles to cycles")
    m = np.full(hA.H.order, -1, dtype=np.int64)
    cls = hA.proj[hA.cycles.array]
    m[cls] = imgs
    if not np.array_equal(m[cls], imgs):
        raise PostconditionFailed("induced map on homology is not well defined")
    return GroupHom(hA.H, hB.H, m)


class ChainMap:
    def __init__(self, source: ProperChainComplex, target: ProperChainComplex, maps):
        self.source = source
        self.target = target
        self.maps = list(maps)

    def __getitem__(self, n):
        return self.maps[n]


def check_chain_map(source, target, maps) -> ChainMap:
    if len(maps) != len(source.groups) or source.length != target.length:
        raise ValidationError("chain map needs one component per degree")
    for n, f in enumerate(maps):
        if f.source != source.group(n) or f.target != target.group(n):
            raise ValidationError(f"component {n} has the wrong source or target", n=n)
    for n in range(1, source.length + 1):
        if not np.array_equal(maps[n - 1].map[source.d(n).map],
                              target.d(n).map[maps[n].map]):
            raise NotCommuting(f"chain map does not commute with d_{n}", n=n)
    return ChainMap(source, target, maps)


@dataclass
class LongExactSequence:
    """Nodes listed from the top degree down to ``H_0`` of the quotient."""
    labels: List[str]
    groups: List[FiniteGroup]
    maps: List[GroupHom]              # maps[i]: groups[i] → groups[i+1]
    exact: List[bool]                 # exactness at every node, ends included
    deltas: dict = field(default_factory=dict)
    routes_agree: bool = True

    @property
    def all_exact(self):
        return all(self.exact)

    def orders(self):
        return [g.order for g in self.groups]


def _exactness_along(groups, maps):
    """Exactness at each node of ``0 → g0 → g1 → … → g_last → 0``."""
    out = []
    for i in range(len(groups)):
        inc = maps[i - 1] if i > 0 else None
        outg = maps[i] if i < len(maps) else None
        img = inc.image() if inc is not None else groups[i].trivial()
        ker = outg.kernel() if outg is not None else groups[i].whole()
        out.append(img == ker)
    return out


def _cycles_quotient(C, n):
    """``C_n / B_n`` with projection, and ``Z_{n-1}`` as a group with inclusion."""
    return quotient(C.group(n), C.d(n + 1).image())


def _connecting_direct(hA, hB, hC, CA, CB, f, g, n, hA_prev):
    """δ_n: H_n(C) → H_{n-1}(A) by chasing every representative and preimage."""
    dB = CB.d(n)
    finv = np.full(CB.group(n - 1).order, -1, dtype=np.int64)
    finv[f[n - 1].map] = np.arange(f[n - 1].source.order)
    out = np.full(hC.H.order, -1, dtype=np.int64)
    gmap = g[n].map
    for c in hC.cycles.array:
        cls = hC.proj[c]
        pre = np.nonzero(gmap == c)[0]
        a = finv[dB.map[pre]]
        if (a < 0).any():
            raise PostconditionFailed("chase left the image of f", n=n)
        vals = np.unique(hA_prev.proj[a])
        if len(vals) != 1 or (out[cls] >= 0 and out[cls] != vals[0]):
            raise PostconditionFailed("connecting map depends on choices", n=n)
        out[cls] = vals[0]
    return GroupHom(hC.H, hA_prev.H, out)


def _connecting_snake(CA, CB, CC, f, g, n, hC, hA_prev):
    """δ_n from the snake on ``C_n/B_n → Z_{n-1}`` and the induced iso
    ``H_n ≅ K_n``."""
    tops, bots, verts = [], [], []
    for X in (CA, CB, CC):
        Q, q = _cycles_quotient(X, n)
        Z = X.d(n - 1).kernel()
        Zg, zinc = Z.as_group()
        dbar = factor_through(q, X.d(n))
        vert = GroupHom(Q, Zg, Z.index_of(dbar.map))
        tops.append((Q, q))
        bots.append((Zg, Z))
        verts.append(vert)
    # rows induced by f and g
    def on_quot(i, h):
        return factor_through(tops[i][1], h.then(tops[i + 1][1]))

    def on_cycles(i, h):
        Zs, Zt = bots[i][1], bots[i + 1][1]
        return GroupHom(bots[i][0], bots[i + 1][0], Zt.index_of(h.map[Zs.array]))
    top = ShortExactSequence(on_quot(0, f[n]), on_quot(1, g[n]))
    bottom = ShortExactSequence(on_cycles(0, f[n - 1]), on_cycles(1, g[n - 1]))
    lad = check_ladder(top, bottom, *verts)
    s = snake(lad)
    if not s.delta_choice_independent:
        raise PostconditionFailed("snake connecting map depends on choices", n=n)
    # K[w] ⊆ C_n(C)/B_n is λ(H_n C); translate back to classes of H_n(C)
    Kw = verts[2].kernel()
    lam_img = Kw.index_of(tops[2][1].map[hC.representatives])
    dq = s.delta.map[lam_img]                   # ids in Z_{n-1}(A)/B_{n-1}(A) via snake
    # snake cokernel is Z_{n-1}A / im(vert) with min-rep labels; map to H_{n-1}A
    ZA = bots[0][1]
    img = verts[0].image()
    Qu, qu = quotient(bots[0][0], img)
    reps = np.full(Qu.order, -1, dtype=np.int64)
    reps[qu.map[::-1]] = np.arange(bots[0][0].order)[::-1]
    return hA_prev.proj[ZA.array[reps[dq]]]


def les_from_ses_of_complexes(A: ProperChainComplex, B: ProperChainComplex,
                              C: ProperChainComplex, f, g) -> LongExactSequence:
    """Long exact homology sequence of ``0 → A → B → C → 0``.

    ``f`` and ``g`` are lists of degreewise homs. δ_n is computed twice, by
    the snake construction and by a direct chase, and the two must agree.
    """
    f = check_chain_map(A, B, f)
    g = check_chain_map(B, C, g)
    for n in range(A.length + 1):
        try:
            check_short_exact(f[n], g[n])
        except SemiabError as exc:
            raise NotDegreewiseExact(f"degree {n} is not short exact: {exc}", n=n) from exc
    D = A.length
    hs = {X: [homology(Y, n) for n in range(D + 1)] for X, Y in (("A", A), ("B", B), ("C", C))}
    labels, groups, maps = [], [], []
    deltas = {}
    agree = True
    for n in range(D, -1, -1):
        hA, hB, hC = hs["A"][n], hs["B"][n], hs["C"][n]
        if groups:
            # δ_{n+1}: H_{n+1}(C) → H_n(A)
            maps.append(deltas[n + 1])
        labels += [f"H{n}(A)", f"H{n}(B)", f"H{n}(C)"]
        groups += [hA.H, hB.H, hC.H]
        maps += [induced_on_homology(hA, hB, f[n]), induced_on_homology(hB, hC, g[n])]
        if n >= 1:
            d1 = _connecting_direct(hA, hB, hC, A, B, f, g, n, hs["A"][n - 1])
            d2 = _connecting_snake(A, B, C, f, g, n, hC, hs["A"][n - 1])
            agree &= bool(np.array_equal(d1.map, d2))
            deltas[n] = d1
    exact = _exactness_along(groups, maps)
    if not agree:
        raise PostconditionFailed("snake and direct connecting maps disagree")
    return LongExactSequence(labels, groups, maps, exact, deltas, agree)
