"""Truncated simplicial groups: Moore complex, homology, horn fillers, Kan
fibrations, cycles and acyclicity, homotopies and the fundamental groupoid.

A tower of dimension D holds groups ``A_0 .. A_D``, faces ``∂_i: A_n → A_{n-1}``
for ``1 ≤ n ≤ D`` and degeneracies ``σ_i: A_n → A_{n+1}`` for ``n < D``.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .chain import (ChainMap, Homology, LongExactSequence, homology,
                    induced_on_homology, les_from_ses_of_complexes,
                    validate_proper_complex)
from .config import CONFIG
from .diagram import check_short_exact
from .errors import (DegreeOutOfRange, FillerPostconditionFailed, IdentityViolated,
                     NotAContraction, NotDegreewiseExact, NotProper,
                     NotSimplicialMorphism, PostconditionFailed, SearchBudgetExceeded,
                     SemiabError, ValidationError)
from .groups import (FiniteGroup, GroupHom, Subgroup, coequalizer, factor_through,
                     identity_hom, quotient, trivial_group, tuple_group, zero_hom)

_INT = np.int64


class SimplicialGroup:
    def __init__(self, groups, faces, degeneracies):
        self.groups: List[FiniteGroup] = list(groups)
        self.faces: List[List[GroupHom]] = [list(f) for f in faces]
        self.degeneracies: List[List[GroupHom]] = [list(s) for s in degeneracies]

    @property
    def dim(self):
        return len(self.groups) - 1

    def face(self, n, i) -> GroupHom:
        """``∂_i: A_n → A_{n-1}``."""
        return self.faces[n][i]

    def deg(self, n, i) -> GroupHom:
        """``σ_i: A_n → A_{n+1}``."""
        return self.degeneracies[n][i]

    def orders(self):
        return [g.order for g in self.groups]

    def to_json(self):
        return {"dim": self.dim, "orders": self.orders(),
                "faces": [[f.to_json() for f in fs] for fs in self.faces],
                "degeneracies": [[s.to_json() for s in ss] for ss in self.degeneracies]}


def _eq(f_map, g_map):
    return np.array_equal(f_map, g_map)


def validate_simplicial(groups, faces, degeneracies) -> SimplicialGroup:
    """Check shapes and every simplicial identity below the truncation.

    ``faces[n]`` lists ``∂_0..∂_n`` on ``A_n`` (``faces[0]`` empty) and
    ``degeneracies[n]`` lists ``σ_0..σ_n`` on ``A_n`` for ``n < D``.
    """
    A = SimplicialGroup(groups, faces, degeneracies)
    D = A.dim
    if len(A.faces) != D + 1 or len(A.degeneracies) != D:
        raise ValidationError("need face lists for degrees 0..D and degeneracy lists for 0..D-1")
    for n in range(1, D + 1):
        if len(A.faces[n]) != n + 1:
            raise ValidationError(f"degree {n} needs {n + 1} faces", n=n)
        for i, f in enumerate(A.faces[n]):
            if f.source != A.groups[n] or f.target != A.groups[n - 1]:
                raise ValidationError(f"face {i} in degree {n} has wrong source or target",
                                      n=n, i=i)
    for n in range(D):
        if len(A.degeneracies[n]) != n + 1:
            raise ValidationError(f"degree {n} needs {n + 1} degeneracies", n=n)
        for i, s in enumerate(A.degeneracies[n]):
            if s.source != A.groups[n] or s.target != A.groups[n + 1]:
                raise ValidationError(f"degeneracy {i} in degree {n} has wrong source or "
                                      "target", n=n, i=i)
    F = lambda n, i: A.faces[n][i].map
    S = lambda n, i: A.degeneracies[n][i].map
    for n in range(2, D + 1):
        for j in range(n + 1):
            for i in range(j):
                if not _eq(F(n - 1, i)[F(n, j)], F(n - 1, j - 1)[F(n, i)]):
                    raise IdentityViolated(f"∂_{i}∂_{j} != ∂_{j - 1}∂_{i} in degree {n}",
                                           name="face-face", n=n, i=i, j=j)
    for n in range(D - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                if not _eq(S(n + 1, i)[S(n, j)], S(n + 1, j + 1)[S(n, i)]):
                    raise IdentityViolated(f"σ_{i}σ_{j} != σ_{j + 1}σ_{i} in degree {n}",
                                           name="degeneracy-degeneracy", n=n, i=i, j=j)
    for n in range(D):
        ident = np.arange(A.groups[n].order)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = F(n + 1, i)[S(n, j)]
                if i < j:
                    rhs = S(n - 1, j - 1)[F(n, i)]
                elif i in (j, j + 1):
                    rhs = ident
                else:
                    rhs = S(n - 1, j)[F(n, i - 1)]
                if not _eq(lhs, rhs):
                    raise IdentityViolated(f"∂_{i}σ_{j} identity fails in degree {n}",
                                           name="face-degeneracy", n=n, i=i, j=j)
    return A


# -- standard towers ----------------------------------------------------------

def constant_tower(G: FiniteGroup, D=None) -> SimplicialGroup:
    D = CONFIG.sim_dim if D is None else D
    idh = identity_hom(G)
    return SimplicialGroup([G] * (D + 1), [[]] + [[idh] * (n + 1) for n in range(1, D + 1)],
                           [[idh] * (n + 1) for n in range(D)])


def trivial_tower(D=None) -> SimplicialGroup:
    return constant_tower(trivial_group(), D)


class SimplicialMorphism:
    def __init__(self, source: SimplicialGroup, target: SimplicialGroup, maps):
        self.source = source
        self.target = target
        self.maps: List[GroupHom] = list(maps)

    def __getitem__(self, n):
        return self.maps[n]

    @property
    def is_degreewise_surjective(self):
        return all(f.is_surjective for f in self.maps)

    @property
    def is_degreewise_injective(self):
        return all(f.is_injective for f in self.maps)


def check_simplicial_morphism(A, B, maps) -> SimplicialMorphism:
    maps = list(maps)
    if A.dim != B.dim or len(maps) != A.dim + 1:
        raise NotSimplicialMorphism("morphism needs one component per degree")
    for n, f in enumerate(maps):
        if f.source != A.groups[n] or f.target != B.groups[n]:
            raise NotSimplicialMorphism(f"component {n} has wrong source or target", n=n)
    for n in range(1, A.dim + 1):
        for i in range(n + 1):
            if not _eq(maps[n - 1].map[A.face(n, i).map], B.face(n, i).map[maps[n].map]):
                raise NotSimplicialMorphism(f"does not commute with ∂_{i} in degree {n}",
                                            n=n, i=i)
    for n in range(A.dim):
        for i in range(n + 1):
            if not _eq(maps[n + 1].map[A.deg(n, i).map], B.deg(n, i).map[maps[n].map]):
                raise NotSimplicialMorphism(f"does not commute with σ_{i} in degree {n}",
                                            n=n, i=i)
    return SimplicialMorphism(A, B, maps)


def identity_morphism(A):
    return SimplicialMorphism(A, A, [identity_hom(G) for G in A.groups])


def constant_morphism(f: GroupHom, D=None) -> SimplicialMorphism:
    A, B = constant_tower(f.source, D), constant_tower(f.target, D)
    return SimplicialMorphism(A, B, [f] * (A.dim + 1))


def kernel_tower(p: SimplicialMorphism):
    """The degreewise kernel of ``p`` with its inclusion."""
    A = p.source
    subs = [f.kernel() for f in p.maps]
    groups, incs = zip(*(s.as_group() for s in subs))
    faces = [[]]
    for n in range(1, A.dim + 1):
        faces.append([GroupHom(groups[n], groups[n - 1],
                               subs[n - 1].index_of(A.face(n, i).map[subs[n].array]),
                               check=False) for i in range(n + 1)])
    degs = []
    for n in range(A.dim):
        degs.append([GroupHom(groups[n], groups[n + 1],
                              subs[n + 1].index_of(A.deg(n, i).map[subs[n].array]),
                              check=False) for i in range(n + 1)])
    K = SimplicialGroup(groups, faces, degs)
    return K, SimplicialMorphism(K, A, incs)


def product_tower(A: SimplicialGroup, B: SimplicialGroup) -> SimplicialGroup:
    from .groups import direct_product, product_hom
    prods = [direct_product(a, b).group for a, b in zip(A.groups, B.groups)]
    faces = [[]] + [[product_hom(A.face(n, i), B.face(n, i), prods[n], prods[n - 1])
                     for i in range(n + 1)] for n in range(1, A.dim + 1)]
    degs = [[product_hom(A.deg(n, i), B.deg(n, i), prods[n], prods[n + 1])
             for i in range(n + 1)] for n in range(A.dim)]
    return SimplicialGroup(prods, faces, degs)


# -- Moore complex and homology --------------------------------------------------

@dataclass
class MooreComplex:
    tower: SimplicialGroup
    subgroups: List[Subgroup]         # N_n ⊆ A_n
    complex: "object"                 # ProperChainComplex on the N_n as groups


def moore_complex(A: SimplicialGroup) -> MooreComplex:
    subs = []
    for n in range(A.dim + 1):
        mask = np.ones(A.groups[n].order, dtype=bool)
        for i in range(n):
            mask &= A.face(n, i).map == 0
        subs.append(Subgroup(A.groups[n], np.nonzero(mask)[0], check=False))
    groups = [s.as_group()[0] for s in subs]
    bounds = []
    for n in range(1, A.dim + 1):
        img = A.face(n, n).map[subs[n].array]
        if not subs[n - 1].mask[img].all():
            raise PostconditionFailed("last face does not land in the Moore complex", n=n)
        bounds.append(GroupHom(groups[n], groups[n - 1], subs[n - 1].index_of(img),
                               check=False))
    try:
        C = validate_proper_complex(groups, bounds)
    except NotProper as exc:
        raise PostconditionFailed(f"Moore complex is not proper: {exc}", n=exc.which) from exc
    return MooreComplex(A, subs, C)


def simplicial_homology(A: SimplicialGroup, n: int, moore: Optional[MooreComplex] = None):
    """``H_n A`` for ``0 ≤ n ≤ D-1``."""
    if n < 0 or n > A.dim - 1:
        raise DegreeOutOfRange(f"homology is reported for degrees 0..{A.dim - 1}", n=n)
    M = moore or moore_complex(A)
    h = homology(M.complex, n)
    if n >= 1 and not h.H.is_abelian:
        raise PostconditionFailed(f"H_{n} is not abelian", n=n)
    if n == 0:
        # H_0 as the coequalizer of ∂_0, ∂_1 must be the same quotient of A_0
        Q, q = coequalizer(A.face(1, 0), A.face(1, 1))
        B0 = Subgroup(A.groups[0], np.unique(A.face(1, 1).map[M.subgroups[1].array]),
                      check=False)
        if q.kernel() != B0:
            raise PostconditionFailed("H_0 differs from the coequalizer of ∂_0, ∂_1")
    return h.H


def all_homology(A: SimplicialGroup):
    M = moore_complex(A)
    return [simplicial_homology(A, n, M) for n in range(A.dim)]


def induced_homology_maps(p: SimplicialMorphism):
    """``H_n p`` for ``n ≤ D-1``."""
    MA, MB = moore_complex(p.source), moore_complex(p.target)
    out = []
    for n in range(p.source.dim):
        hA, hB = homology(MA.complex, n), homology(MB.complex, n)
        NA, NB = MA.subgroups[n], MB.subgroups[n]
        img = p[n].map[NA.array]
        if not NB.mask[img].all():
            raise PostconditionFailed("morphism does not preserve Moore complexes", n=n)
        fn = GroupHom(hA.cycles.parent, hB.cycles.parent, NB.index_of(img), check=False)
        out.append(induced_on_homology(hA, hB, fn))
    return out


# -- horns and fillers --------------------------------------------------------------

@dataclass
class Horn:
    n: int
    k: int
    faces: Dict[int, int]          # i -> element of A_{n-1}, i != k


def check_horn(A: SimplicialGroup, horn: Horn) -> Horn:
    n, k = horn.n, horn.k
    if not (1 <= n <= A.dim and 0 <= k <= n):
        raise DegreeOutOfRange("horn outside the truncation", n=n, k=k)
    if sorted(horn.faces) != [i for i in range(n + 1) if i != k]:
        raise ValidationError("horn must give every face except the k-th", n=n, k=k)
    for j in horn.faces:
        for i in horn.faces:
            if i < j and n >= 2:
                if A.face(n - 1, i)(horn.faces[j]) != A.face(n - 1, j - 1)(horn.faces[i]):
                    raise ValidationError(f"horn faces {i}, {j} are not compatible",
                                          i=i, j=j)
    return horn


def _fill(A: SimplicialGroup, n, k, xs):
    """Vectorized filler: ``xs`` maps each ``i != k`` to an array of elements."""
    G = A.groups[n]
    T, inv = G.table, G.inverses
    size = len(next(iter(xs.values()))) if xs else 1
    y = np.zeros(size, dtype=_INT)
    Tl = A.groups[n - 1]
    for i in range(k):
        e = Tl.table[Tl.inverses[A.face(n, i).map[y]], xs[i]]
        y = T[y, A.deg(n - 1, i).map[e]]
    for i in range(n, k, -1):
        e = Tl.table[Tl.inverses[A.face(n, i).map[y]], xs[i]]
        y = T[y, A.deg(n - 1, i - 1).map[e]]
    return y


def horn_fill(A: SimplicialGroup, horn: Horn) -> int:
    """A simplex whose faces other than the k-th are the horn's faces."""
    check_horn(A, horn)
    xs = {i: np.array([x], dtype=_INT) for i, x in horn.faces.items()}
    y = int(_fill(A, horn.n, horn.k, xs)[0])
    for i, x in horn.faces.items():
        if A.face(horn.n, i)(y) != x:
            raise FillerPostconditionFailed(f"filler has wrong face {i}", i=i, n=horn.n,
                                            k=horn.k)
    return y


def _join(row_keys, elem_keys):
    """Pairs ``(row, elem)`` with equal key rows."""
    if row_keys.shape[1] == 0:
        r = np.repeat(np.arange(len(row_keys)), len(elem_keys))
        e = np.tile(np.arange(len(elem_keys)), len(row_keys))
        return r, e
    allk = np.vstack([row_keys, elem_keys])
    _, ids = np.unique(allk, axis=0, return_inverse=True)
    ids = ids.ravel()
    rid, eid = ids[:len(row_keys)], ids[len(row_keys):]
    order = np.argsort(eid, kind="stable")
    sorted_e = eid[order]
    lo = np.searchsorted(sorted_e, rid, side="left")
    hi = np.searchsorted(sorted_e, rid, side="right")
    counts = hi - lo
    r = np.repeat(np.arange(len(row_keys)), counts)
    starts = np.repeat(lo, counts)
    offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    e = order[starts + offs]
    return r, e


def compatible_families(A: SimplicialGroup, m: int, indices, budget=None):
    """All families ``(x_i)_{i ∈ indices}`` in ``A_{m-1}`` with
    ``∂_i x_j = ∂_{j-1} x_i`` for ``i < j``; one row per family."""
    budget = CONFIG.horn_budget if budget is None else budget
    indices = list(indices)
    N = A.groups[m - 1].order
    rows = np.zeros((1, 0), dtype=_INT)
    for pos, j in enumerate(indices):
        prev = indices[:pos]
        if m >= 2 and prev:
            row_keys = np.stack([A.face(m - 1, j - 1).map[rows[:, p]]
                                 for p, i in enumerate(prev)], axis=1)
            elem_keys = np.stack([A.face(m - 1, i).map for i in prev], axis=1)
            r, e = _join(row_keys, elem_keys)
        else:
            r = np.repeat(np.arange(len(rows)), N)
            e = np.tile(np.arange(N), len(rows))
        if len(r) > budget:
            raise SearchBudgetExceeded(f"more than {budget} partial families", budget=budget)
        rows = np.hstack([rows[r], e[:, None]])
    return rows


def enumerate_horns(A: SimplicialGroup, n: int, k: int):
    return compatible_families(A, n, [i for i in range(n + 1) if i != k])


def check_all_horns(A: SimplicialGroup):
    """Fill every horn of every shape up to the truncation and verify faces.

    Returns the number of horns filled.
    """
    count = 0
    for n in range(1, A.dim + 1):
        for k in range(n + 1):
            idx = [i for i in range(n + 1) if i != k]
            H = enumerate_horns(A, n, k)
            xs = {i: H[:, p] for p, i in enumerate(idx)}
            y = _fill(A, n, k, xs)
            for p, i in enumerate(idx):
                bad = np.nonzero(A.face(n, i).map[y] != H[:, p])[0]
                if len(bad):
                    raise FillerPostconditionFailed(
                        f"filler of a ({n},{k})-horn has wrong face {i}", n=n, k=k, i=i,
                        horn=H[bad[0]].tolist())
            count += len(H)
    return count


def _dense_ids(*arrays):
    """Joint dense ids for rows of several 2-d arrays."""
    allk = np.vstack(arrays)
    if allk.shape[1] == 0:
        return [np.zeros(len(a), dtype=_INT) for a in arrays]
    _, ids = np.unique(allk, axis=0, return_inverse=True)
    ids = ids.ravel()
    out, start = [], 0
    for a in arrays:
        out.append(ids[start:start + len(a)])
        start += len(a)
    return out


def is_kan_fibration(p: SimplicialMorphism) -> bool:
    """Exhaustive horn lifting up to the truncation: every horn in the source
    together with a filler of its image lifts to a filler in the source."""
    A, B = p.source, p.target
    for n in range(1, A.dim + 1):
        for k in range(n + 1):
            idx = [i for i in range(n + 1) if i != k]
            H = enumerate_horns(A, n, k)
            fA = np.stack([A.face(n, i).map for i in idx], axis=1)
            fB = np.stack([B.face(n, i).map for i in idx], axis=1)
            pH = p[n - 1].map[H]
            hid, yid = _dense_ids(H, fA)
            pid, bid = _dense_ids(pH, fB)
            nb = B.groups[n].order
            available = np.unique(yid * nb + p[n].map)
            r, e = _join(pid[:, None], bid[:, None])
            needed = hid[r] * nb + e
            if not np.isin(needed, available).all():
                return False
    return True


# -- cycles and acyclicity ------------------------------------------------------

def nabla_families(A: SimplicialGroup, n: int):
    """``∇_n A`` as rows of ``A_n^{n+2}``."""
    if n < 0 or n > A.dim - 1:
        raise DegreeOutOfRange(f"∇_{n} needs degree {n + 1} data", n=n)
    return compatible_families(A, n + 1, range(n + 2))


def nabla_cycles(A: SimplicialGroup, n: int):
    """``∇_n A`` as a group with its ``n+2`` projections to ``A_n``."""
    rows = nabla_families(A, n)
    G, coords = tuple_group([A.groups[n]] * (n + 2), rows)
    return G, [GroupHom(G, A.groups[n], coords[:, i], check=False) for i in range(n + 2)]


def boundary_families(A: SimplicialGroup, n: int):
    """Rows ``(∂_0 y, …, ∂_{n+1} y)`` for ``y ∈ A_{n+1}``."""
    return np.stack([A.face(n + 1, i).map for i in range(n + 2)], axis=1)


def nabla_surjective(A: SimplicialGroup, n: int) -> bool:
    cyc = nabla_families(A, n)
    bnd = boundary_families(A, n)
    cid, bid = _dense_ids(cyc, bnd)
    return len(np.unique(cid)) == len(cyc) and bool(np.isin(cid, bid).all())


@dataclass
class AcyclicityReport:
    truncation: int                   # criteria checked for n ≤ truncation
    nabla_surjective: List[bool]
    homology_trivial: List[bool]
    acyclic: bool


def acyclicity_check(A: SimplicialGroup) -> AcyclicityReport:
    """``(∂_i): A_{n+1} → ∇_n A`` surjective for all ``n ≤ D-2``, checked
    against vanishing homology. By induction on n, given ``H_i = 0`` for
    ``i < n`` the n-th map is onto exactly when ``H_n = 0``, so the two
    prefixes must agree at every length."""
    top = A.dim - 2
    M = moore_complex(A)
    nab = [nabla_surjective(A, n) for n in range(top + 1)]
    hom = [homology(M.complex, n).is_trivial for n in range(top + 1)]
    for m in range(top + 1):
        if all(nab[:m + 1]) != all(hom[:m + 1]):
            raise PostconditionFailed(f"∇-criterion and homology disagree up to degree {m}",
                                      m=m)
    return AcyclicityReport(top, nab, hom, all(nab))


@dataclass
class FibrationReport:
    is_kan_fibration: bool
    is_degreewise_surjective: bool
    squares: List[bool]               # RegEpi-pushout verdict per n ≤ D-2
    is_acyclic_fibration: bool
    truncation: int


def _square_is_regepi_pushout(p: SimplicialMorphism, n: int) -> bool:
    """Comparison ``E_{n+1} → ∇_n E ×_{∇_n B} B_{n+1}`` is onto and ``∇_n p``
    is onto."""
    E, B = p.source, p.target
    cE = nabla_families(E, n)
    cB = nabla_families(B, n)
    bB = boundary_families(B, n)
    pc = p[n].map[cE]
    pcid, cBid, bBid = _dense_ids(pc, cB, bB)
    if not np.isin(cBid, pcid).all():
        return False
    # size of the pullback: Σ over cycles c of #{b : ∂b = ∇p(c)}
    ub, counts = np.unique(bBid, return_counts=True)
    pos = np.searchsorted(ub, pcid)
    pos = np.minimum(pos, len(ub) - 1)
    hits = np.where(ub[pos] == pcid, counts[pos], 0)
    pb_size = int(hits.sum())
    # image of the comparison
    bE = boundary_families(E, n)
    eid, cEid = _dense_ids(bE, cE)
    nb = B.groups[n + 1].order
    img = np.unique(eid * nb + p[n + 1].map)
    return len(img) == pb_size


def fibration_diagnostics(p: SimplicialMorphism) -> FibrationReport:
    kan = is_kan_fibration(p)
    surj = p.is_degreewise_surjective
    top = p.source.dim - 2
    squares = [_square_is_regepi_pushout(p, n) for n in range(top + 1)]
    acyclic = surj and all(squares)
    if surj:
        # the n-th square is a RegEpi-pushout iff the kernel's n-th ∇-map is onto
        K, _ = kernel_tower(p)
        kn = [nabla_surjective(K, n) for n in range(top + 1)]
        if kn != squares:
            raise PostconditionFailed("square criterion disagrees with the kernel tower")
        if not kan:
            raise PostconditionFailed("a degreewise surjection failed horn lifting")
    return FibrationReport(kan, surj, squares, acyclic, top)


# -- short exact sequences of towers -------------------------------------------------

def moore_chain_map(p: SimplicialMorphism, MA: MooreComplex, MB: MooreComplex):
    maps = []
    for n in range(p.source.dim + 1):
        NA, NB = MA.subgroups[n], MB.subgroups[n]
        img = p[n].map[NA.array]
        if not NB.mask[img].all():
            raise PostconditionFailed("morphism does not preserve Moore complexes", n=n)
        maps.append(GroupHom(MA.complex.group(n), MB.complex.group(n), NB.index_of(img),
                             check=False))
    return maps


def les_from_ses_of_simplicial(k: SimplicialMorphism, p: SimplicialMorphism
                               ) -> LongExactSequence:
    """Long exact homology sequence of ``0 → K → A → B → 0``; the Moore
    functor is checked to carry it to a short exact sequence of complexes."""
    if k.target is not p.source and k.target.groups != p.source.groups:
        raise ValidationError("morphisms are not composable")
    for n in range(k.source.dim + 1):
        try:
            check_short_exact(k[n], p[n])
        except SemiabError as exc:
            raise NotDegreewiseExact(f"degree {n} is not short exact: {exc}", n=n) from exc
    MK, MA, MB = (moore_complex(T) for T in (k.source, k.target, p.target))
    fk, fp = moore_chain_map(k, MK, MA), moore_chain_map(p, MA, MB)
    for n in range(len(fk)):
        try:
            check_short_exact(fk[n], fp[n])
        except SemiabError as exc:
            raise PostconditionFailed(f"Moore functor breaks exactness in degree {n}",
                                      n=n) from exc
    return les_from_ses_of_complexes(MK.complex, MA.complex, MB.complex, fk, fp)


# -- contractions ---------------------------------------------------------------

@dataclass
class ContractionReport:
    H0_matches: bool
    higher_trivial: List[bool]
    truncation: int

    @property
    def ok(self):
        return self.H0_matches and all(self.higher_trivial)


def contractible_check(A: SimplicialGroup, eps: GroupHom, f_minus: GroupHom,
                       fs: List[GroupHom]) -> ContractionReport:
    """Check the contraction equations for ``ε: A_0 → A_{-1}``, ``f_{-1}``
    and ``f_n: A_n → A_{n+1}`` (``n < D``), then the homology they predict."""
    D = A.dim
    if len(fs) != D:
        raise ValidationError("need contraction maps f_0 .. f_{D-1}")
    Am = eps.target
    if D >= 1 and not _eq(eps.map[A.face(1, 0).map], eps.map[A.face(1, 1).map]):
        raise NotAContraction("ε does not coequalize ∂_0, ∂_1", which="augmentation")
    if not _eq(eps.map[f_minus.map], np.arange(Am.order)):
        raise NotAContraction("ε ∘ f_{-1} != 1", which="eps-f")
    if D >= 1 and not _eq(A.face(1, 0).map[fs[0].map], f_minus.map[eps.map]):
        raise NotAContraction("∂_0 f_0 != f_{-1} ε", which="d0-f0")
    for n in range(D):
        if not _eq(A.face(n + 1, n + 1).map[fs[n].map], np.arange(A.groups[n].order)):
            raise NotAContraction(f"∂_{n + 1} f_{n} != 1", which="top-face", n=n)
        for i in range(n + 1):
            if n == 0:
                continue
            if not _eq(A.face(n + 1, i).map[fs[n].map], fs[n - 1].map[A.face(n, i).map]):
                raise NotAContraction(f"∂_{i} f_{n} != f_{n - 1} ∂_{i}", which="face-commute",
                                      n=n, i=i)
    M = moore_complex(A)
    Q, q = coequalizer(A.face(1, 0), A.face(1, 1)) if D >= 1 else (A.groups[0], identity_hom(A.groups[0]))
    ebar = factor_through(q, eps)
    h0 = ebar is not None and ebar.is_iso
    higher = [homology(M.complex, n).is_trivial for n in range(1, D)]
    return ContractionReport(bool(h0), higher, D - 1)


def degeneracy_contraction(G: FiniteGroup, D=None):
    """Constant tower on G, augmented by the identity, with ``f_n = σ``."""
    A = constant_tower(G, D)
    idh = identity_hom(G)
    return A, idh, idh, [idh] * A.dim


# -- homotopies ----------------------------------------------------------------

class SimplicialHomotopy:
    """Maps ``h[n][j]: A_n → B_{n+1}`` for ``j ≤ n < D``."""

    def __init__(self, maps):
        self.maps: List[List[GroupHom]] = [list(m) for m in maps]

    def __getitem__(self, nj):
        n, j = nj
        return self.maps[n][j]


def homotopy_check(h: SimplicialHomotopy, f: SimplicialMorphism, g: SimplicialMorphism):
    """Check every homotopy identity from ``f`` to ``g`` below the truncation."""
    A, B = f.source, f.target
    D = A.dim
    H = lambda n, j: h.maps[n][j].map
    if len(h.maps) != D or any(len(h.maps[n]) != n + 1 for n in range(D)):
        raise ValidationError("homotopy needs maps h_0..h_n in each degree n < D")
    for n in range(D):
        for j in range(n + 1):
            hm = h.maps[n][j]
            if hm.source != A.groups[n] or hm.target != B.groups[n + 1]:
                raise ValidationError(f"h_{j} in degree {n} has wrong source or target")
    for n in range(D):
        if not _eq(B.face(n + 1, 0).map[H(n, 0)], f[n].map):
            raise IdentityViolated("∂_0 h_0 != f", name="d0-h0", n=n, i=0, j=0)
        if not _eq(B.face(n + 1, n + 1).map[H(n, n)], g[n].map):
            raise IdentityViolated("∂_{n+1} h_n != g", name="dtop-htop", n=n, i=n + 1, j=n)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = B.face(n + 1, i).map[H(n, j)]
                if i < j:
                    rhs = H(n - 1, j - 1)[A.face(n, i).map]
                elif i == j and i != 0:
                    rhs = B.face(n + 1, i).map[H(n, i - 1)]
                elif i > j + 1:
                    rhs = H(n - 1, j)[A.face(n, i - 1).map]
                else:
                    continue
                if not _eq(lhs, rhs):
                    raise IdentityViolated(f"face identity for ∂_{i} h_{j} fails",
                                           name="face-homotopy", n=n, i=i, j=j)
    for n in range(D - 1):
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = B.deg(n + 1, i).map[H(n, j)]
                if i <= j:
                    rhs = H(n + 1, j + 1)[A.deg(n, i).map]
                else:
                    rhs = H(n + 1, j)[A.deg(n, i - 1).map]
                if not _eq(lhs, rhs):
                    raise IdentityViolated(f"degeneracy identity for σ_{i} h_{j} fails",
                                           name="degeneracy-homotopy", n=n, i=i, j=j)
    return True


def degeneracy_homotopy(f: SimplicialMorphism) -> SimplicialHomotopy:
    """``h_j = σ_j ∘ f_n``, a homotopy from f to itself."""
    B = f.target
    return SimplicialHomotopy([[f[n].then(B.deg(n, j)) for j in range(n + 1)]
                               for n in range(f.source.dim)])


def homology_agreement(f: SimplicialMorphism, g: SimplicialMorphism,
                       h: Optional[SimplicialHomotopy] = None) -> List[bool]:
    """Per degree ``n ≤ D-1``, whether ``H_n f = H_n g``; with a homotopy
    given, it is checked first and agreement is required."""
    if h is not None:
        homotopy_check(h, f, g)
    hf, hg = induced_homology_maps(f), induced_homology_maps(g)
    same = [bool(np.array_equal(a.map, b.map)) for a, b in zip(hf, hg)]
    if h is not None and not all(same):
        raise PostconditionFailed("homotopic morphisms induce different homology maps")
    return same


# -- fundamental groupoid ----------------------------------------------------------

def fundamental_groupoid(A: SimplicialGroup):
    """``A_1 / I`` over ``A_0``, with ``I`` the image of the Moore boundary
    ``N_2 A → A_1``; returns ``(internal category, quotient map A_1 → arrows)``."""
    from .xmod import InternalCategory, validate_internal_category
    if A.dim < 3:
        raise DegreeOutOfRange("the fundamental groupoid needs dimension at least 3")
    M = moore_complex(A)
    N2 = M.subgroups[2]
    I = Subgroup(A.groups[1], np.unique(A.face(2, 2).map[N2.array]), check=False)
    if not I.is_normal:
        raise PostconditionFailed("image of the Moore boundary is not normal in A_1")
    Q, q = quotient(A.groups[1], I)
    d0 = factor_through(q, A.face(1, 1))      # source
    d1 = factor_through(q, A.face(1, 0))      # target
    if d0 is None or d1 is None:
        raise PostconditionFailed("faces do not descend to the quotient")
    i = A.deg(0, 0).then(q)
    C = validate_internal_category(A.groups[0], Q, d0, d1, i)
    # degree-2 unit: q∂_2 z then q∂_0 z composes to q∂_1 z
    a = q.map[A.face(2, 2).map]
    b = q.map[A.face(2, 0).map]
    if not np.array_equal(C.compose(a, b), q.map[A.face(2, 1).map]):
        raise PostconditionFailed("quotient map is not compatible with 2-simplices")
    return C, q
