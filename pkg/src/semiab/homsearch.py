"""Exhaustive homomorphism search by extension from generator images."""

import random
from functools import lru_cache

import numpy as np

from .config import CONFIG
from .errors import SearchBudgetExceeded, ValidationError
from .groups import FiniteGroup, GroupHom, center, derived_subgroup

_INT = np.int64


@lru_cache(maxsize=128)
def _plan(G: FiniteGroup):
    """Generators of G and, for each prefix of them, a spanning tree of the
    subgroup they generate.

    Each tree is a list of ``(element, parent, generator index)`` triples in
    breadth-first order, with ``element = parent * gens[index]``.
    """
    gens = G.generators
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    members = [0]
    trees = []
    for k in range(len(gens)):
        steps = []
        frontier = list(members)
        while frontier:
            nxt = []
            for p in frontier:
                for j in range(k + 1):
                    x = int(G.table[p, gens[j]])
                    if not mask[x]:
                        mask[x] = True
                        steps.append((x, p, j))
                        nxt.append(x)
            frontier = nxt
        members.extend(s[0] for s in steps)
        trees.append((np.array([s[0] for s in steps], dtype=_INT),
                      np.array([s[1] for s in steps], dtype=_INT),
                      np.array([s[2] for s in steps], dtype=_INT),
                      np.array(sorted(members), dtype=_INT)))
    return gens, trees


def hom_from_generators(G: FiniteGroup, H: FiniteGroup, gens, images, *, check=True):
    """The homomorphism sending ``gens[i]`` to ``images[i]``.

    Raises if the assignment does not extend to a homomorphism.
    """
    m = np.full(G.order, -1, dtype=_INT)
    m[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for p in frontier:
            for g, h in zip(gens, images):
                x = G.table[p, g]
                y = H.table[m[p], h]
                if m[x] < 0:
                    m[x] = y
                    nxt.append(int(x))
                elif check and m[x] != y:
                    raise ValidationError("generator images do not extend to a homomorphism")
        frontier = nxt
    if (m < 0).any():
        raise ValidationError("the given elements do not generate the source")
    return GroupHom(G, H, m, check=check)


def _invariants(G):
    prof = np.bincount(G.element_orders)
    return (G.order, tuple(int(x) for x in prof), len(center(G)),
            len(derived_subgroup(G)), G.is_abelian)


def find_homs(G: FiniteGroup, H: FiniteGroup, *, injective=False, surjective=False,
              fixed=None, over=None, limit=None):
    """All homomorphisms ``G → H`` satisfying the constraints.

    ``fixed`` maps some elements of G to prescribed images. ``over`` is a pair
    ``(pG, pH)`` with common target and asks for ``pH ∘ f = pG``. Results are
    in ascending lexicographic order of their maps.
    """
    if over is None and max(G.order, H.order) > CONFIG.search_cap:
        raise SearchBudgetExceeded(f"hom search between groups of orders {G.order}, "
                                   f"{H.order} exceeds search cap {CONFIG.search_cap}")
    if injective and G.order > H.order or surjective and G.order < H.order:
        return []
    gens, trees = _plan(G)
    og, oh = G.element_orders, H.element_orders
    fixed = {int(k): int(v) for k, v in (fixed or {}).items()}
    cands = []
    for g in gens:
        ok = (og[g] % oh == 0)
        if injective:
            ok &= oh == og[g]
        if over is not None:
            pG, pH = over
            ok &= pH.map == pG.map[g]
        if g in fixed:
            keep = np.zeros_like(ok)
            keep[fixed[g]] = ok[fixed[g]]
            ok = keep
        cands.append(np.nonzero(ok)[0])

    budget = CONFIG.hom_budget
    spent = 0
    found = []
    m = np.full(G.order, -1, dtype=_INT)
    m[0] = 0
    img = [0] * len(gens)

    def extend(k):
        nonlocal spent
        if limit is not None and len(found) >= limit:
            return
        if k == len(gens):
            if injective and len(np.unique(m)) != G.order:
                return
            if surjective and len(np.unique(m)) != H.order:
                return
            if any(m[x] != y for x, y in fixed.items()):
                return
            found.append(m.copy())
            return
        xs, ps, js, members = trees[k]
        gimg = np.asarray(img, dtype=_INT)
        for c in cands[k]:
            spent += 1
            if spent > budget:
                raise SearchBudgetExceeded(f"hom search exceeded budget {budget}",
                                           budget=budget)
            img[k] = int(c)
            gimg[k] = c
            for x, p, j in zip(xs, ps, js):
                m[x] = H.table[m[p], gimg[j]]
            sub = m[members]
            if (m[G.table[np.ix_(members, members)]] ==
                    H.table[sub[:, None], sub[None, :]]).all():
                if injective and len(np.unique(sub)) != len(sub):
                    continue
                extend(k + 1)
            if limit is not None and len(found) >= limit:
                return
        m[xs] = -1

    extend(0)
    found.sort(key=lambda a: a.tolist())
    return [GroupHom(G, H, f, check=True) for f in found]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup):
    """An isomorphism ``G → H`` or None."""
    if G.order != H.order:
        return None
    if _invariants(G) != _invariants(H):
        return None
    if G == H:
        return GroupHom(G, H, np.arange(G.order), check=False)
    res = find_homs(G, H, injective=True, limit=1)
    return res[0] if res else None


def automorphisms(G: FiniteGroup):
    return find_homs(G, G, injective=True)


def random_hom(G: FiniteGroup, H: FiniteGroup, rng: random.Random, tries=50):
    """A random homomorphism ``G → H``, found by sampling generator images."""
    gens = G.generators
    og, oh = G.element_orders, H.element_orders
    pools = [np.nonzero(og[g] % oh == 0)[0] for g in gens]
    for _ in range(tries):
        images = [int(rng.choice(list(p))) for p in pools]
        try:
            return hom_from_generators(G, H, gens, images)
        except ValidationError:
            continue
    return GroupHom(G, H, np.zeros(G.order, dtype=_INT), check=False)
