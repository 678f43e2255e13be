"""Short exact sequences, ladders, the snake construction, Noether quotients
and regular pushout squares."""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import (ImageNotKernel, NotChain, NotCommuting, NotEpi, NotEpiRows,
                     NotMono, NotNormal, NotProper, PostconditionFailed, ValidationError)
from .groups import (FiniteGroup, GroupHom, Subgroup, factor_through, kernel, pullback,
                     pullback_pair, quotient)


@dataclass(frozen=True)
class ShortExactSequence:
    k: GroupHom
    f: GroupHom

    @property
    def K(self):
        return self.k.source

    @property
    def X(self):
        return self.k.target

    @property
    def Y(self):
        return self.f.target


def check_short_exact(k: GroupHom, f: GroupHom) -> ShortExactSequence:
    if k.target != f.source:
        raise ValidationError("maps are not composable")
    if not k.is_injective:
        raise NotMono("first map is not injective")
    if not f.is_surjective:
        raise NotEpi("second map is not surjective")
    if k.image() != f.kernel():
        raise ImageNotKernel("image of the first map differs from the kernel of the second",
                             image=list(k.image().elements), kernel=list(f.kernel().elements))
    return ShortExactSequence(k, f)


def ses_of_surjection(f: GroupHom) -> ShortExactSequence:
    _, inc = kernel(f)
    return check_short_exact(inc, f)


def ses_of_normal(G: FiniteGroup, N: Subgroup) -> ShortExactSequence:
    _, inc = N.as_group()
    _, proj = quotient(G, N)
    return check_short_exact(inc, proj)


def is_exact_at(incoming: GroupHom, outgoing: GroupHom) -> bool:
    """``im(incoming) = ker(outgoing)``."""
    return incoming.image() == outgoing.kernel()


@dataclass(frozen=True)
class Ladder:
    top: ShortExactSequence
    bottom: ShortExactSequence
    u: GroupHom
    v: GroupHom
    w: GroupHom


def check_ladder(top, bottom, u, v, w) -> Ladder:
    """Rows may be short exact sequences, or more generally a top row
    ``K → X ↠ Y`` exact at ``X`` over a bottom row ``K' ↣ X' → Y'`` exact at
    ``X'``; the snake construction only needs that much."""
    if not (u.source == top.K and u.target == bottom.K and v.source == top.X and
            v.target == bottom.X and w.source == top.Y and w.target == bottom.Y):
        raise ValidationError("vertical maps do not match the rows")
    if not np.array_equal(v.map[top.k.map], bottom.k.map[u.map]):
        raise NotCommuting("left square does not commute")
    if not np.array_equal(w.map[top.f.map], bottom.f.map[v.map]):
        raise NotCommuting("right square does not commute")
    return Ladder(top, bottom, u, v, w)


def square_comparison(top: GroupHom, left: GroupHom, right: GroupHom, bottom: GroupHom):
    """For a commuting square ``bottom∘left = right∘top`` from ``P``, the
    comparison ``P → A ×_B B'`` as ``(pullback, comparison map)``."""
    if not np.array_equal(bottom.map[left.map], right.map[top.map]):
        raise NotCommuting("square does not commute")
    pb = pullback(bottom, right)
    return pb, pullback_pair(pb, left, top)


def is_pullback_square(top, left, right, bottom) -> bool:
    _, r = square_comparison(top, left, right, bottom)
    return r.is_iso


@dataclass
class SnakeResult:
    terms: List[FiniteGroup]      # K[u], K[v], K[w], Q[u], Q[v], Q[w]
    maps: List[GroupHom]          # five maps between consecutive terms
    delta: GroupHom
    exact: dict                   # node name -> bool
    delta_choice_independent: bool
    first_mono: bool              # K[u] -> K[v] injective
    last_epi: bool                # Q[v] -> Q[w] surjective

    @property
    def all_exact(self):
        return all(self.exact.values())

    def orders(self):
        return [t.order for t in self.terms]


def _induced_quotient_map(q_src: GroupHom, q_tgt: GroupHom, h: GroupHom) -> GroupHom:
    """Map between quotients induced by ``h`` (``q_tgt ∘ h`` through ``q_src``)."""
    u = factor_through(q_src, h.then(q_tgt))
    if u is None:
        raise PostconditionFailed("map does not descend to the quotients")
    return u


def snake(d: Ladder) -> SnakeResult:
    """The six-term kernel/cokernel sequence with its connecting map.

    The connecting map is found by chasing every element through every
    choice of preimage; all choices must agree.
    """
    for name, h in (("u", d.u), ("v", d.v), ("w", d.w)):
        if not h.is_proper:
            raise NotProper(f"vertical map {name} does not have normal image", which=name)
    top, bot = d.top, d.bottom
    Ku, iu = kernel(d.u)
    Kv, iv = kernel(d.v)
    Kw, iw = kernel(d.w)
    Qu, qu = quotient(bot.K, d.u.image())
    Qv, qv = quotient(bot.X, d.v.image())
    Qw, qw = quotient(bot.Y, d.w.image())

    kk = iu.source
    m1 = GroupHom(kk, iv.source, Kv.index_of(top.k.map[iu.map]))
    m2 = GroupHom(iv.source, iw.source, Kw.index_of(top.f.map[iv.map]))
    m4 = _induced_quotient_map(qu, qv, bot.k)
    m5 = _induced_quotient_map(qv, qw, bot.f)

    # connecting map, exhausting preimage choices
    kinv = np.full(bot.X.order, -1, dtype=np.int64)
    kinv[bot.k.map] = np.arange(bot.K.order)
    vals = qu.map[kinv[d.v.map]]            # per x in X (valid where f'(v x) = 1)
    delta = np.empty(Kw.order, dtype=np.int64)
    independent = True
    for j, z in enumerate(Kw.array):
        pre = np.nonzero(top.f.map == z)[0]
        if (kinv[d.v.map[pre]] < 0).any():
            raise PostconditionFailed("chase left the image of the bottom kernel map")
        choices = np.unique(vals[pre])
        independent &= len(choices) == 1
        delta[j] = choices[0]
    dlt = GroupHom(iw.source, Qu, delta)
    terms = [iu.source, iv.source, iw.source, Qu, Qv, Qw]
    maps = [m1, m2, dlt, m4, m5]
    exact = {"K[v]": is_exact_at(m1, m2), "K[w]": is_exact_at(m2, dlt),
             "Q[u]": is_exact_at(dlt, m4), "Q[v]": is_exact_at(m4, m5)}
    return SnakeResult(terms, maps, dlt, exact, bool(independent),
                       m1.is_injective, m5.is_surjective)


def snake_naturality(d1: Ladder, d2: Ladder, maps) -> bool:
    """Whether the maps induced on six-term sequences by a ladder morphism
    commute with the sequence maps.

    ``maps`` holds six homs ``(K, X, Y, K', X', Y')`` from ``d1`` to ``d2``.
    """
    aK, aX, aY, bK, bX, bY = maps
    s1, s2 = snake(d1), snake(d2)
    for (p, q), h in zip(((d1.top.k, d2.top.k), (d1.top.f, d2.top.f),
                          (d1.bottom.k, d2.bottom.k), (d1.bottom.f, d2.bottom.f)),
                         ((aK, aX), (aX, aY), (bK, bX), (bX, bY))):
        if not np.array_equal(h[1].map[p.map], q.map[h[0].map]):
            raise NotCommuting("ladder morphism does not commute with the rows")
    for a, b, v1, v2 in ((aK, bK, d1.u, d2.u), (aX, bX, d1.v, d2.v), (aY, bY, d1.w, d2.w)):
        if not np.array_equal(b.map[v1.map], v2.map[a.map]):
            raise NotCommuting("ladder morphism does not commute with the verticals")
    induced = []
    for a, v1, v2 in ((aK, d1.u, d2.u), (aX, d1.v, d2.v), (aY, d1.w, d2.w)):
        K1, K2 = v1.kernel(), v2.kernel()
        induced.append(K2.index_of(a.map[K1.array]))
    for b, v1, v2 in ((bK, d1.u, d2.u), (bX, d1.v, d2.v), (bY, d1.w, d2.w)):
        _, q1 = quotient(v1.target, v1.image())
        _, q2 = quotient(v2.target, v2.image())
        induced.append(_induced_quotient_map(q1, q2, b).map)
    for i, (f1, f2) in enumerate(zip(s1.maps, s2.maps)):
        if not np.array_equal(induced[i + 1][f1.map], f2.map[induced[i]]):
            return False
    return True


def noether_quotient(C: FiniteGroup, A: Subgroup, B: Subgroup) -> ShortExactSequence:
    """``B/A → C/A → C/B`` for normal ``A ⊆ B`` of ``C``."""
    for name, S in (("A", A), ("B", B)):
        if not S.is_normal:
            raise NotNormal(f"{name} is not normal", which=name)
    if not A <= B:
        raise NotChain("first subgroup is not contained in the second")
    CA, qa = quotient(C, A)
    CB, qb = quotient(C, B)
    BA = qa.apply(B)
    _, inc = BA.as_group()
    proj = factor_through(qa, qb)
    return check_short_exact(inc, proj)


@dataclass(frozen=True)
class RegularPushoutReport:
    is_pushout_comparison: bool
    kernel_criterion: bool


def is_regular_pushout(top: GroupHom, left: GroupHom, right: GroupHom,
                       bottom: GroupHom) -> RegularPushoutReport:
    """Square ``top: A'→B'``, ``left: A'→A``, ``right: B'→B``, ``bottom: A→B``
    with surjective rows."""
    if not (top.is_surjective and bottom.is_surjective):
        raise NotEpiRows("horizontal maps must be surjective")
    pb, r = square_comparison(top, left, right, bottom)
    comparison = r.is_surjective
    kf = bottom.kernel()
    kern = bool(np.isin(kf.array, left.map[top.kernel().array]).all())
    if comparison != kern:
        raise PostconditionFailed("comparison and kernel criteria disagree")
    return RegularPushoutReport(comparison, kern)
