"""Seeded property corpora.

Each suite pairs a generator, drawing one case from a ``random.Random``,
with a check returning named boolean properties. Running a suite walks a
fixed number of cases from one seed and reports pass/fail counts and the
first counterexample, so identical seeds give identical reports.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional

import numpy as np

from . import zoo
from .baer import (Presentation, baer_invariance_check, centrality_equivalence,
                   delta_v, huq_commutator, lower_central_series_class, v1_generic,
                   v1_map)
from .centrext import (baer_sum, central_extension, centr_reflect, class_of,
                       extension_from_cocycle, extensions_equivalent, is_central,
                       pushout_extension, split_extension)
from .chain import homology, les_from_ses_of_complexes, validate_proper_complex
from .cocycles import cocycle_h2
from .config import CONFIG, configured
from .diagram import (check_ladder, is_pullback_square, ses_of_normal, snake,
                      snake_naturality)
from .errors import SemiabError, UnknownSuite, ValidationError
from .groups import (Congruence, FiniteGroup, GroupHom, Subgroup, abelianization,
                     center, cokernel, commutator_subgroup, derived_subgroup,
                     direct_image, direct_product, factor_through, generated_subgroup,
                     identity_hom, image_factorization, is_isomorphic, kernel,
                     normal_closure, normal_subgroups, quotient, trivial_group, zero_hom)
from .homsearch import automorphisms, find_homs, random_hom
from .simplicial import (SimplicialMorphism, acyclicity_check, all_homology,
                         check_all_horns, constant_morphism, constant_tower,
                         degeneracy_homotopy, fibration_diagnostics, homology_agreement,
                         identity_morphism, is_kan_fibration, kernel_tower,
                         les_from_ses_of_simplicial, moore_complex, product_tower,
                         trivial_tower)
from .xmod import (check_xmod_morphism, functor_of, internal_category_roundtrip,
                   model_predicates, nerve, nerve_homology_agreement, nerve_morphism,
                   normal_inclusion_xmod, identity_xmod, roundtrip_witnesses,
                   to_internal_category, trivial_action, validate_xmod, xmod_homology)

_INT = np.int64


@dataclass
class Case:
    spec: dict              # JSON description, enough to rebuild the case
    data: object = None


@dataclass
class Suite:
    name: str
    generate: Callable[[random.Random], Case]
    check: Callable[[Case], Dict[str, bool]]
    count: int
    about: str = ""


SUITES: Dict[str, Suite] = {}


def register_suite(name, generate, check, count=50, about="", replace=False) -> Suite:
    if name in SUITES and not replace:
        raise ValidationError(f"suite {name!r} is already registered")
    s = Suite(name, generate, check, count, about)
    SUITES[name] = s
    return s


def suite_names():
    return sorted(SUITES)


def run_property_corpus(suite: str, seed: Optional[int] = None,
                        count: Optional[int] = None) -> dict:
    """Run ``count`` cases of a suite from ``seed``; report counts and the
    first counterexample."""
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}", suite=suite, known=suite_names())
    s = SUITES[suite]
    seed = CONFIG.seed if seed is None else seed
    count = s.count if count is None else count
    rng = random.Random(f"{suite}:{seed}")
    passed = failed = 0
    checks = 0
    counterexample = None
    for i in range(count):
        case = None
        try:
            case = s.generate(rng)
            props = s.check(case)
            bad = sorted(k for k, v in props.items() if not v)
            checks += len(props)
            error = None
        except SemiabError as exc:
            bad, error = ["raised"], exc.to_json()
        if bad:
            failed += 1
            if counterexample is None:
                counterexample = {"index": i, "case": case.spec if case else None,
                                  "failed": bad}
                if error is not None:
                    counterexample["error"] = error
        else:
            passed += 1
    return {"suite": suite, "seed": seed, "cases": count, "passed": passed,
            "failed": failed, "checks": checks, "counterexample": counterexample}


# -- shared pools and draws -----------------------------------------------------------

@lru_cache(maxsize=None)
def pool(max_order: int, abelian: bool = False):
    names = [n for n in zoo.known_names(max_order) if zoo.group(n).order <= max_order]
    if abelian:
        names = [n for n in names if zoo.group(n).is_abelian]
    return tuple(names)


def _choice(rng, seq):
    return seq[rng.randrange(len(seq))]


def _draw_group(rng, max_order, abelian=False):
    name = _choice(rng, pool(max_order, abelian))
    return name, zoo.group(name)


def _draw_normal(rng, G: FiniteGroup, inside: Optional[Subgroup] = None,
                 containing: Optional[Subgroup] = None) -> Subgroup:
    subs = [N for N in normal_subgroups(G)
            if (inside is None or N <= inside) and (containing is None or containing <= N)]
    return _choice(rng, subs)


def _draw_subgroup(rng, G: FiniteGroup, k=2) -> Subgroup:
    return generated_subgroup(G, [rng.randrange(G.order) for _ in range(k)])


def _elements(S: Subgroup):
    return [int(x) for x in S.array]


def _hom_json(f: GroupHom):
    return f.map.tolist()


# -- proper chain complexes -------------------------------------------------------------

def gen_proper_complex(rng, max_order=24, max_len=4):
    """Boundaries are random homs into the previous kernel or inclusions of
    normal subgroups of it; non-proper draws fall back to the zero map."""
    L = rng.randint(1, max_len)
    n0, C0 = _draw_group(rng, max_order)
    names, groups, bounds = [n0], [C0], []
    K = C0.whole()
    for n in range(1, L + 1):
        prev = groups[-1]
        if rng.random() < 0.5:
            N = _draw_normal(rng, prev, inside=K)
            Cn, d = N.as_group()
            name = f"sub{len(N.array)}"
        else:
            name, Cn = _draw_group(rng, max_order)
            Kg, inc = K.as_group()
            d = random_hom(Cn, Kg, rng).then(inc)
            if not d.is_proper:
                d = zero_hom(Cn, prev)
        names.append(name)
        groups.append(Cn)
        bounds.append(d)
        K = d.kernel()
    return Case({"kind": "complex", "groups": names,
                 "boundaries": [_hom_json(d) for d in bounds]}, (groups, bounds))


def check_hk_iso(case):
    groups, bounds = case.data
    C = validate_proper_complex(groups, bounds)
    lam, exact, iso = True, True, True
    for n in range(C.length + 1):
        h = homology(C, n)
        lam &= h.lam.is_iso
        iso &= h.H.order == h.K.order and is_isomorphic(h.H, h.K)
        exact &= h.is_trivial == C.is_exact_at(n)
    return {"lambda-iso": lam, "H-iso-K": iso, "exact-iff-trivial": exact}


# -- ladders ------------------------------------------------------------------------------

def _verticals(top, bottom, v):
    u = GroupHom(top.K, bottom.K, bottom.k.image().index_of(v.map[top.k.map]))
    w = factor_through(top.f, v.then(bottom.f))
    return u, w


def _extend_row(rng, top, max_order, proper, tries=20):
    """A bottom row and verticals ``(u, v, w)`` under the row ``top``."""
    X = top.X
    N = top.k.image()
    for _ in range(tries):
        mode = rng.randrange(4)
        if mode == 0:
            _, X2 = _draw_group(rng, max_order)
            v = random_hom(X, X2, rng)
        elif mode == 1:
            M = _draw_normal(rng, X)
            X2, v = quotient(X, M)
        elif mode == 2:
            v = random_hom(X, X, rng)
            X2 = X
        else:
            _, B = _draw_group(rng, max(1, max_order // X.order))
            P = direct_product(X, B)
            X2, v = P.group, P.i1
        N2 = _draw_normal(rng, X2, containing=v.apply(N))
        bottom = ses_of_normal(X2, N2)
        u, w = _verticals(top, bottom, v)
        if w is None:
            continue
        if proper and not (u.is_proper and v.is_proper and w.is_proper):
            continue
        return bottom, u, v, w, mode
    bottom = top
    return bottom, identity_hom(top.K), identity_hom(X), identity_hom(top.Y), -1


def gen_ladder(rng, max_order=16, proper=True):
    name, X = _draw_group(rng, max_order)
    top = ses_of_normal(X, _draw_normal(rng, X))
    bottom, u, v, w, mode = _extend_row(rng, top, max_order, proper)
    d = check_ladder(top, bottom, u, v, w)
    spec = {"kind": "ladder", "X": name, "N": _elements(top.k.image()),
            "X2": bottom.X.order, "N2": _elements(bottom.k.image()), "mode": mode,
            "v": _hom_json(v)}
    return Case(spec, d)


def gen_snake_case(rng):
    c = gen_ladder(rng, 16, proper=True)
    d = c.data
    bottom2, u2, v2, w2, _ = _extend_row(rng, d.bottom, 16, proper=True)
    c.data = (d, (bottom2, u2, v2, w2))
    return c


def check_snake(case):
    d, (bottom2, u2, v2, w2) = case.data
    s = snake(d)
    out = {"six-term-exact": s.all_exact, "delta-choice-independent":
           s.delta_choice_independent, "ends": s.first_mono and s.last_epi}
    uu, vv, ww = d.u.then(u2), d.v.then(v2), d.w.then(w2)
    if uu.is_proper and vv.is_proper and ww.is_proper:
        d2 = check_ladder(d.top, bottom2, uu, vv, ww)
        ids = [identity_hom(G) for G in (d.top.K, d.top.X, d.top.Y)]
        out["natural"] = snake_naturality(d, d2, ids + [u2, v2, w2])
    return out


def check_short_five(case):
    d = case.data
    top, bot = d.top, d.bottom
    u, v, w = d.u, d.v, d.w
    out = {}
    out["five-iso"] = not (u.is_iso and w.is_iso) or v.is_iso
    out["five-mono"] = not (u.is_injective and w.is_injective) or v.is_injective
    out["five-epi"] = not (u.is_surjective and w.is_surjective) or v.is_surjective
    right = is_pullback_square(top.f, v, w, bot.f)
    left = is_pullback_square(top.k, u, v, bot.k)
    out["u-iso-iff-right-pullback"] = u.is_iso == right
    out["w-mono-iff-left-pullback"] = w.is_injective == left
    if u.is_surjective:
        # the left square is a pushout when X/ncl(k ker u) → X' is bijective
        M = normal_closure(top.X, top.k.map[u.kernel().array])
        _, q = quotient(top.X, M)
        c = factor_through(q, v)
        if c is not None and c.is_iso:
            out["pushout-w-iso"] = w.is_iso
    return out


# -- short exact sequences of complexes -----------------------------------------------

def _subcomplex(groups, bounds, subs):
    gs, incs = zip(*(S.as_group() for S in subs))
    bs = [GroupHom(gs[n], gs[n - 1], subs[n - 1].index_of(bounds[n - 1].map[subs[n].array]))
          for n in range(1, len(groups))]
    return list(gs), bs, list(incs)


def _quotient_complex(groups, bounds, subs):
    qs = [quotient(G, S) for G, S in zip(groups, subs)]
    bs = []
    for n in range(1, len(groups)):
        d = factor_through(qs[n][1], bounds[n - 1].then(qs[n - 1][1]))
        bs.append(d)
    return [q[0] for q in qs], bs, [q[1] for q in qs]


def gen_complex_ses(rng, tries=20):
    for _ in range(tries):
        base = gen_proper_complex(rng, 16, 3)
        groups, bounds = base.data
        if rng.random() < 0.25:
            # degreewise split: B ⊕ A with inclusion and projection
            other = gen_proper_complex(rng, 8, len(groups) - 1)
            og, ob = other.data
            if len(og) != len(groups):
                continue
            prods = [direct_product(a, b) for a, b in zip(og, groups)]
            from .groups import product_hom
            P = [p.group for p in prods]
            Pb = [product_hom(ob[n - 1], bounds[n - 1], P[n], P[n - 1])
                  for n in range(1, len(P))]
            A = validate_proper_complex(og, ob)
            B = validate_proper_complex(P, Pb)
            C = validate_proper_complex(groups, bounds)
            f = [p.i1 for p in prods]
            g = [p.p2 for p in prods]
            return Case({"kind": "split-ses", "A": other.spec, "C": base.spec}, (A, B, C, f, g))
        # a subcomplex chosen from the top down
        subs = [None] * len(groups)
        top = len(groups) - 1
        subs[top] = _draw_normal(rng, groups[top])
        for n in range(top - 1, -1, -1):
            subs[n] = _draw_normal(rng, groups[n],
                                   containing=bounds[n].apply(subs[n + 1]))
        ag, ab, ainc = _subcomplex(groups, bounds, subs)
        if not all(d.is_proper for d in ab):
            continue
        cg, cb, cq = _quotient_complex(groups, bounds, subs)
        A = validate_proper_complex(ag, ab)
        B = validate_proper_complex(groups, bounds)
        C = validate_proper_complex(cg, cb)
        return Case({"kind": "sub-ses", "B": base.spec,
                     "subgroups": [_elements(S) for S in subs]},
                    (A, B, C, ainc, cq))
    raise ValidationError("no short exact sequence of complexes drawn")


def check_les_complex(case):
    A, B, C, f, g = case.data
    les = les_from_ses_of_complexes(A, B, C, f, g)
    return {"exact": les.all_exact, "delta-routes-agree": les.routes_agree}


# -- simplicial towers -------------------------------------------------------------------

def _xmod_abelian_trivial(T, G, d):
    return validate_xmod(T, G, d, trivial_action(G, T))


def _auto_xmod(A: FiniteGroup, m: int, alpha: GroupHom):
    """``Z_m`` acting on abelian A through powers of ``alpha``, zero boundary."""
    G = zoo.group(f"Z{m}")
    rows = [np.arange(A.order)]
    for _ in range(1, m):
        rows.append(alpha.map[rows[-1]])
    return validate_xmod(A, G, zero_hom(A, G), np.stack(rows))


def _central_xmod(f: GroupHom):
    """A central extension ``X ↠ Y`` as a crossed module, Y acting through
    any lift."""
    X, Y = f.source, f.target
    lift = np.full(Y.order, -1, dtype=_INT)
    lift[f.map[::-1]] = np.arange(X.order)[::-1]
    conj = X.conjugation[lift]
    return validate_xmod(X, Y, f, conj)


def _centre_inclusion(G):
    return normal_inclusion_xmod(G, center(G))


def _inversion(A):
    return GroupHom(A, A, A.inverses)


# crossed modules whose nerves stay within the table cap at dimension 4
SMALL_XMODS = {
    "Z2->1": lambda: _xmod_abelian_trivial(zoo.group("Z2"), trivial_group(),
                                           zero_hom(zoo.group("Z2"), trivial_group())),
    "Z3->1": lambda: _xmod_abelian_trivial(zoo.group("Z3"), trivial_group(),
                                           zero_hom(zoo.group("Z3"), trivial_group())),
    "Z4->1": lambda: _xmod_abelian_trivial(zoo.group("Z4"), trivial_group(),
                                           zero_hom(zoo.group("Z4"), trivial_group())),
    "V4->1": lambda: _xmod_abelian_trivial(zoo.group("V4"), trivial_group(),
                                           zero_hom(zoo.group("V4"), trivial_group())),
    "id:Z2": lambda: identity_xmod(zoo.group("Z2")),
    "id:Z3": lambda: identity_xmod(zoo.group("Z3")),
    "Z2<Z4": lambda: _xmod_abelian_trivial(zoo.group("Z2"), zoo.group("Z4"),
                                           zoo.mult_map(2, 4, 2)),
    "Z2<Z6": lambda: _xmod_abelian_trivial(zoo.group("Z2"), zoo.group("Z6"),
                                           zoo.mult_map(2, 6, 3)),
    "Z(D8)<D8": lambda: _centre_inclusion(zoo.group("D8")),
    "Z(Q8)<Q8": lambda: _centre_inclusion(zoo.group("Q8")),
    "Z(D12)<D12": lambda: _centre_inclusion(zoo.group("D12")),
    "A3<S3": lambda: normal_inclusion_xmod(zoo.group("S3"),
                                           derived_subgroup(zoo.group("S3"))),
    "Z4->>Z2": lambda: _central_xmod(zoo.mod_map(4, 2)),
    "Z2 on Z3": lambda: _auto_xmod(zoo.group("Z3"), 2, _inversion(zoo.group("Z3"))),
    "Z2 on Z4": lambda: _auto_xmod(zoo.group("Z4"), 2, _inversion(zoo.group("Z4"))),
    "1->S3": lambda: _xmod_abelian_trivial(trivial_group(), zoo.group("S3"),
                                           zero_hom(trivial_group(), zoo.group("S3"))),
}


def _coker_xmod(x):
    hx = xmod_homology(x)
    H0 = hx.H0
    y = validate_xmod(trivial_group(), H0, zero_hom(trivial_group(), H0),
                      trivial_action(H0, trivial_group()))
    m = check_xmod_morphism(x, y, zero_hom(x.T, trivial_group()), hx.H0_proj)
    return y, m


def _zero_morphism(A, D):
    Z = trivial_tower(D)
    return SimplicialMorphism(A, Z, [zero_hom(G, Z.groups[n]) for n, G in enumerate(A.groups)])


def _projection_morphism(A, B, P):
    maps = [direct_product(a, b).p1 for a, b in zip(A.groups, B.groups)]
    return SimplicialMorphism(P, A, maps)


def gen_tower(rng, D=4, max_order=16):
    """A tower with a few degreewise surjections out of it."""
    kind = rng.randrange(6)
    spec = {"kind": None, "dim": D}
    surj = []
    if kind == 0:
        name, G = _draw_group(rng, max_order)
        A = constant_tower(G, D)
        _, q = quotient(G, _draw_normal(rng, G))
        surj.append(constant_morphism(q, D))
        spec.update(kind="constant", group=name)
    elif kind == 1:
        n1, G = _draw_group(rng, max_order)
        n2, H = _draw_group(rng, max_order)
        A1, A2 = constant_tower(G, D), constant_tower(H, D)
        A = product_tower(A1, A2)
        surj.append(_projection_morphism(A1, A2, A))
        spec.update(kind="product", groups=[n1, n2])
    elif kind in (2, 3):
        name = _choice(rng, sorted(SMALL_XMODS))
        x = SMALL_XMODS[name]()
        A = nerve(to_internal_category(x), D)
        y, m = _coker_xmod(x)
        B = nerve(to_internal_category(y), D)
        surj.append(nerve_morphism(functor_of(m), A, B))
        spec.update(kind="nerve", xmod=name)
        if kind == 3:
            # kernel of the nerve map to the cokernel, as a tower in its own right
            K, _ = kernel_tower(surj[0])
            A = K
            surj = []
            spec.update(kind="kernel")
    elif kind == 4:
        name = _choice(rng, sorted(SMALL_XMODS))
        x = SMALL_XMODS[name]()
        N = nerve(to_internal_category(x), D)
        bound = CONFIG.table_cap // max(N.groups[-1].order, 1)
        gname, G = _draw_group(rng, max(1, min(max_order, bound)))
        C = constant_tower(G, D)
        A = product_tower(N, C)
        surj.append(_projection_morphism(N, C, A))
        spec.update(kind="nerve-product", xmod=name, group=gname)
    else:
        A = trivial_tower(D)
        spec.update(kind="trivial")
    surj.append(_zero_morphism(A, D))
    surj.append(identity_morphism(A))
    spec["orders"] = A.orders()
    return Case(spec, (A, surj))


def check_moore_kan(case):
    A, surj = case.data
    out = {}
    M = moore_complex(A)                            # raises unless proper
    out["moore-proper"] = len(M.complex.groups) == A.dim + 1
    out["horns-fill"] = check_all_horns(A) > 0
    hs = all_homology(A)
    out["higher-abelian"] = all(H.is_abelian for H in hs[1:])
    rep = acyclicity_check(A)
    top = rep.truncation
    out["acyclic-agrees"] = rep.acyclic == all(H.order == 1 for H in hs[:top + 1])
    out["surjections-kan"] = all(fibration_diagnostics(p).is_kan_fibration for p in surj)
    return out


def check_kan(case):
    A, surj = case.data
    out = {"surjections-kan": True, "homotopy-invariance": True}
    for p in surj:
        rep = fibration_diagnostics(p)
        out["surjections-kan"] &= rep.is_kan_fibration and rep.is_degreewise_surjective
        out["homotopy-invariance"] &= all(homology_agreement(p, p, degeneracy_homotopy(p)))
    return out


def gen_tower_ses(rng):
    c = gen_tower(rng)
    A, surj = c.data
    p = surj[min(len(surj) - 1, rng.randrange(len(surj)))]
    K, k = kernel_tower(p)
    c.data = (k, p)
    c.spec["surjection"] = surj.index(p)
    return c


def check_les_simplicial(case):
    k, p = case.data
    les = les_from_ses_of_simplicial(k, p)
    return {"exact": les.all_exact, "delta-routes-agree": les.routes_agree}


# -- presentations and commutators -----------------------------------------------------

def gen_surjection(rng, max_order=24):
    name, X = _draw_group(rng, max_order)
    N = _draw_normal(rng, X)
    _, q = quotient(X, N)
    return Case({"kind": "surjection", "X": name, "kernel": _elements(N)}, q)


def check_centrality(case):
    f = case.data
    rep = centrality_equivalence(f)
    return {"four-agree": rep.agree, "centre-scan": is_central(f) == rep.huq_central}


def gen_presentation(rng):
    if rng.random() < 0.3:
        n1, Y = _draw_group(rng, 12)
        n2, B = _draw_group(rng, 12)
        P = direct_product(Y, B)
        return Case({"kind": "product-presentation", "Y": n1, "B": n2}, P.p1)
    return gen_surjection(rng, 24)


def check_v1_generic(case):
    f = case.data
    p = Presentation(f)
    closed = commutator_subgroup(p.kernel, f.source.whole())
    out = {"generic-equals-closed": v1_generic(p) == closed}
    Y, X = f.target, f.source
    sections = find_homs(Y, X, over=(identity_hom(Y), f), limit=1)
    if sections:
        out["split-delta-trivial"] = delta_v(p).group.order == 1
    return out


def gen_regular_square(rng):
    """A square of presentations ``x: X ↠ X'`` over ``a: A ↠ A'``."""
    c = gen_surjection(rng, 24)
    p = c.data
    X = p.source
    M = _draw_normal(rng, X)
    X2, x = quotient(X, M)
    A = p.target
    pm = p.apply(M)
    A2, a = quotient(A, pm)
    q = factor_through(x, p.then(a))
    c.spec.update(kind="square", M=_elements(M))
    c.data = (p, q, x, a)
    return c


def check_v1_surjective(case):
    from .diagram import is_regular_pushout
    p, q, x, a = case.data
    out = {}
    rp = is_regular_pushout(x, p, q, a)
    if rp.is_pushout_comparison:
        out["v1-preserves-epi"] = v1_map(p, q, x).is_surjective
    # V^n of a surjection maps onto V^n of the target
    X, X2 = x.source, x.target
    cur, cur2 = X.whole(), X2.whole()
    ok = True
    for _ in range(4):
        cur = commutator_subgroup(cur, X.whole())
        cur2 = commutator_subgroup(cur2, X2.whole())
        ok &= x.apply(cur) == cur2
    out["vn-preserves-epi"] = ok
    return out


def gen_mutual_presentations(rng):
    c = gen_surjection(rng, 24)
    p = c.data
    X1 = p.source
    if rng.random() < 0.5:
        bname, B = _draw_group(rng, 8)
        P = direct_product(X1, B)
        q = P.p1.then(p)
        f0, g0 = P.i1, P.p1
        c.spec.update(kind="mutual-product", B=bname)
    else:
        X2name, X2 = _draw_group(rng, 24)
        ups = find_homs(X2, X1, surjective=True, limit=4) if X2.order >= X1.order else []
        if not ups:
            X2, X2name = X1, c.spec["X"]
            ups = [identity_hom(X1)]
        s = _choice(rng, ups)
        q = s.then(p)
        backs = find_homs(X1, X2, over=(p, q), limit=1)
        if not backs:
            P = direct_product(X1, zoo.group("Z2"))
            q = P.p1.then(p)
            f0, g0 = P.i1, P.p1
            c.spec.update(kind="mutual-product", B="Z2")
        else:
            f0, g0 = backs[0], s
            c.spec.update(kind="mutual-search", X2=X2name)
    c.data = (p, q, f0, g0)
    return c


def check_baer_invariant(case):
    p, q, f0, g0 = case.data
    rep = baer_invariance_check(p, q, f0, g0)
    return {"iso": rep.isomorphic, "induced-iso": rep.induced_is_iso,
            "mutually-inverse": rep.roundtrips_identity}


def gen_huq(rng):
    name, X = _draw_group(rng, 24)
    H, K = _draw_subgroup(rng, X, rng.randint(1, 2)), _draw_subgroup(rng, X, rng.randint(1, 2))
    M = _draw_normal(rng, X)
    _, p = quotient(X, M)
    return Case({"kind": "huq", "X": name, "H": _elements(H), "K": _elements(K),
                 "M": _elements(M)}, (H, K, p))


def check_huq_image(case):
    H, K, p = case.data
    kh, kk = H.as_group()[1], K.as_group()[1]
    c = huq_commutator(kh, kk)
    c2 = huq_commutator(kh.then(p), kk.then(p))
    sym = huq_commutator(kk, kh) == c
    return {"image": direct_image(c, p) == c2, "symmetric": sym}


def check_smith_huq(case):
    """Congruence of N is Smith-central exactly when N is central."""
    from .baer import centralize_check
    f = case.data
    X = f.source
    N = f.kernel()
    smith = centralize_check(Congruence(X, N), Congruence.indiscrete(X))
    return {"smith-iff-huq": smith == (N <= center(X))}


# -- central extensions ----------------------------------------------------------------

def gen_central_extension(rng):
    name, X = _draw_group(rng, 24)
    Z = center(X)
    N = _draw_subgroup(rng, Z.as_group()[0], rng.randint(1, 2))
    N = Subgroup(X, Z.array[N.array])
    _, f = quotient(X, N)
    return Case({"kind": "central", "X": name, "kernel": _elements(N)}, central_extension(f))


def _all_subgroups(A: FiniteGroup):
    found = {}
    for a in range(A.order):
        for b in range(a, A.order):
            S = generated_subgroup(A, [a, b])
            found[tuple(_elements(S))] = S
    return list(found.values())


def check_centrext(case):
    e = case.data
    out = {}
    Kg, k = e.A, e.k
    out["kernel-subgroups-normal"] = all(
        Subgroup(e.X, np.unique(k.map[S.array]), check=False).is_normal
        for S in _all_subgroups(Kg))
    r = centr_reflect(e.f)
    r2 = centr_reflect(r.extension.f)
    out["reflect-idempotent"] = r2.unit.is_iso and r.unit.is_iso
    for B in (zoo.group("Z2"), zoo.group("Z4"), zoo.group("V4")):
        for a in find_homs(Kg, B, limit=3):
            ext, ladder = pushout_extension(e, a)
            out["pushout-central"] = out.get("pushout-central", True) and is_central(ext.f)
    return out


@lru_cache(maxsize=None)
def _h2(Yname, Aname):
    return cocycle_h2(zoo.group(Yname), zoo.group(Aname))


def gen_baer_triple(rng):
    Yname = _choice(rng, ("Z2", "Z3", "Z4", "V4", "S3", "Z6", "D8", "Q8"))
    Aname = _choice(rng, ("Z2", "Z3", "Z4"))
    H = _h2(Yname, Aname)
    cls = [_choice(rng, H.elements()) for _ in range(3)]
    return Case({"kind": "baer-triple", "Y": Yname, "A": Aname,
                 "classes": [list(c) for c in cls]}, (H, cls))


def check_baer_laws(case):
    H, cls = case.data
    Y, A = H.Y, H.A
    es = [extension_from_cocycle(Y, A, H.element(c)) for c in cls]
    s01 = baer_sum(es[0], es[1])
    s10 = baer_sum(es[1], es[0])
    left = baer_sum(s01, es[2])
    right = baer_sum(es[0], baer_sum(es[1], es[2]))
    z = split_extension(Y, A)
    return {
        "commutative": extensions_equivalent(s01, s10) is not None,
        "associative": extensions_equivalent(left, right) is not None,
        "split-neutral": extensions_equivalent(baer_sum(z, es[0]), es[0]) is not None,
        "classes-add": class_of(s01, H) == H.add(tuple(cls[0]), tuple(cls[1])),
        "classes-faithful": [class_of(e, H) for e in es] == [tuple(c) for c in cls],
    }


# -- crossed modules -------------------------------------------------------------------

def gen_xmod(rng, max_order=12):
    kind = rng.randrange(6)
    if kind == 0:
        name, G = _draw_group(rng, max_order)
        N = _draw_normal(rng, G)
        return Case({"kind": "normal", "G": name, "N": _elements(N)},
                    normal_inclusion_xmod(G, N))
    if kind == 1:
        name, A = _draw_group(rng, max_order, abelian=True)
        x = _xmod_abelian_trivial(A, trivial_group(), zero_hom(A, trivial_group()))
        return Case({"kind": "abelian-to-1", "T": name}, x)
    if kind == 2:
        name, G = _draw_group(rng, max_order)
        x = validate_xmod(trivial_group(), G, zero_hom(trivial_group(), G),
                          trivial_action(G, trivial_group()))
        return Case({"kind": "1-to-G", "G": name}, x)
    if kind == 3:
        name, X = _draw_group(rng, max_order)
        Z = center(X)
        N = _draw_subgroup(rng, Z.as_group()[0], 1)
        N = Subgroup(X, Z.array[N.array])
        _, f = quotient(X, N)
        return Case({"kind": "central", "X": name, "kernel": _elements(N)}, _central_xmod(f))
    if kind == 4:
        name, A = _draw_group(rng, max_order, abelian=True)
        auts = automorphisms(A) if A.order <= 8 else [identity_hom(A), _inversion(A)]
        alpha = _choice(rng, auts)
        o, cur = 1, alpha.map
        while not np.array_equal(cur, np.arange(A.order)):
            cur = alpha.map[cur]
            o += 1
        mult = [m for m in range(o, max_order + 1, o)]
        m = _choice(rng, mult) if mult else o
        return Case({"kind": "automorphism", "T": name, "m": m, "alpha": _hom_json(alpha)},
                    _auto_xmod(A, m, alpha))
    name, G = _draw_group(rng, max_order)
    return Case({"kind": "identity", "G": name}, identity_xmod(G))


def _morphisms_out(rng, x):
    triv = validate_xmod(trivial_group(), trivial_group(),
                         zero_hom(trivial_group(), trivial_group()),
                         trivial_action(trivial_group(), trivial_group()))
    ms = [("identity", check_xmod_morphism(x, x, identity_hom(x.T), identity_hom(x.G))),
          ("coker", _coker_xmod(x)[1]),
          ("trivial", check_xmod_morphism(x, triv, zero_hom(x.T, trivial_group()),
                                          zero_hom(x.G, trivial_group())))]
    src = validate_xmod(trivial_group(), x.G, zero_hom(trivial_group(), x.G),
                        trivial_action(x.G, trivial_group()))
    ms.append(("from-1", check_xmod_morphism(src, x, zero_hom(trivial_group(), x.T),
                                             identity_hom(x.G))))
    g = random_hom(x.G, x.G, rng)
    hs = []
    for h in find_homs(x.T, x.T):
        try:
            hs.append(check_xmod_morphism(x, x, h, g))
        except SemiabError:
            continue
    if hs:
        ms.append(("random-endo", _choice(rng, hs)))
    return ms


def gen_xmod_case(rng):
    c = gen_xmod(rng)
    with configured(table_cap=max(CONFIG.table_cap, 2048)):
        c.data = (c.data, _morphisms_out(rng, c.data))
    c.spec["morphisms"] = [n for n, _ in c.data[1]]
    return c


def check_xmod(case):
    # composable pairs and 2-simplices have order |G||T|^2, up to 1728 here
    with configured(table_cap=max(CONFIG.table_cap, 2048)):
        return _check_xmod(*case.data)


def _check_xmod(x, ms):
    out = {}
    rt = roundtrip_witnesses(x)
    out["roundtrip"] = rt.xmod_iso.h.is_iso and rt.category_iso.f1.is_iso
    C = to_internal_category(x)
    out["category-roundtrip"] = internal_category_roundtrip(C).f1.is_iso
    out["nerve-homology"] = nerve_homology_agreement(x, D=2)
    ok_pred, ok_kan = True, True
    for _, m in ms:
        mp = model_predicates(m)
        ok_pred &= mp.is_weak_equivalence == (mp.is_fully_faithful and
                                              mp.is_essentially_surjective)
        F = functor_of(m)
        p = nerve_morphism(F, nerve(F.source, 2), nerve(F.target, 2))
        kan = is_kan_fibration(p)
        if p.is_degreewise_surjective:
            ok_kan &= kan
        ok_kan &= kan == mp.is_fibration
    out["predicate-triangle"] = ok_pred
    out["nerve-fibration"] = ok_kan
    return out


# -- basic group constructions ---------------------------------------------------------

def gen_hom_pair(rng):
    n1, G = _draw_group(rng, 24)
    n2, H = _draw_group(rng, 24)
    n3, K = _draw_group(rng, 24)
    f, g = random_hom(G, H, rng), random_hom(H, K, rng)
    return Case({"kind": "homs", "groups": [n1, n2, n3], "f": _hom_json(f),
                 "g": _hom_json(g)}, (f, g))


def check_groups(case):
    f, g = case.data
    G = f.source
    out = {}
    fac = image_factorization(f)
    out["factorization-recomposes"] = np.array_equal(fac.injection.map[fac.surjection.map],
                                                     f.map)
    out["proper-iff-normal-image"] = fac.is_proper == f.image().is_normal
    # surjection onto the image and its kernel
    p = fac.surjection
    K, k = kernel(p)
    Q, c = cokernel(k)
    out["cokernel-of-kernel"] = Q.order == p.target.order and c.kernel() == K
    out["cokernel-iso"] = factor_through(c, p) is not None and factor_through(c, p).is_iso
    H1, H2 = f.image(), g.kernel()
    C = commutator_subgroup(H1, H2)
    out["commutator-symmetric"] = C == commutator_subgroup(H2, H1)
    out["commutator-in-derived"] = C <= derived_subgroup(H1.parent)
    out["commutator-monotone"] = C <= commutator_subgroup(H1.join(H1.parent.trivial()),
                                                          H2.parent.whole())
    for N in normal_subgroups(G)[:4]:
        if G.order * N.order > CONFIG.table_cap:       # kernel pair too large
            continue
        out["normalization"] = out.get("normalization", True) and \
            Congruence(G, N).normalization() == N
    A1, e1 = abelianization(f.source)
    A2, e2 = abelianization(f.target)
    A3, e3 = abelianization(g.target)
    af = factor_through(e1, f.then(e2))
    ag = factor_through(e2, g.then(e3))
    agf = factor_through(e1, f.then(g).then(e3))
    out["abelianization-functorial"] = np.array_equal(ag.map[af.map], agf.map)
    return out


# -- registry ----------------------------------------------------------------------------

register_suite("groups", gen_hom_pair, check_groups, 100,
               "image factorization, kernels and cokernels, commutators, normalization")
register_suite("hk-iso", lambda r: gen_proper_complex(r, 24, 4), check_hk_iso, 200,
               "H_n ≅ K_n and exactness detection on proper complexes")
register_suite("snake", gen_snake_case, check_snake, 100,
               "six-term sequence of ladders with proper verticals")
register_suite("short-five", lambda r: gen_ladder(r, 16, proper=False), check_short_five,
               100, "short five lemma and pullback/pushout squares in ladders")
register_suite("les-complex", gen_complex_ses, check_les_complex, 50,
               "long exact sequences of short exact sequences of complexes")
register_suite("les-simplicial", gen_tower_ses, check_les_simplicial, 50,
               "long exact sequences of short exact sequences of towers")
register_suite("moore-proper", gen_tower, check_moore_kan, 100,
               "Moore complex, horn fillers, homology and acyclicity of towers")
register_suite("kan", gen_tower, check_kan, 100,
               "degreewise surjections are Kan fibrations; homotopy invariance")
register_suite("centrality", lambda r: gen_surjection(r, 24), check_centrality, 500,
               "four centrality tests agree on surjections")
register_suite("smith-huq", lambda r: gen_surjection(r, 24), check_smith_huq, 200,
               "Smith-central congruences are those of central subgroups")
register_suite("v1-generic", gen_presentation, check_v1_generic, 200,
               "kernel-pair V1 equals [K, X0]; split presentations have trivial ΔV")
register_suite("v1-surjective", gen_regular_square, check_v1_surjective, 100,
               "V1 and V^n preserve surjections")
register_suite("baer-invariant", gen_mutual_presentations, check_baer_invariant, 60,
               "ΔV across mutually connected presentations")
register_suite("huq-image", gen_huq, check_huq_image, 100,
               "Huq commutator commutes with direct images along surjections")
register_suite("centrext", gen_central_extension, check_centrext, 60,
               "central extensions: kernel subgroups normal, reflection, pushouts")
register_suite("baer-laws", gen_baer_triple, check_baer_laws, 40,
               "Baer sum laws and agreement with cocycle addition")
register_suite("xmod", gen_xmod_case, check_xmod, 100,
               "crossed modules: round trips, nerve homology, model predicates")
