"""Command line front end: ``semiab <module> <verb> [names] [--flags]``.

Every command prints one JSON object with sorted keys. Exit codes: 0 when
all checks pass, 1 when a mathematical property or postcondition fails
(the witness is printed), 2 for malformed input or an exhausted budget.
"""

import argparse
import json
import sys

import numpy as np

from . import zoo
from .abelian import abelian_invariants
from .config import configured
from .errors import SemiabError, UnknownCommand, ValidationError
from .workspace import load_workspace, read_json

# which properties each command verifies, reported with --provenance
CHECKED = {
    ("group", "check"): ["Cayley table: closure, associativity, identity, inverses"],
    ("group", "image"): ["image factorization recomposes", "proper iff normal image"],
    ("group", "cokernel"): ["cokernel is the quotient by the normal closure of the image"],
    ("diagram", "snake"): ["rows short exact", "squares commute", "verticals proper",
                           "six-term exactness", "connecting map independent of choices"],
    ("chain", "homology"): ["d∘d = 0", "boundaries proper", "H_n ≅ K_n",
                            "exactness iff H_n trivial"],
    ("simp", "homology"): ["simplicial identities", "Moore complex proper",
                           "H_n abelian for n ≥ 1", "H_0 equals the coequalizer of ∂_0, ∂_1"],
    ("simp", "fill"): ["every horn fills with the prescribed faces"],
    ("simp", "fib"): ["exhaustive horn lifting", "RegEpi-pushout squares",
                      "square criterion equals kernel ∇-criterion"],
    ("simp", "acyclic"): ["∇-criterion agrees with vanishing homology"],
    ("simp", "pi1"): ["internal groupoid axioms of A_1 / ∂N_2"],
    ("baer", "v1"): ["kernel-pair route equals [K, X0]"],
    ("baer", "delta"): ["[K, X0] ⊆ K ∩ [X0, X0]"],
    ("baer", "five-term"): ["exactness at K/[K,A], Ab A, Ab B"],
    ("baer", "nilpotency"): ["reflection at n has class at most n"],
    ("baer", "commutator"): ["Huq commutator minimal over the normal subgroup lattice",
                             "Smith commutator minimal over the normal subgroup lattice"],
    ("baer", "centrality"): ["Janelidze-Kelly, V1, Smith and Huq centrality agree"],
    ("ext", "is-central"): ["centre scan agrees with the four centrality tests"],
    ("ext", "reflect"): ["X/[K,X] ↠ Y is central"],
    ("ext", "h2"): ["representatives are cocycles"],
    ("ext", "baer-sum"): ["Baer sum class equals the sum of cocycle classes"],
    ("ext", "uct"): ["|H²(Y,A)| = |Ext(H1 Y, A)| |Hom(H2 Y, A)|"],
    ("ext", "hs5"): ["five-term sequence exact"],
    ("ext", "universal"): ["candidate central and perfect", "unique homs over each sample"],
    ("xmod", "check"): ["action", "equivariance", "Peiffer identity"],
    ("xmod", "homology"): ["∂T normal", "ker ∂ abelian"],
    ("xmod", "predicates"): ["fibration criteria agree", "weak equivalence iff fully "
                             "faithful and essentially surjective"],
    ("xmod", "nerve"): ["nerve H_0, H_1 agree with the crossed module"],
    ("xmod", "roundtrip"): ["crossed module and internal category round trips are isos"],
    ("corpus", "run"): ["suite properties on every generated case"],
}


# -- JSON helpers ---------------------------------------------------------------------

def group_json(G):
    out = {"order": int(G.order), "abelian": bool(G.is_abelian)}
    if G.is_abelian:
        out["invariants"] = abelian_invariants(G)
    return out


def sub_json(S):
    return {"order": int(S.order), "elements": [int(x) for x in S.array]}


def _elements_arg(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"cannot parse element list {text!r}") from None


def _single(ws, path, kind):
    """The object described by a file, or the only one of its kind in it."""
    obj = ws.load_document(read_json(path), path)
    if obj is not None:
        return obj
    table = getattr(ws, kind)
    if len(table) == 1:
        return next(iter(table.values()))
    raise ValidationError(f"{path} does not describe a single {kind[:-1]}")


# -- group ------------------------------------------------------------------------------

def cmd_group(ws, a):
    if a.verb == "list":
        return {"names": zoo.known_names(a.max)}, True
    if a.verb in ("check", "center", "derived", "abelianization", "normal"):
        G = ws.group(a.name)
        if a.verb == "check":
            return {"valid": True, "order": int(G.order), "abelian": bool(G.is_abelian)}, True
        from .groups import abelianization, center, derived_subgroup, normal_subgroups
        if a.verb == "center":
            return {"center": sub_json(center(G))}, True
        if a.verb == "derived":
            return {"derived": sub_json(derived_subgroup(G))}, True
        if a.verb == "abelianization":
            return {"abelianization": group_json(abelianization(G)[0])}, True
        return {"normalSubgroups": [sub_json(N) for N in normal_subgroups(G)]}, True
    f = ws.hom(a.name)
    from .groups import cokernel, image_factorization
    if a.verb == "image":
        fac = image_factorization(f)
        return {"image": sub_json(fac.image), "proper": bool(fac.is_proper)}, True
    if a.verb == "kernel":
        return {"kernel": sub_json(f.kernel())}, True
    Q, _ = cokernel(f)
    return {"cokernel": group_json(Q)}, True


# -- diagram / chain --------------------------------------------------------------------

def cmd_snake(ws, a):
    from .diagram import snake
    d = _single(ws, a.file, "diagrams")
    s = snake(d)
    rep = {"orders": s.orders(), "exact": s.exact, "allExact": s.all_exact,
           "deltaChoiceIndependent": s.delta_choice_independent,
           "firstMono": s.first_mono, "lastEpi": s.last_epi,
           "delta": s.delta.map.tolist(),
           "terms": ["K[u]", "K[v]", "K[w]", "Q[u]", "Q[v]", "Q[w]"]}
    return rep, s.all_exact and s.delta_choice_independent


def cmd_chain(ws, a):
    from .chain import homology
    C = _single(ws, a.file, "complexes")
    degrees = [a.degree] if a.degree is not None else list(range(C.length + 1))
    out = []
    for n in degrees:
        h = homology(C, n)
        out.append({"degree": n, "H": group_json(h.H), "K": int(h.K.order),
                    "lambdaIso": bool(h.lambda_is_iso), "exact": bool(C.is_exact_at(n)),
                    "cycles": int(h.cycles.order), "boundaries": int(h.boundaries.order)})
    if a.degree is not None:
        return out[0], True
    return {"length": C.length, "homology": out}, True


# -- simp ------------------------------------------------------------------------------

def cmd_simp(ws, a):
    from . import simplicial as S
    if a.verb == "fib":
        obj = ws.load_document(read_json(a.file), a.file)
        if isinstance(obj, S.SimplicialGroup):
            Z = S.trivial_tower(obj.dim)
            from .groups import zero_hom
            obj = S.SimplicialMorphism(obj, Z, [zero_hom(G, Z.groups[n])
                                                for n, G in enumerate(obj.groups)])
        if not isinstance(obj, S.SimplicialMorphism):
            raise ValidationError(f"{a.file} does not describe a simplicial morphism")
        r = S.fibration_diagnostics(obj)
        return {"isKanFibration": r.is_kan_fibration,
                "isDegreewiseSurjective": r.is_degreewise_surjective,
                "isAcyclicFibration": r.is_acyclic_fibration,
                "squares": r.squares, "truncation": r.truncation}, True
    A = _single(ws, a.file, "towers")
    if a.verb == "homology":
        hs = S.all_homology(A)
        return {"dim": A.dim, "orders": A.orders(), "truncation": A.dim - 1,
                "homology": [group_json(H) for H in hs]}, True
    if a.verb == "fill":
        if a.horn:
            spec = json.loads(a.horn)
            horn = S.Horn(int(spec["n"]), int(spec["k"]),
                          {int(i): int(x) for i, x in spec["faces"].items()})
            y = S.horn_fill(A, horn)
            return {"filler": y, "faces": [int(A.face(horn.n, i)(y))
                                           for i in range(horn.n + 1)]}, True
        return {"horns": S.check_all_horns(A), "verified": True, "truncation": A.dim}, True
    if a.verb == "acyclic":
        r = S.acyclicity_check(A)
        return {"acyclic": r.acyclic, "nablaSurjective": r.nabla_surjective,
                "homologyTrivial": r.homology_trivial, "truncation": r.truncation}, True
    if a.verb == "moore":
        M = S.moore_complex(A)
        return {"orders": [int(s.order) for s in M.subgroups], "proper": True}, True
    C, q = S.fundamental_groupoid(A)
    H0, _, H1 = C.homology()
    return {"objects": int(C.A0.order), "arrows": int(C.A1.order),
            "H0": group_json(H0), "H1": int(H1.order)}, True


# -- baer ------------------------------------------------------------------------------

def cmd_baer(ws, a):
    from . import baer as B
    if a.verb == "nilpotency":
        lcs = B.lower_central_series(ws.group(a.name), a.max)
        return lcs.to_json(), True
    if a.verb == "commutator":
        from .groups import generated_subgroup, Congruence
        G = ws.group(a.name)
        L = generated_subgroup(G, _elements_arg(a.left)) if a.left else G.whole()
        R = generated_subgroup(G, _elements_arg(a.right)) if a.right else G.whole()
        huq = B.huq_commutator(L.as_group()[1], R.as_group()[1])
        out = {"huq": sub_json(huq), "left": sub_json(L), "right": sub_json(R)}
        if L.is_normal and R.is_normal:
            sm = B.smith_commutator(Congruence(G, L), Congruence(G, R))
            out["smith"] = sub_json(sm.normal)
        return out, True
    if a.verb == "five-term":
        rep = B.five_term_sequence(ws.hom(a.k), ws.hom(a.f), ws.hom(a.pres))
        return {"orders": [int(g.order) for g in rep.groups], "exact": rep.exact,
                "presentationRelative": rep.presentation_relative,
                "terms": ["ΔV(A)", "ΔV(B)", "K/[K,A]", "AbA", "AbB"]}, True
    f = ws.hom(a.name)
    if a.verb == "v1":
        return {"v1": sub_json(B.v1(f)), "kernel": sub_json(f.kernel())}, True
    if a.verb == "centrality":
        rep = B.centrality_equivalence(f)
        return dict(rep.to_json(), agree=rep.agree), rep.agree
    d = B.delta_v(f)
    return {"deltaV": group_json(d.group), "numerator": sub_json(d.numerator),
            "denominator": sub_json(d.denominator)}, True


# -- ext -------------------------------------------------------------------------------

def _classes(text, H):
    c = tuple(_elements_arg(text) or [])
    if len(c) != len(H.orders):
        raise ValidationError(f"class needs {len(H.orders)} coordinates")
    return tuple(x % o for x, o in zip(c, H.orders))


def cmd_ext(ws, a):
    from . import centrext as E
    from .cocycles import cocycle_h2
    if a.verb in ("is-central", "reflect"):
        f = ws.hom(a.name)
        if a.verb == "is-central":
            from .baer import centrality_equivalence
            c = E.is_central(f)
            return dict(centrality_equivalence(f).to_json(), central=c), True
        r = E.centr_reflect(f)
        return {"X": int(r.extension.X.order), "Y": int(r.extension.Y.order),
                "A": int(r.extension.A.order), "unitKernel": sub_json(r.unit.kernel())}, True
    if a.verb == "universal":
        Y = ws.group(a.name)
        cand = ws.hom(a.candidate) if a.candidate else None
        sample = [ws.hom(s) for s in (a.sample or [])]
        rep = E.perfect_and_universal(Y, cand, sample)
        return rep.to_json(), True
    if a.verb == "hs5":
        rep = E.hochschild_serre_5term(ws.hom(a.k), ws.hom(a.f), ws.group(a.coeff))
        return rep.to_json(), True
    Y, A = ws.group(a.base), ws.group(a.coeff)
    if a.verb == "uct":
        rep = E.uct_check(Y, A)
        return rep.to_json(), rep.order_identity
    H = cocycle_h2(Y, A)
    if a.verb == "h2":
        out = {"invariantFactors": H.invariant_factors}
        if a.cocycles:
            out["order"] = H.order
            out["representatives"] = [r.tolist() for r in H.representatives]
        return out, True
    c1, c2 = _classes(a.left, H), _classes(a.right, H)
    e1 = E.extension_from_cocycle(Y, A, H.element(c1))
    e2 = E.extension_from_cocycle(Y, A, H.element(c2))
    s = E.baer_sum(e1, e2)
    got = E.class_of(s, H)
    want = H.add(c1, c2)
    return {"left": list(c1), "right": list(c2), "sum": list(got), "expected": list(want),
            "agree": got == want, "cocycle": E.cocycle_from_extension(s).tolist(),
            "order": int(s.X.order)}, got == want


# -- xmod ------------------------------------------------------------------------------

def cmd_xmod(ws, a):
    from . import xmod as X
    if a.verb == "check":
        doc = read_json(a.file)
        ws.load_document({k: v for k, v in doc.items() if k in ("groups", "homs")}, a.file)
        T, G = ws.group(doc["T"]), ws.group(doc["G"])
        act = doc["action"]
        if act == "trivial":
            act = X.trivial_action(G, T)
        elif act == "conjugation":
            act = G.conjugation
        try:
            act = np.asarray(act, dtype=np.int64)
        except (TypeError, ValueError):
            raise ValidationError("action must be a table of integers") from None
        rep = X.xmod_report(T, G, ws.hom(doc["boundary"]), act)
        return rep, rep["isCrossed"]
    if a.verb == "predicates":
        m = _single(ws, a.file, "morphisms")
        if not isinstance(m, X.XModMorphism):
            raise ValidationError(f"{a.file} does not describe a crossed-module morphism")
        return X.model_predicates(m).to_json(), True
    x = _single(ws, a.file, "xmods")
    if a.verb == "homology":
        h = X.xmod_homology(x)
        return {"H0": group_json(h.H0), "H1": sub_json(h.H1)}, True
    if a.verb == "roundtrip":
        rt = X.roundtrip_witnesses(x)
        return {"xmodIso": rt.xmod_iso.h.map.tolist(),
                "categoryIso": rt.category_iso.f1.map.tolist(), "ok": True}, True
    D = a.dim_n
    A = X.nerve(X.to_internal_category(x), D)
    ok = X.nerve_homology_agreement(x, D)
    return {"dim": D, "orders": A.orders(), "homologyAgrees": ok}, ok


# -- corpus ------------------------------------------------------------------------------

def cmd_corpus(ws, a):
    from .corpus import SUITES, run_property_corpus, suite_names
    if a.verb == "list":
        return {"suites": {n: {"count": SUITES[n].count, "about": SUITES[n].about}
                           for n in suite_names()}}, True
    rep = run_property_corpus(a.suite, a.seed, a.count)
    return rep, rep["failed"] == 0


# -- parser ------------------------------------------------------------------------------

def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="JSON output (the default)")
    p.add_argument("--seed", type=int, default=None, help="random seed")
    p.add_argument("--cap", type=int, default=None, help="table size cap")
    p.add_argument("--dim", type=int, default=None, help="simplicial truncation D")
    p.add_argument("--load", action="append", default=[], help="definition file")
    p.add_argument("--provenance", action="store_true",
                   help="list the properties the command checked")
    return p


def build_parser():
    common = _common()
    top = argparse.ArgumentParser(prog="semiab",
                                  description="Finite-group computations for semi-abelian "
                                              "homological algebra.")
    mods = top.add_subparsers(dest="module", required=True)

    def verbs(name, help_):
        m = mods.add_parser(name, help=help_)
        return m.add_subparsers(dest="verb", required=True)

    g = verbs("group", "groups and homomorphisms")
    for v in ("check", "center", "derived", "abelianization", "normal"):
        g.add_parser(v, parents=[common]).add_argument("name")
    for v in ("image", "kernel", "cokernel"):
        g.add_parser(v, parents=[common]).add_argument("name", help="hom reference")
    g.add_parser("list", parents=[common]).add_argument("--max", type=int, default=24)

    s = mods.add_parser("snake", parents=[common], help="six-term sequence of a ladder")
    s.add_argument("file")
    s.set_defaults(verb="snake", module="diagram")
    d = verbs("diagram", "ladder diagrams")
    d.add_parser("snake", parents=[common]).add_argument("file")

    c = verbs("chain", "proper chain complexes")
    p = c.add_parser("homology", parents=[common])
    p.add_argument("file")
    p.add_argument("--degree", type=int, default=None)

    sm = verbs("simp", "truncated simplicial groups")
    for v in ("homology", "fib", "pi1", "acyclic", "moore"):
        sm.add_parser(v, parents=[common]).add_argument("file")
    p = sm.add_parser("fill", parents=[common])
    p.add_argument("file")
    p.add_argument("--horn", default=None, help='JSON {"n":..,"k":..,"faces":{i: x}}')

    b = verbs("baer", "Baer invariants, commutators and nilpotency")
    for v in ("delta", "v1", "centrality"):
        b.add_parser(v, parents=[common]).add_argument("name", help="surjection reference")
    p = b.add_parser("nilpotency", parents=[common])
    p.add_argument("name")
    p.add_argument("--max", type=int, default=8)
    p = b.add_parser("commutator", parents=[common])
    p.add_argument("name")
    p.add_argument("--left", default=None, help="generators, comma separated")
    p.add_argument("--right", default=None, help="generators, comma separated")
    p = b.add_parser("five-term", parents=[common])
    p.add_argument("--k", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--pres", required=True)

    e = verbs("ext", "central extensions and cohomology")
    for v in ("is-central", "reflect"):
        e.add_parser(v, parents=[common]).add_argument("name", help="surjection reference")
    for v in ("h2", "uct", "baer-sum"):
        p = e.add_parser(v, parents=[common])
        p.add_argument("--base", required=True)
        p.add_argument("--coeff", required=True)
        if v == "h2":
            p.add_argument("--cocycles", action="store_true")
        if v == "baer-sum":
            p.add_argument("--left", required=True, help="class coordinates")
            p.add_argument("--right", required=True, help="class coordinates")
    p = e.add_parser("hs5", parents=[common])
    p.add_argument("--k", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--coeff", required=True)
    p = e.add_parser("universal", parents=[common])
    p.add_argument("name")
    p.add_argument("--candidate", default=None)
    p.add_argument("--sample", nargs="*", default=[])

    x = verbs("xmod", "crossed modules and internal groupoids")
    for v in ("check", "homology", "predicates", "roundtrip"):
        x.add_parser(v, parents=[common]).add_argument("file")
    p = x.add_parser("nerve", parents=[common])
    p.add_argument("file")

    k = verbs("corpus", "seeded property suites")
    p = k.add_parser("run", parents=[common])
    p.add_argument("suite")
    p.add_argument("--count", type=int, default=None)
    k.add_parser("list", parents=[common])
    return top


HANDLERS = {"group": cmd_group, "diagram": cmd_snake, "chain": cmd_chain, "simp": cmd_simp,
            "baer": cmd_baer, "ext": cmd_ext, "xmod": cmd_xmod, "corpus": cmd_corpus}


def run_command(argv, ws=None):
    """Parse and run one command; returns ``(report, exit code)``."""
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        if not exc.code:
            return None, 0          # --help already printed usage
        err = UnknownCommand(f"cannot parse command: {' '.join(map(str, argv))}")
        return err.to_json(), 2
    overrides = {}
    if a.cap is not None:
        overrides["table_cap"] = a.cap
    if a.dim is not None:
        overrides["sim_dim"] = a.dim
    if a.seed is not None:
        overrides["seed"] = a.seed
    a.dim_n = a.dim if a.dim is not None else 2
    try:
        with configured(**overrides):
            ws = ws if ws is not None else load_workspace(a.load)
            report, ok = HANDLERS[a.module](ws, a)
    except SemiabError as exc:
        return exc.to_json(), exc.exit_code
    if a.provenance:
        report = dict(report, checked=CHECKED.get((a.module, a.verb), []))
    return report, 0 if ok else 1


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code = run_command(argv)
    if report is not None:
        print(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
