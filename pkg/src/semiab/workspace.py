"""Loading named groups, homs, complexes, towers, crossed modules and ladder
diagrams from JSON files.

A file holds either a single object (a complex, tower, crossed module,
simplicial or crossed-module morphism, or ladder diagram, recognised by its
keys) or a collection ``{"groups": [...], "homs": [...], "complexes": [...],
...}`` of named definitions. References are names defined in the workspace,
built-in zoo names (``S3``, ``sign:S3``, ...) or inline definitions.
"""

import json
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import zoo
from .chain import ProperChainComplex, validate_proper_complex
from .diagram import Ladder, check_ladder, check_short_exact
from .errors import ParseError, SemiabError, UnresolvedReference, ValidationError
from .groups import FiniteGroup, GroupHom
from .homsearch import hom_from_generators
from .simplicial import SimplicialGroup, SimplicialMorphism, check_simplicial_morphism, \
    validate_simplicial
from .xmod import CrossedModule, XModMorphism, check_xmod_morphism, validate_xmod

_CYCLE = re.compile(r"\(([^()]*)\)")
KINDS = ("groups", "homs", "complexes", "towers", "xmods", "morphisms", "diagrams")


@dataclass
class Workspace:
    groups: Dict[str, FiniteGroup] = field(default_factory=dict)
    homs: Dict[str, GroupHom] = field(default_factory=dict)
    complexes: Dict[str, ProperChainComplex] = field(default_factory=dict)
    towers: Dict[str, SimplicialGroup] = field(default_factory=dict)
    xmods: Dict[str, CrossedModule] = field(default_factory=dict)
    morphisms: Dict[str, object] = field(default_factory=dict)
    diagrams: Dict[str, Ladder] = field(default_factory=dict)
    files: List[str] = field(default_factory=list)

    def __len__(self):
        return sum(len(getattr(self, k)) for k in KINDS)

    def _add(self, kind, name, obj, where=None):
        if not isinstance(name, str) or not name:
            raise ParseError("definition needs a non-empty string name", file=where)
        table = getattr(self, kind)
        if any(name in getattr(self, k) for k in KINDS):
            raise ValidationError(f"duplicate name {name!r}", name=name, file=where)
        table[name] = obj
        return obj

    # -- references --------------------------------------------------------------

    def group(self, ref) -> FiniteGroup:
        if isinstance(ref, dict):
            return parse_group(ref)
        if not isinstance(ref, str):
            raise ParseError(f"group reference must be a name, got {ref!r}")
        if ref in self.groups:
            return self.groups[ref]
        try:
            return zoo.group(ref)
        except ParseError:
            raise UnresolvedReference(f"no group named {ref!r}", name=ref) from None

    def hom(self, ref) -> GroupHom:
        if isinstance(ref, dict):
            return self.parse_hom(ref)
        if not isinstance(ref, str):
            raise ParseError(f"hom reference must be a name, got {ref!r}")
        if ref in self.homs:
            return self.homs[ref]
        try:
            return zoo.hom(ref)
        except (ParseError, KeyError, IndexError, ValueError):
            raise UnresolvedReference(f"no hom named {ref!r}", name=ref) from None

    def _named(self, kind, ref, parse):
        if isinstance(ref, dict):
            return parse(ref)
        table = getattr(self, kind)
        if ref not in table:
            raise UnresolvedReference(f"no {kind[:-1]} named {ref!r}", name=ref)
        return table[ref]

    def tower(self, ref) -> SimplicialGroup:
        return self._named("towers", ref, self.parse_tower)

    def xmod(self, ref) -> CrossedModule:
        return self._named("xmods", ref, self.parse_xmod)

    # -- parsers -----------------------------------------------------------------

    def parse_hom(self, d) -> GroupHom:
        _require(d, ("source", "target"), "hom")
        G, H = self.group(d["source"]), self.group(d["target"])
        if "map" in d:
            return GroupHom(G, H, _int_list(d["map"], "map"))
        if "images" in d:
            gens = d.get("generators", list(G.generators))
            return hom_from_generators(G, H, _int_list(gens, "generators"),
                                       _int_list(d["images"], "images"))
        raise ParseError("hom needs a map or generator images")

    def parse_complex(self, d) -> ProperChainComplex:
        _require(d, ("groups", "boundaries"), "complex")
        return validate_proper_complex([self.group(g) for g in d["groups"]],
                                       [self.hom(h) for h in d["boundaries"]])

    def parse_tower(self, d) -> SimplicialGroup:
        _require(d, ("groups", "faces", "degeneracies"), "tower")
        groups = [self.group(g) for g in d["groups"]]
        D = d.get("dim", len(groups) - 1)
        if D != len(groups) - 1:
            raise ValidationError(f"dim {D} does not match {len(groups)} groups")
        faces = [[self.hom(h) for h in row] for row in d["faces"]]
        if len(faces) == D:                   # degree 0 has no faces
            faces = [[]] + faces
        degs = [[self.hom(h) for h in row] for row in d["degeneracies"]]
        return validate_simplicial(groups, faces, degs)

    def parse_xmod(self, d) -> CrossedModule:
        _require(d, ("T", "G", "boundary", "action"), "crossed module")
        T, G = self.group(d["T"]), self.group(d["G"])
        act = d["action"]
        if act == "trivial":
            act = np.tile(np.arange(T.order), (G.order, 1))
        elif act == "conjugation":
            act = G.conjugation if T == G else None
            if act is None:
                raise ValidationError("conjugation action needs T = G")
        else:
            act = np.array(act, dtype=np.int64)
        return validate_xmod(T, G, self.hom(d["boundary"]), act)

    def parse_morphism(self, d):
        _require(d, ("source", "target"), "morphism")
        if "h" in d and "g" in d:
            return check_xmod_morphism(self.xmod(d["source"]), self.xmod(d["target"]),
                                       self.hom(d["h"]), self.hom(d["g"]))
        if "maps" in d:
            return check_simplicial_morphism(self.tower(d["source"]), self.tower(d["target"]),
                                             [self.hom(h) for h in d["maps"]])
        raise ParseError("morphism needs h and g (crossed modules) or maps (towers)")

    def parse_diagram(self, d) -> Ladder:
        _require(d, ("top", "bottom", "verticals"), "diagram")
        rows = []
        for key in ("top", "bottom"):
            row = d[key]
            if not (isinstance(row, list) and len(row) == 2):
                raise ParseError(f"{key} row must be [kernel map, quotient map]")
            rows.append(check_short_exact(self.hom(row[0]), self.hom(row[1])))
        if not (isinstance(d["verticals"], list) and len(d["verticals"]) == 3):
            raise ParseError("verticals must list u, v, w")
        u, v, w = (self.hom(h) for h in d["verticals"])
        return check_ladder(rows[0], rows[1], u, v, w)

    def parse_single(self, d):
        """Kind and value of a single-object document, or None."""
        if "boundaries" in d:
            return "complexes", self.parse_complex(d)
        if "faces" in d:
            return "towers", self.parse_tower(d)
        if "boundary" in d and "action" in d:
            return "xmods", self.parse_xmod(d)
        if "top" in d and "bottom" in d:
            return "diagrams", self.parse_diagram(d)
        if ("h" in d and "g" in d) or "maps" in d:
            return "morphisms", self.parse_morphism(d)
        if "table" in d or "generators" in d:
            return "groups", parse_group(d)
        if "source" in d and "target" in d and ("map" in d or "images" in d):
            return "homs", self.parse_hom(d)
        return None

    # -- documents ---------------------------------------------------------------

    def load_document(self, doc, where="<input>"):
        """Add a document's definitions; returns the single object it
        describes, if any."""
        if not isinstance(doc, dict):
            raise ParseError("document must be a JSON object", file=where, location="$")
        for i, g in enumerate(_defs(doc, "groups", where)):
            _require(g, ("name",), "group", where, f"groups[{i}]")
            self._add("groups", g["name"], _located(parse_group, g, where, f"groups[{i}]"),
                      where)
        for i, h in enumerate(_defs(doc, "homs", where)):
            _require(h, ("name",), "hom", where, f"homs[{i}]")
            self._add("homs", h["name"], _located(self.parse_hom, h, where, f"homs[{i}]"),
                      where)
        parsers = {"complexes": self.parse_complex, "towers": self.parse_tower,
                   "xmods": self.parse_xmod, "morphisms": self.parse_morphism,
                   "diagrams": self.parse_diagram}
        for kind, parse in parsers.items():
            for i, item in enumerate(_defs(doc, kind, where)):
                _require(item, ("name",), kind[:-1], where, f"{kind}[{i}]")
                self._add(kind, item["name"], _located(parse, item, where, f"{kind}[{i}]"),
                          where)
        single = _located(self.parse_single, doc, where, "$")
        if single is not None:
            kind, obj = single
            if "name" in doc:
                self._add(kind, doc["name"], obj, where)
            return obj
        return None


def _defs(doc, key, where):
    items = doc.get(key, [])
    if key == "groups" and "boundaries" in doc:
        return [g for g in items if isinstance(g, dict)]      # complex: names inline
    if key == "groups" and "faces" in doc:
        return [g for g in items if isinstance(g, dict)]
    if not isinstance(items, list):
        raise ParseError(f"{key} must be a list", file=where, location=key)
    return items


def _located(parse, item, where, location):
    try:
        return parse(item)
    except SemiabError as exc:
        exc.witness.setdefault("file", where)
        exc.witness.setdefault("location", location)
        raise


def _require(d, keys, what, where=None, location=None):
    if not isinstance(d, dict):
        raise ParseError(f"{what} must be a JSON object", file=where, location=location)
    missing = [k for k in keys if k not in d]
    if missing:
        raise ParseError(f"{what} is missing {', '.join(missing)}", file=where,
                         location=location)


def _int_list(v, what):
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                          for x in v):
        raise ParseError(f"{what} must be a list of integers")
    return v


def parse_cycles(text: str, degree: Optional[int] = None) -> List[int]:
    """Image list of a permutation written in cycle notation, e.g. ``(0 1)(2 3)``."""
    cycles = _CYCLE.findall(text)
    if _CYCLE.sub("", text).strip():
        raise ParseError(f"cannot parse permutation {text!r}")
    cyc = [[int(x) for x in c.replace(",", " ").split()] for c in cycles]
    points = [x for c in cyc for x in c]
    if len(set(points)) != len(points) or any(x < 0 for x in points):
        raise ParseError(f"cycles of {text!r} are not disjoint")
    n = max([degree or 0] + [x + 1 for x in points] + [1])
    img = list(range(n))
    for c in cyc:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return img


def parse_group(d) -> FiniteGroup:
    """``{"table": [[...]]}`` or ``{"generators": [...], "degree": n}`` with
    generators as image lists or cycle strings."""
    name = d.get("name")
    if "table" in d:
        t = d["table"]
        if not (isinstance(t, list) and all(isinstance(r, list) for r in t)):
            raise ParseError("table must be a list of rows")
        n = len(t)
        if any(len(r) != n for r in t):
            raise ParseError("table must be square")
        G = FiniteGroup(np.array(t, dtype=np.int64), name)
    elif "generators" in d:
        degree = d.get("degree")
        gens = []
        for g in d["generators"]:
            if isinstance(g, str):
                gens.append(parse_cycles(g, degree))
            else:
                gens.append(_int_list(g, "generator"))
        if gens:
            deg = max([degree or 0] + [len(g) for g in gens])
            gens = [g + list(range(len(g), deg)) for g in gens]
        G = zoo.perm_group(gens, name) if gens else zoo.group("1")
    elif "zoo" in d:
        G = zoo.group(d["zoo"])
    else:
        raise ParseError("group needs a table, generators or a zoo name")
    if "order" in d and d["order"] != G.order:
        raise ValidationError(f"declared order {d['order']} but the group has order {G.order}")
    return G


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", file=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", file=str(path),
                         location=f"line {exc.lineno} column {exc.colno}") from None


def load_workspace(paths=()) -> Workspace:
    ws = Workspace()
    for p in paths:
        ws.load_document(read_json(p), str(p))
        ws.files.append(str(p))
    return ws
