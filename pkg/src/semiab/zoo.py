"""Built-in groups, closed from permutation generators at load.

Names: ``1``, ``Zn``, ``D2n`` (dihedral of order 2n), ``Q4n`` (dicyclic of
order 4n, ``Q8`` the quaternions), ``Sn``, ``An``, ``SL(2,p)`` and products
written ``AxB`` or powers ``Z2^3``.
"""

import re
from functools import lru_cache
from itertools import product as iproduct

import numpy as np

from .config import CONFIG
from .errors import ParseError, SizeCapExceeded, ValidationError
from .groups import FiniteGroup, GroupHom, direct_product, trivial_group
from .homsearch import find_homs, find_isomorphism, hom_from_generators


def perm_group(generators, label=None):
    """Close permutations (image lists) into a group.

    Elements are sorted lexicographically as tuples, so the identity is 0.
    The returned group carries ``realization`` (element id -> permutation)
    and ``perm_generators``.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    degree = len(gens[0]) if gens else 1
    if any(sorted(g) != list(range(degree)) for g in gens):
        raise ValidationError("generators must be permutations of a common degree")
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[i] for i in p)        # apply p, then g
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        if len(seen) > CONFIG.table_cap:
            break
        frontier = nxt
    elements = sorted(seen)
    if len(elements) > CONFIG.table_cap:
        raise SizeCapExceeded(f"permutation group of order above {CONFIG.table_cap}",
                              cap=CONFIG.table_cap)
    arr = np.array(elements, dtype=np.int64)
    index = {p: i for i, p in enumerate(elements)}
    n = len(elements)
    # (p*q)(i) = p(q(i)), i.e. apply q first
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(arr):
        comp = p[arr]                              # row j: p∘q_j
        table[i] = [index[tuple(r)] for r in comp.tolist()]
    G = FiniteGroup(table, label, check=False)
    G.realization = elements
    G.perm_index = index
    G.perm_generators = gens
    return G


def perm_id(G, perm):
    return G.perm_index[tuple(int(x) for x in perm)]


def cyclic(n):
    if n == 1:
        return _named(trivial_group(), "Z1")
    return perm_group([[(i + 1) % n for i in range(n)]], f"Z{n}")


def _dihedral_gens(n):
    """Rotation ``a`` and reflection ``x`` generating the dihedral group of
    order 2n, as permutations."""
    if n == 1:
        return [[1, 0]], [[1, 0]]
    if n == 2:
        return [1, 0, 3, 2], [2, 3, 0, 1]
    return [(i + 1) % n for i in range(n)], [(-i) % n for i in range(n)]


def dihedral(order):
    if order % 2 or order < 2:
        raise ParseError(f"no dihedral group of order {order}")
    n = order // 2
    if n == 1:
        return perm_group([[1, 0]], "D2")
    a, x = _dihedral_gens(n)
    G = perm_group([a, x], f"D{order}")
    G.named_generators = {"a": perm_id(G, a), "x": perm_id(G, x)}
    return G


def _dicyclic_gens(n):
    """Left multiplication by ``a`` and ``x`` on elements ``a^k x^e``
    (index ``k + 2n e``) of the dicyclic group of order 4n."""
    m = 2 * n

    def mult(k1, e1, k2, e2):
        k = k1 + (-k2 if e1 else k2)
        if e1 and e2:
            return (k + n) % m, 0
        return k % m, e1 ^ e2

    def left(k1, e1):
        return [mult(k1, e1, k, e)[0] + m * mult(k1, e1, k, e)[1]
                for e in (0, 1) for k in range(m)]
    return left(1, 0), left(0, 1)


def dicyclic(order):
    if order % 4 or order < 8:
        raise ParseError(f"no dicyclic group of order {order}")
    a, x = _dicyclic_gens(order // 4)
    G = perm_group([a, x], f"Q{order}")
    G.named_generators = {"a": perm_id(G, a), "x": perm_id(G, x)}
    return G


def symmetric(n):
    if n == 1:
        return _named(trivial_group(), "S1")
    if n == 2:
        return perm_group([[1, 0]], "S2")
    return perm_group([[1, 0] + list(range(2, n)), [(i + 1) % n for i in range(n)]], f"S{n}")


def alternating(n):
    if n <= 2:
        return _named(trivial_group(), f"A{n}")
    gens = []
    for i in range(n - 2):
        p = list(range(n))
        p[i], p[i + 1], p[i + 2] = i + 1, i + 2, i
        gens.append(p)
    return perm_group(gens, f"A{n}")


def special_linear(p):
    """SL(2, p) acting on the nonzero vectors of F_p^2."""
    vecs = [(a, b) for a, b in iproduct(range(p), repeat=2) if (a, b) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def act(mat):
        (a, b), (c, d) = mat
        return [pos[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vecs]
    G = perm_group([act(((1, 1), (0, 1))), act(((0, p - 1), (1, 0)))], f"SL(2,{p})")
    G.vectors = vecs
    return G


def _named(G, label):
    G.label = label
    return G


_ATOM = re.compile(r"^(1|Z(\d+)|D(\d+)|Q(\d+)|S(\d+)|A(\d+)|SL\(2,(\d+)\)|V4)(?:\^(\d+))?$")


def group(name: str) -> FiniteGroup:
    """Look up a built-in group by name."""
    G = _group(name.strip())
    if G.order > CONFIG.table_cap:
        raise SizeCapExceeded(f"group {name} of order {G.order} exceeds table cap "
                              f"{CONFIG.table_cap}", order=G.order)
    return G


@lru_cache(maxsize=None)
def _group(name: str) -> FiniteGroup:
    if "x" in name:
        parts = name.split("x")
        G = group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, group(p)).group
        G.label = name
        return G
    m = _ATOM.match(name)
    if not m:
        raise ParseError(f"unknown group name {name!r}")
    atom, power = m.group(1), m.group(8)
    if power:
        return group("x".join([atom] * int(power)))
    if atom == "1":
        return trivial_group()
    if atom == "V4":
        return _named(direct_product(group("Z2"), group("Z2")).group, "V4")
    if m.group(2):
        return cyclic(int(m.group(2)))
    if m.group(3):
        return dihedral(int(m.group(3)))
    if m.group(4):
        return dicyclic(int(m.group(4)))
    if m.group(5):
        return symmetric(int(m.group(5)))
    if m.group(6):
        return alternating(int(m.group(6)))
    return special_linear(int(m.group(7)))


def known_names(max_order=24):
    """Names of built-in groups up to the given order, one per listed family member."""
    names = ["1"]
    names += [f"Z{n}" for n in range(2, max_order + 1)]
    names += [f"D{2 * n}" for n in range(2, max_order // 2 + 1)]
    names += [f"Q{4 * n}" for n in range(2, max_order // 4 + 1)]
    names += [f"S{n}" for n in (3, 4) if [1, 2, 6, 24][n - 1] <= max_order]
    names += [f"A{n}" for n in (4,) if 12 <= max_order]
    names += [n for n, o in (("Z2xZ2", 4), ("Z2xZ4", 8), ("Z2^3", 8), ("Z3xZ3", 9),
                             ("Z2xZ6", 12), ("Z2xS3", 12), ("Z4xZ4", 16), ("Z2xD8", 16),
                             ("Z2xQ8", 16), ("Z2^4", 16), ("Z2xZ8", 16), ("Z3xS3", 18),
                             ("Z2xA4", 24), ("Z2xD12", 24), ("Z3xQ8", 24), ("SL(2,3)", 24),
                             ("Z2xZ2xZ6", 24), ("Z4xS3", 24))
              if o <= max_order]
    return names


# -- named homomorphisms -----------------------------------------------------

def dihedral_inclusion(order):
    """``D_order ↪ D_2order`` with ``a ↦ a²`` and ``x ↦ x``."""
    S, B = group(f"D{order}"), group(f"D{2 * order}")
    gs = S.named_generators
    gb = B.named_generators
    a2 = B.mul(gb["a"], gb["a"])
    return hom_from_generators(S, B, [gs["a"], gs["x"]], [a2, gb["x"]])


def perm_embedding(S, B):
    """Inclusion of permutation groups, padding with fixed points."""
    deg = len(B.realization[0])
    images = []
    for p in S.realization:
        q = list(p) + list(range(len(p), deg))
        if tuple(q) not in B.perm_index:
            raise ValidationError("permutation group is not contained in the target")
        images.append(B.perm_index[tuple(q)])
    return GroupHom(S, B, images)


def sign(G):
    """Sign of a permutation group onto Z2."""
    Z2 = group("Z2")
    parity = []
    for p in G.realization:
        seen, par = set(), 0
        for i in range(len(p)):
            if i not in seen:
                j, length = i, 0
                while j not in seen:
                    seen.add(j)
                    j = p[j]
                    length += 1
                par ^= (length - 1) & 1
        parity.append(par)
    return GroupHom(G, Z2, parity)


def mod_map(n, m):
    """``Zn → Zm``, ``k ↦ k mod m`` (requires m | n)."""
    if n % m:
        raise ValidationError(f"{m} does not divide {n}")
    return GroupHom(group(f"Z{n}"), group(f"Z{m}"), np.arange(n) % m)


def mult_map(n, m, c):
    """``Zn → Zm``, ``k ↦ c·k``."""
    return GroupHom(group(f"Z{n}"), group(f"Z{m}"), (c * np.arange(n)) % m)


def projection(G, H) -> GroupHom:
    """A surjection ``G ↠ H``: through the quotient by the centre or the
    derived subgroup when that is isomorphic to H, else by search."""
    from .groups import center, derived_subgroup, quotient
    for N in (center(G), derived_subgroup(G)):
        Q, q = quotient(G, N)
        iso = find_isomorphism(Q, H)
        if iso is not None:
            return q.then(iso)
    found = find_homs(G, H, surjective=True, limit=1)
    if not found:
        raise ParseError(f"no surjection {G.label} -> {H.label}")
    return found[0]


def hom(name: str) -> GroupHom:
    """Named homs: ``sign:S3``, ``mod:Z4:Z2``, ``mult:Z2:Z4:2``, ``incl:D4:D8``,
    ``incl:A4:A5``, ``proj:SL(2,5):A5``, ``id:G``, ``zero:G:H``."""
    parts = name.split(":")
    kind = parts[0]
    try:
        if kind == "id":
            G = group(parts[1])
            return GroupHom(G, G, np.arange(G.order), check=False)
        if kind == "zero":
            return GroupHom(group(parts[1]), group(parts[2]),
                            np.zeros(group(parts[1]).order, dtype=np.int64))
        if kind == "sign":
            return sign(group(parts[1]))
        if kind == "mod":
            return mod_map(int(parts[1][1:]), int(parts[2][1:]))
        if kind == "mult":
            return mult_map(int(parts[1][1:]), int(parts[2][1:]), int(parts[3]))
        if kind == "incl":
            S, B = parts[1], parts[2]
            if S[0] == "D" and B[0] == "D":
                s, b = int(S[1:]), int(B[1:])
                out = dihedral_inclusion(s)
                while 2 * s < b:
                    s *= 2
                    out = out.then(dihedral_inclusion(s))
                return out
            return perm_embedding(group(S), group(B))
        if kind == "proj":
            return projection(group(parts[1]), group(parts[2]))
    except (IndexError, ValueError) as exc:
        raise ParseError(f"malformed hom name {name!r}") from exc
    raise ParseError(f"unknown hom name {name!r}")
