"""Shared test structures.

Small categories with enough room for every construction in the
package: a one-object cyclic monoid (parallel morphisms, so equations
can genuinely fail), a chain poset, the eight-element subset lattice
with union as a strict tensor, and an idempotent interior operator on
it giving a non-normal twisted structure.
"""

from __future__ import annotations

import numpy as np

from .fincat import (
    INT, FiniteCategory, Functor, NatTransformation, compose_functors,
    from_monoid, from_poset,
)
from .oplax import (
    LaxMonoidalComonad, TruncatedOplaxStructure, comonad_twist,
    lax_lift_strict_monoidal, lift_strict_monoidal,
)
from .duoidal import TruncatedDuoidal
from .enriched import EnrichedCategory, VCategory
from .functors import TruncatedLaxFunctor
from .distributors import Distributor


def terminal_category():
    return FiniteCategory(np.array([0]), np.array([0]),
                          np.array([0]), np.array([[0]]),
                          obj_names=["*"], mor_names=["id"])


def cyclic_monoid_category(n):
    table = np.array([[(i + j) % n for j in range(n)] for i in range(n)])
    return from_monoid(table, names=[f"g{i}" for i in range(n)])


def strict_cyclic_structure(n, bound=3):
    """One object, morphisms Z/n, tensor = addition of endomorphisms."""
    c = cyclic_monoid_category(n)
    obj = np.zeros((1, 1), dtype=INT)
    mor = np.array([[(i + j) % n for j in range(n)] for i in range(n)],
                   dtype=INT)
    tensor = Functor([c, c], c, obj, mor)
    return lift_strict_monoidal(c, tensor, 0, bound=bound)


def discrete_group_structure(n, bound=3):
    """n objects, identity morphisms only, tensor = addition mod n."""
    leq = np.eye(n, dtype=bool)
    c = from_poset(leq)
    obj = np.array([[(i + j) % n for j in range(n)] for i in range(n)],
                   dtype=INT)
    tensor = Functor([c, c], c, obj, obj.copy())
    return lift_strict_monoidal(c, tensor, 0, bound=bound)


def subset_lattice(k=3):
    """Subsets of a k-element set ordered by inclusion."""
    n = 1 << k
    leq = np.array([[(x & y) == x for y in range(n)] for x in range(n)])
    names = ["{" + ",".join(chr(ord("a") + b)
                            for b in range(k) if x >> b & 1) + "}"
             for x in range(n)]
    c = from_poset(leq)
    c.obj_names = tuple(names)
    return c


def poset_tensor(c, obj_op):
    """Binary tensor on a poset category from a meet/join-like operation.

    The morphism table is forced: (x <= x') tensor (y <= y') is the
    unique comparison between the object-level images.
    """
    n = c.n_obj
    obj = np.array([[obj_op(x, y) for y in range(n)] for x in range(n)],
                   dtype=INT)
    idx = _poset_mor_index(c)
    pairs = [(int(c.src[m]), int(c.dst[m])) for m in range(c.n_mor)]
    mor = np.zeros((c.n_mor, c.n_mor), dtype=INT)
    for f, (x, x2) in enumerate(pairs):
        for g, (y, y2) in enumerate(pairs):
            mor[f, g] = idx[(int(obj[x, y]), int(obj[x2, y2]))]
    return Functor([c, c], c, obj, mor)


def union_structure(k=3, bound=3):
    """The subset lattice with union as a strict tensor, unit empty set."""
    c = subset_lattice(k)
    tensor = poset_tensor(c, lambda x, y: x | y)
    return lift_strict_monoidal(c, tensor, 0, bound=bound)


def intersection_structure(k=3, bound=3):
    """The subset lattice with intersection, unit the full set."""
    c = subset_lattice(k)
    tensor = poset_tensor(c, lambda x, y: x & y)
    return lift_strict_monoidal(c, tensor, (1 << k) - 1, bound=bound)


def _poset_mor_index(c):
    idx = {}
    for m in range(c.n_mor):
        idx[(int(c.src[m]), int(c.dst[m]))] = m
    return idx


def poset_functor(c, obj_map):
    """Monotone map as a functor of a poset category."""
    idx = _poset_mor_index(c)
    obj = np.asarray(obj_map, dtype=INT)
    mor = np.array([idx[(int(obj[int(c.src[m])]), int(obj[int(c.dst[m])]))]
                    for m in range(c.n_mor)], dtype=INT)
    return Functor([c], c, obj, mor)


def poset_nat(c, source, target):
    """The unique transformation between pointwise comparable monotone
    maps of a poset."""
    idx = _poset_mor_index(c)
    comp = np.array([idx[(int(source.obj[x]), int(target.obj[x]))]
                     for x in range(c.n_obj)], dtype=INT)
    return NatTransformation(source, target, comp)


def central_comonad(s: TruncatedOplaxStructure, u: int) -> LaxMonoidalComonad:
    """Comonad on a one-object group structure from a central element.

    W is the identity functor, comultiplication is the element u, the
    counit its inverse, and the arity-k cell is k copies of the
    inverse.  The twist by this comonad has every decomposition cell
    equal to u and counit equal to its inverse: a normal, non-strict
    structure.
    """
    c = s.base
    assert c.n_obj == 1
    n_el = c.n_mor
    ident = Functor.identity(c)
    w2 = compose_functors(ident, [ident])
    v = (-u) % n_el
    w = NatTransformation(ident, w2, np.array([u % n_el], dtype=INT))
    t = NatTransformation(ident, ident, np.array([v], dtype=INT))
    cells = {}
    for k in range(-1, s.bound + 1):
        val = (k * v) % n_el
        if k >= 0:
            cells[k] = np.full((1,) * (k + 1), val, dtype=INT)
        else:
            cells[k] = np.asarray(val, dtype=INT)
    return LaxMonoidalComonad(s, ident, w, t, cells)


def interior_comonad(s: TruncatedOplaxStructure, kept=0b011):
    """Comonad on the union structure keeping a fixed subset's elements.

    W(x) = x & kept is idempotent monotone and lax monoidal: the union
    of trimmed sets sits inside the trimmed union (here they even
    agree), and all comparison cells are the unique poset morphisms.
    """
    c = s.base
    idx = _poset_mor_index(c)
    W = poset_functor(c, [x & kept for x in range(c.n_obj)])
    W2 = Functor([c], c, W.obj[W.obj], W.mor[W.mor])
    w = NatTransformation(W, W2, np.array(
        [idx[(int(W.obj[x]), int(W2.obj[x]))] for x in range(c.n_obj)],
        dtype=INT))
    t = poset_nat(c, W, Functor.identity(c))
    cells = {-1: np.asarray(idx[(s.unit, int(W.obj[s.unit]))], dtype=INT)}
    for n in range(s.bound + 1):
        om = s.omega(n)
        src = om.obj[tuple(np.ix_(*[W.obj] * (n + 1)))]
        tgt = W.obj[om.obj]
        comp = np.empty(src.shape, dtype=INT)
        for pos in np.ndindex(*src.shape):
            comp[pos] = idx[(int(src[pos]), int(tgt[pos]))]
        cells[n] = comp
    return LaxMonoidalComonad(s, W, w, t, cells)


def twisted_union_structure(k=3, kept=0b011, bound=3):
    s = union_structure(k, bound)
    return comonad_twist(s, interior_comonad(s, kept))


def cyclic_duoidal(m, t=0, bound=2):
    """Two-tensor structure on Z/m with both halves strict addition.

    The interchange cell at arities (p, q) is the constant p*q*t.  The
    row and column functor equations force exactly this additivity
    pattern in each index, so every t works; t = 0 is the identity
    interchange.
    """
    c = cyclic_monoid_category(m)
    obj = np.zeros((1, 1), dtype=INT)
    mor = np.array([[(i + j) % m for j in range(m)] for i in range(m)],
                   dtype=INT)
    tensor = Functor([c, c], c, obj, mor)
    lam = lax_lift_strict_monoidal(c, tensor, 0, bound=bound)
    om = lift_strict_monoidal(c, tensor, 0, bound=bound)
    chi = {}
    for p in range(-1, bound + 1):
        for q in range(-1, bound + 1):
            shape = (1,) * ((p + 1) * (q + 1))
            chi[(p, q)] = np.full(shape, (p * q * t) % m, dtype=INT)
    return TruncatedDuoidal(lam, om, chi)


def twisted_cyclic_duoidal(m, u=1, beta=0, bound=2):
    """Cyclic pair whose oplax half is twisted by a central element.

    The oplax decomposition cells all equal u and the counit is -u;
    the lax half stays strict.  The interchange constants
    p*q*beta - (p-1)*q*u are the general solution of the row and
    column equations for these halves, with beta a free parameter.
    """
    c = cyclic_monoid_category(m)
    obj = np.zeros((1, 1), dtype=INT)
    mor = np.array([[(i + j) % m for j in range(m)] for i in range(m)],
                   dtype=INT)
    tensor = Functor([c, c], c, obj, mor)
    lam = lax_lift_strict_monoidal(c, tensor, 0, bound=bound)
    om = lift_strict_monoidal(c, tensor, 0, bound=bound)
    om = comonad_twist(om, central_comonad(om, u))
    chi = {}
    for p in range(-1, bound + 1):
        for q in range(-1, bound + 1):
            shape = (1,) * ((p + 1) * (q + 1))
            chi[(p, q)] = np.full(
                shape, (p * q * beta - (p - 1) * q * u) % m, dtype=INT)
    return TruncatedDuoidal(lam, om, chi)


def lattice_duoidal(k=2, bound=1):
    """Subset lattice with union oplax, intersection lax.

    The interchange cell is the pointwise containment of a union of
    intersections in the intersection of unions.  In a poset every
    equation between matching boundaries holds, so the content is
    that all the comparisons exist.  Kept at bound 1 by default: the
    checks materialize powers of the base category.
    """
    c = subset_lattice(k)
    full = (1 << k) - 1
    union = poset_tensor(c, lambda x, y: x | y)
    inter = poset_tensor(c, lambda x, y: x & y)
    lam = lax_lift_strict_monoidal(c, inter, full, bound=bound)
    om = lift_strict_monoidal(c, union, 0, bound=bound)
    idx = _poset_mor_index(c)
    chi = {}
    for p in range(-1, bound + 1):
        for q in range(-1, bound + 1):
            shape = (c.n_obj,) * ((p + 1) * (q + 1))
            comp = np.empty(shape, dtype=INT)
            for pos in np.ndindex(*shape):
                rows = [pos[i * (q + 1):(i + 1) * (q + 1)]
                        for i in range(p + 1)]
                src = 0
                for row in rows:
                    cap = full
                    for x in row:
                        cap &= x
                    src |= cap
                dst = full
                for j in range(q + 1):
                    cup = 0
                    for row in rows:
                        cup |= row[j]
                    dst &= cup
                comp[pos] = idx[(src, dst)]
            chi[(p, q)] = comp
    return TruncatedDuoidal(lam, om, chi)


def monoid_enriched(structure, mon):
    """One-object enriched category wrapping a monoid object."""
    base = terminal_category()
    Vb = structure.base
    hom = Functor((base.opposite(), base), Vb,
                  np.full((1, 1), mon.carrier, dtype=INT),
                  np.full((1, 1), Vb.ident[mon.carrier], dtype=INT))
    extended = {k: np.full((1,) * (k + 2), v, dtype=INT)
                for k, v in mon.cells.items()}
    return EnrichedCategory(base, structure, hom,
                            np.array([mon.cells[-1]], dtype=INT),
                            np.full((1, 1, 1), mon.cells[1], dtype=INT),
                            extended)


def graded_chain_enriched(m, r=1, b=0, bound=3, structure=None,
                          with_extended=True):
    """Two-object chain enriched in the cyclic structure on Z/m.

    All hom objects sit on the single object of the base; the hom
    action grades a pair of chain morphisms by the difference of their
    path lengths, scaled by r.  Composition at a triple only sees the
    middle object: b at the bottom and b - 2r at the top, the only
    slope extranaturality tolerates.  The iterated cells sum the grade
    over the interior objects of the chain.
    """
    V = structure if structure is not None else \
        strict_cyclic_structure(m, bound)
    base = from_poset(np.array([[True, True], [False, True]]))
    ln = np.array([0, 1, 0])
    hom_mor = (r * (ln[None, :] - ln[:, None])) % m
    hom = Functor((base.opposite(), base), V.base,
                  np.zeros((2, 2), dtype=INT), hom_mor.astype(INT))
    h = np.array([b % m, (b - 2 * r) % m], dtype=INT)
    eta = (-h) % m
    mu = np.broadcast_to(h[None, :, None], (2, 2, 2)).astype(INT)
    extended = None
    if with_extended:
        extended = {-1: eta.astype(INT)}
        for k in range(0, V.bound + 1):
            table = np.zeros((2,) * (k + 2), dtype=INT)
            for pos in np.ndindex(*table.shape):
                table[pos] = sum(int(h[pos[j]])
                                 for j in range(1, k + 1)) % m
            extended[k] = table
    return EnrichedCategory(base, V, hom, eta, mu, extended)


def fuzzy_preorder_vcat(bound=2):
    """Three points preordered with degrees in a two-witness semilattice.

    Hom objects are subsets of a two-element witness set, composed by
    intersection; the full subset sits on and above the diagonal, so
    exactly the chain relations of 0 <= 1 <= 2 admit a weak morphism.
    """
    V = intersection_structure(2, bound=bound)
    idx = _poset_mor_index(V.base)
    hom = np.array([[3, 3, 3], [1, 3, 3], [0, 2, 3]], dtype=INT)
    eta = np.full(3, V.base.ident[3], dtype=INT)
    mu = np.empty((3, 3, 3), dtype=INT)
    for x in range(3):
        for y in range(3):
            for z in range(3):
                mu[x, y, z] = idx[(int(hom[y, z]) & int(hom[x, y]),
                                   int(hom[x, z]))]
    return VCategory(V, hom, eta, mu)


def shift_lax_functor(structure, c):
    """Identity on a one-object cyclic structure, cell n*c at arity n."""
    m = structure.base.n_mor
    cells = {-1: np.asarray((-c) % m, dtype=INT)}
    for n in range(structure.bound + 1):
        cells[n] = np.full((1,) * (n + 1), (n * c) % m, dtype=INT)
    return TruncatedLaxFunctor(Functor.identity(structure.base),
                               structure, structure, cells,
                               "oplax2oplax")


def desk_distributors():
    """Two hand-sized distributors over the 2-chain for coend demos.

    tt has a point source; its three elements sit one over chain
    object 0 and two over object 1, with the chain arrow sending the
    first onto one of the pair.  uu runs the other way with the arrow
    acting on the source side.  Composing uu after tt glues one pair.
    """
    chain = from_poset(np.array([[True, True], [False, True]]))
    point = terminal_category()
    tt = Distributor(point, chain, [[1, 2]],
                     np.array([[0, -1, -1], [1, -1, -1], [-1, 1, 2]],
                              dtype=INT),
                     np.array([[0, 1, 2]], dtype=INT))
    uu = Distributor(chain, point, [[2], [1]],
                     np.array([[0, 1, 2]], dtype=INT),
                     np.array([[0, 1, -1], [-1, -1, 1], [-1, -1, 2]],
                              dtype=INT))
    return tt, uu
