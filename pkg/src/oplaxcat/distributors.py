"""Set-valued distributors and module structures over an oplax base.

Value sets are enumerated in one flat int32 block, C-ordered by object
tuple with an in-set index last, so both actions of a distributor are
total lookup tables over flat ids (INVALID where the boundary does not
match) and functoriality checks reduce to table composition.
Composition of distributors is a union-find quotient of the pair
enumeration over the middle category; class labels are ranks of the
minimal member, which makes the quotient independent of the order the
zigzag generators are processed in.

Module structures come in two layers.  A :class:`VModule` is a family
of action functors ``V^n x M -> M`` with decomposition cells pointing
away from the fused action, matching the orientation of the cells on
the base.  A :class:`VDeltaModule` is the distributor-valued
counterpart: graded value sets ``R^n(a1..an, x; y)`` with one
contravariant action per V slot, actions of the carrier on both sides,
a unit out of the carrier's hom sets and insertion/pairing cells
pointing toward the fused grade.  Axioms are checked on generators;
this is equivalent to checking in the quotient of the composite
because descent (extranaturality of the pairing in the middle object)
is itself a checked family, and the structural isos of the composite
are exactly the generator relabelings.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fincat import (
    INT, INVALID, FiniteCategory, Functor, NatTransformation, Report,
    _fail_tuples, apply_functor, compose_functors, compose_tables, lookup,
    precompose, product, report_mismatch, validate_functor, validate_nat,
    vertical_compose)
from .oplax import TruncatedOplaxStructure
from .enriched import EnrichedCategory


def _flat_layout(sizes):
    """Offsets, total, tuple decode and in-set positions for a size grid."""
    flat = sizes.reshape(-1).astype(np.int64)
    off = np.concatenate(([0], np.cumsum(flat)))[:-1].reshape(sizes.shape)
    total = int(flat.sum())
    coords = np.indices(sizes.shape).reshape(sizes.ndim, -1)
    tup = np.repeat(coords, flat, axis=1).T.astype(INT)
    pos = (np.arange(total) - np.repeat(off.reshape(-1), flat)).astype(INT)
    return off.astype(INT), total, tup, pos


def _mismatch(report, family, signature, lhs, rhs):
    """Like report_mismatch but INVALID on both sides counts as equal.

    Used where partial tables are compared entrywise and a common
    undefined entry is expected, e.g. action composition tables.
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    bad = lhs != rhs
    if bad.ndim == 0:
        if bad:
            report.fail(family, signature, "at ()")
        return
    if bad.any():
        report.fail(family, signature,
                    f"at {_fail_tuples(bad)} ({int(bad.sum())} tuples)")


def _hom_layout(cat):
    """Hom set sizes with a fixed enumeration of each hom set.

    Morphisms are ordered by (source, destination, index); ``rank`` is
    the position of a morphism inside its hom set and ``order`` maps a
    flat slot back to the morphism, consistent with ``cat.hom``.
    """
    counts = np.zeros((cat.n_obj, cat.n_obj), dtype=INT)
    np.add.at(counts, (cat.src, cat.dst), 1)
    off, total, tup, _ = _flat_layout(counts)
    order = np.lexsort((np.arange(cat.n_mor), cat.dst, cat.src)).astype(INT)
    rank = np.empty(cat.n_mor, dtype=INT)
    rank[order] = (np.arange(cat.n_mor)
                   - np.repeat(off.reshape(-1), counts.reshape(-1))).astype(INT)
    return counts, off, rank, order


class Distributor:
    """Finite set-valued bimodule between two finite categories.

    ``sizes[b, c]`` counts the value set at source object b and
    destination object c; its elements are the flat ids
    ``off[b, c] + t`` for ``t < sizes[b, c]``.  ``lact[g, e]`` is the
    covariant action of a destination morphism on the c side,
    ``ract[f, e]`` the contravariant action of a source morphism on
    the b side; both are INVALID off their boundary.
    """

    def __init__(self, src, dst, sizes, lact, ract):
        self.src = src
        self.dst = dst
        self.sizes = np.asarray(sizes, dtype=INT)
        if self.sizes.shape != (src.n_obj, dst.n_obj):
            raise ValueError("sizes must be a src-objects x dst-objects grid")
        if (self.sizes < 0).any():
            raise ValueError("negative value set size")
        self.off, self.n_elem, self.tup, self.pos = _flat_layout(self.sizes)
        self.lact = np.asarray(lact, dtype=INT)
        self.ract = np.asarray(ract, dtype=INT)
        if self.lact.shape != (dst.n_mor, self.n_elem):
            raise ValueError("lact must be dst-morphisms x elements")
        if self.ract.shape != (src.n_mor, self.n_elem):
            raise ValueError("ract must be src-morphisms x elements")

    def element(self, b, c, t):
        return int(self.off[b, c]) + int(t)

    def same_tables(self, other):
        return (np.array_equal(self.sizes, other.sizes)
                and np.array_equal(self.lact, other.lact)
                and np.array_equal(self.ract, other.ract))


def _check_action(report, name, cat, act, active, frozen, covariant):
    """Domain pattern, boundaries, identities and composition of one side."""
    n = act.shape[1]
    att = cat.src if covariant else cat.dst
    res = cat.dst if covariant else cat.src
    defined = act != INVALID
    expect = active[None, :] == att[:, None]
    if not np.array_equal(defined, expect):
        bad = defined != expect
        report.fail(f"{name}.domain", (),
                    f"at {_fail_tuples(bad)} ({int(bad.sum())} entries)")
        return
    mm, ee = np.nonzero(defined)
    out = act[mm, ee]
    ok = (out >= 0) & (out < n)
    if ok.all():
        bad = (active[out] != res[mm]) | (frozen[out] != frozen[ee])
        ok = ~bad
    if not ok.all():
        where = np.nonzero(~ok)[0][:8]
        sites = [(int(mm[k]), int(ee[k])) for k in where]
        report.fail(f"{name}.boundary", (),
                    f"at {sites} ({int((~ok).sum())} entries)")
        return
    got = act[cat.ident[active], np.arange(n)]
    if not np.array_equal(got, np.arange(n)):
        report.fail(f"{name}.identity", (),
                    f"at {_fail_tuples(got != np.arange(n))}")
    m = cat.n_mor
    # lookup masks against the last axes, so handle the 2-d table here
    lhs = np.where(cat.comp[:, :, None] == INVALID, INVALID, act[cat.comp])
    rhs = np.empty((m, m, n), dtype=INT)
    if covariant:
        for a in range(m):
            rhs[a] = lookup(act[a], act)           # act[a] after act[b]
    else:
        for b in range(m):
            rhs[:, b] = lookup(act[b], act)        # act[b] after act[a]
    _mismatch(report, f"{name}.compose", (), lhs, rhs)


def validate_distributor(t: Distributor) -> Report:
    """Both actions are functorial and commute with each other."""
    report = Report()
    _check_action(report, "lact", t.dst, t.lact, t.tup[:, 1], t.tup[:, 0], True)
    _check_action(report, "ract", t.src, t.ract, t.tup[:, 0], t.tup[:, 1], False)
    lhs = np.empty((t.dst.n_mor, t.src.n_mor, t.n_elem), dtype=INT)
    rhs = np.empty_like(lhs)
    for g in range(t.dst.n_mor):
        lhs[g] = lookup(t.lact[g], t.ract)
    for f in range(t.src.n_mor):
        rhs[:, f] = lookup(t.ract[f], t.lact)
    _mismatch(report, "commute", (), lhs, rhs)
    return report


def from_functor(f: Functor) -> Distributor:
    """Representable distributor of a unary functor: values C(F b, c)."""
    assert f.arity == 1
    B, C = f.sources[0], f.target
    counts, hoff, rank, order = _hom_layout(C)
    sizes = counts[f.obj]
    offs, total, tup, pos = _flat_layout(sizes)
    mor = order[hoff[f.obj[tup[:, 0]], tup[:, 1]] + pos] if total else \
        np.zeros(0, dtype=INT)
    lact = np.full((C.n_mor, total), INVALID, dtype=INT)
    for g in range(C.n_mor):
        comp = compose_tables(C, g, mor)
        dd = comp != INVALID
        lact[g, dd] = offs[tup[dd, 0], C.dst[g]] + rank[comp[dd]]
    ract = np.full((B.n_mor, total), INVALID, dtype=INT)
    for h in range(B.n_mor):
        comp = compose_tables(C, mor, int(f.mor[h]))
        # composability in C is not enough when f merges objects
        dd = (comp != INVALID) & (tup[:, 0] == B.dst[h])
        ract[h, dd] = offs[B.src[h], tup[dd, 1]] + rank[comp[dd]]
    return Distributor(B, C, sizes, lact, ract)


def hom_distributor(cat: FiniteCategory) -> Distributor:
    """The hom sets of a category acting on themselves on both sides."""
    return from_functor(Functor.identity(cat))


def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return int(i)


def coend_tables(u: Distributor, t: Distributor, generator_order=None):
    """Union-find data of the composite's value sets.

    For fixed outer objects (a, c) the pairs (iu, it) are enumerated
    middle-object major, and each middle morphism f contributes the
    identifications (iu.f, it) ~ (iu, f.it).  Returns, per (a, c), the
    block offsets by middle object, the class label of every pair and
    the sorted minimal representatives.  Labels are ranks of minimal
    members, so the result does not depend on ``generator_order``;
    the parameter exists so tests can demonstrate exactly that.
    """
    assert t.dst is u.src or t.dst.same_tables(u.src)
    A, B, C = t.src, t.dst, u.dst
    gens = (range(B.n_mor) if generator_order is None
            else [int(f) for f in generator_order])
    out = {}
    for a in range(A.n_obj):
        for c in range(C.n_obj):
            nb = u.sizes[:, c].astype(np.int64) * t.sizes[a, :].astype(np.int64)
            boff = np.concatenate(([0], np.cumsum(nb))).astype(INT)
            total = int(boff[-1])
            parent = list(range(total))
            for f in gens:
                b0, b1 = int(B.src[f]), int(B.dst[f])
                su, st0 = int(u.sizes[b1, c]), int(t.sizes[a, b0])
                st1 = int(t.sizes[a, b1])
                if su == 0 or st0 == 0:
                    continue
                for iu in range(su):
                    mu = int(u.pos[u.ract[f, u.element(b1, c, iu)]])
                    for it in range(st0):
                        mt = int(t.pos[t.lact[f, t.element(a, b0, it)]])
                        left = int(boff[b0]) + mu * st0 + it
                        right = int(boff[b1]) + iu * st1 + mt
                        ri, rj = _find(parent, left), _find(parent, right)
                        if ri != rj:
                            parent[max(ri, rj)] = min(ri, rj)
            roots = np.array([_find(parent, i) for i in range(total)],
                             dtype=INT)
            reps = np.unique(roots) if total else np.zeros(0, dtype=INT)
            relabel = np.full(total, INVALID, dtype=INT)
            relabel[reps] = np.arange(len(reps), dtype=INT)
            cls = relabel[roots] if total else roots
            out[(a, c)] = (boff, cls, reps.astype(INT))
    return out


def _pair_decode(boff, trow, k):
    b = int(np.searchsorted(boff, k, side="right")) - 1
    rem = k - int(boff[b])
    st = int(trow[b])
    return b, rem // st, rem % st


def compose_distributors(u: Distributor, t: Distributor,
                         generator_order=None) -> Distributor:
    """Composite distributor with minimal-representative class labels.

    Actions are computed on representatives; they descend to classes
    because the identifications are generated by single middle
    morphisms acting on one factor at a time.
    """
    tabs = coend_tables(u, t, generator_order)
    A, C = t.src, u.dst
    sizes = np.zeros((A.n_obj, C.n_obj), dtype=INT)
    for (a, c), (_, _, reps) in tabs.items():
        sizes[a, c] = len(reps)
    offs, total, tup, pos = _flat_layout(sizes)
    rep = np.empty((total, 3), dtype=INT)
    for e in range(total):
        a, c = int(tup[e, 0]), int(tup[e, 1])
        boff, _, reps = tabs[(a, c)]
        rep[e] = _pair_decode(boff, t.sizes[a], int(reps[pos[e]]))
    lact = np.full((C.n_mor, total), INVALID, dtype=INT)
    for g in range(C.n_mor):
        for e in range(total):
            a, c = int(tup[e, 0]), int(tup[e, 1])
            if int(C.src[g]) != c:
                continue
            b, iu, it = (int(v) for v in rep[e])
            moved = int(u.pos[u.lact[g, u.element(b, c, iu)]])
            c2 = int(C.dst[g])
            boff2, cls2, _ = tabs[(a, c2)]
            k = int(boff2[b]) + moved * int(t.sizes[a, b]) + it
            lact[g, e] = offs[a, c2] + int(cls2[k])
    ract = np.full((A.n_mor, total), INVALID, dtype=INT)
    for f in range(A.n_mor):
        for e in range(total):
            a, c = int(tup[e, 0]), int(tup[e, 1])
            if int(A.dst[f]) != a:
                continue
            b, iu, it = (int(v) for v in rep[e])
            moved = int(t.pos[t.ract[f, t.element(a, b, it)]])
            a2 = int(A.src[f])
            boff2, cls2, _ = tabs[(a2, c)]
            k = int(boff2[b]) + iu * int(t.sizes[a2, b]) + moved
            ract[f, e] = offs[a2, c] + int(cls2[k])
    return Distributor(A, C, sizes, lact, ract)


def check_distributor_map(x: Distributor, y: Distributor, arr,
                          bijective=True) -> Report:
    """Equivariance (and by default bijectivity) of an element map.

    ``arr`` sends each flat element of x to a flat element of y over
    the same object pair.  Comparisons up to canonical bijection go
    through here; table equality uses ``same_tables`` instead.
    """
    report = Report()
    arr = np.asarray(arr, dtype=INT)
    if arr.shape != (x.n_elem,):
        report.fail("map.shape", ())
        return report
    if x.n_elem and not ((arr >= 0) & (arr < y.n_elem)).all():
        report.fail("map.range", ())
        return report
    if not np.array_equal(x.tup, y.tup[arr]):
        report.fail("map.boundary", (),
                    f"at {_fail_tuples((x.tup != y.tup[arr]).any(axis=1))}")
    for g in range(x.dst.n_mor):
        _mismatch(report, "map.left", (g,),
                  lookup(y.lact[g], arr), lookup(arr, x.lact[g]))
    for f in range(x.src.n_mor):
        _mismatch(report, "map.right", (f,),
                  lookup(y.ract[f], arr), lookup(arr, x.ract[f]))
    if bijective:
        if not np.array_equal(x.sizes, y.sizes):
            report.fail("map.sizes", ())
        elif x.n_elem and np.unique(arr).size != x.n_elem:
            report.fail("map.bijective", ())
    return report


def left_unit_map(t: Distributor):
    """Composite with the destination hom, and the map acting [g, v] -> g.v.

    compose_distributors does not retain representatives, so the coend
    tables are rebuilt once to decode each class into a pair.
    """
    comp = compose_distributors(hom_distributor(t.dst), t)
    _, hoff, _, order = _hom_layout(t.dst)
    tabs = coend_tables(hom_distributor(t.dst), t)
    arr = np.empty(comp.n_elem, dtype=INT)
    for e in range(comp.n_elem):
        a, c = int(comp.tup[e, 0]), int(comp.tup[e, 1])
        boff, _, reps = tabs[(a, c)]
        b, iu, it = _pair_decode(boff, t.sizes[a], int(reps[comp.pos[e]]))
        g = int(order[hoff[b, c] + iu])
        arr[e] = t.lact[g, t.element(a, b, it)]
    return comp, arr


def right_unit_map(t: Distributor):
    """Composite with the source hom, and the map acting [v, f] -> v.f."""
    comp = compose_distributors(t, hom_distributor(t.src))
    counts, hoff, _, order = _hom_layout(t.src)
    tabs = coend_tables(t, hom_distributor(t.src))
    arr = np.empty(comp.n_elem, dtype=INT)
    for e in range(comp.n_elem):
        a, c = int(comp.tup[e, 0]), int(comp.tup[e, 1])
        boff, _, reps = tabs[(a, c)]
        b, iu, it = _pair_decode(boff, counts[a], int(reps[comp.pos[e]]))
        f = int(order[hoff[a, b] + it])
        arr[e] = t.ract[f, t.element(b, c, iu)]
    return comp, arr


# ---------------------------------------------------------------------------
# modules valued in functors


def iter_insertion_keys(bound):
    """Keys (p, q, i): q-ary tensor into V-slot i of the p-ary action."""
    for p in range(1, bound + 1):
        for q in range(-1, bound - p + 1):
            for i in range(p):
                yield p, q, i


def iter_pairing_keys(bound):
    """Keys (p, q): q-ary action nested inside the carrier slot."""
    for p in range(bound + 1):
        for q in range(bound - p + 1):
            yield p, q


class VModule:
    """Truncated action of an oplax base on a finite category.

    ``actions[n]`` is a functor ``V^n x M -> M`` with the carrier slot
    last.  Cells follow the orientation of the base:
    ``omega_cells[(p, q, i)]`` runs from the fused (p+q)-ary action to
    the p-ary one with the q-ary tensor inserted at V-slot i (q = -1
    inserts the unit), ``rho_cells[(p, q)]`` to the p-ary action with
    the q-ary action nested in the carrier slot, and ``counit`` from
    the 0-ary action to the identity of the carrier.
    """

    def __init__(self, base, carrier, bound, actions, omega_cells, rho_cells,
                 counit):
        assert isinstance(base, TruncatedOplaxStructure)
        assert 1 <= bound <= base.bound + 1
        self.base = base
        self.carrier = carrier
        self.bound = int(bound)
        nV, nM = base.base.n_obj, carrier.n_obj
        self.actions = {}
        for n in range(self.bound + 1):
            f = actions[n]
            assert f.arity == n + 1 and f.target is carrier
            assert all(c is base.base for c in f.sources[:n])
            assert f.sources[n] is carrier
            self.actions[n] = f
        self.omega_cells = {}
        for key in iter_insertion_keys(self.bound):
            p, q, i = key
            cell = np.asarray(omega_cells[key], dtype=INT)
            assert cell.shape == (nV,) * (p + q) + (nM,), key
            self.omega_cells[key] = cell
        self.rho_cells = {}
        for key in iter_pairing_keys(self.bound):
            p, q = key
            cell = np.asarray(rho_cells[key], dtype=INT)
            assert cell.shape == (nV,) * (p + q) + (nM,), key
            self.rho_cells[key] = cell
        self.counit = np.asarray(counit, dtype=INT)
        assert self.counit.shape == (nM,)

    def inserted(self, p, q, i):
        """The composite functor with the q-ary tensor at V-slot i."""
        ident = Functor.identity(self.base.base)
        inners = ([ident] * i + [self.base.omega(q)] + [ident] * (p - 1 - i)
                  + [Functor.identity(self.carrier)])
        return compose_functors(self.actions[p], inners)

    def nested(self, p, q):
        """The composite functor with the q-ary action in the carrier slot."""
        ident = Functor.identity(self.base.base)
        return compose_functors(self.actions[p],
                                [ident] * p + [self.actions[q]])

    def omega_nat(self, p, q, i):
        return NatTransformation(self.actions[p + q], self.inserted(p, q, i),
                                 self.omega_cells[(p, q, i)])

    def rho_nat(self, p, q):
        return NatTransformation(self.actions[p + q], self.nested(p, q),
                                 self.rho_cells[(p, q)])

    def counit_nat(self):
        return NatTransformation(self.actions[0],
                                 Functor.identity(self.carrier), self.counit)

    def with_omega_cell(self, key, cell):
        cells = dict(self.omega_cells)
        cells[key] = np.asarray(cell, dtype=INT)
        return VModule(self.base, self.carrier, self.bound, self.actions,
                       cells, self.rho_cells, self.counit)

    def with_rho_cell(self, key, cell):
        cells = dict(self.rho_cells)
        cells[key] = np.asarray(cell, dtype=INT)
        return VModule(self.base, self.carrier, self.bound, self.actions,
                       self.omega_cells, cells, self.counit)

    def with_counit(self, counit):
        return VModule(self.base, self.carrier, self.bound, self.actions,
                       self.omega_cells, self.rho_cells, counit)

    def same_tables(self, other):
        if self.bound != other.bound:
            return False
        for n in range(self.bound + 1):
            if not self.actions[n].same_tables(other.actions[n]):
                return False
        for key in iter_insertion_keys(self.bound):
            if not np.array_equal(self.omega_cells[key],
                                  other.omega_cells[key]):
                return False
        for key in iter_pairing_keys(self.bound):
            if not np.array_equal(self.rho_cells[key], other.rho_cells[key]):
                return False
        return np.array_equal(self.counit, other.counit)


def self_module(s: TruncatedOplaxStructure) -> VModule:
    """The base acting on itself; the carrier slot is the last tensor slot."""
    actions = {n: s.omega(n) for n in range(s.bound + 1)}
    omega_cells = {key: s.assoc[key] for key in iter_insertion_keys(s.bound)}
    rho_cells = {(p, q): s.assoc[(p, q, p)]
                 for p, q in iter_pairing_keys(s.bound)}
    return VModule(s, s.base, s.bound, actions, omega_cells, rho_cells,
                   s.counit)


def trivial_module(s: TruncatedOplaxStructure, carrier: FiniteCategory,
                   bound=None) -> VModule:
    """Projection onto the carrier slot, all cells identities."""
    bound = s.bound if bound is None else bound
    nV, nM = s.base.n_obj, carrier.n_obj
    actions = {}
    for n in range(bound + 1):
        obj = np.broadcast_to(np.arange(nM, dtype=INT),
                              (nV,) * n + (nM,)).copy()
        mor = np.broadcast_to(np.arange(carrier.n_mor, dtype=INT),
                              (s.base.n_mor,) * n + (carrier.n_mor,)).copy()
        actions[n] = Functor((s.base,) * n + (carrier,), carrier, obj, mor)
    ident = {key: np.broadcast_to(carrier.ident,
                                  (nV,) * (key[0] + key[1]) + (nM,)).copy()
             for key in iter_insertion_keys(bound)}
    rho = {key: np.broadcast_to(carrier.ident,
                                (nV,) * (key[0] + key[1]) + (nM,)).copy()
           for key in iter_pairing_keys(bound)}
    return VModule(s, carrier, bound, actions, ident, rho,
                   carrier.ident.copy())


def check_vmodule(mod: VModule) -> Report:
    """Boundary validation plus every module axiom instance in the bound.

    Families and signatures:
      action.*      (n, ...)       functor checks per action
      insert.*      (p, q, i, ..)  naturality of the insertion cells
      nest.*        (p, q, ..)     naturality of the nesting cells
      counit.*                     naturality of the counit
      counit_outer  (p,)           counit on the outer action == identity
      counit_inner  (p,)           counit inside the carrier slot == identity
      counit_slot   (p, i)         base counit inside V-slot i == identity
      parallel_action (p, q, r, i) tensor insertion vs nesting, disjoint
      parallel_slots  (p, q, r, i, i2)  two disjoint V-slot insertions
      sequential_slot (p, q, r, i, j)   r-ary inside the inserted q-ary
      sequential_action (p, q, r)       nested nesting both ways
      sequential_inner  (p, q, r, j)    insertion inside the nested action
    """
    report = Report()
    s = mod.base
    V = s.base
    M = mod.carrier
    K = mod.bound
    identV = Functor.identity(V)
    identM = Functor.identity(M)
    idfV = NatTransformation.identity(identV)
    idfM = NatTransformation.identity(identM)

    for n in range(K + 1):
        rep = validate_functor(mod.actions[n], check_composition=(n <= 1))
        for fam, sig, detail in rep.entries:
            report.fail(f"action.{fam}", (n,) + sig, detail)
    for key in iter_insertion_keys(K):
        rep = validate_nat(mod.omega_nat(*key))
        for fam, sig, detail in rep.entries:
            report.fail(f"insert.{fam}", key, detail)
    for key in iter_pairing_keys(K):
        rep = validate_nat(mod.rho_nat(*key))
        for fam, sig, detail in rep.entries:
            report.fail(f"nest.{fam}", key, detail)
    rep = validate_nat(mod.counit_nat())
    for fam, sig, detail in rep.entries:
        report.fail(f"counit.{fam}", sig, detail)

    for p in range(K + 1):
        om = mod.actions[p]
        left = vertical_compose(precompose(mod.counit_nat(), [om]),
                                mod.rho_nat(0, p))
        report_mismatch(report, "counit_outer", (p,),
                        left.comp, M.ident[om.obj])
        whisk = apply_functor(om, [idfV] * p + [mod.counit_nat()])
        left = vertical_compose(whisk, mod.rho_nat(p, 0))
        report_mismatch(report, "counit_inner", (p,),
                        left.comp, M.ident[om.obj])
        for i in range(p):
            ats = [idfV] * i + [s.counit_nat()] + [idfV] * (p - 1 - i) + [idfM]
            left = vertical_compose(apply_functor(om, ats),
                                    mod.omega_nat(p, 0, i))
            report_mismatch(report, "counit_slot", (p, i),
                            left.comp, M.ident[om.obj])

    for p in range(1, K + 1):
        for q in range(-1, K - p + 1):
            for r in range(0, K - p - q + 1):
                if p + r > K:
                    continue
                for i in range(p):
                    lhs = vertical_compose(
                        precompose(mod.omega_nat(p, q, i),
                                   [identV] * (p + q) + [mod.actions[r]]),
                        mod.rho_nat(p + q, r))
                    rhs = vertical_compose(
                        precompose(mod.rho_nat(p, r),
                                   [identV] * i + [s.omega(q)]
                                   + [identV] * (p + r - 1 - i) + [identM]),
                        mod.omega_nat(p + r, q, i))
                    report_mismatch(report, "parallel_action", (p, q, r, i),
                                    lhs.comp, rhs.comp)

    for p in range(2, K + 1):
        for q in range(-1, K - p + 1):
            for r in range(-1, K - p - q + 1):
                if p + r > K:
                    continue
                for i in range(p):
                    for i2 in range(i + 1, p):
                        lhs = vertical_compose(
                            precompose(mod.omega_nat(p, q, i),
                                       [identV] * (i2 + q) + [s.omega(r)]
                                       + [identV] * (p - 1 - i2) + [identM]),
                            mod.omega_nat(p + q, r, i2 + q))
                        rhs = vertical_compose(
                            precompose(mod.omega_nat(p, r, i2),
                                       [identV] * i + [s.omega(q)]
                                       + [identV] * (p + r - 1 - i)
                                       + [identM]),
                            mod.omega_nat(p + r, q, i))
                        report_mismatch(report, "parallel_slots",
                                        (p, q, r, i, i2), lhs.comp, rhs.comp)

    for p in range(1, K + 1):
        for q in range(0, K - p + 1):
            for r in range(-1, K - p - q + 1):
                for i in range(p):
                    for j in range(q + 1):
                        lhs = vertical_compose(
                            precompose(mod.omega_nat(p, q, i),
                                       [identV] * (i + j) + [s.omega(r)]
                                       + [identV] * (p + q - 1 - i - j)
                                       + [identM]),
                            mod.omega_nat(p + q, r, i + j))
                        ats = ([idfV] * i + [s.assoc_nat(q, r, j)]
                               + [idfV] * (p - 1 - i) + [idfM])
                        rhs = vertical_compose(
                            apply_functor(mod.actions[p], ats),
                            mod.omega_nat(p, q + r, i))
                        report_mismatch(report, "sequential_slot",
                                        (p, q, r, i, j), lhs.comp, rhs.comp)

    for p in range(K + 1):
        for q in range(K - p + 1):
            for r in range(K - p - q + 1):
                lhs = vertical_compose(
                    precompose(mod.rho_nat(p, q),
                               [identV] * (p + q) + [mod.actions[r]]),
                    mod.rho_nat(p + q, r))
                rhs = vertical_compose(
                    apply_functor(mod.actions[p],
                                  [idfV] * p + [mod.rho_nat(q, r)]),
                    mod.rho_nat(p, q + r))
                report_mismatch(report, "sequential_action", (p, q, r),
                                lhs.comp, rhs.comp)

    for p in range(K + 1):
        for q in range(1, K - p + 1):
            for r in range(-1, K - p - q + 1):
                for j in range(q):
                    lhs = vertical_compose(
                        apply_functor(mod.actions[p],
                                      [idfV] * p + [mod.omega_nat(q, r, j)]),
                        mod.rho_nat(p, q + r))
                    rhs = vertical_compose(
                        precompose(mod.rho_nat(p, q),
                                   [identV] * (p + j) + [s.omega(r)]
                                   + [identV] * (q - 1 - j) + [identM]),
                        mod.omega_nat(p + q, r, p + j))
                    report_mismatch(report, "sequential_inner", (p, q, r, j),
                                    lhs.comp, rhs.comp)
    return report


# ---------------------------------------------------------------------------
# modules valued in distributors


def _collapsed(s, full, q, i):
    """Replace the q-block starting at slot i by its tensor object."""
    full = tuple(int(v) for v in full)
    if q >= 0:
        mid = int(s.omega(q).obj[full[i:i + q + 1]])
    else:
        mid = s.unit
    return full[:i] + (mid,) + full[i + q + 1:]


class VDeltaModule:
    """Graded distributor family with actions, unit and fusion cells.

    ``sizes[n]`` is a grid over ``V^n x (x, y)`` counting the value set
    ``R^n(a1..an, x; y)``; elements are flat ids as in
    :class:`Distributor`.  ``vact[n][j, v, e]`` pulls slot j back along
    a V-morphism (contravariant), ``xact[n][f, e]`` pulls the source
    object back, ``yact[n][g, e]`` pushes the destination forward.
    ``unit[f]`` embeds each carrier morphism into grade 0.
    ``omega_cells[(p, q, i)]`` maps grade p at a collapsed tuple (the
    q-ary tensor at slot i) to grade p+q at the full tuple; its last
    axis is the in-set index, padded with INVALID beyond the set size.
    ``rho_cells[(p, q)]`` pairs grade p over (a.., m, y) with grade q
    over (b.., x, m) into grade p+q over (a..b.., x, y); axes are the
    V-tuple, then m, x, y, then both in-set indices.  ``hom`` and
    ``phi`` optionally witness right representability in grade 1.
    """

    def __init__(self, base, carrier, bound, sizes, vact, xact, yact, unit,
                 omega_cells, rho_cells, hom=None, phi=None):
        assert isinstance(base, TruncatedOplaxStructure)
        assert 1 <= bound <= base.bound + 1
        self.base = base
        self.carrier = carrier
        self.bound = int(bound)
        nV, nM = base.base.n_obj, carrier.n_obj
        nmV, nmM = base.base.n_mor, carrier.n_mor
        self.sizes, self.off, self.n_elem = {}, {}, {}
        self.tup, self.pos, self.smax = {}, {}, {}
        for n in range(self.bound + 1):
            grid = np.asarray(sizes[n], dtype=INT)
            if grid.shape != (nV,) * n + (nM, nM):
                raise ValueError(f"sizes[{n}] grid has the wrong shape")
            if (grid < 0).any():
                raise ValueError(f"sizes[{n}] has a negative entry")
            self.sizes[n] = grid
            (self.off[n], self.n_elem[n],
             self.tup[n], self.pos[n]) = _flat_layout(grid)
            self.smax[n] = int(grid.max()) if grid.size else 0
        self.vact, self.xact, self.yact = {}, {}, {}
        for n in range(self.bound + 1):
            E = self.n_elem[n]
            va = np.asarray(vact[n], dtype=INT) if n else \
                np.zeros((0, nmV, E), dtype=INT)
            if va.shape != (n, nmV, E):
                raise ValueError(f"vact[{n}] must be slots x V-morphisms"
                                 " x elements")
            self.vact[n] = va
            xa = np.asarray(xact[n], dtype=INT)
            ya = np.asarray(yact[n], dtype=INT)
            if xa.shape != (nmM, E) or ya.shape != (nmM, E):
                raise ValueError(f"xact[{n}]/yact[{n}] must be carrier"
                                 " morphisms x elements")
            self.xact[n], self.yact[n] = xa, ya
        self.unit = np.asarray(unit, dtype=INT)
        if self.unit.shape != (nmM,):
            raise ValueError("unit must be indexed by carrier morphisms")
        self.omega_cells = {}
        for key in iter_insertion_keys(self.bound):
            p, q, i = key
            cell = np.asarray(omega_cells[key], dtype=INT)
            want = (nV,) * (p + q) + (nM, nM, self.smax[p])
            if cell.shape != want:
                raise ValueError(f"omega cell {key} must have shape {want}")
            self.omega_cells[key] = cell
        self.rho_cells = {}
        for key in iter_pairing_keys(self.bound):
            p, q = key
            cell = np.asarray(rho_cells[key], dtype=INT)
            want = (nV,) * (p + q) + (nM, nM, nM, self.smax[p], self.smax[q])
            if cell.shape != want:
                raise ValueError(f"pairing cell {key} must have shape {want}")
            self.rho_cells[key] = cell
        self.hom = hom
        self.phi = None if phi is None else np.asarray(phi, dtype=INT)

    def elem(self, n, site, t):
        """Flat id of the element at an object tuple and in-set index."""
        return int(self.off[n][tuple(site)]) + int(t)

    def with_rho_cell(self, key, cell):
        cells = dict(self.rho_cells)
        cells[key] = np.asarray(cell, dtype=INT)
        return VDeltaModule(self.base, self.carrier, self.bound, self.sizes,
                            self.vact, self.xact, self.yact, self.unit,
                            self.omega_cells, cells, self.hom, self.phi)

    def with_omega_cell(self, key, cell):
        cells = dict(self.omega_cells)
        cells[key] = np.asarray(cell, dtype=INT)
        return VDeltaModule(self.base, self.carrier, self.bound, self.sizes,
                            self.vact, self.xact, self.yact, self.unit,
                            cells, self.rho_cells, self.hom, self.phi)

    def with_unit(self, unit):
        return VDeltaModule(self.base, self.carrier, self.bound, self.sizes,
                            self.vact, self.xact, self.yact, unit,
                            self.omega_cells, self.rho_cells, self.hom,
                            self.phi)

    def same_tables(self, other):
        if self.bound != other.bound:
            return False
        for n in range(self.bound + 1):
            if not (np.array_equal(self.sizes[n], other.sizes[n])
                    and np.array_equal(self.vact[n], other.vact[n])
                    and np.array_equal(self.xact[n], other.xact[n])
                    and np.array_equal(self.yact[n], other.yact[n])):
                return False
        for key in iter_insertion_keys(self.bound):
            if not np.array_equal(self.omega_cells[key],
                                  other.omega_cells[key]):
                return False
        for key in iter_pairing_keys(self.bound):
            if not np.array_equal(self.rho_cells[key], other.rho_cells[key]):
                return False
        return np.array_equal(self.unit, other.unit)


def as_distributor(d: VDeltaModule, n: int) -> Distributor:
    """Grade n of the family as a plain distributor over a product."""
    V = d.base.base
    M = d.carrier
    prod, _ = product((V,) * n + (M,))
    sizes = d.sizes[n].reshape(prod.n_obj, M.n_obj)
    E = d.n_elem[n]
    mor_shape = (V.n_mor,) * n + (M.n_mor,)
    ract = np.empty((prod.n_mor, E), dtype=INT)
    for fm in range(prod.n_mor):
        coords = np.unravel_index(fm, mor_shape)
        cur = np.arange(E, dtype=INT)
        for j in range(n):
            cur = lookup(d.vact[n][j, int(coords[j])], cur)
        cur = lookup(d.xact[n][int(coords[n])], cur)
        ract[fm] = cur
    return Distributor(prod, M, sizes, d.yact[n].copy(), ract)


def _check_delta_action(report, family, sig, cat, act, attach, covariant):
    """One action table of a graded family: domain, boundary, functoriality.

    Preservation of the untouched tuple coordinates is covered by the
    slots.boundary family in check_vdelta, so only the moved coordinate
    is verified here.
    """
    E = act.shape[1]
    att = cat.src if covariant else cat.dst
    res = cat.dst if covariant else cat.src
    defined = act != INVALID
    expect = attach[None, :] == att[:, None]
    if not np.array_equal(defined, expect):
        report.fail(f"{family}.domain", sig)
        return
    mm, ee = np.nonzero(defined)
    out = act[mm, ee]
    if E and not (((out >= 0) & (out < E)).all()
                  and np.array_equal(attach[out], res[mm])):
        report.fail(f"{family}.boundary", sig)
        return
    got = act[cat.ident[attach], np.arange(E)] if E else np.zeros(0, INT)
    if not np.array_equal(got, np.arange(E)):
        report.fail(f"{family}.identity", sig)
    m = cat.n_mor
    lhs = np.where(cat.comp[:, :, None] == INVALID, INVALID, act[cat.comp])
    rhs = np.empty((m, m, E), dtype=INT)
    if covariant:
        for a in range(m):
            rhs[a] = lookup(act[a], act)
    else:
        for b in range(m):
            rhs[:, b] = lookup(act[b], act)
    _mismatch(report, f"{family}.compose", sig, lhs, rhs)


def check_vdelta(d: VDeltaModule) -> Report:
    """Exhaustive checks of a graded distributor family.

    Action families (per grade): vact/xact/yact domain, boundary,
    identity, composition, pairwise commutation.  Cell families:
    bounds, naturality in every slot, extranaturality of the pairing
    in the middle object, naturality of the unit.  Axiom families
    mirror :func:`check_vmodule`: unit_outer, unit_inner, unit_slot,
    parallel_action, parallel_slots, sequential_slot,
    sequential_action, sequential_inner, checked on generators.
    """
    report = Report()
    s = d.base
    V = s.base
    M = d.carrier
    K = d.bound
    nV = V.n_obj

    for n in range(K + 1):
        tupn = d.tup[n]
        for j in range(n):
            _check_delta_action(report, "vact", (n, j), V, d.vact[n][j],
                                tupn[:, j], covariant=False)
        _check_delta_action(report, "xact", (n,), M, d.xact[n], tupn[:, n],
                            covariant=False)
        _check_delta_action(report, "yact", (n,), M, d.yact[n], tupn[:, n + 1],
                            covariant=True)
        # full tuple preservation beyond the two sampled columns, plus
        # pairwise commutation of all the slot actions
        acts = [d.vact[n][j] for j in range(n)] + [d.xact[n], d.yact[n]]
        for kk in range(n + 2):
            act = acts[kk]
            mm, ee = np.nonzero(act != INVALID)
            out = act[mm, ee]
            if not ((out >= 0) & (out < d.n_elem[n])).all():
                continue
            keep = [c for c in range(n + 2) if c != kk]
            if not np.array_equal(tupn[out][:, keep], tupn[ee][:, keep]):
                report.fail("slots.boundary", (n, kk))
        for ka in range(n + 2):
            for kb in range(ka + 1, n + 2):
                a1, a2 = acts[ka], acts[kb]
                lhs = np.empty((a1.shape[0], a2.shape[0], d.n_elem[n]),
                               dtype=INT)
                rhs = np.empty_like(lhs)
                for u in range(a1.shape[0]):
                    lhs[u] = lookup(a1[u], a2)
                for w in range(a2.shape[0]):
                    rhs[:, w] = lookup(a2[w], a1)
                _mismatch(report, "slots.commute", (n, ka, kb), lhs, rhs)

    if not np.array_equal(d.tup[0][d.unit][:, 0], M.src) or \
            not np.array_equal(d.tup[0][d.unit][:, 1], M.dst):
        report.fail("unit.bounds", ())
    lhs = lookup(d.unit, M.comp)
    rhs = np.empty((M.n_mor, M.n_mor), dtype=INT)
    for g in range(M.n_mor):
        rhs[g] = lookup(d.yact[0][g], d.unit)
    _mismatch(report, "unit.natural_left", (), lhs, rhs)
    rhs = np.empty((M.n_mor, M.n_mor), dtype=INT)
    for h in range(M.n_mor):
        rhs[:, h] = lookup(d.xact[0][h], d.unit)
    _mismatch(report, "unit.natural_right", (), lhs, rhs)

    def insertion_sites(p, q, i):
        for full in itertools.product(range(nV), repeat=p + q):
            col = _collapsed(s, full, q, i)
            for x in range(M.n_obj):
                for y in range(M.n_obj):
                    size = int(d.sizes[p][col + (x, y)])
                    yield full, col, x, y, size

    for key in iter_insertion_keys(K):
        p, q, i = key
        W = d.omega_cells[key]
        ok = True
        for full, col, x, y, size in insertion_sites(p, q, i):
            row = W[full + (x, y)]
            if not ((row[:size] != INVALID).all()
                    and (row[size:] == INVALID).all()):
                ok = False
                break
            for t in range(size):
                e = int(row[t])
                if not (0 <= e < d.n_elem[p + q]
                        and tuple(d.tup[p + q][e]) == full + (x, y)):
                    ok = False
                    break
        if not ok:
            report.fail("insert.bounds", key)
            continue
        for full, col, x, y, size in insertion_sites(p, q, i):
            for t in range(size):
                ein = d.elem(p, col + (x, y), t)
                eout = int(W[full + (x, y, t)])
                for g in range(M.n_mor):
                    if int(M.src[g]) != y:
                        continue
                    lhs = int(d.yact[p + q][g, eout])
                    moved = int(d.yact[p][g, ein])
                    rhs = int(W[full + (x, int(M.dst[g]),
                                        int(d.pos[p][moved]))])
                    if lhs != rhs:
                        report.fail("insert.natural_y", key + (g,))
                for f in range(M.n_mor):
                    if int(M.dst[f]) != x:
                        continue
                    lhs = int(d.xact[p + q][f, eout])
                    moved = int(d.xact[p][f, ein])
                    rhs = int(W[full + (int(M.src[f]), y,
                                        int(d.pos[p][moved]))])
                    if lhs != rhs:
                        report.fail("insert.natural_x", key + (f,))
                for k in range(p + q):
                    inside = i <= k <= i + q
                    for v in range(V.n_mor):
                        if int(V.dst[v]) != full[k]:
                            continue
                        lhs = int(d.vact[p + q][k, v, eout])
                        if inside:
                            wm = s.omega(q).mor[tuple(
                                V.ident[full[i + a]] if a != k - i else v
                                for a in range(q + 1))]
                            moved = int(d.vact[p][i, int(wm), ein])
                        else:
                            j = k if k < i else k - q
                            moved = int(d.vact[p][j, v, ein])
                        full2 = full[:k] + (int(V.src[v]),) + full[k + 1:]
                        rhs = int(W[full2 + (x, y, int(d.pos[p][moved]))])
                        if lhs != rhs:
                            report.fail("insert.natural_v", key + (k, v))

    def pairing_sites(p, q):
        for ab in itertools.product(range(nV), repeat=p + q):
            a, b = ab[:p], ab[p:]
            for m in range(M.n_obj):
                for x in range(M.n_obj):
                    for y in range(M.n_obj):
                        sp = int(d.sizes[p][a + (m, y)])
                        sq = int(d.sizes[q][b + (x, m)])
                        yield a, b, m, x, y, sp, sq

    for key in iter_pairing_keys(K):
        p, q = key
        P = d.rho_cells[key]
        ok = True
        for a, b, m, x, y, sp, sq in pairing_sites(p, q):
            blk = P[a + b + (m, x, y)]
            dd = blk != INVALID
            want = np.zeros_like(dd)
            want[:sp, :sq] = True
            if not np.array_equal(dd, want):
                ok = False
                break
            for tp in range(sp):
                for tq in range(sq):
                    e = int(blk[tp, tq])
                    if not (0 <= e < d.n_elem[p + q]
                            and tuple(d.tup[p + q][e]) == a + b + (x, y)):
                        ok = False
                        break
        if not ok:
            report.fail("pair.bounds", key)
            continue
        for a, b, m, x, y, sp, sq in pairing_sites(p, q):
            for tp in range(sp):
                et = d.elem(p, a + (m, y), tp)
                for tq in range(sq):
                    es = d.elem(q, b + (x, m), tq)
                    eout = int(P[a + b + (m, x, y, tp, tq)])
                    for g in range(M.n_mor):
                        if int(M.src[g]) != y:
                            continue
                        lhs = int(d.yact[p + q][g, eout])
                        mv = int(d.pos[p][d.yact[p][g, et]])
                        rhs = int(P[a + b + (m, x, int(M.dst[g]), mv, tq)])
                        if lhs != rhs:
                            report.fail("pair.natural_y", key + (g,))
                    for f in range(M.n_mor):
                        if int(M.dst[f]) != x:
                            continue
                        lhs = int(d.xact[p + q][f, eout])
                        mv = int(d.pos[q][d.xact[q][f, es]])
                        rhs = int(P[a + b + (m, int(M.src[f]), y, tp, mv)])
                        if lhs != rhs:
                            report.fail("pair.natural_x", key + (f,))
                    for j in range(p):
                        for v in range(V.n_mor):
                            if int(V.dst[v]) != a[j]:
                                continue
                            lhs = int(d.vact[p + q][j, v, eout])
                            mv = int(d.pos[p][d.vact[p][j, v, et]])
                            a2 = a[:j] + (int(V.src[v]),) + a[j + 1:]
                            rhs = int(P[a2 + b + (m, x, y, mv, tq)])
                            if lhs != rhs:
                                report.fail("pair.natural_a", key + (j, v))
                    for j in range(q):
                        for v in range(V.n_mor):
                            if int(V.dst[v]) != b[j]:
                                continue
                            lhs = int(d.vact[p + q][p + j, v, eout])
                            mv = int(d.pos[q][d.vact[q][j, v, es]])
                            b2 = b[:j] + (int(V.src[v]),) + b[j + 1:]
                            rhs = int(P[a + b2 + (m, x, y, tp, mv)])
                            if lhs != rhs:
                                report.fail("pair.natural_b", key + (j, v))
        # extranaturality: moving the middle object across the pairing
        for h in range(M.n_mor):
            m0, m1 = int(M.src[h]), int(M.dst[h])
            for ab in itertools.product(range(nV), repeat=p + q):
                a, b = ab[:p], ab[p:]
                for x in range(M.n_obj):
                    for y in range(M.n_obj):
                        sp = int(d.sizes[p][a + (m1, y)])
                        sq = int(d.sizes[q][b + (x, m0)])
                        for tp in range(sp):
                            et = d.elem(p, a + (m1, y), tp)
                            mv_t = int(d.pos[p][d.xact[p][h, et]])
                            for tq in range(sq):
                                es = d.elem(q, b + (x, m0), tq)
                                mv_s = int(d.pos[q][d.yact[q][h, es]])
                                lhs = int(P[a + b + (m0, x, y, mv_t, tq)])
                                rhs = int(P[a + b + (m1, x, y, tp, mv_s)])
                                if lhs != rhs:
                                    report.fail("pair.extranatural",
                                                key + (h,))

    # generator-level axioms
    for p in range(K + 1):
        bad = set()
        for g in range(M.n_mor):
            m, y = int(M.src[g]), int(M.dst[g])
            t0 = int(d.pos[0][d.unit[g]])
            for a in itertools.product(range(nV), repeat=p):
                for x in range(M.n_obj):
                    for tp in range(int(d.sizes[p][a + (x, m)])):
                        et = d.elem(p, a + (x, m), tp)
                        lhs = int(d.rho_cells[(0, p)][a + (m, x, y, t0, tp)])
                        if lhs != int(d.yact[p][g, et]):
                            bad.add(g)
        for g in sorted(bad):
            report.fail("unit_outer", (p, g))
        bad = set()
        for f in range(M.n_mor):
            x, m = int(M.src[f]), int(M.dst[f])
            t0 = int(d.pos[0][d.unit[f]])
            for a in itertools.product(range(nV), repeat=p):
                for y in range(M.n_obj):
                    for tp in range(int(d.sizes[p][a + (m, y)])):
                        et = d.elem(p, a + (m, y), tp)
                        lhs = int(d.rho_cells[(p, 0)][a + (m, x, y, tp, t0)])
                        if lhs != int(d.xact[p][f, et]):
                            bad.add(f)
        for f in sorted(bad):
            report.fail("unit_inner", (p, f))

    for p in range(1, K + 1):
        for i in range(p):
            ok = True
            for a in itertools.product(range(nV), repeat=p):
                eps = int(s.counit[a[i]])
                for x in range(M.n_obj):
                    for y in range(M.n_obj):
                        for t in range(int(d.sizes[p][a + (x, y)])):
                            et = d.elem(p, a + (x, y), t)
                            tc = int(d.vact[p][i, eps, et])
                            got = int(d.omega_cells[(p, 0, i)][
                                a + (x, y, int(d.pos[p][tc]))])
                            if got != et:
                                ok = False
            if not ok:
                report.fail("unit_slot", (p, i))

    for p in range(1, K + 1):
        for q in range(-1, K - p + 1):
            for r in range(0, K - p - q + 1):
                if p + r > K:
                    continue
                for i in range(p):
                    ok = True
                    for full in itertools.product(range(nV), repeat=p + q):
                        col = _collapsed(s, full, q, i)
                        for c in itertools.product(range(nV), repeat=r):
                            for m in range(M.n_obj):
                                for x in range(M.n_obj):
                                    for y in range(M.n_obj):
                                        sp = int(d.sizes[p][col + (m, y)])
                                        sr = int(d.sizes[r][c + (x, m)])
                                        for tp in range(sp):
                                            te = int(d.omega_cells[(p, q, i)][
                                                full + (m, y, tp)])
                                            for tr in range(sr):
                                                lhs = int(
                                                    d.rho_cells[(p + q, r)][
                                                        full + c
                                                        + (m, x, y,
                                                           int(d.pos[p + q]
                                                               [te]), tr)])
                                                pe = int(
                                                    d.rho_cells[(p, r)][
                                                        col + c
                                                        + (m, x, y, tp, tr)])
                                                rhs = int(
                                                    d.omega_cells[
                                                        (p + r, q, i)][
                                                        full + c
                                                        + (x, y,
                                                           int(d.pos[p + r]
                                                               [pe]))])
                                                if lhs != rhs:
                                                    ok = False
                    if not ok:
                        report.fail("parallel_action", (p, q, r, i))

    for p in range(2, K + 1):
        for q in range(-1, K - p + 1):
            for r in range(-1, K - p - q + 1):
                if p + r > K:
                    continue
                for i in range(p):
                    for i2 in range(i + 1, p):
                        ok = True
                        for rest in itertools.product(range(nV),
                                                      repeat=p - 2):
                            for ublk in itertools.product(range(nV),
                                                          repeat=q + 1):
                                uo = s.unit if q < 0 else \
                                    int(s.omega(q).obj[ublk])
                                for wblk in itertools.product(range(nV),
                                                              repeat=r + 1):
                                    wo = s.unit if r < 0 else \
                                        int(s.omega(r).obj[wblk])
                                    # tuple with both slots collapsed
                                    cc = (rest[:i] + (uo,)
                                          + rest[i:i2 - 1] + (wo,)
                                          + rest[i2 - 1:])
                                    fullA = cc[:i] + ublk + cc[i + 1:]
                                    fullB = cc[:i2] + wblk + cc[i2 + 1:]
                                    fullAB = fullA[:i2 + q] + wblk \
                                        + fullA[i2 + q + 1:]
                                    for x in range(M.n_obj):
                                        for y in range(M.n_obj):
                                            sz = int(d.sizes[p][cc + (x, y)])
                                            for t in range(sz):
                                                tA = int(d.omega_cells[
                                                    (p, q, i)][
                                                    fullA + (x, y, t)])
                                                rA = int(d.omega_cells[
                                                    (p + q, r, i2 + q)][
                                                    fullAB
                                                    + (x, y, int(
                                                        d.pos[p + q][tA]))])
                                                tB = int(d.omega_cells[
                                                    (p, r, i2)][
                                                    fullB + (x, y, t)])
                                                rB = int(d.omega_cells[
                                                    (p + r, q, i)][
                                                    fullAB
                                                    + (x, y, int(
                                                        d.pos[p + r][tB]))])
                                                if rA != rB:
                                                    ok = False
                        if not ok:
                            report.fail("parallel_slots", (p, q, r, i, i2))

    for p in range(1, K + 1):
        for q in range(0, K - p + 1):
            for r in range(-1, K - p - q + 1):
                for i in range(p):
                    for j in range(q + 1):
                        ok = True
                        for c in itertools.product(range(nV), repeat=p - 1):
                            for eblk in itertools.product(range(nV),
                                                          repeat=q + r + 1):
                                ecol = (eblk[:j]
                                        + (s.unit if r < 0 else
                                           int(s.omega(r).obj[
                                               eblk[j:j + r + 1]]),)
                                        + eblk[j + r + 1:])
                                amor = int(s.assoc[(q, r, j)][eblk])
                                cin = c[:i] + (int(s.omega(q).obj[ecol]),) \
                                    + c[i:]
                                full1 = cin[:i] + ecol + cin[i + 1:]
                                F = cin[:i] + eblk + cin[i + 1:]
                                for x in range(M.n_obj):
                                    for y in range(M.n_obj):
                                        sz = int(d.sizes[p][cin + (x, y)])
                                        for t in range(sz):
                                            et = d.elem(p, cin + (x, y), t)
                                            u1 = int(d.omega_cells[(p, q, i)][
                                                full1 + (x, y, t)])
                                            r1 = int(d.omega_cells[
                                                (p + q, r, i + j)][
                                                F + (x, y,
                                                     int(d.pos[p + q][u1]))])
                                            up = int(d.vact[p][i, amor, et])
                                            r2 = int(d.omega_cells[
                                                (p, q + r, i)][
                                                F + (x, y,
                                                     int(d.pos[p][up]))])
                                            if r1 != r2:
                                                ok = False
                        if not ok:
                            report.fail("sequential_slot", (p, q, r, i, j))

    for p in range(K + 1):
        for q in range(K - p + 1):
            for r in range(K - p - q + 1):
                ok = True
                for abc in itertools.product(range(nV), repeat=p + q + r):
                    a, b, c = abc[:p], abc[p:p + q], abc[p + q:]
                    for m1 in range(M.n_obj):
                        for m2 in range(M.n_obj):
                            for x in range(M.n_obj):
                                for y in range(M.n_obj):
                                    sp = int(d.sizes[p][a + (m1, y)])
                                    sq = int(d.sizes[q][b + (m2, m1)])
                                    sr = int(d.sizes[r][c + (x, m2)])
                                    for tp in range(sp):
                                        for tq in range(sq):
                                            e1 = int(d.rho_cells[(p, q)][
                                                a + b + (m1, m2, y, tp, tq)])
                                            for tr in range(sr):
                                                lhs = int(
                                                    d.rho_cells[(p + q, r)][
                                                        a + b + c
                                                        + (m2, x, y,
                                                           int(d.pos[p + q]
                                                               [e1]), tr)])
                                                e2 = int(
                                                    d.rho_cells[(q, r)][
                                                        b + c
                                                        + (m2, x, m1,
                                                           tq, tr)])
                                                rhs = int(
                                                    d.rho_cells[(p, q + r)][
                                                        a + b + c
                                                        + (m1, x, y, tp,
                                                           int(d.pos[q + r]
                                                               [e2]))])
                                                if lhs != rhs:
                                                    ok = False
                if not ok:
                    report.fail("sequential_action", (p, q, r))

    for p in range(K + 1):
        for q in range(1, K - p + 1):
            for r in range(-1, K - p - q + 1):
                for j in range(q):
                    ok = True
                    for a in itertools.product(range(nV), repeat=p):
                        for cb in itertools.product(range(nV), repeat=q - 1):
                            for wblk in itertools.product(range(nV),
                                                          repeat=r + 1):
                                cin = cb[:j] + (s.unit if r < 0 else
                                                int(s.omega(r).obj[wblk]),) \
                                    + cb[j:]
                                Fb = cin[:j] + wblk + cin[j + 1:]
                                for m in range(M.n_obj):
                                    for x in range(M.n_obj):
                                        for y in range(M.n_obj):
                                            sp = int(d.sizes[p][a + (m, y)])
                                            sq = int(d.sizes[q][
                                                cin + (x, m)])
                                            for tp in range(sp):
                                                for tq in range(sq):
                                                    s1 = int(d.omega_cells[
                                                        (q, r, j)][
                                                        Fb + (x, m, tq)])
                                                    lhs = int(d.rho_cells[
                                                        (p, q + r)][
                                                        a + Fb
                                                        + (m, x, y, tp,
                                                           int(d.pos[q + r]
                                                               [s1]))])
                                                    u = int(d.rho_cells[
                                                        (p, q)][
                                                        a + cin
                                                        + (m, x, y, tp, tq)])
                                                    rhs = int(d.omega_cells[
                                                        (p + q, r, p + j)][
                                                        a + Fb
                                                        + (x, y,
                                                           int(d.pos[p + q]
                                                               [u]))])
                                                    if lhs != rhs:
                                                        ok = False
                    if not ok:
                        report.fail("sequential_inner", (p, q, r, j))
    return report


# ---------------------------------------------------------------------------
# bridges


def vdelta_from_vmodule(mod: VModule) -> VDeltaModule:
    """Value sets M(action(a.., x), y) with composition as structure."""
    s = mod.base
    V = s.base
    M = mod.carrier
    K = mod.bound
    nV, nM = V.n_obj, M.n_obj
    countsM, hoffM, rankM, orderM = _hom_layout(M)
    sizes, layouts, mors = {}, {}, {}
    for n in range(K + 1):
        robj = mod.actions[n].obj
        sizes[n] = countsM[robj]
        off, total, tup, pos = _flat_layout(sizes[n])
        layouts[n] = (off, total, tup, pos)
        if total:
            so = robj[tuple(tup[:, k] for k in range(n + 1))]
            mors[n] = orderM[hoffM[so, tup[:, n + 1]] + pos]
        else:
            mors[n] = np.zeros(0, dtype=INT)
    vact, xact, yact = {}, {}, {}
    for n in range(K + 1):
        off, total, tup, pos = layouts[n]
        act = mod.actions[n]
        va = np.full((n, V.n_mor, total), INVALID, dtype=INT)
        for j in range(n):
            for v in range(V.n_mor):
                mask = tup[:, j] == V.dst[v]
                if not mask.any():
                    continue
                idx = tuple(V.ident[tup[mask, k]] if k != j
                            else np.full(int(mask.sum()), v, dtype=INT)
                            for k in range(n)) + (M.ident[tup[mask, n]],)
                w = M.comp[mors[n][mask], act.mor[idx]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[j] = np.full(int(mask.sum()), V.src[v], dtype=INT)
                va[j, v, mask] = off[tuple(cols)] + rankM[w]
        vact[n] = va
        xa = np.full((M.n_mor, total), INVALID, dtype=INT)
        ya = np.full((M.n_mor, total), INVALID, dtype=INT)
        for f in range(M.n_mor):
            mask = tup[:, n] == M.dst[f]
            if mask.any():
                idx = tuple(V.ident[tup[mask, k]] for k in range(n)) \
                    + (np.full(int(mask.sum()), f, dtype=INT),)
                w = M.comp[mors[n][mask], act.mor[idx]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[n] = np.full(int(mask.sum()), M.src[f], dtype=INT)
                xa[f, mask] = off[tuple(cols)] + rankM[w]
            mask = tup[:, n + 1] == M.src[f]
            if mask.any():
                w = M.comp[f, mors[n][mask]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[n + 1] = np.full(int(mask.sum()), M.dst[f], dtype=INT)
                ya[f, mask] = off[tuple(cols)] + rankM[w]
        xact[n], yact[n] = xa, ya
    off0 = layouts[0][0]
    w = M.comp[np.arange(M.n_mor), mod.counit[M.src]]
    unit = off0[M.src, M.dst] + rankM[w]
    smax = {n: int(sizes[n].max()) if sizes[n].size else 0
            for n in range(K + 1)}
    omega_cells = {}
    for key in iter_insertion_keys(K):
        p, q, i = key
        cell = np.full((nV,) * (p + q) + (nM, nM, smax[p]), INVALID,
                       dtype=INT)
        cmor = mod.omega_cells[key]
        offp, offpq = layouts[p][0], layouts[p + q][0]
        for full in itertools.product(range(nV), repeat=p + q):
            col = _collapsed(s, full, q, i)
            for x in range(nM):
                so = int(mod.actions[p].obj[col + (x,)])
                cm = int(cmor[full + (x,)])
                for y in range(nM):
                    base_in = int(hoffM[so, y])
                    for t in range(int(countsM[so, y])):
                        u = int(orderM[base_in + t])
                        w = int(M.comp[u, cm])
                        cell[full + (x, y, t)] = \
                            offpq[full + (x, y)] + int(rankM[w])
        omega_cells[key] = cell
    rho_cells = {}
    for key in iter_pairing_keys(K):
        p, q = key
        cell = np.full((nV,) * (p + q) + (nM, nM, nM, smax[p], smax[q]),
                       INVALID, dtype=INT)
        cmor = mod.rho_cells[key]
        offpq = layouts[p + q][0]
        for ab in itertools.product(range(nV), repeat=p + q):
            a, b = ab[:p], ab[p:]
            ids_a = tuple(int(V.ident[o]) for o in a)
            for x in range(nM):
                cm = int(cmor[ab + (x,)])
                for m in range(nM):
                    soq = int(mod.actions[q].obj[b + (x,)])
                    sop = int(mod.actions[p].obj[a + (m,)])
                    for tq in range(int(countsM[soq, m])):
                        smor = int(orderM[hoffM[soq, m] + tq])
                        mid = int(mod.actions[p].mor[ids_a + (smor,)])
                        for y in range(nM):
                            for tp in range(int(countsM[sop, y])):
                                tmor = int(orderM[hoffM[sop, y] + tp])
                                w = int(M.comp[int(M.comp[tmor, mid]), cm])
                                cell[ab + (m, x, y, tp, tq)] = \
                                    offpq[ab + (x, y)] + int(rankM[w])
        rho_cells[key] = cell
    return VDeltaModule(s, M, K, sizes, vact, xact, yact, unit,
                        omega_cells, rho_cells)


def vmodule_from_vdelta(d: VDeltaModule, actions) -> VModule:
    """Recover functor-valued structure when the value sets are hom sets.

    actions fixes the action functors; every value grid must equal the
    hom-set counts of the carrier at the action objects in the
    canonical enumeration, otherwise there is nothing to recover and a
    ValueError is raised.  Cells come out by evaluating at identities.
    """
    s, M, K = d.base, d.carrier, d.bound
    V = s.base
    nV, nM = V.n_obj, M.n_obj
    countsM, hoffM, rankM, orderM = _hom_layout(M)
    for n in range(K + 1):
        ob = np.asarray(actions[n].obj)
        if (ob.shape != d.sizes[n].shape[:-1] or (ob < 0).any()
                or (ob >= nM).any()
                or not np.array_equal(d.sizes[n], countsM[ob])):
            raise ValueError(f"grade {n} value sets are not the hom sets"
                             " of the given action")

    def decode(n, e):
        row = tuple(int(v) for v in d.tup[n][e])
        so = int(actions[n].obj[row[:n + 1]])
        return int(orderM[hoffM[so, row[n + 1]] + int(d.pos[n][e])])

    omega_cells = {}
    for key in iter_insertion_keys(K):
        p, q, i = key
        cell = np.empty((nV,) * (p + q) + (nM,), dtype=INT)
        for full in itertools.product(range(nV), repeat=p + q):
            col = _collapsed(s, full, q, i)
            for x in range(nM):
                ob = int(actions[p].obj[col + (x,)])
                tid = int(rankM[M.ident[ob]])
                cell[full + (x,)] = decode(
                    p + q, int(d.omega_cells[key][full + (x, ob, tid)]))
        omega_cells[key] = cell
    rho_cells = {}
    for key in iter_pairing_keys(K):
        p, q = key
        cell = np.empty((nV,) * (p + q) + (nM,), dtype=INT)
        for ab in itertools.product(range(nV), repeat=p + q):
            a, b = ab[:p], ab[p:]
            for x in range(nM):
                m = int(actions[q].obj[b + (x,)])
                obp = int(actions[p].obj[a + (m,)])
                tp = int(rankM[M.ident[obp]])
                tq = int(rankM[M.ident[m]])
                cell[ab + (x,)] = decode(
                    p + q,
                    int(d.rho_cells[key][ab + (m, x, obp, tp, tq)]))
        rho_cells[key] = cell
    counit = np.empty(nM, dtype=INT)
    for x in range(nM):
        counit[x] = decode(0, int(d.unit[M.ident[x]]))
    return VModule(s, M, K, actions, omega_cells, rho_cells, counit)


def vdelta_from_enriched(e: EnrichedCategory, bound=None) -> VDeltaModule:
    """Graded family V(tensor(a..), hom(x, y)) of an enriched category.

    The default bound is one above the truncation of the base: grade n
    pairs the n V-objects through the (n-1)-indexed tensor, so every
    cell stays inside the available coherence data.  Witnesses for
    right representability (the hom bifunctor together with the
    identity comparison in grade 1) are stored on the result.
    """
    s = e.V
    Vb = s.base
    M = e.base
    K = s.bound + 1 if bound is None else int(bound)
    nV, nM = Vb.n_obj, M.n_obj
    countsV, hoffV, rankV, orderV = _hom_layout(Vb)
    H = e.hom.obj
    sizes, layouts, mors, doms = {}, {}, {}, {}
    for n in range(K + 1):
        dom = s.omega(n - 1).obj
        doms[n] = dom
        sizes[n] = countsV[dom][..., H]
        off, total, tup, pos = _flat_layout(sizes[n])
        layouts[n] = (off, total, tup, pos)
        if total:
            so = dom[tuple(tup[:, k] for k in range(n))] if n else \
                np.full(total, int(dom[()]), dtype=INT)
            mors[n] = orderV[hoffV[so, H[tup[:, n], tup[:, n + 1]]] + pos]
        else:
            mors[n] = np.zeros(0, dtype=INT)
    vact, xact, yact = {}, {}, {}
    for n in range(K + 1):
        off, total, tup, pos = layouts[n]
        va = np.full((n, Vb.n_mor, total), INVALID, dtype=INT)
        for j in range(n):
            for v in range(Vb.n_mor):
                mask = tup[:, j] == Vb.dst[v]
                if not mask.any():
                    continue
                idx = tuple(Vb.ident[tup[mask, k]] if k != j
                            else np.full(int(mask.sum()), v, dtype=INT)
                            for k in range(n))
                w = Vb.comp[mors[n][mask], s.omega(n - 1).mor[idx]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[j] = np.full(int(mask.sum()), Vb.src[v], dtype=INT)
                va[j, v, mask] = off[tuple(cols)] + rankV[w]
        vact[n] = va
        xa = np.full((M.n_mor, total), INVALID, dtype=INT)
        ya = np.full((M.n_mor, total), INVALID, dtype=INT)
        for f in range(M.n_mor):
            mask = tup[:, n] == M.dst[f]
            if mask.any():
                hm = e.hom.mor[f, M.ident[tup[mask, n + 1]]]
                w = Vb.comp[hm, mors[n][mask]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[n] = np.full(int(mask.sum()), M.src[f], dtype=INT)
                xa[f, mask] = off[tuple(cols)] + rankV[w]
            mask = tup[:, n + 1] == M.src[f]
            if mask.any():
                hm = e.hom.mor[M.ident[tup[mask, n]], f]
                w = Vb.comp[hm, mors[n][mask]]
                cols = [tup[mask, k] for k in range(n + 2)]
                cols[n + 1] = np.full(int(mask.sum()), M.dst[f], dtype=INT)
                ya[f, mask] = off[tuple(cols)] + rankV[w]
        xact[n], yact[n] = xa, ya
    off0 = layouts[0][0]
    w = Vb.comp[e.hom.mor[M.ident[M.src], np.arange(M.n_mor)], e.eta[M.src]]
    unit = off0[M.src, M.dst] + rankV[w]
    smax = {n: int(sizes[n].max()) if sizes[n].size else 0
            for n in range(K + 1)}
    omega_cells = {}
    for key in iter_insertion_keys(K):
        p, q, i = key
        cell = np.full((nV,) * (p + q) + (nM, nM, smax[p]), INVALID,
                       dtype=INT)
        offpq = layouts[p + q][0]
        amors = s.assoc[(p - 1, q, i)]
        for full in itertools.product(range(nV), repeat=p + q):
            col = _collapsed(s, full, q, i)
            so = int(doms[p][col]) if p else int(doms[p][()])
            am = int(amors[full])
            for x in range(nM):
                for y in range(nM):
                    hx = int(H[x, y])
                    for t in range(int(countsV[so, hx])):
                        u = int(orderV[hoffV[so, hx] + t])
                        w = int(Vb.comp[u, am])
                        cell[full + (x, y, t)] = \
                            offpq[full + (x, y)] + int(rankV[w])
        omega_cells[key] = cell

    def pairing_route(p, q, a, b):
        if p >= 1:
            xa = int(doms[p][a]) if p else int(doms[p][()])
            return int(Vb.comp[s.assoc[(1, q - 1, 1)][(xa,) + b],
                               s.assoc[(q, p - 1, 0)][a + b]])
        xb = int(doms[q][b]) if q else int(doms[q][()])
        return int(Vb.comp[s.assoc[(1, p - 1, 0)][a + (xb,)],
                           s.assoc[(p, q - 1, p)][a + b]])

    rho_cells = {}
    for key in iter_pairing_keys(K):
        p, q = key
        cell = np.full((nV,) * (p + q) + (nM, nM, nM, smax[p], smax[q]),
                       INVALID, dtype=INT)
        offpq = layouts[p + q][0]
        for ab in itertools.product(range(nV), repeat=p + q):
            a, b = ab[:p], ab[p:]
            route = pairing_route(p, q, a, b)
            sop = int(doms[p][a]) if p else int(doms[p][()])
            soq = int(doms[q][b]) if q else int(doms[q][()])
            for m in range(nM):
                for x in range(nM):
                    hq = int(H[x, m])
                    for y in range(nM):
                        hp = int(H[m, y])
                        pre = int(e.mu[x, m, y])
                        for tp in range(int(countsV[sop, hp])):
                            tmor = int(orderV[hoffV[sop, hp] + tp])
                            for tq in range(int(countsV[soq, hq])):
                                smor = int(orderV[hoffV[soq, hq] + tq])
                                tm = int(s.tensors[1].mor[tmor, smor])
                                w = int(Vb.comp[int(Vb.comp[pre, tm]), route])
                                cell[ab + (m, x, y, tp, tq)] = \
                                    offpq[ab + (x, y)] + int(rankV[w])
        rho_cells[key] = cell
    off1 = layouts[1][0]
    phi = np.full((nV, nM, nM, max(smax[1], 1)), INVALID, dtype=INT)
    ar = np.arange(max(smax[1], 1), dtype=INT)
    grid = off1[..., None] + ar
    keep = ar < sizes[1][..., None]
    phi[keep] = grid[keep]
    return VDeltaModule(s, M, K, sizes, vact, xact, yact, unit,
                        omega_cells, rho_cells, hom=e.hom, phi=phi)


def check_right_representable(d: VDeltaModule, hom=None, phi=None) -> Report:
    """Grade 1 represents the whole family through the unary tensor.

    hom is an (op, id)-bifunctor into the base category; phi lists, per
    V-object a and carrier pair (x, y), the grade 1 element matched to
    the k-th morphism of V(tensor0(a), hom(x, y)).  The grade-p
    comparison map composes a candidate with the counit, reads off phi
    and applies the grade 1 -> p insertion cell; phi.bijective reports
    its first failure site for each grade.
    """
    if hom is None:
        hom = d.hom
    if phi is None:
        phi = d.phi
    if hom is None or phi is None:
        raise ValueError("no representability witness was given or stored")
    report = Report()
    s, M, K = d.base, d.carrier, d.bound
    Vb = s.base
    nV, nM = Vb.n_obj, M.n_obj
    rep = validate_functor(hom)
    for fam, sig, detail in rep.entries:
        report.fail(f"hom.{fam}", sig, detail)
    if not report.ok():
        return report
    countsV, hoffV, rankV, orderV = _hom_layout(Vb)
    H = hom.obj
    phi = np.asarray(phi, dtype=INT)
    if phi.ndim != 4 or phi.shape[:3] != (nV, nM, nM):
        report.fail("phi.shape", ())
        return report
    sizes_ok = True
    for p in range(K + 1):
        dom = s.omega(p - 1).obj
        want = countsV[dom][..., H]
        if not np.array_equal(d.sizes[p], want):
            bad = d.sizes[p] != want
            report.fail("phi.bijective", (p,),
                        f"at {_fail_tuples(bad)} (value counts differ)")
            sizes_ok = False
    if not sizes_ok:
        return report
    dsz = int(d.sizes[1].max()) if d.sizes[1].size else 0
    if phi.shape[3] < dsz:
        report.fail("phi.shape", ())
        return report
    width = phi.shape[3]
    ar = np.arange(width, dtype=INT)
    defined = phi != INVALID
    expect = ar[None, None, None, :] < d.sizes[1][..., None]
    if not np.array_equal(defined, expect):
        report.fail("phi.domain", ())
        return report
    vals = phi[defined]
    idx = np.indices(phi.shape).reshape(4, -1).T[defined.reshape(-1)]
    if vals.size and not (((vals >= 0) & (vals < d.n_elem[1])).all()
                          and np.array_equal(d.tup[1][vals],
                                             idx[:, :3].astype(INT))):
        report.fail("phi.domain", (), "element out of place")
        return report
    t0mor = s.tensors[0].mor

    def dom_mor(a, x, y, k):
        return int(orderV[hoffV[int(s.tensors[0].obj[a]), int(H[x, y])] + k])

    for v in range(Vb.n_mor):
        a1, a0 = int(Vb.dst[v]), int(Vb.src[v])
        ok = True
        for x in range(nM):
            for y in range(nM):
                for k in range(int(d.sizes[1][a1, x, y])):
                    u = dom_mor(a1, x, y, k)
                    w = int(Vb.comp[u, t0mor[v]])
                    lhs = int(phi[a0, x, y, int(rankV[w])])
                    if lhs != int(d.vact[1][0, v, phi[a1, x, y, k]]):
                        ok = False
        if not ok:
            report.fail("phi.natural_a", (v,))
    for f in range(M.n_mor):
        x1, x0 = int(M.dst[f]), int(M.src[f])
        ok = True
        for a in range(nV):
            for y in range(nM):
                hm = int(hom.mor[f, M.ident[y]])
                for k in range(int(d.sizes[1][a, x1, y])):
                    u = dom_mor(a, x1, y, k)
                    w = int(Vb.comp[hm, u])
                    lhs = int(phi[a, x0, y, int(rankV[w])])
                    if lhs != int(d.xact[1][f, phi[a, x1, y, k]]):
                        ok = False
        if not ok:
            report.fail("phi.natural_x", (f,))
    for g in range(M.n_mor):
        y0, y1 = int(M.src[g]), int(M.dst[g])
        ok = True
        for a in range(nV):
            for x in range(nM):
                hm = int(hom.mor[M.ident[x], g])
                for k in range(int(d.sizes[1][a, x, y0])):
                    u = dom_mor(a, x, y0, k)
                    w = int(Vb.comp[hm, u])
                    lhs = int(phi[a, x, y1, int(rankV[w])])
                    if lhs != int(d.yact[1][g, phi[a, x, y0, k]]):
                        ok = False
        if not ok:
            report.fail("phi.natural_y", (g,))
    for p in range(K + 1):
        dom = s.omega(p - 1).obj
        bad = None
        for avec in itertools.product(range(nV), repeat=p):
            X = int(dom[avec]) if p else int(dom[()])
            eps = int(s.counit[X])
            for x in range(nM):
                for y in range(nM):
                    hx = int(H[x, y])
                    seen = set()
                    for k in range(int(countsV[X, hx])):
                        u = int(orderV[hoffV[X, hx] + k])
                        w = int(Vb.comp[u, eps])
                        ge = int(phi[X, x, y, int(rankV[w])])
                        out = int(d.omega_cells[(1, p - 1, 0)][
                            avec + (x, y, int(d.pos[1][ge]))])
                        if out == INVALID or out in seen:
                            bad = avec + (x, y)
                            break
                        seen.add(out)
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            report.fail("phi.bijective", (p,), f"at {bad} (not injective)")
    return report


def enriched_from_right_rep(d: VDeltaModule, hom=None, phi=None):
    """Extract unit and composition data from a representable family.

    Inverts the grade 0 comparison map on the unit elements and the
    grade 2 map on the pairing of the two universal grade 1 elements;
    raises ValueError when an inversion fails.  Needs bound >= 2.
    """
    if hom is None:
        hom = d.hom
    if phi is None:
        phi = d.phi
    if hom is None or phi is None:
        raise ValueError("no representability witness was given or stored")
    if d.bound < 2:
        raise ValueError("the pairing extraction needs bound at least 2")
    s, M = d.base, d.carrier
    Vb = s.base
    countsV, hoffV, rankV, orderV = _hom_layout(Vb)
    phi = np.asarray(phi, dtype=INT)
    H = hom.obj

    def phi_power(p, avec, x, y, u):
        X = int(s.omega(p - 1).obj[avec]) if p else \
            int(s.omega(p - 1).obj[()])
        w = int(Vb.comp[u, s.counit[X]])
        ge = int(phi[X, x, y, int(rankV[w])])
        return int(d.omega_cells[(1, p - 1, 0)][
            avec + (x, y, int(d.pos[1][ge]))])

    def invert(p, avec, x, y, target):
        X = int(s.omega(p - 1).obj[avec]) if p else \
            int(s.omega(p - 1).obj[()])
        hx = int(H[x, y])
        for k in range(int(countsV[X, hx])):
            u = int(orderV[hoffV[X, hx] + k])
            if phi_power(p, avec, x, y, u) == target:
                return u
        raise ValueError("comparison map not invertible at grade"
                         f" {p}, site {avec + (x, y)}")

    eta = np.empty(M.n_obj, dtype=INT)
    for x in range(M.n_obj):
        eta[x] = invert(0, (), x, x, int(d.unit[M.ident[x]]))
    mu = np.empty((M.n_obj, M.n_obj, M.n_obj), dtype=INT)
    for x in range(M.n_obj):
        for m in range(M.n_obj):
            h0 = int(H[x, m])
            ts = int(phi[h0, x, m, int(rankV[s.counit[h0]])])
            for y in range(M.n_obj):
                h1 = int(H[m, y])
                tt = int(phi[h1, m, y, int(rankV[s.counit[h1]])])
                pair = int(d.rho_cells[(1, 1)][
                    (h1, h0, m, x, y, int(d.pos[1][tt]), int(d.pos[1][ts]))])
                mu[x, m, y] = invert(2, (h1, h0), x, y, pair)
    return EnrichedCategory(M, s, hom, eta, mu)
