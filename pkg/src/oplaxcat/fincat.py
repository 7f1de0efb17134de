"""Finite categories with dense integer indexing.

Objects and morphisms are integers ``0..n-1``.  Source, target, identity
and composition are numpy ``int32`` tables so that exhaustive coherence
checks vectorize.  A functor out of a finite product ``C1 x ... x Ck``
is stored as a k-dimensional lookup table; the product category itself
is never materialized unless explicitly requested via :func:`product`.

``comp[g, f]`` holds the composite ``g after f`` and ``-1`` when the
pair is not composable.  Any ``-1`` surfacing inside a diagram composite
therefore marks an ill-formed leg, and the checkers report it.
"""

from __future__ import annotations

import itertools

import numpy as np

INT = np.int32
INVALID = -1


class Report:
    """Ordered list of named diagram failures.

    Entries are ``(family, signature, detail)`` triples.  Enumeration
    order in every checker is lexicographic in the signature, so reports
    are deterministic and byte-identical across runs.
    """

    def __init__(self):
        self.entries = []

    def fail(self, family, signature, detail=""):
        self.entries.append((family, tuple(signature), detail))

    def extend(self, other):
        self.entries.extend(other.entries)

    def ok(self):
        return not self.entries

    def families(self):
        return sorted({e[0] for e in self.entries})

    def lines(self):
        out = []
        for family, signature, detail in self.entries:
            sig = ",".join(str(s) for s in signature)
            line = f"{family}[{sig}]"
            if detail:
                line += f": {detail}"
            out.append(line)
        return out

    def __str__(self):
        if self.ok():
            return "ok"
        return "\n".join(self.lines())

    def __len__(self):
        return len(self.entries)


def _fail_tuples(mask, limit=8):
    """First few coordinates where a boolean failure mask is set."""
    idx = np.argwhere(mask)
    return [tuple(int(v) for v in row) for row in idx[:limit]]


def compose_tables(cat, b, a):
    """Entrywise composite ``b after a`` with INVALID propagation.

    Plain fancy indexing would wrap an INVALID (-1) index around to the
    last morphism, silently producing garbage; every composite in the
    axiom checkers goes through here instead.
    """
    b = np.asarray(b, dtype=INT)
    a = np.asarray(a, dtype=INT)
    out = cat.comp[b, a]
    bad = (b == INVALID) | (a == INVALID)
    if bad.any():
        out = np.where(bad, INVALID, out)
    return out


def lookup(table, idx):
    """``table[idx]`` with INVALID indices propagated, not wrapped."""
    idx = np.asarray(idx, dtype=INT)
    out = table[idx]
    bad = idx == INVALID
    if bad.any():
        out = np.where(bad, INVALID, out)
    return out


def report_mismatch(report, family, signature, lhs, rhs):
    """Compare two composite tables and record failing object tuples.

    A ``-1`` on either side means a leg of the diagram was not even
    composable; those tuples are reported as failures too.
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    bad = (lhs != rhs) | (lhs == INVALID) | (rhs == INVALID)
    if bad.ndim == 0:
        if bad:
            report.fail(family, signature, "at ()")
        return
    if bad.any():
        tuples = _fail_tuples(bad)
        report.fail(family, signature, f"at {tuples} ({int(bad.sum())} tuples)")


class FiniteCategory:
    """A finite category presented by dense index tables."""

    def __init__(self, src, dst, ident, comp, obj_names=None, mor_names=None):
        self.src = np.ascontiguousarray(src, dtype=INT)
        self.dst = np.ascontiguousarray(dst, dtype=INT)
        self.ident = np.ascontiguousarray(ident, dtype=INT)
        self.comp = np.ascontiguousarray(comp, dtype=INT)
        self.n_obj = int(self.ident.shape[0])
        self.n_mor = int(self.src.shape[0])
        assert self.comp.shape == (self.n_mor, self.n_mor)
        self.obj_names = tuple(obj_names) if obj_names else tuple(
            f"x{i}" for i in range(self.n_obj))
        self.mor_names = tuple(mor_names) if mor_names else tuple(
            f"m{i}" for i in range(self.n_mor))

    def __repr__(self):
        return f"FiniteCategory({self.n_obj} objects, {self.n_mor} morphisms)"

    def same_tables(self, other):
        return (
            self.n_obj == other.n_obj
            and self.n_mor == other.n_mor
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.ident, other.ident)
            and np.array_equal(self.comp, other.comp)
        )

    def compose(self, g, f):
        c = int(self.comp[g, f])
        if c == INVALID:
            raise ValueError(f"morphisms not composable: {g} after {f}")
        return c

    def compose_many(self, *mors):
        """Compose a chain given outermost-first: compose_many(h, g, f)."""
        out = mors[-1]
        for g in reversed(mors[:-1]):
            out = self.compose(g, out)
        return out

    def hom(self, x, y):
        return np.nonzero((self.src == x) & (self.dst == y))[0]

    def iso_table(self):
        """Boolean vector marking the invertible morphisms."""
        inv = np.zeros(self.n_mor, dtype=bool)
        for f in range(self.n_mor):
            x, y = int(self.src[f]), int(self.dst[f])
            for g in self.hom(y, x):
                if (self.comp[g, f] == self.ident[x]
                        and self.comp[f, g] == self.ident[y]):
                    inv[f] = True
                    break
        return inv

    def opposite(self):
        """Reversed category; cached so repeated calls share identity."""
        if getattr(self, "_op", None) is None:
            self._op = FiniteCategory(
                self.dst, self.src, self.ident, self.comp.T,
                self.obj_names, self.mor_names)
            self._op._op = self
        return self._op

    def inverse_table(self):
        """Per-morphism inverse index, INVALID where not invertible."""
        inv = np.full(self.n_mor, INVALID, dtype=INT)
        for f in range(self.n_mor):
            x, y = int(self.src[f]), int(self.dst[f])
            for g in self.hom(y, x):
                if (self.comp[g, f] == self.ident[x]
                        and self.comp[f, g] == self.ident[y]):
                    inv[f] = g
                    break
        return inv


def validate_category(c: FiniteCategory) -> Report:
    """Check the category axioms exhaustively, one entry per violation."""
    report = Report()
    n = c.n_mor
    if not ((0 <= c.src).all() and (c.src < c.n_obj).all()):
        report.fail("category.bounds", ("src",))
    if not ((0 <= c.dst).all() and (c.dst < c.n_obj).all()):
        report.fail("category.bounds", ("dst",))
    for x in range(c.n_obj):
        e = int(c.ident[x])
        if not (0 <= e < n and c.src[e] == x and c.dst[e] == x):
            report.fail("category.identity_boundary", (x,))

    composable = c.dst[np.newaxis, :] == c.src[:, np.newaxis]  # [g, f]
    defined = c.comp != INVALID
    for g, f in zip(*np.nonzero(composable != defined)):
        report.fail("category.partiality", (int(g), int(f)),
                    "composable pair undefined" if composable[g, f]
                    else "non-composable pair defined")

    gf = c.comp
    ok = defined & composable
    if ok.any():
        gs, fs = np.nonzero(ok)
        if not (c.src[gf[gs, fs]] == c.src[fs]).all() or not (
                c.dst[gf[gs, fs]] == c.dst[gs]).all():
            bad = np.nonzero((c.src[gf[gs, fs]] != c.src[fs])
                             | (c.dst[gf[gs, fs]] != c.dst[gs]))[0]
            for b in bad[:8]:
                report.fail("category.boundary",
                            (int(gs[b]), int(fs[b])))

    # identity laws, vectorized over all morphisms
    lhs = c.comp[c.ident[c.dst], np.arange(n)]
    if not np.array_equal(lhs, np.arange(n)):
        for f in np.nonzero(lhs != np.arange(n))[0][:8]:
            report.fail("category.left_identity", (int(f),))
    rhs = c.comp[np.arange(n), c.ident[c.src]]
    if not np.array_equal(rhs, np.arange(n)):
        for f in np.nonzero(rhs != np.arange(n))[0][:8]:
            report.fail("category.right_identity", (int(f),))

    # associativity over all composable triples (h, g, f)
    gs, fs = np.nonzero(ok)
    for h in range(n):
        sel = c.dst[gs] == c.src[h]
        if not sel.any():
            continue
        left = c.comp[h, c.comp[gs[sel], fs[sel]]]
        right = c.comp[c.comp[h, gs[sel]], fs[sel]]
        bad = left != right
        for b in np.nonzero(bad)[0][:4]:
            report.fail("category.associativity",
                        (int(h), int(gs[sel][b]), int(fs[sel][b])))
    return report


def from_monoid(table, names=None) -> FiniteCategory:
    """One-object category from a monoid multiplication table.

    ``table[g][f]`` is the product ``g * f``; element 0 must be the unit.
    """
    table = np.asarray(table, dtype=INT)
    n = table.shape[0]
    assert np.array_equal(table[0], np.arange(n)), "element 0 must be neutral"
    assert np.array_equal(table[:, 0], np.arange(n))
    return FiniteCategory(
        src=np.zeros(n, INT), dst=np.zeros(n, INT),
        ident=np.zeros(1, INT), comp=table,
        obj_names=("*",), mor_names=names)


def from_poset(leq) -> FiniteCategory:
    """Thin category of a partial order; ``leq[x, y]`` iff ``x <= y``.

    Morphism ids enumerate the pairs ``x <= y`` lexicographically.
    """
    leq = np.asarray(leq, dtype=bool)
    n = leq.shape[0]
    pairs = [(x, y) for x in range(n) for y in range(n) if leq[x, y]]
    index = {p: i for i, p in enumerate(pairs)}
    m = len(pairs)
    src = np.array([p[0] for p in pairs], INT)
    dst = np.array([p[1] for p in pairs], INT)
    ident = np.array([index[(x, x)] for x in range(n)], INT)
    comp = np.full((m, m), INVALID, INT)
    for g, (y2, z) in enumerate(pairs):
        for f, (x, y) in enumerate(pairs):
            if y == y2:
                comp[g, f] = index[(x, z)]
    return FiniteCategory(src, dst, ident, comp)


class Functor:
    """A functor from a finite product of categories to a category.

    ``sources`` lists the k factors of the domain; ``obj`` and ``mor``
    are k-dimensional lookup tables of target indices.  ``k = 0`` gives
    a constant at an object (tables are 0-dimensional), ``k = 1`` an
    ordinary functor.
    """

    def __init__(self, sources, target, obj, mor):
        self.sources = tuple(sources)
        self.target = target
        self.obj = np.asarray(obj, dtype=INT)
        self.mor = np.asarray(mor, dtype=INT)
        assert self.obj.shape == tuple(c.n_obj for c in self.sources)
        assert self.mor.shape == tuple(c.n_mor for c in self.sources)

    @property
    def arity(self):
        return len(self.sources)

    @staticmethod
    def identity(c: FiniteCategory) -> "Functor":
        return Functor((c,), c, np.arange(c.n_obj, dtype=INT),
                       np.arange(c.n_mor, dtype=INT))

    @staticmethod
    def constant(target: FiniteCategory, obj: int) -> "Functor":
        return Functor((), target, np.array(obj, INT),
                       np.array(target.ident[obj], INT))

    def same_tables(self, other):
        return (np.array_equal(self.obj, other.obj)
                and np.array_equal(self.mor, other.mor))

    def obj_at(self, objs):
        return int(self.obj[tuple(objs)])

    def mor_at(self, mors):
        return int(self.mor[tuple(mors)])


def _spread(arr, before, after):
    """Reshape ``arr`` so its axes sit between ``before`` and ``after``
    singleton axes; broadcasting then aligns disjoint axis blocks."""
    return arr.reshape((1,) * before + arr.shape + (1,) * after)


def _slot_grids(arrays):
    """Broadcast-ready views of per-slot tables over disjoint axis blocks.

    ``arrays[i]`` has ``d_i`` axes; the result views it over the
    concatenated axis layout ``d_0 + d_1 + ... + d_{k-1}``.
    """
    dims = [a.ndim for a in arrays]
    total = sum(dims)
    out = []
    before = 0
    for a, d in zip(arrays, dims):
        out.append(_spread(a, before, total - before - d))
        before += d
    return out


def compose_functors(outer: Functor, inners) -> Functor:
    """``outer`` applied after a tuple of functors filling its slots."""
    inners = tuple(inners)
    assert len(inners) == outer.arity
    for slot, g in enumerate(inners):
        assert g.target is outer.sources[slot], f"slot {slot} target mismatch"
    sources = tuple(c for g in inners for c in g.sources)
    obj = outer.obj[tuple(_slot_grids([g.obj for g in inners]))] \
        if outer.arity else outer.obj
    mor = outer.mor[tuple(_slot_grids([g.mor for g in inners]))] \
        if outer.arity else outer.mor
    return Functor(sources, outer.target, obj, mor)


def freeze_slot(f: Functor, slot: int, obj: int) -> Functor:
    """Fix one argument of a multifunctor at an object."""
    cat = f.sources[slot]
    sources = f.sources[:slot] + f.sources[slot + 1:]
    return Functor(sources, f.target,
                   np.take(f.obj, obj, axis=slot),
                   np.take(f.mor, int(cat.ident[obj]), axis=slot))


def validate_functor(f: Functor, check_composition=True) -> Report:
    """Exhaustive preservation checks for a (multi)functor."""
    report = Report()
    V = f.target
    if f.arity == 0:
        if int(V.src[f.mor]) != int(f.obj) or int(V.dst[f.mor]) != int(f.obj):
            report.fail("functor.boundary", ())
        return report
    src_grid = tuple(_slot_grids([c.src for c in f.sources]))
    dst_grid = tuple(_slot_grids([c.dst for c in f.sources]))
    if not np.array_equal(V.src[f.mor], f.obj[src_grid]):
        report.fail("functor.source", (),
                    f"at {_fail_tuples(V.src[f.mor] != f.obj[src_grid])}")
    if not np.array_equal(V.dst[f.mor], f.obj[dst_grid]):
        report.fail("functor.target", (),
                    f"at {_fail_tuples(V.dst[f.mor] != f.obj[dst_grid])}")
    id_grid = tuple(_slot_grids([c.ident for c in f.sources]))
    if not np.array_equal(f.mor[id_grid], V.ident[f.obj]):
        report.fail("functor.identity", (),
                    f"at {_fail_tuples(f.mor[id_grid] != V.ident[f.obj])}")
    if not check_composition:
        return report
    # composable pairs per factor, then the product of those lists
    pair_g, pair_f = [], []
    for c in f.sources:
        g, ff = np.nonzero(c.comp != INVALID)
        pair_g.append(g)
        pair_f.append(ff)
    g_grid = tuple(_slot_grids(pair_g))
    f_grid = tuple(_slot_grids(pair_f))
    comp_grid = tuple(_slot_grids(
        [c.comp[g, ff] for c, g, ff in zip(f.sources, pair_g, pair_f)]))
    lhs = f.mor[comp_grid]
    rhs = V.comp[f.mor[g_grid], f.mor[f_grid]]
    if not np.array_equal(lhs, rhs):
        report.fail("functor.composition", (),
                    f"at pair-index {_fail_tuples(lhs != rhs)}")
    return report


class NatTransformation:
    """Natural transformation between parallel multifunctors.

    ``comp`` is indexed by object tuples of the common domain and holds
    morphism indices of the target category.
    """

    def __init__(self, source: Functor, target: Functor, comp):
        assert source.sources == target.sources
        assert source.target is target.target
        self.source = source
        self.target = target
        self.comp = np.asarray(comp, dtype=INT)
        assert self.comp.shape == source.obj.shape

    @staticmethod
    def identity(f: Functor) -> "NatTransformation":
        return NatTransformation(f, f, f.target.ident[f.obj])

    def same_tables(self, other):
        return np.array_equal(self.comp, other.comp)


def validate_nat(a: NatTransformation) -> Report:
    """Boundary and naturality checks over all morphism tuples."""
    report = Report()
    V = a.source.target
    if not np.array_equal(V.src[a.comp], a.source.obj):
        report.fail("nat.source", ())
    if not np.array_equal(V.dst[a.comp], a.target.obj):
        report.fail("nat.target", ())
    if a.source.arity == 0:
        return report
    src_grid = tuple(_slot_grids([c.src for c in a.source.sources]))
    dst_grid = tuple(_slot_grids([c.dst for c in a.source.sources]))
    lhs = compose_tables(V, a.comp[dst_grid], a.source.mor)
    rhs = compose_tables(V, a.target.mor, a.comp[src_grid])
    report_mismatch(report, "nat.naturality", (), lhs, rhs)
    return report


def vertical_compose(b: NatTransformation, a: NatTransformation):
    """``b`` after ``a`` for transformations sharing the middle functor."""
    assert b.source.target is a.source.target
    V = a.source.target
    return NatTransformation(a.source, b.target,
                             compose_tables(V, b.comp, a.comp))


def apply_functor(h: Functor, ats) -> NatTransformation:
    """Whisker a multifunctor with one transformation or object per slot.

    ``ats[i]`` is either a NatTransformation (its axes are spliced in at
    slot i) or an object index of ``h.sources[i]`` (the slot is frozen).
    """
    ats = tuple(ats)
    assert len(ats) == h.arity
    comp_arrays, src_f, tgt_f = [], [], []
    for slot, a in enumerate(ats):
        if isinstance(a, NatTransformation):
            assert a.source.target is h.sources[slot]
            comp_arrays.append(a.comp)
            src_f.append(a.source)
            tgt_f.append(a.target)
        else:
            obj = int(a)
            comp_arrays.append(np.array(h.sources[slot].ident[obj], INT))
            const = Functor.constant(h.sources[slot], obj)
            src_f.append(const)
            tgt_f.append(const)
    if h.arity:
        grids = _slot_grids(comp_arrays)
        comp = h.mor[tuple(grids)]
        bad = np.zeros(comp.shape, dtype=bool)
        for g in grids:
            bad |= (g == INVALID)
        if bad.any():
            comp = np.where(bad, INVALID, comp)
    else:
        comp = h.mor
    return NatTransformation(
        compose_functors(h, src_f), compose_functors(h, tgt_f), comp)


def precompose(a: NatTransformation, inners) -> NatTransformation:
    """``a`` whiskered on the right with a tuple of functors."""
    inners = tuple(inners)
    grids = tuple(_slot_grids([g.obj for g in inners]))
    comp = a.comp[grids] if a.source.arity else a.comp
    return NatTransformation(
        compose_functors(a.source, inners),
        compose_functors(a.target, inners), comp)


def horizontal_compose(b: NatTransformation, a: NatTransformation):
    """Godement product of unary transformations ``b * a``."""
    assert a.source.target is b.source.sources[0]
    V = b.source.target
    left = compose_tables(V, b.comp[a.target.obj], lookup(b.source.mor, a.comp))
    right = compose_tables(V, lookup(b.target.mor, a.comp), b.comp[a.source.obj])
    assert np.array_equal(left, right), "interchange violated by inputs"
    return NatTransformation(
        compose_functors(b.source, (a.source,)),
        compose_functors(b.target, (a.target,)), left)


def product(cs):
    """Materialize a finite product category with projection functors."""
    cs = tuple(cs)
    assert cs, "product of an empty family is not materialized"
    obj_shape = tuple(c.n_obj for c in cs)
    mor_shape = tuple(c.n_mor for c in cs)
    n_obj = int(np.prod(obj_shape))
    n_mor = int(np.prod(mor_shape))
    src = np.ravel_multi_index(
        tuple(g for g in _slot_grids([c.src for c in cs])), obj_shape)
    src = np.broadcast_to(src, mor_shape).reshape(-1).astype(INT)
    dst = np.ravel_multi_index(
        tuple(g for g in _slot_grids([c.dst for c in cs])), obj_shape)
    dst = np.broadcast_to(dst, mor_shape).reshape(-1).astype(INT)
    ident = np.ravel_multi_index(
        tuple(np.ix_(*[c.ident for c in cs])), mor_shape)
    ident = ident.reshape(-1).astype(INT)
    # composition: componentwise, -1 if any component is -1
    comps = [c.comp for c in cs]
    flat_g = np.unravel_index(np.arange(n_mor), mor_shape)
    comp = np.zeros((n_mor, n_mor), dtype=np.int64)
    valid = np.ones((n_mor, n_mor), dtype=bool)
    stride = 1
    for k in reversed(range(len(cs))):
        gk = flat_g[k]
        ck = comps[k][gk[:, None], gk[None, :]]
        valid &= ck != INVALID
        comp += np.where(ck == INVALID, 0, ck).astype(np.int64) * stride
        stride *= mor_shape[k]
    comp = np.where(valid, comp, INVALID).astype(INT)
    names_o = ["(" + ",".join(c.obj_names[i] for c, i in zip(cs, t)) + ")"
               for t in itertools.product(*[range(c.n_obj) for c in cs])]
    names_m = None if n_mor > 4096 else [
        "(" + ",".join(c.mor_names[i] for c, i in zip(cs, t)) + ")"
        for t in itertools.product(*[range(c.n_mor) for c in cs])]
    cat = FiniteCategory(src, dst, ident, comp, names_o, names_m)
    projections = []
    flat_o = np.unravel_index(np.arange(n_obj), obj_shape)
    for k, c in enumerate(cs):
        projections.append(Functor(
            (cat,), c, flat_o[k].astype(INT), flat_g[k].astype(INT)))
    return cat, projections


def pack_functor(f: Functor, prod: FiniteCategory) -> Functor:
    """View a multifunctor as a unary functor on a materialized product."""
    obj_shape = tuple(c.n_obj for c in f.sources)
    mor_shape = tuple(c.n_mor for c in f.sources)
    assert prod.n_obj == int(np.prod(obj_shape))
    assert prod.n_mor == int(np.prod(mor_shape))
    return Functor((prod,), f.target, f.obj.reshape(-1), f.mor.reshape(-1))


def unpack_functor(f: Functor, sources) -> Functor:
    """Inverse of :func:`pack_functor` for a known factor list."""
    sources = tuple(sources)
    obj_shape = tuple(c.n_obj for c in sources)
    mor_shape = tuple(c.n_mor for c in sources)
    return Functor(sources, f.target, f.obj.reshape(obj_shape),
                   f.mor.reshape(mor_shape))
