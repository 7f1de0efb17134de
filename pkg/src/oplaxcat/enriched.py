"""Categories enriched in a truncated oplax base.

An enriched category keeps an ordinary base category around and adds a
hom bifunctor ``(C^op, C) -> V`` into the base of an oplax structure,
a unit cell ``1 -> [x,x]`` per object and a composition cell
``[y,z] (x) [x,y] -> [x,z]`` per triple.  Slot order in every iterated
composition map is reversed: slot ``j`` of the n-ary tensor holds the
hom of the pair ``(x_{n-j}, x_{n+1-j})``, so the outermost factor
composes last.  Optionally a category carries one composition cell per
arity up to a bound; :func:`extend_compositions` synthesizes those from
the binary cell and :func:`check_enriched` verifies counitality and
every additivity instance against them.

``VCategory`` is the loose variant: hom objects per pair with no
functoriality.  The two kinds are bridged only through the weak
underlying category (morphisms ``x -> y`` are the V-morphisms out of
the unit into ``[x,y]``) and, when the base structure is normal, the
hom bifunctor built from the double-composition cell.  The reflector
replaces a category's underlying category by its weak one and is
idempotent.

Pushforward along a lax functor of oplax structures, the external
product over a product structure, and the interchange-twisted product
over a two-tensor structure all land back in enriched categories and
are checked by the same verifier.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fincat import (INT, INVALID, FiniteCategory, Functor,
                     NatTransformation, Report, compose_tables, lookup,
                     product, report_mismatch, validate_category,
                     validate_functor, validate_nat)
from .functors import MonoidObject
from .oplax import TruncatedOplaxStructure, iter_assoc_keys, unit_comonoid

__all__ = [
    "EnrichedCategory", "VCategory", "EnrichedFunctor",
    "EnrichedNatTransformation", "is_normal", "unit_insertion_routes",
    "check_enriched", "check_vcategory", "vcategory_of",
    "extend_compositions", "monoid_of_one_object",
    "identity_enriched_functor", "compose_enriched_functors",
    "check_enriched_functor", "check_enriched_nat", "weak_morphisms",
    "underlying_weak_category", "hom_bifunctor_from_vcat",
    "normalization_reflector", "normalization_unit", "reflect_functor",
    "pushforward", "pushforward_functor", "pushforward_transformation",
    "pushforward_nat", "product_oplax", "external_product",
    "external_product_functor", "lambda_product",
]


def _chain(base, *mors):
    """Scalar composite, outermost first, INVALID propagated not raised."""
    out = np.asarray(int(mors[-1]), dtype=INT)
    for g in reversed(mors[:-1]):
        out = compose_tables(base, np.asarray(int(g), dtype=INT), out)
    return int(out)


def _scalar_check(report, family, sig, got, want):
    got, want = int(got), int(want)
    if got != want or got == INVALID:
        report.fail(family, sig, f"{got} != {want}")


def _chain_axes(n, k):
    """Open index grids for a chain of k objects, one axis per position."""
    return [np.arange(n).reshape((1,) * a + (-1,) + (1,) * (k - 1 - a))
            for a in range(k)]


def _merge(report, prefix, sub, head=()):
    for fam, sig, detail in sub.entries:
        report.fail(f"{prefix}.{fam}", tuple(head) + tuple(sig), detail)


def is_normal(s: TruncatedOplaxStructure) -> bool:
    """Whether the collapse map out of the unary wrap is invertible
    at every object."""
    inv = s.base.inverse_table()
    return bool((inv[s.counit] != INVALID).all())


def unit_insertion_routes(s: TruncatedOplaxStructure):
    """The two composites padding a unary wrap with units on both sides.

    Each is an array over objects holding a morphism from the 0-ary
    wrap of ``x`` to the ternary tensor ``(1, x, 1)``; inserting right
    then left must agree with left then right, and the hom bifunctor
    construction uses the first.
    """
    u = s.unit
    n = s.base.n_obj
    xs = np.arange(n)
    units = np.full(n, u, dtype=INT)
    first = compose_tables(s.base, s.assoc[(2, -1, 2)][units, xs],
                           s.assoc[(1, -1, 0)])
    second = compose_tables(s.base, s.assoc[(2, -1, 0)][xs, units],
                            s.assoc[(1, -1, 1)])
    return first, second


def _mor_boundary(Vb, mor, src, dst, what):
    mor = int(mor)
    if not 0 <= mor < Vb.n_mor or int(Vb.src[mor]) != int(src) \
            or int(Vb.dst[mor]) != int(dst):
        raise ValueError(f"{what} does not run {int(src)} -> {int(dst)}")


class EnrichedCategory:
    """Base category, oplax structure, hom bifunctor and composition
    cells.

    ``hom`` is a binary functor with sources ``(base^op, base)``;
    ``eta[x]`` runs from the unit object to ``hom[x, x]`` and
    ``mu[x, y, z]`` from the binary tensor of ``hom[y, z]`` and
    ``hom[x, y]`` to ``hom[x, z]``.  ``extended``, when given, maps
    each arity ``-1 <= n <= K`` to a table over ``(n+2)``-tuples of
    objects; boundaries of every cell are validated here, their
    equations in :func:`check_enriched`.
    """

    def __init__(self, base, V, hom, eta, mu, extended=None):
        assert isinstance(base, FiniteCategory)
        assert isinstance(V, TruncatedOplaxStructure)
        assert hom.arity == 2
        assert hom.sources == (base.opposite(), base)
        assert hom.target is V.base
        self.base = base
        self.V = V
        self.hom = hom
        self.eta = np.asarray(eta, dtype=INT)
        self.mu = np.asarray(mu, dtype=INT)
        n = base.n_obj
        assert self.eta.shape == (n,)
        assert self.mu.shape == (n, n, n)
        Vb = V.base
        ho = hom.obj
        for x in range(n):
            _mor_boundary(Vb, self.eta[x], V.unit, ho[x, x],
                          f"unit cell at object {x}")
        om1 = V.omega(1)
        for x, y, z in itertools.product(range(n), repeat=3):
            _mor_boundary(Vb, self.mu[x, y, z],
                          om1.obj[ho[y, z], ho[x, y]], ho[x, z],
                          f"composition cell at {(x, y, z)}")
        if extended is None:
            self.extended = None
        else:
            ext = {int(k): np.asarray(v, dtype=INT)
                   for k, v in extended.items()}
            K = max(ext)
            assert sorted(ext) == list(range(-1, K + 1)), (
                "extended cells must cover every arity from -1 up")
            assert K <= V.bound
            for k, table in ext.items():
                assert table.shape == (n,) * (k + 2), k
                X = _chain_axes(n, k + 2)
                slots = [ho[X[k - j], X[k + 1 - j]] for j in range(k + 1)]
                src = V.omega(k).obj[tuple(slots)] if k >= 0 \
                    else np.full((n,), V.unit, dtype=INT)
                dst = ho[X[0], X[k + 1]] if k >= 0 else ho[X[0], X[0]]
                if not (np.array_equal(Vb.src[table],
                                       np.broadcast_to(src, table.shape))
                        and np.array_equal(Vb.dst[table],
                                           np.broadcast_to(dst,
                                                           table.shape))):
                    raise ValueError(
                        f"extended cell of arity {k} has a wrong boundary")
            self.extended = ext

    def same_tables(self, other):
        if not (self.base.same_tables(other.base)
                and self.V.same_tables(other.V)
                and self.hom.same_tables(other.hom)
                and np.array_equal(self.eta, other.eta)
                and np.array_equal(self.mu, other.mu)):
            return False
        if (self.extended is None) != (other.extended is None):
            return False
        if self.extended is None:
            return True
        if sorted(self.extended) != sorted(other.extended):
            return False
        return all(np.array_equal(self.extended[k], other.extended[k])
                   for k in self.extended)


class VCategory:
    """Hom objects, unit and composition cells over a set of objects.

    No functoriality is stored: ``hom`` is a plain square table of
    objects of the base structure.  The same associativity and
    unitality diagrams as for enriched categories apply; naturality
    does not.
    """

    def __init__(self, V, hom, eta, mu):
        assert isinstance(V, TruncatedOplaxStructure)
        self.V = V
        self.hom = np.asarray(hom, dtype=INT)
        self.eta = np.asarray(eta, dtype=INT)
        self.mu = np.asarray(mu, dtype=INT)
        n = self.hom.shape[0]
        self.n_objects = n
        assert self.hom.shape == (n, n)
        assert self.eta.shape == (n,)
        assert self.mu.shape == (n, n, n)
        Vb = V.base
        om1 = V.omega(1)
        for x in range(n):
            _mor_boundary(Vb, self.eta[x], V.unit, self.hom[x, x],
                          f"unit cell at object {x}")
        for x, y, z in itertools.product(range(n), repeat=3):
            _mor_boundary(Vb, self.mu[x, y, z],
                          om1.obj[self.hom[y, z], self.hom[x, y]],
                          self.hom[x, z],
                          f"composition cell at {(x, y, z)}")


def vcategory_of(e: EnrichedCategory) -> VCategory:
    """Forget the underlying category and the hom functoriality."""
    return VCategory(e.V, e.hom.obj, e.eta, e.mu)


def _hexagon_report(report, V, hom_obj, mu):
    Vb = V.base
    n = hom_obj.shape[0]
    a0 = V.assoc[(1, 1, 0)]
    a1 = V.assoc[(1, 1, 1)]
    om = V.omega(1)
    for w, x, y, z in itertools.product(range(n), repeat=4):
        A = int(hom_obj[y, z])
        B = int(hom_obj[x, y])
        C = int(hom_obj[w, x])
        left = _chain(Vb, mu[w, x, z],
                      om.mor[mu[x, y, z], Vb.ident[C]], a0[A, B, C])
        right = _chain(Vb, mu[w, y, z],
                       om.mor[Vb.ident[A], mu[w, x, y]], a1[A, B, C])
        if left != right or left == INVALID:
            report.fail("hexagon", (w, x, y, z), f"{left} != {right}")


def _unitality_report(report, V, hom_obj, eta, mu):
    Vb = V.base
    n = hom_obj.shape[0]
    ins0 = V.assoc[(1, -1, 0)]
    ins1 = V.assoc[(1, -1, 1)]
    om = V.omega(1)
    for x, y in itertools.product(range(n), repeat=2):
        A = int(hom_obj[x, y])
        left = _chain(Vb, mu[x, y, y],
                      om.mor[eta[y], Vb.ident[A]], ins0[A])
        _scalar_check(report, "unitality.left", (x, y), left, V.counit[A])
        right = _chain(Vb, mu[x, x, y],
                       om.mor[Vb.ident[A], eta[x]], ins1[A])
        _scalar_check(report, "unitality.right", (x, y), right,
                      V.counit[A])


def check_vcategory(v: VCategory) -> Report:
    """Associativity hexagon and both unitality triangles, per tuple."""
    assert v.V.bound >= 2, "the hexagon needs composition keys up to 2"
    report = Report()
    _hexagon_report(report, v.V, v.hom, v.mu)
    _unitality_report(report, v.V, v.hom, v.eta, v.mu)
    return report


def _additivity_report(report, V, hom_obj, ext, K, family):
    Vb = V.base
    n = hom_obj.shape[0]
    for (p, q, i) in iter_assoc_keys(K):
        nt = p + q
        X = _chain_axes(n, nt + 2)
        slots = [hom_obj[X[nt - j], X[nt + 1 - j]] for j in range(nt + 1)]
        acomp = V.assoc[(p, q, i)][tuple(slots)]
        inner = ext[q][tuple(X[p - i + t] for t in range(q + 2))]
        args = []
        for k in range(p + 1):
            if k < i:
                args.append(Vb.ident[slots[k]])
            elif k == i:
                args.append(inner)
            else:
                args.append(Vb.ident[slots[k + q]])
        mid = V.omega(p).mor[tuple(args)]
        outer = ext[p][tuple(X[a] if a <= p - i else X[a + q]
                             for a in range(p + 2))]
        rhs = compose_tables(Vb, outer, compose_tables(Vb, mid, acomp))
        want = np.broadcast_to(rhs, (n,) * (nt + 2))
        report_mismatch(report, family, (p, q, i), ext[nt], want)


def check_enriched(e: EnrichedCategory) -> Report:
    """Naturality, associativity, unitality, and the extended equations.

    Families: ``hom.*`` for the bifunctor, ``eta.extranatural`` with
    one signature per base morphism, the three ``mu.*`` naturality
    families, ``hexagon`` and ``unitality.*`` per object tuple, and
    when extended cells are present ``extended.unit`` / ``.counit`` /
    ``.binary`` tying them to the stored low cells plus
    ``extended.additivity`` per decomposition key.
    """
    assert e.V.bound >= 2, "the hexagon needs composition keys up to 2"
    report = Report()
    _merge(report, "hom", validate_functor(e.hom))

    V, Vb, C = e.V, e.V.base, e.base
    n = C.n_obj
    ho = e.hom.obj
    hm = e.hom.mor
    om = V.omega(1)
    idm = Vb.ident

    for f in range(C.n_mor):
        x, x2 = int(C.src[f]), int(C.dst[f])
        lhs = _chain(Vb, hm[C.ident[x], f], e.eta[x])
        rhs = _chain(Vb, hm[f, C.ident[x2]], e.eta[x2])
        if lhs != rhs or lhs == INVALID:
            report.fail("eta.extranatural", (f,), f"{lhs} != {rhs}")

    for f in range(C.n_mor):
        x, x2 = int(C.src[f]), int(C.dst[f])
        for y, z in itertools.product(range(n), repeat=2):
            lhs = _chain(Vb, hm[f, C.ident[z]], e.mu[x2, y, z])
            rhs = _chain(Vb, e.mu[x, y, z],
                         om.mor[idm[ho[y, z]], hm[f, C.ident[y]]])
            _scalar_check(report, "mu.natural-source", (f, y, z), lhs, rhs)
    for h in range(C.n_mor):
        z, z2 = int(C.src[h]), int(C.dst[h])
        for x, y in itertools.product(range(n), repeat=2):
            lhs = _chain(Vb, hm[C.ident[x], h], e.mu[x, y, z])
            rhs = _chain(Vb, e.mu[x, y, z2],
                         om.mor[hm[C.ident[y], h], idm[ho[x, y]]])
            _scalar_check(report, "mu.natural-target", (x, y, h), lhs, rhs)
    for g in range(C.n_mor):
        y, y2 = int(C.src[g]), int(C.dst[g])
        for x, z in itertools.product(range(n), repeat=2):
            lhs = _chain(Vb, e.mu[x, y2, z],
                         om.mor[idm[ho[y2, z]], hm[C.ident[x], g]])
            rhs = _chain(Vb, e.mu[x, y, z],
                         om.mor[hm[g, C.ident[z]], idm[ho[x, y]]])
            _scalar_check(report, "mu.extranatural", (x, g, z), lhs, rhs)

    _hexagon_report(report, V, ho, e.mu)
    _unitality_report(report, V, ho, e.eta, e.mu)

    if e.extended is not None:
        ext = e.extended
        K = max(ext)
        report_mismatch(report, "extended.unit", (), ext[-1], e.eta)
        report_mismatch(report, "extended.counit", (), ext[0],
                        V.counit[ho])
        report_mismatch(report, "extended.binary", (), ext[1], e.mu)
        _additivity_report(report, V, ho, ext, K, "extended.additivity")
    return report


def _extend_tables(V, hom_obj, eta, mu, bound):
    """Iterated composition cells from the binary one, as grid tables."""
    Vb = V.base
    n = hom_obj.shape[0]
    mu = np.asarray(mu, dtype=INT)
    m = {-1: np.asarray(eta, dtype=INT),
         0: V.counit[hom_obj].astype(INT),
         1: mu}
    for k in range(1, bound):
        X = _chain_axes(n, k + 3)
        slots = [hom_obj[X[k + 1 - j], X[k + 2 - j]] for j in range(k + 2)]
        acomp = V.assoc[(1, k, 0)][tuple(slots)]
        inner = m[k][tuple(X[1 + t] for t in range(k + 2))]
        mid = V.omega(1).mor[inner, Vb.ident[slots[k + 1]]]
        outer = mu[X[0], X[1], X[k + 2]]
        full = compose_tables(Vb, outer, compose_tables(Vb, mid, acomp))
        m[k + 1] = np.broadcast_to(full, (n,) * (k + 3)).astype(INT)
    return m


def extend_compositions(e: EnrichedCategory, bound=None) -> EnrichedCategory:
    """Fill in one composition cell per arity up to the bound.

    The nullary cell is the collapse map at the hom object, the unary
    cell the stored binary composition, and each higher cell composes
    the previous one inside the left slot of a binary composition.
    Existing extended cells are ignored and recomputed.
    """
    K = e.V.bound if bound is None else int(bound)
    assert 1 <= K <= e.V.bound
    ext = _extend_tables(e.V, e.hom.obj, e.eta, e.mu, K)
    return EnrichedCategory(e.base, e.V, e.hom, e.eta, e.mu, ext)


def monoid_of_one_object(e: EnrichedCategory) -> MonoidObject:
    """The hom object of a one-object category with its compositions."""
    assert e.base.n_obj == 1, "only a one-object category is a monoid"
    ext = e.extended if e.extended is not None else \
        _extend_tables(e.V, e.hom.obj, e.eta, e.mu, e.V.bound)
    cells = {k: int(ext[k][(0,) * (k + 2)]) for k in ext}
    return MonoidObject(int(e.hom.obj[0, 0]), cells)


class EnrichedFunctor:
    """Underlying functor plus one hom comparison cell per object pair.

    ``cells[x, y]`` runs from the source hom at ``(x, y)`` to the
    target hom at the image pair.  Source and target categories must
    live over the same structure.
    """

    def __init__(self, source, target, functor, cells):
        assert source.V is target.V or source.V.same_tables(target.V)
        assert functor.arity == 1
        assert functor.sources[0] is source.base
        assert functor.target is target.base
        self.source = source
        self.target = target
        self.functor = functor
        self.cells = np.asarray(cells, dtype=INT)
        n = source.base.n_obj
        assert self.cells.shape == (n, n)
        Vb = source.V.base
        fo = functor.obj
        for x, y in itertools.product(range(n), repeat=2):
            _mor_boundary(Vb, self.cells[x, y], source.hom.obj[x, y],
                          target.hom.obj[fo[x], fo[y]],
                          f"hom comparison at {(x, y)}")

    def same_tables(self, other):
        return (self.functor.same_tables(other.functor)
                and np.array_equal(self.cells, other.cells))


def identity_enriched_functor(e: EnrichedCategory) -> EnrichedFunctor:
    cells = e.V.base.ident[e.hom.obj]
    return EnrichedFunctor(e, e, Functor.identity(e.base), cells)


def compose_enriched_functors(g: EnrichedFunctor,
                              f: EnrichedFunctor) -> EnrichedFunctor:
    """``g`` after ``f``; comparison cells compose through g's images."""
    assert g.source is f.target or g.source.same_tables(f.target)
    functor = Functor((f.source.base,), g.target.base,
                      g.functor.obj[f.functor.obj],
                      g.functor.mor[f.functor.mor])
    fo = f.functor.obj
    upper = g.cells[np.ix_(fo, fo)]
    cells = compose_tables(f.source.V.base, upper, f.cells)
    return EnrichedFunctor(f.source, g.target, functor, cells)


def check_enriched_functor(F: EnrichedFunctor) -> Report:
    """Unit and composition squares, plus every iterated variant.

    The iterated squares (families ``extended.square`` with one
    signature per arity) are rebuilt from the binary data when either
    side carries no extended cells; their verdict is compared with the
    unit-and-composition verdict under the ``agreement`` family.
    """
    report = Report()
    _merge(report, "underlying", validate_functor(F.functor))
    src, tgt = F.source, F.target
    V, Vb = src.V, src.V.base
    n = src.base.n_obj
    fo, fm = F.functor.obj, F.functor.mor

    mapped = Functor(src.hom.sources, Vb,
                     tgt.hom.obj[np.ix_(fo, fo)],
                     tgt.hom.mor[np.ix_(fm, fm)])
    _merge(report, "cells",
           validate_nat(NatTransformation(src.hom, mapped, F.cells)))

    for x in range(n):
        got = _chain(Vb, F.cells[x, x], src.eta[x])
        _scalar_check(report, "unit", (x,), got, tgt.eta[fo[x]])
    om = V.omega(1)
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = _chain(Vb, F.cells[x, z], src.mu[x, y, z])
        rhs = _chain(Vb, tgt.mu[fo[x], fo[y], fo[z]],
                     om.mor[F.cells[y, z], F.cells[x, y]])
        _scalar_check(report, "composition", (x, y, z), lhs, rhs)

    ms = src.extended if src.extended is not None else \
        _extend_tables(V, src.hom.obj, src.eta, src.mu, V.bound)
    mt = tgt.extended if tgt.extended is not None else \
        _extend_tables(V, tgt.hom.obj, tgt.eta, tgt.mu, V.bound)
    K = min(max(ms), max(mt))
    for k in range(-1, K + 1):
        X = _chain_axes(n, k + 2)
        lhs = compose_tables(Vb, F.cells[X[0], X[k + 1]],
                             ms[k][tuple(X[a] for a in range(k + 2))])
        if k == -1:
            rhs = mt[-1][fo[X[0]]]
        else:
            args = [F.cells[X[k - j], X[k + 1 - j]] for j in range(k + 1)]
            rhs = compose_tables(
                Vb, mt[k][tuple(fo[X[a]] for a in range(k + 2))],
                V.omega(k).mor[tuple(args)])
        report_mismatch(report, "extended.square", (k,), lhs,
                        np.broadcast_to(rhs, (n,) * (k + 2)))

    abridged_ok = not any(fam in ("unit", "composition")
                          for fam, _, _ in report.entries)
    extended_ok = not any(fam == "extended.square"
                          for fam, _, _ in report.entries)
    if abridged_ok != extended_ok:
        report.fail("agreement", (),
                    "abridged and iterated verdicts differ")
    return report


class EnrichedNatTransformation:
    """Components in the target base, one per source object.

    ``components[x]`` is a morphism ``F(x) -> G(x)`` of the target's
    underlying category; read through the canonical embedding it is a
    V-morphism out of the unit into the hom at ``(F(x), G(x))``.
    """

    def __init__(self, source: EnrichedFunctor, target: EnrichedFunctor,
                 components):
        assert source.source is target.source \
            or source.source.same_tables(target.source)
        assert source.target is target.target \
            or source.target.same_tables(target.target)
        self.source = source
        self.target = target
        self.components = np.asarray(components, dtype=INT)
        D = source.target.base
        n = source.source.base.n_obj
        assert self.components.shape == (n,)
        for x in range(n):
            _mor_boundary(D, self.components[x], source.functor.obj[x],
                          target.functor.obj[x], f"component at {x}")


def check_enriched_nat(a: EnrichedNatTransformation) -> Report:
    """The hom-comparison square per pair and its iterated variants.

    ``underlying.*`` covers plain naturality of the components;
    ``square`` compares post-composition with a component against
    pre-composition at every pair; ``extended.hexagon`` does the same
    around each iterated composition, and ``agreement`` ties the two
    verdicts together.
    """
    F, G = a.source, a.target
    e_src, e_tgt = F.source, F.target
    V, Vb = e_src.V, e_src.V.base
    D = e_tgt.base
    n = e_src.base.n_obj
    report = Report()
    _merge(report, "underlying",
           validate_nat(NatTransformation(F.functor, G.functor,
                                          a.components)))

    hm = e_tgt.hom.mor
    fo, go = F.functor.obj, G.functor.obj
    for x, y in itertools.product(range(n), repeat=2):
        lhs = _chain(Vb, hm[D.ident[fo[x]], a.components[y]],
                     F.cells[x, y])
        rhs = _chain(Vb, hm[a.components[x], D.ident[go[y]]],
                     G.cells[x, y])
        _scalar_check(report, "square", (x, y), lhs, rhs)

    mt = e_tgt.extended if e_tgt.extended is not None else \
        _extend_tables(V, e_tgt.hom.obj, e_tgt.eta, e_tgt.mu, V.bound)
    K = max(mt)
    for k in range(0, K + 1):
        X = _chain_axes(n, k + 2)
        first = compose_tables(
            Vb, hm[D.ident[fo[X[k]]], a.components[X[k + 1]]],
            F.cells[X[k], X[k + 1]])
        args = [first] + [F.cells[X[k - j], X[k + 1 - j]]
                          for j in range(1, k + 1)]
        lhs = compose_tables(
            Vb,
            mt[k][tuple([fo[X[b]] for b in range(k + 1)]
                        + [go[X[k + 1]]])],
            V.omega(k).mor[tuple(args)])
        last = compose_tables(
            Vb, hm[a.components[X[0]], D.ident[go[X[1]]]],
            G.cells[X[0], X[1]])
        args = [G.cells[X[k - j], X[k + 1 - j]] for j in range(k)] + [last]
        rhs = compose_tables(
            Vb,
            mt[k][tuple([fo[X[0]]] + [go[X[b]] for b in range(1, k + 2)])],
            V.omega(k).mor[tuple(args)])
        report_mismatch(report, "extended.hexagon", (k,), lhs,
                        np.broadcast_to(rhs, lhs.shape))

    square_ok = not any(fam == "square" for fam, _, _ in report.entries)
    hex_ok = not any(fam == "extended.hexagon"
                     for fam, _, _ in report.entries)
    if square_ok != hex_ok:
        report.fail("agreement", (),
                    "pairwise and iterated verdicts differ")
    return report


def weak_morphisms(v: VCategory):
    """All V-morphisms from the unit into a hom object, in lexicographic
    ``(source, target, morphism)`` order."""
    Vb = v.V.base
    out = []
    for x in range(v.n_objects):
        for y in range(v.n_objects):
            for h in np.nonzero((Vb.src == v.V.unit)
                                & (Vb.dst == v.hom[x, y]))[0]:
                out.append((x, y, int(h)))
    return out


def underlying_weak_category(v: VCategory) -> FiniteCategory:
    """The category of unit-to-hom morphisms under cell composition.

    Two weak morphisms compose by duplicating the unit, tensoring, and
    applying the composition cell; identities are the unit cells.  The
    result is validated and a failure raises, since it means the input
    data do not satisfy the associativity or unitality diagrams.
    """
    Vb = v.V.base
    mors = weak_morphisms(v)
    index = {m: k for k, m in enumerate(mors)}
    w1 = unit_comonoid(v.V)[1]
    om = v.V.omega(1)
    src = np.array([m[0] for m in mors], dtype=INT)
    dst = np.array([m[1] for m in mors], dtype=INT)
    ident = np.array([index[(x, x, int(v.eta[x]))]
                      for x in range(v.n_objects)], dtype=INT)
    m_count = len(mors)
    comp = np.full((m_count, m_count), INVALID, dtype=INT)
    for kg, (y2, z, g) in enumerate(mors):
        for kf, (x, y, f) in enumerate(mors):
            if y != y2:
                continue
            got = _chain(Vb, v.mu[x, y, z], om.mor[g, f], w1)
            comp[kg, kf] = index[(x, z, got)]
    names = tuple(f"{x}>{y}:{Vb.mor_names[h]}" for x, y, h in mors)
    cat = FiniteCategory(src, dst, ident, comp, mor_names=names)
    rep = validate_category(cat)
    if not rep.ok():
        raise ValueError("weak morphisms do not form a category: "
                         + rep.lines()[0])
    return cat


def hom_bifunctor_from_vcat(v: VCategory) -> EnrichedCategory:
    """Functorial homs over the weak underlying category.

    Requires a normal base structure: the action of a pair of weak
    morphisms inverts the collapse map, pads the hom object with units
    on both sides, tensors the two arguments in, and applies the
    double composition cell.  Functoriality of the result is checked
    exhaustively and a failure raises.
    """
    V = v.V
    Vb = V.base
    assert V.bound >= 2, "the hom action needs composition keys up to 2"
    if not is_normal(V):
        bad = np.nonzero(Vb.inverse_table()[V.counit] == INVALID)[0]
        raise ValueError(
            "the base structure is not normal: the collapse map has no "
            f"inverse at object {int(bad[0])}")
    counit_inv = Vb.inverse_table()[V.counit]
    route = unit_insertion_routes(V)[0]
    m2 = _extend_tables(V, v.hom, v.eta, v.mu, 2)[2]

    cat = underlying_weak_category(v)
    mors = weak_morphisms(v)
    n = v.n_objects
    om2 = V.omega(2)
    obj = v.hom.copy()
    mor = np.empty((cat.n_mor, cat.n_mor), dtype=INT)
    for k1, (x1p, x1, h1) in enumerate(mors):
        for k2, (x2, x2p, h2) in enumerate(mors):
            A = int(v.hom[x1, x2])
            mor[k1, k2] = _chain(
                Vb, m2[x1p, x1, x2, x2p],
                om2.mor[h2, Vb.ident[A], h1], route[A], counit_inv[A])
    hom = Functor((cat.opposite(), cat), Vb, obj, mor)
    rep = validate_functor(hom)
    if not rep.ok():
        raise ValueError("hom action is not functorial: " + rep.lines()[0])
    return EnrichedCategory(cat, V, hom, v.eta, v.mu)


def normalization_reflector(e: EnrichedCategory) -> EnrichedCategory:
    """Replace the underlying category by the weak one, keeping homs.

    Extended cells, when present, carry over unchanged.  Applying the
    reflector twice gives the same tables as applying it once.
    """
    r = hom_bifunctor_from_vcat(vcategory_of(e))
    if e.extended is None:
        return r
    return EnrichedCategory(r.base, r.V, r.hom, r.eta, r.mu, e.extended)


def _canonical_weak(e, f):
    """The unit-to-hom morphism classifying a base morphism."""
    C = e.base
    x = int(C.src[f])
    return _chain(e.V.base, e.hom.mor[C.ident[x], f], e.eta[x])


def normalization_unit(e: EnrichedCategory) -> EnrichedFunctor:
    """Comparison functor into the reflector, identity on hom data."""
    r = normalization_reflector(e)
    mors = weak_morphisms(vcategory_of(e))
    index = {m: k for k, m in enumerate(mors)}
    C = e.base
    fmor = np.array(
        [index[(int(C.src[f]), int(C.dst[f]), _canonical_weak(e, f))]
         for f in range(C.n_mor)], dtype=INT)
    functor = Functor((C,), r.base, np.arange(C.n_obj, dtype=INT), fmor)
    return EnrichedFunctor(e, r, functor, e.V.base.ident[e.hom.obj])


def reflect_functor(F: EnrichedFunctor) -> EnrichedFunctor:
    """The induced functor between the reflected categories."""
    src = normalization_reflector(F.source)
    tgt = normalization_reflector(F.target)
    mors_s = weak_morphisms(vcategory_of(F.source))
    mors_t = weak_morphisms(vcategory_of(F.target))
    index = {m: k for k, m in enumerate(mors_t)}
    Vb = F.source.V.base
    fo = F.functor.obj
    fmor = np.array(
        [index[(int(fo[x]), int(fo[y]), _chain(Vb, F.cells[x, y], h))]
         for x, y, h in mors_s], dtype=INT)
    functor = Functor((src.base,), tgt.base, fo.astype(INT), fmor)
    return EnrichedFunctor(src, tgt, functor, F.cells)


def pushforward(f, e: EnrichedCategory) -> EnrichedCategory:
    """Transport an enriched category along a lax functor of bases.

    The hom bifunctor composes with the functor; each composition cell
    picks up the comparison cell of its arity at the hom objects.
    Extended cells transport arity by arity when present.
    """
    assert f.variant == "oplax2oplax", \
        "pushforward needs a lax functor of oplax structures"
    assert f.source is e.V or f.source.same_tables(e.V)
    W = f.target
    Wb = W.base
    F = f.functor
    hom = Functor(e.hom.sources[:1] + (e.base,), Wb,
                  F.obj[e.hom.obj], F.mor[e.hom.mor])
    n = e.base.n_obj
    ho = e.hom.obj
    eta = compose_tables(Wb, F.mor[e.eta],
                         np.broadcast_to(f.cells[-1], (n,)))
    X = _chain_axes(n, 3)
    l1 = f.cells[1][ho[X[1], X[2]], ho[X[0], X[1]]]
    mu = compose_tables(Wb, F.mor[e.mu], l1)
    extended = None
    if e.extended is not None:
        extended = {}
        for k, table in e.extended.items():
            X = _chain_axes(n, k + 2)
            slots = tuple(ho[X[k - j], X[k + 1 - j]] for j in range(k + 1))
            cell = f.cells[k][slots] if k >= 0 else f.cells[-1]
            cell = np.broadcast_to(cell, table.shape)
            extended[k] = compose_tables(Wb, F.mor[table], cell)
    return EnrichedCategory(e.base, W, hom, eta, mu, extended)


def pushforward_functor(f, F: EnrichedFunctor) -> EnrichedFunctor:
    """The same underlying functor with transported comparison cells."""
    return EnrichedFunctor(pushforward(f, F.source),
                           pushforward(f, F.target), F.functor,
                           f.functor.mor[F.cells])


def pushforward_transformation(f, a) -> EnrichedNatTransformation:
    """Components are untouched; only the functors change clothes."""
    return EnrichedNatTransformation(pushforward_functor(f, a.source),
                                     pushforward_functor(f, a.target),
                                     a.components)


def pushforward_nat(t: NatTransformation, f, g,
                    e: EnrichedCategory) -> EnrichedFunctor:
    """The identity-carried functor between two pushforwards.

    ``t`` must be monoidal for the two lax functors; its component at
    each hom object is the comparison cell.
    """
    cells = t.comp[e.hom.obj]
    return EnrichedFunctor(pushforward(f, e), pushforward(g, e),
                           Functor.identity(e.base), cells)


def _pair_table(tu, tv, nu_in, nv_in, nv_out):
    """Componentwise table on flattened pair indices.

    Both inputs have the same number of axes; axis ``a`` of the result
    ranges over ``nu_in * nv_in`` flat pairs and the value is the flat
    pair of the two component values.
    """
    tu = np.asarray(tu)
    tv = np.asarray(tv)
    m = tu.ndim
    assert tv.ndim == m
    size = nu_in * nv_in
    flat = [np.arange(size).reshape((1,) * a + (-1,) + (1,) * (m - 1 - a))
            for a in range(m)]
    us = tuple(fl // nv_in for fl in flat)
    vs = tuple(fl % nv_in for fl in flat)
    pu = np.asarray(tu[us], dtype=np.int64)
    pv = np.asarray(tv[vs], dtype=np.int64)
    mask = (pu == INVALID) | (pv == INVALID)
    return np.asarray(np.where(mask, INVALID, pu * nv_out + pv),
                      dtype=INT)


def product_oplax(su: TruncatedOplaxStructure,
                  sv: TruncatedOplaxStructure,
                  base=None) -> TruncatedOplaxStructure:
    """The componentwise structure on a product of two bases.

    Pair indices are left-factor major, matching the product category
    helper, so the product of a structure with itself has the same
    tables as its slotwise square.
    """
    bound = min(su.bound, sv.bound)
    if base is None:
        base = product([su.base, sv.base])[0]
    no_u, no_v = su.base.n_obj, sv.base.n_obj
    nm_u, nm_v = su.base.n_mor, sv.base.n_mor
    tensors = {
        nn: Functor((base,) * (nn + 1), base,
                    _pair_table(su.tensors[nn].obj, sv.tensors[nn].obj,
                                no_u, no_v, no_v),
                    _pair_table(su.tensors[nn].mor, sv.tensors[nn].mor,
                                nm_u, nm_v, nm_v))
        for nn in range(bound + 1)}
    assoc = {key: _pair_table(su.assoc[key], sv.assoc[key],
                              no_u, no_v, nm_v)
             for key in iter_assoc_keys(bound)}
    counit = _pair_table(su.counit, sv.counit, no_u, no_v, nm_v)
    unit = su.unit * no_v + sv.unit
    return TruncatedOplaxStructure(base, bound, unit, tensors, assoc,
                                   counit)


def external_product(b: EnrichedCategory,
                     c: EnrichedCategory) -> EnrichedCategory:
    """Componentwise enrichment over the product structure."""
    W = product_oplax(b.V, c.V)
    base = product([b.base, c.base])[0]
    no_b, no_c = b.base.n_obj, c.base.n_obj
    nm_b, nm_c = b.base.n_mor, c.base.n_mor
    nov = c.V.base.n_obj
    nmv = c.V.base.n_mor
    hom = Functor((base.opposite(), base), W.base,
                  _pair_table(b.hom.obj, c.hom.obj, no_b, no_c, nov),
                  _pair_table(b.hom.mor, c.hom.mor, nm_b, nm_c, nmv))
    eta = _pair_table(b.eta, c.eta, no_b, no_c, nmv)
    mu = _pair_table(b.mu, c.mu, no_b, no_c, nmv)
    extended = None
    if b.extended is not None and c.extended is not None:
        K = min(max(b.extended), max(c.extended), W.bound)
        extended = {k: _pair_table(b.extended[k], c.extended[k],
                                   no_b, no_c, nmv)
                    for k in range(-1, K + 1)}
    return EnrichedCategory(base, W, hom, eta, mu, extended)


def external_product_functor(F: EnrichedFunctor,
                             G: EnrichedFunctor) -> EnrichedFunctor:
    """Slotwise product of two enriched functors."""
    src = external_product(F.source, G.source)
    tgt = external_product(F.target, G.target)
    no_f, no_g = F.source.base.n_obj, G.source.base.n_obj
    functor = Functor(
        (src.base,), tgt.base,
        _pair_table(F.functor.obj, G.functor.obj, no_f, no_g,
                    G.target.base.n_obj),
        _pair_table(F.functor.mor, G.functor.mor,
                    F.source.base.n_mor, G.source.base.n_mor,
                    G.target.base.n_mor))
    cells = _pair_table(F.cells, G.cells, no_f, no_g,
                        G.source.V.base.n_mor)
    return EnrichedFunctor(src, tgt, functor, cells)


def lambda_product(d, e1: EnrichedCategory,
                   e2: EnrichedCategory) -> EnrichedCategory:
    """Binary product twisted through the lax half of a two-tensor
    structure.

    The external product over the squared oplax half is pushed forward
    along the binary lax tensor carrying its interchange-cell column.
    On one-object inputs this is the induced tensor of monoids.
    """
    assert e1.V.same_tables(d.oplax) and e2.V.same_tables(d.oplax), \
        "both inputs must be enriched over the oplax half"
    return pushforward(d.row_functor(1), external_product(e1, e2))
