"""Interchange structures pairing a lax and an oplax tensor family.

A two-tensor structure on a category carries an oplax family (written
with ``omega`` below), a lax family (``lam``), and interchange cells

    chi[p, q] : omega^p(lam^q(...), ..., lam^q(...))
                  -> lam^q(omega^p(...), ..., omega^p(...))

one for every pair of arities from -1 up to the bound.  Component
tables are indexed slot-major for the oplax symbol: the axis block
``i*(q+1) + j`` holds the j-th argument of the i-th ``lam^q``.  Cells
with ``p`` or ``q`` equal to -1 are single morphisms stored as 0-d
tables; ``chi[-1, -1]`` points from the oplax unit to the lax one.

The axioms say that each ``lam^q``, equipped with the column of cells
over it, is a structure-preserving functor from the slotwise oplax
structure on a power of the base into the oplax half, and dually that
each ``omega^p`` preserves the lax halves.  ``check_duoidal`` checks
exactly that, by materializing the power category and handing each row
and column to the functor checker; nothing in this module re-derives a
coherence equation that the functor machinery already knows.

When the oplax half is strong (all cells invertible), the whole cell
family is determined by the two columns ``chi[1, .]`` and
``chi[-1, .]``; ``lax_strong_from_components`` verifies the input
diagrams of that presentation and expands the family by the functor
reconstruction recursion.  The expansion is written against a small
pointwise interface (:class:`LaxStrongInput`) so that backends whose
objects are not index tables can reuse it verbatim.
"""

from __future__ import annotations

import itertools

import numpy as np

from .fincat import (
    INT, INVALID, FiniteCategory, Functor, NatTransformation, Report,
    compose_functors, compose_tables, product, report_mismatch,
    validate_nat)
from .oplax import (
    TruncatedLaxStructure, TruncatedOplaxStructure, check_lax_axioms,
    check_oplax_axioms, iter_assoc_keys)
from .functors import (
    ComonoidObject, MonoidObject, TruncatedLaxFunctor, check_lax_functor,
    reconstruct_comonoid, reconstruct_monoid, _require_cells)


def interchange_permutation(p, q):
    """Index permutation regrouping p+1 blocks of q+1 into q+1 of p+1.

    Entry ``j*(p+1) + i`` of the result is ``i*(q+1) + j``, so applying
    it to a slot-major tuple (or to the axes of a component table)
    moves the lax index outside.  ``interchange_permutation(q, p)``
    is the inverse permutation.
    """
    assert p >= 0 and q >= 0
    return tuple(i * (q + 1) + j
                 for j in range(q + 1) for i in range(p + 1))


def permute_tuple(perm, xs):
    """Reindex a tuple by a permutation given as new-position -> old."""
    assert len(perm) == len(xs)
    return tuple(xs[o] for o in perm)


def _point_category():
    return FiniteCategory(np.array([0]), np.array([0]), np.array([0]),
                          np.array([[0]]), obj_names=["()"],
                          mor_names=["id"])


def power_category(c, k):
    """The k-fold power of a category, materialized; k = 0 is a point."""
    if k == 0:
        return _point_category()
    return product([c] * k)[0]


def _power_table(table, k, n_in, n_out):
    """Slotwise lift of a lookup table to flat k-tuple indices.

    ``table`` has m axes of size ``n_in`` and values below ``n_out``;
    the result has m axes of size ``n_in**k`` and holds the row-major
    flattening of the k componentwise values.
    """
    table = np.asarray(table)
    m = table.ndim
    if k == 0:
        return np.zeros((1,) * m, dtype=INT)
    size = n_in ** k
    flat = [np.arange(size).reshape((1,) * a + (-1,) + (1,) * (m - 1 - a))
            for a in range(m)]
    out = np.zeros((size,) * m, dtype=np.int64)
    for c in range(k):
        div = n_in ** (k - 1 - c)
        comps = tuple((f // div) % n_in for f in flat)
        out = out * n_out + table[comps]
    return out.astype(INT)


def _flat_index(xs, n):
    out = 0
    for x in xs:
        out = out * n + int(x)
    return out


def slotwise_oplax(s: TruncatedOplaxStructure, k, base=None):
    """The componentwise oplax structure on the k-th power of the base."""
    power = base if base is not None else power_category(s.base, k)
    n_obj, n_mor = s.base.n_obj, s.base.n_mor
    tensors = {
        n: Functor((power,) * (n + 1), power,
                   _power_table(f.obj, k, n_obj, n_obj),
                   _power_table(f.mor, k, n_mor, n_mor))
        for n, f in s.tensors.items()}
    assoc = {key: _power_table(v, k, n_obj, n_mor)
             for key, v in s.assoc.items()}
    counit = _power_table(s.counit, k, n_obj, n_mor)
    unit = _flat_index((s.unit,) * k, n_obj)
    return TruncatedOplaxStructure(power, s.bound, unit, tensors, assoc,
                                   counit)


def slotwise_lax(s: TruncatedLaxStructure, k, base=None):
    """The componentwise lax structure on the k-th power of the base."""
    power = base if base is not None else power_category(s.base, k)
    n_obj, n_mor = s.base.n_obj, s.base.n_mor
    tensors = {
        n: Functor((power,) * (n + 1), power,
                   _power_table(f.obj, k, n_obj, n_obj),
                   _power_table(f.mor, k, n_mor, n_mor))
        for n, f in s.tensors.items()}
    assoc = {key: _power_table(v, k, n_obj, n_mor)
             for key, v in s.assoc.items()}
    unit_map = _power_table(s.unit_map, k, n_obj, n_mor)
    unit = _flat_index((s.unit,) * k, n_obj)
    return TruncatedLaxStructure(power, s.bound, unit, tensors, assoc,
                                 unit_map)


class TruncatedDuoidal:
    """A lax and an oplax structure on one base, with interchange cells.

    ``chi`` maps arity pairs to component tables as described in the
    module docstring.  Cells may be left out only on a structure marked
    ``lax_strong``; they are then synthesized from the two stored
    columns on first access.
    """

    def __init__(self, lax, oplax, chi, lax_strong=False):
        assert isinstance(lax, TruncatedLaxStructure)
        assert isinstance(oplax, TruncatedOplaxStructure)
        assert lax.base is oplax.base, "both halves must share the base"
        assert lax.bound == oplax.bound
        self.base = lax.base
        self.bound = lax.bound
        self.lax = lax
        self.oplax = oplax
        self.lax_strong = bool(lax_strong)
        self.chi = {}
        for key, comp in chi.items():
            p, q = int(key[0]), int(key[1])
            assert -1 <= p <= self.bound and -1 <= q <= self.bound, key
            self.chi[(p, q)] = np.asarray(comp, dtype=INT)
        for key, comp in self.chi.items():
            self._check_cell_boundary(key, comp)
        if self.lax_strong:
            for q in range(-1, self.bound + 1):
                assert (1, q) in self.chi and (-1, q) in self.chi, (
                    "a strong-flagged structure stores the binary and "
                    "unit columns")
        self._powers = {}
        self._strong = None

    def _cell_boundaries(self, p, q):
        """Source and destination object grids of one interchange cell."""
        base, lax, oplax = self.base, self.lax, self.oplax
        if p == -1 and q == -1:
            return (np.asarray(oplax.unit, dtype=INT),
                    np.asarray(lax.unit, dtype=INT))
        if p == -1:
            dst = lax.lam(q).obj[(oplax.unit,) * (q + 1)]
            return np.asarray(oplax.unit, dtype=INT), np.asarray(dst, INT)
        if q == -1:
            src = oplax.omega(p).obj[(lax.unit,) * (p + 1)]
            return np.asarray(src, INT), np.asarray(lax.unit, dtype=INT)
        src = compose_functors(oplax.omega(p), [lax.lam(q)] * (p + 1)).obj
        flipped = compose_functors(lax.lam(q), [oplax.omega(p)] * (q + 1))
        dst = np.transpose(flipped.obj, interchange_permutation(q, p))
        return src, dst

    def _check_cell_boundary(self, key, comp):
        p, q = key
        src, dst = self._cell_boundaries(p, q)
        assert comp.shape == src.shape, (
            f"interchange cell {key} has shape {comp.shape}, "
            f"expected {src.shape}")
        if not (np.array_equal(self.base.src[comp], src)
                and np.array_equal(self.base.dst[comp], dst)):
            raise ValueError(
                f"interchange cell {key} does not run from the oplax-of-"
                "lax grid to the lax-of-oplax grid")

    def chi_cell(self, p, q):
        if (p, q) not in self.chi:
            if not self.lax_strong:
                raise ValueError(
                    f"no interchange cell for ({p}, {q}) and the "
                    "structure is not marked strong; supply it explicitly")
            self._fill_row(q)
        return self.chi[(p, q)]

    def _fill_row(self, q):
        fam = InterchangeFamily(self._strong_input())
        n_obj = self.base.n_obj
        for p in range(0, self.bound + 1):
            if (p, q) in self.chi:
                continue
            shape = (n_obj,) * ((p + 1) * (q + 1))
            arr = np.empty(shape, dtype=INT)
            for idx in itertools.product(range(n_obj),
                                         repeat=(p + 1) * (q + 1)):
                rows = tuple(idx[i * (q + 1):(i + 1) * (q + 1)]
                             for i in range(p + 1))
                arr[idx] = fam.chi(p, q, rows)
            self._check_cell_boundary((p, q), arr)
            self.chi[(p, q)] = arr

    def _strong_input(self):
        if self._strong is None:
            chi1 = {n: self.chi[(1, n)] for n in range(-1, self.bound + 1)}
            w = {n: self.chi[(-1, n)] for n in range(-1, self.bound + 1)}
            self._strong = FiniteLaxStrongInput(self.lax, self.oplax,
                                                chi1, w)
        return self._strong

    def with_chi(self, key, comp):
        """Copy with one interchange cell replaced (mutation testing)."""
        chi = dict(self.chi)
        chi[tuple(key)] = np.asarray(comp, dtype=INT)
        return TruncatedDuoidal(self.lax, self.oplax, chi,
                                self.lax_strong)

    def _power(self, k):
        if k not in self._powers:
            cat = power_category(self.base, k)
            self._powers[k] = {"cat": cat, "oplax": None, "lax": None}
        return self._powers[k]

    def row_functor(self, q) -> TruncatedLaxFunctor:
        """lam^q with its cell column, as a functor of oplax structures.

        The domain is the slotwise oplax structure on the (q+1)-st
        power of the base (a point for q = -1), the codomain the oplax
        half, and the arity-p cell is ``chi[p, q]`` with its axis
        blocks flattened to power-category indices.
        """
        k = q + 1
        pw = self._power(k)
        if pw["oplax"] is None:
            pw["oplax"] = slotwise_oplax(self.oplax, k, pw["cat"])
        src = pw["oplax"]
        cat = pw["cat"]
        if q == -1:
            functor = Functor((cat,), self.base,
                              np.array([self.lax.unit], dtype=INT),
                              np.array([self.base.ident[self.lax.unit]],
                                       dtype=INT))
        else:
            lam = self.lax.lam(q)
            functor = Functor((cat,), self.base, lam.obj.reshape(-1),
                              lam.mor.reshape(-1))
        cells = {}
        for p in range(-1, self.bound + 1):
            cells[p] = self.chi_cell(p, q).reshape((cat.n_obj,) * (p + 1))
        return TruncatedLaxFunctor(functor, src, self.oplax, cells,
                                   "oplax2oplax")

    def column_functor(self, p) -> TruncatedLaxFunctor:
        """omega^p preserving the lax halves, read on the opposites.

        An oplax functor between lax structures is the oplax-to-oplax
        case on the opposite categories; the cell tables are the same
        morphism indices with their axis blocks regrouped by the
        interchange permutation (lax index outside).
        """
        k = p + 1
        pw = self._power(k)
        if pw["lax"] is None:
            pw["lax"] = slotwise_lax(self.lax, k, pw["cat"])
        src = pw["lax"].opposite_oplax()
        tgt = self.lax.opposite_oplax()
        cat = pw["cat"]
        if p == -1:
            obj = np.array([self.oplax.unit], dtype=INT)
            mor = np.array([self.base.ident[self.oplax.unit]], dtype=INT)
        else:
            om = self.oplax.omega(p)
            obj, mor = om.obj.reshape(-1), om.mor.reshape(-1)
        functor = Functor((cat.opposite(),), self.base.opposite(), obj, mor)
        cells = {}
        for q in range(-1, self.bound + 1):
            comp = self.chi_cell(p, q)
            if p >= 0 and q >= 0:
                comp = np.transpose(comp, interchange_permutation(p, q))
            cells[q] = comp.reshape((cat.n_obj,) * (q + 1))
        return TruncatedLaxFunctor(functor, src, tgt, cells,
                                   "oplax2oplax")


def _merge(report, prefix, sub, head=()):
    for fam, sig, detail in sub.entries:
        report.fail(f"{prefix}.{fam}", tuple(head) + tuple(sig), detail)


def check_duoidal(d) -> Report:
    """Axioms of both halves, then every row and column functor check.

    Families are the delegated ones under ``row.``/``col.`` prefixes
    with the fixed arity prepended to the signature, so a failure at
    ``row.decomposition`` with signature (q, r, s, i) names the exact
    rectangle.  Accepts an :class:`InterchangeFamily` as well, checked
    pointwise over its sample objects.
    """
    if isinstance(d, InterchangeFamily):
        return pointwise_interchange_report(d)
    report = Report()
    _merge(report, "oplax", check_oplax_axioms(d.oplax))
    _merge(report, "lax", check_lax_axioms(d.lax))
    for q in range(-1, d.bound + 1):
        _merge(report, "row", check_lax_functor(d.row_functor(q)), (q,))
    for p in range(-1, d.bound + 1):
        _merge(report, "col", check_lax_functor(d.column_functor(p)), (p,))
    return report


class LaxStrongInput:
    """Pointwise interface consumed by the strong-tensor expansion.

    Objects and morphisms are opaque values; a backend supplies the two
    tensor families, the cells of both structures together with the
    inverses of the oplax ones, and the binary/unit interchange data.
    Tuples are ordinary Python tuples of objects.  ``lam_obj`` and
    ``tensor_obj`` accept arity -1 with an empty tuple and return the
    respective unit.
    """

    bound = None

    def objects(self):
        raise NotImplementedError

    def identity(self, x):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def mor_equal(self, f, g):
        return f == g

    def lam_obj(self, q, xs):
        raise NotImplementedError

    def lam_mor(self, q, fs):
        raise NotImplementedError

    def unit_map(self, x):
        raise NotImplementedError

    def lax_assoc(self, p, q, i, xs):
        raise NotImplementedError

    def tensor_obj(self, p, xs):
        raise NotImplementedError

    def tensor_mor(self, p, fs):
        raise NotImplementedError

    def counit(self, x):
        raise NotImplementedError

    def counit_inv(self, x):
        raise NotImplementedError

    def oplax_assoc(self, p, q, i, xs):
        raise NotImplementedError

    def oplax_assoc_inv(self, p, q, i, xs):
        raise NotImplementedError

    def chi1(self, n, xs, ys):
        raise NotImplementedError

    def w(self, n):
        raise NotImplementedError


class FiniteLaxStrongInput(LaxStrongInput):
    """Strong-tensor datum over finite index tables.

    Verifies on construction that every cell of the oplax half is
    invertible; the presentation diagrams are checked separately by
    :func:`lax_strong_from_components`.
    """

    def __init__(self, lax, tensor, chi1, w):
        assert isinstance(lax, TruncatedLaxStructure)
        assert isinstance(tensor, TruncatedOplaxStructure)
        assert lax.base is tensor.base
        assert lax.bound == tensor.bound
        self.lax_structure = lax
        self.tensor_structure = tensor
        self.base = lax.base
        self.bound = lax.bound
        self._chi = {int(n): np.asarray(c, dtype=INT)
                     for n, c in chi1.items()}
        self._w = {int(n): int(np.asarray(v)) for n, v in w.items()}
        _require_cells(self._chi, self.bound, "a strong interchange datum")
        _require_cells(self._w, self.bound, "a strong interchange datum")
        inv = self.base.inverse_table()
        if (inv[tensor.counit] == INVALID).any():
            raise ValueError("tensor structure is not strong: the counit "
                             "is not invertible everywhere")
        for key, comp in tensor.assoc.items():
            if (inv[comp] == INVALID).any():
                raise ValueError("tensor structure is not strong: "
                                 f"decomposition cell {key} is not "
                                 "invertible everywhere")
        self._inv = inv

    def objects(self):
        return range(self.base.n_obj)

    def identity(self, x):
        return int(self.base.ident[x])

    def compose(self, g, f):
        out = int(self.base.comp[g, f])
        if out == INVALID:
            raise ValueError(f"morphisms not composable: {g} after {f}")
        return out

    def lam_obj(self, q, xs):
        if q == -1:
            return self.lax_structure.unit
        return int(self.lax_structure.lam(q).obj[tuple(xs)])

    def lam_mor(self, q, fs):
        if q == -1:
            return self.identity(self.lax_structure.unit)
        return int(self.lax_structure.lam(q).mor[tuple(fs)])

    def unit_map(self, x):
        return int(self.lax_structure.unit_map[x])

    def lax_assoc(self, p, q, i, xs):
        return int(self.lax_structure.assoc[(p, q, i)][tuple(xs)])

    def tensor_obj(self, p, xs):
        if p == -1:
            return self.tensor_structure.unit
        return int(self.tensor_structure.omega(p).obj[tuple(xs)])

    def tensor_mor(self, p, fs):
        if p == -1:
            return self.identity(self.tensor_structure.unit)
        return int(self.tensor_structure.omega(p).mor[tuple(fs)])

    def counit(self, x):
        return int(self.tensor_structure.counit[x])

    def counit_inv(self, x):
        return int(self._inv[self.counit(x)])

    def oplax_assoc(self, p, q, i, xs):
        return int(self.tensor_structure.assoc[(p, q, i)][tuple(xs)])

    def oplax_assoc_inv(self, p, q, i, xs):
        return int(self._inv[self.oplax_assoc(p, q, i, xs)])

    def chi1(self, n, xs, ys):
        return int(self._chi[n][tuple(xs) + tuple(ys)])

    def w(self, n):
        return self._w[n]

    def binary_cell_reports(self):
        """Boundary and naturality of each supplied cell, per arity."""
        out = {}
        lax, tensor = self.lax_structure, self.tensor_structure
        for n in range(-1, self.bound + 1):
            rep = Report()
            if n == -1:
                pair = Functor((), self.base, np.array(
                    tensor.omega(1).obj[lax.unit, lax.unit], dtype=INT),
                    np.array(tensor.omega(1).mor[
                        self.base.ident[lax.unit],
                        self.base.ident[lax.unit]], dtype=INT))
                unit_f = Functor.constant(self.base, lax.unit)
                rep.extend(validate_nat(NatTransformation(
                    pair, unit_f, self._chi[-1])))
            else:
                src = compose_functors(tensor.omega(1),
                                       [lax.lam(n)] * 2)
                flipped = compose_functors(lax.lam(n),
                                           [tensor.omega(1)] * (n + 1))
                perm = interchange_permutation(n, 1)
                tgt = Functor(src.sources, self.base,
                              np.transpose(flipped.obj, perm),
                              np.transpose(flipped.mor, perm))
                rep.extend(validate_nat(NatTransformation(
                    src, tgt, self._chi[n])))
            wn = self._w[n]
            if (int(self.base.src[wn]) != tensor.unit
                    or int(self.base.dst[wn])
                    != self.lam_obj(n, (tensor.unit,) * (n + 1))):
                rep.fail("unit-cell.boundary", ())
            out[n] = rep
        return out


def _chain(ctx, *mors):
    """Compose a chain given outermost-first, like ``compose_many``."""
    out = mors[-1]
    for g in reversed(mors[:-1]):
        out = ctx.compose(g, out)
    return out


def _tuples(ctx, slots):
    return itertools.product(ctx.objects(), repeat=slots)


def laxstrong_input_report(ctx: LaxStrongInput) -> Report:
    """The spelled-out diagrams of the strong-tensor presentation.

    Families, in check order: ``associativity`` (per arity of the
    binary cell), ``unitality`` (the nullary square), ``additivity``
    (per composition key of the lax half); those constrain the binary
    column alone.  Then ``comonoid-condition`` and ``comonoid-unit``
    for the unit column alone, and finally ``left-unitality`` and
    ``right-unitality`` tying the two together, so a rejection names a
    diagram whose ingredients are actually at fault.  All equations
    are quantified over tuples of the sample objects.
    """
    report = Report()
    bound = ctx.bound

    def associator(x, y, z):
        return ctx.compose(ctx.oplax_assoc(1, 1, 1, (x, y, z)),
                           ctx.oplax_assoc_inv(1, 1, 0, (x, y, z)))

    for n in range(-1, bound + 1):
        bad = 0
        for flat in _tuples(ctx, 3 * (n + 1)):
            xs = flat[:n + 1]
            ys = flat[n + 1:2 * (n + 1)]
            zs = flat[2 * (n + 1):]
            lx, ly, lz = (ctx.lam_obj(n, t) for t in (xs, ys, zs))
            xy = tuple(ctx.tensor_obj(1, (a, b)) for a, b in zip(xs, ys))
            yz = tuple(ctx.tensor_obj(1, (b, c)) for b, c in zip(ys, zs))
            left = _chain(
                ctx,
                ctx.chi1(n, xy, zs),
                ctx.tensor_mor(1, (ctx.chi1(n, xs, ys),
                                   ctx.identity(lz))))
            right = _chain(
                ctx,
                ctx.chi1(n, xs, yz),
                ctx.tensor_mor(1, (ctx.identity(lx),
                                   ctx.chi1(n, ys, zs))),
                associator(lx, ly, lz))
            slotwise = ctx.lam_mor(
                n, tuple(associator(a, b, c)
                         for a, b, c in zip(xs, ys, zs)))
            if not ctx.mor_equal(ctx.compose(slotwise, left), right):
                bad += 1
        if bad:
            report.fail("associativity", (n,), f"{bad} tuples")

    bad = 0
    for x, y in _tuples(ctx, 2):
        lhs = _chain(ctx, ctx.chi1(0, (x,), (y,)),
                     ctx.tensor_mor(1, (ctx.unit_map(x),
                                        ctx.unit_map(y))))
        if not ctx.mor_equal(lhs, ctx.unit_map(ctx.tensor_obj(1, (x, y)))):
            bad += 1
    if bad:
        report.fail("unitality", (), f"{bad} tuples")

    for (p, q, i) in iter_assoc_keys(bound):
        bad = 0
        for flat in _tuples(ctx, 2 * (p + q + 1)):
            xs = flat[:p + q + 1]
            ys = flat[p + q + 1:]
            nested_x = (xs[:i] + (ctx.lam_obj(q, xs[i:i + q + 1]),)
                        + xs[i + q + 1:])
            nested_y = (ys[:i] + (ctx.lam_obj(q, ys[i:i + q + 1]),)
                        + ys[i + q + 1:])
            pairs = tuple(ctx.tensor_obj(1, (a, b))
                          for a, b in zip(xs, ys))
            inner = ctx.chi1(q, xs[i:i + q + 1], ys[i:i + q + 1])
            mids = tuple(
                inner if c == i
                else ctx.identity(ctx.tensor_obj(
                    1, (nested_x[c], nested_y[c])))
                for c in range(p + 1))
            left = _chain(ctx,
                          ctx.lax_assoc(p, q, i, pairs),
                          ctx.lam_mor(p, mids),
                          ctx.chi1(p, nested_x, nested_y))
            right = _chain(ctx,
                           ctx.chi1(p + q, xs, ys),
                           ctx.tensor_mor(1, (ctx.lax_assoc(p, q, i, xs),
                                              ctx.lax_assoc(p, q, i, ys))))
            if not ctx.mor_equal(left, right):
                bad += 1
        if bad:
            report.fail("additivity", (p, q, i), f"{bad} tuples")

    one = ctx.tensor_obj(-1, ())
    for (p, q, i) in iter_assoc_keys(bound):
        mids = tuple(ctx.w(q) if c == i else ctx.identity(one)
                     for c in range(p + 1))
        lhs = _chain(ctx,
                     ctx.lax_assoc(p, q, i, (one,) * (p + q + 1)),
                     ctx.lam_mor(p, mids),
                     ctx.w(p))
        if not ctx.mor_equal(lhs, ctx.w(p + q)):
            report.fail("comonoid-condition", (p, q, i))
    if not ctx.mor_equal(ctx.w(0), ctx.unit_map(one)):
        report.fail("comonoid-unit", ())

    for n in range(-1, bound + 1):
        bad_l = bad_r = 0
        ones = (one,) * (n + 1)
        for xs in _tuples(ctx, n + 1):
            lx = ctx.lam_obj(n, xs)
            into = ctx.counit_inv(lx)
            left = _chain(
                ctx,
                ctx.lam_mor(n, tuple(
                    ctx.compose(ctx.counit(x),
                                ctx.oplax_assoc_inv(1, -1, 0, (x,)))
                    for x in xs)),
                ctx.chi1(n, ones, xs),
                ctx.tensor_mor(1, (ctx.w(n), ctx.identity(lx))),
                ctx.oplax_assoc(1, -1, 0, (lx,)), into)
            if not ctx.mor_equal(left, ctx.identity(lx)):
                bad_l += 1
            right = _chain(
                ctx,
                ctx.lam_mor(n, tuple(
                    ctx.compose(ctx.counit(x),
                                ctx.oplax_assoc_inv(1, -1, 1, (x,)))
                    for x in xs)),
                ctx.chi1(n, xs, ones),
                ctx.tensor_mor(1, (ctx.identity(lx), ctx.w(n))),
                ctx.oplax_assoc(1, -1, 1, (lx,)), into)
            if not ctx.mor_equal(right, ctx.identity(lx)):
                bad_r += 1
        if bad_l:
            report.fail("left-unitality", (n,), f"{bad_l} tuples")
        if bad_r:
            report.fail("right-unitality", (n,), f"{bad_r} tuples")
    return report


class InterchangeFamily:
    """All interchange components, expanded from a strong-tensor datum.

    ``chi(p, q, rows)`` takes the p+1 argument tuples of the oplax
    symbol (each of length q+1) and returns the component, memoized.
    The two stored columns are returned as supplied; the unary column
    comes from the counit, and higher ones from the reconstruction
    recursion that appends one factor at a time.
    """

    def __init__(self, ctx: LaxStrongInput):
        self.ctx = ctx
        self.bound = ctx.bound
        self._memo = {}

    def chi(self, p, q, rows):
        rows = tuple(tuple(r) for r in rows)
        assert len(rows) == p + 1
        key = (p, q, rows)
        if key in self._memo:
            return self._memo[key]
        ctx = self.ctx
        if p == -1:
            out = ctx.w(q)
        elif p == 1:
            out = ctx.chi1(q, rows[0], rows[1])
        elif p == 0:
            xs = rows[0]
            out = ctx.compose(
                ctx.lam_mor(q, tuple(ctx.counit_inv(x) for x in xs)),
                ctx.counit(ctx.lam_obj(q, xs)))
        else:
            r = p - 1
            lams = tuple(ctx.lam_obj(q, row) for row in rows)
            grouped = tuple(
                ctx.tensor_obj(r, tuple(rows[i][c] for i in range(r + 1)))
                for c in range(q + 1))
            out = _chain(
                self.ctx,
                ctx.lam_mor(q, tuple(
                    ctx.oplax_assoc_inv(
                        1, r, 0, tuple(row[c] for row in rows))
                    for c in range(q + 1))),
                ctx.chi1(q, grouped, rows[r + 1]),
                ctx.tensor_mor(1, (self.chi(r, q, rows[:r + 1]),
                                   ctx.identity(lams[r + 1]))),
                ctx.oplax_assoc(1, r, 0, lams))
        self._memo[key] = out
        return out

    def chi_at_columns(self, p, q, cols):
        """Component with arguments given lax-first (q+1 columns)."""
        rows = tuple(tuple(col[i] for col in cols) for i in range(p + 1))
        return self.chi(p, q, rows)


def pointwise_interchange_report(fam: InterchangeFamily) -> Report:
    """Full interchange axioms evaluated at explicit object tuples.

    The same rows and columns as :func:`check_duoidal`, but without
    materialized powers, so table-free backends can run it.  Families:
    ``row-counit`` (q,), ``row-decomposition`` (q, r, s, i),
    ``col-unit`` (p,), ``col-decomposition`` (p, r, s, j).
    """
    ctx = fam.ctx
    report = Report()
    bound = fam.bound

    for q in range(-1, bound + 1):
        bad = 0
        for xs in _tuples(ctx, q + 1):
            lhs = ctx.compose(
                ctx.lam_mor(q, tuple(ctx.counit(x) for x in xs)),
                fam.chi(0, q, (xs,)))
            if not ctx.mor_equal(lhs, ctx.counit(ctx.lam_obj(q, xs))):
                bad += 1
        if bad:
            report.fail("row-counit", (q,), f"{bad} tuples")
        for (r, s, i) in iter_assoc_keys(bound):
            bad = 0
            for flat in _tuples(ctx, (r + s + 1) * (q + 1)):
                rows = tuple(flat[t * (q + 1):(t + 1) * (q + 1)]
                             for t in range(r + s + 1))
                lams = tuple(ctx.lam_obj(q, row) for row in rows)
                grouped = tuple(
                    ctx.tensor_obj(s, tuple(rows[i + t][c]
                                            for t in range(s + 1)))
                    for c in range(q + 1))
                nested = rows[:i] + (grouped,) + rows[i + s + 1:]
                mids = tuple(
                    fam.chi(s, q, rows[i:i + s + 1]) if c == i
                    else ctx.identity(ctx.lam_obj(q, nested[c]))
                    for c in range(r + 1))
                lhs = _chain(ctx,
                             fam.chi(r, q, nested),
                             ctx.tensor_mor(r, mids),
                             ctx.oplax_assoc(r, s, i, lams))
                rhs = ctx.compose(
                    ctx.lam_mor(q, tuple(
                        ctx.oplax_assoc(r, s, i,
                                        tuple(row[c] for row in rows))
                        for c in range(q + 1))),
                    fam.chi(r + s, q, rows))
                if not ctx.mor_equal(lhs, rhs):
                    bad += 1
            if bad:
                report.fail("row-decomposition", (q, r, s, i),
                            f"{bad} tuples")

    for p in range(-1, bound + 1):
        bad = 0
        for xs in _tuples(ctx, p + 1):
            lhs = ctx.compose(
                fam.chi(p, 0, tuple((x,) for x in xs)),
                ctx.tensor_mor(p, tuple(ctx.unit_map(x) for x in xs)))
            if not ctx.mor_equal(lhs, ctx.unit_map(ctx.tensor_obj(p, xs))):
                bad += 1
        if bad:
            report.fail("col-unit", (p,), f"{bad} tuples")
        for (r, s, j) in iter_assoc_keys(bound):
            bad = 0
            for flat in _tuples(ctx, (r + s + 1) * (p + 1)):
                cols = tuple(flat[t * (p + 1):(t + 1) * (p + 1)]
                             for t in range(r + s + 1))
                oms = tuple(ctx.tensor_obj(p, col) for col in cols)
                grouped = tuple(
                    ctx.lam_obj(s, tuple(cols[j + t][c]
                                         for t in range(s + 1)))
                    for c in range(p + 1))
                nested = cols[:j] + (grouped,) + cols[j + s + 1:]
                mids = tuple(
                    fam.chi_at_columns(p, s, cols[j:j + s + 1]) if c == j
                    else ctx.identity(ctx.tensor_obj(p, nested[c]))
                    for c in range(r + 1))
                lhs = _chain(ctx,
                             ctx.lax_assoc(r, s, j, oms),
                             ctx.lam_mor(r, mids),
                             fam.chi_at_columns(p, r, nested))
                rhs = ctx.compose(
                    fam.chi_at_columns(p, r + s, cols),
                    ctx.tensor_mor(p, tuple(
                        ctx.lax_assoc(r, s, j,
                                      tuple(col[c] for col in cols))
                        for c in range(p + 1))))
                if not ctx.mor_equal(lhs, rhs):
                    bad += 1
            if bad:
                report.fail("col-decomposition", (p, r, s, j),
                            f"{bad} tuples")
    return report


def lax_strong_from_components(lam, tensor=None, chi=None, w=None):
    """Expand binary and unit interchange columns over a strong tensor.

    ``lam`` is either a lax structure (then ``tensor`` is the strong
    oplax structure on the same base, ``chi`` maps each arity to the
    component table of the binary-column cell and ``w`` to the unit-
    column morphism) or a ready :class:`LaxStrongInput`, in which case
    the other arguments stay None.  The input diagrams are verified
    first and any failure raises naming the diagram; the finite form
    returns a fully populated :class:`TruncatedDuoidal` marked strong,
    the pointwise form an :class:`InterchangeFamily`.
    """
    if isinstance(lam, TruncatedLaxStructure):
        ctx = FiniteLaxStrongInput(lam, tensor, chi, w)
        for n, rep in ctx.binary_cell_reports().items():
            if rep.entries:
                raise ValueError(
                    f"interchange datum at arity {n} has an invalid "
                    f"cell: {rep.entries[0][0]}")
    else:
        assert tensor is None and chi is None and w is None
        ctx = lam
    rep = laxstrong_input_report(ctx)
    if rep.entries:
        fam, sig, detail = rep.entries[0]
        where = f" at {sig}" if sig else ""
        raise ValueError(
            f"lax-strong data fails the {fam} diagram{where}"
            + (f" ({detail})" if detail else ""))
    family = InterchangeFamily(ctx)
    if not isinstance(ctx, FiniteLaxStrongInput):
        return family
    n_obj = ctx.base.n_obj
    cells = {}
    for q in range(-1, ctx.bound + 1):
        cells[(1, q)] = ctx._chi[q]
        cells[(-1, q)] = np.asarray(ctx._w[q], dtype=INT)
        for p in (0,) + tuple(range(2, ctx.bound + 1)):
            shape = (n_obj,) * ((p + 1) * (q + 1))
            arr = np.empty(shape, dtype=INT)
            for idx in itertools.product(range(n_obj),
                                         repeat=(p + 1) * (q + 1)):
                rows = tuple(idx[i * (q + 1):(i + 1) * (q + 1)]
                             for i in range(p + 1))
                arr[idx] = family.chi(p, q, rows)
            cells[(p, q)] = arr
    return TruncatedDuoidal(ctx.lax_structure, ctx.tensor_structure,
                            cells, lax_strong=True)


class InducedMonoidTensor:
    """The lax family carried over to monoid objects of the oplax half.

    Tensoring monoid carriers with ``lam^q`` and routing the cells
    through ``chi`` gives a monoid again; the unit is the lax unit with
    the q = -1 column as its multiplications.
    """

    def __init__(self, d: TruncatedDuoidal):
        self.d = d

    def unit(self) -> MonoidObject:
        cells = {p: int(self.d.chi_cell(p, -1))
                 for p in range(-1, self.d.bound + 1)}
        return MonoidObject(self.d.lax.unit, cells)

    def tensor(self, q, monoids) -> MonoidObject:
        if q == -1:
            assert not tuple(monoids)
            return self.unit()
        monoids = tuple(monoids)
        assert len(monoids) == q + 1
        for m in monoids:
            _require_cells(m.cells, self.d.bound, "a monoid argument")
        carriers = tuple(m.carrier for m in monoids)
        carrier = int(self.d.lax.lam(q).obj[carriers])
        cells = {}
        for p in range(-1, self.d.bound + 1):
            at = self.d.chi_cell(p, q)[carriers * (p + 1)]
            slotwise = self.d.lax.lam(q).mor_at(
                tuple(m.cells[p] for m in monoids))
            cells[p] = self.d.base.compose(slotwise, int(at))
        return MonoidObject(carrier, cells)


class InducedComonoidTensor:
    """Dually, the oplax family on comonoid objects of the lax half."""

    def __init__(self, d: TruncatedDuoidal):
        self.d = d

    def unit(self) -> ComonoidObject:
        cells = {q: int(self.d.chi_cell(-1, q))
                 for q in range(-1, self.d.bound + 1)}
        return ComonoidObject(self.d.oplax.unit, cells)

    def tensor(self, p, comonoids) -> ComonoidObject:
        if p == -1:
            assert not tuple(comonoids)
            return self.unit()
        comonoids = tuple(comonoids)
        assert len(comonoids) == p + 1
        for c in comonoids:
            _require_cells(c.cells, self.d.bound, "a comonoid argument")
        carriers = tuple(c.carrier for c in comonoids)
        carrier = int(self.d.oplax.omega(p).obj[carriers])
        cells = {}
        for q in range(-1, self.d.bound + 1):
            at = self.d.chi_cell(p, q)[
                tuple(a for a in carriers for _ in range(q + 1))]
            slotwise = self.d.oplax.omega(p).mor_at(
                tuple(c.cells[q] for c in comonoids))
            cells[q] = self.d.base.compose(int(at), slotwise)
        return ComonoidObject(carrier, cells)


def monoid_category_lax_structure(d: TruncatedDuoidal):
    """Tensor-of-monoids data for the lax half; see the class docs."""
    return InducedMonoidTensor(d)


def comonoid_category_oplax_structure(d: TruncatedDuoidal):
    """Tensor-of-comonoids data for the oplax half."""
    return InducedComonoidTensor(d)


class BimonoidObject:
    """A carrier with a multiplication pair and a comultiplication pair.

    The monoid half lives in the oplax structure, the comonoid half in
    the lax one; higher cells of both are reconstructed, never stored.
    """

    def __init__(self, carrier, mu, eta, delta, eps):
        self.carrier = int(carrier)
        self.mu = int(mu)
        self.eta = int(eta)
        self.delta = int(delta)
        self.eps = int(eps)


def check_bimonoid(d: TruncatedDuoidal, b: BimonoidObject) -> Report:
    """Truncated bimonoid diagrams, then the reconstructed rectangles.

    First the three monoid diagrams of (mu, eta), the three comonoid
    diagrams of (delta, eps), and the four compatibility squares, all
    at the lowest arities.  When both truncations hold, the full cell
    families are reconstructed and every mixed rectangle inside the
    bound is re-verified under the ``rectangle`` family; the corner
    rectangles are asserted to agree with the compatibility squares,
    and with passing squares all rectangles must pass.
    """
    assert d.bound >= 2, "bimonoid diagrams need composition keys up to 2"
    report = Report()
    V = d.base
    A = b.carrier
    om, lam = d.oplax, d.lax
    sq = int(om.omega(1).obj[A, A])
    co = int(lam.lam(1).obj[A, A])
    if int(V.src[b.mu]) != sq or int(V.dst[b.mu]) != A:
        report.fail("boundary", ("mul",))
    if int(V.src[b.eta]) != om.unit or int(V.dst[b.eta]) != A:
        report.fail("boundary", ("unit",))
    if int(V.src[b.delta]) != A or int(V.dst[b.delta]) != co:
        report.fail("boundary", ("comul",))
    if int(V.src[b.eps]) != A or int(V.dst[b.eps]) != lam.unit:
        report.fail("boundary", ("counit",))
    if report.entries:
        return report

    ident_a = int(V.ident[A])

    def om_pair(f, g):
        return om.omega(1).mor_at((f, g))

    def lam_pair(f, g):
        return lam.lam(1).mor_at((f, g))

    def mroute(cell, q, i):
        acomp = int(om.assoc[(1, q, i)][(A,) * (q + 2)])
        mid = om_pair(cell, ident_a) if i == 0 else om_pair(ident_a, cell)
        return V.compose_many(b.mu, mid, acomp)

    def wroute(cell, q, i):
        acomp = int(lam.assoc[(1, q, i)][(A,) * (q + 2)])
        mid = lam_pair(cell, ident_a) if i == 0 else lam_pair(ident_a, cell)
        return V.compose_many(acomp, mid, b.delta)

    report_mismatch(report, "monoid.hexagon", (),
                    np.asarray(mroute(b.mu, 1, 0)),
                    np.asarray(mroute(b.mu, 1, 1)))
    counit_a = int(om.counit[A])
    report_mismatch(report, "monoid.left-unit", (),
                    np.asarray(mroute(b.eta, -1, 0)), np.asarray(counit_a))
    report_mismatch(report, "monoid.right-unit", (),
                    np.asarray(mroute(b.eta, -1, 1)), np.asarray(counit_a))
    unit_a = int(lam.unit_map[A])
    report_mismatch(report, "comonoid.hexagon", (),
                    np.asarray(wroute(b.delta, 1, 0)),
                    np.asarray(wroute(b.delta, 1, 1)))
    report_mismatch(report, "comonoid.left-counit", (),
                    np.asarray(wroute(b.eps, -1, 0)), np.asarray(unit_a))
    report_mismatch(report, "comonoid.right-counit", (),
                    np.asarray(wroute(b.eps, -1, 1)), np.asarray(unit_a))
    trunc_ok = report.ok()

    lhs = V.compose(b.delta, b.mu)
    rhs = V.compose_many(
        lam_pair(b.mu, b.mu),
        int(d.chi_cell(1, 1)[(A,) * 4]),
        om_pair(b.delta, b.delta))
    report_mismatch(report, "compat.mul-comul", (),
                    np.asarray(lhs), np.asarray(rhs))
    square_fail = {(1, 1): lhs != rhs}

    lhs = V.compose(b.eps, b.eta)
    rhs = int(d.chi_cell(-1, -1))
    report_mismatch(report, "compat.unit-counit", (),
                    np.asarray(lhs), np.asarray(rhs))
    square_fail[(-1, -1)] = lhs != rhs

    lhs = V.compose(b.delta, b.eta)
    rhs = V.compose(lam_pair(b.eta, b.eta), int(d.chi_cell(-1, 1)))
    report_mismatch(report, "compat.unit-comul", (),
                    np.asarray(lhs), np.asarray(rhs))
    square_fail[(-1, 1)] = lhs != rhs

    lhs = V.compose(b.eps, b.mu)
    rhs = V.compose(int(d.chi_cell(1, -1)),
                    om_pair(b.eps, b.eps))
    report_mismatch(report, "compat.mul-counit", (),
                    np.asarray(lhs), np.asarray(rhs))
    square_fail[(1, -1)] = lhs != rhs

    if not trunc_ok:
        return report

    m = reconstruct_monoid(om, A, b.mu, b.eta)
    w = reconstruct_comonoid(lam, A, b.delta, b.eps)
    rect_fail = {}
    for p in range(-1, d.bound + 1):
        for q in range(-1, d.bound + 1):
            lhs = V.compose(w.cells[q], m.cells[p])
            inner = (V.ident[om.unit] if p == -1
                     else om.omega(p).mor_at((w.cells[q],) * (p + 1)))
            outer = (V.ident[lam.unit] if q == -1
                     else lam.lam(q).mor_at((m.cells[p],) * (q + 1)))
            at = int(d.chi_cell(p, q)[(A,) * ((p + 1) * (q + 1))])
            rhs = V.compose_many(int(outer), at, int(inner))
            rect_fail[(p, q)] = lhs != rhs
            report_mismatch(report, "rectangle", (p, q),
                            np.asarray(lhs), np.asarray(rhs))
    for corner, failed in square_fail.items():
        assert rect_fail[corner] == failed, (
            "corner rectangle disagrees with its compatibility square")
    if not any(square_fail.values()):
        assert not any(rect_fail.values()), (
            "truncated data passed but a higher rectangle failed")
    return report
