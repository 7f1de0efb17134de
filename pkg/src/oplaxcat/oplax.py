"""Arity-truncated oplax monoidal structures on finite categories.

A structure consists of tensor functors of every arity up to a bound,
decomposition cells relating adjacent arities, and a counit out of the
unary symbol.  Everything is table-driven; the axiom checker enumerates
every diagram instance inside the bound and reports failures by a
deterministic signature.

Cell orientation: ``assoc[(p, q, i)]`` holds the components of the
transformation from the flat (p+q)-ary tensor to the p-ary tensor with
the q-ary tensor plugged into slot i.  ``q = -1`` means inserting the
unit object, and the flat symbol loses one argument; the degenerate key
``(0, -1, 0)`` (unit into the unary symbol) is stored as well since the
counitality triangle at the unit consumes it.
"""

from __future__ import annotations

import numpy as np

from .fincat import (
    INT, Functor, NatTransformation, Report, apply_functor,
    compose_functors, compose_tables, freeze_slot, precompose,
    report_mismatch, validate_functor, validate_nat, vertical_compose,
)


def iter_assoc_keys(bound):
    for p in range(0, bound + 1):
        for q in range(-1, bound - p + 1):
            for i in range(p + 1):
                yield (p, q, i)


class TruncatedOplaxStructure:
    """Tensors, decomposition cells and counit, truncated at ``bound``."""

    def __init__(self, base, bound, unit, tensors, assoc, counit):
        assert bound >= 1
        self.base = base
        self.bound = bound
        self.unit = int(unit)
        self.tensors = {int(n): f for n, f in tensors.items()}
        assert sorted(self.tensors) == list(range(bound + 1))
        for n, f in self.tensors.items():
            assert f.arity == n + 1 and f.target is base
        self.assoc = {k: np.asarray(v, dtype=INT)
                      for k, v in assoc.items()}
        assert sorted(self.assoc) == sorted(iter_assoc_keys(bound))
        for (p, q, i), comp in self.assoc.items():
            assert comp.shape == (base.n_obj,) * (p + q + 1), (p, q, i)
        self.counit = np.asarray(counit, dtype=INT)
        assert self.counit.shape == (base.n_obj,)

    def omega(self, n):
        if n == -1:
            return Functor.constant(self.base, self.unit)
        return self.tensors[n]

    def expanded(self, p, q, i):
        """The nested functor: q-ary symbol inside slot i of the p-ary."""
        ident = Functor.identity(self.base)
        inners = [ident] * i + [self.omega(q)] + [ident] * (p - i)
        return compose_functors(self.omega(p), inners)

    def assoc_nat(self, p, q, i):
        return NatTransformation(
            self.omega(p + q), self.expanded(p, q, i), self.assoc[(p, q, i)])

    def counit_nat(self):
        return NatTransformation(
            self.omega(0), Functor.identity(self.base), self.counit)

    def same_tables(self, other):
        if (self.bound != other.bound or self.unit != other.unit
                or not self.base.same_tables(other.base)):
            return False
        for n in range(self.bound + 1):
            if not self.tensors[n].same_tables(other.tensors[n]):
                return False
        for k in iter_assoc_keys(self.bound):
            if not np.array_equal(self.assoc[k], other.assoc[k]):
                return False
        return np.array_equal(self.counit, other.counit)

    def with_assoc(self, key, comp):
        """Copy with one cell table replaced (for mutation testing)."""
        assoc = dict(self.assoc)
        assoc[key] = np.asarray(comp, dtype=INT)
        return TruncatedOplaxStructure(
            self.base, self.bound, self.unit, self.tensors, assoc,
            self.counit)

    def with_counit(self, comp):
        return TruncatedOplaxStructure(
            self.base, self.bound, self.unit, self.tensors, self.assoc,
            comp)


def validate_boundaries(s: TruncatedOplaxStructure) -> Report:
    """Functoriality of the tensors, naturality of every cell."""
    report = Report()
    for n in range(s.bound + 1):
        rep = validate_functor(s.tensors[n], check_composition=(n <= 1))
        for fam, sig, detail in rep.entries:
            report.fail(f"tensor{n}.{fam}", sig, detail)
    for key in iter_assoc_keys(s.bound):
        rep = validate_nat(s.assoc_nat(*key))
        for fam, sig, detail in rep.entries:
            report.fail(f"assoc.{fam}", key, detail)
    rep = validate_nat(s.counit_nat())
    for fam, sig, detail in rep.entries:
        report.fail(f"counit.{fam}", sig, detail)
    return report


def check_oplax_axioms(s: TruncatedOplaxStructure) -> Report:
    """Every counitality, parallel and sequential instance in the bound.

    Families and signatures:
      counit_left  (p,)            counit after unary-wrap == identity
      counit_right (p, i)          counit inside slot i == identity
      parallel     (p, q, r, i, j) two disjoint slots i < j of the p-ary
      sequential   (p, q, r, i, j) r-ary inside slot j of the q-ary
                                   inside slot i of the p-ary
    """
    report = Report()
    V = s.base
    K = s.bound
    ident = Functor.identity(V)
    id_nat = NatTransformation.identity(ident)

    for p in range(-1, K + 1):
        om = s.omega(p)
        counit_at = precompose(s.counit_nat(), [om])
        left = vertical_compose(counit_at, s.assoc_nat(0, p, 0))
        report_mismatch(report, "counit_left", (p,),
                        left.comp, V.ident[om.obj])

    for p in range(0, K + 1):
        om = s.omega(p)
        for i in range(p + 1):
            ats = [id_nat] * i + [s.counit_nat()] + [id_nat] * (p - i)
            whisk = apply_functor(om, ats)
            left = vertical_compose(whisk, s.assoc_nat(p, 0, i))
            report_mismatch(report, "counit_right", (p, i),
                            left.comp, V.ident[om.obj])

    for p in range(1, K + 1):
        for q in range(-1, K - p + 1):
            for r in range(-1, K - p - q + 1):
                if p + r > K:
                    continue
                for sq in range(p + 1):
                    for sr in range(sq + 1, p + 1):
                        first = s.assoc_nat(p + q, r, sr + q)
                        outer = precompose(
                            s.assoc_nat(p, q, sq),
                            [ident] * (sr + q) + [s.omega(r)]
                            + [ident] * (p - sr))
                        lhs = vertical_compose(outer, first)
                        first2 = s.assoc_nat(p + r, q, sq)
                        outer2 = precompose(
                            s.assoc_nat(p, r, sr),
                            [ident] * sq + [s.omega(q)]
                            + [ident] * (p + r - sq))
                        rhs = vertical_compose(outer2, first2)
                        report_mismatch(report, "parallel",
                                        (p, q, r, sq, sr),
                                        lhs.comp, rhs.comp)

    for p in range(0, K + 1):
        for q in range(0, K - p + 1):
            for r in range(-1, K - p - q + 1):
                if q + r > K:
                    continue
                for i in range(p + 1):
                    for j in range(q + 1):
                        first = s.assoc_nat(p + q, r, i + j)
                        outer = precompose(
                            s.assoc_nat(p, q, i),
                            [ident] * (i + j) + [s.omega(r)]
                            + [ident] * (p + q - i - j))
                        lhs = vertical_compose(outer, first)
                        ats = ([id_nat] * i + [s.assoc_nat(q, r, j)]
                               + [id_nat] * (p - i))
                        rhs = vertical_compose(
                            apply_functor(s.omega(p), ats),
                            s.assoc_nat(p, q + r, i))
                        report_mismatch(report, "sequential",
                                        (p, q, r, i, j),
                                        lhs.comp, rhs.comp)
    return report


def lift_strict_monoidal(base, tensor: Functor, unit, bound=3):
    """Oplax structure of a strictly associative, strictly unital tensor.

    All cells come out as identities; rejects non-strict input naming
    the violated equation.
    """
    ident = Functor.identity(base)
    assert tensor.arity == 2 and tensor.target is base
    left = compose_functors(tensor, [tensor, ident])
    right = compose_functors(tensor, [ident, tensor])
    if not left.same_tables(right):
        raise ValueError("tensor is not strictly associative: "
                         "(x y) z != x (y z) as tables")
    if not freeze_slot(tensor, 0, unit).same_tables(ident):
        raise ValueError("unit is not a strict left unit for the tensor")
    if not freeze_slot(tensor, 1, unit).same_tables(ident):
        raise ValueError("unit is not a strict right unit for the tensor")
    tensors = {0: ident, 1: tensor}
    for n in range(2, bound + 1):
        tensors[n] = compose_functors(tensor, [tensors[n - 1], ident])
    tensors = {n: tensors[n] for n in range(bound + 1)}
    assoc = {}
    for (p, q, i) in iter_assoc_keys(bound):
        src = tensors[p + q] if p + q >= 0 else None
        if src is None:
            assoc[(p, q, i)] = np.asarray(base.ident[unit], dtype=INT)
        else:
            assoc[(p, q, i)] = base.ident[src.obj]
    counit = base.ident[np.arange(base.n_obj)]
    return TruncatedOplaxStructure(base, bound, unit, tensors, assoc, counit)


class TruncatedLaxStructure:
    """Lax counterpart: composition cells run toward the flat tensor.

    ``assoc[(p, q, i)]`` is a morphism table from the nested functor
    (q-ary inside slot i of the p-ary) to the (p+q)-ary tensor, and
    ``unit_map`` points from the identity into the 0-ary tensor.  The
    axioms are exactly the oplax axioms of the same tables read on the
    opposite category, and ``check_lax_axioms`` delegates there.
    """

    def __init__(self, base, bound, unit, tensors, assoc, unit_map):
        assert bound >= 1
        self.base = base
        self.bound = bound
        self.unit = int(unit)
        self.tensors = {int(n): f for n, f in tensors.items()}
        assert sorted(self.tensors) == list(range(bound + 1))
        for n, f in self.tensors.items():
            assert f.arity == n + 1 and f.target is base
        self.assoc = {k: np.asarray(v, dtype=INT)
                      for k, v in assoc.items()}
        assert sorted(self.assoc) == sorted(iter_assoc_keys(bound))
        for (p, q, i), comp in self.assoc.items():
            assert comp.shape == (base.n_obj,) * (p + q + 1), (p, q, i)
        self.unit_map = np.asarray(unit_map, dtype=INT)
        assert self.unit_map.shape == (base.n_obj,)
        self._op_struct = None

    def lam(self, n):
        if n == -1:
            return Functor.constant(self.base, self.unit)
        return self.tensors[n]

    def expanded(self, p, q, i):
        ident = Functor.identity(self.base)
        inners = [ident] * i + [self.lam(q)] + [ident] * (p - i)
        return compose_functors(self.lam(p), inners)

    def assoc_nat(self, p, q, i):
        return NatTransformation(
            self.expanded(p, q, i), self.lam(p + q), self.assoc[(p, q, i)])

    def unit_nat(self):
        return NatTransformation(
            Functor.identity(self.base), self.lam(0), self.unit_map)

    def same_tables(self, other):
        if (self.bound != other.bound or self.unit != other.unit
                or not self.base.same_tables(other.base)):
            return False
        for n in range(self.bound + 1):
            if not self.tensors[n].same_tables(other.tensors[n]):
                return False
        for k in iter_assoc_keys(self.bound):
            if not np.array_equal(self.assoc[k], other.assoc[k]):
                return False
        return np.array_equal(self.unit_map, other.unit_map)

    def with_assoc(self, key, comp):
        assoc = dict(self.assoc)
        assoc[key] = np.asarray(comp, dtype=INT)
        return TruncatedLaxStructure(
            self.base, self.bound, self.unit, self.tensors, assoc,
            self.unit_map)

    def opposite_oplax(self):
        """The same tables as an oplax structure on the opposite base."""
        if self._op_struct is None:
            op = self.base.opposite()
            tensors = {n: Functor((op,) * (n + 1), op, f.obj, f.mor)
                       for n, f in self.tensors.items()}
            self._op_struct = TruncatedOplaxStructure(
                op, self.bound, self.unit, tensors, self.assoc,
                self.unit_map)
        return self._op_struct


def lax_view_of_oplax(s: TruncatedOplaxStructure) -> TruncatedLaxStructure:
    """View an oplax structure as a lax one on the opposite category.

    Tables are shared verbatim; only the reading of each cell flips.
    The result's ``opposite_oplax`` round-trips to a structure on the
    original base with identical tables.
    """
    if getattr(s, "_lax_op", None) is None:
        op = s.base.opposite()
        tensors = {n: Functor((op,) * (n + 1), op, f.obj, f.mor)
                   for n, f in s.tensors.items()}
        s._lax_op = TruncatedLaxStructure(
            op, s.bound, s.unit, tensors, s.assoc, s.counit)
    return s._lax_op


def lax_lift_strict_monoidal(base, tensor: Functor, unit, bound=3):
    """Lax structure of a strictly associative, strictly unital tensor."""
    ident = Functor.identity(base)
    assert tensor.arity == 2 and tensor.target is base
    left = compose_functors(tensor, [tensor, ident])
    right = compose_functors(tensor, [ident, tensor])
    if not left.same_tables(right):
        raise ValueError("tensor is not strictly associative: "
                         "(x y) z != x (y z) as tables")
    if not freeze_slot(tensor, 0, unit).same_tables(ident):
        raise ValueError("unit is not a strict left unit for the tensor")
    if not freeze_slot(tensor, 1, unit).same_tables(ident):
        raise ValueError("unit is not a strict right unit for the tensor")
    tensors = {0: ident, 1: tensor}
    for n in range(2, bound + 1):
        tensors[n] = compose_functors(tensor, [tensors[n - 1], ident])
    tensors = {n: tensors[n] for n in range(bound + 1)}
    assoc = {}
    for (p, q, i) in iter_assoc_keys(bound):
        if p + q < 0:
            assoc[(p, q, i)] = np.asarray(base.ident[unit], dtype=INT)
        else:
            assoc[(p, q, i)] = base.ident[tensors[p + q].obj]
    unit_map = base.ident[np.arange(base.n_obj)]
    return TruncatedLaxStructure(base, bound, unit, tensors, assoc, unit_map)


def check_lax_axioms(s: TruncatedLaxStructure) -> Report:
    """Counitality / parallel / sequential instances of the lax axioms."""
    return check_oplax_axioms(s.opposite_oplax())


def is_normal(s: TruncatedOplaxStructure) -> bool:
    return bool(s.base.iso_table()[s.counit].all())


def strictify(s: TruncatedOplaxStructure) -> TruncatedOplaxStructure:
    """Replace the unary symbol by the identity functor.

    Cells with the unary symbol on the nested side collapse to
    identities (the counitality triangles make those instances hold on
    the nose); cells whose flat side was the unary symbol are
    transported along the inverse counit; everything else is kept.
    Requires a normal structure.
    """
    iso = s.base.iso_table()
    bad = np.nonzero(~iso[s.counit])[0]
    if bad.size:
        x = int(bad[0])
        raise ValueError(
            f"structure is not normal: counit at object {x} "
            f"({s.base.obj_names[x]}) is not invertible")
    V = s.base
    inv = V.inverse_table()
    counit_inv = inv[s.counit]
    ident = Functor.identity(V)
    tensors = dict(s.tensors)
    tensors[0] = ident
    assoc = {}
    for (p, q, i) in iter_assoc_keys(s.bound):
        if p == 0 or q == 0:
            n = p + q
            if n == -1:
                assoc[(p, q, i)] = np.asarray(V.ident[s.unit], dtype=INT)
            else:
                src = tensors[n] if n != 0 else ident
                assoc[(p, q, i)] = V.ident[src.obj]
        elif p + q == 0:
            # flat side was the unary symbol (p = 1, q = -1): the new
            # source is the bare object, reached through the counit
            assoc[(p, q, i)] = compose_tables(
                V, s.assoc[(p, q, i)], counit_inv)
        else:
            assoc[(p, q, i)] = s.assoc[(p, q, i)]
    counit = V.ident[np.arange(V.n_obj)]
    return TruncatedOplaxStructure(V, s.bound, s.unit, tensors, assoc, counit)


def strictify_comparison(s: TruncatedOplaxStructure):
    """Cells of the identity functor viewed from s to strictify(s).

    Identity in every arity except one, where the counit mediates
    between the old unary symbol and the identity functor.
    """
    cells = {-1: np.asarray(s.base.ident[s.unit], dtype=INT)}
    for n in range(s.bound + 1):
        if n == 0:
            cells[0] = s.counit.copy()
        else:
            cells[n] = s.base.ident[s.tensors[n].obj]
    return cells


class LaxMonoidalComonad:
    """A comonad together with lax compatibility cells for each arity.

    ``cells[n]`` transforms the n-ary tensor of comonad images into the
    comonad image of the n-ary tensor; ``cells[-1]`` is the morphism
    from the unit object to its image.
    """

    def __init__(self, structure, W, w, t, cells):
        self.structure = structure
        self.W = W
        self.w = w
        self.t = t
        self.cells = {int(n): np.asarray(c, dtype=INT)
                      for n, c in cells.items()}
        assert sorted(self.cells) == list(range(-1, structure.bound + 1))

    def cell_nat(self, n):
        s = self.structure
        if n == -1:
            src = s.omega(-1)
            tgt = compose_functors(self.W, [s.omega(-1)])
        else:
            src = compose_functors(s.omega(n), [self.W] * (n + 1))
            tgt = compose_functors(self.W, [s.omega(n)])
        return NatTransformation(src, tgt, self.cells[n])

    def square(self):
        """The composite comonad cell for two layers of W."""
        nested = {}
        for n in range(-1, self.structure.bound + 1):
            if n == -1:
                outer = apply_functor(self.W, [self.cell_nat(-1)])
                nested[n] = vertical_compose(outer, self.cell_nat(-1))
            else:
                inner = precompose(self.cell_nat(n), [self.W] * (n + 1))
                outer = apply_functor(self.W, [self.cell_nat(n)])
                nested[n] = vertical_compose(outer, inner)
        return nested


def identity_comonad(s: TruncatedOplaxStructure) -> LaxMonoidalComonad:
    ident = Functor.identity(s.base)
    idn = NatTransformation.identity(ident)
    cells = {-1: s.base.ident[s.unit]}
    for n in range(s.bound + 1):
        cells[n] = s.base.ident[s.tensors[n].obj]
    return LaxMonoidalComonad(s, ident, idn, idn, cells)


def check_lax_monoidal_comonad(c: LaxMonoidalComonad) -> Report:
    report = Report()
    s = c.structure
    V = s.base
    rep = validate_functor(c.W)
    for fam, sig, detail in rep.entries:
        report.fail(f"comonad.W.{fam}", sig, detail)
    for name, nat in (("w", c.w), ("t", c.t)):
        rep = validate_nat(nat)
        for fam, sig, detail in rep.entries:
            report.fail(f"comonad.{name}.{fam}", sig, detail)
    for n in range(-1, s.bound + 1):
        rep = validate_nat(c.cell_nat(n))
        for fam, sig, detail in rep.entries:
            report.fail(f"comonad.cell.{fam}", (n,), detail)

    # comonad laws
    lhs = vertical_compose(precompose(c.w, [c.W]), c.w)
    rhs = vertical_compose(apply_functor(c.W, [c.w]), c.w)
    report_mismatch(report, "comonad.coassoc", (), lhs.comp, rhs.comp)
    lhs = vertical_compose(precompose(c.t, [c.W]), c.w)
    report_mismatch(report, "comonad.counit_outer", (),
                    lhs.comp, V.ident[c.W.obj])
    lhs = vertical_compose(apply_functor(c.W, [c.t]), c.w)
    report_mismatch(report, "comonad.counit_inner", (),
                    lhs.comp, V.ident[c.W.obj])

    # lax cells: unary compatibility with the counit
    lhs = vertical_compose(apply_functor(c.W, [s.counit_nat()]),
                           c.cell_nat(0))
    rhs = precompose(s.counit_nat(), [c.W])
    report_mismatch(report, "comonad.cell_counit", (), lhs.comp, rhs.comp)

    # lax cells: decomposition compatibility per (p, q, i)
    ident = Functor.identity(V)
    id_w = NatTransformation.identity(c.W)
    for (p, q, i) in iter_assoc_keys(s.bound):
        step1 = precompose(s.assoc_nat(p, q, i), [c.W] * (p + q + 1))
        ats = [id_w] * i + [c.cell_nat(q)] + [id_w] * (p - i)
        step2 = apply_functor(s.omega(p), ats)
        inners = [ident] * i + [s.omega(q)] + [ident] * (p - i)
        step3 = precompose(c.cell_nat(p), inners)
        lhs = vertical_compose(step3, vertical_compose(step2, step1))
        rhs = vertical_compose(apply_functor(c.W, [s.assoc_nat(p, q, i)]),
                               c.cell_nat(p + q))
        report_mismatch(report, "comonad.cell_decomp", (p, q, i),
                        lhs.comp, rhs.comp)

    # t is a monoidal transformation
    for n in range(-1, s.bound + 1):
        om = s.omega(n)
        lhs = vertical_compose(precompose(c.t, [om]), c.cell_nat(n))
        rhs = apply_functor(om, [c.t] * (n + 1))
        report_mismatch(report, "comonad.t_monoidal", (n,),
                        lhs.comp, rhs.comp)

    # w is a monoidal transformation (target carries the squared cells)
    squared = c.square()
    for n in range(-1, s.bound + 1):
        om = s.omega(n)
        lhs = vertical_compose(precompose(c.w, [om]), c.cell_nat(n))
        rhs = vertical_compose(squared[n],
                               apply_functor(om, [c.w] * (n + 1)))
        report_mismatch(report, "comonad.w_monoidal", (n,),
                        lhs.comp, rhs.comp)
    return report


def comonad_twist(s: TruncatedOplaxStructure,
                  c: LaxMonoidalComonad) -> TruncatedOplaxStructure:
    """New structure with every tensor argument passed through W first."""
    assert c.structure is s
    V = s.base
    W = c.W
    tensors = {n: compose_functors(s.omega(n), [W] * (n + 1))
               for n in range(s.bound + 1)}
    counit = compose_tables(V, c.t.comp, s.counit[W.obj])
    id_w = NatTransformation.identity(W)
    assoc = {}
    for (p, q, i) in iter_assoc_keys(s.bound):
        step1 = precompose(s.assoc_nat(p, q, i), [W] * (p + q + 1))
        if q >= 0:
            spread = apply_functor(s.omega(q), [c.w] * (q + 1))
            collect = precompose(c.cell_nat(q), [W] * (q + 1))
            slot = vertical_compose(collect, spread)
        else:
            slot = c.cell_nat(-1)
        whisk = apply_functor(s.omega(p),
                              [id_w] * i + [slot] + [id_w] * (p - i))
        assoc[(p, q, i)] = vertical_compose(whisk, step1).comp
    return TruncatedOplaxStructure(V, s.bound, s.unit, tensors, assoc, counit)


def unit_comonoid(s: TruncatedOplaxStructure):
    """The canonical maps from the unit into its iterated tensors.

    Returns a dict n -> morphism index, built by repeatedly inserting
    the unit at slot zero.
    """
    V = s.base
    w = {-1: int(V.ident[s.unit])}
    for n in range(0, s.bound + 1):
        cell = s.assoc[(n, -1, 0)]
        at_units = cell[(s.unit,) * n] if n else cell[()]
        w[n] = V.compose(int(at_units), w[n - 1])
    return w


def check_unit_comonoid(s: TruncatedOplaxStructure) -> Report:
    report = Report()
    V = s.base
    w = unit_comonoid(s)

    # insertion-slot independence of the defining recursion
    for n in range(0, s.bound + 1):
        for i in range(n + 1):
            cell = s.assoc[(n, -1, i)]
            at_units = int(cell[(s.unit,) * n]) if n else int(cell[()])
            got = compose_tables(V, at_units, w[n - 1])
            report_mismatch(report, "unit_comonoid.position", (n, i),
                            got, w[n])

    # counit of the comonoid: collapsing after inserting is the identity
    got = compose_tables(V, s.counit[s.unit], w[0])
    report_mismatch(report, "unit_comonoid.section", (),
                    got, V.ident[s.unit])

    # coassociativity across every decomposition cell
    for (p, q, i) in iter_assoc_keys(s.bound):
        if q < 0:
            continue  # folded into the position-independence family
        cell = s.assoc[(p, q, i)]
        at_units = int(cell[(s.unit,) * (p + q + 1)]) if p + q + 1 else \
            int(cell[()])
        lhs = compose_tables(V, at_units, w[p + q])
        mors = [int(V.ident[s.unit])] * (p + 1)
        mors[i] = w[q]
        spread = int(s.omega(p).mor[tuple(mors)]) if p + 1 else \
            int(s.omega(p).mor[()])
        rhs = compose_tables(V, spread, w[p])
        report_mismatch(report, "unit_comonoid.coassoc", (p, q, i),
                        lhs, rhs)

    # the two unit insertions into the binary tensor agree after the
    # counit section
    lhs = compose_tables(V, int(s.assoc[(1, -1, 0)][s.unit]), w[0])
    rhs = compose_tables(V, int(s.assoc[(1, -1, 1)][s.unit]), w[0])
    report_mismatch(report, "unit_comonoid.parallel_insertions", (),
                    lhs, rhs)
    return report


class Multicategory:
    """Weak multimorphisms of an oplax structure.

    A multimorphism with m inputs is a morphism of the base category out
    of the (m-1)-ary tensor of its input objects; plugging one into a
    slot of another goes through a decomposition cell.
    """

    def __init__(self, s: TruncatedOplaxStructure, bound=None):
        self.s = s
        self.bound = s.bound if bound is None else int(bound)
        assert self.bound <= s.bound

    def source_object(self, objs):
        objs = tuple(objs)
        return self.s.omega(len(objs) - 1).obj_at(objs)

    def hom(self, objs, b):
        return self.s.base.hom(self.source_object(objs), int(b))

    def unit(self, a):
        return int(self.s.counit[a])

    def strict_to_weak(self, f):
        V = self.s.base
        return V.compose(int(f), self.unit(int(V.src[f])))

    def plug(self, g, g_objs, i, f, f_objs):
        """Feed multimorphism f into input slot i of g."""
        V = self.s.base
        g_objs = tuple(g_objs)
        f_objs = tuple(f_objs)
        p = len(g_objs) - 1
        q = len(f_objs) - 1
        assert int(V.dst[f]) == g_objs[i]
        cell = self.s.assoc[(p, q, i)]
        mixed = g_objs[:i] + f_objs + g_objs[i + 1:]
        at = int(cell[mixed]) if mixed else int(cell[()])
        mors = [int(V.ident[x]) for x in g_objs]
        mors[i] = int(f)
        om = self.s.omega(p)
        spread = int(om.mor[tuple(mors)]) if p + 1 else int(om.mor[()])
        return V.compose_many(int(g), spread, at)


def _mm_arrays(mc, m):
    """All multimorphisms of input count m as (objs (N,m), mor (N,))."""
    s = mc.s
    V = s.base
    om = s.omega(m - 1)
    if m == 0:
        mors = np.nonzero(V.src == int(om.obj))[0]
        return np.zeros((len(mors), 0), dtype=INT), mors.astype(INT)
    shape = (V.n_obj,) * m
    flat_src = om.obj.reshape(-1)
    t_idx, f_idx = np.nonzero(flat_src[:, None] == V.src[None, :])
    objs = np.stack(np.unravel_index(t_idx, shape), axis=1).astype(INT)
    return objs, f_idx.astype(INT)


def _plug_vec(mc, g_objs, g_mor, i, f_objs, f_mor):
    """Row-wise plugging of f-multimorphisms into slot i of g's."""
    s = mc.s
    V = s.base
    p = g_objs.shape[1] - 1
    q = f_objs.shape[1] - 1
    mixed = np.concatenate(
        [g_objs[:, :i], f_objs, g_objs[:, i + 1:]], axis=1)
    cell = s.assoc[(p, q, i)]
    if mixed.shape[1]:
        at = cell[tuple(mixed.T)]
    else:
        at = np.broadcast_to(cell, g_mor.shape)
    cols = V.ident[g_objs].copy()
    cols[:, i] = f_mor
    spread = s.omega(p).mor[tuple(cols.T)]
    out = compose_tables(V, g_mor, compose_tables(V, spread, at))
    return out, mixed


def _match(V, slot_objs, h_mor):
    """Row/column pairs where a multimorphism lands in a slot object."""
    return np.nonzero(slot_objs[:, None] == V.dst[h_mor][None, :])


def check_multicategory(mc: Multicategory) -> Report:
    """Exhaustive unit and associativity laws for the multimorphisms.

    Arities are capped so the total number of inputs stays within the
    bound of the underlying structure.
    """
    report = Report()
    s = mc.s
    V = s.base
    K = mc.bound
    pools = {m: _mm_arrays(mc, m) for m in range(0, K + 2)}

    for m in range(1, K + 2):
        objs, mors = pools[m]
        if not len(mors):
            continue
        for i in range(m):
            got, _ = _plug_vec(mc, objs, mors, i,
                               objs[:, i:i + 1], s.counit[objs[:, i]])
            report_mismatch(report, "multicat.unit_right", (m, i),
                            got, mors)
    for m in range(0, K + 2):
        if m - 1 > K:
            continue
        objs, mors = pools[m]
        if not len(mors):
            continue
        b = V.dst[mors]
        got, _ = _plug_vec(mc, b[:, None], s.counit[b], 0, objs, mors)
        report_mismatch(report, "multicat.unit_left", (m,), got, mors)

    for p in range(0, K + 1):
        for q in range(0, K - p + 1):
            g_all, gm_all = pools[p + 1]
            f_all, fm_all = pools[q + 1]
            for i in range(p + 1):
                gi, fi = _match(V, g_all[:, i], fm_all)
                if not len(gi):
                    continue
                g_objs, g_mor = g_all[gi], gm_all[gi]
                f_objs, f_mor = f_all[fi], fm_all[fi]
                gf_mor, gf_objs = _plug_vec(
                    mc, g_objs, g_mor, i, f_objs, f_mor)
                for r in range(-1, K - p - q + 1):
                    if q + r > K:
                        continue
                    h_all, hm_all = pools[r + 1]
                    for j in range(q + 1):
                        rows, hi = _match(V, f_objs[:, j], hm_all)
                        if not len(rows):
                            continue
                        h_objs, h_mor = h_all[hi], hm_all[hi]
                        left, _ = _plug_vec(
                            mc, gf_objs[rows], gf_mor[rows], i + j,
                            h_objs, h_mor)
                        fh_mor, fh_objs = _plug_vec(
                            mc, f_objs[rows], f_mor[rows], j,
                            h_objs, h_mor)
                        right, _ = _plug_vec(
                            mc, g_objs[rows], g_mor[rows], i,
                            fh_objs, fh_mor)
                        report_mismatch(report, "multicat.assoc_nested",
                                        (p, q, r, i, j), left, right)

    for p in range(1, K + 1):
        for q in range(-1, K - p + 1):
            g_all, gm_all = pools[p + 1]
            f_all, fm_all = pools[q + 1]
            for r in range(-1, K - p - q + 1):
                if p + r > K:
                    continue
                h_all, hm_all = pools[r + 1]
                for i in range(p + 1):
                    gi, fi = _match(V, g_all[:, i], fm_all)
                    if not len(gi):
                        continue
                    g_objs, g_mor = g_all[gi], gm_all[gi]
                    f_objs, f_mor = f_all[fi], fm_all[fi]
                    gf_mor, gf_objs = _plug_vec(
                        mc, g_objs, g_mor, i, f_objs, f_mor)
                    for j in range(i + 1, p + 1):
                        rows, hi = _match(V, g_objs[:, j], hm_all)
                        if not len(rows):
                            continue
                        h_objs, h_mor = h_all[hi], hm_all[hi]
                        left, _ = _plug_vec(
                            mc, gf_objs[rows], gf_mor[rows], j + q,
                            h_objs, h_mor)
                        gh_mor, gh_objs = _plug_vec(
                            mc, g_objs[rows], g_mor[rows], j,
                            h_objs, h_mor)
                        right, _ = _plug_vec(
                            mc, gh_objs, gh_mor, i,
                            f_objs[rows], f_mor[rows])
                        report_mismatch(report, "multicat.assoc_disjoint",
                                        (p, q, r, i, j), left, right)
    return report


def to_multicategory(s: TruncatedOplaxStructure, bound=None) -> Multicategory:
    return Multicategory(s, bound)


def counit_precomposition_report(s: TruncatedOplaxStructure) -> Report:
    """Whether precomposition with the counit is bijective on hom-sets
    out of every tensor image.  Holds automatically on normal
    structures; certain twists satisfy it without being normal.
    """
    report = Report()
    V = s.base
    targets = set()
    for p in range(0, s.bound + 1):
        targets.update(int(v) for v in s.omega(p).obj.reshape(-1))
    for x in sorted(targets):
        wrapped = int(s.omega(0).obj[x])
        e = int(s.counit[x])
        for b in range(V.n_obj):
            outer = [int(f) for f in V.hom(x, b)]
            inner = [int(f) for f in V.hom(wrapped, b)]
            image = [V.compose(f, e) for f in outer]
            if len(set(image)) != len(outer) or set(image) != set(inner):
                report.fail("counit_precomposition", (x, b),
                            f"{len(outer)} -> {len(set(image))} of "
                            f"{len(inner)}")
    return report
