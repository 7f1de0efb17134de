"""Functor variants, monoidal transformations, monoids and comonoids."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oplaxcat.fincat import (
    INT, Functor, NatTransformation, apply_functor, compose_functors)
from oplaxcat.fixtures import (
    central_comonad, interior_comonad, intersection_structure, poset_tensor,
    strict_cyclic_structure, twisted_union_structure, union_structure)
from oplaxcat.functors import (
    ComonoidObject, MonoidObject, TruncatedLaxFunctor, check_comonoid,
    check_lax_functor, check_monoid, check_monoidal_nat,
    identity_lax_functor, reconstruct_comonoid, reconstruct_lax_functor,
    reconstruct_monoid, represent_oplax_functor, truncated_monoidality_check)
from oplaxcat.oplax import (
    comonad_twist, lax_lift_strict_monoidal, lax_view_of_oplax,
    lift_strict_monoidal, strictify, strictify_comparison, unit_comonoid)


def cyclic_pair(n, bound=3):
    """Strict oplax and strict lax structure on one cyclic base."""
    s = strict_cyclic_structure(n, bound)
    lax = lax_lift_strict_monoidal(s.base, s.tensors[1], 0, bound)
    return s, lax


def linear_cells(k, n, bound=3):
    """Cell family value k at arity 1 and k*m at arity m."""
    return {m: np.full((1,) * (m + 1), (k * m) % n, dtype=INT)
            for m in range(-1, bound + 1)}


def one_object_nat(source_f, target_f, value):
    return NatTransformation(source_f, target_f,
                             np.array([value], dtype=INT))


# ---------------------------------------------------------------- variants


def test_identity_functor_passes_oplax_and_lax():
    u = union_structure(3)
    assert check_lax_functor(identity_lax_functor(u)).ok()
    lax_u = lax_lift_strict_monoidal(u.base, u.tensors[1], 0)
    assert check_lax_functor(identity_lax_functor(lax_u)).ok()


def test_variant_structure_kind_enforced():
    s, lax = cyclic_pair(3)
    cells = linear_cells(0, 3)
    with pytest.raises(ValueError, match="source"):
        TruncatedLaxFunctor(Functor.identity(s.base), s, s, cells,
                            "lax2oplax")
    with pytest.raises(ValueError, match="variant"):
        TruncatedLaxFunctor(Functor.identity(s.base), s, s, cells, "sideways")


def test_comonad_is_lax_endofunctor():
    # the comonad's cells are exactly lax-functor data for W
    s = strict_cyclic_structure(3)
    c = central_comonad(s, 1)
    f = TruncatedLaxFunctor(c.W, s, s, c.cells, "oplax2oplax")
    assert check_lax_functor(f).ok()

    u = union_structure(3)
    ic = interior_comonad(u, 0b011)
    g = TruncatedLaxFunctor(ic.W, u, u, ic.cells, "oplax2oplax")
    assert check_lax_functor(g).ok()


def test_oplax2oplax_mutation_fails_decomposition():
    s = strict_cyclic_structure(3)
    c = central_comonad(s, 1)
    f = TruncatedLaxFunctor(c.W, s, s, c.cells, "oplax2oplax")
    bad = f.with_cell(1, np.full((1, 1), (int(c.cells[1][0, 0]) + 1) % 3))
    rep = check_lax_functor(bad)
    assert not rep.ok()
    assert set(rep.families()) <= {"counit", "decomposition"}
    assert "decomposition" in rep.families()


def test_twist_counit_is_oplax_functor():
    # identity functor from the twisted structure back to the original,
    # with cells given by tensoring the comonad counit
    z3 = strict_cyclic_structure(3)
    u = union_structure(3)
    for s, c in [(z3, central_comonad(z3, 1)),
                 (u, interior_comonad(u, 0b011))]:
        tw = comonad_twist(s, c)
        cells = {-1: np.asarray(s.base.ident[s.unit], dtype=INT)}
        for n in range(s.bound + 1):
            cells[n] = apply_functor(s.omega(n), [c.t] * (n + 1)).comp
        f = represent_oplax_functor(Functor.identity(s.base), tw, s, cells)
        assert f.variant == "lax2lax"
        assert check_lax_functor(f).ok()


def test_strictify_comparison_is_oplax_functor():
    # needs normal structures; the cyclic central twists are normal and
    # genuinely non-strict
    z3 = strict_cyclic_structure(3)
    z5 = strict_cyclic_structure(5)
    for s in (comonad_twist(z3, central_comonad(z3, 1)),
              comonad_twist(z5, central_comonad(z5, 2))):
        st_s = strictify(s)
        cells = strictify_comparison(s)
        f = represent_oplax_functor(Functor.identity(s.base), s, st_s, cells)
        assert check_lax_functor(f).ok()


# ------------------------------------------------- lax source, oplax target

Z3_MUTATION_ADDITIVITY = {
    (1, -1, 0), (1, -1, 1), (1, 1, 0), (1, 1, 1), (1, 2, 0), (1, 2, 1),
    (2, -1, 0), (2, -1, 1), (2, -1, 2), (2, 1, 0), (2, 1, 1), (2, 1, 2),
}


def test_lax2oplax_linear_families():
    s, lax = cyclic_pair(3)
    ident = Functor.identity(s.base)
    for k in range(3):
        f = TruncatedLaxFunctor(ident, lax, s, linear_cells(k, 3),
                                "lax2oplax")
        assert check_lax_functor(f).ok()


def test_lax2oplax_mutation_hits_frozen_additivity_keys():
    s, lax = cyclic_pair(3)
    f = TruncatedLaxFunctor(Functor.identity(s.base), lax, s,
                            linear_cells(1, 3), "lax2oplax")
    bad = f.with_cell(1, np.full((1, 1), 2))
    rep = check_lax_functor(bad)
    assert set(rep.families()) == {"additivity"}
    sigs = {sig for fam, sig, _ in rep.entries if fam == "additivity"}
    assert sigs == Z3_MUTATION_ADDITIVITY
    assert (1, 1, 0) in sigs and (1, 1, 1) in sigs


def test_interior_operator_is_lax2oplax_functor():
    u = union_structure(3)
    lax_u = lax_lift_strict_monoidal(u.base, u.tensors[1], 0)
    ic = interior_comonad(u, 0b011)
    f = TruncatedLaxFunctor(ic.W, lax_u, u, ic.cells, "lax2oplax")
    assert check_lax_functor(f).ok()


def test_reconstruct_round_trip_cyclic():
    s, lax = cyclic_pair(3)
    f = TruncatedLaxFunctor(Functor.identity(s.base), lax, s,
                            linear_cells(1, 3), "lax2oplax")
    rec = reconstruct_lax_functor(Functor.identity(s.base), lax, s,
                                  f.cells[1], f.cells[-1])
    assert rec.same_tables(f)
    assert check_lax_functor(rec).ok()
    got = {n: int(rec.cells[n].flat[0]) for n in range(-1, 4)}
    assert got == {-1: 2, 0: 0, 1: 1, 2: 2, 3: 0}


def test_reconstruct_round_trip_semilattice():
    u = union_structure(3)
    lax_u = lax_lift_strict_monoidal(u.base, u.tensors[1], 0)
    ic = interior_comonad(u, 0b011)
    f = TruncatedLaxFunctor(ic.W, lax_u, u, ic.cells, "lax2oplax")
    assert check_lax_functor(f).ok()
    rec = reconstruct_lax_functor(ic.W, lax_u, u, ic.cells[1], ic.cells[-1])
    assert rec.same_tables(f)


def test_reconstruct_identity_cells_on_strict():
    s, lax = cyclic_pair(3)
    rec = reconstruct_lax_functor(Functor.identity(s.base), lax, s,
                                  np.zeros((1, 1), dtype=INT),
                                  np.asarray(0, dtype=INT))
    assert all(int(rec.cells[n].flat[0]) == 0 for n in range(-1, 4))


def test_reconstruct_rejects_unitality_violation():
    s, lax = cyclic_pair(3)
    # value 2 at arity one: both bracketings still agree, but the unit
    # triangles close on 2 + 2 = 1 instead of the forced nullary cell 0
    with pytest.raises(ValueError, match="right unitality"):
        reconstruct_lax_functor(Functor.identity(s.base), lax, s,
                                np.full((1, 1), 2), np.asarray(2, dtype=INT))


def test_reconstruct_rejects_wrong_boundary_cell():
    u = union_structure(3)
    lax_u = lax_lift_strict_monoidal(u.base, u.tensors[1], 0)
    ic = interior_comonad(u, 0b011)
    bad = np.zeros((8, 8), dtype=INT)  # identity of the bottom everywhere
    with pytest.raises(ValueError, match="natural transformation"):
        reconstruct_lax_functor(ic.W, lax_u, u, bad, ic.cells[-1])


def test_reconstruct_rejects_unsupported_variant():
    u = union_structure(3)
    f = identity_lax_functor(u)
    with pytest.raises(ValueError, match="no reconstruction"):
        reconstruct_lax_functor(f.functor, u, u, f.cells[1], f.cells[-1],
                                "oplax2oplax")


S5, LAX5 = cyclic_pair(5)


@settings(deadline=None, max_examples=60)
@given(st.tuples(*([st.integers(0, 4)] * 5)))
def test_lax2oplax_cells_characterized_mod5(vals):
    # over one object the valid cell families are exactly the linear ones
    cells = {n: np.full((1,) * (n + 1), vals[n + 1], dtype=INT)
             for n in range(-1, 4)}
    f = TruncatedLaxFunctor(Functor.identity(S5.base), LAX5, S5, cells,
                            "lax2oplax")
    k = vals[2]
    expected = (vals[1] == 0 and vals[0] == (-k) % 5
                and vals[3] == (2 * k) % 5 and vals[4] == (3 * k) % 5)
    assert check_lax_functor(f).ok() == expected


# ------------------------------------------------------ oplax into lax


def test_oplax2lax_linear_families_and_round_trip():
    s, lax = cyclic_pair(3)
    ident = Functor.identity(s.base)
    f = TruncatedLaxFunctor(ident, s, lax, linear_cells(1, 3), "oplax2lax")
    assert check_lax_functor(f).ok()
    rec = reconstruct_lax_functor(ident, s, lax, f.cells[1], f.cells[-1],
                                  "oplax2lax")
    assert rec.variant == "oplax2lax"
    assert rec.same_tables(f)


def test_complement_functor_oplax2lax():
    # complements send the intersection structure, read on the opposite
    # lattice, strictly onto the union structure
    u = union_structure(3)
    base = u.base
    inter_lax = lax_lift_strict_monoidal(
        base, poset_tensor(base, lambda x, y: x & y), 7)
    omega = inter_lax.opposite_oplax()
    union_lax = lax_lift_strict_monoidal(base, u.tensors[1], 0)
    op = omega.base

    idx = {(int(base.src[m]), int(base.dst[m])): m
           for m in range(base.n_mor)}
    obj = np.array([7 ^ x for x in range(8)], dtype=INT)
    mor = np.array(
        [idx[(7 ^ int(base.dst[m]), 7 ^ int(base.src[m]))]
         for m in range(base.n_mor)], dtype=INT)
    compl = Functor((op,), base, obj, mor)

    cells = {-1: np.asarray(base.ident[int(obj[omega.unit])], dtype=INT)}
    for n in range(4):
        inner = compose_functors(compl, [omega.omega(n)])
        cells[n] = base.ident[inner.obj]
    f = TruncatedLaxFunctor(compl, omega, union_lax, cells, "oplax2lax")
    assert check_lax_functor(f).ok()
    rec = reconstruct_lax_functor(compl, omega, union_lax, cells[1],
                                  cells[-1], "oplax2lax")
    assert rec.same_tables(f)


# ------------------------------------------------- monoidal transformations


def test_comonad_counit_is_monoidal():
    s = strict_cyclic_structure(3)
    c = central_comonad(s, 1)
    f = TruncatedLaxFunctor(c.W, s, s, c.cells, "oplax2oplax")
    g = identity_lax_functor(s)
    rep = check_monoidal_nat(c.t, f, g)
    assert rep.ok()
    ident = NatTransformation.identity(c.W)
    assert check_monoidal_nat(ident, f, f).ok()


def test_corrupted_component_fails_at_frozen_arities():
    s = strict_cyclic_structure(3)
    c = central_comonad(s, 1)
    f = TruncatedLaxFunctor(c.W, s, s, c.cells, "oplax2oplax")
    g = identity_lax_functor(s)
    alpha = one_object_nat(c.W, g.functor, 1)
    rep = check_monoidal_nat(alpha, f, g)
    sigs = {sig for fam, sig, _ in rep.entries if fam == "monoidal"}
    assert sigs == {(-1,), (1,), (2,)}


def test_monoidal_nat_on_poset_functors():
    u = union_structure(3)
    lax_u = lax_lift_strict_monoidal(u.base, u.tensors[1], 0)
    ic = interior_comonad(u, 0b011)
    f = TruncatedLaxFunctor(ic.W, lax_u, u, ic.cells, "lax2oplax")
    ident = Functor.identity(u.base)
    id_cells = {-1: np.asarray(u.base.ident[0], dtype=INT)}
    for n in range(4):
        id_cells[n] = u.base.ident[u.tensors[n].obj]
    g = TruncatedLaxFunctor(ident, lax_u, u, id_cells, "lax2oplax")
    assert check_lax_functor(g).ok()
    assert check_monoidal_nat(ic.t, f, g).ok()
    assert truncated_monoidality_check(ic.t, f, g)


def test_truncated_agreement_exhaustive_cyclic():
    s, lax = cyclic_pair(3)
    ident = Functor.identity(s.base)
    functors = {k: TruncatedLaxFunctor(ident, lax, s, linear_cells(k, 3),
                                       "lax2oplax") for k in range(3)}
    for kf in range(3):
        for kg in range(3):
            for a in range(3):
                alpha = one_object_nat(ident, ident, a)
                got = truncated_monoidality_check(
                    alpha, functors[kf], functors[kg])
                assert got == ((kf - kg - a) % 3 == 0)


def test_truncated_check_rejects_wrong_variant():
    s = strict_cyclic_structure(3)
    f = identity_lax_functor(s)
    alpha = NatTransformation.identity(f.functor)
    with pytest.raises(ValueError, match="lax-source"):
        truncated_monoidality_check(alpha, f, f)


# ----------------------------------------------------------------- monoids


def test_semilattice_elements_are_monoids():
    u = union_structure(3)
    V = u.base
    for a in range(V.n_obj):
        mu = int(V.ident[a])
        eta = int(V.hom(0, a)[0])
        m = reconstruct_monoid(u, a, mu, eta)
        assert check_monoid(u, m).ok()


def test_monoid_truncation_bijection_by_enumeration():
    # success of the binary-data checks must coincide with the existence
    # of a full cell family, and the extension must be that family
    for n in (2, 3):
        s = strict_cyclic_structure(n)
        for mu in range(n):
            for eta in range(n):
                try:
                    m = reconstruct_monoid(s, 0, mu, eta)
                    ok = True
                except ValueError:
                    ok = False
                assert ok == ((mu + eta) % n == 0)
                if ok:
                    assert check_monoid(s, m).ok()
                    assert m.cells[1] == mu and m.cells[-1] == eta
                else:
                    for m2 in range(n):
                        for m3 in range(n):
                            cand = MonoidObject(
                                0, {-1: eta, 0: 0, 1: mu, 2: m2, 3: m3})
                            assert not check_monoid(s, cand).ok()


def test_monoid_counit_normalization_enforced():
    s = strict_cyclic_structure(3)
    m = reconstruct_monoid(s, 0, 1, 2)
    cells = dict(m.cells)
    cells[0] = 1
    rep = check_monoid(s, MonoidObject(0, cells))
    assert "monoid.counit" in rep.families()


def test_reconstruct_monoid_rejects_unit_violation():
    s = strict_cyclic_structure(3)
    with pytest.raises(ValueError, match="unitality"):
        reconstruct_monoid(s, 0, 1, 1)


def test_monoid_requires_all_cells():
    s = strict_cyclic_structure(3)
    with pytest.raises(ValueError, match="missing"):
        check_monoid(s, MonoidObject(0, {-1: 2, 0: 0, 1: 1}))


# --------------------------------------------------------------- comonoids


def test_unit_comonoid_passes_comonoid_check():
    for s in (union_structure(3), twisted_union_structure(3)):
        w = unit_comonoid(s)
        c = ComonoidObject(s.unit, w)
        assert check_comonoid(s, c).ok()


def test_intersection_elements_are_comonoids():
    i_s = intersection_structure(3)
    V = i_s.base
    for a in range(V.n_obj):
        cells = {-1: int(V.hom(a, 7)[0]), 0: int(V.ident[a]),
                 1: int(V.ident[a])}
        for n in (2, 3):
            cells[n] = int(V.ident[a])
        c = ComonoidObject(a, cells)
        assert check_comonoid(i_s, c).ok()


def test_comonoid_missing_cells_rejected():
    u = union_structure(3)
    w = unit_comonoid(u)
    partial = {n: w[n] for n in (-1, 0, 1)}
    with pytest.raises(ValueError, match="missing"):
        check_comonoid(u, ComonoidObject(u.unit, partial))


def test_comonoid_reconstruction_in_lax_intersection():
    i_s = intersection_structure(3)
    lax_i = lax_lift_strict_monoidal(i_s.base, i_s.tensors[1], 7)
    V = i_s.base
    for a in range(V.n_obj):
        rec = reconstruct_comonoid(lax_i, a, int(V.ident[a]),
                                   int(V.hom(a, 7)[0]))
        assert check_comonoid(lax_i, rec).ok()


def test_comonoid_reconstruction_needs_lax_structure():
    i_s = intersection_structure(3)
    with pytest.raises(ValueError, match="lax structure"):
        reconstruct_comonoid(i_s, 7, int(i_s.base.ident[7]),
                             int(i_s.base.ident[7]))


def test_comonoid_reconstruction_enumerated_cyclic():
    s, lax = cyclic_pair(3)
    for d in range(3):
        for e in range(3):
            try:
                rec = reconstruct_comonoid(lax, 0, d, e)
                ok = True
            except ValueError as err:
                ok = False
                assert "counitality" in str(err)
            assert ok == ((d + e) % 3 == 0)
            if ok:
                assert check_comonoid(lax, rec).ok()
