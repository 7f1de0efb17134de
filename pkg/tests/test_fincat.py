import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oplaxcat.fincat import (
    FiniteCategory, Functor, NatTransformation, apply_functor,
    compose_functors, freeze_slot, from_monoid, from_poset,
    horizontal_compose, pack_functor, precompose, product,
    unpack_functor, validate_category, validate_functor, validate_nat,
    vertical_compose,
)


def terminal_category():
    return FiniteCategory(
        src=np.array([0]), dst=np.array([0]),
        ident=np.array([0]), comp=np.array([[0]]))


def z3():
    table = np.array([[(i + j) % 3 for j in range(3)] for i in range(3)])
    return from_monoid(table, names=["0", "1", "2"])


def chain2():
    # poset 0 <= 1 <= 2
    leq = np.array([[i <= j for j in range(3)] for i in range(3)])
    return from_poset(leq)


def test_terminal_category_valid():
    rep = validate_category(terminal_category())
    assert rep.ok(), str(rep)


def test_z3_valid():
    c = z3()
    assert c.n_obj == 1 and c.n_mor == 3
    assert validate_category(c).ok()


def test_from_monoid_rejects_nonneutral_zero():
    table = np.array([[1, 0], [0, 1]])  # element 0 is not the unit
    with pytest.raises(AssertionError):
        from_monoid(table)


def test_corrupted_composition_detected():
    c = z3()
    bad = c.comp.copy()
    bad[1, 1] = 0  # 1+1 should be 2
    broken = FiniteCategory(c.src, c.dst, c.ident, bad)
    rep = validate_category(broken)
    assert not rep.ok()
    assert any("assoc" in fam or "comp" in fam for fam, _, _ in rep.entries)


def test_poset_category():
    c = chain2()
    assert c.n_obj == 3 and c.n_mor == 6
    assert validate_category(c).ok()
    # exactly one morphism 0 -> 2
    assert len(c.hom(0, 2)) == 1


def test_opposite_involution():
    c = chain2()
    op2 = c.opposite().opposite()
    assert c.same_tables(op2)
    assert validate_category(c.opposite()).ok()


def test_compose_many_order():
    c = chain2()
    f01 = c.hom(0, 1)[0]
    f12 = c.hom(1, 2)[0]
    out = c.compose_many(f12, f01)  # outermost first
    assert out == c.hom(0, 2)[0]


def test_product_category():
    a, b = z3(), chain2()
    prod, projs = product([a, b])
    assert prod.n_obj == a.n_obj * b.n_obj
    assert prod.n_mor == a.n_mor * b.n_mor
    assert validate_category(prod).ok()
    for pr in projs:
        assert validate_functor(pr).ok()


def test_identity_functor_and_composition():
    c = chain2()
    ident = Functor.identity(c)
    assert validate_functor(ident).ok()
    again = compose_functors(ident, [ident])
    assert again.same_tables(ident)


def test_constant_functor():
    c = chain2()
    k = Functor.constant(c, 2)
    assert k.arity == 0
    assert k.obj_at(()) == 2


def test_freeze_slot():
    a, b = z3(), chain2()
    # binary "project to second" functor on (a, b)
    obj = np.zeros((a.n_obj, b.n_obj), dtype=np.int32)
    obj[:] = np.arange(b.n_obj)
    mor = np.zeros((a.n_mor, b.n_mor), dtype=np.int32)
    mor[:] = np.arange(b.n_mor)
    f = Functor([a, b], b, obj, mor)
    assert validate_functor(f).ok()
    g = freeze_slot(f, 0, 0)
    assert g.arity == 1
    assert g.same_tables(Functor.identity(b))


def test_identity_nat_and_vertical():
    c = chain2()
    f = Functor.identity(c)
    n = NatTransformation.identity(f)
    assert validate_nat(n).ok()
    assert vertical_compose(n, n).same_tables(n)


def _swap_endo(c):
    """The inversion endofunctor of Z/3."""
    obj = np.array([0], dtype=np.int32)
    mor = np.array([0, 2, 1], dtype=np.int32)
    return Functor([c], c, obj, mor)


def test_functor_validation_catches_noncomposition():
    c = z3()
    bad = Functor([c], c, np.array([0], dtype=np.int32),
                  np.array([0, 1, 1], dtype=np.int32))
    rep = validate_functor(bad)
    assert not rep.ok()


def test_whisker_identity():
    c = z3()
    s = _swap_endo(c)
    assert validate_functor(s).ok()
    n = NatTransformation.identity(s)
    # whiskering an identity nat through apply/precompose stays identity
    w = apply_functor(Functor.identity(c), [n])
    assert np.array_equal(w.comp, n.comp)
    w2 = precompose(n, [Functor.identity(c)])
    assert np.array_equal(w2.comp, n.comp)


def test_interchange_on_grid():
    # two parallel nats between endofunctors of the chain poset:
    # pointwise there is at most one morphism so any boundary-correct
    # choice is natural, and interchange must hold on the nose.
    c = chain2()
    ident = Functor.identity(c)
    # endofunctor collapsing everything to the top object
    top = Functor([c], c,
                  np.full(c.n_obj, 2, dtype=np.int32),
                  np.full(c.n_mor, c.ident[2], dtype=np.int32))
    assert validate_functor(top).ok()
    comp = np.array([c.hom(x, 2)[0] for x in range(c.n_obj)],
                    dtype=np.int32)
    up = NatTransformation(ident, top, comp)
    assert validate_nat(up).ok()
    lhs = horizontal_compose(up, up)
    mid1 = vertical_compose(precompose(up, [top]), apply_functor(ident, [up]))
    assert np.array_equal(lhs.comp, mid1.comp)


def test_pack_unpack_roundtrip():
    a, b = z3(), chain2()
    prod, _ = product([a, b])
    obj = np.zeros((a.n_obj, b.n_obj), dtype=np.int32)
    obj[:] = np.arange(b.n_obj)
    mor = np.zeros((a.n_mor, b.n_mor), dtype=np.int32)
    mor[:] = np.arange(b.n_mor)
    f = Functor([a, b], b, obj, mor)
    packed = pack_functor(f, prod)
    assert validate_functor(packed).ok()
    back = unpack_functor(packed, [a, b])
    assert back.same_tables(f)


@st.composite
def cyclic_group(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    table = np.array([[(i + j) % n for j in range(n)] for i in range(n)])
    return from_monoid(table)


@given(cyclic_group())
@settings(max_examples=20, deadline=None)
def test_cyclic_groups_validate(c):
    assert validate_category(c).ok()


@given(st.integers(min_value=1, max_value=5), st.data())
@settings(max_examples=20, deadline=None)
def test_random_posets_validate(n, data):
    leq = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            leq[i, j] = data.draw(st.booleans())
    # transitive closure to make it a genuine poset
    for k in range(n):
        for i in range(n):
            for j in range(n):
                leq[i, j] = leq[i, j] or (leq[i, k] and leq[k, j])
    c = from_poset(leq)
    assert validate_category(c).ok()
    assert validate_category(c.opposite()).ok()
