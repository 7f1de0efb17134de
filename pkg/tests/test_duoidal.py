"""Interchange structures, strong-tensor expansion, bimonoids.

Expected values for the cyclic fixtures are frozen from the closed
forms: with both halves strict addition on Z/m and interchange
constants p*q*t, the bimonoids are exactly the tuples
(a, -a, -a-t, a+t), the induced tensor of monoids a and b is the
monoid a+b+t with unit -t, and the strong-tensor presentation has
binary column n*t and unit column -n*t.
"""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oplaxcat.fincat import INT
from oplaxcat.oplax import (comonad_twist, lax_lift_strict_monoidal,
                            lift_strict_monoidal)
from oplaxcat.functors import (ComonoidObject, MonoidObject, check_comonoid,
                               check_monoid)
from oplaxcat.duoidal import (
    BimonoidObject, FiniteLaxStrongInput, InterchangeFamily, LaxStrongInput,
    TruncatedDuoidal, check_bimonoid, check_duoidal,
    comonoid_category_oplax_structure, interchange_permutation,
    lax_strong_from_components, monoid_category_lax_structure,
    permute_tuple, pointwise_interchange_report)
from oplaxcat.fixtures import (
    cyclic_duoidal, cyclic_monoid_category, interior_comonad,
    lattice_duoidal, poset_tensor, subset_lattice, twisted_cyclic_duoidal)


def fail_set(report):
    return set((fam, sig) for fam, sig, _ in report.entries)


def test_interchange_permutation_binary():
    assert interchange_permutation(1, 1) == (0, 2, 1, 3)


def test_interchange_permutation_trivial_blocks():
    for p in range(5):
        assert interchange_permutation(p, 0) == tuple(range(p + 1))
        assert interchange_permutation(0, p) == tuple(range(p + 1))


@given(st.integers(0, 4), st.integers(0, 4))
def test_interchange_permutation_inverse(p, q):
    n = (p + 1) * (q + 1)
    xs = tuple(range(n))
    once = permute_tuple(interchange_permutation(p, q), xs)
    assert permute_tuple(interchange_permutation(q, p), once) == xs


@given(st.integers(0, 3), st.integers(0, 3), st.randoms())
def test_interchange_permutation_regroups(p, q, rng):
    xs = tuple(rng.randrange(100) for _ in range((p + 1) * (q + 1)))
    out = permute_tuple(interchange_permutation(p, q), xs)
    for i in range(p + 1):
        for j in range(q + 1):
            assert out[j * (p + 1) + i] == xs[i * (q + 1) + j]


@pytest.mark.parametrize("t", [0, 1, 2])
def test_cyclic_duoidal_passes(t):
    assert check_duoidal(cyclic_duoidal(3, t, bound=2)).ok()


def test_cyclic_duoidal_bound_three():
    assert check_duoidal(cyclic_duoidal(2, 1, bound=3)).ok()


@pytest.mark.parametrize("u,beta", [(1, 0), (1, 2), (2, 1)])
def test_twisted_cyclic_duoidal_passes(u, beta):
    assert check_duoidal(twisted_cyclic_duoidal(3, u, beta, bound=2)).ok()


def test_twisted_cyclic_duoidal_bound_three():
    assert check_duoidal(twisted_cyclic_duoidal(2, 1, 1, bound=3)).ok()


def test_lattice_duoidal_passes():
    assert check_duoidal(lattice_duoidal(2, bound=1)).ok()
    assert check_duoidal(lattice_duoidal(1, bound=2)).ok()


@settings(max_examples=8, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3))
def test_cyclic_interchange_constants_always_work(m, t):
    assert check_duoidal(cyclic_duoidal(m, t % m, bound=2)).ok()


def test_chi_mutation_localized():
    d = cyclic_duoidal(3, 1, bound=2)
    bad = d.with_chi((1, 1), np.full((1,) * 4, 2, dtype=INT))
    sigs = {(1, 1, -1, 0), (1, 1, -1, 1), (1, 1, 1, 0), (1, 1, 1, 1),
            (1, 2, -1, 0), (1, 2, -1, 1), (1, 2, -1, 2)}
    want = {("row.decomposition", s) for s in sigs}
    want |= {("col.decomposition", s) for s in sigs}
    got = fail_set(check_duoidal(bad))
    assert got == want
    assert all(sig[0] == 1 for _, sig in got)


def test_broken_half_reported_with_prefix():
    d = cyclic_duoidal(3, 0, bound=2)
    d.oplax.assoc[(1, 1, 0)] = np.full((1, 1, 1), 1, dtype=INT)
    report = check_duoidal(d)
    prefixes = {fam.split(".")[0] for fam, _, _ in report.entries}
    assert "oplax" in prefixes
    assert prefixes <= {"oplax", "lax", "row", "col"}


def test_cell_boundary_validated():
    d = lattice_duoidal(2, bound=1)
    swapped = d.chi[(1, 1)].copy()
    swapped[0, 0, 0, 0] = int(swapped[3, 3, 3, 3])
    with pytest.raises(ValueError, match="interchange cell"):
        d.with_chi((1, 1), swapped)


def cyclic_columns(m, t, bound):
    chi1 = {n: np.full((1,) * (2 * (n + 1)), (n * t) % m, dtype=INT)
            for n in range(-1, bound + 1)}
    w = {n: np.asarray((-n * t) % m, dtype=INT)
         for n in range(-1, bound + 1)}
    return chi1, w


def test_lax_strong_expansion_matches_closed_form():
    m, t, bound = 3, 1, 2
    d = cyclic_duoidal(m, t, bound)
    chi1, w = cyclic_columns(m, t, bound)
    out = lax_strong_from_components(d.lax, d.oplax, chi1, w)
    assert isinstance(out, TruncatedDuoidal) and out.lax_strong
    for p in range(-1, bound + 1):
        for q in range(-1, bound + 1):
            assert (out.chi_cell(p, q).flat[0] == (p * q * t) % m)
    for n in range(-1, bound + 1):
        assert np.array_equal(out.chi_cell(1, n), chi1[n])
        assert int(out.chi_cell(-1, n)) == int(w[n])
    assert check_duoidal(out).ok()


def test_lax_strong_expansion_twisted():
    m, u, beta, bound = 3, 1, 2, 2
    d = twisted_cyclic_duoidal(m, u, beta, bound)
    chi1 = {n: np.full((1,) * (2 * (n + 1)), (n * beta) % m, dtype=INT)
            for n in range(-1, bound + 1)}
    w = {n: np.asarray((-n * beta + 2 * n * u) % m, dtype=INT)
         for n in range(-1, bound + 1)}
    out = lax_strong_from_components(d.lax, d.oplax, chi1, w)
    for p in range(-1, bound + 1):
        for q in range(-1, bound + 1):
            want = (p * q * beta - (p - 1) * q * u) % m
            assert out.chi_cell(p, q).flat[0] == want
    assert check_duoidal(out).ok()


def test_lax_strong_synthesis_on_demand():
    m, t, bound = 3, 1, 2
    d = cyclic_duoidal(m, t, bound)
    chi1, w = cyclic_columns(m, t, bound)
    cols = {**{(1, n): chi1[n] for n in range(-1, bound + 1)},
            **{(-1, n): w[n] for n in range(-1, bound + 1)}}
    strong = TruncatedDuoidal(d.lax, d.oplax, cols, lax_strong=True)
    assert int(strong.chi_cell(2, 2).flat[0]) == (4 * t) % m
    plain = TruncatedDuoidal(d.lax, d.oplax, cols, lax_strong=False)
    with pytest.raises(ValueError, match="not marked strong"):
        plain.chi_cell(2, 2)


def test_lax_strong_rejects_broken_unit_column():
    m, t, bound = 3, 1, 2
    d = cyclic_duoidal(m, t, bound)
    chi1, w = cyclic_columns(m, t, bound)
    w[2] = np.asarray((-2 * t + 1) % m, dtype=INT)
    with pytest.raises(ValueError, match="comonoid-condition"):
        lax_strong_from_components(d.lax, d.oplax, chi1, w)


def test_lax_strong_rejects_broken_binary_column():
    m, t, bound = 3, 1, 2
    d = cyclic_duoidal(m, t, bound)
    chi1, w = cyclic_columns(m, t, bound)
    chi1[2] = np.full((1,) * 6, (2 * t + 1) % m, dtype=INT)
    with pytest.raises(ValueError, match="additivity"):
        lax_strong_from_components(d.lax, d.oplax, chi1, w)


def test_lax_strong_rejects_incompatible_columns():
    m, bound = 3, 2
    d = cyclic_duoidal(m, 0, bound)
    chi1 = {n: np.full((1,) * (2 * (n + 1)), n % m, dtype=INT)
            for n in range(-1, bound + 1)}
    w = {n: np.asarray(0, dtype=INT) for n in range(-1, bound + 1)}
    with pytest.raises(ValueError, match="unitality"):
        lax_strong_from_components(d.lax, d.oplax, chi1, w)


def test_lax_strong_requires_invertible_tensor():
    c = subset_lattice(3)
    om = lift_strict_monoidal(c, poset_tensor(c, lambda x, y: x | y), 0,
                              bound=2)
    tw = comonad_twist(om, interior_comonad(om, 0b011))
    lam = lax_lift_strict_monoidal(
        c, poset_tensor(c, lambda x, y: x & y), 7, bound=2)
    chi1 = {n: np.zeros((8,) * (2 * (n + 1)), dtype=INT)
            for n in range(0, 3)}
    chi1[-1] = np.asarray(0, dtype=INT)
    w = {n: np.asarray(0, dtype=INT) for n in range(-1, 3)}
    with pytest.raises(ValueError, match="not strong"):
        FiniteLaxStrongInput(lam, tw, chi1, w)


class ModularStrongInput(LaxStrongInput):
    """One object, morphisms Z/m, both tensors addition.

    Stands in for a backend whose morphisms are not index tables; the
    binary column is n*t and the unit column -n*t, matching the cyclic
    fixture.
    """

    def __init__(self, m, t, bound):
        self.m, self.t, self.bound = m, t, bound

    def objects(self):
        return (0,)

    def identity(self, x):
        return 0

    def compose(self, g, f):
        return (g + f) % self.m

    def lam_obj(self, q, xs):
        return 0

    def lam_mor(self, q, fs):
        return sum(fs) % self.m

    def unit_map(self, x):
        return 0

    def lax_assoc(self, p, q, i, xs):
        return 0

    def tensor_obj(self, p, xs):
        return 0

    def tensor_mor(self, p, fs):
        return sum(fs) % self.m

    def counit(self, x):
        return 0

    def counit_inv(self, x):
        return 0

    def oplax_assoc(self, p, q, i, xs):
        return 0

    def oplax_assoc_inv(self, p, q, i, xs):
        return 0

    def chi1(self, n, xs, ys):
        return (n * self.t) % self.m

    def w(self, n):
        return (-n * self.t) % self.m


def test_pointwise_family_from_custom_input():
    fam = lax_strong_from_components(ModularStrongInput(3, 1, 2))
    assert isinstance(fam, InterchangeFamily)
    assert fam.chi(2, 2, ((0, 0, 0),) * 3) == 4 % 3
    assert pointwise_interchange_report(fam).ok()
    assert check_duoidal(fam).ok()


def test_pointwise_rejects_bad_input():
    ctx = ModularStrongInput(3, 1, 2)
    ctx.w = lambda n: 0
    with pytest.raises(ValueError, match="unitality"):
        lax_strong_from_components(ctx)


def test_finite_input_from_duoidal_halves_roundtrip():
    d = cyclic_duoidal(3, 2, bound=2)
    chi1, w = cyclic_columns(3, 2, 2)
    ctx = FiniteLaxStrongInput(d.lax, d.oplax, chi1, w)
    fam = InterchangeFamily(ctx)
    for p in range(-1, 3):
        for q in range(-1, 3):
            rows = tuple((0,) * (q + 1) for _ in range(p + 1))
            assert fam.chi(p, q, rows) == int(d.chi_cell(p, q).flat[0])


def test_bimonoid_classification():
    m, t = 3, 1
    d = cyclic_duoidal(m, t, bound=2)
    passing = [
        tup for tup in itertools.product(range(m), repeat=4)
        if check_bimonoid(d, BimonoidObject(0, *tup)).ok()]
    want = sorted((a, (-a) % m, (-a - t) % m, (a + t) % m)
                  for a in range(m))
    assert sorted(passing) == want


def test_bimonoid_mutation_fails_exact_families():
    m, t, a = 3, 1, 1
    d = cyclic_duoidal(m, t, bound=2)
    good = BimonoidObject(0, a, (-a) % m, (-a - t) % m, (a + t) % m)
    assert check_bimonoid(d, good).ok()
    mut = BimonoidObject(0, a, (-a) % m, (-a - t + 1) % m,
                         (a + t - 1) % m)
    got = fail_set(check_bimonoid(d, mut))
    squares = {("compat.mul-comul", ()), ("compat.unit-counit", ()),
               ("compat.unit-comul", ()), ("compat.mul-counit", ())}
    rects = {("rectangle", (p, q))
             for p in (-1, 1, 2) for q in (-1, 1, 2)}
    assert got == squares | rects


def test_bimonoid_bad_monoid_half_skips_rectangles():
    d = cyclic_duoidal(3, 1, bound=2)
    broken = BimonoidObject(0, 1, 1, 1, 2)
    report = check_bimonoid(d, broken)
    fams = {fam for fam, _, _ in report.entries}
    assert "monoid.left-unit" in fams or "monoid.right-unit" in fams
    assert not any(fam == "rectangle" for fam, _, _ in report.entries)


def test_trivial_bimonoid_on_lattice():
    d = lattice_duoidal(1, bound=2)
    base = d.base
    eps = int(np.nonzero((base.src == 0) & (base.dst == 1))[0][0])
    b = BimonoidObject(0, int(base.ident[0]), int(base.ident[0]),
                       int(base.ident[0]), eps)
    assert check_bimonoid(d, b).ok()


def test_bimonoid_boundary_family():
    d = lattice_duoidal(1, bound=2)
    base = d.base
    off = int(np.nonzero((base.src == 0) & (base.dst == 1))[0][0])
    ident = int(base.ident[0])
    b = BimonoidObject(0, off, ident, off, ident)
    report = check_bimonoid(d, b)
    assert fail_set(report) == {("boundary", ("mul",)),
                                ("boundary", ("comul",)),
                                ("boundary", ("counit",))}


def cyclic_monoid_objects(d, m):
    return {a: MonoidObject(0, {p: (p * a) % m
                                for p in range(-1, d.bound + 1)})
            for a in range(m)}


def test_induced_monoid_tensor():
    m, t = 3, 1
    d = cyclic_duoidal(m, t, bound=2)
    mt = monoid_category_lax_structure(d)
    mons = cyclic_monoid_objects(d, m)
    for mon in mons.values():
        assert check_monoid(d.oplax, mon).ok()
    unit = mt.unit()
    assert check_monoid(d.oplax, unit).ok()
    assert unit.cells == mons[(-t) % m].cells
    for a, b in itertools.product(range(m), repeat=2):
        got = mt.tensor(1, (mons[a], mons[b]))
        assert got.cells == mons[(a + b + t) % m].cells
        assert check_monoid(d.oplax, got).ok()
    tri = mt.tensor(2, (mons[0], mons[1], mons[2]))
    assert tri.cells == mons[(0 + 1 + 2 + 2 * t) % m].cells


def test_induced_comonoid_tensor():
    m, t = 3, 1
    d = cyclic_duoidal(m, t, bound=2)
    ct = comonoid_category_oplax_structure(d)
    cos = {a: ComonoidObject(0, {q: (q * a) % m
                                 for q in range(-1, d.bound + 1)})
           for a in range(m)}
    for c in cos.values():
        assert check_comonoid(d.lax, c).ok()
    unit = ct.unit()
    assert check_comonoid(d.lax, unit).ok()
    assert unit.cells == cos[(-t) % m].cells
    for a, b in itertools.product(range(m), repeat=2):
        got = ct.tensor(1, (cos[a], cos[b]))
        assert got.cells == cos[(a + b + t) % m].cells
        assert check_comonoid(d.lax, got).ok()


def test_bimonoid_reading_symmetry():
    """Comultiplication and counit of a bimonoid are monoid morphisms
    into the induced tensor and unit monoids, and dually for the
    multiplication against the induced comonoids."""
    m, t, a = 3, 1, 2
    d = cyclic_duoidal(m, t, bound=2)
    V = d.base
    b = BimonoidObject(0, a, (-a) % m, (-a - t) % m, (a + t) % m)
    assert check_bimonoid(d, b).ok()
    mons = cyclic_monoid_objects(d, m)
    mt = monoid_category_lax_structure(d)
    square = mt.tensor(1, (mons[a], mons[a]))
    unit = mt.unit()
    for p in range(-1, d.bound + 1):
        carried = d.oplax.omega(p).mor_at((b.delta,) * (p + 1)) \
            if p >= 0 else V.ident[d.oplax.unit]
        assert V.compose(b.delta, mons[a].cells[p]) == \
            V.compose(square.cells[p], int(carried))
        carried = d.oplax.omega(p).mor_at((b.eps,) * (p + 1)) \
            if p >= 0 else V.ident[d.oplax.unit]
        assert V.compose(b.eps, mons[a].cells[p]) == \
            V.compose(unit.cells[p], int(carried))
    cos = {x: ComonoidObject(0, {q: (q * x) % m
                                 for q in range(-1, d.bound + 1)})
           for x in range(m)}
    ct = comonoid_category_oplax_structure(d)
    delta_cells = cos[(-a - t) % m]
    pair = ct.tensor(1, (delta_cells, delta_cells))
    counit = ct.unit()
    for q in range(-1, d.bound + 1):
        carried = d.lax.lam(q).mor_at((b.mu,) * (q + 1)) \
            if q >= 0 else V.ident[d.lax.unit]
        assert V.compose(delta_cells.cells[q], b.mu) == \
            V.compose(int(carried), pair.cells[q])
        carried = d.lax.lam(q).mor_at((b.eta,) * (q + 1)) \
            if q >= 0 else V.ident[d.lax.unit]
        assert V.compose(delta_cells.cells[q], b.eta) == \
            V.compose(int(carried), counit.cells[q])
