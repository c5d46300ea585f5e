import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from gfrob import (
    BraidedSeries,
    Tensor,
    br_basis,
    braid_act,
    braidize,
    circ_product,
    cyclic_group,
    dual_module,
    form_from_poly,
    invariants_basis,
    is_braided,
    pair,
    poly_from_form,
    pullback_series,
    restrict_invariants,
    restrict_untwisted,
    MultiPoly,
)
from gfrob.braided import (
    is_symmetric,
    pullback_tensor,
    series_from_poly,
    series_from_tensors,
    unit_series,
)
from gfrob.errors import DegreeMismatch, ModuleMismatch
from gfrob.linalg import identity, rank
from gfrob.modules import submodule_on_indices

from conftest import diag, random_tensor


def random_braided_series(rng, h, truncation, terms=2):
    parts = []
    for d in range(truncation + 1):
        t = braidize(h, random_tensor(rng, h, d, terms))
        if t:
            parts.append(t)
    return series_from_tensors(h, truncation, parts)


def test_braidize_is_symmetrization_for_trivial_group(trivial_modules):
    h = trivial_modules[1]
    rng = random.Random(0)
    for _ in range(20):
        n = rng.choice([2, 3])
        v = random_tensor(rng, h, n)
        sym = Tensor(n)
        for perm in itertools.permutations(range(n)):
            moved = {}
            for idx, c in v.terms.items():
                key = tuple(idx[perm[s]] for s in range(n))
                moved[key] = moved.get(key, Fraction(0)) + c
            sym = sym + Tensor(n, moved)
        assert braidize(h, v) == sym.scale(Fraction(1, factorial(n)))


def test_braidize_kills_mixed_pair(orbifold_module):
    hd = dual_module(orbifold_module)
    assert braidize(hd, Tensor.basis((2, 3))) == Tensor(2)
    assert braidize(hd, Tensor.basis((3, 2))) == Tensor(2)


def test_braidize_low_degrees_identity(orbifold_module):
    assert braidize(orbifold_module, Tensor.scalar(5)) == Tensor.scalar(5)
    v = Tensor.basis((2,)) + Tensor.basis((3,)).scale(Fraction(1, 2))
    assert braidize(orbifold_module, v) == v


def test_braidize_fixes_invariants(orbifold_module):
    hd = dual_module(orbifold_module)
    for form in br_basis(hd, 3):
        assert braidize(hd, form.tensor) == form.tensor


def test_braidize_properties(orbifold_module, z3_module, s3_module, s3_module_twisted):
    rng = random.Random(1)
    for h in (orbifold_module, z3_module, s3_module, s3_module_twisted):
        for _ in range(25):
            n = rng.choice([2, 3])
            v = random_tensor(rng, h, n)
            b = braidize(h, v)
            assert braidize(h, b) == b
            assert is_braided(h, b)
            i = rng.randrange(1, n)
            assert braidize(h, braid_act(h, i, v)) == b
            assert braidize(h, braid_act(h, i, v, inverse=True)) == b


def test_braidize_associativity(orbifold_module, s3_module):
    rng = random.Random(2)
    for h in (orbifold_module, s3_module):
        for shape in ((1, 1, 1), (1, 1, 2), (2, 1, 1), (1, 2, 1)):
            for _ in range(10):
                v, w, z = (random_tensor(rng, h, k, 2) for k in shape)
                lhs = braidize(h, braidize(h, v.juxt(w)).juxt(z))
                rhs = braidize(h, v.juxt(braidize(h, w.juxt(z))))
                assert lhs == rhs


def test_braidize_functorial(orbifold_module):
    h = orbifold_module
    rng = random.Random(3)
    sub, incl = submodule_on_indices(h, [0, 1, 2])
    scalings = [diag([2, 3, 5, 7]), identity(4)]
    for _ in range(20):
        n = rng.choice([2, 3])
        v = random_tensor(rng, sub, n)
        pushed = pullback_tensor(v, tuple(zip(*incl)))  # transpose: push forward indices
        # inclusion: braidize commutes with the induced map on tensors
        vi = Tensor(n, {idx: c for idx, c in v.terms.items()})
        image = Tensor(n, {tuple(idx): c for idx, c in v.terms.items()})
        assert braidize(h, image) == Tensor(
            n, braidize(sub, v).terms
        )
    for m in scalings:
        for _ in range(10):
            n = 2
            v = random_tensor(rng, h, n)
            mapped = pullback_tensor(v, tuple(zip(*m)))
            assert braidize(h, mapped) == pullback_tensor(braidize(h, v), tuple(zip(*m)))


def test_br_basis_trivial(trivial_modules):
    h = trivial_modules[0]
    for n in range(4):
        assert len(br_basis(h, n)) == 1


def test_br_basis_matches_braidize_image(orbifold_module, z3_module):
    for h in (dual_module(orbifold_module), z3_module):
        for n in (2, 3):
            forms = br_basis(h, n)
            tuples = sorted(itertools.product(range(h.dim), repeat=n))
            pos = {t: i for i, t in enumerate(tuples)}
            rows = []
            for t in tuples:
                b = braidize(h, Tensor.basis(t))
                row = [Fraction(0)] * len(tuples)
                for idx, c in b.terms.items():
                    row[pos[idx]] = c
                if any(row):
                    rows.append(row)
            assert rank(rows) == len(forms)
            for f in forms:
                assert is_braided(h, f.tensor)


def test_pair_degree_one_and_reversal():
    h = cyclic_group(1)
    x = Tensor.basis((0,))
    v = Tensor.basis((0,))
    assert pair(x, v) == 1
    x2 = Tensor.basis((0, 1))
    v2 = Tensor.basis((1, 0))
    assert pair(x2, v2) == 1
    assert pair(x2, Tensor.basis((0, 1))) == 0
    with pytest.raises(DegreeMismatch):
        pair(x, v2)


def test_pair_reflection_adjoint(orbifold_module, s3_module):
    rng = random.Random(4)
    for h in (orbifold_module, s3_module):
        hd = dual_module(h)
        for _ in range(60):
            n = rng.choice([2, 3, 4])
            x = random_tensor(rng, hd, n)
            v = random_tensor(rng, h, n)
            for i in range(1, n):
                assert pair(braid_act(hd, i, x), v) == pair(x, braid_act(h, n - i, v))
                assert pair(braid_act(hd, i, x, inverse=True), v) == pair(
                    x, braid_act(h, n - i, v, inverse=True)
                )


def test_pair_braidize_duality(orbifold_module, z3_module, s3_module):
    rng = random.Random(5)
    for h in (orbifold_module, z3_module, s3_module):
        hd = dual_module(h)
        for _ in range(50):
            n = rng.choice([2, 3, 4])
            x = random_tensor(rng, hd, n)
            v = random_tensor(rng, h, n)
            assert pair(braidize(hd, x), v) == pair(x, braidize(h, v))


def test_pair_vanishes_off_matching_degrees(orbifold_module, s3_module):
    # a nonzero pairing forces the vector degrees to be the reflection of
    # the form degrees
    from gfrob import reflect_tuple

    for h in (orbifold_module, s3_module):
        hd = dual_module(h)
        for xt in itertools.product(range(h.dim), repeat=2):
            for vt in itertools.product(range(h.dim), repeat=2):
                if pair(Tensor.basis(xt), Tensor.basis(vt)) != 0:
                    assert h.degree_tuple(vt) == reflect_tuple(
                        h.group, hd.degree_tuple(xt)
                    )


def test_circ_product_trivial_group_is_polynomial_product(trivial_modules):
    # with no grading the ring of braided series is the symmetric algebra
    h = trivial_modules[1]
    names = ("u0", "u1", "u2")
    rng = random.Random(20)
    for _ in range(10):
        def rand_poly():
            terms = {}
            for _ in range(3):
                exp = [0, 0, 0]
                for _ in range(rng.randint(0, 3)):  # total degree <= 3
                    exp[rng.randrange(3)] += 1
                terms[tuple(exp)] = Fraction(rng.randint(-3, 3))
            return MultiPoly(names, terms)

        p, q = rand_poly(), rand_poly()
        sp = series_from_poly(h, p, names, truncation=6)
        sq = series_from_poly(h, q, names, truncation=6)
        prod = circ_product(sp, sq)
        got = sum(
            (poly_from_form(t, names) for t in prod.parts.values()),
            MultiPoly.zero(names),
        )
        assert got == p * q


def test_circ_product_unital_and_truncated(orbifold_module):
    hd = dual_module(orbifold_module)
    rng = random.Random(6)
    one = unit_series(hd, 4)
    for _ in range(10):
        x = random_braided_series(rng, hd, 4)
        assert circ_product(one, x) == x
        assert circ_product(x, one) == x


def test_circ_product_associative_up_to_truncation(orbifold_module):
    hd = dual_module(orbifold_module)
    rng = random.Random(7)
    for _ in range(8):
        x = random_braided_series(rng, hd, 3, terms=1)
        y = random_braided_series(rng, hd, 3, terms=1)
        z = random_braided_series(rng, hd, 3, terms=1)
        assert circ_product(circ_product(x, y), z) == circ_product(x, circ_product(y, z))


def test_circ_product_braided_commutative(orbifold_module):
    hd = dual_module(orbifold_module)
    rng = random.Random(8)
    for _ in range(15):
        v = random_tensor(rng, hd, 1)
        w = random_tensor(rng, hd, 2)
        juxt = v.juxt(w)
        crossed = braid_act(hd, 2, braid_act(hd, 1, juxt))
        assert braidize(hd, juxt) == braidize(hd, crossed)


def test_circ_product_module_mismatch(orbifold_module, z3_module):
    a = unit_series(dual_module(orbifold_module), 2)
    b = unit_series(dual_module(z3_module), 2)
    with pytest.raises(ModuleMismatch):
        circ_product(a, b)


def test_mixed_sector_products_vanish(orbifold_module):
    hd = dual_module(orbifold_module)
    # a sign-sector form times a twisted-sector form dies in every degree
    xv = series_from_tensors(hd, 4, [Tensor.basis((2,))])
    xg = series_from_tensors(hd, 4, [Tensor.basis((3,))])
    prod = circ_product(xv, xg)
    assert not prod.parts


def test_form_poly_round_trip():
    names = ("a", "b", "c")
    rng = random.Random(9)
    for _ in range(20):
        exp = [rng.randint(0, 2) for _ in names]
        if sum(exp) == 0:
            continue
        p = MultiPoly(names, {tuple(exp): Fraction(rng.randint(1, 5))})
        t = form_from_poly(p, names, sum(exp))
        assert is_symmetric(t)
        assert poly_from_form(t, names) == p
    # polarization normalizes diagonal evaluation
    p = MultiPoly(names, {(2, 1, 0): Fraction(3)})
    t = form_from_poly(p, names, 3)
    assert t.terms[(0, 0, 1)] == Fraction(3) * 2 / 6


def test_restrict_untwisted_is_morphism(orbifold_module):
    hd = dual_module(orbifold_module)
    rng = random.Random(10)
    for _ in range(15):
        x = random_braided_series(rng, hd, 4)
        y = random_braided_series(rng, hd, 4)
        rx, ry = restrict_untwisted(x), restrict_untwisted(y)
        assert rx.multiply(ry) == restrict_untwisted(circ_product(x, y))


def test_restrict_invariants_symmetric(orbifold_module, z3_module):
    rng = random.Random(11)
    for h in (orbifold_module, z3_module):
        hd = dual_module(h)
        inv = invariants_basis(h)
        for _ in range(10):
            x = random_braided_series(rng, hd, 3)
            s = restrict_invariants(x, inv)
            for t in s.parts.values():
                assert is_symmetric(t)


def test_restrictions_identity_for_trivial_group(trivial_modules):
    h = trivial_modules[1]
    rng = random.Random(12)
    for _ in range(10):
        x = random_braided_series(rng, h, 3)
        r = restrict_untwisted(x)
        assert r.parts == x.parts
        ri = restrict_invariants(x, invariants_basis(h))
        assert ri.parts == x.parts


def test_pullback_multiplicative(orbifold_module):
    h = orbifold_module
    sub, incl = submodule_on_indices(h, [0, 1, 2])
    hd = dual_module(h)
    rng = random.Random(13)
    for _ in range(10):
        x = random_braided_series(rng, hd, 3)
        y = random_braided_series(rng, hd, 3)
        px = pullback_series(sub, h, incl, x)
        py = pullback_series(sub, h, incl, y)
        assert pullback_series(sub, h, incl, circ_product(x, y)) == circ_product(px, py)


def test_pullback_identity(orbifold_module):
    h = orbifold_module
    hd = dual_module(h)
    rng = random.Random(14)
    x = random_braided_series(rng, hd, 3)
    assert pullback_series(h, h, identity(4), x) == x


def test_pullback_realizes_untwisted_restriction(orbifold_module):
    h = orbifold_module
    sub, incl = submodule_on_indices(h, h.untwisted_indices())
    hd = dual_module(h)
    rng = random.Random(15)
    for _ in range(10):
        x = random_braided_series(rng, hd, 3)
        via_pullback = pullback_series(sub, h, incl, x)
        direct = restrict_untwisted(x)
        assert direct.parts == via_pullback.parts


def test_series_g_degree_filter(orbifold_module):
    hd = dual_module(orbifold_module)
    with pytest.raises(DegreeMismatch):
        BraidedSeries(hd, 2, {1: Tensor.basis((3,))}, g_degree_filter=0)
    BraidedSeries(hd, 2, {2: Tensor.basis((3, 3))}, g_degree_filter=0)


def test_series_from_poly_braided(orbifold_module):
    hd = dual_module(orbifold_module)
    names = ("t_0", "t_2", "t_1", "t_*")
    p = MultiPoly(names, {(1, 0, 2, 0): Fraction(1), (0, 1, 0, 2): Fraction(2)})
    s = series_from_poly(hd, p, names, truncation=3, g_degree_filter=0)
    s.assert_braided()
    mixed = MultiPoly(names, {(0, 0, 1, 1): Fraction(1)})
    bad = series_from_poly(hd, mixed, names, truncation=2)
    with pytest.raises(DegreeMismatch):
        bad.assert_braided()
