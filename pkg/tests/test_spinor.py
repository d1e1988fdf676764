import pytest

from albert.compalg import AlgebraTag, alg_mul, conj, l_image, norm, random_null, re
from albert.errors import IndeterminacyError, PreconditionError
from albert.exactlin import GF, QQ, Sampler, rank, rref
from albert.jordan import HermMatrix
from albert.spinor import (SpinorPair, entry_quadric, fiber_product, is_pure, l_fiber, mu_pm,
                           nu2pm, phi_iso, psi_iso, q_minus_span, random_pure, random_spinor,
                           random_weak_partner, spin_gram, spin_pairing, ten_det, ten_polar,
                           trichotomy)

FIELDS = [QQ, GF()]
fields = pytest.mark.parametrize("fld", FIELDS, ids=lambda f: f.name)


def octo(fld):
    return AlgebraTag(8, fld)


def pair(tag, a, b, side="+"):
    return SpinorPair(a, b, side)


def non_pure(fld, s):
    while True:
        x = random_spinor(fld, s)
        if not is_pure(x):
            return x


def stacked(a_sub, fld, first=True):
    """A subspace of the algebra placed in the first (or second) half of k^16."""
    z = (fld.zero,) * 8
    return rref([tuple(r) + z if first else z + tuple(r) for r in a_sub.basis], fld, 16)


@fields
def test_nu2_model_values(fld):
    tag = octo(fld)
    s = pair(tag, tag.one, tag.zero)
    assert nu2pm(s) == HermMatrix.build(tag, [1, 0])
    assert nu2pm(s.with_side("-")) == HermMatrix.build(tag, [0, 1])
    smp = Sampler(1, fld)
    for _ in range(10):
        u = random_spinor(fld, smp)
        assert mu_pm(u, u) == nu2pm(u) * 2


def test_side_mismatch():
    tag = octo(QQ)
    s = pair(tag, tag.one, tag.zero)
    with pytest.raises(PreconditionError):
        mu_pm(s, s.with_side("-"))


@fields
def test_purity_and_isotropic_image(fld):
    tag = octo(fld)
    smp = Sampler(2, fld)
    z = random_null(tag, smp)
    s = pair(tag, z, tag.zero)
    assert is_pure(s)
    assert not is_pure(pair(tag, tag.one, tag.zero))
    for _ in range(10):
        x = random_pure(fld, smp)
        assert is_pure(x) and not nu2pm(x)
        img = phi_iso(x)
        assert img.dim == 5
        mats = [HermMatrix.from_coords(2, tag, b) for b in img.basis]
        assert all(ten_det(m) == 0 for m in mats)
        assert all(ten_polar(m, w) == 0 for m in mats for w in mats)
    with pytest.raises(PreconditionError):
        phi_iso(pair(tag, tag.one, tag.zero))


@fields
def test_model_fiber_and_quadric(fld):
    tag = octo(fld)
    s = pair(tag, tag.one, tag.zero)
    fib = l_fiber(s)
    assert fib == stacked(rref([e.coords for e in tag.basis()], fld, 8), fld)
    q = entry_quadric(s)
    smp = Sampler(3, fld)
    for _ in range(10):
        c = tag.elem(smp.vector(8))
        assert q.value(pair(tag, c, tag.zero)) == norm(c)


@fields
def test_fiber_dimension_and_scaling(fld):
    smp = Sampler(4, fld)
    for _ in range(10):
        s = non_pure(fld, smp)
        fib = l_fiber(s)
        q = entry_quadric(s)
        assert fib.dim == 8 and rank(q.gram, fld) == 8
        assert q.value(s) == 1
        u = SpinorPair.from_vector(fib.combo(smp.vector(8)), field=fld)
        assert nu2pm(u) == nu2pm(s) * q.value(u)
    with pytest.raises(PreconditionError):
        l_fiber(random_pure(fld, smp))


@fields
def test_spin_pairing(fld):
    tag = octo(fld)
    plus = pair(tag, tag.one, tag.zero)
    assert spin_pairing(plus, plus.with_side("-")) == 2
    assert spin_pairing(plus, pair(tag, tag.zero, tag.one, "-")) == 0
    assert rank(spin_gram(fld), fld) == 16
    with pytest.raises(PreconditionError):
        spin_pairing(plus, plus)


@fields
def test_q_minus_span(fld):
    tag = octo(fld)
    s = pair(tag, tag.one, tag.zero)
    assert q_minus_span(s) == stacked(rref([e.coords for e in tag.basis()], fld, 8), fld, first=False)
    smp = Sampler(5, fld)
    for _ in range(5):
        s = non_pure(fld, smp)
        span = q_minus_span(s)
        assert span.dim == 8
        u = SpinorPair.from_vector(span.combo(smp.vector(8)), "-", fld)
        # with these sign conventions the fiber sits over nu2(s) with its off-diagonal negated
        x = nu2pm(s)
        flipped = HermMatrix.build(x.tag, x.diag, {(0, 1): -x.entry(0, 1)})
        assert rref([nu2pm(u).coords, flipped.coords], fld, 10).dim <= 1


@fields
def test_model_trichotomy(fld):
    tag = octo(fld)
    smp = Sampler(6, fld)
    s = pair(tag, tag.one, tag.zero)
    b = random_null(tag, smp)
    t = pair(tag, tag.one, b)
    assert trichotomy(s, s) == ("equal", 8)
    assert trichotomy(s, pair(tag, tag.zero, tag.one)) == ("free", 0)
    assert trichotomy(s, t) == ("weak", 4)
    # under the nu2 convention used here the meet is the kernel of left multiplication by b
    assert l_fiber(s) & l_fiber(t) == stacked(l_image(conj(b)), fld)
    for e in (l_fiber(s) & l_fiber(t)).basis:
        c = tag.elem(e[:8])
        assert not alg_mul(b, c)
    with pytest.raises(PreconditionError):
        trichotomy(s, random_pure(fld, smp))


@fields
def test_trichotomy_values_on_samples(fld):
    smp = Sampler(7, fld)
    seen = set()
    for i in range(30):
        s = non_pure(fld, smp)
        t = random_weak_partner(s, smp) if i % 3 == 1 else non_pure(fld, smp)
        if i % 3 == 2:
            t = SpinorPair.from_vector(l_fiber(s).combo(smp.vector(8)), field=fld)
            if is_pure(t):
                continue
        kind, d = trichotomy(s, t)
        assert (kind, d) in {("equal", 8), ("weak", 4), ("free", 0)}
        seen.add(kind)
    assert seen == {"equal", "weak", "free"}


@fields
def test_entry_locus_against_isotropic_image(fld):
    tag = octo(fld)
    smp = Sampler(8, fld)
    s = pair(tag, tag.one, tag.zero)
    for _ in range(5):
        x = pair(tag, random_null(tag, smp), tag.zero)
        assert nu2pm(s).coords in phi_iso(x)
    for _ in range(10):
        s = non_pure(fld, smp)
        x = random_pure(fld, smp)
        q = entry_quadric(s)
        on_locus = x.vector in q.fiber and q.value(x) == 0
        assert on_locus == (nu2pm(s).coords in phi_iso(x))


@fields
def test_psi_model(fld):
    tag = octo(fld)
    smp = Sampler(9, fld)
    s, t = pair(tag, tag.one, tag.zero), pair(tag, tag.zero, tag.one)
    done = 0
    while done < 5:
        a = random_null(tag, smp)
        if re(a) == 0:
            continue
        out = psi_iso(s, t, pair(tag, a, tag.zero))
        assert out.side == "-"
        assert not out.a and rref([out.b.coords, a.coords], fld, 8).dim == 1
        assert is_pure(out) and out.vector in q_minus_span(s)
        done += 1


@fields
def test_psi_degenerate_inputs(fld):
    tag = octo(fld)
    s, t = pair(tag, tag.one, tag.zero), pair(tag, tag.zero, tag.one)
    imaginary_null = next(e for e in tag.basis() if norm(e) == 0 and re(e) == 0)
    with pytest.raises(IndeterminacyError):
        psi_iso(s, t, pair(tag, imaginary_null, tag.zero))
    z = next(e for e in tag.basis() if norm(e) == 0 and re(e) != 0)
    with pytest.raises(PreconditionError):
        psi_iso(s, s, pair(tag, z, tag.zero))


@fields
def test_fiber_product_model(fld):
    tag = octo(fld)
    smp = Sampler(10, fld)
    s, t = pair(tag, tag.one, tag.zero), pair(tag, tag.zero, tag.one)
    for _ in range(10):
        u, v = tag.elem(smp.vector(8)), tag.elem(smp.vector(8))
        got = fiber_product(s, t, pair(tag, u, tag.zero), pair(tag, v, tag.zero))
        assert got == pair(tag, alg_mul(u, v), tag.zero)


def _null_in_fiber(s, smp):
    """A nonzero isotropic vector of the entry quadric, found on a random plane (needs GF(p))."""
    q = entry_quadric(s)
    fld = s.field
    while True:
        u, v = (SpinorPair.from_vector(q.fiber.combo(smp.vector(8)), field=fld) for _ in range(2))
        A, C = q.value(u), q.value(v)
        B = q.value(u + v) - A - C
        disc = B * B - 4 * A * C
        r = disc ** ((fld.p + 1) // 4)
        if C and r * r == disc:
            x = u + v * ((r - B) / (2 * C))
            if x:
                return x


def test_psi_lands_on_opposite_quadric():
    fld = GF()
    assert fld.p % 4 == 3
    smp = Sampler(11, fld)
    for _ in range(8):
        s, t = non_pure(fld, smp), non_pure(fld, smp)
        x = _null_in_fiber(s, smp)
        assert is_pure(x)
        out = psi_iso(s, t, x)
        assert out and is_pure(out) and out.vector in q_minus_span(s)
