import itertools

import pytest

from albert import pencils as pc
from albert.errors import IndeterminacyError, MalformedInput, PreconditionError
from albert.exactlin import GF, QQ, Sampler, Subspace, rref

FIELDS = [QQ, GF()]
fields = pytest.mark.parametrize("fld", FIELDS, ids=lambda f: f.name)


def tw(terms, fld=QQ):
    return pc.TwoForm.wedges(terms, fld)


def span(fld, *idx):
    return Subspace.span([[1 if j == i - 1 else 0 for j in range(5)] for i in idx], fld, 5)


def test_twoform_checks_skew_symmetry():
    with pytest.raises(MalformedInput):
        pc.TwoForm(tuple(tuple(1 if i == j else 0 for j in range(5)) for i in range(5)), QQ)


@fields
def test_twoform_basics(fld):
    w = tw([(1, 2), (3, 4)], fld)
    assert w.rank == 4
    e1, e2 = [1, 0, 0, 0, 0], [0, 1, 0, 0, 0]
    assert w(e1, e2) == 1 and w(e2, e1) == -1
    assert w.kernel() == span(fld, 5)
    assert pc.TwoForm.zero(fld).rank == 0


@fields
def test_l_space_examples(fld):
    w1 = tw([(4, 1), (5, 2)], fld)
    w2 = tw([(4, 2), (5, 3)], fld)
    assert pc.l_space(w1, w2) == span(fld, 1, 2, 3, 4)
    zero = pc.TwoForm.zero(fld)
    assert pc.l_space(zero, w2) == w2.kernel()
    assert pc.l_space(w1, zero) == Subspace.full(5, fld)


@fields
def test_u_space_examples(fld):
    f = pc.PencilMap(tw([(4, 1), (5, 2)], fld), tw([(4, 2), (5, 3)], fld))
    assert pc.u_space(f) == span(fld, 1, 2, 3)
    rep = pc.representatives(fld)["A2+2A1"]
    assert pc.u_space(rep) == span(fld, 1, 2, 3)


@fields
def test_u_space_recombination_invariance(fld):
    s = Sampler(1, fld)
    f = pc.random_conjugate(pc.representatives(fld)["A2+2A1"], s)
    u = pc.u_space(f)
    for _ in range(20):
        assert pc.u_space(f.recombine(s.invertible(2))) == u


@fields
def test_u_space_undefined_off_the_open_orbit(fld):
    for label, f in pc.representatives(fld).items():
        if label != "A2+2A1":
            assert pc.u_conditions(f) is not None
            with pytest.raises(IndeterminacyError):
                pc.u_space(f)


@fields
def test_isotropy_two_ways(fld):
    s = Sampler(2, fld)
    for _ in range(30):
        w = pc.TwoForm.zero(fld)
        for i, j in itertools.combinations(range(1, 6), 2):
            w = w + tw([(s.scalar(), i, j)], fld)
        sub = rref(s.matrix(s.randint(1, 3), 5), fld, 5)
        assert pc.isotropic(w, sub) == pc.wedge2_orthogonal(w, sub)
    assert pc.isotropic(tw([(1, 2)], fld), span(fld, 1, 3))


def three_spaces(fld):
    """Every 3-dimensional subspace of fld^5 for a small prime field, via RREF shapes."""
    p = fld.p
    for piv in itertools.combinations(range(5), 3):
        free = [(r, c) for r in range(3) for c in range(5) if c > piv[r] and c not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * 5 for _ in range(3)]
            for r, c in enumerate(piv):
                rows[r][c] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield rref(rows, fld, 5)


def test_u_space_is_the_unique_common_isotropic_space():
    fld = GF(3)
    spaces = list(three_spaces(fld))
    assert len(spaces) == 1210
    s = Sampler(3, fld)
    rep = pc.representatives(fld)["A2+2A1"]
    for f in (rep, pc.random_conjugate(rep, s), pc.random_conjugate(rep, s)):
        hits = [u for u in spaces if pc.isotropic(f.omega1, u) and pc.isotropic(f.omega2, u)]
        assert hits == [pc.u_space(f)]


@fields
def test_representatives_classify(fld):
    for label, f in pc.representatives(fld).items():
        got = pc.classify(f)
        assert got.label == label and got.dim == pc.ORBIT_DIMS[label]
        assert pc.orbit_dim_check(f) == got.dim


def test_table_examples():
    w1 = tw([(2, 4), (3, 5)])
    f12 = tw([(1, 2)])
    assert str(pc.classify(pc.PencilMap(w1, f12))) == "A2+A1"
    assert pc.classify(pc.PencilMap(f12, f12)).label == "2A1"
    assert pc.orbit_dim_check(pc.PencilMap(w1, tw([(2, 3)]))) == 15
    zero = pc.TwoForm.zero(QQ)
    assert pc.orbit_dim_check(pc.PencilMap(zero, zero)) == 0


@fields
def test_classify_constant_on_conjugates(fld):
    s = Sampler(4, fld)
    for label, f in pc.representatives(fld).items():
        for _ in range(15):
            assert pc.classify(pc.random_conjugate(f, s)).label == label


@fields
def test_open_orbit_iff_u_defined(fld):
    s = Sampler(5, fld)
    for f in list(pc.representatives(fld).values()) + [pc.random_pencil(fld, s) for _ in range(10)]:
        g = pc.random_conjugate(f, s)
        generic = pc.classify(g).label == "A2+2A1"
        assert generic == (pc.u_conditions(g) is None)


def test_codiagonalize_normal_form_is_fixed():
    rep = pc.representatives(QQ)["A2+2A1"]
    P = pc.codiagonalize(rep.omega1, rep.omega2)
    assert rep.transport(P).forms() == rep.forms()


@fields
def test_codiagonalize_round_trip(fld):
    s = Sampler(6, fld)
    rep = pc.representatives(fld)["A2+2A1"]
    for _ in range(15):
        w1 = rep.omega1.transport(s.invertible(5))
        w2 = rep.omega2.transport(s.invertible(5))
        g = pc.PencilMap(w1, w2)
        if pc.classify(g).label != "A2+2A1":
            continue
        P = pc.codiagonalize(w1, w2)
        assert g.transport(P).forms() == rep.forms()


def test_codiagonalize_rejects_degenerate_member():
    f = pc.representatives(QQ)["A2+A1"]
    with pytest.raises(PreconditionError, match="member"):
        pc.codiagonalize(f.omega1, f.omega2)


def test_closure_poset():
    assert not pc.closure_leq("3A1c", "3A1b")
    assert pc.closure_leq("2A1", "A2+2A1")
    assert pc.closure_leq("3A1b", "3A1a") and pc.closure_leq("3A1c", "3A1a")
    for a in pc.LABELS:
        assert pc.closure_leq(a, a)
        assert pc.closure_leq("A1", a)
    assert pc.nilpotent_label("3A1b") == "3A1"
    assert pc.nilpotent_label("A2") == "A2"
    assert pc.nilpotent_label(None) == "0"


@fields
def test_degenerations_witness_covering_pairs(fld):
    for lower, upper in pc.covering_pairs():
        assert pc.classify(pc.degeneration(upper, lower, 0, fld)).label == lower
        for t in (1, 2, -3):
            assert pc.classify(pc.degeneration(upper, lower, t, fld)).label == upper


def test_flop_base_rejects_subgeneric_pencils():
    from albert.compalg import AlgebraTag
    from albert.scorza import ScorzaSpace, random_line
    s = Sampler(7, QQ)
    x, y = random_line(ScorzaSpace(3, AlgebraTag(8, QQ)), s)
    with pytest.raises(IndeterminacyError):
        pc.flop_e62_base(x, y, pc.representatives(QQ)["A2"])


@fields
def test_irrational_degenerate_members_still_give_geometric_label(fld):
    # the Pfaffian of the member is lam^2 + mu^2, with no roots in either field
    f = pc.PencilMap(tw([(1, 2), (3, 4)], fld), tw([(1, 3), (-1, 2, 4)], fld))
    assert pc.wedge_space(f).dim == 1
    assert pc.classify(f).label == "A2"
