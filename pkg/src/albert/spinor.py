"""Half-spinors S = O + O, the ten-dimensional space H_2(O) and their geometry."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .compalg import AlgebraTag, AlgElem, norm_gram, random_elem, random_null, raw_conj, raw_mul
from .errors import IndeterminacyError, MalformedInput, PreconditionError
from .exactlin import (QQ, FieldSpec, Quotient, Sampler, Subspace, annihilator,
                       det, inverse, is_zero_vec, join, kernel, mat_vec, meet,
                       rref, solve, transpose)
from .jordan import HermMatrix, nu2

SIDES = ("+", "-")


class SpinorPair:
    __slots__ = ("a", "b", "side")

    def __init__(self, a: AlgElem, b: AlgElem, side: str = "+"):
        if side not in SIDES:
            raise MalformedInput(f"side must be + or -, got {side!r}")
        if a.tag != b.tag or a.tag.dim_a != 8:
            raise MalformedInput("spinors are pairs of octonions over one field")
        self.a, self.b, self.side = a, b, side

    @classmethod
    def from_vector(cls, v, side: str = "+", field: FieldSpec = QQ) -> "SpinorPair":
        tag = AlgebraTag(8, field)
        if len(v) != 16:
            raise MalformedInput("a spinor has 16 coordinates")
        return cls(AlgElem(tag, v[:8]), AlgElem(tag, v[8:]), side)

    @property
    def tag(self) -> AlgebraTag:
        return self.a.tag

    @property
    def field(self) -> FieldSpec:
        return self.a.tag.field

    @property
    def vector(self) -> tuple:
        return self.a.coords + self.b.coords

    def with_side(self, side: str) -> "SpinorPair":
        return SpinorPair(self.a, self.b, side)

    def __add__(self, o):
        _same_side(self, o)
        return SpinorPair(self.a + o.a, self.b + o.b, self.side)

    def __sub__(self, o):
        _same_side(self, o)
        return SpinorPair(self.a - o.a, self.b - o.b, self.side)

    def __mul__(self, c):
        return SpinorPair(self.a * c, self.b * c, self.side)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, SpinorPair) and o.side == self.side and o.vector == self.vector

    def __hash__(self):
        return hash((self.side, self.vector))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"SpinorPair({self.side}, {list(self.a.coords)}, {list(self.b.coords)})"


def _same_side(s: SpinorPair, t: SpinorPair) -> None:
    if s.side != t.side:
        raise PreconditionError("spinors from opposite half-spin representations")


def _ten(tag: AlgebraTag, d0, d1, z) -> HermMatrix:
    return HermMatrix(2, tag, (d0, d1) + tuple(z), _raw=True)


def nu2pm(s: SpinorPair) -> HermMatrix:
    a, b = s.a, s.b
    m = nu2([a, b])
    if s.side == "+":
        return m
    return _ten(s.tag, m.coords[1], m.coords[0], m.coords[2:])


def mu_pm(s: SpinorPair, t: SpinorPair) -> HermMatrix:
    """Polarization: nu2pm(s + t) - nu2pm(s) - nu2pm(t)."""
    _same_side(s, t)
    a, b, c, d = (e.coords for e in (s.a, s.b, t.a, t.b))
    from .compalg import raw_norm_polar
    na, nb = raw_norm_polar(8, a, c), raw_norm_polar(8, b, d)
    z = tuple(p + q for p, q in zip(raw_mul(8, a, raw_conj(8, d)), raw_mul(8, c, raw_conj(8, b))))
    if s.side == "+":
        return _ten(s.tag, na, nb, z)
    return _ten(s.tag, nb, na, z)


def ten_det(m: HermMatrix):
    from .jordan import det3
    return det3(m)


def ten_polar(m: HermMatrix, w: HermMatrix):
    """Polar form of det on H_2(O): det(m + w) - det(m) - det(w)."""
    from .compalg import raw_norm_polar
    return (m.coords[0] * w.coords[1] + m.coords[1] * w.coords[0]
            - raw_norm_polar(8, m.coords[2:], w.coords[2:]))


def _basis(field: FieldSpec, side: str) -> list[SpinorPair]:
    out = []
    for k in range(16):
        v = [0] * 16
        v[k] = 1
        out.append(SpinorPair.from_vector(v, side, field))
    return out


def is_pure(s: SpinorPair) -> bool:
    return not nu2pm(s)


def phi_iso(s: SpinorPair) -> Subspace:
    """The five-dimensional isotropic image of mu(s, .)."""
    if not s or not is_pure(s):
        raise PreconditionError("phi_iso needs a nonzero pure spinor")
    return rref([mu_pm(s, e).coords for e in _basis(s.field, s.side)], s.field, 10)


def _require_impure(s: SpinorPair) -> HermMatrix:
    x = nu2pm(s)
    if not x:
        raise PreconditionError("the spinor is pure")
    return x


def _mod_line(x: HermMatrix) -> Quotient:
    return Quotient.of_ambient(rref([x.coords], x.field, 10))


def l_fiber(s: SpinorPair) -> Subspace:
    """Kernel of g -> mu(s, g) modulo the line of nu2(s)."""
    x = _require_impure(s)
    q = _mod_line(x)
    cols = [q.coords(mu_pm(s, e).coords) for e in _basis(s.field, s.side)]
    return kernel(transpose(cols), s.field, 16)


def _coefficient(w: HermMatrix, x: HermMatrix):
    """c with w = c x (x nonzero)."""
    i = next(k for k, c in enumerate(x.coords) if c != 0)
    c = w.coords[i] / x.coords[i]
    if w != x * c:
        raise PreconditionError("value is not proportional to nu2(s)")
    return c


@dataclass(frozen=True)
class EntryQuadric:
    """q_s on the fiber: nu2(u) = q_s(u) nu2(s); q(u) = c^T gram c in fiber coordinates."""

    s: SpinorPair
    fiber: Subspace
    gram: tuple

    def coords(self, u: SpinorPair) -> tuple:
        return self.fiber.coords(u.vector)

    def value(self, u: SpinorPair):
        c = self.coords(u)
        return sum((ci * gij * cj for ci, row in zip(c, self.gram) for gij, cj in zip(row, c)), 0)

    def polar(self, u: SpinorPair, v: SpinorPair):
        cu, cv = self.coords(u), self.coords(v)
        return 2 * sum((ci * gij * cj for ci, row in zip(cu, self.gram) for gij, cj in zip(row, cv)), 0)


def entry_quadric(s: SpinorPair) -> EntryQuadric:
    x = _require_impure(s)
    fib = l_fiber(s)
    vecs = [SpinorPair.from_vector(b, s.side, s.field) for b in fib.basis]
    g = [[_coefficient(mu_pm(u, v), x) / 2 for v in vecs] for u in vecs]
    return EntryQuadric(s, fib, tuple(tuple(r) for r in g))


@lru_cache(maxsize=None)
def spin_gram(field: FieldSpec) -> tuple:
    ng = norm_gram(AlgebraTag(8, field))
    z = field.zero
    rows = [list(r) + [z] * 8 for r in ng] + [[z] * 8 + list(r) for r in ng]
    return tuple(tuple(r) for r in rows)


def spin_pairing(s: SpinorPair, t: SpinorPair):
    """N(a, c) + N(b, d) between opposite sides."""
    if s.side == t.side:
        raise PreconditionError("the spin pairing is between opposite sides")
    from .compalg import norm_polar
    return norm_polar(s.a, t.a) + norm_polar(s.b, t.b)


def q_minus_span(s: SpinorPair) -> Subspace:
    """Pairing-orthogonal of the fiber of s, inside the opposite half-spinors."""
    return annihilator(l_fiber(s), spin_gram(s.field))


def trichotomy(s: SpinorPair, t: SpinorPair) -> tuple[str, int]:
    _same_side(s, t)
    d = meet(l_fiber(s), l_fiber(t)).dim
    kind = {8: "equal", 4: "weak", 0: "free"}.get(d)
    if kind is None:
        raise PreconditionError(f"fibers meet in dimension {d}, outside 0, 4, 8")
    return kind, d


def _check_admissible(s: SpinorPair, t: SpinorPair) -> None:
    if s.side != "+" or t.side != "+":
        raise PreconditionError("admissible pairs live on the + side")
    xs, xt = _require_impure(s), _require_impure(t)
    if ten_polar(xs, xt) == 0:
        raise PreconditionError("nu2(s) and nu2(t) are orthogonal: pair not admissible")


def pure_tangent(x: SpinorPair) -> Subspace:
    """Tangent space of the pure-spinor cone at x: kernel of g -> mu(x, g)."""
    cols = [mu_pm(x, e).coords for e in _basis(x.field, x.side)]
    return kernel(transpose(cols), x.field, 16)


def r_space(x: SpinorPair, fiber: Subspace) -> Subspace:
    return annihilator(join(pure_tangent(x), fiber), spin_gram(x.field))


def psi_iso(s: SpinorPair, t: SpinorPair, x: SpinorPair) -> SpinorPair:
    """Projection of t onto r(x) along r(xbar), inside the opposite fiber of s.

    t is read as a vector of the opposite half-spinors and first projected
    onto that fiber along the opposite fiber of t.
    """
    _check_admissible(s, t)
    fib = l_fiber(s)
    if not x or x.vector not in fib or not is_pure(x):
        raise PreconditionError("x must be a pure spinor in the fiber of s")
    ns = nu2pm(s)
    qxs = _coefficient(mu_pm(x, s), ns)
    if qxs == 0:
        raise IndeterminacyError("the line through x and s is tangent to the entry quadric")
    xbar = x - s * qxs
    rx, rxb = r_space(x, fib), r_space(xbar, fib)
    ls_minus, lt_minus = q_minus_span(s), q_minus_span(t)
    if meet(rx, rxb).dim or join(rx, rxb) != ls_minus:
        raise IndeterminacyError("r(x) and r(xbar) are not supplementary in the fiber")
    if meet(ls_minus, lt_minus).dim:
        raise IndeterminacyError("opposite fibers of s and t meet")
    tv = t.vector
    # t = p + q with p in L_s^-, q in L_t^-, then p = u + w with u in r(x), w in r(xbar)
    cols = list(ls_minus.basis) + list(lt_minus.basis)
    c = solve(transpose(cols), tv, s.field)
    p = ls_minus.combo(c[:ls_minus.dim])
    cols = list(rx.basis) + list(rxb.basis)
    c = solve(transpose(cols), p, s.field)
    u = rx.combo(c[:rx.dim])
    if is_zero_vec(u):
        raise IndeterminacyError("projection of t onto r(x) vanishes")
    return SpinorPair.from_vector(u, "-", s.field)


@dataclass(frozen=True)
class FiberAlgebra:
    """Multiplication on the fiber of s built from the second spinor t."""

    s: SpinorPair
    t: SpinorPair
    fiber_s: Subspace
    fiber_t: Subspace
    target: Quotient
    nu_s: tuple
    nu_t: tuple

    def _to_m(self, w: HermMatrix) -> tuple:
        return self.target.coords(w.coords)

    def multiply(self, u: SpinorPair, v: SpinorPair) -> SpinorPair:
        fs = self.fiber_s
        if u.vector not in fs or v.vector not in fs:
            raise PreconditionError("factors must lie in the fiber of s")
        f = self.s.field
        m = self._to_m(mu_pm(self.t, v))
        w = SpinorPair.from_vector(self.fiber_t.combo(solve(self.nu_t, m, f)), "+", f)
        r = self._to_m(mu_pm(u, w))
        return SpinorPair.from_vector(fs.combo(solve(self.nu_s, r, f)), "+", f)


def fiber_algebra(s: SpinorPair, t: SpinorPair) -> FiberAlgebra:
    _check_admissible(s, t)
    x = nu2pm(s)
    f = s.field
    tangent = kernel([[ten_polar(x, e) for e in HermMatrix.basis(2, s.tag)]], f, 10)
    target = Quotient(tangent, rref([x.coords], f, 10))
    fs, ft = l_fiber(s), l_fiber(t)

    def matrix(fiber, other):
        cols = []
        for b in fiber.basis:
            w = mu_pm(other, SpinorPair.from_vector(b, "+", f))
            cols.append(target.coords(w.coords))
        m = transpose(cols)
        if det(m, f) == 0:
            raise IndeterminacyError("fiber map to T_xQ / x is not an isomorphism")
        return tuple(tuple(r) for r in m)

    return FiberAlgebra(s, t, fs, ft, target, matrix(fs, t), matrix(ft, s))


def fiber_product(s: SpinorPair, t: SpinorPair, u: SpinorPair, v: SpinorPair) -> SpinorPair:
    return fiber_algebra(s, t).multiply(u, v)


# ---------------------------------------------------------------- sampling

def random_spinor(field: FieldSpec, s: Sampler, side: str = "+") -> SpinorPair:
    return SpinorPair.from_vector(s.vector(16), side, field)


def random_pure(field: FieldSpec, s: Sampler, side: str = "+") -> SpinorPair:
    """A nonzero pure spinor (a, b): a null and b conj in the kernel of left mult by a."""
    tag = AlgebraTag(8, field)
    from .compalg import lmul_matrix
    while True:
        kind = s.randint(0, 3)
        if kind == 0:
            p = SpinorPair(random_null(tag, s), tag.zero, side)
        elif kind == 1:
            p = SpinorPair(tag.zero, random_null(tag, s), side)
        else:
            a = random_null(tag, s)
            ker = kernel(lmul_matrix(a), field, 8)
            d = AlgElem(tag, ker.combo(s.vector(ker.dim)))
            p = SpinorPair(a, d.conj(), side)
        if p and is_pure(p):
            return p


def random_weak_partner(s: SpinorPair, smp: Sampler) -> SpinorPair:
    """A non-pure t with nu2(t) orthogonal to nu2(s) and t outside the fiber of s."""
    xs = nu2pm(s)
    fib = l_fiber(s)
    while True:
        t0 = random_spinor(s.field, smp, s.side)
        w = random_pure(s.field, smp, s.side)
        # det(xs, nu2(t0 + c w)) is affine in c because nu2(w) = 0
        c0, c1 = ten_polar(xs, nu2pm(t0)), ten_polar(xs, mu_pm(t0, w))
        if c1 == 0:
            continue
        t = t0 + w * (-c0 / c1)
        if not is_pure(t) and t.vector not in fib:
            return t
