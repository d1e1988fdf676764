"""Rank-one cones in Jordan spaces: tangent spaces, tangency maps, lines, flops."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .compalg import AlgebraTag, AlgElem, norm_gram, random_elem, random_null
from .errors import DimensionMismatch, IndeterminacyError, PreconditionError
from .exactlin import (Quotient, Sampler, Subspace, annihilator, det, generic,
                       is_zero_vec, join, kernel, meet, rref, transpose)
from .jordan import (HermMatrix, LinForm, cross_rep, herm_dim, mu2, nu2,
                     quad_rep, quad_rep_polar, rank, realization, trace_form)


@dataclass(frozen=True)
class ScorzaSpace:
    n: int
    tag: AlgebraTag

    def __post_init__(self):
        if self.tag.dim_a == 8 and self.n != 3:
            raise DimensionMismatch("octonionic cones are only available for n = 3")

    @property
    def dim(self) -> int:
        return herm_dim(self.n, self.tag.dim_a)

    @property
    def field(self):
        return self.tag.field

    def matrix(self, coords) -> HermMatrix:
        return HermMatrix(self.n, self.tag, coords)

    def span(self, mats) -> Subspace:
        return rref([m.coords for m in mats], self.field, self.dim)


def space_of(m: HermMatrix) -> ScorzaSpace:
    return ScorzaSpace(m.n, m.tag)


class ConePoint:
    """A nonzero rank-one hermitian matrix, i.e. a point of the affine cone."""

    __slots__ = ("rep",)

    def __init__(self, rep: HermMatrix):
        space_of(rep)
        if rank(rep) != 1:
            raise PreconditionError("matrix is not of rank one, so not on the cone")
        self.rep = rep

    @property
    def space(self) -> ScorzaSpace:
        return space_of(self.rep)

    def __repr__(self):
        return f"ConePoint({self.rep!r})"


class CotangentRep:
    """A form vanishing on the line of x, representing a cotangent vector at x."""

    __slots__ = ("base", "form")

    def __init__(self, base: ConePoint, form: LinForm | HermMatrix):
        if isinstance(form, HermMatrix):
            form = LinForm(form)
        if form(base.rep) != 0:
            raise PreconditionError("cotangent representative must vanish on the point")
        self.base = base
        self.form = form

    @property
    def rep(self) -> HermMatrix:
        return self.form.rep


def _point(x) -> ConePoint:
    return x if isinstance(x, ConePoint) else ConePoint(x)


@lru_cache(maxsize=None)
def trace_gram(n: int, tag: AlgebraTag) -> tuple:
    """Gram matrix of the trace form in the coordinates of H_n."""
    d, a = herm_dim(n, tag.dim_a), tag.dim_a
    f = tag.field
    g = [[f.zero] * d for _ in range(d)]
    for i in range(n):
        g[i][i] = f.one
    ng = norm_gram(tag)
    for k in range(n * (n - 1) // 2):
        o = n + a * k
        for i in range(a):
            for j in range(a):
                g[o + i][o + j] = ng[i][j]
    return tuple(tuple(r) for r in g)


def orthogonal(sub: Subspace, n: int, tag: AlgebraTag) -> Subspace:
    """Trace-form annihilator of a subspace of H_n."""
    return annihilator(sub, trace_gram(n, tag))


# ---------------------------------------------------------------- tangent spaces

def find_preimage(rep: HermMatrix) -> list[AlgElem]:
    """A vector p with nu2(p) a nonzero multiple of rep (rank-one rep)."""
    n, tag = rep.n, rep.tag
    f = tag.field
    for i in range(n):
        if rep.coords[i] != 0:
            p = [rep.entry(j, i) for j in range(n)]
            if nu2(p) == rep * rep.coords[i]:
                return p
    if tag.dim_a < 8:
        rows = rep.rows()
        weights = [[1 if k in (i, j) else 0 for k in range(n)]
                   for i in range(n) for j in range(i + 1, n)]
        s = Sampler(0, f)
        weights += [list(s.vector(n)) for _ in range(16)]
        for w in weights:
            p = [sum((rows[j][k] * f(w[k]) for k in range(n)), tag.zero) for j in range(n)]
            img = nu2(p)
            idx = next((k for k, c in enumerate(rep.coords) if c != 0), None)
            c = img.coords[idx] / rep.coords[idx]
            if c != 0 and img == rep * c:
                return p
    raise PreconditionError("no preimage under nu2 found")


def tangent_cone_kernel(x: ConePoint) -> Subspace:
    """Kernel of v -> polar_det3(x, v, .)."""
    x = _point(x)
    sp = x.space
    if sp.n != 3:
        raise DimensionMismatch("the cubic-form method needs n = 3")
    cols = [cross_rep(x.rep, e).coords for e in HermMatrix.basis(sp.n, sp.tag)]
    return kernel(transpose(cols), sp.field, sp.dim)


def tangent_cone_jacobian(x: ConePoint) -> Subspace:
    """Image of the differential of nu2 at a preimage of x."""
    x = _point(x)
    sp = x.space
    p = find_preimage(x.rep)
    tag = sp.tag
    scalar_slot = None
    if tag.dim_a == 8:
        scalar_slot = next(i for i, c in enumerate(x.rep.coords[:sp.n]) if c != 0)
    zero = tag.zero
    vecs = []
    for i in range(sp.n):
        dirs = [tag.one] if i == scalar_slot else tag.basis()
        for d in dirs:
            w = [zero] * sp.n
            w[i] = d
            vecs.append(mu2(p, w).coords)
    return rref(vecs, sp.field, sp.dim)


def tangent_cone(x: ConePoint) -> Subspace:
    x = _point(x)
    if x.space.n == 3:
        return tangent_cone_kernel(x)
    return tangent_cone_jacobian(x)


def incident(x: ConePoint, h: LinForm) -> bool:
    """True iff h vanishes on the tangent space at x."""
    x = _point(x)
    sp = x.space
    return all(h(sp.matrix(b)) == 0 for b in tangent_cone(x).basis)


def incident_space(h: HermMatrix) -> Subspace:
    """V(h): the trace-orthogonal of the tangent space at the dual point h."""
    hp = _point(h)
    sp = hp.space
    return orthogonal(tangent_cone(hp), sp.n, sp.tag)


# ---------------------------------------------------------------- tangency maps

def _identity_form(sp: ScorzaSpace) -> LinForm:
    return LinForm(HermMatrix.identity(sp.n, sp.tag))


def nu_plus(x: ConePoint, T: HermMatrix, A: LinForm | None = None) -> HermMatrix:
    """Canonical representative of U_T(A) modulo the tangent space at x."""
    x = _point(x)
    sp = x.space
    A = A or _identity_form(sp)
    tc = tangent_cone(x)
    if T.coords not in tc:
        raise PreconditionError("T is not tangent at x")
    if rank(T) <= 1:
        raise IndeterminacyError("T has rank <= 1: the tangent direction lies on a line")
    return sp.matrix(tc.reduce(quad_rep(T, A.rep).coords))


def nu_minus(x: ConePoint, f: CotangentRep | HermMatrix) -> LinForm:
    """The dual quadratic representation U_f applied to x."""
    x = _point(x)
    if not isinstance(f, CotangentRep):
        f = CotangentRep(x, f)
    return LinForm(quad_rep(f.rep, x.rep))


@dataclass(frozen=True)
class MukaiMap:
    """The isomorphism Tx / (Tx n V(h)) -> Th / (Th n V(x)) induced by sigma_A."""

    h: LinForm
    A: HermMatrix
    matrix: tuple
    source: Quotient
    target: Quotient

    def apply(self, v: HermMatrix) -> tuple:
        c = self.source.coords(v.coords)
        return tuple(sum((m * y for m, y in zip(row, c)), 0) for row in self.matrix)


def mukai_map(x_rep: HermMatrix, h_rep: HermMatrix, rng_seed: int = 0) -> MukaiMap:
    x, hp = _point(x_rep), _point(h_rep)
    sp = x.space
    if sp.n != 3:
        raise DimensionMismatch("the flop formula is implemented for n = 3")
    tx, th = tangent_cone(x), tangent_cone(hp)
    if not incident(x, LinForm(h_rep)):
        raise PreconditionError("x and h are not incident")
    vh = orthogonal(th, sp.n, sp.tag)
    vx = orthogonal(tx, sp.n, sp.tag)
    idx = next(i for i, c in enumerate(h_rep.coords) if c != 0)

    def make(seed):
        return sp.matrix(vh.combo(Sampler(seed, sp.field).vector(vh.dim)))

    def scale(A):
        s = cross_rep(A, x.rep)
        c = s.coords[idx] / h_rep.coords[idx]
        if s != h_rep * c:
            raise PreconditionError("sigma_A(x) is not proportional to h")
        return c

    A = generic(make, lambda m: scale(m) != 0, rng_seed, what="A in V(h)")
    A = A / scale(A)
    source = Quotient(tx, meet(tx, vh))
    target = Quotient(th, meet(th, vx))
    cols = []
    for b in source.basis():
        w = cross_rep(A, sp.matrix(b)).coords
        cols.append(target.coords(w))
    mat = tuple(tuple(r) for r in transpose(cols)) if cols else ()
    if source.dim != target.dim or (mat and det(mat, sp.field) == 0):
        raise IndeterminacyError("sigma_A does not induce an isomorphism")
    return MukaiMap(LinForm(h_rep), A, mat, source, target)


def flop_e61(x: ConePoint, f: CotangentRep | HermMatrix, rng_seed: int = 0) -> MukaiMap:
    x = _point(x)
    h = nu_minus(x, f)
    if not h.rep:
        raise IndeterminacyError("the cotangent vector lies on the null cone: flop undefined")
    try:
        _point(h.rep)
    except PreconditionError:
        raise IndeterminacyError("U_f(x) is not a dual point of rank one") from None
    return mukai_map(x.rep, h.rep, rng_seed)


# ---------------------------------------------------------------- lines

def line_in_cone(x: ConePoint, y: ConePoint) -> bool:
    x, y = _point(x), _point(y)
    if rref([x.rep.coords, y.rep.coords]).dim != 2:
        raise PreconditionError("the two points coincide")
    if x.space.n == 3:
        return not (cross_rep(x.rep, x.rep) or cross_rep(x.rep, y.rep) or cross_rep(y.rep, y.rep))
    return rank(x.rep + y.rep) <= 1


def _require_line(x, y):
    x, y = _point(x), _point(y)
    if not line_in_cone(x, y):
        raise PreconditionError("the two points do not span a line of the cone")
    return x, y


def t_y_space(x: ConePoint, y: ConePoint) -> Subspace:
    """Image of the tangent space at y in V / T_x, as canonical representatives."""
    x, y = _require_line(x, y)
    return Quotient.of_ambient(tangent_cone(x)).image_of(tangent_cone(y))


def cotangent_quotient(x: ConePoint) -> Quotient:
    """Forms vanishing on x modulo forms vanishing on the tangent space."""
    x = _point(x)
    sp = x.space
    line = sp.span([x.rep])
    return Quotient(orthogonal(line, sp.n, sp.tag), orthogonal(tangent_cone(x), sp.n, sp.tag))


def fano_image(x: ConePoint, t: HermMatrix, side: str = "+", aux: LinForm | None = None) -> Subspace:
    """Image of the polarized tangency map at a null direction t.

    side "+": t is tangent at x, result in V / T_x (canonical representatives).
    side "-": t is a cotangent representative, result inside V(x).
    """
    x = _point(x)
    sp = x.space
    tx = tangent_cone(x)
    if side == "+":
        A = (aux or _identity_form(sp)).rep
        if t.coords not in tx:
            raise PreconditionError("t is not tangent at x")
        if t.coords in sp.span([x.rep]):
            raise PreconditionError("t is tangent to the line of x itself")
        if not is_zero_vec(tx.reduce(quad_rep(t, A).coords)):
            raise PreconditionError("t is not on the null cone of the tangency map")
        q = Quotient.of_ambient(tx)
        return rref([q.reduce(quad_rep_polar(t, sp.matrix(b), A).coords) for b in tx.basis],
                    sp.field, sp.dim)
    if side == "-":
        cq = cotangent_quotient(x)
        if t.coords not in cq.big:
            raise PreconditionError("cotangent representative must vanish on x")
        if t.coords in cq.small:
            raise PreconditionError("t represents the zero cotangent vector")
        if quad_rep(t, x.rep):
            raise PreconditionError("t is not on the null cone of the dual tangency map")
        return rref([quad_rep_polar(t, sp.matrix(b), x.rep).coords for b in cq.big.basis],
                    sp.field, sp.dim)
    raise PreconditionError(f"side must be '+' or '-', got {side!r}")


@dataclass(frozen=True)
class LineSpaces:
    L: Subspace
    I: Subspace
    S: Subspace
    quotient_dims: tuple[int, int, int]


def severi_line_spaces(x: ConePoint, y: ConePoint) -> LineSpaces:
    x, y = _require_line(x, y)
    sp = x.space
    if sp.n != 3 or sp.tag.dim_a < 2:
        raise DimensionMismatch("line bundles are computed for n = 3 and a >= 2")
    tx, ty = tangent_cone(x), tangent_cone(y)
    L = sp.span([x.rep, y.rep])
    I, S = meet(tx, ty), join(tx, ty)
    return LineSpaces(L, I, S, (I.dim - L.dim, S.dim - I.dim, sp.dim - S.dim))


def x_alpha_to_g2c(x: ConePoint, y: ConePoint, w: ConePoint) -> Subspace:
    """Image of the tangent space at w in V / S, as canonical representatives."""
    spaces = severi_line_spaces(x, y)
    w = _point(w)
    if w.rep.coords not in spaces.I:
        raise PreconditionError("w does not lie in the intersection of the tangent spaces")
    if w.rep.coords in spaces.L:
        raise PreconditionError("w lies on the line itself")
    img = Quotient.of_ambient(spaces.S).image_of(tangent_cone(w))
    if img.dim != 2:
        # happens for special w, e.g. on a plane of the cone through the line when a = 4
        raise IndeterminacyError(f"the tangent space at w has a {img.dim}-dimensional image, not a plane")
    return img


def blowup_fiber(x: ConePoint, f: CotangentRep | HermMatrix) -> Subspace:
    """Cotangent directions g with U_{f,g}(x) proportional to U_f(x).

    Returned as canonical representatives modulo V(x).
    """
    x = _point(x)
    if not isinstance(f, CotangentRep):
        f = CotangentRep(x, f)
    sp = x.space
    h = quad_rep(f.rep, x.rep)
    if not h:
        raise IndeterminacyError("the cotangent vector lies on the null cone")
    cq = cotangent_quotient(x)
    mod_h = Quotient.of_ambient(sp.span([h]))
    cols = [mod_h.coords(quad_rep_polar(f.rep, sp.matrix(b), x.rep).coords) for b in cq.basis()]
    ker = kernel(transpose(cols), sp.field, cq.dim)
    return rref([cq.lift(c) for c in ker.basis], sp.field, sp.dim)


# ---------------------------------------------------------------- sampling

def transport(P: HermMatrix, M: HermMatrix) -> HermMatrix:
    """Apply the structure-group element U_P."""
    return quad_rep(P, M)


def random_invertible(sp: ScorzaSpace, s: Sampler) -> HermMatrix:
    from .jordan import random_herm, det3
    while True:
        P = random_herm(sp.n, sp.tag, s)
        if sp.n <= 3:
            if det3(P) != 0:
                return P
        elif det(realization(P), sp.field) != 0:
            return P


def random_cone_point(sp: ScorzaSpace, s: Sampler) -> ConePoint:
    tag = sp.tag
    while True:
        z = [tag.scalar(s.nonzero())] + [random_elem(tag, s) for _ in range(sp.n - 1)]
        m = nu2(z)
        if tag.dim_a < 8:
            m = transport(random_invertible(sp, s), m)
        if m:
            return ConePoint(m)


def model_line(sp: ScorzaSpace, z: AlgElem) -> tuple[ConePoint, ConePoint]:
    """E11 and nu2(1, z, 0, ...) for a null z."""
    tag = sp.tag
    zero = tag.zero
    x = nu2([tag.one] + [zero] * (sp.n - 1))
    y = nu2([tag.one, z] + [zero] * (sp.n - 2))
    return ConePoint(x), ConePoint(y)


def random_line(sp: ScorzaSpace, s: Sampler) -> tuple[ConePoint, ConePoint]:
    """A line of the cone moved to general position by a random U_P."""
    x, y = model_line(sp, random_null(sp.tag, s))
    P = random_invertible(sp, s)
    a, b = s.nonzero(), s.nonzero()
    return ConePoint(transport(P, x.rep) * a), ConePoint(transport(P, y.rep) * b)


def random_cotangent(x: ConePoint, s: Sampler) -> CotangentRep:
    sp = x.space
    w = orthogonal(sp.span([x.rep]), sp.n, sp.tag)
    return CotangentRep(x, sp.matrix(w.combo(s.vector(w.dim))))
