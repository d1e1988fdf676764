"""Pencils of skew 2-forms on F = k^5: the U-map, codiagonalization and orbit classification.

A form w is stored by its gram matrix G with w(u, v) = u^T G v, so the
elementary form f_i* ^ f_j* has G[i][j] = 1 and G[j][i] = -1. Basis
vectors are 1-indexed in the public helpers to match f_1..f_5.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, IndeterminacyError, MalformedInput, PreconditionError
from .exactlin import (QQ, FieldSpec, Quotient, Sampler, Subspace, dot, kernel,
                       mat_mul, meet, pfaffian, rank, rref, solve, transpose)

N = 5


@dataclass(frozen=True)
class TwoForm:
    gram: tuple
    field: FieldSpec = QQ

    def __post_init__(self):
        g = self.gram
        if len(g) != N or any(len(r) != N for r in g):
            raise DimensionMismatch("a 2-form on k^5 has a 5x5 gram matrix")
        g = tuple(self.field.vec(r) for r in g)
        if any(g[i][j] != -g[j][i] for i in range(N) for j in range(N)):
            raise MalformedInput("gram matrix is not skew-symmetric")
        object.__setattr__(self, "gram", g)

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> "TwoForm":
        return cls(tuple((0,) * N for _ in range(N)), field)

    @classmethod
    def wedges(cls, terms, field: FieldSpec = QQ) -> "TwoForm":
        """Sum of c * f_i* ^ f_j* over terms (i, j) or (c, i, j), 1-indexed."""
        g = [[field.zero] * N for _ in range(N)]
        for t in terms:
            c, i, j = (1, *t) if len(t) == 2 else t
            c = field(c)
            g[i - 1][j - 1] += c
            g[j - 1][i - 1] -= c
        return cls(tuple(map(tuple, g)), field)

    def __call__(self, u, v):
        return dot(u, [dot(r, v) for r in self.gram])

    def __add__(self, o: "TwoForm") -> "TwoForm":
        return TwoForm(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.gram, o.gram)), self.field)

    def __mul__(self, c) -> "TwoForm":
        c = self.field(c)
        return TwoForm(tuple(tuple(c * a for a in r) for r in self.gram), self.field)

    __rmul__ = __mul__

    def __bool__(self):
        return any(x != 0 for r in self.gram for x in r)

    @property
    def rank(self) -> int:
        return rank(self.gram, self.field)

    def kernel(self) -> Subspace:
        return kernel(self.gram, self.field, N)

    def contract(self, u) -> tuple:
        """L_w(u) = w(u, .) as a row vector."""
        return tuple(dot(u, col) for col in zip(*self.gram))

    def transport(self, P) -> "TwoForm":
        """The form in the basis given by the columns of P: P^T G P."""
        return TwoForm(tuple(map(tuple, mat_mul(mat_mul(transpose(P), self.gram), P))), self.field)

    def upper(self) -> tuple:
        return tuple(self.gram[i][j] for i, j in combinations(range(N), 2))

    def wedge_square(self) -> tuple:
        """Coefficients of w ^ w on f_ijkl*, up to the factor 2: the 4x4 Pfaffians."""
        return tuple(pfaffian([[self.gram[a][b] for b in idx] for a in idx])
                     for idx in combinations(range(N), 4))


@dataclass(frozen=True)
class PencilMap:
    omega1: TwoForm
    omega2: TwoForm

    def __post_init__(self):
        if self.omega1.field != self.omega2.field:
            raise MalformedInput("the two forms of a pencil live over different fields")

    @property
    def field(self) -> FieldSpec:
        return self.omega1.field

    def member(self, lam, mu) -> TwoForm:
        return self.omega1 * lam + self.omega2 * mu

    def recombine(self, a) -> "PencilMap":
        """Precompose with the 2x2 matrix a acting on the source k^2."""
        (a11, a12), (a21, a22) = a
        return PencilMap(self.member(a11, a21), self.member(a12, a22))

    def transport(self, P) -> "PencilMap":
        return PencilMap(self.omega1.transport(P), self.omega2.transport(P))

    def forms(self) -> tuple[TwoForm, TwoForm]:
        return self.omega1, self.omega2


LABELS = ("A2+2A1", "A2+A1", "A2", "3A1a", "3A1b", "3A1c", "2A1", "A1")
ORBIT_DIMS = dict(zip(LABELS, (20, 18, 16, 15, 12, 11, 8, 0)))


@dataclass(frozen=True)
class OrbitLabel:
    label: str

    def __post_init__(self):
        if self.label not in ORBIT_DIMS:
            raise MalformedInput(f"unknown orbit label {self.label!r}")

    @property
    def dim(self) -> int:
        return ORBIT_DIMS[self.label]

    def __str__(self):
        return self.label


def representatives(field: FieldSpec = QQ) -> dict[str, PencilMap]:
    """One pencil in each of the eight orbits."""
    w = lambda *t: TwoForm.wedges(t, field)
    w1 = w((2, 4), (3, 5))
    w2 = w((1, 5), (3, 4))
    return {
        "A2+2A1": PencilMap(w1, w2),
        "A2+A1": PencilMap(w1, w((1, 2))),
        "A2": PencilMap(w1, w((2, 4))),
        "3A1a": PencilMap(w1, w((2, 3))),
        "3A1b": PencilMap(w((1, 2)), w((1, 3))),
        "3A1c": PencilMap(w1, w1),
        "2A1": PencilMap(w((1, 2)), w((1, 2))),
        "A1": PencilMap(TwoForm.zero(field), TwoForm.zero(field)),
    }


# ---------------------------------------------------------------- l and U

def l_space(w1: TwoForm, w2: TwoForm) -> Subspace:
    """{f : w2(u, f) = 0 for every u in ker w1}."""
    rows = [w2.contract(u) for u in w1.kernel().basis]
    return kernel(rows, w1.field, N)


def isotropic(w: TwoForm, sub: Subspace) -> bool:
    return all(w(u, v) == 0 for u, v in combinations(sub.basis, 2))


def wedge2_orthogonal(w: TwoForm, sub: Subspace) -> bool:
    """Pairing of w with every u ^ v, u, v in sub, read through the 2x2 minors."""
    b = sub.basis
    for u, v in combinations(b, 2):
        total = 0
        for i, j in combinations(range(N), 2):
            total += w.gram[i][j] * (u[i] * v[j] - u[j] * v[i])
        if total != 0:
            return False
    return True


def u_conditions(f: PencilMap) -> str | None:
    """None when the two conditions hold, otherwise a description of the failure."""
    w1, w2 = f.forms()
    if w1.rank != 4 or w2.rank != 4:
        return "both forms must have rank 4"
    k1, k2 = w1.kernel(), w2.kernel()
    if meet(k1, k2).dim:
        return "ker w1 and ker w2 meet"
    im21 = rref([w2.contract(u) for u in k1.basis], f.field, N)
    im12 = rref([w1.contract(u) for u in k2.basis], f.field, N)
    if meet(im21, im12).dim:
        return "L_w2(ker w1) and L_w1(ker w2) meet"
    return None


def u_space(f: PencilMap) -> Subspace:
    why = u_conditions(f)
    if why:
        raise IndeterminacyError(f"U is undefined: {why}")
    w1, w2 = f.forms()
    u = meet(l_space(w1, w2), l_space(w2, w1))
    if u.dim != 3 or not (isotropic(w1, u) and isotropic(w2, u)):
        raise IndeterminacyError("U is not a common isotropic 3-space")
    return u


# ---------------------------------------------------------------- classification

def _quadratics(f: PencilMap) -> list[tuple]:
    """Each 4x4 Pfaffian of l w1 + m w2 as (c0, c1, c2) with c0 l^2 + c1 l m + c2 m^2."""
    p10 = f.omega1.wedge_square()
    p01 = f.omega2.wedge_square()
    p11 = f.member(1, 1).wedge_square()
    fld = f.field
    return [(fld(a), fld(c - a - b), fld(b)) for a, b, c in zip(p10, p01, p11)]


def wedge_space(f: PencilMap) -> Subspace:
    """Span W of the Pfaffian quadratics of the pencil, in the basis l^2, l m, m^2."""
    return rref(_quadratics(f), f.field, 3)


def map_rank(f: PencilMap) -> int:
    return rank([f.omega1.upper(), f.omega2.upper()], f.field)


def classify(f: PencilMap) -> OrbitLabel:
    r = map_rank(f)
    if r <= 1:
        gen = f.omega1 if f.omega1 else f.omega2
        return OrbitLabel({0: "A1", 2: "2A1", 4: "3A1c"}[gen.rank])
    w = wedge_space(f)
    if w.dim == 1:
        c0, c1, c2 = w.basis[0]
        return OrbitLabel("A2" if c1 * c1 - 4 * c0 * c2 != 0 else "3A1a")
    return OrbitLabel({0: "3A1b", 2: "A2+A1", 3: "A2+2A1"}[w.dim])


def orbit_dim_check(f: PencilMap) -> int:
    """Rank of the infinitesimal gl2 + gl5 action at f."""
    fld = f.field
    w1, w2 = f.forms()
    vecs = []
    for i in range(2):
        for j in range(2):
            a = [[fld.zero] * 2 for _ in range(2)]
            a[i][j] = fld.one
            g = f.recombine(a)
            vecs.append(g.omega1.upper() + g.omega2.upper())
    for i in range(N):
        for j in range(N):
            def d(w: TwoForm) -> tuple:
                # X^T G + G X with X the matrix unit E_ij
                m = [[fld.zero] * N for _ in range(N)]
                for k in range(N):
                    m[j][k] += w.gram[i][k]
                    m[k][j] += w.gram[k][i]
                return tuple(m[p][q] for p, q in combinations(range(N), 2))
            vecs.append(d(w1) + d(w2))
    return rank(vecs, fld)


def closure_leq(a: OrbitLabel | str, b: OrbitLabel | str) -> bool:
    """True when orbit a lies in the closure of orbit b."""
    a, b = str(a), str(b)
    if (a, b) == ("3A1c", "3A1b"):
        return False
    return LABELS.index(a) >= LABELS.index(b)


def covering_pairs() -> list[tuple[str, str]]:
    """(lower, upper) pairs of the Hasse diagram of the closure order."""
    out = []
    for lo in LABELS:
        for hi in LABELS:
            if lo == hi or not closure_leq(lo, hi):
                continue
            if not any(m not in (lo, hi) and closure_leq(lo, m) and closure_leq(m, hi) for m in LABELS):
                out.append((lo, hi))
    return out


def nilpotent_label(a: OrbitLabel | str | None) -> str:
    """Nilpotent orbit label; None stands for the zero section."""
    if a is None:
        return "0"
    a = str(a)
    if a not in ORBIT_DIMS:
        raise MalformedInput(f"unknown orbit label {a!r}")
    return "3A1" if a.startswith("3A1") else a


def degeneration(upper: str, lower: str, t, field: FieldSpec = QQ) -> PencilMap:
    """One-parameter family: in orbit `upper` for t != 0 and in `lower` at t = 0."""
    w = lambda *terms: TwoForm.wedges(terms, field)
    t = field(t)
    w1 = w((2, 4), (3, 5))
    fams = {
        ("A2+2A1", "A2+A1"): lambda: PencilMap(w1, w((1, 5), (t, 2, 3))),
        ("A2+A1", "A2"): lambda: PencilMap(w1, w((2, 4), (t, 1, 2))),
        ("A2", "3A1a"): lambda: PencilMap(w1, w((2, 3), (t, 2, 4))),
        ("3A1a", "3A1b"): lambda: PencilMap(w((1, 2), (t, 3, 4)), w((1, 3))),
        ("3A1a", "3A1c"): lambda: PencilMap(w1, w1 + w((t, 2, 3))),
        ("3A1b", "2A1"): lambda: PencilMap(w((1, 2)), w((1, 2), (t, 1, 3))),
        ("3A1c", "2A1"): lambda: PencilMap(w((1, 2), (t, 3, 4)), w((1, 2), (t, 3, 4))),
        ("2A1", "A1"): lambda: PencilMap(w((t, 1, 2)), w((t, 1, 2))),
    }
    try:
        return fams[(upper, lower)]()
    except KeyError:
        raise MalformedInput(f"no degeneration family from {upper} to {lower}") from None


# ---------------------------------------------------------------- codiagonalization

def _degenerate_member(f: PencilMap) -> str:
    w = wedge_space(f)
    if w.dim == 3:
        return ""
    # common rational root of the quadratics, if any
    for lam, mu in ((1, 0), (0, 1)):
        if f.member(lam, mu).rank < 4:
            return f" (member {lam}*w1 + {mu}*w2)"
    if w.dim == 1:
        c0, c1, c2 = w.basis[0]
        # c0 l^2 + c1 l m + c2 m^2 with l, m nonzero; report l/m when rational
        disc = c1 * c1 - 4 * c0 * c2
        if disc == 0 and c0 != 0:
            return f" (member with w1:w2 = {-c1 / (2 * c0)}:1)"
    return " (degenerate members over an extension field)"


def codiagonalize(w1: TwoForm, w2: TwoForm) -> list[list]:
    """A basis f_1..f_5 (columns) in which w1 = f2*^f4* + f3*^f5* and w2 = f1*^f5* + f3*^f4*."""
    f = PencilMap(w1, w2)
    if map_rank(f) < 2 or wedge_space(f).dim != 3:
        raise PreconditionError("a member of the pencil has rank below 4" + _degenerate_member(f))
    fld = f.field
    f1 = list(w1.kernel().basis[0])
    f2 = list(w2.kernel().basis[0])
    f5s = w2.contract(f1)
    f4s = w1.contract(f2)
    # f3 in <f4*, f5*>^perp with w1(f3, .) in k f5* and w2(f3, .) in k f4*
    S = kernel([f4s, f5s], fld, N)
    B = list(S.basis)
    cond = []
    for w, other in ((w1, f4s), (w2, f5s)):
        # coefficient of `other` in L_w(b), read off against the pair (f4*, f5*)
        coeffs = []
        for b in B:
            c = solve(transpose([f4s, f5s]), w.contract(b), fld)
            coeffs.append(c[0] if other is f4s else c[1])
        cond.append(coeffs)
    sol = kernel(cond, fld, len(B))
    if sol.dim != 1:
        raise PreconditionError("no admissible f3")
    f3 = list(S.combo(sol.basis[0]))
    a = solve(transpose([f5s]), w1.contract(f3), fld)[0]
    b = solve(transpose([f4s]), w2.contract(f3), fld)[0]
    f1 = [a * x for x in f1]
    f2 = [b * x for x in f2]
    f5s = w2.contract(f1)
    f4s = w1.contract(f2)
    f4 = list(solve([f4s, f5s], [fld.one, fld.zero], fld))
    f5 = list(solve([f4s, f5s, w1.contract(f4), w2.contract(f4)],
                    [fld.zero, fld.one, fld.zero, fld.zero], fld))
    P = transpose([f1, f2, f3, f4, f5])
    target = representatives(fld)["A2+2A1"]
    if f.transport(P) != target:
        raise PreconditionError("codiagonalization did not reach the normal form")
    return P


# ---------------------------------------------------------------- sampling

def random_conjugate(f: PencilMap, s: Sampler) -> PencilMap:
    """A random (GL2 x GL5)-translate of f."""
    return f.transport(s.invertible(N)).recombine(s.invertible(2))


def random_pencil(field: FieldSpec, s: Sampler) -> PencilMap:
    def form():
        g = [[field.zero] * N for _ in range(N)]
        for i, j in combinations(range(N), 2):
            c = s.scalar()
            g[i][j], g[j][i] = c, -c
        return TwoForm(tuple(map(tuple, g)), field)
    return PencilMap(form(), form())


# ---------------------------------------------------------------- E6,II base point

def flop_e62_base(x, y, phi: PencilMap) -> Subspace:
    """Codimension-2 subspace of V over the 3-space U(phi) of C = V / S.

    phi is the pair (phi(x), phi(y)) of 2-forms on C in the coordinates of
    Quotient(V, S), S the span of the two tangent cones along the line xy.
    """
    from .scorza import severi_line_spaces
    spaces = severi_line_spaces(x, y)
    if x.space.tag.dim_a != 8:
        raise DimensionMismatch("the second flop lives on the a = 8 Severi variety")
    q = Quotient.of_ambient(spaces.S)
    if q.dim != N:
        raise DimensionMismatch(f"quotient has dimension {q.dim}, expected 5")
    if phi.field != x.space.field:
        raise MalformedInput("pencil and line over different fields")
    label = classify(phi)
    if label.label != "A2+2A1":
        raise IndeterminacyError(f"the flop is undefined on the orbit {label.label}")
    g = u_space(phi)
    reps = rref([q.lift(c) for c in g.basis], q.field, q.big.ambient_dim)
    return q.preimage(reps)
