"""Hermitian matrices over composition algebras and their cubic geometry."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .compalg import (AlgebraTag, AlgElem, raw_conj, raw_mul, raw_norm,
                      raw_norm_polar, raw_re)
from .errors import DimensionMismatch, MalformedInput
from .exactlin import Sampler, det, pfaffian, rank as mat_rank


def _pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def herm_dim(n: int, a: int) -> int:
    return n + a * n * (n - 1) // 2


class HermMatrix:
    """Hermitian n x n matrix stored as diagonal scalars then upper blocks.

    ``coords`` lists the n diagonal entries followed by the coordinates of
    m_01, m_02, ..., m_12, ... (row-major order over i < j).
    """

    __slots__ = ("n", "tag", "coords")

    def __init__(self, n: int, tag: AlgebraTag, coords: Sequence, _raw: bool = False):
        if tag.dim_a == 8 and n > 3:
            raise MalformedInput("octonionic hermitian matrices need n <= 3")
        if len(coords) != herm_dim(n, tag.dim_a):
            raise DimensionMismatch(f"{len(coords)} coordinates for H_{n} of a={tag.dim_a}")
        self.n = n
        self.tag = tag
        self.coords = tuple(coords) if _raw else tag.field.vec(coords)

    # construction -----------------------------------------------------
    @classmethod
    def build(cls, tag: AlgebraTag, diag: Sequence, upper: dict | None = None) -> "HermMatrix":
        n = len(diag)
        a = tag.dim_a
        f = tag.field
        coords = [f(d) for d in diag]
        upper = upper or {}
        for key in upper:
            i, j = key
            if not 0 <= i < j < n:
                raise MalformedInput(f"upper entry index {key} out of range")
        for i, j in _pairs(n):
            e = upper.get((i, j))
            if e is None:
                coords.extend([f.zero] * a)
            elif isinstance(e, AlgElem):
                if e.tag.dim_a != a:
                    raise MalformedInput("entry from another algebra")
                coords.extend(e.coords)
            else:
                coords.extend(f(c) for c in e)
        return cls(n, tag, coords, _raw=True)

    @classmethod
    def zero(cls, n: int, tag: AlgebraTag) -> "HermMatrix":
        return cls(n, tag, (tag.field.zero,) * herm_dim(n, tag.dim_a), _raw=True)

    @classmethod
    def identity(cls, n: int, tag: AlgebraTag) -> "HermMatrix":
        return cls.diagonal(tag, [1] * n)

    @classmethod
    def diagonal(cls, tag: AlgebraTag, diag: Sequence) -> "HermMatrix":
        return cls.build(tag, diag)

    @classmethod
    def unit(cls, n: int, tag: AlgebraTag, i: int) -> "HermMatrix":
        d = [0] * n
        d[i] = 1
        return cls.build(tag, d)

    @classmethod
    def from_coords(cls, n: int, tag: AlgebraTag, coords: Sequence) -> "HermMatrix":
        return cls(n, tag, coords)

    @classmethod
    def basis(cls, n: int, tag: AlgebraTag) -> list["HermMatrix"]:
        f = tag.field
        d = herm_dim(n, tag.dim_a)
        out = []
        for k in range(d):
            v = [f.zero] * d
            v[k] = f.one
            out.append(cls(n, tag, v, _raw=True))
        return out

    # access ----------------------------------------------------------
    @property
    def a(self) -> int:
        return self.tag.dim_a

    @property
    def field(self):
        return self.tag.field

    @property
    def diag(self) -> tuple:
        return self.coords[: self.n]

    def _offset(self, i: int, j: int) -> int:
        n, a = self.n, self.a
        k = i * n - i * (i + 1) // 2 + (j - i - 1)
        return n + a * k

    def block(self, i: int, j: int) -> tuple:
        """Raw coordinates of the entry (i, j); diagonal entries as multiples of 1."""
        a = self.a
        if i == j:
            d = self.coords[i]
            return tuple(d * u for u in self.tag.one.coords)
        if i < j:
            o = self._offset(i, j)
            return self.coords[o:o + a]
        o = self._offset(j, i)
        return raw_conj(a, self.coords[o:o + a])

    def entry(self, i: int, j: int) -> AlgElem:
        return AlgElem(self.tag, self.block(i, j), _raw=True)

    def upper(self) -> dict:
        return {(i, j): self.entry(i, j) for i, j in _pairs(self.n)}

    def rows(self) -> list[list[AlgElem]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    # arithmetic --------------------------------------------------------
    def _same(self, o: "HermMatrix") -> None:
        if not isinstance(o, HermMatrix) or o.n != self.n or o.a != self.a:
            raise DimensionMismatch("hermitian matrices of different shapes")

    def _new(self, coords) -> "HermMatrix":
        return HermMatrix(self.n, self.tag, coords, _raw=True)

    def __add__(self, o):
        self._same(o)
        return self._new(tuple(x + y for x, y in zip(self.coords, o.coords)))

    def __sub__(self, o):
        self._same(o)
        return self._new(tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __neg__(self):
        return self._new(tuple(-x for x in self.coords))

    def __mul__(self, c):
        return self._new(tuple(x * c for x in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self._new(tuple(x / c for x in self.coords))

    def __eq__(self, o):
        return (isinstance(o, HermMatrix) and o.n == self.n and o.a == self.a
                and o.coords == self.coords)

    def __hash__(self):
        return hash((self.n, self.a, self.coords))

    def __bool__(self):
        return any(x != 0 for x in self.coords)

    def __repr__(self):
        return f"HermMatrix(n={self.n}, a={self.a}, {list(self.coords)})"


@dataclass(frozen=True)
class LinForm:
    """The functional u -> trace_form(rep, u)."""

    rep: HermMatrix

    def __call__(self, u: HermMatrix):
        return trace_form(self.rep, u)

    def __bool__(self):
        return bool(self.rep)


# ---------------------------------------------------------------- nu2

def _common_tag(z: Sequence[AlgElem]) -> AlgebraTag:
    if not z:
        raise MalformedInput("empty vector")
    tag = z[0].tag
    if any(w.tag != tag for w in z):
        raise MalformedInput("entries from different algebras")
    return tag


def nu2(z: Sequence[AlgElem]) -> HermMatrix:
    """(z_i conj(z_j))_{ij}."""
    tag = _common_tag(z)
    a = tag.dim_a
    zc = [w.coords for w in z]
    coords = [raw_norm(a, w) for w in zc]
    for i, j in _pairs(len(z)):
        coords.extend(raw_mul(a, zc[i], raw_conj(a, zc[j])))
    return HermMatrix(len(z), tag, coords, _raw=True)


def mu2(z: Sequence[AlgElem], w: Sequence[AlgElem]) -> HermMatrix:
    """Polarization of nu2: nu2(z + w) - nu2(z) - nu2(w)."""
    tag = _common_tag(list(z) + list(w))
    if len(z) != len(w):
        raise DimensionMismatch("vectors of different lengths")
    a = tag.dim_a
    zc = [v.coords for v in z]
    wc = [v.coords for v in w]
    coords = [raw_norm_polar(a, p, q) for p, q in zip(zc, wc)]
    for i, j in _pairs(len(z)):
        s = raw_mul(a, zc[i], raw_conj(a, wc[j]))
        t = raw_mul(a, wc[i], raw_conj(a, zc[j]))
        coords.extend(x + y for x, y in zip(s, t))
    return HermMatrix(len(z), tag, coords, _raw=True)


# ---------------------------------------------------------------- products

def trace_form(A: HermMatrix, B: HermMatrix):
    A._same(B)
    n, a = A.n, A.a
    total = sum((x * y for x, y in zip(A.coords[:n], B.coords[:n])), 0)
    for k in range(n * (n - 1) // 2):
        o = n + a * k
        total = total + raw_norm_polar(a, A.coords[o:o + a], B.coords[o:o + a])
    return total


def _sym_product(A: HermMatrix, B: HermMatrix) -> HermMatrix:
    """AB + BA computed entrywise."""
    A._same(B)
    n, a = A.n, A.a
    fa = [[A.block(i, j) for j in range(n)] for i in range(n)]
    fb = [[B.block(i, j) for j in range(n)] for i in range(n)]

    def entry(i, j):
        acc = None
        for k in range(n):
            for p, q in ((fa[i][k], fb[k][j]), (fb[i][k], fa[k][j])):
                t = raw_mul(a, p, q)
                acc = t if acc is None else tuple(x + y for x, y in zip(acc, t))
        return acc

    coords = [raw_re(a, entry(i, i)) for i in range(n)]
    for i, j in _pairs(n):
        coords.extend(entry(i, j))
    return A._new(tuple(coords))


def jordan_mul(A: HermMatrix, B: HermMatrix) -> HermMatrix:
    return _sym_product(A, B) / 2


def quad_rep(A: HermMatrix, B: HermMatrix) -> HermMatrix:
    """U_A(B) = 2 A.(A.B) - (A.A).B, equal to ABA when entries associate."""
    return 2 * jordan_mul(A, jordan_mul(A, B)) - jordan_mul(jordan_mul(A, A), B)


def quad_rep_polar(A: HermMatrix, C: HermMatrix, B: HermMatrix) -> HermMatrix:
    """U_{A,C}(B) = U_{A+C}(B) - U_A(B) - U_C(B)."""
    return 2 * (jordan_mul(A, jordan_mul(C, B)) + jordan_mul(C, jordan_mul(A, B))
                - jordan_mul(jordan_mul(A, C), B))


# ---------------------------------------------------------------- cubic form

def _need3(*ms: HermMatrix) -> None:
    for m in ms:
        if m.n != 3:
            raise DimensionMismatch("operation defined for 3x3 matrices only")


def det3(M: HermMatrix):
    n, a = M.n, M.a
    if n == 1:
        return M.coords[0]
    if n == 2:
        return M.coords[0] * M.coords[1] - raw_norm(a, M.block(0, 1))
    if n != 3:
        raise DimensionMismatch("det3 needs n <= 3")
    al, be, ga = M.coords[:3]
    z3, z2, z1 = M.block(0, 1), M.block(0, 2), M.block(1, 2)
    cubic = raw_re(a, raw_mul(a, raw_mul(a, z3, z1), raw_conj(a, z2)))
    return (al * be * ga - al * raw_norm(a, z1) - be * raw_norm(a, z2)
            - ga * raw_norm(a, z3) + 2 * cubic)


def cross_rep(X: HermMatrix, Y: HermMatrix) -> HermMatrix:
    """The matrix R with trace_form(R, U) = polar_det3(X, Y, U) for all U."""
    _need3(X, Y)
    X._same(Y)
    a = X.a
    mul, cj = raw_mul, raw_conj
    x1, x2, x3 = X.coords[:3]
    y1, y2, y3 = Y.coords[:3]
    # off-diagonal slots mu1 = M23, mu2 = M31, mu3 = M12
    k1, k2, k3 = X.block(1, 2), X.block(2, 0), X.block(0, 1)
    h1, h2, h3 = Y.block(1, 2), Y.block(2, 0), Y.block(0, 1)

    def slot(xd, yd, kx, hy, p, q, r, s):
        t = tuple(u + v for u, v in zip(mul(a, p, q), mul(a, r, s)))
        t = cj(a, t)
        return tuple(-xd * h - yd * k + c for h, k, c in zip(hy, kx, t))

    r1 = slot(x1, y1, k1, h1, k2, h3, h2, k3)
    r2 = slot(x2, y2, k2, h2, k3, h1, h3, k1)
    r3 = slot(x3, y3, k3, h3, k1, h2, h1, k2)
    d = (x2 * y3 + x3 * y2 - raw_norm_polar(a, k1, h1),
         x1 * y3 + x3 * y1 - raw_norm_polar(a, k2, h2),
         x1 * y2 + x2 * y1 - raw_norm_polar(a, k3, h3))
    return X._new(d + r3 + cj(a, r2) + r1)


def polar_det3(A: HermMatrix, B: HermMatrix, C: HermMatrix):
    """Symmetric trilinear form with polar_det3(v, v, v) = 6 det3(v)."""
    return trace_form(cross_rep(A, B), C)


def grad_det(M: HermMatrix) -> LinForm:
    """u -> polar_det3(M, M, u) / 2."""
    return LinForm(cross_rep(M, M) / 2)


def sigma(A: HermMatrix, B: HermMatrix) -> LinForm:
    """u -> polar_det3(A, B, u)."""
    return LinForm(cross_rep(A, B))


def rank3(M: HermMatrix) -> int:
    if M.n > 3:
        raise DimensionMismatch("rank3 needs n <= 3")
    if not M:
        return 0
    if M.n == 1:
        return 1
    if M.n == 2:
        return 1 if det3(M) == 0 else 2
    if not cross_rep(M, M):
        return 1
    return 2 if det3(M) == 0 else 3


# ---------------------------------------------------------------- associative models

def realization(M: HermMatrix) -> list[list]:
    """Matrix over k realizing M when the algebra is associative.

    a=1: the symmetric matrix; a=2: the matrix of first components;
    a=4: the 2n x 2n block matrix.  Products of hermitian matrices map to
    matrix products.
    """
    n, a = M.n, M.a
    if a == 1:
        return [[M.block(i, j)[0] for j in range(n)] for i in range(n)]
    if a == 2:
        return [[M.block(i, j)[0] for j in range(n)] for i in range(n)]
    if a == 4:
        out = [[None] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                b = M.block(i, j)
                out[2 * i][2 * j], out[2 * i][2 * j + 1] = b[0], b[1]
                out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = b[2], b[3]
        return out
    raise MalformedInput("no associative realization for octonions")


def realization_det(M: HermMatrix):
    """Reduced norm of the associative realization."""
    r = realization(M)
    if M.a == 4:
        # block-diagonal J turns the realization skew; its pfaffian is the norm
        n = M.n
        f = M.field
        j = [[f.zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            j[2 * i][2 * i + 1], j[2 * i + 1][2 * i] = f.one, -f.one
        from .exactlin import mat_mul
        return pfaffian(mat_mul(r, j))
    return det(r, M.field)


def rank(M: HermMatrix) -> int:
    """Jordan rank: cubic-form strata for n <= 3, realization rank otherwise."""
    if M.n <= 3:
        return rank3(M)
    r = mat_rank(realization(M), M.field)
    return r // 2 if M.a == 4 else r


def random_herm(n: int, tag: AlgebraTag, s: Sampler) -> HermMatrix:
    return HermMatrix(n, tag, s.vector(herm_dim(n, tag.dim_a)), _raw=True)
