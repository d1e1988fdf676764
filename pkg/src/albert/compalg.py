"""Split composition algebras of dimension 1, 2, 4 and 8.

Models: k; k+k with the swap; 2x2 matrices with the adjugate; and pairs of
2x2 matrices doubled with (a,b)(c,d) = (ac + conj(d) b, d a + b conj(c)).
Coordinates: (x,) ; (x, y) ; row-major (m11, m12, m21, m22) ; the two
quaternion blocks concatenated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, MalformedInput
from .exactlin import QQ, FieldSpec, Sampler, Subspace, image, transpose

DIMS = (1, 2, 4, 8)


@dataclass(frozen=True)
class AlgebraTag:
    dim_a: int
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.dim_a not in DIMS:
            raise MalformedInput(f"composition algebra dimension must be one of {DIMS}")

    def elem(self, coords: Sequence) -> "AlgElem":
        return AlgElem(self, coords)

    @property
    def one(self) -> "AlgElem":
        return AlgElem(self, _unit(self.dim_a, self.field), _raw=True)

    @property
    def zero(self) -> "AlgElem":
        return AlgElem(self, (self.field.zero,) * self.dim_a, _raw=True)

    def scalar(self, c) -> "AlgElem":
        return AlgElem(self, tuple(c * u for u in _unit(self.dim_a, self.field)), _raw=True)

    def basis(self) -> list["AlgElem"]:
        f = self.field
        out = []
        for i in range(self.dim_a):
            v = [f.zero] * self.dim_a
            v[i] = f.one
            out.append(AlgElem(self, tuple(v), _raw=True))
        return out


def _unit(a: int, f: FieldSpec) -> tuple:
    o, z = f.one, f.zero
    return {1: (o,), 2: (o, o), 4: (o, z, z, o), 8: (o, z, z, o, z, z, z, z)}[a]


# raw coordinate arithmetic; works for any ring-like scalars

def _qmul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def _qconj(x):
    return (x[3], -x[1], -x[2], x[0])


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _omul(x, y):
    a, b, c, d = x[:4], x[4:], y[:4], y[4:]
    return _add(_qmul(a, c), _qmul(_qconj(d), b)) + _add(_qmul(d, a), _qmul(b, _qconj(c)))


def raw_mul(a: int, x, y):
    if a == 8:
        return _omul(x, y)
    if a == 4:
        return _qmul(x, y)
    if a == 2:
        return (x[0] * y[0], x[1] * y[1])
    return (x[0] * y[0],)


def raw_conj(a: int, x):
    if a == 8:
        return _qconj(x[:4]) + tuple(-c for c in x[4:])
    if a == 4:
        return _qconj(x)
    if a == 2:
        return (x[1], x[0])
    return tuple(x)


def raw_norm(a: int, x):
    if a == 8:
        return x[0] * x[3] - x[1] * x[2] - x[4] * x[7] + x[5] * x[6]
    if a == 4:
        return x[0] * x[3] - x[1] * x[2]
    if a == 2:
        return x[0] * x[1]
    return x[0] * x[0]


def raw_norm_polar(a: int, x, y):
    if a == 8:
        return (x[0] * y[3] + x[3] * y[0] - x[1] * y[2] - x[2] * y[1]
                - x[4] * y[7] - x[7] * y[4] + x[5] * y[6] + x[6] * y[5])
    if a == 4:
        return x[0] * y[3] + x[3] * y[0] - x[1] * y[2] - x[2] * y[1]
    if a == 2:
        return x[0] * y[1] + x[1] * y[0]
    return 2 * x[0] * y[0]


def raw_re(a: int, x):
    if a == 1:
        return x[0]
    if a == 2:
        return (x[0] + x[1]) / 2
    return (x[0] + x[3]) / 2


class AlgElem:
    """Element of a split composition algebra."""

    __slots__ = ("tag", "coords")

    def __init__(self, tag: AlgebraTag, coords: Sequence, _raw: bool = False):
        if len(coords) != tag.dim_a:
            raise DimensionMismatch(f"{len(coords)} coordinates for an algebra of dimension {tag.dim_a}")
        self.tag = tag
        self.coords = tuple(coords) if _raw else tag.field.vec(coords)

    def _same(self, o: "AlgElem") -> None:
        if not isinstance(o, AlgElem) or o.tag != self.tag:
            raise MalformedInput("algebra elements with different tags")

    def _new(self, coords) -> "AlgElem":
        return AlgElem(self.tag, coords, _raw=True)

    def __add__(self, o):
        self._same(o)
        return self._new(_add(self.coords, o.coords))

    def __sub__(self, o):
        self._same(o)
        return self._new(tuple(x - y for x, y in zip(self.coords, o.coords)))

    def __neg__(self):
        return self._new(tuple(-x for x in self.coords))

    def __mul__(self, o):
        if isinstance(o, AlgElem):
            return alg_mul(self, o)
        return self._new(tuple(x * o for x in self.coords))

    def __rmul__(self, c):
        return self._new(tuple(c * x for x in self.coords))

    def __truediv__(self, c):
        return self._new(tuple(x / c for x in self.coords))

    def __eq__(self, o):
        return isinstance(o, AlgElem) and o.tag.dim_a == self.tag.dim_a and o.coords == self.coords

    def __hash__(self):
        return hash((self.tag.dim_a, self.coords))

    def __bool__(self):
        return any(x != 0 for x in self.coords)

    def __repr__(self):
        return f"AlgElem(a={self.tag.dim_a}, {list(self.coords)})"

    def conj(self) -> "AlgElem":
        return conj(self)

    def norm(self):
        return norm(self)


def alg_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    x._same(y)
    return x._new(raw_mul(x.tag.dim_a, x.coords, y.coords))


def conj(x: AlgElem) -> AlgElem:
    return x._new(raw_conj(x.tag.dim_a, x.coords))


def norm(x: AlgElem):
    return raw_norm(x.tag.dim_a, x.coords)


def norm_polar(x: AlgElem, y: AlgElem):
    x._same(y)
    return raw_norm_polar(x.tag.dim_a, x.coords, y.coords)


def re(x: AlgElem):
    return raw_re(x.tag.dim_a, x.coords)


def norm_gram(tag: AlgebraTag) -> list[list]:
    """Gram matrix of the polar form N(x,y) in the model basis."""
    b = tag.basis()
    return [[norm_polar(u, v) for v in b] for u in b]


def lmul_matrix(z: AlgElem) -> list[list]:
    """Matrix of x -> z x; columns are images of basis vectors."""
    return transpose([alg_mul(z, e).coords for e in z.tag.basis()])


def rmul_matrix(z: AlgElem) -> list[list]:
    return transpose([alg_mul(e, z).coords for e in z.tag.basis()])


def l_image(z: AlgElem) -> Subspace:
    return image(lmul_matrix(z), z.tag.field)


def r_image(z: AlgElem) -> Subspace:
    return image(rmul_matrix(z), z.tag.field)


def random_elem(tag: AlgebraTag, s: Sampler) -> AlgElem:
    return AlgElem(tag, s.vector(tag.dim_a), _raw=True)


def random_null(tag: AlgebraTag, s: Sampler) -> AlgElem:
    """A nonzero element of norm zero (none exists for dim 1)."""
    f, a = tag.field, tag.dim_a
    if a == 1:
        raise MalformedInput("the one-dimensional algebra has no nonzero null vectors")
    while True:
        if a == 2:
            x = (s.nonzero(), f.zero) if s.randint(0, 1) else (f.zero, s.nonzero())
        elif a == 4:
            u, v = s.vector(2), s.vector(2)
            x = (u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
        else:
            b = s.vector(4)
            g1, g2 = s.scalar(), s.scalar()
            # unimodular g = [[1, g1], [0, 1]] [[1, 0], [g2, 1]]
            g = (1 + g1 * g2, g1, g2, f.one)
            x = _qmul(b, g) + b
            x = _omul(x, s.vector(8)) if s.randint(0, 1) else x
        if any(c != 0 for c in x):
            return AlgElem(tag, x, _raw=True)
