"""Exact scalars and canonical subspace arithmetic.

Rationals are gmpy2 ``mpq`` values, prime-field residues are :class:`Fp`
instances.  Linear-algebra helpers work on plain lists/tuples of such
scalars; Python ints are accepted everywhere and coerced on entry.
"""
from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

from gmpy2 import is_prime, mpq

from .errors import DimensionMismatch, FieldMismatch, MalformedInput, PreconditionError

MPQ = type(mpq())
T = TypeVar("T")

SMALL_SCALARS = tuple(range(-5, 6))
GENERIC_TRIES = 64
DEFAULT_PRIME = 10007


class Fp:
    """Residue class modulo an odd prime."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, o):
        if type(o) is Fp:
            if o.p != self.p:
                raise FieldMismatch(f"GF({self.p}) and GF({o.p}) mixed")
            return o.v
        if isinstance(o, int):
            return o
        return None

    def __add__(self, o):
        w = self._val(o)
        return NotImplemented if w is None else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._val(o)
        return NotImplemented if w is None else Fp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._val(o)
        return NotImplemented if w is None else Fp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._val(o)
        return NotImplemented if w is None else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        w = self._val(o)
        if w is None:
            return NotImplemented
        if w % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        w = self._val(o)
        if w is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Fp(w * pow(self.v, -1, self.p), self.p)

    def __pow__(self, e: int):
        if e < 0:
            return Fp(pow(pow(self.v, -1, self.p), -e, self.p), self.p)
        return Fp(pow(self.v, e, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, o):
        if type(o) is Fp:
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise MalformedInput("rational field takes no modulus")
        elif self.kind == "Fp":
            if self.p is None or self.p == 2 or not is_prime(self.p):
                raise MalformedInput(f"modulus must be an odd prime, got {self.p}")
        else:
            raise MalformedInput(f"unknown field kind {self.kind!r}")

    @property
    def name(self) -> str:
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Fp:"):
            try:
                return cls("Fp", int(text[3:]))
            except ValueError as exc:
                raise MalformedInput(f"bad field {text!r}") from exc
        raise MalformedInput(f"bad field {text!r}")

    def __call__(self, x):
        """Coerce an int, Fraction, mpq, numeric string or field element."""
        if self.kind == "Q":
            if type(x) is MPQ:
                return x
            if isinstance(x, bool):
                return mpq(int(x))
            if isinstance(x, (int, Fraction)):
                return mpq(x)
            if isinstance(x, str):
                return self.parse_scalar(x)
            if type(x) is Fp:
                raise FieldMismatch("residue used as a rational")
        else:
            p = self.p
            if type(x) is Fp:
                if x.p != p:
                    raise FieldMismatch(f"GF({x.p}) value in GF({p})")
                return x
            if isinstance(x, int):
                return Fp(x, p)
            if isinstance(x, (Fraction, MPQ)):
                num, den = int(x.numerator), int(x.denominator)
                if den % p == 0:
                    raise ZeroDivisionError(f"{x} has no residue mod {p}")
                return Fp(num * pow(den, -1, p), p)
            if isinstance(x, str):
                return self.parse_scalar(x)
        raise FieldMismatch(f"cannot read {x!r} in {self.name}")

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse_scalar(self, text: str):
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad scalar {text!r}") from exc
        if self.kind == "Q":
            return mpq(q)
        return self(q)

    def fmt(self, x) -> str:
        x = self(x)
        return str(x) if self.kind == "Q" else str(x.v)

    def vec(self, v: Iterable) -> tuple:
        return tuple(self(c) for c in v)

    def mat(self, m: Iterable[Iterable]) -> list[list]:
        return [[self(c) for c in row] for row in m]


QQ = FieldSpec("Q")


def GF(p: int = DEFAULT_PRIME) -> FieldSpec:
    return FieldSpec("Fp", p)


def field_of(values: Iterable) -> FieldSpec | None:
    """The field shared by a collection of scalars; None if only ints occur."""
    found = None
    for x in values:
        if isinstance(x, int):
            continue
        if type(x) is Fp:
            f = GF(x.p)
        elif isinstance(x, (MPQ, Fraction)):
            f = QQ
        else:
            raise FieldMismatch(f"not a scalar: {x!r}")
        if found is None:
            found = f
        elif f != found:
            raise FieldMismatch(f"mixed fields {found.name} and {f.name}")
    return found


class Dual:
    """Element a + b·eps of k[eps]/(eps^2)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    @staticmethod
    def _parts(o):
        if type(o) is Dual:
            return o.a, o.b
        return o, 0

    def __add__(self, o):
        c, d = self._parts(o)
        return Dual(self.a + c, self.b + d)

    __radd__ = __add__

    def __sub__(self, o):
        c, d = self._parts(o)
        return Dual(self.a - c, self.b - d)

    def __rsub__(self, o):
        c, d = self._parts(o)
        return Dual(c - self.a, d - self.b)

    def __mul__(self, o):
        c, d = self._parts(o)
        return Dual(self.a * c, self.a * d + self.b * c)

    __rmul__ = __mul__

    def __truediv__(self, o):
        c, d = self._parts(o)
        return Dual(self.a / c, (self.b * c - self.a * d) / (c * c))

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __eq__(self, o):
        c, d = self._parts(o)
        return self.a == c and self.b == d

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Dual({self.a!r}, {self.b!r})"


def dual_parts(x) -> tuple:
    return (x.a, x.b) if type(x) is Dual else (x, 0)


# ---------------------------------------------------------------- matrices

def zeros(m: int, n: int, field: FieldSpec) -> list[list]:
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(n: int, field: FieldSpec) -> list[list]:
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if a and b and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch("matrix/vector size mismatch")
    return [sum((x * y for x, y in zip(row, v)), 0) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), 0)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def is_zero_vec(v: Iterable) -> bool:
    return all(x == 0 for x in v)


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        row = [x * inv for x in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _prepare(rows: Sequence[Sequence], field: FieldSpec | None, ncols: int | None):
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise DimensionMismatch("ambient dimension needed for an empty row list")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise DimensionMismatch(f"row of length {len(r)} in ambient dimension {ncols}")
    seen = field_of(x for r in rows for x in r)
    if field is None:
        field = seen or QQ
    elif seen is not None and seen != field:
        raise FieldMismatch(f"{seen.name} data given for {field.name}")
    return [[field(x) for x in r] for r in rows], field, ncols


def rank(m: Sequence[Sequence], field: FieldSpec | None = None) -> int:
    if not m or not m[0]:
        return 0
    rows, field, n = _prepare(m, field, None)
    return len(_rref(rows, n)[1])


def det(m: Sequence[Sequence], field: FieldSpec | None = None):
    rows, field, n = _prepare(m, field, None)
    if len(rows) != n:
        raise DimensionMismatch("determinant of a non-square matrix")
    a = rows
    d = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] * inv
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def pfaffian(m: Sequence[Sequence]):
    """Pfaffian by expansion along the first row (small even sizes)."""
    n = len(m)
    if n % 2:
        return 0
    if n == 0:
        return 1

    def pf(idx: tuple[int, ...]):
        if not idx:
            return 1
        i, rest = idx[0], idx[1:]
        total = 0
        for k, j in enumerate(rest):
            a = m[i][j]
            if a != 0:
                term = a * pf(rest[:k] + rest[k + 1:])
                total = total + term if k % 2 == 0 else total - term
        return total

    return pf(tuple(range(n)))


def solve(a: Sequence[Sequence], b: Sequence, field: FieldSpec | None = None) -> tuple:
    """A solution x of a·x = b (free variables set to zero)."""
    if len(a) != len(b):
        raise DimensionMismatch("system and right-hand side differ in length")
    n = len(a[0]) if a else 0
    rows, field, _ = _prepare([list(r) + [y] for r, y in zip(a, b)], field, n + 1)
    red, piv = _rref(rows, n + 1)
    if piv and piv[-1] == n:
        raise PreconditionError("linear system is inconsistent")
    x = [field.zero] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def inverse(a: Sequence[Sequence], field: FieldSpec | None = None) -> list[list]:
    n = len(a)
    rows, field, _ = _prepare(a, field, None)
    aug = [r + e for r, e in zip(rows, identity(n, field))]
    red, piv = _rref(aug, 2 * n)
    if piv != list(range(n)):
        raise PreconditionError("matrix is singular")
    return [r[n:] for r in red]


# ---------------------------------------------------------------- subspaces

@dataclass(frozen=True)
class Subspace:
    """Row span stored as its unique reduced row-echelon basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], field: FieldSpec | None = None,
             ambient_dim: int | None = None) -> "Subspace":
        return rref(list(vectors), field=field, ambient_dim=ambient_dim)

    @classmethod
    def full(cls, n: int, field: FieldSpec = QQ) -> "Subspace":
        return rref(identity(n, field), field, n)

    @classmethod
    def zero(cls, n: int, field: FieldSpec = QQ) -> "Subspace":
        return cls(field, n, (), ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.basis)

    def _check(self, v: Sequence) -> list:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        return [self.field(x) for x in v]

    def reduce(self, v: Sequence) -> tuple:
        """Canonical representative of v modulo this subspace (zero on pivots)."""
        w = self._check(v)
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            if c != 0:
                w = [x - c * y for x, y in zip(w, row)]
        return tuple(w)

    def __contains__(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))

    def contains(self, v: Sequence) -> bool:
        return v in self

    def coords(self, v: Sequence) -> tuple:
        """Coefficients of v in the stored basis."""
        w = self._check(v)
        if not is_zero_vec(self.reduce(w)):
            raise PreconditionError("vector is not in the subspace")
        return tuple(w[p] for p in self.pivots)

    def combo(self, coeffs: Sequence) -> tuple:
        if len(coeffs) != self.dim:
            raise DimensionMismatch("wrong number of coefficients")
        out = [self.field.zero] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c != 0:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def issubspace(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return meet(self, other)


def rref(rows: Sequence[Sequence], field: FieldSpec | None = None,
         ambient_dim: int | None = None) -> Subspace:
    prepared, field, n = _prepare(rows, field, ambient_dim)
    red, piv = _rref(prepared, n)
    return Subspace(field, n, tuple(tuple(r) for r in red), tuple(piv))


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")
    if a.field != b.field:
        raise FieldMismatch(f"subspaces over {a.field.name} and {b.field.name}")


def join(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return rref(list(a.basis) + list(b.basis), a.field, a.ambient_dim)


def perp(a: Subspace) -> Subspace:
    """Orthogonal of a for the standard dot product (a subspace of the dual)."""
    return kernel(a.basis, a.field, a.ambient_dim)


def meet(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    return perp(join(perp(a), perp(b)))


def kernel(m: Sequence[Sequence], field: FieldSpec | None = None,
           ncols: int | None = None) -> Subspace:
    """{v : m·v = 0} for m acting on column vectors."""
    if not m:
        if ncols is None:
            raise DimensionMismatch("source dimension needed for an empty matrix")
        return Subspace.full(ncols, field or QQ)
    rows, field, n = _prepare(m, field, ncols)
    red, piv = _rref(rows, n)
    pset = set(piv)
    vecs = []
    for f in range(n):
        if f in pset:
            continue
        v = [field.zero] * n
        v[f] = field.one
        for row, p in zip(red, piv):
            v[p] = -row[f]
        vecs.append(v)
    return rref(vecs, field, n)


def image(m: Sequence[Sequence], field: FieldSpec | None = None,
          nrows: int | None = None) -> Subspace:
    """Column space of m."""
    if not m or not m[0]:
        if nrows is None and not m:
            raise DimensionMismatch("target dimension needed for an empty matrix")
        return Subspace.zero(nrows if nrows is not None else len(m), field or QQ)
    return rref(transpose(m), field, len(m))


def annihilator(a: Subspace, pairing: Sequence[Sequence]) -> Subspace:
    """{w : s^T·G·w = 0 for all s in a}."""
    n = a.ambient_dim
    if len(pairing) != n or any(len(r) != n for r in pairing):
        raise DimensionMismatch("pairing size does not match the ambient dimension")
    g = a.field.mat(pairing)
    if rank(g, a.field) != n:
        raise PreconditionError("pairing is degenerate")
    if not a.basis:
        return Subspace.full(n, a.field)
    return kernel(mat_mul([list(b) for b in a.basis], g), a.field, n)


class Quotient:
    """The quotient big/small with its canonical complement basis.

    The complement is the RREF of the reductions of big's basis modulo
    small, so coordinates depend only on the two subspaces.
    """

    def __init__(self, big: Subspace, small: Subspace):
        _same_ambient(big, small)
        if not small.issubspace(big):
            raise PreconditionError("quotient of a space by a non-subspace")
        self.big = big
        self.small = small
        self.complement = rref([small.reduce(b) for b in big.basis], big.field, big.ambient_dim)

    @classmethod
    def of_ambient(cls, small: Subspace) -> "Quotient":
        return cls(Subspace.full(small.ambient_dim, small.field), small)

    @property
    def dim(self) -> int:
        return self.complement.dim

    @property
    def field(self) -> FieldSpec:
        return self.big.field

    def reduce(self, v: Sequence) -> tuple:
        """Canonical representative of the class of v."""
        return self.small.reduce(v)

    def coords(self, v: Sequence) -> tuple:
        r = self.small.reduce(v)
        try:
            return self.complement.coords(r)
        except PreconditionError:
            raise PreconditionError("vector does not lie in the numerator space") from None

    def lift(self, coords: Sequence) -> tuple:
        return self.complement.combo(coords)

    def basis(self) -> tuple[tuple, ...]:
        return self.complement.basis

    def image_of(self, sub: Subspace) -> Subspace:
        """Image of a subspace of big, as a span of canonical representatives."""
        return rref([self.reduce(b) for b in sub.basis], self.field, self.big.ambient_dim)

    def preimage(self, reps: Subspace) -> Subspace:
        return join(self.small, reps)


# ---------------------------------------------------------------- sampling

def derive_seed(*parts) -> int:
    """Stable 63-bit seed from a master seed and trial labels."""
    digest = hashlib.sha256(":".join(map(str, parts)).encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


class Sampler:
    """Deterministic source of small scalars."""

    def __init__(self, seed: int, field: FieldSpec = QQ):
        self.seed = seed
        self.field = field
        self.rng = random.Random(seed)

    def scalar(self):
        return self.field(self.rng.choice(SMALL_SCALARS))

    def nonzero(self):
        while True:
            c = self.rng.choice(SMALL_SCALARS)
            if c:
                return self.field(c)

    def vector(self, n: int) -> tuple:
        return tuple(self.scalar() for _ in range(n))

    def matrix(self, m: int, n: int) -> list[list]:
        return [list(self.vector(n)) for _ in range(m)]

    def invertible(self, n: int) -> list[list]:
        while True:
            m = self.matrix(n, n)
            if det(m, self.field) != 0:
                return m

    def choice(self, seq):
        return self.rng.choice(seq)

    def randint(self, a: int, b: int) -> int:
        return self.rng.randint(a, b)


def sample_vector(dim: int, rng_seed: int, field: FieldSpec = QQ) -> tuple:
    return Sampler(rng_seed, field).vector(dim)


def generic(make: Callable[[int], T], ok: Callable[[T], bool], seed: int,
            tries: int = GENERIC_TRIES, what: str = "element") -> T:
    """First make(seed + i) accepted by ok, for i < tries."""
    for i in range(tries):
        cand = make(seed + i)
        if ok(cand):
            return cand
    raise PreconditionError(f"no generic {what} found in {tries} tries from seed {seed}")
