"""Exact linear algebra over the rationals and prime fields.

Vectors are sparse maps from basis index to a nonzero scalar. Scalars are
Python ints and :class:`fractions.Fraction` over the rationals and
:class:`ModP` over a prime field; there is no floating point anywhere.

Tensor products use the left-major convention ``index(i, j) = i * dim2 + j``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import config


class BudgetExceeded(RuntimeError):
    """A materialization would exceed the configured entry budget."""


class DimensionMismatch(ValueError):
    pass


class NotInSpan(ValueError):
    pass


# -- scalars ---------------------------------------------------------------


class ModP:
    """An element of the prime field with ``p`` elements."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _other(self, o) -> int:
        if isinstance(o, ModP):
            if o.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({o.p})")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, o):
        return ModP(self.v + self._other(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return ModP(self.v - self._other(o), self.p)

    def __rsub__(self, o):
        return ModP(self._other(o) - self.v, self.p)

    def __mul__(self, o):
        return ModP(self.v * self._other(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, o):
        w = self._other(o) % self.p
        if w == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModP(self.v * pow(w, -1, self.p), self.p)

    def __rtruediv__(self, o):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return ModP(self._other(o) * pow(self.v, -1, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, (ModP, int, Fraction)):
            return (self.v - self._other(o)) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"


def div(a, b):
    """Exact quotient; keeps integral rationals as ints."""
    if isinstance(a, ModP) or isinstance(b, ModP):
        return a / b
    if b == 1:
        return a
    if b == -1:
        return -a
    q = Fraction(a) / Fraction(b)
    return q.numerator if q.denominator == 1 else q


class Field:
    name: str
    characteristic: int
    zero = 0
    one = 1

    def coerce(self, x):
        raise NotImplementedError

    def parse(self, s: str):
        raise NotImplementedError

    def fmt(self, c) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<field {self.name}>"


class Rationals(Field):
    name = "q"
    characteristic = 0

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, ModP):
            raise TypeError("prime-field element used over the rationals")
        raise TypeError(f"cannot coerce {x!r} to a rational")

    def parse(self, s: str):
        s = s.strip()
        if "mod" in s:
            raise ValueError(f"prime-field scalar {s!r} in a rational manifest")
        if "." in s or "e" in s.lower():
            raise ValueError(f"scalar {s!r} is not an exact rational")
        return self.coerce(Fraction(s))

    def fmt(self, c) -> str:
        return str(Fraction(c))


class PrimeField(Field):
    characteristic: int

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.characteristic = p
        self.name = f"fp:{p}"
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def coerce(self, x):
        if isinstance(x, bool):
            raise TypeError("bool is not a field element")
        if isinstance(x, ModP):
            if x.p != self.characteristic:
                raise ValueError(f"element of GF({x.p}) used in GF({self.characteristic})")
            return x
        if isinstance(x, int):
            return ModP(x, self.characteristic)
        if isinstance(x, Fraction):
            return ModP(0, self.characteristic) + x
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {x!r} to GF({self.characteristic})")

    def parse(self, s: str):
        s = s.strip()
        if "mod" in s:
            value, _, modulus = s.partition("mod")
            if int(modulus) != self.characteristic:
                raise ValueError(f"scalar {s!r} is not in GF({self.characteristic})")
            s = value.strip()
        if "." in s:
            raise ValueError(f"scalar {s!r} is not exact")
        return self.coerce(Fraction(s))

    def fmt(self, c) -> str:
        return str(self.coerce(c).v)


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str) -> Field:
    """Parse ``q`` or ``fp:<p>``."""
    name = name.strip().lower()
    if name in ("q", "qq", "rationals"):
        return QQ
    if name.startswith("fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field {name!r}; expected q or fp:<p>")


# -- sparse dict kernels -----------------------------------------------------


def axpy(acc: dict, d: dict, c=1) -> None:
    """acc += c * d, dropping zeros."""
    for k, v in d.items():
        nv = acc.get(k, 0) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


def scaled(d: dict, c) -> dict:
    if not c:
        return {}
    out = {}
    for k, v in d.items():
        nv = c * v
        if nv:
            out[k] = nv
    return out


def kron(d1: dict, d2: dict, dim2: int) -> dict:
    out = {}
    for i, a in d1.items():
        base = i * dim2
        for j, b in d2.items():
            c = a * b
            if c:
                out[base + j] = c
    return out


# -- vectors -----------------------------------------------------------------


class Vec:
    """Sparse vector of fixed dimension with only nonzero entries stored."""

    __slots__ = ("dim", "d")

    def __init__(self, dim: int, entries: dict | None = None):
        d = {}
        for k, v in (entries or {}).items():
            if not 0 <= k < dim:
                raise IndexError(f"index {k} out of range for dim {dim}")
            if v:
                d[k] = v
        self.dim = dim
        self.d = d

    @classmethod
    def raw(cls, dim: int, d: dict) -> "Vec":
        v = cls.__new__(cls)
        v.dim = dim
        v.d = d
        return v

    @classmethod
    def basis(cls, dim: int, i: int, one=1) -> "Vec":
        if not 0 <= i < dim:
            raise IndexError(f"index {i} out of range for dim {dim}")
        return cls.raw(dim, {i: one})

    @classmethod
    def zero(cls, dim: int) -> "Vec":
        return cls.raw(dim, {})

    def _check(self, other: "Vec"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")

    def __add__(self, other: "Vec") -> "Vec":
        self._check(other)
        d = dict(self.d)
        axpy(d, other.d)
        return Vec.raw(self.dim, d)

    def __sub__(self, other: "Vec") -> "Vec":
        self._check(other)
        d = dict(self.d)
        axpy(d, other.d, -1)
        return Vec.raw(self.dim, d)

    def __neg__(self) -> "Vec":
        return Vec.raw(self.dim, {k: -v for k, v in self.d.items()})

    def __mul__(self, c) -> "Vec":
        return Vec.raw(self.dim, scaled(self.d, c))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vec):
            return NotImplemented
        return self.dim == other.dim and self.d == other.d

    def __getitem__(self, i: int):
        return self.d.get(i, 0)

    def __bool__(self) -> bool:
        return bool(self.d)

    def __len__(self) -> int:
        return self.dim

    def items(self):
        return sorted(self.d.items())

    @property
    def support(self) -> list[int]:
        return sorted(self.d)

    def tensor(self, other: "Vec") -> "Vec":
        return Vec.raw(self.dim * other.dim, kron(self.d, other.d, other.dim))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in self.items())
        return f"Vec({self.dim}, {{{body}}})"


def format_vec(d: dict, labels: Sequence[str] | None = None, fmt: Callable = str) -> str:
    """Human-readable linear combination of labelled basis vectors."""
    if not d:
        return "0"
    parts = []
    for k in sorted(d):
        c = d[k]
        name = labels[k] if labels is not None else f"e{k}"
        s = fmt(c)
        if s == "1":
            parts.append(name)
        elif s == "-1":
            parts.append(f"-{name}")
        else:
            parts.append(f"{s}*{name}")
    return " + ".join(parts).replace("+ -", "- ")


# -- linear maps -----------------------------------------------------------


class LinMap:
    """Linear map given by a column table or a memoized basis-image oracle.

    ``fn(i)`` returns the image of basis vector ``i`` as a dict or a Vec.
    """

    __slots__ = ("dom_dim", "cod_dim", "_fn", "_cols", "name")

    def __init__(self, dom_dim: int, cod_dim: int, fn: Callable | None = None,
                 columns: Sequence | dict | None = None, name: str = ""):
        self.dom_dim = dom_dim
        self.cod_dim = cod_dim
        self.name = name
        self._fn = fn
        self._cols: dict[int, dict] = {}
        if columns is not None:
            items = columns.items() if isinstance(columns, dict) else enumerate(columns)
            for i, c in items:
                d = c.d if isinstance(c, Vec) else c
                for k, v in d.items():
                    if not 0 <= k < cod_dim:
                        raise IndexError(f"column {i} has index {k} >= {cod_dim}")
                self._cols[i] = {k: v for k, v in d.items() if v}
            if fn is None:
                self._fn = lambda i: {}
        elif fn is None:
            raise ValueError("LinMap needs fn or columns")

    @property
    def materialized(self) -> bool:
        return len(self._cols) == self.dom_dim

    def coldict(self, i: int) -> dict:
        c = self._cols.get(i)
        if c is None:
            if not 0 <= i < self.dom_dim:
                raise IndexError(f"basis index {i} out of range for dim {self.dom_dim}")
            r = self._fn(i)
            c = r.d if isinstance(r, Vec) else {k: v for k, v in r.items() if v}
            self._cols[i] = c
        return c

    def col(self, i: int) -> Vec:
        return Vec.raw(self.cod_dim, self.coldict(i))

    def apply(self, d: dict) -> dict:
        out: dict = {}
        for i, c in d.items():
            axpy(out, self.coldict(i), c)
        return out

    def __call__(self, v: Vec) -> Vec:
        if v.dim != self.dom_dim:
            raise DimensionMismatch(f"map domain {self.dom_dim}, vector dim {v.dim}")
        return Vec.raw(self.cod_dim, self.apply(v.d))

    def columns(self) -> list[dict]:
        return [self.coldict(i) for i in range(self.dom_dim)]

    def materialize(self) -> "LinMap":
        return LinMap(self.dom_dim, self.cod_dim, columns=self.columns(), name=self.name)

    def first_difference(self, other: "LinMap") -> int | None:
        """Smallest basis index where the two maps differ, or None."""
        if (self.dom_dim, self.cod_dim) != (other.dom_dim, other.cod_dim):
            raise DimensionMismatch("maps have different shapes")
        for i in range(self.dom_dim):
            if self.coldict(i) != other.coldict(i):
                return i
        return None

    def equals(self, other: "LinMap") -> bool:
        return self.first_difference(other) is None

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns())

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<LinMap{tag} {self.dom_dim}->{self.cod_dim}>"


def identity(n: int, one=1) -> LinMap:
    return LinMap(n, n, fn=lambda i: {i: one}, name="id")


def zero_map(dom: int, cod: int) -> LinMap:
    return LinMap(dom, cod, fn=lambda i: {}, name="0")


def compose(f: LinMap, g: LinMap) -> LinMap:
    """f after g."""
    if g.cod_dim != f.dom_dim:
        raise DimensionMismatch(f"cannot compose {f} after {g}")
    return LinMap(g.dom_dim, f.cod_dim, fn=lambda i: f.apply(g.coldict(i)))


def tensor(f: LinMap, g: LinMap) -> LinMap:
    n2 = g.dom_dim
    c2 = g.cod_dim

    def fn(idx):
        i, j = divmod(idx, n2)
        return kron(f.coldict(i), g.coldict(j), c2)

    return LinMap(f.dom_dim * n2, f.cod_dim * c2, fn=fn)


def twist(dim_a: int, dim_b: int, one=1) -> LinMap:
    """A (x) B -> B (x) A swapping the legs."""

    def fn(idx):
        i, j = divmod(idx, dim_b)
        return {j * dim_a + i: one}

    return LinMap(dim_a * dim_b, dim_b * dim_a, fn=fn, name="twist")


def add_maps(f: LinMap, g: LinMap, c=1) -> LinMap:
    """f + c*g."""
    if (f.dom_dim, f.cod_dim) != (g.dom_dim, g.cod_dim):
        raise DimensionMismatch("maps have different shapes")

    def fn(i):
        d = dict(f.coldict(i))
        axpy(d, g.coldict(i), c)
        return d

    return LinMap(f.dom_dim, f.cod_dim, fn=fn)


# -- elimination -------------------------------------------------------------


class _Echelon:
    """Row echelon form keyed by pivot = smallest index, rows never modified.

    Optionally tracks, for every stored row, its expression ("history") in
    terms of the inputs.
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict, dict | None]] = {}

    def reduce(self, v: dict, h: dict | None = None) -> int | None:
        rows = self.rows
        while v:
            k = min(v)
            r = rows.get(k)
            if r is None:
                return k
            c = v[k]
            row, rh = r
            axpy(v, row, -c)
            if h is not None:
                axpy(h, rh, -c)
        return None

    def insert(self, v: dict, h: dict | None, pivot: int) -> None:
        c = v[pivot]
        if c == 1:
            self.rows[pivot] = (v, h)
        else:
            self.rows[pivot] = (
                {k: div(x, c) for k, x in v.items()},
                None if h is None else {k: div(x, c) for k, x in h.items()},
            )

    def add(self, v: dict, h: dict | None = None) -> bool:
        """Insert v; False when it was already in the span."""
        v = dict(v)
        h = None if h is None else dict(h)
        k = self.reduce(v, h)
        if k is None:
            return False
        self.insert(v, h, k)
        return True


def _back_substitute(rows: list[dict], pivots: list[int]) -> list[dict]:
    rows = [dict(r) for r in rows]
    for j in range(len(rows) - 1, -1, -1):
        pj = pivots[j]
        rj = rows[j]
        for i in range(j):
            c = rows[i].get(pj)
            if c:
                axpy(rows[i], rj, -c)
    return rows


def rref(vectors: Iterable[Vec], dim: int | None = None) -> list[Vec]:
    """Canonical reduced row echelon basis of the span (pivot-ordered)."""
    vectors = list(vectors)
    if dim is None:
        if not vectors:
            return []
        dim = vectors[0].dim
    ech = _Echelon()
    for v in vectors:
        if v.dim != dim:
            raise DimensionMismatch(f"{v.dim} vs {dim}")
        ech.add(v.d)
    pivots = sorted(ech.rows)
    rows = _back_substitute([ech.rows[p][0] for p in pivots], pivots)
    return [Vec.raw(dim, r) for r in rows]


def _materialization_guard(used: int) -> None:
    if used > config.settings.budget:
        raise BudgetExceeded(
            f"materialized {used} entries, budget is {config.settings.budget}"
        )


def _column_reduce(f: LinMap):
    ech = _Echelon()
    kernel = []
    used = 0
    for i in range(f.dom_dim):
        col = f.coldict(i)
        used += len(col) + 1
        _materialization_guard(used)
        v = dict(col)
        h = {i: 1}
        k = ech.reduce(v, h)
        if k is None:
            kernel.append(h)
        else:
            ech.insert(v, h, k)
    return ech, kernel


def nullspace(f: LinMap) -> list[Vec]:
    """Basis of the kernel of f in reduced echelon form."""
    _, kernel = _column_reduce(f)
    return rref([Vec.raw(f.dom_dim, h) for h in kernel], f.dom_dim)


def rank(f: LinMap) -> int:
    ech, _ = _column_reduce(f)
    return len(ech.rows)


def is_injective(f: LinMap) -> bool:
    return rank(f) == f.dom_dim


def is_bijective(f: LinMap) -> bool:
    return f.dom_dim == f.cod_dim and is_injective(f)


class Subspace:
    """Span of an independent family, with exact coordinates in that family."""

    def __init__(self, dim: int, basis: Sequence[Vec]):
        self.dim = dim
        self.basis = list(basis)
        self._ech = _Echelon()
        for a, v in enumerate(self.basis):
            if v.dim != dim:
                raise DimensionMismatch(f"{v.dim} vs {dim}")
            if not self._ech.add(v.d, {a: 1}):
                raise ValueError("basis vectors are linearly dependent")

    def __len__(self) -> int:
        return len(self.basis)

    def coords(self, d: dict) -> dict:
        """Coordinates of d in the given basis; raises NotInSpan."""
        v = dict(d)
        h: dict = {}
        self._ech.reduce(v, h)
        if v:
            raise NotInSpan("vector is not in the subspace")
        return {k: -c for k, c in h.items()}

    def contains(self, d: dict) -> bool:
        v = dict(d)
        self._ech.reduce(v)
        return not v

    def canonical(self) -> list[Vec]:
        return rref(self.basis, self.dim)


def subspace_intersect(U: Sequence[Vec], V: Sequence[Vec]) -> list[Vec]:
    """Basis (reduced echelon) of span U intersected with span V."""
    U = rref(U)
    V = rref(V)
    if not U or not V:
        return []
    if U[0].dim != V[0].dim:
        raise DimensionMismatch("subspaces live in different ambient spaces")
    dim = U[0].dim
    nu = len(U)
    cols = [u.d for u in U] + [scaled(v.d, -1) for v in V]
    stacked = LinMap(len(cols), dim, columns=cols)
    out = []
    for k in nullspace(stacked):
        acc: dict = {}
        for i, c in k.d.items():
            if i < nu:
                axpy(acc, U[i].d, c)
        out.append(Vec.raw(dim, acc))
    return rref(out, dim)


def same_span(U: Sequence[Vec], V: Sequence[Vec]) -> bool:
    return rref(U) == rref(V)
