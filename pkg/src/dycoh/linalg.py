"""Exact field arithmetic and dense linear algebra over Q and F_p.

Rationals are stored in numpy object arrays holding Python ``int`` or
``Fraction`` values (an integral Fraction is always collapsed to ``int``).
Prime-field elements are int64 arrays with representatives in ``[0, p)``.

Elimination over Q is fraction-free on integer rows (each row is scaled to
clear denominators and kept primitive by dividing out its gcd).  It runs on
int64 while a per-step bound proves no overflow can happen and falls back to
Python integers otherwise, so every result is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import numpy as np

__all__ = [
    "DimensionError",
    "Field",
    "Matrix",
    "QQ",
    "GF",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "kron",
]

_INT64_SAFE = 1 << 62


class DimensionError(ValueError):
    """Raised when operand shapes violate an operation's contract."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _canon_q(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return _canon_q(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact scalars; pass an int, Fraction or 'p/q' string")
    return _canon_q(Fraction(x))


_canon_q_vec = np.frompyfunc(_canon_q, 1, 1)


@dataclass(frozen=True)
class Field:
    """Ground field: ``p == 0`` means Q, otherwise F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (_is_prime(self.p) and self.p < 2**31):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {self.p}")

    @property
    def kind(self) -> str:
        return "rationals" if self.p == 0 else "prime-field"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def dtype(self):
        return object if self.p == 0 else np.int64

    def __str__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    # -- construction -----------------------------------------------------

    def array(self, values) -> np.ndarray:
        """Canonical array of field elements from nested ints/Fractions/strings."""
        if self.p == 0:
            a = np.array(values, dtype=object)
            if a.size == 0:
                return a
            return _canon_q_vec(a).astype(object)
        a = np.array(values, dtype=object)
        if a.size == 0:
            return np.zeros(a.shape, dtype=np.int64)
        return self.reduce(_canon_q_vec(a))

    def reduce(self, a) -> np.ndarray:
        """Bring an integer (or, over Q, any exact) array into canonical form."""
        a = np.asarray(a)
        if self.p == 0:
            if a.dtype != object:
                return a.astype(object)
            return a
        if a.dtype == object:
            return np.array(_canon_mod_vec(a, self.p), dtype=np.int64).reshape(a.shape)
        return np.mod(a, self.p).astype(np.int64)

    def zeros(self, shape) -> np.ndarray:
        if self.p == 0:
            z = np.empty(shape, dtype=object)
            z.fill(0)
            return z
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        e = self.zeros((n, n))
        for i in range(n):
            e[i, i] = 1
        return e

    def scalar(self, x):
        if self.p == 0:
            return _canon_q(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return _canon_q(Fraction(1) / Fraction(x))
        return pow(int(x), -1, self.p)

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        """Deterministic sample: entries in {-2..2} over Q, uniform over F_p."""
        if self.p == 0:
            return self.reduce(rng.integers(-2, 3, size=shape).astype(object))
        return rng.integers(0, self.p, size=shape).astype(np.int64)

    def small_int(self, a: np.ndarray, factor: int = 1) -> np.ndarray | None:
        """``a`` in the narrowest integer dtype holding ``factor * max|a|``, or None
        when ``a`` is not integral or the bound does not fit in int64."""
        mx = _int_maxabs(np.asarray(a))
        if mx is None:
            return None
        bound = mx * max(factor, 1)
        for dt in (np.int8, np.int16, np.int32):
            if bound < np.iinfo(dt).max // 2:
                return np.asarray(a).astype(dt)
        return np.asarray(a).astype(np.int64) if bound < _INT64_SAFE else None

    # -- exact products ---------------------------------------------------

    def einsum(self, subscripts: str, *ops: np.ndarray, keep_int: bool = False) -> np.ndarray:
        """Exact ``np.einsum``; uses int64 only when overflow is ruled out.

        With ``keep_int`` an integral result over Q stays int64 instead of
        being converted to canonical object form.
        """
        ops = [np.asarray(o) for o in ops]
        bound = _einsum_bound(subscripts, ops)
        if self.p:
            if keep_int and bound is not None and bound >= _INT64_SAFE:
                ops = [self.reduce(o) for o in ops]
                bound = _einsum_bound(subscripts, ops)
            if bound is not None and bound < _INT64_SAFE:
                ops64 = [o.astype(np.int64, copy=False) for o in ops]
                out = np.einsum(subscripts, *ops64)
                # keep_int: representatives are reduced lazily by the caller
                return out if keep_int else np.mod(out, self.p)
            objs = [o.astype(object) for o in ops]
            return self.reduce(np.einsum(subscripts, *objs))
        if bound is not None and bound < _INT64_SAFE:
            ops64 = [o.astype(np.int64, copy=False) for o in ops]
            out = np.einsum(subscripts, *ops64)
            return out if keep_int else out.astype(object)
        objs = [o.astype(object) for o in ops]
        out = np.einsum(subscripts, *objs)
        if np.ndim(out) == 0:
            return _canon_q(out)
        return _canon_q_vec(out).astype(object) if out.size else out

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact sum that keeps int64 over Q while it cannot overflow."""
        a, b = np.asarray(a), np.asarray(b)
        if a.dtype != object and b.dtype != object:
            ma, mb = _int_maxabs(a), _int_maxabs(b)
            if ma is not None and mb is not None and ma + mb < _INT64_SAFE:
                return a.astype(np.int64, copy=False) + b.astype(np.int64, copy=False)
        if self.p:
            return self.reduce(a) + self.reduce(b)
        return np.asarray(a, dtype=object) + np.asarray(b, dtype=object)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a)
        b = np.asarray(b)
        if a.ndim == 1 and b.ndim == 1:
            return self.einsum("i,i->", a, b)
        if a.ndim == 1:
            return self.einsum("i,ij->j", a, b)
        if b.ndim == 1:
            return self.einsum("ij,j->i", a, b)
        return self.einsum("ij,jk->ik", a, b)

    def is_zero(self, a) -> bool:
        a = np.asarray(a)
        if a.size == 0:
            return True
        return not np.any(a != 0)

    def parse(self, text) -> object:
        """Parse a JSON-style scalar: an int or a ``"p/q"`` string."""
        if isinstance(text, bool):
            raise ValueError(f"not a scalar: {text!r}")
        if isinstance(text, int):
            return self.scalar(text)
        if isinstance(text, str) and re.fullmatch(r"\s*-?\d+\s*(/\s*-?\d+\s*)?", text):
            return self.scalar(Fraction(text.replace(" ", "")))
        raise ValueError(f"not an exact scalar: {text!r} (use an int or a 'p/q' string)")

    def to_json(self, x):
        x = self.scalar(x)
        if isinstance(x, Fraction):
            return f"{x.numerator}/{x.denominator}"
        return int(x)


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _canon_mod(x, p):
    if isinstance(x, Fraction):
        return (x.numerator * pow(x.denominator, -1, p)) % p
    return int(x) % p


_canon_mod_vec = np.frompyfunc(_canon_mod, 2, 1)


def _int_maxabs(a: np.ndarray) -> int | None:
    """max |entry| if every entry is an integer, else None (C-level scans only)."""
    if a.size == 0:
        return 0
    if a.dtype != object:
        if not np.issubdtype(a.dtype, np.integer):
            return None
        return int(max(a.max(), -a.min()))
    vals = a.ravel().tolist()
    if not set(map(type, vals)) <= {int}:
        return None
    return max(max(vals), -min(vals))


def _all_int(a: np.ndarray) -> bool:
    return _int_maxabs(a) is not None


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(map(abs, a.ravel().tolist()))
    return int(np.abs(a).max())


def _einsum_bound(subscripts: str, ops) -> int | None:
    """Upper bound on |entry| of the einsum result, or None if not integral."""
    if "->" in subscripts:
        lhs, rhs = subscripts.split("->")
    else:
        lhs, rhs = subscripts, None
    terms = lhs.split(",")
    if "." in lhs:
        return None
    sizes: dict[str, int] = {}
    for term, op in zip(terms, ops):
        for ch, n in zip(term, op.shape):
            sizes[ch] = n
    if rhs is None:
        rhs = "".join(sorted(c for c in sizes if lhs.count(c) == 1))
    summed = 1
    for ch, n in sizes.items():
        if ch not in rhs:
            summed *= n
    bound = max(summed, 1)
    for op in ops:
        mx = _int_maxabs(op)
        if mx is None:
            return None
        bound *= max(mx, 1)
    return bound


# -- Matrix ------------------------------------------------------------------


class Matrix:
    """Dense exact matrix; entries are canonical for ``field``."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Field, data):
        if isinstance(data, np.ndarray) and field.p and np.issubdtype(data.dtype, np.integer):
            a = field.reduce(data)
        else:
            a = field.array(data)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        if a.ndim != 2:
            raise DimensionError(f"matrix data must be 2-dimensional, got shape {a.shape}")
        a.setflags(write=False)
        self.field = field
        self._a = a

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, field.eye(n))

    @classmethod
    def column(cls, field: Field, values) -> "Matrix":
        return cls(field, field.array(list(values)).reshape(-1, 1))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple:
        return tuple(self._a.flat)

    @property
    def array(self) -> np.ndarray:
        return self._a

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self._a.T.copy())

    def __getitem__(self, idx):
        return self._a[idx]

    def tolist(self) -> list:
        return self._a.tolist()

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.field, self.shape, self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce(self._a + other._a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.reduce(self._a - other._a))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.reduce(-self._a))

    def __mul__(self, c) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix(self.field, self.field.reduce(self._a * c))

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self.field.matmul(self._a, other._a))

    def is_zero(self) -> bool:
        return self.field.is_zero(self._a)

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.tolist()!r})"


# -- elimination ---------------------------------------------------------------


def _integer_rows(a: np.ndarray) -> np.ndarray:
    """Scale each row of a rational matrix to a primitive integer row."""
    out = np.empty(a.shape, dtype=object)
    for i, row in enumerate(a):
        dens = [x.denominator for x in row if isinstance(x, Fraction)]
        m = reduce(lcm, dens, 1)
        ints = [int(x * m) for x in row]
        g = reduce(gcd, ints, 0) or 1
        out[i] = [v // g for v in ints]
    return out


def _shrink(block: np.ndarray) -> np.ndarray:
    """Divide each row of an integer block by the gcd of its entries."""
    if block.dtype == object:
        g = np.array([reduce(gcd, row, 0) or 1 for row in block], dtype=object)
        return block // g[:, None]
    g = np.gcd.reduce(block, axis=1)
    g[g == 0] = 1
    return block // g[:, None]


def _echelon_q(a: np.ndarray, reduced: bool, ncols_pivot: int | None = None):
    """Fraction-free elimination over Q; returns (integer rows, pivots)."""
    m = _integer_rows(a) if a.size else a.astype(object)
    nrows, ncols = m.shape
    limit = ncols if ncols_pivot is None else ncols_pivot
    if m.size and _maxabs(m) < (1 << 30):
        m = m.astype(np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        if reduced:
            targets = np.nonzero(m[:, c])[0]
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.nonzero(m[r + 1 :, c])[0]
        if targets.size:
            if m.dtype != object:
                bound = 2 * _maxabs(m[r]) * max(_maxabs(m[targets]), 1)
                if bound >= _INT64_SAFE:
                    m = m.astype(object)
            pv = m[r, c]
            block = m[targets] * pv - np.outer(m[targets, c], m[r])
            m[targets] = _shrink(block)
        pivots.append(c)
        r += 1
    return m, pivots


def _echelon_p(a: np.ndarray, p: int, reduced: bool, ncols_pivot: int | None = None):
    m = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = m.shape
    limit = ncols if ncols_pivot is None else ncols_pivot
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        if reduced:
            targets = np.nonzero(m[:, c])[0]
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.nonzero(m[r + 1 :, c])[0]
        if targets.size:
            if p < (1 << 31):
                m[targets] = (m[targets] - np.outer(m[targets, c], m[r]) % p) % p
            else:  # pragma: no cover - guarded by Field
                raise ValueError("prime too large")
        pivots.append(c)
        r += 1
    return m, pivots


def _rref_array(field: Field, a: np.ndarray, ncols_pivot: int | None = None):
    """Reduced row echelon form of an array; returns (rref, pivots)."""
    a = np.asarray(a)
    if a.size == 0:
        return field.zeros(a.shape), []
    if field.p:
        m, piv = _echelon_p(a, field.p, reduced=True, ncols_pivot=ncols_pivot)
        return m, piv
    m, piv = _echelon_q(a, reduced=True, ncols_pivot=ncols_pivot)
    out = field.zeros(m.shape)
    for i, c in enumerate(piv):
        pv = int(m[i, c])
        out[i] = [_canon_q(Fraction(int(x), pv)) for x in m[i]]
    for i in range(len(piv), m.shape[0]):
        out[i] = [int(x) for x in m[i]]
    return out, piv


def rank_array(field: Field, a: np.ndarray) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    if a.shape[0] > a.shape[1]:
        a = a.T
    if field.p:
        _, piv = _echelon_p(a, field.p, reduced=False)
    else:
        _, piv = _echelon_q(a, reduced=False)
    return len(piv)


def kernel_array(field: Field, a: np.ndarray) -> np.ndarray:
    """Canonical free-variable kernel basis, one basis vector per column."""
    a = np.asarray(a)
    nrows, ncols = a.shape
    if nrows == 0 or a.size == 0 or not np.any(a != 0):
        return field.eye(ncols)
    r, piv = _rref_array(field, a)
    pivots = set(piv)
    free = [j for j in range(ncols) if j not in pivots]
    k = field.zeros((ncols, len(free)))
    for t, j in enumerate(free):
        k[j, t] = 1
        for i, c in enumerate(piv):
            k[c, t] = (-int(r[i, j])) % field.p if field.p else _canon_q(-r[i, j])
    return k


def solve_array(field: Field, a: np.ndarray, b: np.ndarray):
    """Particular solutions of ``a x = b`` for every column of ``b``.

    Returns ``(x, ok)`` where ``x`` has one column per right-hand side (free
    variables set to zero) and ``ok`` flags the consistent columns.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise DimensionError(f"rows(a)={a.shape[0]} but len(b)={b.shape[0]}")
    n = a.shape[1]
    k = b.shape[1]
    if a.shape[0] == 0:
        x = field.zeros((n, k))
        ok = np.ones(k, dtype=bool)
    else:
        aug = np.concatenate([np.asarray(a, dtype=object), np.asarray(b, dtype=object)], axis=1)
        aug = field.reduce(aug) if field.p else aug
        r, piv = _rref_array(field, aug, ncols_pivot=n)
        rk = len(piv)
        ok = np.array([field.is_zero(r[rk:, n + j]) for j in range(k)], dtype=bool)
        x = field.zeros((n, k))
        for i, c in enumerate(piv):
            x[c] = r[i, n:]
    if vec:
        return x[:, 0], bool(ok[0])
    return x, ok


# -- public Matrix API -------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns (leftmost pivots)."""
    r, piv = _rref_array(m.field, m.array)
    return Matrix(m.field, r) if m.array.size else Matrix.zeros(m.field, m.rows, m.cols), len(piv), list(piv)


def rank(m: Matrix) -> int:
    return rank_array(m.field, m.array)


def kernel_basis(m: Matrix) -> Matrix:
    k = kernel_array(m.field, m.array)
    return Matrix(m.field, k) if k.size else Matrix.zeros(m.field, m.cols, k.shape[1])


def solve(a: Matrix, b) -> Matrix | None:
    """Particular solution of ``a x = b`` with free variables zero, or None."""
    bv = b.array if isinstance(b, Matrix) else a.field.array(list(b))
    if isinstance(b, Matrix):
        if b.cols != 1:
            raise DimensionError(f"b must be a column vector, got shape {b.shape}")
        bv = bv[:, 0]
    if bv.shape[0] != a.rows:
        raise DimensionError(f"rows(a)={a.rows} but len(b)={bv.shape[0]}")
    x, ok = solve_array(a.field, a.array, bv)
    if not ok:
        return None
    return Matrix(a.field, np.asarray(x).reshape(-1, 1)) if a.cols else Matrix.zeros(a.field, 0, 1)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: (a⊗b)[i*rows(b)+k, j*cols(b)+l] = a[i,j]*b[k,l]."""
    a._check(b)
    out = a.field.einsum("ij,kl->ikjl", a.array, b.array)
    return Matrix(a.field, np.asarray(out).reshape(a.rows * b.rows, a.cols * b.cols))
