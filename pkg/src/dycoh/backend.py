"""Cochains and the interface every complex backend implements.

A degree-n cochain is stored as an array of shape ``(k,)*n + (d,)`` where
``k`` counts the "atoms" indexing a component (group elements, or a basis
of H) and ``d`` is the dimension of the coefficient space the components
are read on.  All operations are implemented batched: an operand array
carries a leading batch axis, and binary operations return the outer
product of batches.  Single-cochain methods are thin wrappers.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from .linalg import Field, kernel_array

DEFAULT_MEMORY_CAP = 200_000


class MemoryCapError(RuntimeError):
    """Requested degree would allocate more cochain coordinates than allowed."""


class Cochain:
    """A homogeneous cochain of fixed degree with exact coefficients."""

    __slots__ = ("field", "degree", "data")

    def __init__(self, field: Field, degree: int, data):
        self.field = field
        self.degree = int(degree)
        self.data = field.reduce(np.asarray(data))
        if self.data.ndim != self.degree + 1:
            raise ValueError(f"degree {degree} cochain needs {degree + 1} axes, got shape {self.data.shape}")

    @property
    def coords(self) -> np.ndarray:
        return self.data.reshape(-1)

    def _same(self, other: "Cochain"):
        if not isinstance(other, Cochain) or other.degree != self.degree or other.data.shape != self.data.shape:
            raise ValueError("cochains of different degree or shape")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.field, self.degree, self.data + other.data)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.field, self.degree, self.data - other.data)

    def __neg__(self) -> "Cochain":
        return Cochain(self.field, self.degree, -self.data)

    def __rmul__(self, c) -> "Cochain":
        return Cochain(self.field, self.degree, self.data * self.field.scalar(c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cochain)
            and other.degree == self.degree
            and other.data.shape == self.data.shape
            and bool(np.all(self.data == other.data))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return self.field.is_zero(self.data)

    def __repr__(self) -> str:
        return f"Cochain(degree={self.degree}, shape={self.data.shape}, nonzero={int(np.count_nonzero(self.data))})"


class ComplexBackend(ABC):
    """Concrete model of the complex C^n = Nat(U ⊗ F^n, F^n)."""

    field: Field
    atoms: int
    coeff_dim: int
    name: str = "backend"
    memory_cap: int = DEFAULT_MEMORY_CAP

    # -- shapes -------------------------------------------------------------

    def shape(self, n: int) -> tuple[int, ...]:
        return (self.atoms,) * n + (self.coeff_dim,)

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        return self.atoms**n * self.coeff_dim

    def _guard(self, n: int):
        if self.dim(n) > self.memory_cap:
            raise MemoryCapError(
                f"degree {n} has {self.dim(n)} coordinates, above the cap of {self.memory_cap}; "
                "lower --max-degree or raise the cap"
            )

    def zero(self, n: int) -> Cochain:
        return Cochain(self.field, n, self.field.zeros(self.shape(n)))

    def cochain(self, n: int, coords) -> Cochain:
        arr = self.field.array(coords) if not isinstance(coords, np.ndarray) else self.field.reduce(coords)
        return Cochain(self.field, n, arr.reshape(self.shape(n)))

    def basis(self, n: int) -> list[Cochain]:
        self._guard(n)
        eye = self.field.eye(self.dim(n))
        return [Cochain(self.field, n, eye[j].reshape(self.shape(n))) for j in range(self.dim(n))]

    def random(self, n: int, rng: np.random.Generator) -> Cochain:
        self._guard(n)
        return Cochain(self.field, n, self.field.random(self.shape(n), rng))

    # -- batched primitives (implemented by subclasses) --------------------

    @abstractmethod
    def delta_batch(self, fs: np.ndarray, n: int) -> np.ndarray:
        """(B,)+shape(n) -> (B,)+shape(n+1)."""

    @abstractmethod
    def cup_batch(self, fs: np.ndarray, m: int, gs: np.ndarray, n: int) -> np.ndarray:
        """(Bf,)+shape(m), (Bg,)+shape(n) -> (Bf, Bg)+shape(m+n)."""

    @abstractmethod
    def sqcup_batch(self, fs: np.ndarray, m: int, gs: np.ndarray, n: int) -> np.ndarray:
        ...

    @abstractmethod
    def diamond_batch(self, fs: np.ndarray, m: int, gs: np.ndarray, n: int, i: int) -> np.ndarray:
        """f ◇_i g for all pairs; zero for i outside [0, m)."""

    @abstractmethod
    def pi(self) -> Cochain:
        """The degree-2 cochain π = ε ⊗ F ⊗ F."""

    @abstractmethod
    def eps(self) -> Cochain:
        """The degree-0 cochain ε."""

    @abstractmethod
    def equivariance_matrix(self, n: int) -> np.ndarray:
        """Matrix whose kernel (in cochain coordinates) is the equivariant subspace."""

    # -- single-cochain wrappers -------------------------------------------

    def _check(self, f: Cochain):
        if f.field != self.field or f.data.shape != self.shape(f.degree):
            raise ValueError(f"cochain of shape {f.data.shape} does not belong to this complex")

    def delta(self, f: Cochain) -> Cochain:
        self._check(f)
        self._guard(f.degree + 1)
        out = self.delta_batch(f.data[None], f.degree)
        return Cochain(self.field, f.degree + 1, out[0])

    def _binary(self, op, f: Cochain, g: Cochain, *extra) -> Cochain:
        self._check(f)
        self._check(g)
        out = op(f.data[None], f.degree, g.data[None], g.degree, *extra)
        return Cochain(self.field, out.ndim - 3, out[0, 0])

    def cup(self, f: Cochain, g: Cochain) -> Cochain:
        self._guard(f.degree + g.degree)
        return self._binary(self.cup_batch, f, g)

    def sqcup(self, f: Cochain, g: Cochain) -> Cochain:
        self._guard(f.degree + g.degree)
        return self._binary(self.sqcup_batch, f, g)

    def diamond_i(self, f: Cochain, g: Cochain, i: int) -> Cochain:
        if f.degree + g.degree - 1 < 0:
            raise ValueError("◇_i needs total degree at least 1")
        self._guard(f.degree + g.degree - 1)
        return self._binary(self.diamond_batch, f, g, i)

    # -- matrices ----------------------------------------------------------

    def delta_matrix(self, n: int, chunk: int = 4096) -> np.ndarray:
        """Matrix of δ: C^n -> C^{n+1} in the standard bases (columns = images)."""
        self._guard(n)
        self._guard(n + 1)
        dn, dn1 = self.dim(n), self.dim(n + 1)
        out = self.field.zeros((dn1, dn))
        if dn == 0:
            return out
        step = max(1, min(chunk, self.memory_cap * 8 // max(dn1, 1)))
        for start in range(0, dn, step):
            stop = min(dn, start + step)
            batch = self.field.zeros((stop - start, dn))
            for j in range(stop - start):
                batch[j, start + j] = 1
            img = self.delta_batch(batch.reshape((stop - start,) + self.shape(n)), n)
            out[:, start:stop] = img.reshape(stop - start, dn1).T
        return out

    def equivariant_basis(self, n: int) -> np.ndarray:
        """Columns spanning the equivariant cochains of degree n."""
        self._guard(n)
        return kernel_array(self.field, self.equivariance_matrix(n))

    def random_equivariant(self, n: int, rng: np.random.Generator) -> Cochain:
        """Random element of C̃^n: a seeded combination of the basis columns."""
        self._guard(n)
        cache = self.__dict__.setdefault("_equivariant_bases", {})
        if n not in cache:
            e = self.equivariant_basis(n)
            # C̃^n = C^n: the same draws as the combination of identity columns
            cache[n] = None if e.shape[1] == self.dim(n) else e
        e = cache[n]
        if e is None:
            return self.random(n, rng)
        if e.shape[1] == 0:
            return self.zero(n)
        return self.cochain(n, self.field.matmul(e, self.field.random(e.shape[1], rng)))

    def describe(self) -> dict:
        return {"name": self.name, "field": str(self.field), "atoms": self.atoms, "coeff_dim": self.coeff_dim}
