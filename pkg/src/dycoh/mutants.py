"""Deliberately broken variants of a backend, used to show the checkers bite.

Each mutant delegates to a healthy backend and corrupts one ingredient.
"""

from __future__ import annotations

import numpy as np

from .backend import Cochain, ComplexBackend


class _Wrapped(ComplexBackend):
    def __init__(self, inner: ComplexBackend):
        self.inner = inner
        self.field = inner.field
        self.atoms = inner.atoms
        self.coeff_dim = inner.coeff_dim
        self.memory_cap = inner.memory_cap
        self.name = f"{type(self).__name__}({inner.name})"

    def delta_batch(self, fs, n):
        return self.inner.delta_batch(fs, n)

    def cup_batch(self, fs, m, gs, n):
        return self.inner.cup_batch(fs, m, gs, n)

    def sqcup_batch(self, fs, m, gs, n):
        return self.inner.sqcup_batch(fs, m, gs, n)

    def diamond_batch(self, fs, m, gs, n, i):
        return self.inner.diamond_batch(fs, m, gs, n, i)

    def pi(self) -> Cochain:
        return self.inner.pi()

    def eps(self) -> Cochain:
        return self.inner.eps()

    def equivariance_matrix(self, n: int) -> np.ndarray:
        return self.inner.equivariance_matrix(n)

    def equivariant_basis(self, n: int) -> np.ndarray:
        return self.inner.equivariant_basis(n)


class FlippedLastTerm(_Wrapped):
    """δ with the sign of its final summand (−1)^{n+1} f ⊗ F reversed."""

    def delta_batch(self, fs, n):
        good = self.inner.delta_batch(fs, n)
        tail = self.inner.diamond_i(self.inner.pi(), self.inner.eps(), 1)
        last = self.inner.cup_batch(fs, n, tail.data[None], 1)[:, 0]
        c = 2 if n % 2 else -2
        return self.field.reduce(good - c * last)


class FlippedPiComposite(_Wrapped):
    """◇_1 between two degree-2 cochains comes out negated, so π◇₁π = −(π◇₁π)."""

    def diamond_batch(self, fs, m, gs, n, i):
        out = self.inner.diamond_batch(fs, m, gs, n, i)
        if (m, n, i) == (2, 2, 1):
            out = self.field.reduce(-out)
        return out


# The (−1)^{mn} sign mutation needs no backend: pass sign_offset=1 to
# ``cohomology.check_graded_commutativity``.
WRONG_COMMUTATIVITY_SIGN_OFFSET = 1
