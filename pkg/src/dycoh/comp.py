"""Backend-generic structure: ◇, the bracket, the equivariant subcomplex and
checker suites for the identities satisfied by the complex.

Every checker draws cochains from a generator seeded by ``[seed, *key]``
where ``key`` identifies the degree tuple and sample index, so a single
failing entry can be replayed in isolation from its witness.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .backend import Cochain, ComplexBackend
from .report import CheckReport, coords_json

__all__ = [
    "diamond",
    "bracket",
    "equivariant_basis",
    "sample",
    "check_complex",
    "check_derivation",
    "check_weak_comp",
    "check_recovery",
    "check_dga",
    "check_equivariant",
    "ClosureError",
]


class ClosureError(RuntimeError):
    """An operation left the equivariant subcomplex; this is an implementation fault."""


def diamond(b: ComplexBackend, f: Cochain, g: Cochain) -> Cochain:
    """f ◇ g = Σ_{i<m} (−1)^{i(n−1)} f ◇_i g (zero for m = 0)."""
    m, n = f.degree, g.degree
    out = b.zero(max(m + n - 1, 0)) if m + n >= 1 else None
    if out is None:
        raise ValueError("◇ needs total degree at least 1")
    for i in range(m):
        term = b.diamond_i(f, g, i)
        out = out + term if (i * (n - 1)) % 2 == 0 else out - term
    return out


def bracket(b: ComplexBackend, f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f ◇ g − (−1)^{(m−1)(n−1)} g ◇ f."""
    m, n = f.degree, g.degree
    fg, gf = diamond(b, f, g), diamond(b, g, f)
    return fg - gf if ((m - 1) * (n - 1)) % 2 == 0 else fg + gf


def equivariant_basis(b: ComplexBackend, n: int) -> np.ndarray:
    """Columns spanning C̃^n in cochain coordinates."""
    return b.equivariant_basis(n)


def is_equivariant(b: ComplexBackend, f: Cochain) -> bool:
    return b.field.is_zero(b.field.matmul(b.equivariance_matrix(f.degree), f.coords))


# -- sampling -------------------------------------------------------------------


def _rng(seed: int, key) -> np.random.Generator:
    return np.random.default_rng([int(seed)] + [int(k) for k in key])


class _Sampler:
    """Seeded random cochains, optionally inside C̃."""

    def __init__(self, b: ComplexBackend, equivariant: bool = False):
        self.b = b
        self.equivariant = equivariant
        self._bases: dict[int, np.ndarray] = {}

    def basis(self, n: int) -> np.ndarray:
        if n not in self._bases:
            self._bases[n] = self.b.equivariant_basis(n)
        return self._bases[n]

    def __call__(self, n: int, rng: np.random.Generator) -> Cochain:
        if not self.equivariant:
            return self.b.random(n, rng)
        return self.b.random_equivariant(n, rng)


def sample(b: ComplexBackend, n: int, seed: int, key=(), equivariant: bool = False) -> Cochain:
    """The cochain a checker would draw for ``key``; used to replay witnesses."""
    return _Sampler(b, equivariant)(n, _rng(seed, key))


def _fits(b: ComplexBackend, *degrees) -> bool:
    return all(d >= 0 and b.dim(d) <= b.memory_cap for d in degrees)


def _witness(b, seed, key, degrees, operands, lhs, rhs, **extra) -> dict:
    out = {"seed": seed, "key": list(key), "degrees": list(degrees)}
    out.update(extra)
    out["operands"] = [coords_json(b.field, x.coords) for x in operands]
    out["lhs"] = coords_json(b.field, lhs.coords)
    out["rhs"] = coords_json(b.field, rhs.coords)
    return out


def _same(lhs: Cochain, rhs: Cochain) -> bool:
    return lhs == rhs


# -- suites ---------------------------------------------------------------------------


def check_complex(b: ComplexBackend, max_degree: int, chunk: int = 256) -> CheckReport:
    """δ ∘ δ = 0 on every basis cochain of degree n <= max_degree."""
    rep = CheckReport("complex", meta={"backend": b.describe(), "max_degree": max_degree})
    fld = b.field
    for n in range(max_degree + 1):
        if not _fits(b, n, n + 1, n + 2):
            rep.record(f"δ∘δ = 0 (degree {n})", False, {"reason": "degree exceeds the memory cap", "degree": n})
            continue
        dim = b.dim(n)
        bad = None
        for start in range(0, dim, chunk):
            stop = min(dim, start + chunk)
            batch = fld.zeros((stop - start, dim))
            for j in range(stop - start):
                batch[j, start + j] = 1
            batch = batch.reshape((stop - start,) + b.shape(n))
            dd = b.delta_batch(b.delta_batch(batch, n), n + 1)
            nz = np.argwhere(dd.reshape(stop - start, -1) != 0)
            if nz.size:
                j, c = (int(v) for v in nz[0])
                bad = {"degree": n, "basis_index": start + j, "nonzero_coordinate": c}
                break
        rep.record(f"δ∘δ = 0 (degree {n})", bad is None, bad)
    return rep


def check_derivation(b: ComplexBackend, max_total: int, samples: int, seed: int) -> CheckReport:
    """δ(f∪g) = δf∪g + (−1)^m f∪δg and the same for ⊔, for m + n <= max_total."""
    rep = CheckReport("cup-derivation", seed=seed, meta={"backend": b.describe()})
    for m, n in product(range(max_total + 1), repeat=2):
        if m + n > max_total or not _fits(b, m, n, m + 1, n + 1, m + n + 1):
            continue
        for s in range(samples):
            key = (1, m, n, s)
            rng = _rng(seed, key)
            f, g = b.random(m, rng), b.random(n, rng)
            df, dg = b.delta(f), b.delta(g)
            for name, op in (("∪", b.cup), ("⊔", b.sqcup)):
                lhs = b.delta(op(f, g))
                rhs = op(df, g) + (op(f, dg) if m % 2 == 0 else -op(f, dg))
                label = f"δ(f{name}g) = δf{name}g + (−1)^m f{name}δg (m={m}, n={n})"
                rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n), (f, g), lhs, rhs))
    return rep


def check_weak_comp(
    b: ComplexBackend,
    max_total: int,
    samples: int,
    seed: int,
    mode: str = "weak",
) -> CheckReport:
    """Axioms of a weak comp algebra, exactly, on seeded samples.

    ``mode="weak"`` checks axiom (3) when g or h is π on the whole complex;
    ``mode="full"`` draws every operand from C̃ and checks axiom (3) for
    arbitrary g, h.  Degree triples satisfy m + n + p <= max_total.
    """
    if mode not in ("weak", "full"):
        raise ValueError("mode must be 'weak' or 'full'")
    rep = CheckReport("weak-comp" if mode == "weak" else "comp-equivariant", seed=seed, meta={"backend": b.describe(), "mode": mode})
    draw = _Sampler(b, equivariant=(mode == "full"))
    pi = b.pi()

    # axiom (4)
    lhs, rhs = b.diamond_i(pi, pi, 0), b.diamond_i(pi, pi, 1)
    rep.record("axiom 4: π◇₀π = π◇₁π", _same(lhs, rhs), lambda: _witness(b, seed, (), (2, 2), (pi, pi), lhs, rhs))

    # axiom (1)
    for m, n in product(range(max_total + 1), repeat=2):
        if m + n > max_total or m + n == 0 or not _fits(b, m, n, m + n - 1):
            continue
        for s in range(samples):
            key = (2, m, n, s)
            rng = _rng(seed, key)
            f, g = draw(m, rng), draw(n, rng)
            for i in (m, m + 1):
                out = b.diamond_i(f, g, i)
                label = f"axiom 1: f◇_i g = 0 for i > m−1 (m={m}, n={n})"
                rep.record(label, out.is_zero(), lambda: _witness(b, seed, key, (m, n), (f, g), out, b.zero(out.degree), i=i))

    for m, n, p in product(range(1, max_total + 1), range(max_total + 1), range(max_total + 1)):
        if m + n + p > max_total or m + n + p < 2:
            continue
        degs = (m, n, p, m + n - 1, m + p - 1, n + p - 1, m + n + p - 2)
        if not _fits(b, *degs):
            continue
        for s in range(samples):
            key = (3, m, n, p, s)
            rng = _rng(seed, key)
            f, g, h = draw(m, rng), draw(n, rng), draw(p, rng)
            # axiom (2): i <= j < n + i
            for i in range(m):
                fg = b.diamond_i(f, g, i)
                for j in range(i, n + i):
                    lhs = b.diamond_i(fg, h, j)
                    rhs = b.diamond_i(f, b.diamond_i(g, h, j - i), i)
                    label = f"axiom 2 (m={m}, n={n}, p={p})"
                    rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n, p), (f, g, h), lhs, rhs, i=i, j=j))
            # axiom (3): j < i
            variants = []
            if mode == "full":
                variants.append(("arbitrary g, h", g, h))
            else:
                if n == 2:
                    variants.append(("g = π", pi, h))
                if p == 2:
                    variants.append(("h = π", g, pi))
            for tag, gg, hh in variants:
                for i in range(1, m):
                    fg = b.diamond_i(f, gg, i)
                    for j in range(i):
                        lhs = b.diamond_i(fg, hh, j)
                        rhs = b.diamond_i(b.diamond_i(f, hh, j), gg, i + p - 1)
                        label = f"axiom 3, {tag} (m={m}, n={n}, p={p})"
                        rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n, p), (f, gg, hh), lhs, rhs, i=i, j=j))
    return rep


def check_recovery(b: ComplexBackend, max_total: int, samples: int, seed: int) -> CheckReport:
    """∪, ⊔ and δ expressed through ◇_i and π."""
    rep = CheckReport("recovery", seed=seed, meta={"backend": b.describe()})
    pi = b.pi()
    for m, n in product(range(max_total + 1), repeat=2):
        if m + n > max_total or not _fits(b, m, n, m + n, m + 1, n + 1, m + 2, n + 2):
            continue
        for s in range(samples):
            key = (4, m, n, s)
            rng = _rng(seed, key)
            f, g = b.random(m, rng), b.random(n, rng)
            lhs, rhs = b.cup(f, g), b.diamond_i(b.diamond_i(pi, f, 0), g, m)
            label = f"f∪g = (π◇₀f)◇_m g (m={m}, n={n})"
            rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n), (f, g), lhs, rhs))
            lhs, rhs = b.sqcup(f, g), b.diamond_i(b.diamond_i(pi, g, 1), f, 0)
            label = f"f⊔g = (π◇₁g)◇₀f (m={m}, n={n})"
            rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n), (f, g), lhs, rhs))
            if n == 0 and m + 1 <= max_total:
                lhs = b.delta(f)
                rhs = b.diamond_i(pi, f, 0) if (m - 1) % 2 == 0 else -b.diamond_i(pi, f, 0)
                for i in range(1, m + 1):
                    t = b.diamond_i(f, pi, i - 1)
                    rhs = rhs - t if (i - 1) % 2 == 0 else rhs + t
                rhs = rhs + b.diamond_i(pi, f, 1)
                label = f"δf through π and ◇ (m={m})"
                rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m,), (f,), lhs, rhs))
    return rep


def check_dga(b: ComplexBackend, max_total: int, samples: int, seed: int) -> CheckReport:
    """Associativity of ∪ and ⊔, ε as two-sided unit of both, δε = 0."""
    rep = CheckReport("dga", seed=seed, meta={"backend": b.describe()})
    eps = b.eps()
    d_eps = b.delta(eps)
    rep.record("δε = 0", d_eps.is_zero(), None if d_eps.is_zero() else {"lhs": coords_json(b.field, d_eps.coords)})
    for m in range(max_total + 1):
        if not _fits(b, m):
            continue
        for s in range(samples):
            key = (5, m, s)
            f = b.random(m, _rng(seed, key))
            for name, op in (("∪", b.cup), ("⊔", b.sqcup)):
                for side, val in (("left", op(eps, f)), ("right", op(f, eps))):
                    label = f"ε is a {side} unit for {name} (m={m})"
                    rep.record(label, _same(val, f), lambda: _witness(b, seed, key, (m,), (f,), val, f))
    for m, n, p in product(range(max_total + 1), repeat=3):
        if m + n + p > max_total or not _fits(b, m + n + p):
            continue
        for s in range(samples):
            key = (6, m, n, p, s)
            rng = _rng(seed, key)
            f, g, h = b.random(m, rng), b.random(n, rng), b.random(p, rng)
            for name, op in (("∪", b.cup), ("⊔", b.sqcup)):
                lhs, rhs = op(op(f, g), h), op(f, op(g, h))
                label = f"{name} associative (m={m}, n={n}, p={p})"
                rep.record(label, _same(lhs, rhs), lambda: _witness(b, seed, key, (m, n, p), (f, g, h), lhs, rhs))
    return rep


def check_equivariant(b: ComplexBackend, max_degree: int, samples: int, seed: int) -> CheckReport:
    """π ∈ C̃², δ(C̃^n) ⊆ C̃^{n+1} on a basis, ◇_i(C̃ × C̃) ⊆ C̃ on samples.

    A violation here is reported (and would be an implementation fault:
    nothing is ever projected back into C̃).
    """
    rep = CheckReport("equivariant", seed=seed, meta={"backend": b.describe()})
    fld = b.field
    draw = _Sampler(b, equivariant=True)
    dims = {}
    for n in range(max_degree + 1):
        if _fits(b, n):
            dims[n] = draw.basis(n).shape[1]
    rep.meta["equivariant_dims"] = {str(n): d for n, d in dims.items()}
    rep.meta["full_dims"] = {str(n): b.dim(n) for n in dims}
    if _fits(b, 2):
        pi = b.pi()
        rep.record("π ∈ C̃²", is_equivariant(b, pi), {"pi": coords_json(fld, pi.coords)})
    eps = b.eps()
    rep.record("ε ∈ C̃⁰", is_equivariant(b, eps), {"eps": coords_json(fld, eps.coords)})
    for n in range(max_degree):
        if n not in dims or not _fits(b, n + 1):
            continue
        e = draw.basis(n)
        if e.shape[1] == 0:
            rep.record(f"δ(C̃^{n}) ⊆ C̃^{n + 1}", True)
            continue
        imgs = b.delta_batch(np.ascontiguousarray(e.T).reshape((e.shape[1],) + b.shape(n)), n)
        cond = fld.matmul(b.equivariance_matrix(n + 1), imgs.reshape(e.shape[1], -1).T)
        bad = np.argwhere(cond != 0)
        rep.record(
            f"δ(C̃^{n}) ⊆ C̃^{n + 1}",
            bad.size == 0,
            None if bad.size == 0 else {"degree": n, "equivariant_basis_column": int(bad[0][1])},
        )
    for m, n in product(range(max_degree + 2), repeat=2):
        deg = m + n - 1
        if deg < 0 or deg > max_degree or m not in dims or n not in dims:
            continue
        for s in range(samples):
            key = (7, m, n, s)
            rng = _rng(seed, key)
            f, g = draw(m, rng), draw(n, rng)
            for i in range(m):
                out = b.diamond_i(f, g, i)
                label = f"◇_i(C̃^{m} × C̃^{n}) ⊆ C̃^{deg}"
                rep.record(
                    label,
                    is_equivariant(b, out),
                    lambda: {
                        "seed": seed, "key": list(key), "degrees": [m, n], "i": i, "equivariant": True,
                        "operands": [coords_json(fld, f.coords), coords_json(fld, g.coords)],
                        "result": coords_json(fld, out.coords),
                    },
                )
    return rep
