"""Cohomology of the complex and of its equivariant part, membership in the
image of δ, and the cohomology-level identities.

Matrices are column-oriented: a basis is an array whose columns are cochain
coordinate vectors.  Equivariant computations never leave the span of the
C̃ basis columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .backend import Cochain, ComplexBackend
from .comp import _rng, _witness, bracket, sample
from .groups import FiniteGroup
from .linalg import Field, _rref_array, kernel_array, rank_array, solve_array
from .report import CheckEntry, CheckReport, coords_json

__all__ = [
    "CohomologySlice",
    "cohomology",
    "betti_numbers",
    "is_coboundary",
    "in_coboundaries",
    "check_graded_commutativity",
    "check_gerstenhaber_equivariant",
    "group_cohomology_oracle",
    "cobar_oracle",
]


@dataclass
class CohomologySlice:
    degree: int
    betti: int
    cocycle_basis: np.ndarray
    coboundary_basis: np.ndarray
    representative_basis: np.ndarray
    equivariant: bool = False

    def representatives(self, b: ComplexBackend) -> list[Cochain]:
        return [b.cochain(self.degree, self.representative_basis[:, j]) for j in range(self.betti)]


def _cache(b: ComplexBackend) -> dict:
    return b.__dict__.setdefault("_cohomology_cache", {})


def _delta(b: ComplexBackend, n: int) -> np.ndarray:
    """δ: C^n -> C^{n+1}; the zero map out of C^{-1}."""
    c = _cache(b)
    if ("d", n) not in c:
        c["d", n] = b.field.zeros((b.dim(n + 1), 0)) if n < 0 else b.delta_matrix(n)
    return c["d", n]


def _ebasis(b: ComplexBackend, n: int) -> np.ndarray:
    c = _cache(b)
    if ("e", n) not in c:
        c["e", n] = b.field.zeros((b.dim(0), 0)) if n < 0 else b.equivariant_basis(n)
    return c["e", n]


def _source(b: ComplexBackend, n: int, restrict: bool) -> np.ndarray:
    """δ restricted to the chosen domain at degree n, as a matrix into C^{n+1}."""
    if not restrict:
        return _delta(b, n)
    c = _cache(b)
    if ("de", n) not in c:
        e = _ebasis(b, n)
        c["de", n] = b.field.matmul(_delta(b, n), e) if e.shape[1] else b.field.zeros((b.dim(n + 1), 0))
    return c["de", n]


def _column_basis(fld: Field, m: np.ndarray) -> np.ndarray:
    if m.shape[1] == 0:
        return m
    _, piv = _rref_array(fld, m)
    return m[:, list(piv)]


def cohomology(b: ComplexBackend, n: int, restrict_equivariant: bool = False) -> CohomologySlice:
    """Betti number and canonical bases at degree n (all in ambient coordinates)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    b._guard(n + 1)
    fld = b.field
    key = ("h", n, restrict_equivariant)
    c = _cache(b)
    if key in c:
        return c[key]
    d_n = _source(b, n, restrict_equivariant)
    k = kernel_array(fld, d_n)
    if restrict_equivariant:
        e = _ebasis(b, n)
        cocycles = fld.matmul(e, k) if k.shape[1] else fld.zeros((b.dim(n), 0))
    else:
        cocycles = k
    cobound = _column_basis(fld, _source(b, n - 1, restrict_equivariant))
    nb = cobound.shape[1]
    if cocycles.shape[1]:
        _, piv = _rref_array(fld, np.concatenate([cobound, cocycles], axis=1))
        reps = cocycles[:, [p - nb for p in piv if p >= nb]]
    else:
        reps = cocycles
    out = CohomologySlice(n, reps.shape[1], cocycles, cobound, reps, restrict_equivariant)
    c[key] = out
    return out


def betti_numbers(b: ComplexBackend, max_degree: int, restrict_equivariant: bool = False) -> list[int]:
    return [cohomology(b, n, restrict_equivariant).betti for n in range(max_degree + 1)]


def _solve_many(b: ComplexBackend, n: int, rhs: np.ndarray, restrict: bool):
    """Preimages under δ^{n-1} for the columns of ``rhs`` (ambient coordinates)."""
    fld = b.field
    a = _source(b, n - 1, restrict)
    if a.shape[1] == 0:
        ok = np.array([fld.is_zero(rhs[:, j]) for j in range(rhs.shape[1])], dtype=bool)
        return fld.zeros((0, rhs.shape[1])), ok
    x, ok = solve_array(fld, a, rhs)
    if restrict:
        x = fld.matmul(_ebasis(b, n - 1), x)
    return x, ok


def in_coboundaries(b: ComplexBackend, fs: list[Cochain], restrict_equivariant: bool = False) -> list[bool]:
    """Membership of each cochain in the image of δ (or of δ on C̃)."""
    if not fs:
        return []
    n = fs[0].degree
    rhs = np.stack([f.coords for f in fs], axis=1)
    _, ok = _solve_many(b, n, rhs, restrict_equivariant)
    return [bool(x) for x in ok]


def is_coboundary(b: ComplexBackend, f: Cochain, restrict_equivariant: bool = False) -> Cochain | None:
    """A cochain g with δg = f, or None.  Degree 0 has no preimage space, so None."""
    if f.degree == 0:
        return None
    b._guard(f.degree)
    x, ok = _solve_many(b, f.degree, f.coords.reshape(-1, 1), restrict_equivariant)
    if not ok[0]:
        return None
    return b.cochain(f.degree - 1, x[:, 0])


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _combine(terms) -> Cochain:
    out = None
    for c, x in terms:
        t = x if c == 1 else -x
        out = t if out is None else out + t
    return out


def _reps(b: ComplexBackend, n: int, restrict: bool) -> list[Cochain]:
    return cohomology(b, n, restrict).representatives(b)


def check_graded_commutativity(
    b: ComplexBackend, m: int, n: int, restrict_equivariant: bool = False, sign_offset: int = 0
) -> CheckReport:
    """f∪g − (−1)^{mn} g⊔f ∈ im δ for every pair of representative cocycles.

    ``sign_offset`` shifts the exponent; a nonzero value is a deliberate fault
    used to show the check is sensitive to the sign.
    """
    rep = CheckReport("graded-commutativity", meta={"m": m, "n": n, "equivariant": restrict_equivariant})
    label = f"f∪g = (−1)^(mn) g⊔f in cohomology (m={m}, n={n})"
    fs, gs = _reps(b, m, restrict_equivariant), _reps(b, n, restrict_equivariant)
    rep.meta["pairs"] = len(fs) * len(gs)
    if not fs or not gs:
        rep.entries[label] = CheckEntry(label)
        return rep
    s = _sign(m * n + sign_offset)
    diffs, pairs = [], []
    for (a, f), (c, g) in product(enumerate(fs), enumerate(gs)):
        diffs.append(_combine([(1, b.cup(f, g)), (-s, b.sqcup(g, f))]))
        pairs.append((a, c, f, g))
    oks = in_coboundaries(b, diffs, restrict_equivariant)
    for (a, c, f, g), d, ok in zip(pairs, diffs, oks):
        rep.record(
            label,
            ok,
            {
                "degrees": [m, n],
                "representatives": [a, c],
                "operands": [coords_json(b.field, f.coords), coords_json(b.field, g.coords)],
                "residual": coords_json(b.field, d.coords),
            },
        )
    return rep


def check_gerstenhaber_equivariant(
    b: ComplexBackend, max_degree: int, samples: int, seed: int, restrict_equivariant: bool = True
) -> CheckReport:
    """Gerstenhaber identities on C̃ and its cohomology.

    The product on the cohomology of the full complex is graded commutative
    only jointly with ⊔, so this suite refuses to run unrestricted.
    """
    if not restrict_equivariant:
        raise ValueError("the Gerstenhaber suite is only valid on the equivariant subcomplex")
    rep = CheckReport("gerstenhaber", seed=seed)
    fld = b.field
    rep.meta["equivariant_betti"] = betti_numbers(b, max_degree, True)

    # (i) ∪ graded commutative on cohomology
    for m in range(max_degree + 1):
        for n in range(max_degree + 1 - m):
            label = f"f∪g = (−1)^(mn) g∪f in equivariant cohomology (m={m}, n={n})"
            fs, gs = _reps(b, m, True), _reps(b, n, True)
            diffs = [_combine([(1, b.cup(f, g)), (-_sign(m * n), b.cup(g, f))]) for f, g in product(fs, gs)]
            oks = in_coboundaries(b, diffs, True) if m + n > 0 else [d.is_zero() for d in diffs]
            for (f, g), d, ok in zip(product(fs, gs), diffs, oks):
                rep.record(label, ok, {"degrees": [m, n], "operands": [coords_json(fld, f.coords), coords_json(fld, g.coords)], "residual": coords_json(fld, d.coords)})

    # (ii) [cocycle, coboundary] is a coboundary
    for m in range(max_degree + 1):
        for n in range(1, max_degree + 2 - m):
            if m + n < 1:
                continue
            label = f"[cocycle, coboundary] ∈ im δ (m={m}, n={n})"
            zs = cohomology(b, m, True).cocycle_basis
            if zs.shape[1] == 0:
                continue
            for s in range(samples):
                key = (8, m, n, s)
                rng = _rng(seed, key)
                z = b.cochain(m, fld.matmul(zs, fld.random((zs.shape[1],), rng)))
                h = sample(b, n - 1, seed, key + (1,), equivariant=True)
                g = b.delta(h)
                out = bracket(b, z, g)
                ok = out.is_zero() or (out.degree > 0 and in_coboundaries(b, [out], True)[0])
                rep.record(label, ok, _witness(b, seed, key, [m, n], [z, g], out, b.zero(out.degree), preimage=coords_json(fld, h.coords)))

    # (iii) graded Jacobi, exact on cochains
    for m, n, p in product(range(1, max_degree + 2), repeat=3):
        if m + n + p - 2 > max_degree:
            continue
        label = f"graded Jacobi (m={m}, n={n}, p={p})"
        for s in range(samples):
            key = (9, m, n, p, s)
            f = sample(b, m, seed, key + (0,), equivariant=True)
            g = sample(b, n, seed, key + (1,), equivariant=True)
            h = sample(b, p, seed, key + (2,), equivariant=True)
            total = _combine(
                [
                    (_sign((m - 1) * (p - 1)), bracket(b, f, bracket(b, g, h))),
                    (_sign((n - 1) * (m - 1)), bracket(b, g, bracket(b, h, f))),
                    (_sign((p - 1) * (n - 1)), bracket(b, h, bracket(b, f, g))),
                ]
            )
            rep.record(label, total.is_zero(), _witness(b, seed, key, [m, n, p], [f, g, h], total, b.zero(total.degree)))

    # (iv) Leibniz rule on cohomology
    for m, n, p in product(range(max_degree + 1), repeat=3):
        if m + n + p - 1 > max_degree or m + n + p - 1 < 1 or m == 0:
            continue
        label = f"[f, g∪h] = [f,g]∪h + (−1)^((m−1)n) g∪[f,h] in cohomology (m={m}, n={n}, p={p})"
        triples = list(product(_reps(b, m, True), _reps(b, n, True), _reps(b, p, True)))
        diffs = []
        for f, g, h in triples:
            lhs = bracket(b, f, b.cup(g, h))
            rhs = _combine([(1, b.cup(bracket(b, f, g), h)), (_sign((m - 1) * n), b.cup(g, bracket(b, f, h)))])
            diffs.append(lhs - rhs)
        for (f, g, h), d, ok in zip(triples, diffs, in_coboundaries(b, diffs, True)):
            rep.record(label, ok, {"degrees": [m, n, p], "operands": [coords_json(fld, x.coords) for x in (f, g, h)], "residual": coords_json(fld, d.coords)})
    return rep


# -- independent oracles ----------------------------------------------------------


def _betti_from_matrices(fld: Field, dims: list[int], mats: list[np.ndarray], n_max: int) -> list[int]:
    ranks = [rank_array(fld, a) for a in mats]
    return [dims[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(n_max + 1)]


def group_cohomology_oracle(grp: FiniteGroup, fld: Field, n_max: int) -> list[int]:
    """dim H^n(G; k) with trivial coefficients from the inhomogeneous bar complex.

    (df)(g_1..g_{n+1}) = f(g_2..) + Σ_i (−1)^i f(.., g_i g_{i+1}, ..) + (−1)^{n+1} f(g_1..g_n).
    """
    k = grp.order
    mul = [[grp.mul(a, c) for c in range(k)] for a in range(k)]
    mats = []
    for n in range(n_max + 1):
        a = fld.zeros((k ** (n + 1), k**n))
        for r, gs in enumerate(product(range(k), repeat=n + 1)):
            def col(t):
                return int(np.ravel_multi_index(t, (k,) * n)) if n else 0

            terms = [(1, gs[1:])]
            terms += [(_sign(i), gs[: i - 1] + (mul[gs[i - 1]][gs[i]],) + gs[i + 1 :]) for i in range(1, n + 1)]
            terms.append((_sign(n + 1), gs[:n]))
            for s, t in terms:
                a[r, col(t)] += s
        mats.append(fld.reduce(a))
    return _betti_from_matrices(fld, [k**n for n in range(n_max + 1)], mats, n_max)


def cobar_oracle(fld: Field, comul: np.ndarray, unit: np.ndarray, n_max: int) -> list[int]:
    """Betti numbers of the cobar complex of a coalgebra with group-like element 1.

    d(h_1..h_n) = 1⊗h + Σ_i (−1)^i (.., Δh_i, ..) + (−1)^{n+1} h⊗1, built from
    the structure constants ``comul[k, i, j]`` (Δe_k = Σ c e_i⊗e_j).
    """
    h = comul.shape[0]
    mats = []
    for n in range(n_max + 1):
        a = fld.zeros((h ** (n + 1), h**n))
        for c, xs in enumerate(product(range(h), repeat=n)):
            def row(t):
                return int(np.ravel_multi_index(t, (h,) * (n + 1)))

            for u in np.nonzero(unit)[0]:
                a[row((int(u),) + xs), c] += unit[u]
            for i in range(n):
                for p, q in zip(*np.nonzero(comul[xs[i]])):
                    a[row(xs[:i] + (int(p), int(q)) + xs[i + 1 :]), c] += _sign(i + 1) * comul[xs[i], p, q]
            for u in np.nonzero(unit)[0]:
                a[row(xs + (int(u),)), c] += _sign(n + 1) * unit[u]
        mats.append(fld.reduce(a))
    return _betti_from_matrices(fld, [h**n for n in range(n_max + 1)], mats, n_max)
