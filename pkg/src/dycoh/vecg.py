"""Coefficients in the center of Vec_G and the complex of the identity functor.

A :class:`CenterCoalgebra` is a G-graded vector space U with a G-action π
(π(x) maps U_g to U_{xgx^-1}), a graded comultiplication Δ and a counit ε.
The half-braiding against the simple object k_x is

    ρ^U(k_x)(u ⊗ 1_x) = 1_x ⊗ π(x)^{-1} u,

the only choice compatible with the grading; we write β(x) = π(x^{-1}).

Components of a natural transformation U ⊗ F^n -> F^n at simple objects
(k_{x_1}, ..., k_{x_n}) only see the identity-graded part W = U_e, so a
degree-n cochain is stored as an array of shape (|G|,)*n + (dim W,):
``f[x_1, ..., x_n, :]`` is a row vector in W*.  :class:`VecGBackend`
implements the operations directly in that representation; the adapter
:class:`VecGDiagram` instead evaluates the defining composites literally on
all of U, and the two are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from . import diagram
from .backend import DEFAULT_MEMORY_CAP, Cochain, ComplexBackend
from .groups import FiniteGroup
from .linalg import Field, _int_maxabs, kernel_array, rank_array
from .report import CheckReport, StructureError

__all__ = [
    "CenterCoalgebra",
    "VecGBackend",
    "VecGDiagram",
    "DiagramNat",
    "validate_center_coalgebra",
    "cochain_dim",
    "lambda_condition_matrix",
    "diagram_evaluate",
    "unit_coefficient",
    "grouplike_coefficient",
    "convolution_coefficient",
    "skew_primitive_coefficient",
    "coefficient_from_matrices",
]


@dataclass(frozen=True, eq=False)
class CenterCoalgebra:
    """Coalgebra object (U, ρ^U, Δ, ε) in the center of Vec_G.

    ``action[x]`` is the matrix of π(x) (columns are images of basis
    vectors), ``comul[u, a, b]`` the coefficient of e_a ⊗ e_b in Δ(e_u) and
    ``counit[u] = ε(e_u)``.  Basis vectors are ordered by grade, following
    the element order of the group.
    """

    group: FiniteGroup
    field: Field
    grade_dims: tuple[int, ...]
    action: np.ndarray
    comul: np.ndarray
    counit: np.ndarray
    name: str = "custom"

    def __post_init__(self):
        k = self.group.order
        dims = tuple(int(x) for x in self.grade_dims)
        if len(dims) != k or any(x < 0 for x in dims):
            raise StructureError(f"grade_dims needs {k} non-negative entries, got {self.grade_dims}")
        d = sum(dims)
        if d == 0:
            raise StructureError("U must be nonzero")
        f = self.field
        act = f.reduce(np.asarray(self.action))
        com = f.reduce(np.asarray(self.comul))
        cou = f.reduce(np.asarray(self.counit))
        if act.shape != (k, d, d):
            raise StructureError(f"action must have shape {(k, d, d)}, got {act.shape}")
        if com.shape != (d, d, d):
            raise StructureError(f"comultiplication must have shape {(d, d, d)}, got {com.shape}")
        if cou.shape != (d,):
            raise StructureError(f"counit must have length {d}, got shape {cou.shape}")
        for arr in (act, com, cou):
            arr.setflags(write=False)
        object.__setattr__(self, "grade_dims", dims)
        object.__setattr__(self, "action", act)
        object.__setattr__(self, "comul", com)
        object.__setattr__(self, "counit", cou)

    @property
    def dim(self) -> int:
        return sum(self.grade_dims)

    @cached_property
    def grades(self) -> tuple[int, ...]:
        return tuple(g for g, n in enumerate(self.grade_dims) for _ in range(n))

    @cached_property
    def w_index(self) -> np.ndarray:
        """Positions of the basis of W = U_e inside the basis of U."""
        e = self.group.identity
        return np.array([j for j, g in enumerate(self.grades) if g == e], dtype=np.int64)

    @property
    def dim_w(self) -> int:
        return len(self.w_index)

    @cached_property
    def beta(self) -> np.ndarray:
        """β(x) = π(x^{-1}) on all of U, indexed by x."""
        inv = np.array(self.group.inverse)
        return self.action[inv]

    @cached_property
    def beta_w(self) -> np.ndarray:
        w = self.w_index
        return self.beta[:, w[:, None], w[None, :]]

    @cached_property
    def comul_w(self) -> np.ndarray:
        """δ_W: the (e, e)-block of Δ restricted to W."""
        w = self.w_index
        return self.comul[w[:, None, None], w[None, :, None], w[None, None, :]]

    @cached_property
    def counit_w(self) -> np.ndarray:
        return self.counit[self.w_index]

    def describe(self) -> dict:
        return {"name": self.name, "dim_u": self.dim, "dim_w": self.dim_w, "group_order": self.group.order}


# -- presets -------------------------------------------------------------------


def _perm_matrix(fld: Field, images: list[int]) -> np.ndarray:
    m = fld.zeros((len(images), len(images)))
    for j, i in enumerate(images):
        m[i, j] = 1
    return m


def unit_coefficient(grp: FiniteGroup, fld: Field) -> CenterCoalgebra:
    """U = k in grade e with trivial action."""
    dims = [0] * grp.order
    dims[grp.identity] = 1
    act = np.stack([fld.eye(1)] * grp.order)
    com = fld.zeros((1, 1, 1))
    com[0, 0, 0] = 1
    return CenterCoalgebra(grp, fld, tuple(dims), act, com, fld.array([1]), "unit")


def grouplike_coefficient(grp: FiniteGroup, fld: Field, support) -> CenterCoalgebra:
    """U = span(S) placed in grade e, with Δs = s ⊗ s, ε(s) = 1 and π(x)s = xsx^-1.

    ``support`` lists element indices or names; it must be closed under
    conjugation, otherwise there is no action table to build.
    """
    s = [grp.index(x) if isinstance(x, str) else int(x) for x in support]
    if not s or len(set(s)) != len(s):
        raise ValueError("group-like support must be a nonempty list of distinct elements")
    pos = {g: i for i, g in enumerate(s)}
    acts = []
    for x in range(grp.order):
        images = []
        for g in s:
            c = grp.conjugate(g, x)
            if c not in pos:
                raise ValueError(
                    f"action table rejected: conjugating {grp.names[g]} by {grp.names[x]} "
                    f"gives {grp.names[c]}, outside the support"
                )
            images.append(pos[c])
        acts.append(_perm_matrix(fld, images))
    d = len(s)
    dims = [0] * grp.order
    dims[grp.identity] = d
    com = fld.zeros((d, d, d))
    for i in range(d):
        com[i, i, i] = 1
    return CenterCoalgebra(grp, fld, tuple(dims), np.stack(acts), com, fld.array([1] * d), "grouplike")


def convolution_coefficient(grp: FiniteGroup, fld: Field) -> CenterCoalgebra:
    """U = k^G: δ_g in grade g, Δ(δ_g) = Σ_{ab=g} δ_a ⊗ δ_b, π(x)δ_g = δ_{xgx^-1}."""
    k = grp.order
    acts = np.stack([_perm_matrix(fld, [grp.conjugate(g, x) for g in range(k)]) for x in range(k)])
    com = fld.zeros((k, k, k))
    for a, b in product(range(k), repeat=2):
        com[grp.mul(a, b), a, b] = 1
    cou = fld.zeros(k)
    cou[grp.identity] = 1
    return CenterCoalgebra(grp, fld, (1,) * k, acts, com, cou, "convolution")


def skew_primitive_coefficient(grp: FiniteGroup, fld: Field, character=None) -> CenterCoalgebra:
    """Three-dimensional non-cocommutative coalgebra in grade e.

    Basis (a, b, p) with a, b group-like and Δp = a ⊗ p + p ⊗ b.  The group
    acts trivially on a, b and by the scalar ``character[x]`` on p (a
    homomorphism G -> k^×; trivial by default).
    """
    chi = [1] * grp.order if character is None else list(character)
    if len(chi) != grp.order:
        raise StructureError(f"character needs {grp.order} values")
    dims = [0] * grp.order
    dims[grp.identity] = 3
    acts = []
    for x in range(grp.order):
        m = fld.eye(3)
        m[2, 2] = fld.scalar(chi[x])
        acts.append(m)
    com = fld.zeros((3, 3, 3))
    com[0, 0, 0] = 1
    com[1, 1, 1] = 1
    com[2, 0, 2] = 1
    com[2, 2, 1] = 1
    return CenterCoalgebra(grp, fld, tuple(dims), np.stack(acts), com, fld.array([1, 1, 0]), "skew_primitive")


def coefficient_from_matrices(grp: FiniteGroup, fld: Field, grade_dims, action, comul, counit, name="explicit"):
    """Explicit data: ``action`` is a list of |G| square matrices, ``comul`` the
    dim(U)^2 x dim(U) matrix of Δ (row a*dim+b holds the e_a ⊗ e_b coefficient)."""
    dims = [int(x) for x in grade_dims]
    d = sum(dims)
    act = fld.array(action)
    cm = fld.array(comul)
    if cm.shape != (d * d, d):
        raise StructureError(f"comultiplication matrix must be {d * d} x {d}, got {cm.shape}")
    com = np.ascontiguousarray(cm.T.reshape(d, d, d))
    return CenterCoalgebra(grp, fld, tuple(dims), act, com, fld.array(counit), name)


# -- validation ------------------------------------------------------------------


def validate_center_coalgebra(c: CenterCoalgebra) -> CheckReport:
    """Check every axiom of a coalgebra object in Z(Vec_G) on basis vectors."""
    rep = CheckReport("center-coalgebra", meta=c.describe())
    grp, fld, d = c.group, c.field, c.dim
    names = grp.names
    grades = np.array(c.grades)
    act, com, cou = c.action, c.comul, c.counit

    bad = None
    for x in range(grp.order):
        for j in range(d):
            target = grp.conjugate(int(grades[j]), x)
            off = [i for i in range(d) if act[x][i, j] != 0 and grades[i] != target]
            if off:
                bad = {"x": names[x], "basis": j, "image_component": off[0]}
                break
        if bad:
            break
    rep.record("π(x) grade-compatible", bad is None, bad)

    e = grp.identity
    rep.record("π(e) = id", bool(np.all(act[e] == fld.eye(d))), {"x": names[e]})
    bad = None
    for x, y in product(range(grp.order), repeat=2):
        if not np.all(fld.matmul(act[x], act[y]) == act[grp.mul(x, y)]):
            bad = {"x": names[x], "y": names[y]}
            break
    rep.record("π(xy) = π(x)π(y)", bad is None, bad)

    bad = next((x for x in range(grp.order) if rank_array(fld, act[x]) != d), None)
    rep.record("π(x) invertible", bad is None, {"x": names[bad]} if bad is not None else None)

    nz = np.argwhere(com != 0)
    bad = next((tuple(int(v) for v in t) for t in nz if grp.mul(grades[t[1]], grades[t[2]]) != grades[t[0]]), None)
    rep.record("Δ grade-preserving", bad is None, {"basis": bad[0], "term": list(bad[1:])} if bad else None)

    bad = next((j for j in range(d) if cou[j] != 0 and grades[j] != e), None)
    rep.record("ε supported on U_e", bad is None, {"basis": bad} if bad is not None else None)

    left = fld.einsum("uac,axy->uxyc", com, com)
    right = fld.einsum("uxa,ayc->uxyc", com, com)
    bad = next((j for j in range(d) if not np.all(left[j] == right[j])), None)
    rep.record("coassociativity", bad is None, {"basis": bad} if bad is not None else None)

    eye = fld.eye(d)
    lc = fld.einsum("a,uab->ub", cou, com)
    rc = fld.einsum("uab,b->ua", com, cou)
    bad = next((j for j in range(d) if not (np.all(lc[j] == eye[j]) and np.all(rc[j] == eye[j]))), None)
    rep.record("counit law", bad is None, {"basis": bad} if bad is not None else None)

    # Δ and ε as morphisms in the center: the braiding of U ⊗ U against k_x is β(x) ⊗ β(x).
    bad = None
    for x in range(grp.order):
        b = c.beta[x]
        lhs = fld.einsum("pa,qb,uab->upq", b, b, com)
        rhs = fld.einsum("vu,vpq->upq", b, com)
        if not np.all(lhs == rhs):
            bad = {"x": names[x]}
            break
    rep.record("Δ commutes with the half-braiding", bad is None, bad)
    bad = next((x for x in range(grp.order) if not np.all(fld.matmul(cou, c.beta[x]) == cou)), None)
    rep.record("ε commutes with the half-braiding", bad is None, {"x": names[bad]} if bad is not None else None)
    return rep


# -- fast path -------------------------------------------------------------------


def cochain_dim(c: CenterCoalgebra, n: int) -> int:
    return c.group.order**n * c.dim_w


class VecGBackend(ComplexBackend):
    """Operations on Fun(G^n, W*), using β(x) = π(x^{-1}) on W."""

    def __init__(self, c: CenterCoalgebra, memory_cap: int = DEFAULT_MEMORY_CAP):
        self.coefficient = c
        self.field = c.field
        self.group = c.group
        self.atoms = c.group.order
        self.coeff_dim = c.dim_w
        self.memory_cap = memory_cap
        self.name = f"vec_g/{c.name}"
        self._prod_cache: dict[int, np.ndarray] = {}
        self._block_kernels: dict[int, np.ndarray] = {}

    def describe(self) -> dict:
        out = super().describe()
        out["coefficient"] = self.coefficient.describe()
        return out

    def products(self, n: int) -> np.ndarray:
        """Array of shape (k,)*n with the index of x_1 ⋯ x_n."""
        if n not in self._prod_cache:
            t = self.group.table
            p = np.array(self.group.identity, dtype=np.int64)
            for _ in range(n):
                p = t[p[..., None], np.arange(self.atoms)]
            self._prod_cache[n] = p
        return self._prod_cache[n]

    def _braided(self, gs: np.ndarray, n: int) -> np.ndarray:
        """g(y⃗)∘β(a) for every a: shape (B, k, k^n, dW)."""
        c = self.coefficient
        g2 = gs.reshape(gs.shape[0], -1, self.coeff_dim)
        return self.field.einsum("bkw,awv->bakv", g2, c.beta_w)

    def delta_batch(self, fs, n):
        fld, k, dw = self.field, self.atoms, self.coeff_dim
        b = fs.shape[0]
        beta = self.coefficient.beta_w
        bmax = _int_maxabs(beta)
        small = None if bmax is None else fld.small_int(fs, (n + 2) * dw * max(bmax, 1))
        if small is not None:
            # every term stays below the int64 bound, so the sum is exact
            fs = small
            first = np.einsum("bkw,xwv->bxkv", fs.reshape(b, -1, dw), beta.astype(small.dtype))
        else:
            first = fld.einsum("bkw,xwv->bxkv", fs.reshape(b, -1, dw), beta)
        out = first.reshape((b,) + (k,) * (n + 1) + (dw,))
        mul = self.group.table
        for i in range(1, n + 1):
            term = np.take(fs, mul, axis=i)
            out = out + term if i % 2 == 0 else out - term
        last = np.broadcast_to(fs[..., None, :], fs.shape[:-1] + (k, dw))
        out = out + last if n % 2 == 1 else out - last
        return fld.reduce(out)

    def cup_batch(self, fs, m, gs, n):
        fld, k, dw = self.field, self.atoms, self.coeff_dim
        fm = fs.reshape(fs.shape[0], -1, dw)
        gp = self._braided(gs, n)[:, self.products(m).reshape(-1)]
        out = fld.einsum("wuv,fxu,gxyv->fgxyw", self.coefficient.comul_w, fm, gp)
        return out.reshape((fs.shape[0], gs.shape[0]) + (k,) * (m + n) + (dw,))

    def sqcup_batch(self, fs, m, gs, n):
        fld, k, dw = self.field, self.atoms, self.coeff_dim
        fm = fs.reshape(fs.shape[0], -1, dw)
        gp = self._braided(gs, n)[:, self.products(m).reshape(-1)]
        out = fld.einsum("wuv,fxv,gxyu->fgxyw", self.coefficient.comul_w, fm, gp)
        return out.reshape((fs.shape[0], gs.shape[0]) + (k,) * (m + n) + (dw,))

    def diamond_batch(self, fs, m, gs, n, i):
        fld, k, dw = self.field, self.atoms, self.coeff_dim
        deg = m + n - 1
        bf, bg = fs.shape[0], gs.shape[0]
        if i < 0 or i >= m:
            return fld.zeros((bf, bg) + (k,) * deg + (dw,))
        merged = np.take(fs, self.products(n), axis=1 + i)
        merged = merged.reshape(bf, k**i, k**n, k ** (m - i - 1), dw)
        gp = self._braided(gs, n)[:, self.products(i).reshape(-1)]
        out = fld.einsum("wuv,faycu,gayv->fgaycw", self.coefficient.comul_w, merged, gp)
        return out.reshape((bf, bg) + (k,) * deg + (dw,))

    def pi(self) -> Cochain:
        cw = self.coefficient.counit_w
        data = np.broadcast_to(cw, (self.atoms, self.atoms, self.coeff_dim)).copy()
        return Cochain(self.field, 2, data)

    def eps(self) -> Cochain:
        return Cochain(self.field, 0, self.coefficient.counit_w.copy())

    # -- equivariance ----------------------------------------------------------

    def equivariance_block(self, x: int) -> np.ndarray:
        """Condition at one tuple with product x: rows (u, u'), columns W.

        Row (u, u') reads the e_{u'} coefficient of
        Σ f(u_(1)) β(x) u_(2) − Σ f(u_(2)) β(x) u_(1).
        """
        c, fld = self.coefficient, self.field
        w = c.w_index
        b = c.beta[x]
        lhs = fld.einsum("uwb,pb->upw", c.comul[:, w, :], b)
        rhs = fld.einsum("uaw,pa->upw", c.comul[:, :, w], b)
        d = c.dim
        return fld.reduce(lhs - rhs).reshape(d * d, self.coeff_dim)

    def equivariance_matrix(self, n: int) -> np.ndarray:
        self._guard(n)
        prods = self.products(n).reshape(-1)
        rows = self.coefficient.dim ** 2
        dw = self.coeff_dim
        out = self.field.zeros((len(prods) * rows, len(prods) * dw))
        for t, x in enumerate(prods):
            out[t * rows : (t + 1) * rows, t * dw : (t + 1) * dw] = self.equivariance_block(int(x))
        return out

    def _block_kernel(self, x: int) -> np.ndarray:
        if x not in self._block_kernels:
            self._block_kernels[x] = kernel_array(self.field, self.equivariance_block(x))
        return self._block_kernels[x]

    def equivariant_basis(self, n: int) -> np.ndarray:
        """Kernel of the block-diagonal condition, assembled block by block.

        Equal to the free-variable kernel basis of :meth:`equivariance_matrix`.
        """
        self._guard(n)
        prods = self.products(n).reshape(-1)
        dw = self.coeff_dim
        kernels = [self._block_kernel(int(x)) for x in prods]
        total = sum(kb.shape[1] for kb in kernels)
        out = self.field.zeros((len(prods) * dw, total))
        j = 0
        for t, kb in enumerate(kernels):
            out[t * dw : (t + 1) * dw, j : j + kb.shape[1]] = kb
            j += kb.shape[1]
        return out

    def random_equivariant(self, n: int, rng: np.random.Generator) -> Cochain:
        """Sample C̃^n tuple class by tuple class, without the dense basis."""
        self._guard(n)
        prods = self.products(n).reshape(-1)
        out = self.field.zeros((len(prods), self.coeff_dim))
        for x in range(self.atoms):
            idx = np.flatnonzero(prods == x)
            kb = self._block_kernel(x)
            if idx.size and kb.shape[1]:
                coeffs = self.field.random((idx.size, kb.shape[1]), rng)
                out[idx] = self.field.matmul(coeffs, np.ascontiguousarray(kb.T))
        return self.cochain(n, out)


def lambda_condition_matrix(c: CenterCoalgebra, n: int) -> np.ndarray:
    return VecGBackend(c).equivariance_matrix(n)


# -- literal evaluation ------------------------------------------------------------


class VecGDiagram:
    """Adapter for :mod:`dycoh.diagram` at one tuple of simple objects.

    Atom axes have size one (the basis vector 1_x of k_x); the state keeps
    the whole of U, so grading is respected by the matrices themselves.
    """

    def __init__(self, c: CenterCoalgebra, elements: dict[str, int]):
        self.c = c
        self.field = c.field
        self.elements = elements
        self._delta_map = np.transpose(c.comul, (1, 2, 0))

    def _element(self, atoms) -> int:
        return self.c.group.prod(self.elements[a] for a in atoms)

    def initial_state(self, objects) -> diagram.State:
        atoms = [a for obj in objects for a in obj]
        d = self.c.dim
        arr = self.field.eye(d).reshape((d, d) + (1,) * len(atoms))
        return diagram.State(self.field, arr, ["in", "U0"] + atoms)

    def comultiply(self, s, strand, new):
        return s.apply(self._delta_map, [strand, new], [strand])

    def rho(self, s, strand, atoms):
        return s.apply(self.c.beta[self._element(atoms)], [strand], [strand])

    def apply_cochain(self, s, data, degree, strand, objects, batch):
        if len(objects) != degree:
            raise ValueError(f"degree {degree} cochain applied to {len(objects)} objects")
        idx = tuple(self._element(obj) for obj in objects)
        rows_w = data[(slice(None),) + idx]
        rows = self.field.zeros((data.shape[0], self.c.dim))
        rows[:, self.c.w_index] = rows_w
        return s.apply(rows, [batch], [strand])


@dataclass
class DiagramNat:
    """Components of a composite at every simple tuple.

    ``components`` has shape ``batch + (|G|,)*degree + tail`` where the tail is
    ``(dim U,)`` for a map U ⊗ F^n -> F^n (one row per tuple) and
    ``(dim U, dim U)`` (input, output) for maps into F^n ⊗ U, and
    ``(dim U, dim U, dim U)`` for the λ maps into U ⊗ U ⊗ F^n.
    """

    expression: str
    degree: int
    components: np.ndarray

    def restricted(self, c: CenterCoalgebra) -> np.ndarray:
        """Rows restricted to W, for comparison with the reduced representation."""
        return self.components[..., c.w_index]

    def vanishes_off_w(self, c: CenterCoalgebra) -> bool:
        mask = np.ones(c.dim, dtype=bool)
        mask[c.w_index] = False
        return c.field.is_zero(self.components[..., mask])


_ARITY = {
    "delta": 1,
    "cup": 2,
    "sqcup": 2,
    "diamond_i": 2,
    "lambda_L": 0,
    "lambda_R": 0,
    "equivariance_lhs": 1,
    "equivariance_rhs": 1,
}


def _as_batch(x) -> tuple[np.ndarray, int, bool]:
    """(batch array, degree, was_single) from a Cochain or a (degree, batch) pair."""
    if isinstance(x, Cochain):
        return x.data[None], x.degree, True
    deg, arr = x
    return np.asarray(arr), int(deg), False


def diagram_evaluate(c: CenterCoalgebra, expression: str, operands=(), i: int | None = None, degree: int | None = None):
    """Evaluate a composite literally at every tuple of simple objects.

    Operands are Cochains or ``(degree, batch_array)`` pairs; batches give
    results with leading batch axes.  ``degree`` is only needed for
    ``lambda_L``/``lambda_R``.
    """
    if expression not in _ARITY:
        raise ValueError(f"unknown expression {expression!r}; expected one of {sorted(_ARITY)}")
    if len(operands) != _ARITY[expression]:
        raise ValueError(f"{expression} takes {_ARITY[expression]} operands, got {len(operands)}")
    if expression == "diamond_i" and i is None:
        raise ValueError("diamond_i needs the index i")
    ops = [_as_batch(x) for x in operands]
    single = all(s for _, _, s in ops) and bool(ops)
    grp, fld, d = c.group, c.field, c.dim
    degs = [deg for _, deg, _ in ops]
    if expression == "delta":
        out_deg = degs[0] + 1
    elif expression in ("cup", "sqcup"):
        out_deg = degs[0] + degs[1]
    elif expression == "diamond_i":
        out_deg = degs[0] + degs[1] - 1
    elif expression.startswith("equivariance"):
        out_deg = degs[0]
    else:
        if degree is None:
            raise ValueError(f"{expression} needs a degree")
        out_deg = degree
    if out_deg < 0:
        raise ValueError("negative output degree")
    batch_labels = ["bf", "bg"][: len(ops)]
    batch_shape = tuple(a.shape[0] for a, _, _ in ops)
    if expression in ("delta", "cup", "sqcup", "diamond_i"):
        tail = (d,)
    elif expression.startswith("lambda"):
        tail = (d, d, d)
    else:
        tail = (d, d)
    out = fld.zeros(batch_shape + (grp.order,) * out_deg + tail)
    atoms = [f"x{j}" for j in range(out_deg)]
    objects = [[a] for a in atoms]
    for tup in product(range(grp.order), repeat=out_deg):
        cat = VecGDiagram(c, dict(zip(atoms, tup)))
        if expression == "delta":
            s = diagram.delta(cat, ops[0][0], degs[0], objects)
        elif expression == "cup":
            s = diagram.cup(cat, ops[0][0], degs[0], ops[1][0], degs[1], objects)
        elif expression == "sqcup":
            s = diagram.sqcup(cat, ops[0][0], degs[0], ops[1][0], degs[1], objects)
        elif expression == "diamond_i":
            s = diagram.diamond(cat, ops[0][0], degs[0], ops[1][0], degs[1], i, objects)
            if s is None:
                continue
        elif expression == "lambda_L":
            s = diagram.lambda_left(cat, objects)
        elif expression == "lambda_R":
            s = diagram.lambda_right(cat, objects)
        elif expression == "equivariance_lhs":
            s = diagram.equivariance_lhs(cat, ops[0][0], degs[0], objects)
        else:
            s = diagram.equivariance_rhs(cat, ops[0][0], degs[0], objects)
        if expression.startswith("lambda"):
            out[tup] = s.aligned(["in", "U0", "U1"] + atoms).reshape(tail)
            continue
        labels = batch_labels + ["in"] + (["U1"] if expression.startswith("equivariance") else []) + atoms
        val = s.aligned(labels).reshape(batch_shape + tail)
        out[(slice(None),) * len(batch_shape) + tup] = val
    if single:
        out = out.reshape(out.shape[len(batch_shape) :])
    return DiagramNat(expression, out_deg, out)
