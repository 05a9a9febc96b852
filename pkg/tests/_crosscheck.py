"""Compare the Vec_G fast path against the string-diagram evaluator."""

import numpy as np

from dycoh.vecg import VecGBackend, diagram_evaluate


def basis_batch(b, n):
    return b.field.eye(b.dim(n)).reshape((b.dim(n),) + b.shape(n))


def embed(c, arr):
    out = c.field.zeros(arr.shape[:-1] + (c.dim,))
    out[..., c.w_index] = arr
    return out


def mismatches(c, max_degree):
    """Names of (operation, degrees) where the two implementations differ on
    basis cochains with every input and output degree <= max_degree."""
    b = VecGBackend(c)
    bad = []
    for n in range(max_degree):
        f = basis_batch(b, n)
        if not np.array_equal(diagram_evaluate(c, "delta", [(n, f)]).components, embed(c, b.delta_batch(f, n))):
            bad.append(("delta", n))
    for m in range(max_degree + 1):
        for n in range(max_degree + 1 - m):
            f, g = basis_batch(b, m), basis_batch(b, n)
            for op in ("cup", "sqcup"):
                lhs = diagram_evaluate(c, op, [(m, f), (n, g)]).components
                if not np.array_equal(lhs, embed(c, getattr(b, op + "_batch")(f, m, g, n))):
                    bad.append((op, m, n))
    for m in range(max_degree + 2):
        for n in range(max_degree + 2 - m):
            if m + n == 0:
                continue
            f, g = basis_batch(b, m), basis_batch(b, n)
            for i in range(-1, m + 1):
                lhs = diagram_evaluate(c, "diamond_i", [(m, f), (n, g)], i=i).components
                if not np.array_equal(lhs, embed(c, b.diamond_batch(f, m, g, n, i))):
                    bad.append(("diamond", m, n, i))
    for n in range(max_degree + 1):
        f = basis_batch(b, n)
        lhs = diagram_evaluate(c, "equivariance_lhs", [(n, f)]).components
        rhs = diagram_evaluate(c, "equivariance_rhs", [(n, f)]).components
        diff = c.field.reduce(lhs - rhs).reshape(b.dim(n), -1).T
        if not np.array_equal(diff, b.equivariance_matrix(n)):
            bad.append(("equivariance", n))
    return bad
