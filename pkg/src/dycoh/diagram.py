"""Literal evaluation of the composite morphisms defining the complex.

A :class:`State` is a tensor whose axes carry labels: ``"in"`` (the input
basis vector of U, so a state is really a whole linear map), coefficient
strands ``"U0"``, ``"U1"``, atom axes of the objects F(X_j), and batch axes
for families of cochains.  Every composite below is written as the literal
chain of morphisms (comultiply, braid, apply a component of a cochain),
one local map at a time; nothing here knows a closed formula for the
result.

A backend supplies an *adapter* with four hooks:

``initial_state(atoms)``
    identity on U tensored with a chosen vector of every atom.
``comultiply(state, strand, new_strand)``
    apply Δ to one coefficient strand.
``rho(state, strand, atoms)``
    apply the half-braiding ρ^U(X) of the object made of ``atoms``.
``apply_cochain(state, data, degree, strand, objects, batch)``
    apply the components of a batch of cochains at the given objects
    (each object a list of atom labels, possibly empty for the unit).
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field

import numpy as np

from .linalg import Field

_LETTERS = string.ascii_letters


@dataclass
class State:
    field: Field
    arr: np.ndarray
    labels: list[str]
    info: dict = field(default_factory=dict)

    def apply(self, tensor: np.ndarray, outs, ins) -> "State":
        """Contract ``tensor`` (axes ``outs + ins``) against the ``ins`` axes."""
        outs, ins = list(outs), list(ins)
        letters = iter(_LETTERS)
        cur = {lab: next(letters) for lab in self.labels}
        new = [next(letters) for _ in outs]
        missing = [lab for lab in ins if lab not in cur]
        if missing:
            raise KeyError(f"state has no axes {missing}; labels are {self.labels}")
        t_sub = "".join(new) + "".join(cur[lab] for lab in ins)
        s_sub = "".join(cur[lab] for lab in self.labels)
        keep = [lab for lab in self.labels if lab not in ins]
        clash = [lab for lab in outs if lab in keep]
        if clash:
            raise ValueError(f"output labels {clash} already present")
        r_sub = "".join(cur[lab] for lab in keep) + "".join(new)
        arr = self.field.einsum(f"{t_sub},{s_sub}->{r_sub}", tensor, self.arr, keep_int=True)
        return State(self.field, arr, keep + outs, self.info)

    def aligned(self, labels) -> np.ndarray:
        labels = list(labels)
        if sorted(labels) != sorted(self.labels):
            raise ValueError(f"cannot align {self.labels} to {labels}")
        out = np.transpose(self.arr, [self.labels.index(lab) for lab in labels])
        return self.field.reduce(out) if self.field.p else out

    def __add__(self, other: "State") -> "State":
        return State(self.field, self.field.add(self.arr, other.aligned(self.labels)), self.labels, self.info)

    def scaled(self, c: int) -> "State":
        """Multiply by a small integer (a sign, in practice)."""
        arr = self.arr * c if self.arr.dtype == object or abs(c) <= 1 else self.arr.astype(object) * c
        return State(self.field, arr, self.labels, self.info)


def _braid_past(cat, s: State, strand: str, objects) -> State:
    """ρ^U(X_1, ..., X_k): move ``strand`` past each object in turn."""
    for obj in objects:
        s = cat.rho(s, strand, obj)
    return s


def _sum(states):
    total = None
    for st in states:
        total = st if total is None else total + st
    return total


def delta(cat, f, n: int, objects, batch: str = "bf") -> State:
    """δ(f) at objects X_0..X_n."""
    x = list(objects)
    terms = []
    s = cat.initial_state(x)
    s = cat.rho(s, "U0", x[0])
    terms.append(cat.apply_cochain(s, f, n, "U0", x[1:], batch))
    for i in range(1, n + 1):
        merged = x[: i - 1] + [x[i - 1] + x[i]] + x[i + 1 :]
        s = cat.apply_cochain(cat.initial_state(x), f, n, "U0", merged, batch)
        terms.append(s.scaled((-1) ** i))
    s = cat.apply_cochain(cat.initial_state(x), f, n, "U0", x[:n], batch)
    terms.append(s.scaled((-1) ** (n + 1)))
    return _sum(terms)


def cup(cat, f, m: int, g, n: int, objects) -> State:
    """(f ∪ g): Δ, braid the second copy of U past X_1..X_m, then f ⊗ g."""
    x = list(objects)
    s = cat.comultiply(cat.initial_state(x), "U0", "U1")
    s = _braid_past(cat, s, "U1", x[:m])
    s = cat.apply_cochain(s, f, m, "U0", x[:m], "bf")
    return cat.apply_cochain(s, g, n, "U1", x[m:], "bg")


def sqcup(cat, f, m: int, g, n: int, objects) -> State:
    """(f ⊔ g): Δ, f on the second copy, braid the first copy past X_1..X_m, then g."""
    x = list(objects)
    s = cat.comultiply(cat.initial_state(x), "U0", "U1")
    s = cat.apply_cochain(s, f, m, "U1", x[:m], "bf")
    s = _braid_past(cat, s, "U0", x[:m])
    return cat.apply_cochain(s, g, n, "U0", x[m:], "bg")


def diamond(cat, f, m: int, g, n: int, i: int, objects) -> State | None:
    """(f ◇_i g) at X_1..X_{m+n-1}; ``None`` stands for the zero map (i outside [0, m))."""
    if i < 0 or i >= m:
        return None
    x = list(objects)
    s = cat.comultiply(cat.initial_state(x), "U0", "U1")
    s = _braid_past(cat, s, "U1", x[:i])
    s = cat.apply_cochain(s, g, n, "U1", x[i : i + n], "bg")
    block = [a for obj in x[i : i + n] for a in obj]
    outer = x[:i] + [block] + x[i + n :]
    return cat.apply_cochain(s, f, m, "U0", outer, "bf")


def lambda_left(cat, objects) -> State:
    return cat.comultiply(cat.initial_state(list(objects)), "U0", "U1")


def lambda_right(cat, objects) -> State:
    x = list(objects)
    s = cat.comultiply(cat.initial_state(x), "U0", "U1")
    return _braid_past(cat, s, "U1", x)


def equivariance_lhs(cat, f, n: int, objects) -> State:
    """(f ⊗ U) ∘ λ_R: the output keeps strand ``U1``."""
    x = list(objects)
    return cat.apply_cochain(lambda_right(cat, x), f, n, "U0", x, "bf")


def equivariance_rhs(cat, f, n: int, objects) -> State:
    """ρ^U(X_1..X_n) ∘ (U ⊗ f) ∘ λ_L, relabelled so the surviving strand is ``U1``."""
    x = list(objects)
    s = cat.apply_cochain(lambda_left(cat, x), f, n, "U1", x, "bf")
    s = _braid_past(cat, s, "U0", x)
    s.labels = ["U1" if lab == "U0" else lab for lab in s.labels]
    return s
