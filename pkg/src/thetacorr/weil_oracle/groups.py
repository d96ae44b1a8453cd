"""Small matrix groups over F_p with full multiplication tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from ..symbols import Family, GroupKind
from .fq import Fq, all_invertible, det_mod, mat

SIZE_GUARD = 10 ** 5


class GroupTooLarge(RuntimeError):
    pass


def _key(g: np.ndarray) -> bytes:
    return g.astype(np.int64).tobytes()


@dataclass
class FiniteGroupTable:
    """A finite matrix group given by its element list.

    ``mult[i, j]`` is the index of elements[i] @ elements[j]; element 0 is
    the identity.
    """

    name: str
    p: int
    elements: list[np.ndarray]
    gram: np.ndarray | None = None
    kind: GroupKind | None = None
    mult: np.ndarray = field(init=False, repr=False)
    inverse: np.ndarray = field(init=False, repr=False)
    classes: list[list[int]] = field(init=False, repr=False)
    class_of: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.elements) > SIZE_GUARD:
            raise GroupTooLarge(f"{self.name}: {len(self.elements)} elements exceed the guard")
        d = self.elements[0].shape[0]
        ident = np.eye(d, dtype=np.int64)
        els = sorted(self.elements, key=lambda g: (not np.array_equal(g, ident), _key(g)))
        self.elements = els
        index = {_key(g): i for i, g in enumerate(els)}
        n = len(els)
        stack = np.stack(els)
        self.mult = np.empty((n, n), dtype=np.int64)
        for i, g in enumerate(els):
            prods = np.einsum("jk,nkl->njl", g, stack) % self.p
            try:
                self.mult[i] = [index[_key(h)] for h in prods]
            except KeyError:
                raise ValueError(f"{self.name} is not closed under multiplication") from None
        self.inverse = np.argmin(self.mult, axis=1)
        self._classes()

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: np.ndarray) -> int:
        key = _key(g % self.p)
        for i, h in enumerate(self.elements):
            if _key(h) == key:
                return i
        raise KeyError("not an element")

    def _classes(self):
        n = self.order
        self.class_of = np.full(n, -1, dtype=np.int64)
        self.classes = []
        for x in range(n):
            if self.class_of[x] >= 0:
                continue
            orbit = sorted({int(self.mult[self.mult[g, x], self.inverse[g]]) for g in range(n)})
            for y in orbit:
                self.class_of[y] = len(self.classes)
            self.classes.append(orbit)

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    def power(self, x: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = int(self.mult[out, x])
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != 0:
            y = int(self.mult[y, x])
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return lcm(*(self.element_order(c) for c in self.class_reps))

    def check(self, samples: int = 200, seed: int = 0) -> None:
        """Spot-check associativity and the class equation."""
        rng = np.random.default_rng(seed)
        n = self.order
        for a, b, c in rng.integers(0, n, size=(samples, 3)):
            if self.mult[self.mult[a, b], c] != self.mult[a, self.mult[b, c]]:
                raise AssertionError(f"{self.name}: associativity fails")
        if sum(len(c) for c in self.classes) != n:
            raise AssertionError(f"{self.name}: class equation fails")
        if any(self.mult[i, self.inverse[i]] != 0 for i in range(n)):
            raise AssertionError(f"{self.name}: inverse table wrong")

    def det(self, x: int) -> int:
        """Determinant as ±1 or a residue mod p."""
        return det_mod(self.elements[x], self.p)


def isometry_group(name: str, gram: np.ndarray, p: int, kind: GroupKind | None = None) -> FiniteGroupTable:
    """All g with gᵗ·gram·g = gram, by scanning GL_n(F_p)."""
    n = gram.shape[0]
    if p ** (n * n) > 50 * SIZE_GUARD:
        raise GroupTooLarge(f"scan of {n}x{n} matrices over F_{p} is too large")
    els = [g for g in all_invertible(n, p) if np.array_equal((g.T @ gram @ g) % p, gram % p)]
    return FiniteGroupTable(name, p, els, gram=gram % p, kind=kind)


def form_of(kind: GroupKind, p: int) -> np.ndarray:
    """The Gram matrix of the space the group acts on.

    Sp uses the standard alternating form, O^+_2 the split form xy, O^-_2
    the anisotropic form x² − νy² with ν a non-square, O_1 the form x².
    """
    f = kind.family
    if f is Family.SP:
        n = kind.n
        z, i = np.zeros((n, n), dtype=np.int64), np.eye(n, dtype=np.int64)
        return np.block([[z, i], [-i, z]]) % p
    if f is Family.O_EVEN:
        if kind.n != 1:
            raise GroupTooLarge("only O_2^± is modelled")
        if kind.eps > 0:
            return mat([[0, 1], [1, 0]], p)
        nu = Fq(p).nonsquare
        return mat([[1, 0], [0, -nu]], p)
    if f is Family.O_ODD:
        if kind.n != 0:
            raise GroupTooLarge("only O_1 is modelled")
        return mat([[1]], p)
    raise ValueError(f"no form for {kind.label}")


def build_group(kind: GroupKind, q: int) -> FiniteGroupTable:
    """Explicit matrix model of a desk-scale group over F_q (q prime)."""
    if kind.family is Family.GL:
        n = kind.n
        if q ** (n * n) > 50 * SIZE_GUARD:
            raise GroupTooLarge(f"GL_{n}({q}) scan too large")
        return FiniteGroupTable(f"GL{n}({q})", q, list(all_invertible(n, q)), kind=kind)
    if kind.family in (Family.SP, Family.O_EVEN, Family.O_ODD):
        if kind.family is Family.SP:
            name = f"Sp{2 * kind.n}"
        elif kind.family is Family.O_EVEN:
            name = f"O{2 * kind.n}{'+' if kind.eps > 0 else '-'}"
        else:
            name = f"O{2 * kind.n + 1}"
        return isometry_group(f"{name}({q})", form_of(kind, q), q, kind=kind)
    raise ValueError(f"no matrix model for {kind.label}")
