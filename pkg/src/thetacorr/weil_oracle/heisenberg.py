"""The Heisenberg group H(W) and its Schrödinger model.

W = F_p^{2N} carries the standard form ⟨u, v⟩ = uᵗJv with J = [[0, I], [-I, 0]],
so X = span(e_i) and Y = span(f_i) are complementary Lagrangians. The model
space is functions on X; ρ((a, b), t) f(x) = ψ_a(t + x·b + ½a·b) f(x + a),
with ψ_a(t) = ζ_p^{a t}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .cyclotomic import CycloField, CycloMatrix
from .fq import standard_j


@dataclass(frozen=True)
class HeisElement:
    w: tuple[int, ...]
    t: int
    p: int

    def __post_init__(self):
        if len(self.w) % 2:
            raise ValueError("w must have even length")
        object.__setattr__(self, "w", tuple(int(x) % self.p for x in self.w))
        object.__setattr__(self, "t", int(self.t) % self.p)

    @property
    def N(self) -> int:
        return len(self.w) // 2

    def form(self, other: "HeisElement") -> int:
        u, v = np.array(self.w), np.array(other.w)
        return int(u @ standard_j(self.N) @ v) % self.p

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        half = pow(2, -1, self.p)
        w = tuple((x + y) % self.p for x, y in zip(self.w, other.w))
        return HeisElement(w, self.t + other.t + half * self.form(other), self.p)

    def inverse(self) -> "HeisElement":
        return HeisElement(tuple(-x for x in self.w), -self.t, self.p)

    def is_central(self) -> bool:
        return not any(self.w)


def heisenberg_elements(p: int, N: int):
    for w in product(range(p), repeat=2 * N):
        for t in range(p):
            yield HeisElement(w, t, p)


class HeisenbergRep:
    """ρ_ψa on C[F_p^N]; points of X are indexed in base p."""

    def __init__(self, p: int, N: int, a: int = 1):
        if a % p == 0:
            raise ValueError("the central character needs a ≠ 0")
        self.p, self.N, self.a = p, N, a % p
        self.field = CycloField(p)
        self.points = [np.array(x, dtype=np.int64) for x in product(range(p), repeat=N)]
        self.dim = len(self.points)
        self._weights = p ** np.arange(N - 1, -1, -1, dtype=np.int64)

    def point_index(self, x: np.ndarray) -> int:
        return int((np.asarray(x) % self.p) @ self._weights)

    def __call__(self, h: HeisElement) -> CycloMatrix:
        if h.p != self.p or h.N != self.N:
            raise ValueError("element lives in another Heisenberg group")
        p, N = self.p, self.N
        half = pow(2, -1, p)
        av, bv = np.array(h.w[:N]), np.array(h.w[N:])
        parts = np.zeros((p, self.dim, self.dim), dtype=np.int64)
        ab = int(av @ bv)
        for i, x in enumerate(self.points):
            k = self.a * (h.t + int(x @ bv) + half * ab) % p
            parts[k, i, self.point_index(x + av)] += 1
        return CycloMatrix(self.field, parts)


def heisenberg_rep(q: int, N: int, a: int = 1) -> HeisenbergRep:
    return HeisenbergRep(q, N, a)
