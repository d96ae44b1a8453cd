"""Weil operators on the Schrödinger model.

For g ∈ Sp(W) with g − 1 invertible, put c = (g + 1)(g − 1)^{-1}. Then

    ω(g) = q^{-N} ξ(det(1 − g)) Σ_{w ∈ W} ψ_a(¼⟨cw, w⟩) ρ(w, 0)

intertwines ρ with ρ∘g. Any other g is written as h·(h⁻¹g) with both
factors of that kind. The scalar makes g ↦ ω(g) multiplicative whenever
Sp(W) is perfect. Sp_2(F_3) is not, so there ω is read off from Sp_4(F_3)
through g ↦ g ⊕ 1, whose operators are ω(g) ⊗ 1.
"""

from __future__ import annotations

import random
from itertools import product

import numpy as np

from .cyclotomic import CycloMatrix
from .fq import Fq, det_mod, inv_mod, is_symplectic_blocks, standard_j
from .heisenberg import HeisElement, HeisenbergRep


class IntertwinerError(RuntimeError):
    """Raised when an operator fails to intertwine, e.g. for non-symplectic input."""


class WeilRepresentation:
    def __init__(self, p: int, N: int, a: int = 1, seed: int = 0):
        self.rho = HeisenbergRep(p, N, a)
        self.p, self.N, self.a = p, N, self.rho.a
        self.field = self.rho.field
        self.J = standard_j(N)
        self.I = np.eye(2 * N, dtype=np.int64)
        self._fq = Fq(p)
        self._cache: dict[bytes, CycloMatrix] = {}
        self._helpers: list[np.ndarray] = []
        self._rng = random.Random(seed)
        self._host = WeilRepresentation(p, 2, a, seed) if (p, N) == (3, 1) else None

    @property
    def dim(self) -> int:
        return self.rho.dim

    def _nondegenerate(self, g: np.ndarray) -> bool:
        return det_mod((g - self.I) % self.p, self.p) != 0

    def _cayley(self, g: np.ndarray) -> CycloMatrix:
        p, N, rho = self.p, self.N, self.rho
        c = ((g + self.I) @ inv_mod((g - self.I) % p, p)) % p
        quarter, half = pow(4, -1, p), pow(2, -1, p)
        d = rho.dim
        parts = np.zeros((p, d, d), dtype=np.int64)
        form = c.T @ self.J
        for w in product(range(p), repeat=2 * N):
            w = np.array(w, dtype=np.int64)
            av, bv = w[:N], w[N:]
            base = quarter * int(w @ form @ w) + half * int(av @ bv)
            for i, x in enumerate(rho.points):
                k = self.a * (base + int(x @ bv)) % p
                parts[k, i, rho.point_index(x + av)] += 1
        sign = self._fq.xi(det_mod((self.I - g) % p, p))
        return CycloMatrix(self.field, parts * sign, p ** N).compact()

    def _random_symplectic(self) -> np.ndarray:
        """Product of random symplectic transvections x ↦ x + λ⟨v, x⟩v."""
        p, g = self.p, self.I.copy()
        for _ in range(4 * self.N + 2):
            v = np.array([self._rng.randrange(p) for _ in range(2 * self.N)], dtype=np.int64)
            lam = self._rng.randrange(1, p)
            g = g @ ((self.I + lam * np.outer(v, v @ self.J)) % p) % p
        return g

    def _split(self, g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        pool = iter(self._helpers)
        for _ in range(500):
            h = next(pool, None)
            if h is None:
                h = self._random_symplectic()
                if not self._nondegenerate(h):
                    continue
                self._helpers.append(h)
            rest = inv_mod(h, self.p) @ g % self.p
            if self._nondegenerate(rest):
                return h, rest
        raise IntertwinerError("could not factor the element")

    def operator(self, g: np.ndarray) -> CycloMatrix:
        g = np.asarray(g, dtype=np.int64) % self.p
        key = g.tobytes()
        if key in self._cache:
            return self._cache[key]
        if g.shape != (2 * self.N, 2 * self.N) or not is_symplectic_blocks(g, self.p):
            raise IntertwinerError("element is not symplectic")
        if np.array_equal(g, self.I):
            out = CycloMatrix.identity(self.field, self.dim)
        elif self._host is not None:
            out = self._from_host(g)
        elif self._nondegenerate(g):
            out = self._cayley(g)
        else:
            h, rest = self._split(g)
            out = self.operator(h) @ self.operator(rest)
        self._cache[key] = out
        return out

    __call__ = operator

    def _from_host(self, g: np.ndarray) -> CycloMatrix:
        big = np.eye(4, dtype=np.int64)
        big[np.ix_([0, 2], [0, 2])] = g
        host = self._host.operator(big)
        # functions on X1 x X2 = C[X1] ⊗ C[X2]; keep the x2 = 0 block
        step = self.p
        parts = host.parts[:, ::step, ::step].copy()
        out = CycloMatrix(self.field, parts, host.scale).compact()
        if not (host == _kron_identity(out, step)):
            raise IntertwinerError("restricted operator does not split as ω(g) ⊗ 1")
        return out

    def check_intertwining(self, g: np.ndarray, samples: int | None = None, seed: int = 0) -> bool:
        """ω(g)ρ(w,t) = ρ(gw,t)ω(g) for all (w,t), or a random sample of them."""
        g = np.asarray(g, dtype=np.int64) % self.p
        op = self.operator(g)
        p, N = self.p, self.N
        if samples is None:
            ws = list(product(range(p), repeat=2 * N))
            ts = range(p)
            elems = [(w, t) for w in ws for t in ts]
        else:
            rng = random.Random(seed)
            elems = [(tuple(rng.randrange(p) for _ in range(2 * N)), rng.randrange(p)) for _ in range(samples)]
        for w, t in elems:
            h = HeisElement(w, t, p)
            gh = HeisElement(tuple(g @ np.array(w, dtype=np.int64) % p), t, p)
            if not (op @ self.rho(h) == self.rho(gh) @ op):
                return False
        return True


def _kron_identity(m: CycloMatrix, k: int) -> CycloMatrix:
    eye = np.eye(k, dtype=np.int64)
    parts = np.stack([np.kron(a, eye) for a in m.parts])
    return CycloMatrix(m.field, parts, m.scale)


def weil_operator(g: np.ndarray, model: WeilRepresentation) -> CycloMatrix:
    return model.operator(g)
