"""Finite fields F_p and F_{p^2}, plus matrix helpers over F_p."""

from __future__ import annotations

from itertools import product

import numpy as np
from sympy import isprime


class Fq:
    """F_q with q = p or p^2, p an odd prime.

    Elements of F_p are ints in [0, p). Elements of F_{p^2} are pairs
    (a, b) meaning a + b·√ν for a fixed non-square ν of F_p.
    """

    def __init__(self, p: int, degree: int = 1):
        if p == 2 or not isprime(p):
            raise ValueError(f"need an odd prime, got {p}")
        if degree not in (1, 2):
            raise ValueError("extension degree must be 1 or 2")
        self.p = p
        self.degree = degree
        self.q = p ** degree
        self.nonsquare = next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)

    def __repr__(self):
        return f"Fq({self.q})"

    def elements(self) -> list:
        if self.degree == 1:
            return list(range(self.p))
        return [(a, b) for a in range(self.p) for b in range(self.p)]

    @property
    def zero(self):
        return 0 if self.degree == 1 else (0, 0)

    @property
    def one(self):
        return 1 if self.degree == 1 else (1, 0)

    def add(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x + y) % p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def neg(self, x):
        p = self.p
        return (-x) % p if self.degree == 1 else ((-x[0]) % p, (-x[1]) % p)

    def mul(self, x, y):
        p = self.p
        if self.degree == 1:
            return (x * y) % p
        a, b = x
        c, d = y
        return ((a * c + self.nonsquare * b * d) % p, (a * d + b * c) % p)

    def pow(self, x, k: int):
        out = self.one
        for _ in range(k % (self.q - 1) if x != self.zero else k):
            out = self.mul(out, x)
        return out

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.q - 2)

    def frobenius(self, x):
        """x ↦ x^p, the nontrivial automorphism of F_{p^2}."""
        if self.degree == 1:
            return x
        return (x[0], (-x[1]) % self.p)

    def norm(self, x):
        return self.mul(x, self.frobenius(x))

    def xi(self, x) -> int:
        """The quadratic character: x^{(q-1)/2} ∈ {±1}."""
        if x == self.zero:
            raise ValueError("ξ(0) is undefined")
        v = self.pow(x, (self.q - 1) // 2)
        return 1 if v == self.one else -1

    def half(self):
        return self.inv(self.add(self.one, self.one))


# matrices over F_p as int64 arrays

def mat(rows, p: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64) % p


def det_mod(a: np.ndarray, p: int) -> int:
    a = a.copy() % p
    n = a.shape[0]
    d = 1
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r, i]), None)
        if piv is None:
            return 0
        if piv != i:
            a[[i, piv]] = a[[piv, i]]
            d = -d
        d = d * int(a[i, i]) % p
        inv = pow(int(a[i, i]), -1, p)
        for r in range(i + 1, n):
            if a[r, i]:
                a[r] = (a[r] - a[r, i] * inv * a[i]) % p
    return d % p


def inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    for i in range(n):
        piv = next((r for r in range(i, n) if aug[r, i]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[[i, piv]] = aug[[piv, i]]
        aug[i] = aug[i] * pow(int(aug[i, i]), -1, p) % p
        for r in range(n):
            if r != i and aug[r, i]:
                aug[r] = (aug[r] - aug[r, i] * aug[i]) % p
    return aug[:, n:]


def all_invertible(n: int, p: int):
    """Every element of GL_n(F_p) as an int64 array."""
    for entries in product(range(p), repeat=n * n):
        a = np.array(entries, dtype=np.int64).reshape(n, n)
        if det_mod(a, p):
            yield a


def standard_j(N: int) -> np.ndarray:
    z, i = np.zeros((N, N), dtype=np.int64), np.eye(N, dtype=np.int64)
    return np.block([[z, i], [-i, z]])


def is_symplectic_blocks(g: np.ndarray, p: int) -> bool:
    """g = [[a, b], [c, d]] preserves the standard form iff
    aᵗc and bᵗd are symmetric and aᵗd − cᵗb = 1."""
    N = g.shape[0] // 2
    a, b, c, d = g[:N, :N], g[:N, N:], g[N:, :N], g[N:, N:]
    sym = lambda x: np.array_equal(x % p, x.T % p)
    one = (a.T @ d - c.T @ b - np.eye(N, dtype=np.int64)) % p
    return sym(a.T @ c) and sym(b.T @ d) and not one.any()


def symplectic_basis(gram: np.ndarray, p: int) -> np.ndarray:
    """Columns e_1..e_N, f_1..f_N with ⟨e_i, f_j⟩ = δ_ij and the rest zero."""
    n = gram.shape[0]
    if n % 2:
        raise ValueError("alternating form on an odd-dimensional space")
    form = lambda u, v: int(u @ gram @ v) % p
    pool = [np.eye(n, dtype=np.int64)[:, k] for k in range(n)]
    es, fs = [], []
    while pool:
        e = pool.pop(0)
        if not e.any():
            continue
        k = next((k for k, v in enumerate(pool) if form(e, v)), None)
        if k is None:
            raise ValueError("form is degenerate")
        f = pool.pop(k)
        f = f * pow(form(e, f), -1, p) % p
        es.append(e)
        fs.append(f)
        pool = [(u - form(u, f) * e + form(u, e) * f) % p for u in pool]
    return np.stack(es + fs, axis=1) % p
