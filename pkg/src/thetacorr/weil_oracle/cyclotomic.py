"""Exact arithmetic in cyclotomic fields Q(ζ_m).

Scalars are coefficient vectors in the power basis 1, ζ, ..., ζ^{φ(m)-1}.
Matrices keep the redundant group-ring form Σ_k ζ^k A_k with integer
arrays A_k and one rational scale, which makes products cheap; they are
reduced to the power basis only when compared or traced.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np
import sympy


@lru_cache(maxsize=None)
def cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Coefficients of Φ_m, constant term first."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


class CycloField:
    """Q(ζ_m) with precomputed reduction of ζ^k for 0 ≤ k < m."""

    _cache: dict[int, "CycloField"] = {}

    def __new__(cls, m: int):
        if m in cls._cache:
            return cls._cache[m]
        self = super().__new__(cls)
        self.m = m
        phi = cyclotomic_coeffs(m)
        self.degree = d = len(phi) - 1
        # rows: ζ^k expressed in the power basis
        red = np.zeros((m, d), dtype=object)
        cur = [0] * d
        for k in range(m):
            if k < d:
                cur = [0] * d
                cur[k] = 1
            else:
                # multiply previous row by ζ and reduce ζ^d = -Σ φ_i ζ^i
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [c - top * phi[i] for i, c in enumerate(cur)]
            red[k] = cur
        self.reduction = red
        self._reduction_int = np.array(red.tolist(), dtype=np.int64)
        cls._cache[m] = self
        return self

    def __repr__(self):
        return f"CycloField({self.m})"

    def zeta(self, k: int = 1) -> "Cyc":
        return Cyc(self, self.reduction[k % self.m])

    def from_int(self, n) -> "Cyc":
        return Cyc(self, [n] + [0] * (self.degree - 1))

    def zero(self) -> "Cyc":
        return self.from_int(0)

    def one(self) -> "Cyc":
        return self.from_int(1)

    def from_powers(self, counts) -> "Cyc":
        """Σ_k counts[k] ζ^k for a length-m sequence."""
        v = [Fraction(0)] * self.degree
        for k, c in enumerate(counts):
            if c:
                row = self.reduction[k % self.m]
                for i in range(self.degree):
                    if row[i]:
                        v[i] += c * row[i]
        return Cyc(self, v)

    def reduce_int(self, arr: np.ndarray) -> np.ndarray:
        """Power-basis coefficients of integer arrays stacked along axis 0."""
        return np.tensordot(self._reduction_int.T, arr, axes=1)


class Cyc:
    """An element of Q(ζ_m)."""

    __slots__ = ("field", "c")

    def __init__(self, field: CycloField, coeffs):
        self.field = field
        self.c = tuple(Fraction(x) for x in coeffs)

    # arithmetic

    def _coerce(self, other) -> "Cyc":
        if isinstance(other, Cyc):
            if other.field is not self.field:
                raise ValueError(f"mixing {self.field} and {other.field}; embed first")
            return other
        return self.field.from_int(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Cyc(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.field, [-a for a in self.c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.field, [a * other for a in self.c])
        o = self._coerce(other)
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        out = [Fraction(0)] * d
        red = self.field.reduction
        for k, v in enumerate(prod):
            if v:
                row = red[k % self.field.m]
                for i in range(d):
                    if row[i]:
                        out[i] += v * row[i]
        return Cyc(self.field, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyc(self.field, [a / Fraction(other) for a in self.c])
        raise TypeError("division only by rationals")

    def conj(self) -> "Cyc":
        m = self.field.m
        counts = [Fraction(0)] * m
        for k, a in enumerate(self.c):
            counts[(-k) % m] += a
        return self.field.from_powers(counts)

    def embed(self, field: CycloField) -> "Cyc":
        """Image under Q(ζ_m) ⊂ Q(ζ_M), ζ_m ↦ ζ_M^{M/m}."""
        if field.m % self.field.m:
            raise ValueError(f"{self.field} does not embed in {field}")
        step = field.m // self.field.m
        counts = [Fraction(0)] * field.m
        for k, a in enumerate(self.c):
            counts[(k * step) % field.m] += a
        return field.from_powers(counts)

    # predicates

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.field.m, self.c))

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def is_algebraic_integer_coeffs(self) -> bool:
        """Integral coefficients in the power basis (a basis of Z[ζ_m])."""
        return all(a.denominator == 1 for a in self.c)

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if k == 0 else f"{a}*z^{k}")
        return f"({' + '.join(terms) or '0'})_{self.field.m}"

    def to_json(self) -> dict:
        return {"m": self.field.m, "coeffs": [str(a) for a in self.c]}


class CycloMatrix:
    """Square matrix (1/scale)·Σ_k ζ_m^k A_k with integer arrays A_k."""

    __slots__ = ("field", "parts", "scale")

    def __init__(self, field: CycloField, parts: np.ndarray, scale: int = 1):
        if parts.ndim != 3 or parts.shape[0] != field.m or parts.shape[1] != parts.shape[2]:
            raise ValueError("parts must have shape (m, d, d)")
        self.field = field
        self.parts = parts.astype(np.int64, copy=False)
        self.scale = int(scale)

    @classmethod
    def identity(cls, field: CycloField, d: int) -> "CycloMatrix":
        parts = np.zeros((field.m, d, d), dtype=np.int64)
        parts[0] = np.eye(d, dtype=np.int64)
        return cls(field, parts)

    @property
    def dim(self) -> int:
        return self.parts.shape[1]

    def normal_form(self) -> tuple[np.ndarray, int]:
        """Reduced power-basis coefficients with the scale made coprime."""
        red = self.field.reduce_int(self.parts)
        g = self.scale
        if red.size:
            g = gcd(g, int(np.gcd.reduce(np.abs(red).ravel())))
        g = g or 1
        return red // g, self.scale // g

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if other.field is not self.field:
            raise ValueError("field mismatch")
        m = self.field.m
        out = np.zeros_like(self.parts)
        live_a = [i for i in range(m) if self.parts[i].any()]
        live_b = [j for j in range(m) if other.parts[j].any()]
        for i in live_a:
            for j in live_b:
                out[(i + j) % m] += self.parts[i] @ other.parts[j]
        res = CycloMatrix(self.field, out, self.scale * other.scale)
        return res.compact()

    def compact(self) -> "CycloMatrix":
        red, s = self.normal_form()
        d = self.field.degree
        parts = np.zeros_like(self.parts)
        parts[:d] = red
        return CycloMatrix(self.field, parts, s)

    def scaled(self, sign: int) -> "CycloMatrix":
        return CycloMatrix(self.field, self.parts * sign, self.scale)

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix) or other.field is not self.field:
            return NotImplemented
        a, s = self.normal_form()
        b, t = other.normal_form()
        return s == t and np.array_equal(a, b)

    __hash__ = None

    def trace(self) -> Cyc:
        counts = [Fraction(int(np.trace(self.parts[k])), self.scale) for k in range(self.field.m)]
        return self.field.from_powers(counts)

    def entry(self, i: int, j: int) -> Cyc:
        counts = [Fraction(int(self.parts[k, i, j]), self.scale) for k in range(self.field.m)]
        return self.field.from_powers(counts)

    def conj_transpose(self) -> "CycloMatrix":
        m = self.field.m
        parts = np.zeros_like(self.parts)
        for k in range(m):
            parts[(-k) % m] += self.parts[k].T
        return CycloMatrix(self.field, parts, self.scale)

    def is_unitary(self) -> bool:
        return (self @ self.conj_transpose()) == CycloMatrix.identity(self.field, self.dim)
