"""Character tables by Dixon's method.

Class sums act on the centre of the group algebra with structure constants
a_{jkl}; the central characters ω_χ(K_j) = |C_j|χ(g_j)/χ(1) are the common
eigenvectors. Working modulo a prime P ≡ 1 (mod exponent) with P > 2√|G|
gives χ mod P, and the eigenvalue multiplicities of each ρ(g) lift χ(g)
exactly to Q(ζ_e).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np
from sympy import isprime, primitive_root

from .cyclotomic import Cyc, CycloField
from .groups import FiniteGroupTable

EXACT_GUARD = 10 ** 4


@dataclass
class CharTable:
    group: FiniteGroupTable
    field: CycloField
    rows: list[list[Cyc]]  # rows[i][j]: χ_i on class j

    @property
    def degrees(self) -> list[int]:
        return [int(r[0].rational()) for r in self.rows]

    def value(self, i: int, element: int) -> Cyc:
        return self.rows[i][int(self.group.class_of[element])]

    def inner(self, f: list[Cyc], g: list[Cyc]) -> Cyc:
        """⟨f, g⟩ = |G|⁻¹ Σ_x f(x) conj(g(x)) for class functions."""
        tot = self.field.zero()
        for j, cls in enumerate(self.group.classes):
            tot = tot + f[j] * g[j].conj() * len(cls)
        return tot / self.group.order

    def is_orthonormal(self) -> bool:
        n = len(self.rows)
        return all(self.inner(self.rows[i], self.rows[j]) == (1 if i == j else 0) for i in range(n) for j in range(n))

    def columns_orthogonal(self) -> bool:
        G = self.group
        for a in range(len(G.classes)):
            for b in range(len(G.classes)):
                s = self.field.zero()
                for r in self.rows:
                    s = s + r[a] * r[b].conj()
                want = Fraction(G.order, len(G.classes[a])) if a == b else 0
                if s != want:
                    return False
        return True


def _prime_for(e: int, order: int) -> int:
    bound = 2 * isqrt(order) + 2
    P = e + 1
    while not (isprime(P) and P > bound):
        P += e
    return P


def _nullspace(a: np.ndarray, P: int) -> np.ndarray:
    """Basis of the right kernel of a mod P, as columns."""
    a = a.copy() % P
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, P) % P
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % P
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -a[i, f] % P
        basis.append(v)
    return np.array(basis, dtype=np.int64).T.reshape(cols, len(basis))


def _structure_constants(G: FiniteGroupTable) -> np.ndarray:
    """a[j, k, l] = #{x ∈ C_j : x⁻¹z_l ∈ C_k} for z_l the representative of C_l."""
    h = len(G.classes)
    a = np.zeros((h, h, h), dtype=np.int64)
    for l, z in enumerate(G.class_reps):
        for j, cls in enumerate(G.classes):
            for x in cls:
                k = G.class_of[G.mult[G.inverse[x], z]]
                a[j, k, l] += 1
    return a


def _split_spaces(mats: list[np.ndarray], h: int, P: int) -> list[np.ndarray]:
    spaces = [np.eye(h, dtype=np.int64)]
    for m in mats:
        done = []
        for S in spaces:
            if S.shape[1] == 1:
                done.append(S)
                continue
            # eigenvectors of m inside the invariant subspace S
            found = []
            for lam in range(P):
                K = _nullspace((m - lam * np.eye(h, dtype=np.int64)) @ S % P, P)
                if K.shape[1]:
                    found.append(S @ K % P)
            if sum(x.shape[1] for x in found) != S.shape[1]:
                raise ArithmeticError("class algebra did not split")
            done.extend(found)
        spaces = done
    if any(S.shape[1] != 1 for S in spaces):
        raise ArithmeticError("common eigenspaces are not one-dimensional")
    return [S[:, 0] for S in spaces]


def character_table(G: FiniteGroupTable) -> CharTable:
    if G.order > EXACT_GUARD:
        raise ValueError(f"{G.name}: order {G.order} beyond the exact-path guard")
    h = len(G.classes)
    e = G.exponent
    P = _prime_for(e, G.order)
    z = pow(primitive_root(P), (P - 1) // e, P)
    a = _structure_constants(G)
    sizes = [len(c) for c in G.classes]
    inv_class = [int(G.class_of[G.inverse[r]]) for r in G.class_reps]
    # Σ_l a[j,k,l] ω_l = ω_j ω_k: ω is a common right eigenvector of the a[j]
    mats = [a[j] % P for j in range(h)]
    vecs = _split_spaces(mats, h, P)
    field = CycloField(e)
    rows = []
    for v in vecs:
        v = v * pow(int(v[0]), -1, P) % P
        s = sum(int(v[l]) * int(v[inv_class[l]]) * pow(sizes[l], -1, P) for l in range(h)) % P
        d2 = G.order * pow(s, -1, P) % P
        deg = next(d for d in range(1, isqrt(G.order) + 1) if d * d % P == d2)
        chi_mod = [deg * int(v[l]) * pow(sizes[l], -1, P) % P for l in range(h)]
        row = []
        for l, rep in enumerate(G.class_reps):
            powers = [chi_mod[G.class_of[G.power(rep, j)]] for j in range(e)]
            counts = []
            for k in range(e):
                m = sum(powers[j] * pow(z, (-j * k) % e, P) for j in range(e)) * pow(e, -1, P) % P
                if m > deg:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                counts.append(m)
            row.append(field.from_powers(counts))
        rows.append(row)
    rows.sort(key=lambda r: (int(r[0].rational()), [str(x) for x in r]))
    # trivial character first
    triv = next(i for i, r in enumerate(rows) if all(x == 1 for x in r))
    rows.insert(0, rows.pop(triv))
    return CharTable(G, field, rows)
