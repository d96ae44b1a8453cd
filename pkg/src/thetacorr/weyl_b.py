"""Characters of the hyperoctahedral group W_n = (Z/2) wr S_n.

Irreducibles are labelled by bipartitions: E_{λ,μ} is induced from
W_|λ| x W_|μ|, with the S_|μ| factor tensored by the character that is -1 on
each sign change. E_{(n),∅} is the trivial character and E_{∅,(1^n)} the sign
(determinant) character.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, NamedTuple

from .partitions import Bipartition, EMPTY, Partition, bipartitions_of, partitions_of


# Littlewood–Richardson coefficients

@lru_cache(maxsize=None)
def lr_coefficient(mu: Partition, nu: Partition, lam: Partition) -> int:
    """c^lam_{mu,nu}: number of LR tableaux of shape lam/mu and content nu."""
    mu, nu, lam = Partition(mu), Partition(nu), Partition(lam)
    if mu.size + nu.size != lam.size:
        return 0
    if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
        return 0
    if not nu:
        return 1
    rows = [(i, max(mu.part(i + 1), 0), lam[i]) for i in range(len(lam))]
    cells = [(i, j) for i, lo, hi in rows for j in range(hi - 1, lo - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(nu) + 1)

    def go(k: int) -> int:
        if k == len(cells):
            return 1
        i, j = cells[k]
        right = filling.get((i, j + 1), len(nu))
        above = filling.get((i - 1, j), 0)
        total = 0
        for v in range(above + 1, right + 1):
            if counts[v] >= nu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(i, j)] = v
            total += go(k + 1)
            del filling[(i, j)]
            counts[v] -= 1
        return total

    return go(0)


def lr_product(mu: Partition, nu: Partition) -> Counter:
    """s_mu * s_nu as a Counter over partitions."""
    n = Partition(mu).size + Partition(nu).size
    out = Counter()
    for lam in partitions_of(n):
        c = lr_coefficient(mu, nu, lam)
        if c:
            out[lam] = c
    return out


# virtual characters

class VirtualBChar(Counter):
    """Integer combination of irreducibles of W_n keyed by Bipartition."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            for k, v in dict(data).items():
                if v:
                    self[Bipartition(Partition(k[0]), Partition(k[1]))] += v

    def __add__(self, other):
        out = VirtualBChar(self)
        for k, v in other.items():
            out[k] += v
        return out.clean()

    def __sub__(self, other):
        out = VirtualBChar(self)
        for k, v in other.items():
            out[k] -= v
        return out.clean()

    def clean(self) -> "VirtualBChar":
        for k in [k for k, v in self.items() if v == 0]:
            del self[k]
        return self

    @property
    def n(self) -> int | None:
        sizes = {k.size for k in self}
        return sizes.pop() if len(sizes) == 1 else None

    def to_json(self) -> list:
        return [{"label": k.to_json(), "m": v} for k, v in sorted(self.items(), key=lambda kv: _label_key(kv[0]))]


def _label_key(b: Bipartition):
    return (-b.top.size, tuple(-x for x in b.top), tuple(-x for x in b.bottom))


def irreducible(top: Iterable[int] = (), bottom: Iterable[int] = ()) -> VirtualBChar:
    return VirtualBChar({Bipartition.of(top, bottom): 1})


def trivial(n: int) -> Bipartition:
    return Bipartition(Partition([n] if n else []), EMPTY)


def sign_character(n: int) -> Bipartition:
    """The linear character with kernel the type-D subgroup."""
    return sgn_twist(trivial(n))


def induce(a: Bipartition, b: Bipartition) -> VirtualBChar:
    """Ind from W_r x W_s to W_{r+s} of E_a ⊗ E_b."""
    out = VirtualBChar()
    tops = lr_product(a.top, b.top)
    bots = lr_product(a.bottom, b.bottom)
    for (lam, c1), (mu, c2) in product(tops.items(), bots.items()):
        out[Bipartition(lam, mu)] += c1 * c2
    return out


def induce_virtual(x: VirtualBChar, y: VirtualBChar) -> VirtualBChar:
    out = VirtualBChar()
    for a, m in x.items():
        for b, k in y.items():
            for lab, c in induce(a, b).items():
                out[lab] += m * k * c
    return out.clean()


def sgn_twist(x: Bipartition) -> Bipartition:
    """Tensor with the character whose kernel is W(D_n).

    That character is -1 on each sign change and trivial on S_n, so it swaps
    the two halves of the label: sgn ⊗ E_{λ,μ} = E_{μ,λ}.
    """
    return Bipartition(x.bottom, x.top)


def det_twist(x: Bipartition) -> Bipartition:
    """Tensor with the determinant of the reflection representation."""
    return Bipartition(x.bottom.t, x.top.t)


# characters via the wreath Murnaghan–Nakayama rule

class SignedClassLabel(NamedTuple):
    positive: Partition
    negative: Partition

    @property
    def size(self) -> int:
        return self.positive.size + self.negative.size


def _rim_hooks(lam: Partition, k: int) -> Iterator[tuple[Partition, int]]:
    """Remove border strips of length k; yield (rest, height)."""
    lam = list(lam)
    m = len(lam)
    xs = [lam[i] + (m - 1 - i) for i in range(m)]
    present = set(xs)
    for idx, x in enumerate(xs):
        y = x - k
        if y < 0 or y in present:
            continue
        ht = sum(1 for z in xs if y < z < x)
        new = sorted((y if z == x else z) for z in xs)
        rest = Partition(sorted((v - i for i, v in enumerate(new)), reverse=True))
        yield rest, ht


@lru_cache(maxsize=None)
def _mn(lam: Partition, mu: Partition, pos: tuple[int, ...], neg: tuple[int, ...]) -> int:
    if not pos and not neg:
        return 1 if not lam and not mu else 0
    if pos:
        k, pos, sign = pos[0], pos[1:], 1
    else:
        k, neg, sign = neg[0], neg[1:], -1
    total = 0
    for rest, ht in _rim_hooks(lam, k):
        total += (-1) ** ht * _mn(rest, mu, pos, neg)
    for rest, ht in _rim_hooks(mu, k):
        total += sign * (-1) ** ht * _mn(lam, rest, pos, neg)
    return total


def char_value(x: Bipartition, cls: SignedClassLabel) -> int:
    if x.size != cls.size:
        raise ValueError(f"label of size {x.size} against class of size {cls.size}")
    return _mn(Partition(x.top), Partition(x.bottom), tuple(cls.positive), tuple(cls.negative))


def signed_classes(n: int) -> tuple[SignedClassLabel, ...]:
    return tuple(SignedClassLabel(a, b) for a, b in bipartitions_of(n))


def dimension(x: Bipartition) -> int:
    return char_value(x, SignedClassLabel(Partition([1] * x.size), EMPTY))


def class_size(cls: SignedClassLabel) -> int:
    """Number of elements of W_n with signed cycle type cls."""
    from math import factorial

    n = cls.size
    z = 1
    for part in (cls.positive, cls.negative):
        for k, m in Counter(part).items():
            z *= (2 * k) ** m * factorial(m)
    return 2 ** n * factorial(n) // z


# Ω decompositions

OMEGA_CASES = ("U-odd-c", "U-even-c", "SpO-case1", "SpO-case2")
OMEGA_READINGS = ("uncorrected", "corrected")

# (twist E on the left, factor on W_{n̄-r} left, twist E on the right, factor right)
_CASE_SHAPES = {
    "U-odd-c": (False, "1", True, "1"),
    "U-even-c": (False, "sgn", True, "1"),
    "SpO-case1": (False, "sgn", False, "sgn"),
    "SpO-case2": (False, "1", False, "sgn"),
}

# Uncorrected, U-even-c and SpO-case1 are not multiplicity free. Changing
# only the right-hand factor on W_{n̄'-r} repairs both.
_CORRECTED_SHAPES = dict(
    _CASE_SHAPES,
    **{"U-even-c": (False, "sgn", True, "sgn"), "SpO-case1": (False, "sgn", False, "1")},
)


def omega_shape(case: str, reading: str = "uncorrected") -> tuple[bool, str, bool, str]:
    if case not in _CASE_SHAPES:
        raise ValueError(f"unknown Ω case {case!r}; expected one of {OMEGA_CASES}")
    if reading == "uncorrected":
        return _CASE_SHAPES[case]
    if reading == "corrected":
        return _CORRECTED_SHAPES[case]
    raise ValueError(f"unknown Ω reading {reading!r}; expected one of {OMEGA_READINGS}")


def _factor(kind: str, m: int) -> Bipartition:
    return trivial(m) if kind == "1" else sign_character(m)


def omega(case: str, nbar: int, nbar_prime: int, reading: str = "uncorrected") -> Counter:
    """Ω_{n̄,n̄'} expanded into a Counter of (left label, right label) pairs.

    Ω = Σ_r Σ_{E ∈ Irr W_r} Ind(E ⊗ f) ⊗ Ind(E' ⊗ f'), where E' is E or its
    sgn twist and f, f' are the trivial or sgn character of the complementary
    factors, as selected by the case.
    """
    tw_l, f_l, tw_r, f_r = omega_shape(case, reading)
    out = Counter()
    for r in range(min(nbar, nbar_prime) + 1):
        for e in bipartitions_of(r):
            left = induce(sgn_twist(e) if tw_l else e, _factor(f_l, nbar - r))
            right = induce(sgn_twist(e) if tw_r else e, _factor(f_r, nbar_prime - r))
            for a, m in left.items():
                for b, k in right.items():
                    out[(a, b)] += m * k
    return out
