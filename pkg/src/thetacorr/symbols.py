"""β-sets and Lusztig symbols: rank, defect, the Υ dictionary to bipartitions,
families, enumeration and generic degrees."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple

import sympy

from .partitions import Bipartition, Partition, bipartitions_of, two_core


# β-sets

def beta_rank(xs: Iterable[int]) -> int:
    xs = list(xs)
    return sum(xs) - comb(len(xs), 2)


def shift_beta(xs: Iterable[int], k: int = 1) -> tuple[int, ...]:
    xs = tuple(xs)
    for _ in range(k):
        xs = (0,) + tuple(x + 1 for x in xs)
    return xs


def beta_of_partition(lam: Partition) -> tuple[int, ...]:
    """β-set of lam with the parity normalisation keyed to the 2-core.

    rank(beta_of_partition(lam)) == |lam| always.
    """
    lam = Partition(lam)
    h = len(lam)
    _, d = two_core(lam)
    if (h + d) % 2 == 0:
        xs = [lam[i - 1] + (h - i) for i in range(1, h + 1)]
    else:
        xs = [0] + [lam[i - 1] + (h - i) + 1 for i in range(1, h + 1)]
    return tuple(sorted(xs))


def partition_of_beta(xs: Iterable[int]) -> Partition:
    xs = sorted(xs)
    m = len(xs)
    if len(set(xs)) != m or (xs and xs[0] < 0):
        raise ValueError(f"not a β-set: {xs}")
    return Partition(sorted((x - i for i, x in enumerate(xs)), reverse=True))


# symbols

def _row(xs: Iterable[int]) -> tuple[int, ...]:
    xs = tuple(sorted(int(x) for x in xs))
    if len(set(xs)) != len(xs) or (xs and xs[0] < 0):
        raise ValueError(f"symbol rows must be distinct non-negative integers: {xs}")
    return xs


def _reduce(top: tuple[int, ...], bot: tuple[int, ...]):
    while top and bot and top[0] == 0 and bot[0] == 0:
        top = tuple(x - 1 for x in top[1:])
        bot = tuple(x - 1 for x in bot[1:])
    return top, bot


class Symbol(NamedTuple):
    """Two strictly increasing rows, stored in reduced form (0 not in both rows)."""

    top: tuple[int, ...]
    bot: tuple[int, ...]

    @classmethod
    def make(cls, top: Iterable[int] = (), bot: Iterable[int] = ()) -> "Symbol":
        return cls(*_reduce(_row(top), _row(bot)))

    @classmethod
    def parse(cls, text: str) -> "Symbol":
        """Parse ``"0,1,3/1,2"`` or the display form ``"(0 1 3 // 1 2)"``.

        A row may be empty or ``-``.
        """
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1].replace("//", "/")
        if text.count("/") != 1:
            raise ValueError(f"symbol needs one '/' between rows: {text!r}")
        a, b = text.split("/", 1)

        def row(s):
            s = s.strip()
            return [] if s in ("", "-") else [int(x) for x in s.replace(" ", ",").split(",") if x]

        return cls.make(row(a), row(b))

    @property
    def defect(self) -> int:
        return len(self.top) - len(self.bot)

    @property
    def rank(self) -> int:
        r, s = len(self.top), len(self.bot)
        return sum(self.top) + sum(self.bot) - ((r + s - 1) ** 2) // 4

    @property
    def t(self) -> "Symbol":
        return Symbol(self.bot, self.top)

    def shift(self, k: int = 1) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Unreduced rows of the k-fold shift."""
        return shift_beta(self.top, k), shift_beta(self.bot, k)

    def sort_key(self):
        return (self.defect, self.top, self.bot)

    def __str__(self):
        def fmt(row):
            return " ".join(map(str, row)) if row else "-"

        return f"({fmt(self.top)} // {fmt(self.bot)})"

    def to_json(self) -> dict:
        return {"top": list(self.top), "bot": list(self.bot)}

    @classmethod
    def from_json(cls, obj: dict) -> "Symbol":
        return cls.make(obj["top"], obj["bot"])


def symbol_rank(top: Iterable[int], bot: Iterable[int]) -> int:
    top, bot = list(top), list(bot)
    r, s = len(top), len(bot)
    return sum(top) + sum(bot) - ((r + s - 1) ** 2) // 4


def is_distinguished(sym: Symbol) -> bool:
    a, b = sym.top, sym.bot
    if sym.defect == 1:
        merged = [x for pair in zip(a, b) for x in pair] + [a[-1]]
    elif sym.defect == 0:
        merged = [x for pair in zip(a, b) for x in pair]
    else:
        return False
    return all(x <= y for x, y in zip(merged, merged[1:]))


def is_degenerate(sym: Symbol) -> bool:
    return sym.top == sym.bot


@dataclass(frozen=True)
class SymbolInfo:
    rank: int
    defect: int
    reduced_form: Symbol
    is_distinguished: bool
    is_degenerate: bool


def analyze(top: Iterable[int], bot: Iterable[int] = ()) -> SymbolInfo:
    """Rank, defect and shape data for a possibly unreduced symbol."""
    if isinstance(top, Symbol):
        top, bot = top.top, top.bot
    top, bot = _row(top), _row(bot)
    red = Symbol.make(top, bot)
    return SymbolInfo(
        rank=symbol_rank(top, bot),
        defect=len(top) - len(bot),
        reduced_form=red,
        is_distinguished=is_distinguished(red),
        is_degenerate=is_degenerate(red),
    )


def symbol_of_partition(lam: Partition) -> Symbol:
    """The symbol attached to a partition (labels of unitary unipotents).

    The even and odd members of the β-set are halved, (x/2 and (x-1)/2), so
    that Υ of the result is the 2-quotient of lam.
    """
    xs = beta_of_partition(lam)
    even = [x // 2 for x in xs if x % 2 == 0]
    odd = [x // 2 for x in xs if x % 2 == 1]
    _, d = two_core(lam)
    if d % 2 == 0:
        return Symbol.make(odd, even)
    return Symbol.make(even, odd)


def row_partition(row: Iterable[int]) -> Partition:
    """Υ of a single row: subtract the staircase (r-1, ..., 1, 0)."""
    return partition_of_beta(row)


def upsilon(sym: Symbol) -> Bipartition:
    return Bipartition(row_partition(sym.top), row_partition(sym.bot))


def upsilon_inv(b: Bipartition, d: int) -> Symbol:
    """Inverse of Υ on symbols of defect d."""
    top, bot = Partition(b.top), Partition(b.bottom)
    s = max(len(bot), len(top) - d, -d, 0)
    r = s + d
    if r < len(top) or r < 0:
        raise ValueError(f"no symbol of defect {d} with Υ = {b}")
    tp = list(top) + [0] * (r - len(top))
    bp = list(bot) + [0] * (s - len(bot))
    top_row = [tp[r - 1 - i] + i for i in range(r)]
    bot_row = [bp[s - 1 - i] + i for i in range(s)]
    if any(x < 0 for x in top_row + bot_row):
        raise ValueError(f"negative entry reconstructing {b} at defect {d}")
    return Symbol.make(top_row, bot_row)


def rank_offset(d: int) -> int:
    """rank(Λ) - |Υ(Λ)| for symbols of defect d."""
    return (d * d - 1) // 4 if d % 2 else d * d // 4


# families

def subsymbol(m: Symbol | tuple, z: Symbol) -> bool:
    return set(m[0]) <= set(z.top) and set(m[1]) <= set(z.bot)


def singles(z: Symbol) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Z_I: Z with the entries common to both rows removed from both rows."""
    both = set(z.top) & set(z.bot)
    return (tuple(x for x in z.top if x not in both), tuple(x for x in z.bot if x not in both))


def family_member(z: Symbol, m: tuple) -> Symbol:
    """Λ_M: move the entries of M in Z to the other row."""
    mt, mb = set(m[0]), set(m[1])
    zi = singles(z)
    if not (mt <= set(zi[0]) and mb <= set(zi[1])):
        raise ValueError(f"{m} is not a subsymbol of the singles of {z}")
    top = (set(z.top) - mt) | mb
    bot = (set(z.bot) - mb) | mt
    return Symbol.make(top, bot)


def family_coordinates(z: Symbol, lam: Symbol):
    """M with Λ_M = lam, or None if lam lies outside the family of Z.

    Z is reduced, hence so is every Λ_M, and M can be read off rowwise.
    """
    if sorted(z.top + z.bot) != sorted(lam.top + lam.bot):
        return None
    m = (tuple(sorted(set(z.top) - set(lam.top))), tuple(sorted(set(z.bot) - set(lam.bot))))
    if not subsymbol(m, Symbol(*singles(z))):
        return None
    return m if family_member(z, m) == lam else None


def add(z: Symbol, lam1: Symbol, lam2: Symbol) -> Symbol:
    """Λ_M + Λ_M' = Λ_{M △ M'} inside the family of Z."""
    m1, m2 = family_coordinates(z, lam1), family_coordinates(z, lam2)
    if m1 is None or m2 is None:
        raise ValueError("both symbols must belong to the family of Z")
    n = (set(m1[0]) ^ set(m2[0]), set(m1[1]) ^ set(m2[1]))
    return family_member(z, n)


def family_core(sym: Symbol) -> Symbol:
    """The distinguished symbol with the same entries as sym."""
    entries = sorted(sym.top + sym.bot)
    return Symbol.make(entries[0::2], entries[1::2])


# group kinds and enumeration

class Family(str, Enum):
    GL = "GL"
    U = "U"
    SP = "Sp"
    SO_ODD = "SOodd"
    O_EVEN = "Oeven"
    O_ODD = "Oodd"


@dataclass(frozen=True)
class GroupKind:
    family: Family
    n: int
    eps: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        needs_sign = self.family in (Family.O_EVEN, Family.O_ODD, Family.U)
        if needs_sign and self.eps not in (1, -1):
            raise ValueError(f"{self.family.value} needs eps = ±1")
        if not needs_sign and self.eps is not None:
            raise ValueError(f"{self.family.value} carries no sign")
        if self.n < 0:
            raise ValueError("rank must be non-negative")

    @property
    def label(self) -> str:
        sign = "" if self.eps is None else ("+" if self.eps > 0 else "-")
        return f"{self.family.value}{sign}({self.n})"

    def to_json(self) -> dict:
        out = {"family": self.family.value, "n": self.n}
        if self.eps is not None:
            out["eps"] = "+" if self.eps > 0 else "-"
        return out


def Sp(n: int) -> GroupKind:
    return GroupKind(Family.SP, n)


def Oeven(n: int, eps: int) -> GroupKind:
    return GroupKind(Family.O_EVEN, n, eps)


@lru_cache(maxsize=None)
def symbols_of(n: int, d: int) -> tuple[Symbol, ...]:
    """All reduced symbols of rank n and defect d."""
    off = rank_offset(d)
    if off > n:
        return ()
    return tuple(sorted((upsilon_inv(b, d) for b in bipartitions_of(n - off)), key=Symbol.sort_key))


def defects_for(n: int, residue: int) -> list[int]:
    out = []
    d = 0
    while rank_offset(d) <= n:
        for x in {d, -d}:
            if x % 4 == residue:
                out.append(x)
        d += 1
    return sorted(out)


@lru_cache(maxsize=None)
def _enumerate(family: Family, n: int, eps: int | None) -> tuple[Symbol, ...]:
    if family is Family.SP:
        residue = 1
    elif family is Family.O_EVEN:
        residue = 0 if eps == 1 else 2
    else:
        raise ValueError(f"no symbol enumeration for {family.value}")
    out = [s for d in defects_for(n, residue) for s in symbols_of(n, d)]
    return tuple(sorted(out, key=Symbol.sort_key))


def enumerate_symbols(kind: GroupKind):
    """Unipotent labels of the group: symbols for Sp/O-even, partitions for GL/U."""
    from .partitions import partitions_of

    if kind.family in (Family.GL, Family.U):
        return partitions_of(kind.n)
    return _enumerate(kind.family, kind.n, kind.eps)


@lru_cache(maxsize=None)
def distinguished_symbols(n: int, d: int) -> tuple[Symbol, ...]:
    return tuple(s for s in symbols_of(n, d) if is_distinguished(s))


def family_members(z: Symbol, parity: int | None = None) -> tuple[Symbol, ...]:
    """Λ_M for M ⊆ Z_I, restricted to |M| ≡ parity mod 2 when given."""
    zt, zb = singles(z)
    pool = [(0, x) for x in zt] + [(1, x) for x in zb]
    out = set()
    for k in range(len(pool) + 1):
        if parity is not None and k % 2 != parity:
            continue
        for chosen in combinations(pool, k):
            m = (tuple(x for r, x in chosen if r == 0), tuple(x for r, x in chosen if r == 1))
            out.add(family_member(z, m))
    return tuple(sorted(out, key=Symbol.sort_key))


def families(kind: GroupKind) -> list[tuple[Symbol, tuple[Symbol, ...]]]:
    """Partition of the unipotent labels into families S_Z, keyed by the core Z."""
    if kind.family is Family.SP:
        cores, parity = distinguished_symbols(kind.n, 1), 0
    elif kind.family is Family.O_EVEN:
        cores, parity = distinguished_symbols(kind.n, 0), 0 if kind.eps == 1 else 1
    else:
        raise ValueError(f"no families for {kind.family.value}")
    out = []
    for z in cores:
        members = family_members(z, parity)
        if members:
            out.append((z, members))
    return out


def cuspidal_symbol(family: Family | str, c: int) -> Symbol:
    family = Family(family)
    if family is Family.SP:
        row = tuple(range(2 * c + 1))
    elif family is Family.O_EVEN:
        if c < 1:
            raise ValueError("orthogonal cuspidal symbols need c >= 1")
        row = tuple(range(2 * c))
    else:
        raise ValueError(f"no cuspidal symbol for {family.value}")
    return Symbol.make(row, ()) if c % 2 == 0 else Symbol.make((), row)


# generic degrees

_q = sympy.Symbol("q")


def generic_degree(sym: Symbol) -> sympy.Expr:
    """Generic degree, as a polynomial in q, of the unipotent representation
    labelled by sym.

    Odd defect gives the symplectic degree; even defect gives the degree for
    the full even orthogonal group of sign (-1)^(defect/2).
    """
    a, b = sym.top, sym.bot
    m = len(a) + len(b)
    n = sym.rank
    if n == 0:
        return sympy.Integer(1)
    num = sympy.Integer(1)
    if m % 2:
        for i in range(1, n + 1):
            num *= _q ** (2 * i) - 1
        twos = (m - 1) // 2
    else:
        eps = 1 if sym.defect % 4 == 0 else -1
        for i in range(1, n):
            num *= _q ** (2 * i) - 1
        num *= _q ** n - eps
        twos = (m - 2) // 2
    for row in (a, b):
        for x, y in combinations(row, 2):
            num *= _q ** y - _q ** x
    for x in a:
        for y in b:
            num *= _q ** x + _q ** y
    den = sympy.Integer(2) ** twos * _q ** sum(comb(m - 2 * k, 2) for k in range(1, m // 2 + 1))
    for x in a + b:
        for k in range(1, x + 1):
            den *= _q ** (2 * k) - 1
    return sympy.expand(sympy.cancel(num / den))


def ord_symbol(sym: Symbol) -> int:
    """q-degree of the generic degree."""
    return int(sympy.Poly(generic_degree(sym), _q).degree())
