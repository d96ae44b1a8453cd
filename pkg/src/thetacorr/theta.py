"""Theta correspondence on unipotent labels.

Pair sets for (GL, GL), (U, U) and (Sp, O^±), first occurrence in Witt
towers, the one-to-one subrelations Θ̲ and Θ̄, and relation-level checks.
Symplectic and orthogonal labels are symbols, linear and unitary labels are
partitions.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Union

from .partitions import Bipartition, EMPTY, Partition, close, intersections, partitions_of, preceq, two_core, union
from .symbols import (
    Family,
    GroupKind,
    Oeven,
    Sp,
    Symbol,
    cuspidal_symbol,
    enumerate_symbols,
    ord_symbol,
    partition_of_beta,
    rank_offset,
    symbol_of_partition,
    upsilon,
    upsilon_inv,
)
from .weyl_b import omega

Label = Union[Symbol, Partition]


def GL(n: int) -> GroupKind:
    return GroupKind(Family.GL, n)


def U(n: int) -> GroupKind:
    """U_n; the sign records the parity of n, which fixes the Witt tower."""
    return GroupKind(Family.U, n, 1 if n % 2 == 0 else -1)


def _sign(eps) -> int:
    if eps in (1, "+", "+1"):
        return 1
    if eps in (-1, "-", "-1"):
        return -1
    raise ValueError(f"sign must be + or -, got {eps!r}")


def _sign_str(eps: int) -> str:
    return "+" if eps > 0 else "-"


# data types

@dataclass(frozen=True)
class DualPairSpec:
    left: GroupKind
    right: GroupKind
    pair_type: str = "I"

    def __post_init__(self):
        fams = {self.left.family, self.right.family}
        if self.pair_type == "II":
            if fams != {Family.GL}:
                raise ValueError("type II pairs are (GL, GL)")
        elif self.pair_type == "I":
            ok = fams == {Family.U} or (
                Family.SP in fams and len(fams) == 2 and fams & {Family.O_EVEN, Family.O_ODD}
            )
            if not ok:
                raise ValueError(f"not a type I dual pair: {self.left.label} x {self.right.label}")
        else:
            raise ValueError(f"pair type must be I or II, got {self.pair_type!r}")

    @classmethod
    def sp_o(cls, n: int, nprime: int, eps) -> "DualPairSpec":
        return cls(Sp(n), Oeven(nprime, _sign(eps)))

    @classmethod
    def u_u(cls, n: int, nprime: int) -> "DualPairSpec":
        return cls(U(n), U(nprime))

    @classmethod
    def gl_gl(cls, n: int, nprime: int) -> "DualPairSpec":
        return cls(GL(n), GL(nprime), "II")

    @property
    def eps(self) -> int | None:
        for k in (self.left, self.right):
            if k.family in (Family.O_EVEN, Family.O_ODD):
                return k.eps
        return None

    def swapped(self) -> "DualPairSpec":
        return DualPairSpec(self.right, self.left, self.pair_type)

    def to_json(self) -> dict:
        names = {Family.SP: "Sp", Family.O_EVEN: "O", Family.O_ODD: "O", Family.U: "U", Family.GL: "GL"}
        out = {"left": names[self.left.family], "n": self.left.n, "right": names[self.right.family], "nprime": self.right.n}
        if self.eps is not None:
            out["eps"] = _sign_str(self.eps)
        return out


@dataclass(frozen=True)
class TowerSpec:
    """A Witt tower: spaces V_an ⊕ H^r sharing an anisotropic kernel.

    Groups are indexed by their rank: O^±_{2m}, Sp_{2m} and U_m.
    """

    family: str
    an_dim: int = 0
    disc: int | None = None

    FAMILIES = ("O+even", "O-even", "O+odd", "O-odd", "U+", "U-", "Sp")

    def __post_init__(self):
        if self.family not in self.FAMILIES:
            raise ValueError(f"unknown tower {self.family!r}")
        expected = {"O+even": 0, "O-even": 2, "O+odd": 1, "O-odd": 1, "U+": 0, "U-": 1, "Sp": 0}[self.family]
        if self.an_dim != expected:
            object.__setattr__(self, "an_dim", expected)
        if self.disc is not None and not self.family.endswith("odd"):
            raise ValueError("a discriminant is only recorded for odd orthogonal towers")

    @property
    def parity(self) -> int:
        return self.an_dim % 2

    @property
    def first_rank(self) -> int:
        return {"O-even": 1, "U-": 1}.get(self.family, 0)

    def group(self, m: int) -> GroupKind:
        if self.family == "O+even":
            return Oeven(m, 1)
        if self.family == "O-even":
            return Oeven(m, -1)
        if self.family == "Sp":
            return Sp(m)
        if self.family in ("U+", "U-"):
            if m % 2 != self.parity:
                raise ValueError(f"U_{m} is not in the {self.family} tower")
            return U(m)
        raise ValueError(f"no unipotent labels are modelled for the {self.family} tower")

    def ranks(self, limit: int) -> range:
        step = 2 if self.family.startswith("U") else 1
        return range(self.first_rank, limit + 1, step)

    def dim(self, m: int) -> int:
        return m if self.family.startswith("U") else 2 * m


@dataclass(frozen=True)
class UnipLabel:
    kind: GroupKind
    label: Label

    def __post_init__(self):
        if self.label not in enumerate_symbols(self.kind):
            raise ValueError(f"{self.label} is not a unipotent label of {self.kind.label}")

    def to_json(self):
        return self.label.to_json()


@dataclass(frozen=True)
class ThetaRelation:
    pair: DualPairSpec
    triples: tuple[tuple[Label, Label, int], ...]

    def __post_init__(self):
        if any(m < 1 for _, _, m in self.triples):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "triples", tuple(sorted(self.triples, key=_triple_key)))

    @classmethod
    def from_pairs(cls, pair: DualPairSpec, pairs) -> "ThetaRelation":
        counts = Counter(pairs) if not isinstance(pairs, Counter) else pairs
        return cls(pair, tuple((a, b, m) for (a, b), m in counts.items() if m))

    def pairs(self) -> set[tuple[Label, Label]]:
        return {(a, b) for a, b, _ in self.triples}

    def counter(self) -> Counter:
        return Counter({(a, b): m for a, b, m in self.triples})

    def image(self, x: Label) -> set[Label]:
        return {b for a, b, _ in self.triples if a == x}

    def swapped(self) -> "ThetaRelation":
        return ThetaRelation(self.pair.swapped(), tuple((b, a, m) for a, b, m in self.triples))

    def __len__(self):
        return len(self.triples)

    def to_json(self) -> dict:
        return {
            "pair": self.pair.to_json(),
            "triples": [{"l": a.to_json(), "r": b.to_json(), "m": m} for a, b, m in self.triples],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ThetaRelation":
        p = obj["pair"]
        left, right = p["left"], p["right"]
        if {left, right} == {"Sp", "O"}:
            pair = DualPairSpec.sp_o(p["n"], p["nprime"], p["eps"]) if left == "Sp" else \
                DualPairSpec.sp_o(p["nprime"], p["n"], p["eps"]).swapped()
        elif left == right == "U":
            pair = DualPairSpec.u_u(p["n"], p["nprime"])
        elif left == right == "GL":
            pair = DualPairSpec.gl_gl(p["n"], p["nprime"])
        else:
            raise ValueError(f"unknown pair {p}")

        def lab(kind, x):
            return Partition(x) if kind.family in (Family.GL, Family.U) else Symbol.from_json(x)

        return cls(pair, tuple((lab(pair.left, t["l"]), lab(pair.right, t["r"]), t["m"]) for t in obj["triples"]))


def _label_key(x: Label):
    if isinstance(x, Symbol):
        return (0, x.sort_key())
    return (1, tuple(-p for p in x))


def _triple_key(t):
    return (_label_key(t[0]), _label_key(t[1]), t[2])


# GL x GL

F_READINGS = ("literal", "present-parts", "shifted")
# The two readings of the product over part sizes are "literal" and "present-parts";
# the GL oracle matches neither, and "shifted" (∏ (a_i + 1)) is the variant
# it does match. The default stays the literal reading.
F_READING = "literal"


def f_weight(mu: Partition, reading: str | None = None) -> int:
    """f(μ) for μ = [r^{a_1}, (r-1)^{a_2}, ..., 1^{a_r}].

    "literal" multiplies all a_i, so any missing part size gives 0;
    "present-parts" multiplies only the a_i of sizes that occur;
    "shifted" multiplies a_i + 1 over all sizes.
    """
    reading = reading or F_READING
    if reading not in F_READINGS:
        raise ValueError(f"unknown f reading {reading!r}")
    counts = Counter(mu)
    r = mu[0] if mu else 0
    out = 1
    for size in range(r, 0, -1):
        a = counts.get(size, 0)
        if reading == "shifted":
            out *= a + 1
        elif a or reading == "literal":
            out *= a
    return out


def theta_gl(lam: Partition, nprime: int, reading: str | None = None) -> dict[Partition, int]:
    """θ(E_λ) for (GL_n, GL_n'): λ' ↦ f(ᵗλ ∩= ᵗλ') over ᵗλ' close to ᵗλ."""
    lam = Partition(lam)
    lt = lam.t
    out = {}
    for lp in partitions_of(nprime):
        lpt = lp.t
        if not close(lt, lpt):
            continue
        m = f_weight(intersections(lt, lpt)[1], reading)
        if m:
            out[lp] = m
    return out


def gl_pairs(n: int, nprime: int, reading: str | None = None) -> ThetaRelation:
    pairs = Counter()
    for lam in partitions_of(n):
        for lp, m in theta_gl(lam, nprime, reading).items():
            pairs[(lam, lp)] = m
    return ThetaRelation.from_pairs(DualPairSpec.gl_gl(n, nprime), pairs)


# U x U

def _rowp(row) -> Partition:
    return partition_of_beta(row).t


def unitary_defect_target(d: int, n: int, nprime: int) -> int:
    if (n + nprime) % 2 == 0:
        return 0 if d == 0 else -d + 1
    return -d - 1


def unitary_related(lam: Partition, lp: Partition) -> bool:
    n, nprime = lam.size, lp.size
    s, t = symbol_of_partition(lam), symbol_of_partition(lp)
    if t.defect != unitary_defect_target(s.defect, n, nprime):
        return False
    if (n + nprime) % 2 == 0:
        return preceq(_rowp(s.bot), _rowp(t.top)) and preceq(_rowp(t.bot), _rowp(s.top))
    return preceq(_rowp(s.top), _rowp(t.bot)) and preceq(_rowp(t.top), _rowp(s.bot))


def unitary_pairs(n: int, nprime: int) -> ThetaRelation:
    pairs = [(a, b) for a in partitions_of(n) for b in partitions_of(nprime) if unitary_related(a, b)]
    return ThetaRelation.from_pairs(DualPairSpec.u_u(n, nprime), pairs)


# Sp x O^±

def spo_defect_target(d: int, eps: int) -> int:
    """Defect of the partner symbol; the rule is an involution, so it also
    maps orthogonal defects back to symplectic ones."""
    return -d + 1 if eps > 0 else -d - 1


def spo_related(sp: Symbol, o: Symbol, eps: int) -> bool:
    if o.defect != spo_defect_target(sp.defect, eps):
        return False
    lam, mu = upsilon(sp)
    lp, mp = upsilon(o)
    if eps > 0:
        return preceq(mp, lam) and preceq(mu, lp)
    return preceq(lp, mu) and preceq(lam, mp)


def spo_pairs(n: int, nprime: int, eps) -> ThetaRelation:
    eps = _sign(eps)
    pair = DualPairSpec.sp_o(n, nprime, eps)
    os_ = enumerate_symbols(pair.right)
    pairs = [(a, b) for a in enumerate_symbols(pair.left) for b in os_ if spo_related(a, b, eps)]
    return ThetaRelation.from_pairs(pair, pairs)


def principal_series_pairs(n: int, nprime: int, eps) -> ThetaRelation:
    r = spo_pairs(n, nprime, eps)
    return ThetaRelation(r.pair, tuple(t for t in r.triples if t[0].defect == 1 and t[1].defect == 0))


def theta_relation(pair: DualPairSpec) -> ThetaRelation:
    """Θ for any supported pair, computed from the left-hand side."""
    l, r = pair.left, pair.right
    if l.family is Family.GL:
        return gl_pairs(l.n, r.n)
    if l.family is Family.U:
        return unitary_pairs(l.n, r.n)
    if l.family is Family.SP and r.family is Family.O_EVEN:
        return spo_pairs(l.n, r.n, r.eps)
    if l.family is Family.O_EVEN and r.family is Family.SP:
        # scan from the orthogonal side, independently of spo_pairs
        pairs = [
            (o, s)
            for o in enumerate_symbols(l)
            for s in enumerate_symbols(r)
            if spo_related(s, o, l.eps)
        ]
        return ThetaRelation.from_pairs(pair, pairs)
    raise ValueError(f"no unipotent relation modelled for {l.label} x {r.label}")


def lift(x: UnipLabel, target: GroupKind) -> set[Label]:
    """Θ_{G'}(π_x): the labels of the target related to x."""
    k, lab = x.kind, x.label
    if k.family is Family.GL and target.family is Family.GL:
        return set(theta_gl(lab, target.n))
    if k.family is Family.U and target.family is Family.U:
        return {b for b in partitions_of(target.n) if unitary_related(lab, b)}
    if k.family is Family.SP and target.family is Family.O_EVEN:
        return {b for b in enumerate_symbols(target) if spo_related(lab, b, target.eps)}
    if k.family is Family.O_EVEN and target.family is Family.SP:
        return {b for b in enumerate_symbols(target) if spo_related(b, lab, k.eps)}
    raise ValueError(f"no unipotent relation modelled for {k.label} x {target.label}")


# Ω route through the Weyl groups

def sp_dictionary(sym: Symbol) -> Bipartition:
    return upsilon(sym)


def o_dictionary(sym: Symbol) -> Bipartition:
    """Orthogonal labels enter Ω with their rows swapped (a sgn twist)."""
    return upsilon(sym).swap()


def u_dictionary(lam: Partition) -> Bipartition:
    s = symbol_of_partition(lam)
    return Bipartition(_rowp(s.top), _rowp(s.bot))


def spo_series(n: int, nprime: int, eps: int) -> list[tuple[int, int, int, int, int]]:
    """Harish-Chandra series (c, d, n̄, d', n̄') meeting both ranks."""
    out = []
    c = 0
    while c * c + c <= n:
        d = (-1) ** c * (2 * c + 1)
        dp = spo_defect_target(d, eps)
        nb, nbp = n - c * c - c, nprime - rank_offset(dp)
        if nbp >= 0:
            out.append((c, d, nb, dp, nbp))
        c += 1
    return out


def spo_omega_case(c: int, eps: int, reading: str) -> str:
    if reading == "uncorrected":
        return "SpO-case1" if (eps > 0) == (c % 2 == 0) else "SpO-case2"
    return "SpO-case2" if eps > 0 else "SpO-case1"


def omega_route_spo(n: int, nprime: int, eps, reading: str = "corrected", cs: Iterable[int] | None = None) -> ThetaRelation:
    """Θ on (Sp_2n, O^ε_2n') rebuilt from Ω on the Weyl groups of each series."""
    eps = _sign(eps)
    wanted = None if cs is None else set(cs)
    pairs = Counter()
    for c, d, nb, dp, nbp in spo_series(n, nprime, eps):
        if wanted is not None and c not in wanted:
            continue
        for (a, b), m in omega(spo_omega_case(c, eps, reading), nb, nbp, reading).items():
            pairs[(upsilon_inv(a, d), upsilon_inv(b.swap(), dp))] += m
    return ThetaRelation.from_pairs(DualPairSpec.sp_o(n, nprime, eps), pairs)


def _tri(c: int) -> int:
    return c * (c + 1) // 2


def unitary_core(lam: Partition) -> int:
    return two_core(lam)[1]


def unitary_omega_case(c: int, cp: int) -> str:
    """The unitary case tag; c is read as the smaller of the two cores."""
    lo = min(c, cp)
    return "U-odd-c" if lo % 2 == 1 or c == cp == 0 else "U-even-c"


def unitary_series(n: int, nprime: int) -> list[tuple[int, int, int, int]]:
    """Series (c, c', n̄, n̄') of (U_n, U_n'): |c - c'| = 1, or c = c' = 0."""
    out = []
    c = 0
    while _tri(c) <= n:
        for cp in {c - 1, c + 1} | ({0} if c == 0 else set()):
            if cp < 0 or _tri(cp) > nprime:
                continue
            if (n - _tri(c)) % 2 or (nprime - _tri(cp)) % 2:
                continue
            out.append((c, cp, (n - _tri(c)) // 2, (nprime - _tri(cp)) // 2))
        c += 1
    return sorted(out)


def omega_route_unitary(n: int, nprime: int, reading: str = "corrected") -> ThetaRelation:
    by_label = {u_dictionary(lam): lam for lam in partitions_of(n)}
    by_label_p = {u_dictionary(lam): lam for lam in partitions_of(nprime)}
    pairs = Counter()
    for c, cp, nb, nbp in unitary_series(n, nprime):
        for (a, b), m in omega(unitary_omega_case(c, cp), nb, nbp, reading).items():
            pairs[(by_label[a], by_label_p[b])] += m
    return ThetaRelation.from_pairs(DualPairSpec.u_u(n, nprime), pairs)


# cuspidal unipotent representations

@dataclass(frozen=True)
class CuspidalLift:
    c: int
    c_prime: int
    target: GroupKind
    flavor: str | None = None

    @property
    def symbol(self) -> Symbol | None:
        if self.target.family is not Family.O_EVEN:
            return None
        if self.c_prime == 0:
            return Symbol.make((), ())
        s = cuspidal_symbol(Family.O_EVEN, self.c_prime)
        return s if self.flavor == "+" else s.t


def cuspidal_theta(c: int, pair: DualPairSpec) -> CuspidalLift:
    """The first lift of the cuspidal unipotent π_c in the tower of pair.right.

    For (Sp, O^ε): c' = c with flavor "-" when ε = (-1)^c, else c' = c + 1 with
    flavor "+"; the target is O^ε_{2c'^2}. For (U, U) the target tower
    parity picks c' ∈ {c - 1, c + 1}; c = 0 stays at 0 in the even tower.
    """
    if c < 0:
        raise ValueError("c must be non-negative")
    left, right = pair.left, pair.right
    if left.family is Family.SP and right.family is Family.O_EVEN:
        eps = right.eps
        if eps == (-1) ** c:
            return CuspidalLift(c, c, Oeven(c * c, eps), "-")
        return CuspidalLift(c, c + 1, Oeven((c + 1) ** 2, eps), "+")
    if left.family is Family.U and right.family is Family.U:
        parity = right.n % 2
        if c == 0 and parity == 0:
            return CuspidalLift(0, 0, U(0))
        for cp in (c - 1, c + 1):
            if cp >= 0 and _tri(cp) % 2 == parity:
                return CuspidalLift(c, cp, U(_tri(cp)))
    raise ValueError(f"cuspidal lifts are modelled for (Sp, O-even) and (U, U), not {pair.left.label} x {pair.right.label}")


def unitary_cuspidal(c: int) -> Partition:
    return Partition(range(c, 0, -1))


# towers and first occurrence

class ScanLimitExceeded(RuntimeError):
    pass


def default_scan_limit(n: int) -> int:
    env = os.environ.get("THETA_SCAN_LIMIT")
    if env:
        return int(env)
    return 2 * n + 2


@dataclass(frozen=True)
class FirstOccurrence:
    label: UnipLabel
    tower: TowerSpec
    index: int | None
    dim: int | None
    lift: frozenset
    persistent: bool
    scan_limit: int

    @property
    def resolved(self) -> bool:
        return self.index is not None

    def to_json(self) -> dict:
        return {
            "label": self.label.to_json(),
            "group": self.label.kind.label,
            "tower": self.tower.family,
            "index": self.index,
            "dim": self.dim,
            "lift": sorted((x.to_json() for x in self.lift), key=str),
            "persistent": self.persistent,
            "scan_limit": self.scan_limit,
        }


def first_occurrence(x: UnipLabel, tower: TowerSpec, scan_limit: int | None = None) -> FirstOccurrence:
    """Smallest tower rank with a non-empty lift, plus a persistence check
    for every larger rank up to scan_limit. index is None if nothing occurs."""
    if scan_limit is None:
        scan_limit = default_scan_limit(x.kind.n)
    if scan_limit < 0:
        raise ValueError("scan_limit must be non-negative")
    found = None
    persistent = True
    for m in tower.ranks(scan_limit):
        img = lift(x, tower.group(m))
        if found is None:
            if img:
                found = (m, frozenset(img))
        elif not img:
            persistent = False
    if found is None:
        return FirstOccurrence(x, tower, None, None, frozenset(), False, scan_limit)
    m, img = found
    return FirstOccurrence(x, tower, m, tower.dim(m), img, persistent, scan_limit)


@dataclass(frozen=True)
class Conservation:
    dim_plus: int | None
    dim_minus: int | None
    c_inferred: int | None
    holds: bool

    def to_json(self) -> dict:
        return {"dim_plus": self.dim_plus, "dim_minus": self.dim_minus, "c_inferred": self.c_inferred, "holds": self.holds}


def conservation_check(x: UnipLabel, scan_limit: int | None = None) -> Conservation:
    """dim V'+ + dim V'- + 2c = 4n + 2 over the two even orthogonal towers."""
    if x.kind.family is not Family.SP:
        raise ValueError("conservation is checked for symplectic labels")
    n = x.kind.n
    plus = first_occurrence(x, TowerSpec("O+even"), scan_limit)
    minus = first_occurrence(x, TowerSpec("O-even"), scan_limit)
    if not (plus.resolved and minus.resolved):
        raise ScanLimitExceeded(f"no first occurrence of {x.label} within rank {plus.scan_limit}")
    rest = 4 * n + 2 - plus.dim - minus.dim
    c = rest // 2 if rest % 2 == 0 else None
    return Conservation(plus.dim, minus.dim, c, c is not None and c >= 0)


# one-to-one subrelations

def underline_theta(x: UnipLabel, target: GroupKind) -> Symbol:
    """Θ̲: Υ(Λ') = Υ(Λ) with rows swapped, plus a row r on top (ε = +) or on
    the bottom (ε = -), r fixed by the target rank."""
    fams = {x.kind.family, target.family}
    if fams != {Family.SP, Family.O_EVEN}:
        raise ValueError("Θ̲ is defined for (Sp, O-even) pairs")
    eps = target.eps if target.family is Family.O_EVEN else x.kind.eps
    d = x.label.defect
    dp = spo_defect_target(d, eps)
    lam, mu = upsilon(x.label)
    r = target.n - rank_offset(dp) - lam.size - mu.size
    if r < 0:
        raise ValueError(f"Θ̲ of {x.label} is not defined at rank {target.n}")
    extra = Partition([r] if r else [])
    b = Bipartition(union(mu, extra), lam) if eps > 0 else Bipartition(mu, union(lam, extra))
    return upsilon_inv(b, dp)


def underline_relation(pair: DualPairSpec) -> ThetaRelation:
    pairs = []
    for a in enumerate_symbols(pair.left):
        try:
            pairs.append((a, underline_theta(UnipLabel(pair.left, a), pair.right)))
        except ValueError:
            pass
    return ThetaRelation.from_pairs(pair, pairs)


def default_order(sym: Symbol):
    """Non-canonical default order: (defect, Υ-top, Υ-bottom), lexicographic."""
    lam, mu = upsilon(sym)
    return (sym.defect, tuple(lam), tuple(mu))


@lru_cache(maxsize=None)
def _ord(sym: Symbol) -> int:
    return ord_symbol(sym)


def overline_theta(pair: DualPairSpec, order: Callable = default_order) -> tuple[dict, list]:
    """Θ̄ by greedy assignment in the given order.

    Each label takes the order-smallest element of maximal q-degree among its
    not yet used partners. Returns (assignment, unmatched labels).
    """
    rel = theta_relation(pair)
    used: set = set()
    out: dict = {}
    unmatched = []
    for a in sorted(enumerate_symbols(pair.left), key=order):
        cands = [b for b in rel.image(a) if b not in used]
        if not cands:
            unmatched.append(a)
            continue
        top = max(_ord(b) for b in cands)
        b = min((b for b in cands if _ord(b) == top), key=order)
        out[a] = b
        used.add(b)
    return out, unmatched


def overline_relation(pair: DualPairSpec, order: Callable = default_order) -> ThetaRelation:
    graph, _ = overline_theta(pair, order)
    return ThetaRelation.from_pairs(pair, list(graph.items()))


# relation-level checks

def semi_persistence_threshold(x: UnipLabel, target: GroupKind) -> int | None:
    """Smallest target rank from which a semi-persistent subrelation must be
    non-empty at x, or None if no threshold applies.

    Ranks are read as (source rank n, target rank n') whichever side the
    symplectic group is on.
    """
    n, d = x.kind.n, x.label.defect
    k = x.kind.family
    if k is Family.SP and target.family is Family.O_EVEN:
        q, rem = divmod(d - 1, 4)
        assert rem == 0
        return n - 2 * q if target.eps > 0 else n + 2 * q + 1
    if k is Family.O_EVEN and target.family is Family.SP:
        if x.kind.eps > 0:
            return n - 2 * (d // 4) if d % 4 == 0 else None
        return n + 2 * ((d - 2) // 4) + 1 if d % 4 == 2 else None
    return None


@dataclass
class RelationProps:
    symmetric: bool | None
    one_to_one: bool
    subrelation_of_theta: bool
    semi_persistent_witnesses: int
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "symmetric": self.symmetric,
            "one_to_one": self.one_to_one,
            "subrelation_of_theta": self.subrelation_of_theta,
            "semi_persistent_witnesses": self.semi_persistent_witnesses,
            "violations": [str(v) for v in self.violations],
        }


def relation_props(rel: ThetaRelation, counterpart: ThetaRelation | None = None) -> RelationProps:
    """Symmetry (against the relation computed from the other side, when
    given), one-to-one-ness, containment in Θ and semi-persistence at rel's ranks."""
    symmetric = None if counterpart is None else rel.pairs() == counterpart.swapped().pairs()
    lefts = Counter(a for a, _, _ in rel.triples)
    rights = Counter(b for _, b, _ in rel.triples)
    one_to_one = all(v == 1 for v in lefts.values()) and all(v == 1 for v in rights.values())
    theta = theta_relation(rel.pair)
    sub = rel.pairs() <= theta.pairs()
    witnesses, violations = 0, []
    if rel.pair.pair_type == "I" and Family.U not in (rel.pair.left.family,):
        for a in enumerate_symbols(rel.pair.left):
            t = semi_persistence_threshold(UnipLabel(rel.pair.left, a), rel.pair.right)
            if t is not None and rel.pair.right.n >= t:
                witnesses += 1
                if a not in lefts:
                    violations.append(a)
    return RelationProps(symmetric, one_to_one, sub, witnesses, violations)
