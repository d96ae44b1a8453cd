"""Lusztig-series and Harish-Chandra bookkeeping.

Semisimple classes are abstract eigenvalue data: the multiplicities of 1 and
-1 and a list of remaining orbits. Every predicate here depends only on that
data, so no matrices are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Callable, NamedTuple

from .partitions import Partition, hook_lengths
from .symbols import Family, GroupKind, Oeven, Sp, Symbol, enumerate_symbols, generic_degree, _q
from .theta import (
    DualPairSpec,
    GL,
    TowerSpec,
    U,
    UnipLabel,
    first_occurrence,
    lift,
    unitary_cuspidal,
)


class Orbit(NamedTuple):
    """A Galois orbit of eigenvalues other than ±1 (paired with its inverse
    orbit). GL-type orbits differ from their inverses, U-type orbits are
    closed under inversion."""

    size: int
    mult: int
    type: str = "GL"

    def to_json(self) -> dict:
        return {"size": self.size, "mult": self.mult, "type": self.type}


@dataclass(frozen=True)
class SemisimpleSpectrum:
    nu1: int = 0
    nu_minus1: int = 0
    orbits: tuple[Orbit, ...] = ()

    def __post_init__(self):
        orbits = tuple(sorted(Orbit(*o) for o in self.orbits))
        object.__setattr__(self, "orbits", orbits)
        if self.nu1 < 0 or self.nu_minus1 < 0:
            raise ValueError("eigenvalue multiplicities must be non-negative")
        for o in orbits:
            if o.size < 1 or o.mult < 1:
                raise ValueError(f"bad orbit {o}")
            if o.type not in ("GL", "U"):
                raise ValueError(f"orbit type must be GL or U, got {o.type!r}")

    def rank(self, unitary: bool = False) -> int:
        """Rank of the ambient group. Outside unitary groups a self-dual orbit
        already contains the inverses, so it counts half its size."""
        return self.nu1 + self.nu_minus1 + sum(
            o.size * o.mult if unitary or o.type == "GL" else o.size // 2 * o.mult for o in self.orbits
        )

    def to_json(self) -> dict:
        return {"nu1": self.nu1, "nu_minus1": self.nu_minus1, "orbits": [o.to_json() for o in self.orbits]}

    @classmethod
    def from_json(cls, obj: dict) -> "SemisimpleSpectrum":
        return cls(obj.get("nu1", 0), obj.get("nu_minus1", 0), tuple(Orbit(o["size"], o["mult"], o.get("type", "GL")) for o in obj.get("orbits", [])))


class Factor(NamedTuple):
    """A factor of an endoscopic group, defined over the degree-`degree`
    extension of the base field."""

    kind: GroupKind
    degree: int = 1

    def order(self, q: int) -> int:
        return group_order(self.kind, q ** self.degree)

    def __str__(self):
        return self.kind.label if self.degree == 1 else f"{self.kind.label}[q^{self.degree}]"


@dataclass(frozen=True)
class EndoscopicShape:
    factor_1: Factor
    factor_minus1: Factor | None
    factor_ne: tuple[Factor, ...] = ()

    @property
    def factors(self) -> tuple[Factor, ...]:
        head = (self.factor_1,) if self.factor_minus1 is None else (self.factor_1, self.factor_minus1)
        return head + self.factor_ne

    def order(self, q: int) -> int:
        return prod(f.order(q) for f in self.factors)

    def natural(self, dual_is_so_even: bool = False) -> tuple[Factor, ...]:
        """The ♮ part: the -1 and ≠ factors, or the 1 and ≠ factors when the
        dual group is an even special orthogonal group."""
        keep = self.factor_1 if dual_is_so_even else self.factor_minus1
        return ((keep,) if keep is not None else ()) + self.factor_ne

    def to_json(self) -> dict:
        return {
            "factor_1": str(self.factor_1),
            "factor_minus1": None if self.factor_minus1 is None else str(self.factor_minus1),
            "factor_ne": [str(f) for f in self.factor_ne],
        }


class InconsistentSpectrum(ValueError):
    pass


def _ne_factors(s: SemisimpleSpectrum, unitary_ambient: bool) -> list[Factor]:
    out = []
    for o in s.orbits:
        if o.type == "U":
            if unitary_ambient:
                out.append(Factor(U(o.mult), o.size))
            else:
                if o.size % 2:
                    raise InconsistentSpectrum("self-dual orbits of an orthogonal or symplectic dual have even size")
                out.append(Factor(U(o.mult), o.size // 2))
        else:
            out.append(Factor(GL(o.mult), o.size))
    return out


def _ne_sign(s: SemisimpleSpectrum) -> int:
    """Discriminant contribution of the ≠ part to an even orthogonal group."""
    return (-1) ** sum(o.mult for o in s.orbits if o.type == "U")


def endoscopic_decompose(group: GroupKind, s: SemisimpleSpectrum) -> tuple[EndoscopicShape, ...]:
    """All shapes G_{s,1} x G_{s,-1} x G_{s,≠} compatible with the data.

    Signs of orthogonal factors are not determined by eigenvalue data, so
    every consistent choice is returned.
    """
    fam = group.family
    expected = group.n
    rank = s.rank(fam is Family.U)
    if rank != expected:
        raise InconsistentSpectrum(f"spectrum of rank {rank} for {group.label}")
    if fam is Family.U:
        ne = _ne_factors(s, True)
        if s.nu_minus1:
            ne = [Factor(U(s.nu_minus1))] + ne
        return (EndoscopicShape(Factor(U(s.nu1)), None, tuple(ne)),)
    if fam is Family.GL:
        ne = [Factor(GL(s.nu_minus1))] if s.nu_minus1 else []
        return (EndoscopicShape(Factor(GL(s.nu1)), None, tuple(ne + _ne_factors(s, False))),)
    ne = tuple(_ne_factors(s, False))
    if fam is Family.SO_ODD:
        so = lambda m: GroupKind(Family.SO_ODD, m)
        return (EndoscopicShape(Factor(so(s.nu1)), Factor(so(s.nu_minus1)), ne),)
    if fam is Family.SP:
        signs = (1, -1) if s.nu_minus1 else (1,)
        return tuple(EndoscopicShape(Factor(Sp(s.nu1)), Factor(Oeven(s.nu_minus1, e)), ne) for e in signs)
    if fam is Family.O_EVEN:
        out = []
        for e1 in ((1, -1) if s.nu1 else (1,)):
            for e2 in ((1, -1) if s.nu_minus1 else (1,)):
                if e1 * e2 * _ne_sign(s) == group.eps:
                    out.append(EndoscopicShape(Factor(Oeven(s.nu1, e1)), Factor(Oeven(s.nu_minus1, e2)), ne))
        if not out:
            raise InconsistentSpectrum(f"no orthogonal factors give {group.label}")
        return tuple(out)
    if fam is Family.O_ODD:
        # O_{2n+1} = SO_{2n+1} x {±1}; the dual of the identity component is Sp_2n
        return (EndoscopicShape(Factor(GroupKind(Family.SO_ODD, s.nu1)), Factor(Sp(s.nu_minus1)), ne),)
    raise InconsistentSpectrum(f"no decomposition for {group.label}")


# orders and degrees

def group_order(kind: GroupKind, q: int) -> int:
    n = kind.n
    fam = kind.family
    if fam is Family.GL:
        return q ** (n * (n - 1) // 2) * prod(q ** i - 1 for i in range(1, n + 1))
    if fam is Family.U:
        return q ** (n * (n - 1) // 2) * prod(q ** i - (-1) ** i for i in range(1, n + 1))
    if fam in (Family.SP, Family.SO_ODD):
        return q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    if fam is Family.O_ODD:
        return 2 * q ** (n * n) * prod(q ** (2 * i) - 1 for i in range(1, n + 1))
    if fam is Family.O_EVEN:
        if n == 0:
            return 1
        return 2 * q ** (n * (n - 1)) * (q ** n - kind.eps) * prod(q ** (2 * i) - 1 for i in range(1, n))
    raise ValueError(f"no order formula for {kind.label}")


def p_prime_part(order: int, q: int) -> int:
    p = _prime_of(q)
    while order % p == 0:
        order //= p
    return order


def _prime_of(q: int) -> int:
    for p in range(2, q + 1):
        if q % p == 0:
            return p
    raise ValueError(f"q must be a prime power > 1, got {q}")


def unipotent_degree(kind: GroupKind, label, q: int) -> int:
    """Degree of the unipotent representation with the given label."""
    fam = kind.family
    if fam in (Family.GL, Family.U):
        lam = Partition(label)
        n = lam.size
        sign = -1 if fam is Family.U else 1
        x = sign * q
        num = x ** sum(i * p for i, p in enumerate(lam)) * prod(x ** i - 1 for i in range(1, n + 1))
        den = prod(x ** h - 1 for h in hook_lengths(lam).values())
        if num % den:
            raise ArithmeticError(f"non-integral unipotent degree for {lam}")
        return abs(num // den)
    if fam in (Family.SP, Family.SO_ODD, Family.O_EVEN):
        v = generic_degree(label).subs(_q, q)
        if not v.is_Integer:
            raise ArithmeticError(f"non-integral generic degree for {label} at q={q}")
        return int(v)
    raise ValueError(f"no unipotent degrees for {kind.label}")


# series labels

@dataclass(frozen=True)
class SeriesLabel:
    """π ↔ (s, π^u) with π^u split along the factors of the chosen shape.

    zeta is the sign ζ of E(O_{2n+1}, s, ζ); central_sign is ζ_π with
    π(-1) = ζ_π π(1), when known.
    """

    group: GroupKind
    spectrum: SemisimpleSpectrum
    shape: EndoscopicShape
    unip: tuple
    zeta: int | None = None
    central_sign: int | None = None

    def __post_init__(self):
        if (self.zeta is not None) != (self.group.family is Family.O_ODD):
            raise ValueError("ζ is carried exactly by odd orthogonal groups")
        if self.shape not in endoscopic_decompose(self.group, self.spectrum):
            raise ValueError("shape does not match the spectrum")
        if len(self.unip) != len(self.shape.factors):
            raise ValueError("one unipotent label per factor is needed")
        for f, x in zip(self.shape.factors, self.unip):
            if x not in enumerate_symbols(_label_kind(f.kind)):
                raise ValueError(f"{x} is not a unipotent label of {f}")

    def component(self, which: str):
        """'1', '-1' or 'ne' components, as a label or tuple of labels."""
        has_m1 = self.shape.factor_minus1 is not None
        if which == "1":
            return self.unip[0]
        if which == "-1":
            return self.unip[1] if has_m1 else None
        if which == "ne":
            return tuple(self.unip[2 if has_m1 else 1:])
        raise ValueError(which)


def _label_kind(kind: GroupKind) -> GroupKind:
    # odd special orthogonal groups share their labels with Sp
    return Sp(kind.n) if kind.family is Family.SO_ODD else kind


def jordan_dim(x: SeriesLabel, q: int) -> int:
    """dim π = |G|_{p'} / |G_s|_{p'} · dim π^u."""
    if q % 2 == 0:
        raise ValueError("q must be odd")
    g = p_prime_part(group_order(x.group, q), q)
    gs = p_prime_part(x.shape.order(q), q)
    if g % gs:
        raise ArithmeticError(f"|G_s|_p' = {gs} does not divide |G|_p' = {g}")
    du = prod(unipotent_degree(_label_kind(f.kind), lab, q ** f.degree) for f, lab in zip(x.shape.factors, x.unip))
    return g // gs * du


def sgn_twist_label(kind: GroupKind, label):
    """π ⊗ sgn on unipotent labels of an even orthogonal group."""
    if kind.family is not Family.O_EVEN:
        raise ValueError("sgn twists are taken on even orthogonal labels")
    return label.t


def e_pi_set(x: SeriesLabel) -> set[tuple]:
    """The four sgn-twist variants of (π^u_1, π^u_-1, π^u_≠)."""
    if x.group.family is not Family.O_EVEN:
        raise ValueError("E(π) is defined for even orthogonal groups")
    k1, km1 = x.shape.factor_1.kind, x.shape.factor_minus1.kind
    p1, pm1, ne = x.component("1"), x.component("-1"), x.component("ne")
    return {
        (a, b, ne)
        for a in (p1, sgn_twist_label(k1, p1))
        for b in (pm1, sgn_twist_label(km1, pm1))
    }


# reduction to unipotent representations

UnipOracle = Callable[[DualPairSpec, object, object], bool]


def default_unip_oracle(pair: DualPairSpec, a, b) -> bool:
    return b in lift(UnipLabel(pair.left, a), pair.right)


@dataclass
class Admissibility:
    holds: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.holds


def _ne_match(a: SeriesLabel, b: SeriesLabel) -> bool:
    return a.spectrum.orbits == b.spectrum.orbits and a.component("ne") == b.component("ne")


def _sp_o(sp_rank: int, o_kind: GroupKind) -> DualPairSpec:
    return DualPairSpec(Sp(sp_rank), o_kind)


def admissible(pair: DualPairSpec, left: SeriesLabel, right: SeriesLabel, unip_oracle: UnipOracle = default_unip_oracle) -> Admissibility:
    """Whether (π, π') lies in Θ, by the clause lists reducing to unipotent
    labels. Failing clauses are reported as "clause (k)"."""
    if left.group != pair.left or right.group != pair.right:
        raise ValueError("series labels do not belong to the pair")
    fl, fr = pair.left.family, pair.right.family
    if fl in (Family.O_EVEN, Family.O_ODD) and fr is Family.SP:
        return admissible(pair.swapped(), right, left, unip_oracle)
    reasons = []
    if fl is Family.U and fr is Family.U:
        if not (left.shape.factor_ne == right.shape.factor_ne and _ne_match(left, right)):
            reasons.append("clause (1)")
        a, b = left.component("1"), right.component("1")
        if not unip_oracle(DualPairSpec(left.shape.factor_1.kind, right.shape.factor_1.kind), a, b):
            reasons.append("clause (2)")
    elif fl is Family.SP and fr is Family.O_EVEN:
        if not _ne_match(left, right):
            reasons.append("clause (1)")
        km1, km1p = left.shape.factor_minus1.kind, right.shape.factor_minus1.kind
        pm1, pm1p = left.component("-1"), right.component("-1")
        if km1 != km1p or pm1 not in (pm1p, sgn_twist_label(km1p, pm1p)):
            reasons.append("clause (2)")
        k1p = right.shape.factor_1.kind
        sub = _sp_o(left.shape.factor_1.kind.n, k1p)
        p1, p1p = left.component("1"), right.component("1")
        if not (unip_oracle(sub, p1, p1p) or unip_oracle(sub, p1, sgn_twist_label(k1p, p1p))):
            reasons.append("clause (3)")
    elif fl is Family.SP and fr is Family.O_ODD:
        # negation preserves orbit sizes and types, so s_≠ = -s'_≠ compares the same data
        if not _ne_match(left, right):
            reasons.append("clause (1)")
        if left.shape.factor_1.kind.n != right.shape.factor_minus1.kind.n or left.component("1") != right.component("-1"):
            reasons.append("clause (2)")
        km1 = left.shape.factor_minus1.kind
        pm1, p1p = left.component("-1"), right.component("1")
        sub = _sp_o(right.shape.factor_1.kind.n, km1)
        if not (unip_oracle(sub, p1p, pm1) or unip_oracle(sub, p1p, sgn_twist_label(km1, pm1))):
            reasons.append("clause (3)")
        zeta_pi = right.central_sign if right.central_sign is not None else right.zeta
        if zeta_pi != right.zeta:
            reasons.append("clause (4)")
    else:
        raise ValueError(f"no reduction for {pair.left.label} x {pair.right.label}")
    return Admissibility(not reasons, reasons)


# Harish-Chandra series

class SeriesAbsent(ValueError):
    pass


@dataclass(frozen=True)
class CuspidalSupport:
    """L = G_{n0} x GL_1^r (GL_1 over the quadratic extension for unitary
    groups) with cuspidal unipotent σ_0 on G_{n0}; W_σ is of type B_r."""

    group: GroupKind
    n0: int
    r: int
    cuspidal: object

    def __post_init__(self):
        step = 2 if self.group.family is Family.U else 1
        if self.n0 + step * self.r != self.group.n:
            raise ValueError("n0 and r do not add up to the rank")

    @property
    def weyl_type(self) -> str:
        return f"B{self.r}"

    def to_json(self) -> dict:
        return {"group": self.group.label, "n0": self.n0, "r": self.r, "cuspidal": self.cuspidal.to_json(), "W": self.weyl_type}


def cuspidal_support(group: GroupKind, c: int, flavor: str = "+") -> CuspidalSupport:
    """Support of the series through the c-th cuspidal unipotent of the
    classical factor (flavor picks Λ_c or its transpose for O)."""
    from .symbols import cuspidal_symbol

    fam = group.family
    if fam is Family.SP:
        n0 = c * c + c
        lab, kind0 = cuspidal_symbol(Family.SP, c), Sp(n0)
        step = 1
    elif fam is Family.O_EVEN:
        n0 = c * c
        kind0 = Oeven(n0, group.eps)
        lab = Symbol.make((), ()) if c == 0 else cuspidal_symbol(Family.O_EVEN, c)
        lab = lab if flavor == "+" else lab.t
        if lab not in enumerate_symbols(kind0):
            raise SeriesAbsent(f"no cuspidal unipotent with c={c} on {kind0.label}")
        step = 1
    elif fam is Family.U:
        n0 = c * (c + 1) // 2
        lab, kind0 = unitary_cuspidal(c), U(n0)
        step = 2
    else:
        raise ValueError(f"no cuspidal supports for {group.label}")
    rest = group.n - n0
    if rest < 0 or rest % step:
        raise SeriesAbsent(f"c={c} does not fit in {group.label}")
    return CuspidalSupport(group, n0, rest // step, lab)


def _tower_of(kind: GroupKind) -> TowerSpec:
    if kind.family is Family.SP:
        return TowerSpec("Sp")
    if kind.family is Family.O_EVEN:
        return TowerSpec("O+even" if kind.eps > 0 else "O-even")
    if kind.family is Family.U:
        return TowerSpec("U+" if kind.n % 2 == 0 else "U-")
    raise ValueError(f"no tower for {kind.label}")


def hc_transport(support: CuspidalSupport, pair: DualPairSpec) -> CuspidalSupport:
    """The cuspidal support on the other member of the pair.

    The classical part moves to the first occurrence θ⁰(σ_0) in the target
    tower and the torus fills the remaining rank.
    """
    if support.group != pair.left:
        raise ValueError("support must live on the left member of the pair")
    target = pair.right
    cusp_kind = _cusp_kind(support)
    fo = first_occurrence(UnipLabel(cusp_kind, support.cuspidal), _tower_of(target), scan_limit=max(2 * support.n0 + 2, target.n))
    if not fo.resolved:
        raise SeriesAbsent("cuspidal factor has no first occurrence within the scan bound")
    n0p = fo.index
    step = 2 if target.family is Family.U else 1
    rest = target.n - n0p
    if rest < 0 or rest % step:
        raise SeriesAbsent(f"series absent on {target.label}: first occurrence at rank {n0p}")
    (lab,) = fo.lift if len(fo.lift) == 1 else (min(fo.lift, key=str),)
    return CuspidalSupport(target, n0p, rest // step, lab)


def _cusp_kind(support: CuspidalSupport) -> GroupKind:
    g = support.group
    if g.family is Family.SP:
        return Sp(support.n0)
    if g.family is Family.O_EVEN:
        return Oeven(support.n0, g.eps)
    if g.family is Family.U:
        return U(support.n0)
    raise ValueError(g.label)


def nbar(group: GroupKind, c: int) -> int:
    """Rank of the relative Weyl group of the c-th series."""
    fam = group.family
    if fam is Family.SP:
        return group.n - c * c - c
    if fam is Family.O_EVEN:
        return group.n - c * c
    if fam is Family.U:
        rest = group.n - c * (c + 1) // 2
        if rest % 2:
            raise SeriesAbsent(f"c={c} does not fit in {group.label}")
        return rest // 2
    raise ValueError(group.label)
