import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from thetacorr.partitions import Bipartition, Partition, bipartitions_of, partitions_of, two_core
from thetacorr.symbols import (
    Family,
    Oeven,
    Sp,
    Symbol,
    add,
    analyze,
    beta_of_partition,
    beta_rank,
    cuspidal_symbol,
    distinguished_symbols,
    enumerate_symbols,
    families,
    family_member,
    family_members,
    generic_degree,
    ord_symbol,
    partition_of_beta,
    row_partition,
    shift_beta,
    singles,
    symbol_of_partition,
    symbols_of,
    upsilon,
    upsilon_inv,
)

from strategies import bipartitions, partitions, symbols

S = Symbol.make
P = lambda *xs: Partition(xs)


class TestBetaSets:
    @pytest.mark.parametrize("lam,beta", [(P(), ()), (P(3), (3,)), (P(2), (0, 3))])
    def test_beta_of_partition(self, lam, beta):
        assert beta_of_partition(lam) == beta
        assert beta_rank(beta) == lam.size

    @pytest.mark.parametrize("beta,lam", [((0, 3), P(2)), ((), P()), ((3,), P(3))])
    def test_partition_of_beta(self, beta, lam):
        assert partition_of_beta(beta) == lam

    def test_rejects_repeated_entries(self):
        with pytest.raises(ValueError):
            partition_of_beta([1, 1])

    @pytest.mark.parametrize("n", range(13))
    def test_rank_preserved(self, n):
        for lam in partitions_of(n):
            xs = beta_of_partition(lam)
            assert beta_rank(xs) == n
            assert partition_of_beta(xs) == lam

    @given(st.lists(st.integers(0, 15), unique=True, max_size=7), st.integers(0, 5))
    def test_shift_keeps_partition(self, xs, k):
        assert partition_of_beta(shift_beta(sorted(xs), k)) == partition_of_beta(xs)


class TestSymbolOfPartition:
    # rows are halved, so that Υ of the symbol is the 2-quotient
    @pytest.mark.parametrize("lam,sym", [(P(2), S([1], [0])), (P(1), S([], [0])), (P(), S())])
    def test_examples(self, lam, sym):
        assert symbol_of_partition(lam) == sym

    @pytest.mark.parametrize("n", range(13))
    def test_defect_is_signed_core_length(self, n):
        for lam in partitions_of(n):
            d = two_core(lam)[1]
            assert symbol_of_partition(lam).defect == (-1) ** d * d

    @pytest.mark.parametrize("n", range(9))
    def test_injective(self, n):
        syms = [symbol_of_partition(lam) for lam in partitions_of(n)]
        assert len(set(syms)) == len(syms)


class TestAnalyze:
    def test_sp6_member(self):
        info = analyze([0, 1, 3], [1, 2])
        assert (info.rank, info.defect) == (3, 1)

    def test_trivial_sp2(self):
        info = analyze([1], [])
        assert (info.rank, info.defect, info.is_distinguished) == (1, 1, True)

    def test_defect_minus_two(self):
        info = analyze([], [0, 1])
        assert (info.rank, info.defect) == (1, -2)

    def test_parse_roundtrip(self):
        s = Symbol.parse("0,1,3/1,2")
        assert s == S([0, 1, 3], [1, 2])
        assert Symbol.parse("-/0,1") == S([], [0, 1])
        assert Symbol.from_json(s.to_json()) == s
        with pytest.raises(ValueError):
            Symbol.parse("0,1")
        with pytest.raises(ValueError):
            Symbol.parse("0/1/2")

    @given(symbols())
    def test_display_form_parses_back(self, s):
        assert Symbol.parse(str(s)) == s

    def test_reduction(self):
        assert S([0, 2], [0, 3]) == S([1], [2])

    @given(symbols(), st.integers(0, 5))
    def test_shift_invariance(self, sym, k):
        top, bot = sym.shift(k)
        assert analyze(top, bot) == analyze(sym.top, sym.bot)


class TestUpsilon:
    def test_examples(self):
        assert upsilon(S([0, 1, 3], [1, 2])) == Bipartition(P(1), P(1, 1))
        assert upsilon(S()) == Bipartition(P(), P())
        z = upsilon_inv(Bipartition(P(), P()), -2)
        assert z == S([], [0, 1]) and z.rank == 1

    @pytest.mark.parametrize("d", [-3, -2, -1, 0, 1, 2, 3, 5])
    def test_inverse_on_strata(self, d):
        for n in range(6):
            for b in bipartitions_of(n):
                sym = upsilon_inv(b, d)
                assert sym.defect == d
                assert upsilon(sym) == b
        for sym in symbols_of(5, d):
            assert upsilon_inv(upsilon(sym), d) == sym

    @given(symbols(), st.integers(0, 4))
    def test_shift_invariant(self, sym, k):
        top, bot = sym.shift(k)
        assert (row_partition(top), row_partition(bot)) == tuple(upsilon(sym))


class TestFamilies:
    Z = S([0, 3], [1])

    def test_member_examples(self):
        assert family_member(self.Z, ((0,), (1,))) == S([1, 3], [0])
        assert family_member(self.Z, ((), ())) == self.Z
        assert add(self.Z, S([1, 3], [0]), S([1, 3], [0])) == self.Z

    def test_sp6(self):
        fams = families(Sp(3))
        assert len(enumerate_symbols(Sp(3))) == 12
        assert sorted(len(m) for _, m in fams) == [1, 1, 1, 1, 4, 4]

    def test_o2(self):
        assert set(enumerate_symbols(Oeven(1, 1))) == {S([1], [0]), S([0], [1])}
        assert len(enumerate_symbols(Oeven(1, -1))) == 2

    def test_sp2(self):
        assert set(enumerate_symbols(Sp(1))) == {S([1], []), S([0, 1], [1])}

    def test_sp0(self):
        assert enumerate_symbols(Sp(0)) == (S([0], []),)

    def test_odd_orthogonal_not_enumerated(self):
        from thetacorr.symbols import GroupKind

        with pytest.raises(ValueError):
            enumerate_symbols(GroupKind(Family.O_ODD, 1, 1))

    @pytest.mark.parametrize("n", range(7))
    @pytest.mark.parametrize("kind", ["sp", "o+", "o-"])
    def test_families_partition_the_labels(self, n, kind):
        g = {"sp": Sp(n), "o+": Oeven(n, 1), "o-": Oeven(n, -1)}[kind]
        labels = enumerate_symbols(g)
        members = [m for _, ms in families(g) for m in ms]
        assert sorted(members, key=Symbol.sort_key) == sorted(labels, key=Symbol.sort_key)
        residue = {"sp": 1, "o+": 0, "o-": 2}[kind]
        assert all(m.defect % 4 == residue for m in members)

    @given(st.integers(0, 6).flatmap(lambda n: st.sampled_from(distinguished_symbols(n, 1) or (S([0], []),))))
    def test_defect_of_member(self, z):
        zt, zb = singles(z)
        for k in range(len(zt) + 1):
            for mt in itertools.combinations(zt, k):
                for j in range(len(zb) + 1):
                    for mb in itertools.combinations(zb, j):
                        lam = family_member(z, (mt, mb))
                        assert lam.defect == z.defect - 2 * len(mt) + 2 * len(mb)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_elementary_abelian(self, n):
        for z in distinguished_symbols(n, 1):
            fam = family_members(z)
            for a in fam:
                assert add(z, a, a) == z
                assert add(z, z, a) == a
                for b in fam:
                    ab = add(z, a, b)
                    assert ab in fam and ab == add(z, b, a)
                    for c in fam[:4]:
                        assert add(z, ab, c) == add(z, a, add(z, b, c))


class TestCuspidalAndDegrees:
    @pytest.mark.parametrize("c", range(11))
    def test_cuspidal_defects(self, c):
        assert cuspidal_symbol(Family.SP, c).defect == (-1) ** c * (2 * c + 1)
        if c:
            assert cuspidal_symbol(Family.O_EVEN, c).defect == (-1) ** c * 2 * c

    def test_cuspidal_examples(self):
        assert cuspidal_symbol(Family.SP, 1) == S([], [0, 1, 2])
        assert cuspidal_symbol(Family.SP, 0) == S([0], [])
        assert cuspidal_symbol(Family.O_EVEN, 1) == S([], [0, 1])

    def test_ord(self):
        assert ord_symbol(S([1], [])) == 0
        assert ord_symbol(S([0, 1], [1])) == 1

    def test_sp4_cuspidal_degree(self):
        q = sympy.Symbol("q")
        assert sympy.expand(generic_degree(cuspidal_symbol(Family.SP, 1)) - q * (q - 1) ** 2 / 2) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_principal_degrees_specialise_to_weyl_dimensions(self, n):
        from thetacorr.weyl_b import dimension

        for sym in symbols_of(n, 1):
            assert generic_degree(sym).subs(sympy.Symbol("q"), 1) == dimension(upsilon(sym))

    def test_empty_orthogonal_degree(self):
        assert generic_degree(S()) == 1
