import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetacorr.partitions import Partition, dominates, partitions_of, union
from thetacorr.symbols import Family, Oeven, Sp, Symbol, enumerate_symbols, upsilon
from thetacorr.theta import (
    F_READINGS,
    GL,
    U,
    DualPairSpec,
    ScanLimitExceeded,
    ThetaRelation,
    TowerSpec,
    UnipLabel,
    conservation_check,
    cuspidal_theta,
    default_scan_limit,
    f_weight,
    first_occurrence,
    gl_pairs,
    lift,
    overline_relation,
    overline_theta,
    principal_series_pairs,
    relation_props,
    spo_pairs,
    theta_gl,
    theta_relation,
    underline_relation,
    underline_theta,
    unitary_pairs,
)
from thetacorr.symbols import cuspidal_symbol

S = Symbol.make
P = lambda *xs: Partition(xs)
EMPTY_O = S()


def pairset(rel):
    return {(a, b) for a, b, _ in rel.triples}


class TestGL:
    def test_examples(self):
        assert theta_gl(P(1), 2) == {P(2): 1, P(1, 1): 1}
        assert theta_gl(P(), 0) == {P(): 1}

    @pytest.mark.parametrize("reading", ["literal", "present-parts"])
    def test_readings_agree_on_small_example(self, reading):
        assert theta_gl(P(1), 2, reading) == {P(2): 1, P(1, 1): 1}

    def test_shifted_reading(self):
        assert theta_gl(P(1), 2, "shifted") == {P(2): 2, P(1, 1): 1}
        assert "shifted" in F_READINGS

    def test_f_weight(self):
        mu = P(3, 1, 1)  # a = (1, 0, 2)
        assert f_weight(mu, "literal") == 0
        assert f_weight(mu, "present-parts") == 2
        assert f_weight(mu, "shifted") == 2 * 1 * 3
        assert f_weight(P(), "literal") == 1
        with pytest.raises(ValueError):
            f_weight(mu, "nope")

    def test_symmetric(self):
        for n in range(4):
            for m in range(4):
                assert gl_pairs(n, m).swapped().counter() == gl_pairs(m, n).counter()

    def test_padded_partition_corresponds(self):
        # R_λ of GL_n' and R_{λ ∪ (n - n')} of GL_n correspond, for n' ≤ n
        missing = [
            (lam, n)
            for n in range(7)
            for nprime in range(n + 1)
            for lam in partitions_of(nprime)
            if union(lam, [n - nprime] if n > nprime else []) not in theta_gl(lam, n)
        ]
        assert not missing

    def test_dominance_bound(self):
        # every lift of λ ∈ P(n') to GL_n dominates λ ∪ (n - n')
        bad = []
        for n in range(7):
            for nprime in range(n + 1):
                for lam in partitions_of(nprime):
                    pad = union(lam, [n - nprime] if n > nprime else [])
                    bad += [(lam, lp) for lp in theta_gl(lam, n) if not dominates(lp, pad)]
        assert not bad


class TestUnitary:
    def test_examples(self):
        assert unitary_pairs(0, 0).triples == ((P(), P(), 1),)
        assert pairset(unitary_pairs(0, 1)) == {(P(), P(1))}

    @pytest.mark.parametrize("n,m", [(a, b) for a in range(5) for b in range(5)])
    def test_defect_rule_and_symmetry(self, n, m):
        from thetacorr.symbols import symbol_of_partition
        from thetacorr.theta import unitary_defect_target

        rel = unitary_pairs(n, m)
        for a, b, mult in rel.triples:
            assert mult == 1
            da = symbol_of_partition(a).defect
            assert symbol_of_partition(b).defect == unitary_defect_target(da, n, m)
        assert rel.swapped().pairs() == unitary_pairs(m, n).pairs()


class TestSpO:
    def test_examples(self):
        assert pairset(spo_pairs(1, 1, "+")) == {(S([1]), S([1], [0])), (S([1]), S([0], [1])), (S([0, 1], [1]), S([1], [0]))}
        assert pairset(spo_pairs(1, 1, "-")) == {(S([0, 1], [1]), S([], [0, 1]))}

    @pytest.mark.parametrize("n", range(6))
    def test_trivial_to_zero_group(self, n):
        assert pairset(spo_pairs(n, 0, "+")) == {(S([n]), EMPTY_O)}

    def test_principal_series(self):
        assert pairset(principal_series_pairs(1, 1, "+")) == pairset(spo_pairs(1, 1, "+"))
        assert len(principal_series_pairs(1, 1, "-")) == 0
        assert principal_series_pairs(0, 0, "+").triples == ((S([0]), EMPTY_O, 1),)

    @pytest.mark.parametrize("eps", [1, -1])
    def test_defect_arithmetic(self, eps):
        for n in range(5):
            for m in range(5):
                for a, b, _ in spo_pairs(n, m, eps).triples:
                    assert b.defect == (-a.defect + 1 if eps > 0 else -a.defect - 1)

    @pytest.mark.parametrize("eps", [1, -1])
    def test_symmetric(self, eps):
        for n in range(5):
            for m in range(5):
                pair = DualPairSpec.sp_o(n, m, eps)
                assert theta_relation(pair).swapped().counter() == theta_relation(pair.swapped()).counter()

    @pytest.mark.parametrize("eps", [1, -1])
    def test_stable_range_lifts_nonempty(self, eps):
        # W = Sp_2n is in stable range when V' has a totally isotropic subspace of dim 2n
        for n in range(3):
            for m in range(6):
                witt = m if eps > 0 else m - 1
                if witt >= 2 * n:
                    for a in enumerate_symbols(Sp(n)):
                        assert lift(UnipLabel(Sp(n), a), Oeven(m, eps)), (n, m, a)
        # and O_2m is in stable range inside Sp_2n once n >= 2m
        for m in range(3):
            for n in range(2 * m, 6):
                for b in enumerate_symbols(Oeven(m, eps)):
                    assert lift(UnipLabel(Oeven(m, eps), b), Sp(n)), (m, n, b)

    def test_json_roundtrip(self):
        for pair in [DualPairSpec.sp_o(2, 2, 1), DualPairSpec.sp_o(1, 2, -1).swapped(), DualPairSpec.u_u(2, 3), DualPairSpec.gl_gl(2, 1)]:
            rel = theta_relation(pair)
            back = ThetaRelation.from_json(json.loads(json.dumps(rel.to_json())))
            assert back == rel

    def test_pair_validation(self):
        with pytest.raises(ValueError):
            DualPairSpec(Sp(1), Sp(1))
        with pytest.raises(ValueError):
            DualPairSpec(GL(1), Sp(1), "II")


class TestCuspidals:
    def test_examples(self):
        lift_ = cuspidal_theta(1, DualPairSpec.sp_o(2, 1, -1))
        assert (lift_.c_prime, lift_.flavor) == (1, "-")
        lift_ = cuspidal_theta(1, DualPairSpec.sp_o(2, 4, 1))
        assert (lift_.c_prime, lift_.flavor) == (2, "+")
        assert cuspidal_theta(0, DualPairSpec.u_u(0, 0)).c_prime == 0

    @pytest.mark.parametrize("c", range(3))
    def test_first_occurrence_matches_cuspidal_lift(self, c):
        x = UnipLabel(Sp(c * c + c), cuspidal_symbol(Family.SP, c))
        dims = set()
        for eps, fam in ((1, "O+even"), (-1, "O-even")):
            fo = first_occurrence(x, TowerSpec(fam))
            cl = cuspidal_theta(c, DualPairSpec.sp_o(c * c + c, 0, eps))
            assert fo.index == cl.target.n
            assert cl.symbol in fo.lift
            dims.add(fo.dim)
        assert dims == {2 * c * c, 2 * (c + 1) ** 2}


class TestFirstOccurrence:
    @pytest.mark.parametrize("n", range(5))
    def test_trivial_in_plus_tower(self, n):
        fo = first_occurrence(UnipLabel(Sp(n), S([n])), TowerSpec("O+even"))
        assert fo.index == 0

    def test_steinberg_minus_tower(self):
        fo = first_occurrence(UnipLabel(Sp(1), S([0, 1], [1])), TowerSpec("O-even"))
        assert fo.index == 1

    @pytest.mark.parametrize("n", range(4))
    def test_persistence(self, n):
        for a in enumerate_symbols(Sp(n)):
            for fam in ("O+even", "O-even"):
                fo = first_occurrence(UnipLabel(Sp(n), a), TowerSpec(fam), 2 * n + 4)
                assert fo.resolved and fo.persistent

    def test_scan_limit_env(self, monkeypatch):
        monkeypatch.setenv("THETA_SCAN_LIMIT", "7")
        assert default_scan_limit(1) == 7
        monkeypatch.delenv("THETA_SCAN_LIMIT")
        assert default_scan_limit(3) == 8

    def test_scan_limit_exceeded(self):
        x = UnipLabel(Sp(2), cuspidal_symbol(Family.SP, 1))
        with pytest.raises(ScanLimitExceeded):
            conservation_check(x, scan_limit=1)

    @pytest.mark.parametrize("n", range(4))
    def test_conservation(self, n):
        cusp = {cuspidal_symbol(Family.SP, c) for c in range(3)}
        for a in enumerate_symbols(Sp(n)):
            c = conservation_check(UnipLabel(Sp(n), a))
            assert c.holds and c.c_inferred >= 0
            assert (c.c_inferred == 0) == (a in cusp)


class TestSubrelations:
    def test_underline_examples(self):
        assert underline_theta(UnipLabel(Sp(1), S([1])), Oeven(1, 1)) == S([0], [1])
        assert underline_theta(UnipLabel(Sp(1), S([0, 1], [1])), Oeven(1, 1)) == S([1], [0])
        assert underline_theta(UnipLabel(Sp(0), S([0])), Oeven(0, 1)) == EMPTY_O

    def test_one_to_one_examples(self):
        pair = DualPairSpec.sp_o(1, 1, 1)
        theta = theta_relation(pair)
        props = relation_props(theta, theta_relation(pair.swapped()))
        assert props.one_to_one is False and props.symmetric is True
        assert relation_props(underline_relation(pair)).one_to_one

    @pytest.mark.parametrize("eps", [1, -1])
    def test_subrelations(self, eps):
        for n in range(6):
            for m in range(6):
                pair = DualPairSpec.sp_o(n, m, eps)
                theta = pairset(theta_relation(pair))
                assert pairset(underline_relation(pair)) <= theta
                graph, _ = overline_theta(pair)
                assert set(graph.items()) <= theta
                for rel in (underline_relation(pair), overline_relation(pair)):
                    props = relation_props(rel)
                    assert props.one_to_one and props.subrelation_of_theta
                assert not relation_props(underline_relation(pair)).violations
