from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from flagpos.ground import Subset, subsets_of_size
from flagpos.matroid import Matroid, uniform
from flagpos.tropical import (
    GP,
    INCIDENCE,
    INF,
    FlagTropVector,
    TropicalError,
    TropPluckerVector,
    affine_shift,
    dual,
    extend_with_element,
    flag_from_matroids,
    gen_three_term,
    in_dressian,
    in_fldr_nonneg,
    indicator_vector,
    initial_part,
    plucker_relations,
    pom_check,
    rank_deficiency_vector,
    satisfies_positive_tropical,
    satisfies_positive_tropical_terms,
    satisfies_tropical,
    satisfies_tropical_terms,
    support,
    to_trop,
    valuated_minor,
    violated_relations,
)

inf = "inf"


def V(*values, n=4, r=2):
    return TropPluckerVector.from_values(n, r, values)


def M_(n, *bases):
    return Matroid.from_bases(n, bases)


FIG1 = V(1, 0, 0, 0, 0, 1)
GP_24 = gen_three_term(4, 2, GP)[0]


def test_to_trop_accepts_exact_values_only():
    assert to_trop("3/2") == Fraction(3, 2)
    assert to_trop("inf") == INF
    assert to_trop(float("inf")) == INF
    assert to_trop(-2) == Fraction(-2)
    with pytest.raises(TropicalError):
        to_trop(0.5)
    with pytest.raises(TropicalError):
        to_trop(True)
    with pytest.raises(TropicalError):
        to_trop("abc")


def test_support_examples():
    assert support(FIG1) == frozenset(subsets_of_size(4, 2))
    assert {str(S) for S in support(V(inf, 0, 0, 0, 0, inf))} == {"13", "14", "23", "24"}
    with pytest.raises(TropicalError):
        V(inf, inf, inf, inf, inf, inf)
    with pytest.raises(TropicalError):
        V(0, 0, 0)


def test_projective_equality():
    assert V(1, 0, 0, 0, 0, 1) == V(3, 2, 2, 2, 2, 3)
    assert V(1, 0, 0, 0, 0, 1) != V(1, 0, 0, 0, 0, 2)
    assert hash(V(0, inf, 1, 1, 1, 1)) == hash(V(5, inf, 6, 6, 6, 6))


def test_gen_three_term_counts():
    assert len(gen_three_term(4, 2, GP)) == 1
    assert GP_24.S == Subset.empty(4) and GP_24.tail == (1, 2, 3, 4)
    rel = gen_three_term(3, 1, INCIDENCE)
    assert len(rel) == 1 and rel[0].tail == (1, 2, 3)
    assert len(gen_three_term(5, 2, GP)) == 5
    for n, r in ((5, 3), (6, 2), (6, 3), (6, 4)):
        assert len(gen_three_term(n, r, GP)) == comb(n, r - 2) * comb(n - r + 2, 4)
    for n, r in ((4, 1), (5, 2), (6, 3)):
        assert len(gen_three_term(n, r, INCIDENCE)) == comb(n, r - 1) * comb(n - r + 1, 3)
    assert gen_three_term(3, 2, GP) == ()
    with pytest.raises(TropicalError):
        gen_three_term(4, 4, INCIDENCE)
    with pytest.raises(TropicalError):
        gen_three_term(4, 2, "other")


def test_relation_description():
    assert GP_24.describe() == "x12·x34 - x13·x24 + x14·x23"


def test_satisfies_tropical_examples():
    assert satisfies_tropical(FIG1, GP_24)
    assert satisfies_tropical(V(0, 0, 0, 0, 0, 0), GP_24)
    assert satisfies_tropical(V(0, 1, 0, 0, 0, 0), GP_24)
    assert not satisfies_tropical(V(0, 1, 1, 0, 0, 0), GP_24)


def test_satisfies_positive_tropical_examples():
    assert satisfies_positive_tropical(FIG1, GP_24)
    assert not satisfies_positive_tropical(V(0, 1, 0, 0, 1, 0), GP_24)
    assert satisfies_tropical(V(0, 1, 0, 0, 1, 0), GP_24)
    assert satisfies_positive_tropical(V(inf, inf, inf, inf, inf, 0), GP_24)
    # строгий единственный минимум в среднем члене
    assert not satisfies_positive_tropical(V(1, 0, 1, 1, 0, 1), GP_24)


def test_in_fldr_nonneg_examples():
    assert in_fldr_nonneg(FIG1)
    assert in_fldr_nonneg(FlagTropVector((FIG1,)))
    assert not in_fldr_nonneg(flag_from_matroids([M_(3, "1", "3"), uniform(2, 3)]))
    assert in_fldr_nonneg(flag_from_matroids([M_(3, "1", "3"), M_(3, "13"), M_(3, "123")]))
    assert not in_fldr_nonneg(V(0, 1, 0, 0, 1, 0))
    assert in_dressian(V(0, 1, 0, 0, 1, 0))


def test_in_fldr_nonneg_rejects_non_matroid_support():
    assert not in_fldr_nonneg(V(0, inf, inf, inf, inf, 0))


def test_in_fldr_nonneg_refuses_rank_gaps():
    mu = flag_from_matroids([uniform(1, 4), uniform(3, 4)])
    with pytest.raises(TropicalError):
        in_fldr_nonneg(mu)
    assert in_fldr_nonneg(mu, consecutive=False)


def test_violated_relations_lists_failures():
    bad = violated_relations(V(0, 1, 0, 0, 1, 0))
    assert [rel.describe() for rel in bad] == [GP_24.describe()]
    assert violated_relations(FIG1) == []


def test_pom_check_examples():
    assert not pom_check([M_(3, "1", "3"), uniform(2, 3)])
    assert pom_check([M_(3, "1", "3"), M_(3, "13"), M_(3, "123")])
    assert pom_check([uniform(k, 4) for k in range(1, 5)])
    with pytest.raises(TropicalError):
        pom_check([uniform(1, 4), uniform(3, 4)])


def test_dual_examples():
    assert dual(FIG1) == FIG1
    assert dual(dual(V(0, 3, inf, 1, 2, 5))) == V(0, 3, inf, 1, 2, 5)
    assert dual(indicator_vector(uniform(2, 5))) == indicator_vector(uniform(3, 5))
    assert dual(V(0, 3, inf, 1, 2, 5)).value("34") == Fraction(0)


def test_initial_part_and_affine_shift():
    assert initial_part(FIG1) == V(inf, 0, 0, 0, 0, inf)
    assert affine_shift(FIG1, [0] * 5) == FIG1
    shifted = affine_shift(FIG1, [7, 1, 0, 0, 0])
    assert shifted.value("12") == Fraction(9)
    assert shifted.value("34") == Fraction(8)
    with pytest.raises(TropicalError):
        affine_shift(FIG1, [0, 0])


def test_closure_on_flag_members():
    mu = FlagTropVector((
        TropPluckerVector.from_values(3, 1, [0, 0, 1]),
        TropPluckerVector.from_values(3, 2, [0, 0, 0]),
    ))
    assert in_fldr_nonneg(mu)
    assert in_fldr_nonneg(initial_part(mu))
    assert in_fldr_nonneg(affine_shift(mu, [1, -2, 3, 5]))


def test_rank_deficiency_vector():
    assert rank_deficiency_vector(uniform(2, 4)) == V(0, 0, 0, 0, 0, 0)
    rho = rank_deficiency_vector(M_(4, "12", "13", "14"))
    assert rho.value("12") == 0 and rho.value("23") == 1 and rho.value("34") == 1
    assert in_fldr_nonneg(rho)
    looped = rank_deficiency_vector(M_(4, "12", "14"))
    assert looped.value("13") == looped.value("24") == 1
    assert not in_fldr_nonneg(looped)


def test_valuated_minor_examples():
    minor = valuated_minor(indicator_vector(uniform(2, 5)), Subset.full(5), Subset.parse(5, "5"))
    assert minor == indicator_vector(uniform(1, 4))
    assert valuated_minor(FIG1, Subset.full(4), Subset.empty(4)) == FIG1
    with pytest.raises(TropicalError):
        valuated_minor(FIG1, Subset.parse(4, "12"), Subset.parse(4, "3"))


def test_extension_minors_recover_constituents():
    mu1 = TropPluckerVector.from_values(4, 1, [0, 1, 0, 2])
    mu2 = TropPluckerVector.from_values(4, 2, [2, 1, 0, 0, 0, 1])
    ext = extend_with_element(mu1, mu2)
    assert ext.n == 5 and ext.r == 2
    assert valuated_minor(ext, Subset.full(5), Subset.parse(5, "5")) == mu1
    assert valuated_minor(ext, Subset.parse(5, "1234"), Subset.empty(5)) == mu2


def test_full_plucker_relations_contain_three_term():
    rels = plucker_relations(4, 2, 2)
    assert rels
    for rel in rels:
        assert satisfies_tropical_terms(FIG1, rel)
        assert satisfies_positive_tropical_terms(FIG1, rel)
    assert not all(satisfies_positive_tropical_terms(V(0, 1, 0, 0, 1, 0), rel) for rel in rels)
    with pytest.raises(TropicalError):
        plucker_relations(4, 3, 2)


values = st.one_of(st.integers(min_value=-5, max_value=5), st.just(inf))


@settings(max_examples=150, derandomize=True)
@given(st.lists(values, min_size=6, max_size=6).filter(lambda xs: any(x != inf for x in xs)))
def test_positive_implies_tropical(xs):
    mu = V(*xs)
    if satisfies_positive_tropical(mu, GP_24):
        assert satisfies_tropical(mu, GP_24)


@settings(max_examples=150, derandomize=True)
@given(st.lists(values, min_size=10, max_size=10).filter(lambda xs: any(x != inf for x in xs)))
def test_duality_preserves_nonneg_dressian(xs):
    mu = TropPluckerVector.from_values(5, 2, xs)
    assert dual(dual(mu)) == mu
    assert in_fldr_nonneg(mu) == in_fldr_nonneg(dual(mu))


@settings(max_examples=100, derandomize=True)
@given(st.integers(min_value=-9, max_value=9))
def test_global_shift_is_projectively_trivial(c):
    assert affine_shift(FIG1, [c, 0, 0, 0, 0]) == FIG1
