import json
from pathlib import Path

import pytest

from flagpos.matroid import Matroid, is_quotient, uniform
from flagpos.necklace import (
    GrassmannNecklace,
    NecklaceError,
    delete_contract_necklaces,
    enumerate_necklaces,
    enumerate_positroids,
    is_flag_positroid_consecutive,
    is_grassmann_necklace,
    is_positroid,
    necklace_of,
    pair_to_necklace,
    positroid_contains,
    positroid_of,
    quotient_report,
    quotient_test,
)
from flagpos.tropical import pom_check

GOLDEN = Path(__file__).resolve().parents[1] / "golden" / "v1" / "examples.json"


def N_(n, *sets):
    return GrassmannNecklace.of(n, sets)


def M_(n, *bases):
    return Matroid.from_bases(n, bases)


def _golden_necklace(doc):
    return GrassmannNecklace.of(doc["n"], [tuple(s) for s in doc["sets"]])


def test_necklace_shape_validation():
    with pytest.raises(NecklaceError):
        GrassmannNecklace.of(4, ["1", "2", "4"])
    with pytest.raises(NecklaceError):
        GrassmannNecklace.of(4, ["1", "2", "4", "14"])
    I = N_(4, "1", "2", "4", "4")
    assert I[5] == I[1]
    assert str(I) == "(1, 2, 4, 4)"


def test_is_grassmann_necklace_examples():
    assert is_grassmann_necklace(N_(4, "1", "2", "4", "4"))
    assert is_grassmann_necklace(N_(5, "12", "24", "45", "45", "15"))
    assert not is_grassmann_necklace(N_(4, "12", "34", "12", "12"))


def test_necklace_of_examples():
    assert str(necklace_of(M_(4, "12", "14", "24"))) == "(12, 24, 14, 14)"
    assert str(necklace_of(M_(4, "1", "2", "4"))) == "(1, 2, 4, 4)"
    assert str(necklace_of(uniform(2, 4))) == "(12, 23, 34, 14)"


def test_positroid_of_examples():
    assert positroid_of(N_(4, "12", "24", "14", "14")).bases == M_(4, "12", "14", "24").bases
    assert positroid_of(N_(4, "12", "23", "34", "14")) == uniform(2, 4)
    assert positroid_of(N_(4, "1", "2", "4", "4")).bases == M_(4, "1", "2", "4").bases
    assert not positroid_contains(N_(4, "12", "24", "14", "14"), "13")
    with pytest.raises(NecklaceError):
        positroid_of(N_(4, "12", "34", "12", "12"))


def test_is_positroid_examples():
    assert is_positroid(uniform(2, 3))
    assert is_positroid(uniform(3, 6))
    assert is_positroid(M_(3, "1", "3"))
    # прямая сумма U_{1,2} на {1,2} и на {3,4}
    S = M_(4, "13", "14", "23", "24")
    assert str(necklace_of(S)) == "(13, 23, 13, 14)"
    assert is_positroid(S)
    # параллельные классы {1,3} и {2,4} чередуются по кругу
    M = M_(4, "12", "14", "23", "34")
    assert str(necklace_of(M)) == "(12, 23, 34, 14)"
    assert not is_positroid(M)


def test_positroid_necklace_roundtrip_exhaustive():
    for n in range(1, 6):
        for d in range(0, n + 1):
            for I in enumerate_necklaces(n, d):
                M = positroid_of(I)
                assert necklace_of(M) == I
                assert is_positroid(M)


def test_enumerate_positroid_counts():
    # число позитроидных клеток Gr≥0(k, n), суммарно по k
    totals = {n: sum(len(enumerate_necklaces(n, d)) for d in range(n + 1)) for n in range(1, 5)}
    assert totals == {1: 2, 2: 5, 3: 16, 4: 65}


def test_pair_to_necklace_example():
    J = pair_to_necklace(N_(4, "1", "2", "4", "4"), N_(4, "12", "24", "14", "14"))
    assert str(J) == "(12, 24, 45, 45, 15)"
    assert is_grassmann_necklace(J)
    expected = {"12", "14", "24", "15", "25", "45"}
    assert {str(B) for B in positroid_of(J).bases} == expected
    with pytest.raises(NecklaceError):
        pair_to_necklace(N_(4, "1", "2", "4", "4"), N_(4, "124", "124", "124", "124"))


def test_pair_to_necklace_on_one_element():
    J = pair_to_necklace(N_(1, ""), N_(1, "1"))
    assert str(J) == "(1, 2)"
    assert is_grassmann_necklace(J)


def test_delete_contract_examples():
    K1, K2 = delete_contract_necklaces(N_(5, "12", "24", "45", "45", "15"))
    assert str(K1) == "(1, 2, 4, 4)"
    assert str(K2) == "(12, 24, 14, 14)"
    K1, K2 = delete_contract_necklaces(necklace_of(uniform(2, 5)))
    assert K1 == necklace_of(uniform(1, 4))
    assert K2 == necklace_of(uniform(2, 4))


def test_delete_contract_rejects_loop_and_coloop():
    with pytest.raises(NecklaceError):
        delete_contract_necklaces(necklace_of(M_(3, "12")))
    with pytest.raises(NecklaceError):
        delete_contract_necklaces(necklace_of(M_(3, "13", "23")))


@pytest.mark.parametrize("case", json.loads(GOLDEN.read_text(encoding="utf-8"))["quotient_pairs"], ids=lambda c: c["name"])
def test_worked_quotient_pairs(case):
    report = quotient_report(_golden_necklace(case["I"]), _golden_necklace(case["J"]))
    assert report.quotient is case["quotient"]
    assert report.failed_condition == case["failed_condition"]


def test_quotient_report_condition_one():
    report = quotient_report(N_(3, "3", "3", "3"), uniform_necklace(2, 3))
    assert not report.quotient
    assert report.failed_condition == 1
    assert report.as_dict()["failed_condition"] == 1


def uniform_necklace(d, n):
    return necklace_of(uniform(d, n))


def test_quotient_test_examples():
    assert not quotient_test(M_(3, "1", "3"), uniform(2, 3))
    assert quotient_test(M_(4, "1", "2", "4"), M_(4, "12", "14", "24"))
    assert quotient_test(uniform(1, 4), uniform(2, 4))
    with pytest.raises(NecklaceError):
        quotient_test(uniform(1, 4), uniform(3, 4))
    with pytest.raises(NecklaceError):
        quotient_test(uniform(1, 4), M_(4, "12", "14", "23", "34"))


def test_quotient_report_lists_exchange_elements():
    report = quotient_report(uniform_necklace(1, 4), uniform_necklace(2, 4))
    assert report.quotient
    data = report.as_dict()
    assert "failed_condition" not in data
    assert set(data) == {"quotient", "S", "a", "b"}


def test_quotient_test_matches_pom_exhaustive():
    for n in range(2, 5):
        for d in range(1, n - 1):
            lows = enumerate_positroids(n, d)
            highs = enumerate_positroids(n, d + 1)
            for low in lows:
                for high in highs:
                    assert quotient_test(low, high) == pom_check([low, high]), (low, high)


def test_quotient_test_at_extreme_ranks():
    for n in range(2, 6):
        (empty,) = enumerate_positroids(n, 0)
        (full,) = enumerate_positroids(n, n)
        assert full.bases == uniform(n, n).bases
        for high in enumerate_positroids(n, 1):
            assert quotient_test(empty, high)
            assert pom_check([empty, high])
        for low in enumerate_positroids(n, n - 1):
            assert quotient_test(low, full)
            assert pom_check([low, full])


def test_quotient_implies_matroid_quotient_exhaustive():
    for n in range(2, 5):
        for d in range(1, n - 1):
            for low in enumerate_positroids(n, d):
                for high in enumerate_positroids(n, d + 1):
                    if quotient_test(low, high):
                        assert is_quotient(low, high)


def test_construction_roundtrip_exhaustive():
    for n in range(2, 5):
        for d in range(1, n - 1):
            for low in enumerate_positroids(n, d):
                for high in enumerate_positroids(n, d + 1):
                    if not quotient_test(low, high):
                        continue
                    I1, I2 = necklace_of(low), necklace_of(high)
                    J = pair_to_necklace(I1, I2)
                    assert is_grassmann_necklace(J)
                    assert delete_contract_necklaces(J) == (I1, I2)


def test_is_flag_positroid_consecutive_examples():
    assert is_flag_positroid_consecutive([M_(3, "1", "3"), M_(3, "13"), M_(3, "123")])
    assert is_flag_positroid_consecutive(
        [M_(4, "1", "2", "4"), M_(4, "12", "14", "24"), M_(4, "124"), M_(4, "1234")]
    )
    assert not is_flag_positroid_consecutive([M_(3, "1", "3"), uniform(2, 3)])
    assert not is_flag_positroid_consecutive([M_(4, "12", "14", "23", "34"), uniform(3, 4)])
    with pytest.raises(NecklaceError):
        is_flag_positroid_consecutive([uniform(1, 4), uniform(3, 4)])
