import itertools

import pytest

from flagpos.ground import Permutation, Subset, subsets_of_size
from flagpos.matroid import (
    FlagMatroid,
    Matroid,
    MatroidError,
    chain_face_minor,
    coloops,
    compress,
    contract,
    delete,
    direct_sum,
    dual,
    flag_matroid_from_flags,
    flags_of,
    is_flag_matroid,
    is_matroid_bases,
    is_quotient,
    loops,
    rank,
    restrict,
    uniform,
)


def M_(n, *bases):
    return Matroid.from_bases(n, bases)


# U_{2,4} на {1,2,4,5}, элемент 3 -- петля
FIVE = M_(5, "12", "14", "24", "15", "25", "45")
SEVEN_TWO = [M_(4, "1", "2", "4"), M_(4, "12", "14", "24"), M_(4, "124"), M_(4, "1234")]


def _all_matroids(n, r):
    pool = subsets_of_size(n, r)
    for k in range(1, len(pool) + 1):
        for bases in itertools.combinations(pool, k):
            if is_matroid_bases(n, bases):
                yield Matroid.from_bases(n, bases)


def test_is_matroid_bases_examples():
    assert is_matroid_bases(4, [Subset.parse(4, s) for s in ("12", "13", "14", "23", "24", "34")])
    assert is_matroid_bases(4, [Subset.parse(4, "13")])
    assert not is_matroid_bases(4, [Subset.parse(4, s) for s in ("12", "34")])
    with pytest.raises(MatroidError):
        is_matroid_bases(4, [Subset.parse(4, "1"), Subset.parse(4, "12")])


def test_from_bases_validation():
    with pytest.raises(MatroidError):
        Matroid.from_bases(4, [])
    with pytest.raises(MatroidError):
        Matroid.from_bases(4, ["1", "12"])
    with pytest.raises(MatroidError):
        Matroid.checked(4, ["12", "34"])


def test_rank_examples():
    U24 = uniform(2, 4)
    assert rank(U24, "1") == 1
    assert rank(U24, []) == 0
    assert rank(FIVE, "45") == 2
    assert rank(FIVE, "3") == 0


def test_loops_and_coloops():
    assert loops(FIVE) == Subset.parse(5, "3")
    assert coloops(FIVE) == Subset.empty(5)
    assert coloops(M_(3, "13")) == Subset.parse(3, "13")


def test_minors_examples():
    assert dual(uniform(2, 5)) == uniform(3, 5)
    assert delete(FIVE, "5").bases == M_(5, "12", "14", "24").bases
    assert delete(FIVE, "5").ground == Subset.parse(5, "1234")
    assert contract(FIVE, "5").bases == M_(5, "1", "2", "4").bases
    assert restrict(FIVE, Subset.full(5)) == FIVE


def test_delete_coloop_drops_rank():
    M = M_(3, "12", "13")
    D = delete(M, "1")
    assert D.rank == 1
    assert {str(B) for B in D.bases} == {"2", "3"}


def test_delete_everything_fails():
    with pytest.raises(MatroidError):
        delete(uniform(1, 2), "12")


def test_direct_sum_and_compress():
    A = restrict(uniform(1, 4), "12")
    B = restrict(uniform(1, 4), "34")
    S = direct_sum(A, B)
    assert {str(b) for b in S.bases} == {"13", "14", "23", "24"}
    C = compress(contract(FIVE, "5"))
    assert C.n == 4 and C.rank == 1
    assert {str(b) for b in C.bases} == {"1", "2", "4"}
    with pytest.raises(MatroidError):
        direct_sum(A, A)


def test_dual_exchanges_delete_and_contract_exhaustive():
    for n in range(1, 5):
        for r in range(0, n + 1):
            for M in _all_matroids(n, r):
                assert dual(dual(M)) == M
                for a in range(1, n + 1):
                    S = Subset.of(n, [a])
                    if S == M.ground:
                        continue
                    assert dual(delete(M, S)) == contract(dual(M), S)


def test_chain_face_minor():
    U24 = uniform(2, 4)
    minor = chain_face_minor(U24, ["12"])
    assert {str(B) for B in minor.bases} == {"12"}
    assert chain_face_minor(U24, []) == U24
    minor = chain_face_minor(U24, ["1"])
    assert {str(B) for B in minor.bases} == {"12", "13", "14"}
    with pytest.raises(MatroidError):
        chain_face_minor(U24, ["12", "1"])
    with pytest.raises(MatroidError):
        chain_face_minor(U24, ["1234"])


def test_is_quotient_examples():
    assert is_quotient(SEVEN_TWO[0], SEVEN_TWO[1])
    assert is_quotient(FIVE, FIVE)
    assert is_quotient(M_(3, "1", "3"), uniform(2, 3))
    assert is_quotient(uniform(1, 4), uniform(2, 4))
    assert not is_quotient(uniform(2, 4), uniform(1, 4))
    with pytest.raises(MatroidError):
        is_quotient(uniform(1, 3), uniform(1, 4))


def test_is_flag_matroid_examples():
    assert is_flag_matroid([M_(3, "1", "3"), M_(3, "13"), M_(3, "123")])
    assert is_flag_matroid([uniform(k, 4) for k in range(1, 5)])
    assert not is_flag_matroid([M_(3, "1"), M_(3, "23")])
    with pytest.raises(MatroidError):
        is_flag_matroid([uniform(2, 4), uniform(1, 4)])


def test_is_flag_matroid_with_rank_gap():
    assert is_flag_matroid([uniform(1, 4), uniform(3, 4)])
    assert not is_flag_matroid([M_(4, "1"), M_(4, "234")])


def test_flags_of_interval_example():
    flags = flags_of(SEVEN_TWO)
    rendered = {" ⊂ ".join(str(B) for B in f[:3]) for f in flags}
    assert rendered == {
        "1 ⊂ 12 ⊂ 124",
        "1 ⊂ 14 ⊂ 124",
        "2 ⊂ 12 ⊂ 124",
        "2 ⊂ 24 ⊂ 124",
        "4 ⊂ 14 ⊂ 124",
        "4 ⊂ 24 ⊂ 124",
    }
    assert len(flags_of([uniform(k, 3) for k in (1, 2, 3)])) == 6
    assert len(flags_of([uniform(2, 4)])) == 6


def test_flag_matroid_permutations():
    F = FlagMatroid(tuple(SEVEN_TWO))
    assert F.is_complete()
    words = sorted(z.word() for z in F.permutations())
    assert words == ["1243", "1423", "2143", "2413", "4123", "4213"]
    assert F.constituent(2) == SEVEN_TWO[1]
    with pytest.raises(MatroidError):
        FlagMatroid((uniform(2, 4),)).permutations()


def test_flag_matroid_from_flags_roundtrip():
    F = flag_matroid_from_flags(4, flags_of(SEVEN_TWO))
    assert F.constituents == tuple(SEVEN_TWO)


def test_flag_matroid_from_permutation_flags():
    z = Permutation.parse("3142")
    flag = tuple(z.prefix(d) for d in range(1, 4))
    F = flag_matroid_from_flags(4, [flag])
    assert [str(M) for M in F.constituents] == ["{3}", "{13}", "{134}"]
