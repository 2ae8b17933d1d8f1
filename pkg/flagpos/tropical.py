"""Тропические векторы Плюккера над (min, +) с точными рациональными числами и ∞.

Трёхчленные и полные соотношения Плюккера (обычные и положительные), принадлежность
неотрицательной (флаговой) Дрессиановой, двойственность, начальные части, аффинные сдвиги,
миноры и вложение 0/∞ для положительно ориентированных флаговых матроидов.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .ground import Subset, SubsetLike, as_subset, subsets_of_size
from .matroid import Matroid, MatroidError, contract, is_flag_matroid, is_matroid_bases


class TropicalError(ValueError):
    """Некорректный тропический вектор или отношение."""


INF = math.inf
TropVal = Union[Fraction, float]

GP = "gp"
INCIDENCE = "incidence"


def to_trop(value: object) -> TropVal:
    """Привести значение к Fraction или ∞; числа с плавающей точкой (кроме ∞) не принимаются."""
    if isinstance(value, bool):
        raise TropicalError(f"Not a tropical value: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value == INF:
            return INF
        raise TropicalError(f"Inexact value {value!r}; use integers, fractions or 'inf'")
    if isinstance(value, str):
        text = value.strip()
        if text.lower() in {"inf", "+inf", "infinity", "∞"}:
            return INF
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise TropicalError(f"Cannot parse tropical value {value!r}") from exc
    raise TropicalError(f"Not a tropical value: {value!r}")


def trop_sum(*values: TropVal) -> TropVal:
    total: TropVal = Fraction(0)
    for v in values:
        if v == INF:
            return INF
        total += v
    return total


def format_value(value: TropVal) -> str:
    if value == INF:
        return "inf"
    return str(value)


class TropPluckerVector:
    """Вектор на r-подмножествах [n]; хранятся только конечные координаты.

    Сравнение проективное: векторы равны, если отличаются на общую константу.
    """

    __slots__ = ("n", "r", "_coords")

    def __init__(self, n: int, r: int, coords: Mapping[Subset, object]) -> None:
        if not 0 <= r <= n:
            raise TropicalError(f"Rank {r} out of range 0..{n}")
        finite: Dict[Subset, Fraction] = {}
        for S, raw in coords.items():
            if not isinstance(S, Subset) or S.n != n or len(S) != r:
                raise TropicalError(f"Coordinate {S!r} is not an {r}-subset of [{n}]")
            value = to_trop(raw)
            if value != INF:
                finite[S] = value  # type: ignore[assignment]
        if not finite:
            raise TropicalError("A tropical Plücker vector cannot be identically ∞")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "_coords", finite)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TropPluckerVector is immutable")

    @classmethod
    def from_values(cls, n: int, r: int, values: Sequence[object]) -> "TropPluckerVector":
        """Значения в лексикографическом порядке r-подмножеств."""
        keys = subsets_of_size(n, r)
        if len(values) != len(keys):
            raise TropicalError(f"Expected {len(keys)} values for C([{n}],{r}), got {len(values)}")
        return cls(n, r, dict(zip(keys, values)))

    @classmethod
    def from_keys(cls, n: int, r: int, coords: Mapping[SubsetLike, object]) -> "TropPluckerVector":
        return cls(n, r, {as_subset(n, k): v for k, v in coords.items()})

    def __getitem__(self, S: Subset) -> TropVal:
        return self._coords.get(S, INF)

    def value(self, S: SubsetLike) -> TropVal:
        return self[as_subset(self.n, S)]

    def finite_items(self) -> List[Tuple[Subset, Fraction]]:
        return sorted(self._coords.items(), key=lambda kv: kv[0].elements())

    def values(self) -> List[TropVal]:
        return [self[S] for S in subsets_of_size(self.n, self.r)]

    def minimum(self) -> Fraction:
        return min(self._coords.values())

    def normalized(self) -> Dict[Subset, Fraction]:
        m = self.minimum()
        return {S: v - m for S, v in self._coords.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TropPluckerVector):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and self.normalized() == other.normalized()

    def __hash__(self) -> int:
        return hash((self.n, self.r, frozenset(self.normalized().items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{S}: {v}" for S, v in self.finite_items())
        return f"TropPluckerVector(n={self.n}, r={self.r}, {{{body}}})"


@dataclass(frozen=True)
class FlagTropVector:
    """(μ_{r_1}, ..., μ_{r_k}) с возрастающими рангами."""

    constituents: Tuple[TropPluckerVector, ...]

    def __post_init__(self) -> None:
        items = tuple(self.constituents)
        if not items:
            raise TropicalError("Empty flag vector")
        if len({v.n for v in items}) != 1:
            raise TropicalError("Constituents live on different [n]")
        ranks = [v.r for v in items]
        if any(a >= b for a, b in zip(ranks, ranks[1:])):
            raise TropicalError(f"Ranks must be strictly increasing, got {ranks}")
        object.__setattr__(self, "constituents", items)

    @property
    def n(self) -> int:
        return self.constituents[0].n

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(v.r for v in self.constituents)

    def constituent(self, r: int) -> TropPluckerVector:
        for v in self.constituents:
            if v.r == r:
                return v
        raise TropicalError(f"No constituent of rank {r}")

    def is_consecutive(self) -> bool:
        ranks = self.ranks
        return all(b == a + 1 for a, b in zip(ranks, ranks[1:]))


VectorLike = Union[TropPluckerVector, FlagTropVector]


def as_flag(vec: VectorLike) -> FlagTropVector:
    if isinstance(vec, FlagTropVector):
        return vec
    return FlagTropVector((vec,))


def support(mu: TropPluckerVector) -> FrozenSet[Subset]:
    return frozenset(S for S, _ in mu.finite_items())


def support_matroid(mu: TropPluckerVector) -> Matroid:
    """Носитель как матроид (аксиома замены не проверяется)."""
    return Matroid(mu.n, mu.r, support(mu))


@dataclass(frozen=True)
class ThreeTermRelation:
    """Три монома со знаками (+, -, +); каждый моном -- пара координат рангов ranks."""

    kind: str
    n: int
    ranks: Tuple[int, int]
    S: Subset
    tail: Tuple[int, ...]
    monomials: Tuple[Tuple[Subset, Subset], ...]

    signs = (1, -1, 1)

    def describe(self) -> str:
        parts = [f"x{a}·x{b}" for a, b in self.monomials]
        return f"{parts[0]} - {parts[1]} + {parts[2]}"


@lru_cache(maxsize=None)
def gen_three_term(n: int, r: int, kind: str) -> Tuple[ThreeTermRelation, ...]:
    """Все трёхчленные отношения.

    kind="gp": x_{Sij}x_{Skl} - x_{Sik}x_{Sjl} + x_{Sil}x_{Sjk}, |S| = r-2.
    kind="incidence": x_{Si}x_{Sjk} - x_{Sj}x_{Sik} + x_{Sk}x_{Sij} между рангами r и r+1, |S| = r-1.
    """
    if kind not in (GP, INCIDENCE):
        raise TropicalError(f"Unknown relation kind {kind!r}")
    if not 0 <= r <= n or (kind == INCIDENCE and r + 1 > n):
        raise TropicalError(f"Invalid rank {r} for {kind} relations on [{n}]")
    out: List[ThreeTermRelation] = []
    if kind == GP:
        if r < 2 or r + 2 > n:
            return ()
        for S in subsets_of_size(n, r - 2):
            rest = [a for a in range(1, n + 1) if a not in S]
            for i, j, k, l in itertools.combinations(rest, 4):
                mono = (
                    (S | Subset.of(n, (i, j)), S | Subset.of(n, (k, l))),
                    (S | Subset.of(n, (i, k)), S | Subset.of(n, (j, l))),
                    (S | Subset.of(n, (i, l)), S | Subset.of(n, (j, k))),
                )
                out.append(ThreeTermRelation(GP, n, (r, r), S, (i, j, k, l), mono))
    else:
        if r < 1:
            return ()
        for S in subsets_of_size(n, r - 1):
            rest = [a for a in range(1, n + 1) if a not in S]
            for i, j, k in itertools.combinations(rest, 3):
                mono = (
                    (S.with_element(i), S | Subset.of(n, (j, k))),
                    (S.with_element(j), S | Subset.of(n, (i, k))),
                    (S.with_element(k), S | Subset.of(n, (i, j))),
                )
                out.append(ThreeTermRelation(INCIDENCE, n, (r, r + 1), S, (i, j, k), mono))
    return tuple(out)


def _constituent_for(vec: VectorLike, r: int) -> TropPluckerVector:
    if isinstance(vec, TropPluckerVector):
        if vec.r != r:
            raise TropicalError(f"Relation needs rank {r}, vector has rank {vec.r}")
        return vec
    return vec.constituent(r)


def evaluate(vec: VectorLike, rel: ThreeTermRelation) -> Tuple[TropVal, TropVal, TropVal]:
    low = _constituent_for(vec, rel.ranks[0])
    high = _constituent_for(vec, rel.ranks[1])
    a, b, c = (trop_sum(low[x], high[y]) for x, y in rel.monomials)
    return a, b, c


def satisfies_tropical(vec: VectorLike, rel: ThreeTermRelation) -> bool:
    """Минимум (если конечен) достигается хотя бы дважды."""
    values = evaluate(vec, rel)
    m = min(values)
    if m == INF:
        return True
    return sum(1 for v in values if v == m) >= 2


def satisfies_positive_tropical(vec: VectorLike, rel: ThreeTermRelation) -> bool:
    """Средний (отрицательный) моном равен меньшему из крайних; все три ∞ -- тоже да."""
    outer, middle, other = evaluate(vec, rel)
    return middle == min(outer, other)


def relations_for(vec: VectorLike) -> List[ThreeTermRelation]:
    """GP-отношения каждого ранга и отношения инцидентности соседних рангов."""
    flag = as_flag(vec)
    rels: List[ThreeTermRelation] = []
    for r in flag.ranks:
        rels.extend(gen_three_term(flag.n, r, GP))
    ranks = flag.ranks
    for a, b in zip(ranks, ranks[1:]):
        if b == a + 1:
            rels.extend(gen_three_term(flag.n, a, INCIDENCE))
    return rels


def support_is_flag_matroid(vec: VectorLike) -> bool:
    flag = as_flag(vec)
    supports = [support_matroid(v) for v in flag.constituents]
    if len(supports) == 1:
        return is_matroid_bases(flag.n, supports[0].bases)
    return is_flag_matroid(supports)


def violated_relations(vec: VectorLike, positive: bool = True) -> List[ThreeTermRelation]:
    check = satisfies_positive_tropical if positive else satisfies_tropical
    return [rel for rel in relations_for(vec) if not check(vec, rel)]


def in_fldr_nonneg(mu: VectorLike, consecutive: bool = True) -> bool:
    """Принадлежность неотрицательной флаговой Дрессиане по трёхчленным отношениям.

    consecutive=False отправляет в экспериментальную проверку in_fldr_nonneg_adjacent.
    """
    flag = as_flag(mu)
    if not flag.is_consecutive():
        if consecutive:
            raise TropicalError(f"Ranks {list(flag.ranks)} are not consecutive")
        return in_fldr_nonneg_adjacent(flag)
    if not support_is_flag_matroid(flag):
        return False
    return all(satisfies_positive_tropical(flag, rel) for rel in relations_for(flag))


def in_dressian(mu: VectorLike) -> bool:
    """Та же проверка без знакового условия."""
    flag = as_flag(mu)
    if not flag.is_consecutive():
        raise TropicalError(f"Ranks {list(flag.ranks)} are not consecutive")
    if not support_is_flag_matroid(flag):
        return False
    return all(satisfies_tropical(flag, rel) for rel in relations_for(flag))


def indicator_vector(M: Matroid) -> TropPluckerVector:
    """0 на базах, ∞ вне их."""
    return TropPluckerVector(M.n, M.rank, {B: Fraction(0) for B in M.bases})


def rank_deficiency_vector(M: Matroid) -> TropPluckerVector:
    """ρ(S) = rank(M) - rk_M(S) на всех r-подмножествах."""
    return TropPluckerVector(
        M.n, M.rank, {S: Fraction(M.rank - M.rank_of(S)) for S in subsets_of_size(M.n, M.rank)}
    )


def pom_check(seq: Sequence[Matroid]) -> bool:
    """Положительно ориентированный флаговый матроид через 0/∞-вложение."""
    items = list(seq)
    if not items:
        raise TropicalError("Empty matroid sequence")
    ranks = [M.rank for M in items]
    if any(b != a + 1 for a, b in zip(ranks, ranks[1:])):
        raise TropicalError(f"Ranks must be consecutive, got {ranks}")
    return in_fldr_nonneg(FlagTropVector(tuple(indicator_vector(M) for M in items)))


def dual(mu: TropPluckerVector) -> TropPluckerVector:
    """w^⊥(I) = w([n] \\ I)."""
    return TropPluckerVector(mu.n, mu.n - mu.r, {S.complement(): v for S, v in mu.finite_items()})


def initial_part(mu: VectorLike) -> VectorLike:
    """0 там, где достигается минимум, ∞ в остальных координатах (для флага -- покомпонентно)."""
    if isinstance(mu, FlagTropVector):
        return FlagTropVector(tuple(initial_part(v) for v in mu.constituents))  # type: ignore[misc]
    m = mu.minimum()
    return TropPluckerVector(mu.n, mu.r, {S: Fraction(0) for S, v in mu.finite_items() if v == m})


def affine_shift(mu: VectorLike, phi: Sequence[object]) -> VectorLike:
    """(φμ)(S) = c₀ + Σ_{i∈S} c_i + μ(S), φ = (c₀, c₁, ..., c_n)."""
    flag = as_flag(mu)
    coeffs = [to_trop(c) for c in phi]
    if len(coeffs) != flag.n + 1 or any(c == INF for c in coeffs):
        raise TropicalError(f"Affine functional needs {flag.n + 1} finite coefficients")
    shifted = tuple(
        TropPluckerVector(
            v.n, v.r,
            {S: val + coeffs[0] + sum((coeffs[a] for a in S), Fraction(0)) for S, val in v.finite_items()},
        )
        for v in flag.constituents
    )
    if isinstance(mu, TropPluckerVector):
        return shifted[0]
    return FlagTropVector(shifted)


def valuated_minor(mu: TropPluckerVector, keep: SubsetLike, contract_set: SubsetLike) -> TropPluckerVector:
    """μ|keep/contract, перенумерованный в [m] с сохранением порядка элементов.

    μ'(B) = μ(B ∪ C ∪ T), где T -- лексикографически первая база μ̲/keep.
    """
    n = mu.n
    K = as_subset(n, keep)
    C = as_subset(n, contract_set)
    if not C.issubset(K):
        raise TropicalError(f"Contracted set {C} is not inside {K}")
    M = support_matroid(mu)
    if M.rank_of(C) != len(C):
        raise TropicalError(f"Contracted set {C} is dependent in the support")
    outside = contract(M, K)
    T = min(outside.bases, key=lambda B: B.elements())
    minor_rank = M.rank_of(K) - len(C)
    ground = (K - C).elements()
    m = len(ground)
    coords: Dict[Subset, TropVal] = {}
    for combo in itertools.combinations(range(1, m + 1), minor_rank):
        B = Subset.of(n, (ground[k - 1] for k in combo))
        coords[Subset.of(m, combo)] = mu[B | C | T]
    try:
        return TropPluckerVector(m, minor_rank, coords)
    except TropicalError as exc:
        raise TropicalError(f"Minor of {mu!r} by keep={K}, contract={C} is empty") from exc


def extend_with_element(mu1: TropPluckerVector, mu2: TropPluckerVector) -> TropPluckerVector:
    """μ̃ на [n+1]: μ₁(S \\ {n+1}) если n+1 ∈ S, иначе μ₂(S)."""
    if mu1.n != mu2.n or mu2.r != mu1.r + 1:
        raise TropicalError("extend_with_element needs ranks r and r+1 on the same [n]")
    N = mu1.n + 1
    coords: Dict[Subset, TropVal] = {}
    for S, v in mu1.finite_items():
        coords[S.resized(N).with_element(N)] = v
    for S, v in mu2.finite_items():
        coords[S.resized(N)] = v
    return TropPluckerVector(N, mu2.r, coords)


@dataclass(frozen=True)
class PluckerRelation:
    """Σ sign · x_A · x_B по всем членам полного отношения между рангами ranks."""

    n: int
    ranks: Tuple[int, int]
    I: Subset
    J: Subset
    terms: Tuple[Tuple[int, Subset, Subset], ...]


def _plucker_sign(j: int, I: Subset, J: Subset) -> int:
    exponent = sum(1 for k in J if k < j) + sum(1 for i in I if j < i)
    return -1 if exponent % 2 else 1


@lru_cache(maxsize=None)
def plucker_relations(n: int, r: int, s: int) -> Tuple[PluckerRelation, ...]:
    """Полное семейство отношений между рангами r ≤ s: I ∈ C([n], r-1), J ∈ C([n], s+1)."""
    if not 1 <= r <= s <= n - 1:
        raise TropicalError(f"Invalid ranks ({r}, {s}) on [{n}]")
    out: List[PluckerRelation] = []
    for I in subsets_of_size(n, r - 1):
        for J in subsets_of_size(n, s + 1):
            combined: Dict[Tuple[Subset, Subset], int] = {}
            for j in J:
                if j in I:
                    continue
                key = (I.with_element(j), J.without(j))
                combined[key] = combined.get(key, 0) + _plucker_sign(j, I, J)
            if r == s:
                # x_A x_B и x_B x_A -- один моном
                merged: Dict[Tuple[Subset, Subset], int] = {}
                for (A, B), c in combined.items():
                    key = (A, B) if A.elements() <= B.elements() else (B, A)
                    merged[key] = merged.get(key, 0) + c
                combined = merged
            terms = []
            for (A, B), c in sorted(combined.items(), key=lambda kv: (kv[0][0].elements(), kv[0][1].elements())):
                if c == 0:
                    continue
                if abs(c) != 1:
                    raise TropicalError(f"Unexpected coefficient {c} in relation ({I}, {J})")
                terms.append((c, A, B))
            if len(terms) >= 2:
                out.append(PluckerRelation(n, (r, s), I, J, tuple(terms)))
    return tuple(out)


def _term_values(vec: VectorLike, rel: PluckerRelation) -> List[Tuple[int, TropVal]]:
    low = _constituent_for(vec, rel.ranks[0])
    high = _constituent_for(vec, rel.ranks[1])
    return [(sign, trop_sum(low[A], high[B])) for sign, A, B in rel.terms]


def satisfies_tropical_terms(vec: VectorLike, rel: PluckerRelation) -> bool:
    values = [v for _, v in _term_values(vec, rel)]
    m = min(values)
    return m == INF or values.count(m) >= 2


def satisfies_positive_tropical_terms(vec: VectorLike, rel: PluckerRelation) -> bool:
    """Минимум достигается на членах разных знаков (или все члены ∞)."""
    values = _term_values(vec, rel)
    m = min(v for _, v in values)
    if m == INF:
        return True
    signs = {sign for sign, v in values if v == m}
    return signs == {1, -1}


def in_fldr_nonneg_adjacent(mu: VectorLike) -> bool:
    """Экспериментально: все отношения 𝒫_{r,r} и 𝒫_{r_i,r_{i+1}} для соседних рангов выполнены положительно.

    Реализуемость не утверждается.
    """
    flag = as_flag(mu)
    n = flag.n
    pairs = [(r, r) for r in flag.ranks]
    pairs += list(zip(flag.ranks, flag.ranks[1:]))
    for r, s in pairs:
        if not 1 <= r <= s <= n - 1:
            continue
        for rel in plucker_relations(n, r, s):
            if not satisfies_positive_tropical_terms(flag, rel):
                return False
    return True


def flag_from_matroids(seq: Iterable[Matroid]) -> FlagTropVector:
    return FlagTropVector(tuple(indicator_vector(M) for M in seq))


def flag_support(mu: VectorLike) -> List[Matroid]:
    try:
        return [support_matroid(v) for v in as_flag(mu).constituents]
    except MatroidError as exc:
        raise TropicalError(str(exc)) from exc


__all__ = [
    "TropicalError",
    "INF",
    "TropVal",
    "GP",
    "INCIDENCE",
    "to_trop",
    "trop_sum",
    "format_value",
    "TropPluckerVector",
    "FlagTropVector",
    "VectorLike",
    "as_flag",
    "support",
    "support_matroid",
    "ThreeTermRelation",
    "gen_three_term",
    "evaluate",
    "satisfies_tropical",
    "satisfies_positive_tropical",
    "relations_for",
    "support_is_flag_matroid",
    "violated_relations",
    "in_fldr_nonneg",
    "in_dressian",
    "indicator_vector",
    "rank_deficiency_vector",
    "pom_check",
    "dual",
    "initial_part",
    "affine_shift",
    "valuated_minor",
    "extend_with_element",
    "PluckerRelation",
    "plucker_relations",
    "satisfies_tropical_terms",
    "satisfies_positive_tropical_terms",
    "in_fldr_nonneg_adjacent",
    "flag_from_matroids",
    "flag_support",
]
