"""Ожерелья Грассмана: распознавание позитроидов, одноэлементное расширение и обратная операция, тест частного."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .ground import (
    GroundError,
    Subset,
    SubsetLike,
    as_subset,
    gale_leq,
    gale_min,
    shifted_max,
    shifted_min,
    subsets_of_size,
)
from .matroid import Matroid, coloops, loops
from .utils import log_info


class NecklaceError(ValueError):
    """Некорректное ожерелье или пара ожерелий."""


@dataclass(frozen=True)
class GrassmannNecklace:
    """Последовательность (I_1, ..., I_n) d-подмножеств [n]; аксиома проверяется is_grassmann_necklace."""

    n: int
    d: int
    sets: Tuple[Subset, ...]

    def __post_init__(self) -> None:
        sets = tuple(self.sets)
        if len(sets) != self.n:
            raise NecklaceError(f"A necklace on [{self.n}] needs {self.n} sets, got {len(sets)}")
        for I in sets:
            if not isinstance(I, Subset) or I.n != self.n:
                raise NecklaceError(f"Necklace entry {I!r} does not live on [{self.n}]")
            if len(I) != self.d:
                raise NecklaceError(f"Necklace entry {I} has size {len(I)}, expected {self.d}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def of(cls, n: int, sets: Sequence[SubsetLike]) -> "GrassmannNecklace":
        items = tuple(as_subset(n, s) for s in sets)
        if not items:
            raise NecklaceError("Empty necklace")
        sizes = {len(s) for s in items}
        if len(sizes) != 1:
            raise NecklaceError(f"Necklace entries of mixed sizes {sorted(sizes)}")
        return cls(n, sizes.pop(), items)

    def __getitem__(self, i: int) -> Subset:
        """I_i с циклической индексацией (I_{n+1} = I_1)."""
        return self.sets[(i - 1) % self.n]

    def __str__(self) -> str:
        return "(" + ", ".join(str(s) for s in self.sets) + ")"


NecklaceLike = Union[GrassmannNecklace, Sequence[Subset]]


def _as_necklace(value: NecklaceLike) -> GrassmannNecklace:
    if isinstance(value, GrassmannNecklace):
        return value
    items = tuple(value)
    if not items:
        raise NecklaceError("Empty necklace")
    return GrassmannNecklace.of(items[0].n, items)


def is_grassmann_necklace(seq: NecklaceLike) -> bool:
    I = _as_necklace(seq)
    for i in range(1, I.n + 1):
        cur, nxt = I[i], I[i + 1]
        if i in cur:
            if not cur.without(i).issubset(nxt):
                return False
        elif cur != nxt:
            return False
    return True


def necklace_of(M: Matroid) -> GrassmannNecklace:
    """I_i = ≤_i-минимальная база M."""
    return GrassmannNecklace(M.n, M.rank, tuple(gale_min(M.bases, i) for i in range(1, M.n + 1)))


def positroid_contains(I: GrassmannNecklace, B: SubsetLike) -> bool:
    B = as_subset(I.n, B)
    if len(B) != I.d:
        return False
    return all(gale_leq(I[i], B, i) for i in range(1, I.n + 1))


def positroid_of(I: NecklaceLike) -> Matroid:
    I = _as_necklace(I)
    if not is_grassmann_necklace(I):
        raise NecklaceError(f"{I} is not a Grassmann necklace")
    bases = frozenset(B for B in subsets_of_size(I.n, I.d) if positroid_contains(I, B))
    return Matroid(I.n, I.d, bases)


def is_positroid(M: Matroid) -> bool:
    try:
        I = necklace_of(M)
    except GroundError:
        return False
    if not is_grassmann_necklace(I):
        return False
    return positroid_of(I).bases == M.bases


def _lift(S: Subset, n: int) -> Subset:
    return S.resized(n)


def pair_to_necklace(I1: NecklaceLike, I2: NecklaceLike) -> GrassmannNecklace:
    """Ожерелье на [n+1] позитроида с базами 𝓑(M₂) ∪ {B ∪ {n+1} : B ∈ 𝓑(M₁)}."""
    low, high = _as_necklace(I1), _as_necklace(I2)
    if low.n != high.n:
        raise NecklaceError(f"Necklaces on [{low.n}] and [{high.n}]")
    if high.d != low.d + 1:
        raise NecklaceError(f"Ranks must differ by one, got {low.d} and {high.d}")
    n = low.n
    N = n + 1
    sets: List[Subset] = [_lift(high[1], N)]
    for i in range(2, n + 1):
        a = _lift(low[i], N).with_element(N)
        b = _lift(high[i], N)
        try:
            sets.append(gale_min((a, b), i))
        except GroundError as exc:
            raise NecklaceError(f"{a} and {b} are not comparable in the {i}-Gale order") from exc
    sets.append(_lift(low[1], N).with_element(N))
    return GrassmannNecklace(N, high.d, tuple(sets))


def _contract_exchange(M: Matroid, J: Subset, i: int, e: int) -> Optional[int]:
    """≤_i-наибольший y ∈ J, для которого J - y + e -- база."""
    candidates = [y for y in J if J.without(y).with_element(e) in M.bases]
    return shifted_max(candidates, i, M.n) if candidates else None


def _delete_exchange(M: Matroid, J: Subset, i: int, e: int) -> Optional[int]:
    """≤_i-наименьший y ∉ J, для которого J - e + y -- база."""
    base = J.without(e)
    candidates = [y for y in range(1, M.n + 1) if y != e and y not in J and base.with_element(y) in M.bases]
    return shifted_min(candidates, i, M.n) if candidates else None


def delete_contract_necklaces(J: NecklaceLike) -> Tuple[GrassmannNecklace, GrassmannNecklace]:
    """(ожерелье M/(n+1), ожерелье M∖(n+1)) для M = positroid_of(J) на [n+1]."""
    J = _as_necklace(J)
    if J.n < 2:
        raise NecklaceError("Need a necklace on at least two elements")
    M = positroid_of(J)
    N = J.n
    n = N - 1
    if N in loops(M):
        raise NecklaceError(f"{N} is a loop of the positroid")
    if N in coloops(M):
        raise NecklaceError(f"{N} is a coloop of the positroid")
    contracted: List[Subset] = []
    deleted: List[Subset] = []
    for i in range(1, n + 1):
        Ji = J[i]
        if N in Ji:
            contracted.append(Ji.without(N).resized(n))
            y = _delete_exchange(M, Ji, i, N)
            if y is None:
                raise NecklaceError(f"No exchange for {N} at position {i}")
            deleted.append(Ji.without(N).with_element(y).resized(n))
        else:
            y = _contract_exchange(M, Ji, i, N)
            if y is None:
                raise NecklaceError(f"No exchange for {N} at position {i}")
            contracted.append(Ji.without(y).resized(n))
            deleted.append(Ji.resized(n))
    return GrassmannNecklace(n, J.d - 1, tuple(contracted)), GrassmannNecklace(n, J.d, tuple(deleted))


@dataclass(frozen=True)
class QuotientReport:
    """Результат проверки четырёх условий для пары ожерелий."""

    quotient: bool
    failed_condition: Optional[int] = None
    position: Optional[int] = None
    positions: Tuple[int, ...] = ()
    removed: Dict[int, int] = field(default_factory=dict)
    added: Dict[int, int] = field(default_factory=dict)
    detail: str = ""

    def as_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"quotient": self.quotient}
        if self.failed_condition is not None:
            out["failed_condition"] = self.failed_condition
            out["position"] = self.position
            out["detail"] = self.detail
        out["S"] = list(self.positions)
        out["a"] = {str(k): v for k, v in sorted(self.removed.items())}
        out["b"] = {str(k): v for k, v in sorted(self.added.items())}
        return out


def _is_final_segment(S: Sequence[int], n: int) -> bool:
    if not S:
        return True
    return list(S) == list(range(S[0], n + 1))


def quotient_report(I: NecklaceLike, J: NecklaceLike) -> QuotientReport:
    """Условия (1)-(4) для ожерелий I (ранг r) и J (ранг r+1) на [n].

    Условие (1) проверяется первым; при его нарушении остальные не вычисляются.
    """
    low, high = _as_necklace(I), _as_necklace(J)
    if low.n != high.n:
        raise NecklaceError(f"Necklaces on [{low.n}] and [{high.n}]")
    if high.d != low.d + 1:
        raise NecklaceError(f"Ranks must differ by one, got {low.d} and {high.d}")
    n = low.n
    N = n + 1

    for i in range(1, n + 1):
        if not low[i].issubset(high[i]):
            return QuotientReport(False, 1, i, detail=f"I_{i} = {low[i]} is not contained in J_{i} = {high[i]}")

    S = tuple(
        i for i in range(1, n + 1)
        if gale_leq(_lift(low[i], N).with_element(N), _lift(high[i], N), i)
    )
    if not _is_final_segment(S, n):
        return QuotientReport(False, 2, S[0], positions=S, detail=f"S = {list(S)} is not a final segment of [{n}]")
    extended = pair_to_necklace(low, high)
    if not is_grassmann_necklace(extended):
        return QuotientReport(False, 2, None, positions=S, detail=f"{extended} is not a Grassmann necklace")
    M = positroid_of(extended)

    removed: Dict[int, int] = {}
    for i in range(1, n + 1):
        if i in S:
            continue
        a = _contract_exchange(M, extended[i], i, N)
        if a is None:
            return QuotientReport(False, 3, i, positions=S, removed=removed, detail=f"no exchange element a_{i}")
        removed[i] = a
        if _lift(low[i], N) != extended[i].without(a):
            return QuotientReport(
                False, 3, i, positions=S, removed=removed,
                detail=f"I_{i} = {low[i]} differs from J_{i} \\ {{{a}}}",
            )

    added: Dict[int, int] = {}
    for i in S:
        b = _delete_exchange(M, extended[i], i, N)
        if b is None:
            return QuotientReport(False, 4, i, positions=S, removed=removed, added=added, detail=f"no exchange element b_{i}")
        added[i] = b
        if _lift(high[i], N) != _lift(low[i], N).with_element(b):
            return QuotientReport(
                False, 4, i, positions=S, removed=removed, added=added,
                detail=f"J_{i} = {high[i]} differs from I_{i} ∪ {{{b}}}",
            )

    return QuotientReport(True, positions=S, removed=removed, added=added)


def quotient_test(M1: Matroid, M2: Matroid) -> bool:
    return quotient_report_for(M1, M2).quotient


def quotient_report_for(M1: Matroid, M2: Matroid) -> QuotientReport:
    if M1.n != M2.n:
        raise NecklaceError(f"Matroids on [{M1.n}] and [{M2.n}]")
    if M2.rank != M1.rank + 1:
        raise NecklaceError(f"Rank gap must be one, got {M1.rank} and {M2.rank}")
    for M in (M1, M2):
        if not is_positroid(M):
            raise NecklaceError(f"{M} is not a positroid")
    return quotient_report(necklace_of(M1), necklace_of(M2))


def is_flag_positroid_consecutive(seq: Sequence[Matroid]) -> bool:
    items = list(seq)
    if not items:
        raise NecklaceError("Empty matroid sequence")
    ranks = [M.rank for M in items]
    if any(b != a + 1 for a, b in zip(ranks, ranks[1:])):
        raise NecklaceError(f"Ranks must be consecutive, got {ranks}")
    for M in items:
        if not is_positroid(M):
            log_info(f"constituent {M} is not a positroid")
            return False
    for low, high in zip(items, items[1:]):
        report = quotient_report(necklace_of(low), necklace_of(high))
        if not report.quotient:
            log_info(f"ranks {low.rank},{high.rank}: condition {report.failed_condition} fails ({report.detail})")
            return False
    return True


def _necklace_tails(n: int, prefix: List[Subset]) -> Iterator[List[Subset]]:
    i = len(prefix)
    if i == n:
        if is_grassmann_necklace(prefix):
            yield list(prefix)
        return
    cur = prefix[-1]
    if i not in cur:
        yield from _necklace_tails(n, prefix + [cur])
        return
    rest = cur.without(i)
    for j in range(1, n + 1):
        if j in rest:
            continue
        yield from _necklace_tails(n, prefix + [rest.with_element(j)])


def enumerate_necklaces(n: int, d: int) -> List[GrassmannNecklace]:
    """Все ожерелья ранга d на [n] перебором с возвратом."""
    if not 0 <= d <= n:
        raise NecklaceError(f"Rank {d} out of range 0..{n}")
    out = []
    for first in subsets_of_size(n, d):
        for sets in _necklace_tails(n, [first]):
            out.append(GrassmannNecklace(n, d, tuple(sets)))
    return out


def enumerate_positroids(n: int, d: int) -> List[Matroid]:
    return [positroid_of(I) for I in enumerate_necklaces(n, d)]


def necklace_summary(I: GrassmannNecklace) -> Dict[str, object]:
    return {"n": I.n, "d": I.d, "sets": [list(s.elements()) for s in I.sets]}


__all__ = [
    "NecklaceError",
    "GrassmannNecklace",
    "is_grassmann_necklace",
    "necklace_of",
    "positroid_contains",
    "positroid_of",
    "is_positroid",
    "pair_to_necklace",
    "delete_contract_necklaces",
    "QuotientReport",
    "quotient_report",
    "quotient_report_for",
    "quotient_test",
    "is_flag_positroid_consecutive",
    "enumerate_necklaces",
    "enumerate_positroids",
    "necklace_summary",
]
