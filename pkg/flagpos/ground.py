"""Комбинаторные примитивы: подмножества [n], сдвинутые и Gale-порядки, перестановки и порядок Брюа."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Sequence, Tuple, Union


class GroundError(ValueError):
    """Некорректные подмножества, перестановки или сравнения."""


# Порог, до которого таблица сравнений Брюа строится целиком
_BRUHAT_TABLE_LIMIT = 5


class Subset:
    """Подмножество [n] в виде битовой маски (элемент a хранится в бите a-1)."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int) -> None:
        if n < 0:
            raise GroundError(f"Ground set size must be non-negative, got {n}")
        if mask < 0 or mask >> n:
            raise GroundError(f"Mask {mask:#x} does not fit into [1..{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Subset is immutable")

    @classmethod
    def of(cls, n: int, elements: Iterable[int]) -> "Subset":
        mask = 0
        for a in elements:
            if isinstance(a, bool) or not isinstance(a, int):
                raise GroundError(f"Subset elements must be integers, got {a!r}")
            if not 1 <= a <= n:
                raise GroundError(f"Element {a} out of range 1..{n}")
            mask |= 1 << (a - 1)
        return cls(n, mask)

    @classmethod
    def parse(cls, n: int, text: str) -> "Subset":
        """Разобрать "1,3" или "13" (второй вариант только при n < 10)."""
        text = text.strip()
        if not text or text == "∅":
            return cls(n, 0)
        if "," in text:
            parts = [p.strip() for p in text.split(",") if p.strip()]
        elif n < 10:
            parts = list(text)
        else:
            parts = [text]
        try:
            return cls.of(n, (int(p) for p in parts))
        except ValueError as exc:
            if isinstance(exc, GroundError):
                raise
            raise GroundError(f"Cannot parse subset {text!r}") from exc

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(n, 0)

    def elements(self) -> Tuple[int, ...]:
        out = []
        mask = self.mask
        while mask:
            low = mask & -mask
            out.append(low.bit_length())
            mask ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __contains__(self, a: object) -> bool:
        return isinstance(a, int) and 1 <= a <= self.n and bool(self.mask >> (a - 1) & 1)

    def _same_n(self, other: "Subset") -> None:
        if not isinstance(other, Subset) or other.n != self.n:
            raise GroundError("Subsets live on different ground sets")

    def __or__(self, other: "Subset") -> "Subset":
        self._same_n(other)
        return Subset(self.n, self.mask | other.mask)

    def __and__(self, other: "Subset") -> "Subset":
        self._same_n(other)
        return Subset(self.n, self.mask & other.mask)

    def __sub__(self, other: "Subset") -> "Subset":
        self._same_n(other)
        return Subset(self.n, self.mask & ~other.mask)

    def issubset(self, other: "Subset") -> bool:
        self._same_n(other)
        return self.mask & ~other.mask == 0

    def with_element(self, a: int) -> "Subset":
        if not 1 <= a <= self.n:
            raise GroundError(f"Element {a} out of range 1..{self.n}")
        return Subset(self.n, self.mask | (1 << (a - 1)))

    def without(self, a: int) -> "Subset":
        if not 1 <= a <= self.n:
            raise GroundError(f"Element {a} out of range 1..{self.n}")
        return Subset(self.n, self.mask & ~(1 << (a - 1)))

    def complement(self) -> "Subset":
        return Subset(self.n, ((1 << self.n) - 1) & ~self.mask)

    def resized(self, n: int) -> "Subset":
        """То же множество на другом основном множестве [n]."""
        return Subset(n, self.mask)

    def key(self) -> str:
        return ",".join(str(a) for a in self.elements())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subset) and other.n == self.n and other.mask == self.mask

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def _sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self), self.elements()

    def __lt__(self, other: "Subset") -> bool:
        return self._sort_key() < other._sort_key()

    def __le__(self, other: "Subset") -> bool:
        return self._sort_key() <= other._sort_key()

    def __str__(self) -> str:
        if not self.mask:
            return "∅"
        if self.n < 10:
            return "".join(str(a) for a in self.elements())
        return self.key()

    def __repr__(self) -> str:
        return f"Subset({self})"


SubsetLike = Union[Subset, Iterable[int]]


def as_subset(n: int, value: SubsetLike) -> Subset:
    if isinstance(value, Subset):
        if value.n != n:
            raise GroundError(f"Subset {value} lives on [{value.n}], expected [{n}]")
        return value
    if isinstance(value, str):
        return Subset.parse(n, value)
    return Subset.of(n, value)


@lru_cache(maxsize=None)
def subsets_of_size(n: int, k: int) -> Tuple[Subset, ...]:
    """Все k-подмножества [n] в лексикографическом порядке."""
    if k < 0 or k > n:
        return ()
    return tuple(Subset.of(n, c) for c in itertools.combinations(range(1, n + 1), k))


@dataclass(frozen=True)
class ShiftedOrder:
    """Порядок i < i+1 < ... < n < 1 < ... < i-1 на [n]."""

    n: int
    pivot: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 1 <= self.pivot <= self.n:
            raise GroundError(f"Pivot {self.pivot} out of range 1..{self.n}")

    def key(self, a: int) -> int:
        if not 1 <= a <= self.n:
            raise GroundError(f"Element {a} out of range 1..{self.n}")
        return (a - self.pivot) % self.n

    def sort(self, elements: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(elements, key=self.key))


def shifted_cmp(a: int, b: int, order: ShiftedOrder) -> int:
    """-1, 0 или 1 по порядку <_i."""
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def shifted_min(elements: Iterable[int], i: int, n: int) -> int:
    order = ShiftedOrder(n, i)
    items = list(elements)
    if not items:
        raise GroundError("shifted_min of an empty set")
    return min(items, key=order.key)


def shifted_max(elements: Iterable[int], i: int, n: int) -> int:
    order = ShiftedOrder(n, i)
    items = list(elements)
    if not items:
        raise GroundError("shifted_max of an empty set")
    return max(items, key=order.key)


def gale_key(A: Subset, i: int) -> Tuple[int, ...]:
    """Отсортированные сдвинутые координаты A относительно <_i."""
    order = ShiftedOrder(A.n, i)
    return tuple(sorted(order.key(a) for a in A.elements()))


def gale_leq(A: Subset, B: Subset, i: int) -> bool:
    if A.n != B.n:
        raise GroundError("Gale comparison of subsets on different ground sets")
    if len(A) != len(B):
        raise GroundError(f"Gale comparison needs equal cardinalities, got {len(A)} and {len(B)}")
    return all(x <= y for x, y in zip(gale_key(A, i), gale_key(B, i)))


def _gale_extreme(collection: Iterable[Subset], i: int, minimum: bool) -> Subset:
    items = list(collection)
    if not items:
        raise GroundError("Gale extremum of an empty collection")
    sizes = {len(s) for s in items}
    if len(sizes) != 1:
        raise GroundError("Gale extremum of a mixed-cardinality collection")
    # лексикографический экстремум -- единственный кандидат
    keyed = [(gale_key(s, i), s) for s in items]
    if minimum:
        best_key, best = min(keyed, key=lambda t: t[0])
        ok = all(all(x <= y for x, y in zip(best_key, k)) for k, _ in keyed)
    else:
        best_key, best = max(keyed, key=lambda t: t[0])
        ok = all(all(x >= y for x, y in zip(best_key, k)) for k, _ in keyed)
    if not ok:
        kind = "minimum" if minimum else "maximum"
        raise GroundError(f"No unique {i}-Gale {kind}; the collection is not a matroid basis set")
    return best


def gale_min(collection: Iterable[Subset], i: int) -> Subset:
    return _gale_extreme(collection, i, minimum=True)


def gale_max(collection: Iterable[Subset], i: int) -> Subset:
    return _gale_extreme(collection, i, minimum=False)


@dataclass(frozen=True)
class Permutation:
    """Перестановка в однострочной записи z(1..n)."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise GroundError(f"{list(images)} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, value: Union[str, Sequence[int], "Permutation"]) -> "Permutation":
        if isinstance(value, Permutation):
            return value
        if isinstance(value, str):
            text = value.strip()
            parts = [p for p in text.split(",")] if "," in text else list(text)
            try:
                return cls(tuple(int(p) for p in parts))
            except ValueError as exc:
                if isinstance(exc, GroundError):
                    raise
                raise GroundError(f"Cannot parse permutation {value!r}") from exc
        return cls(tuple(value))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for pos, val in enumerate(self.images, start=1):
            inv[val - 1] = pos
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self ∘ other)(i) = self(other(i))."""
        if other.n != self.n:
            raise GroundError("Composition of permutations of different sizes")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def prefix(self, d: int) -> Subset:
        """z([d])."""
        if not 0 <= d <= self.n:
            raise GroundError(f"Prefix length {d} out of range 0..{self.n}")
        return Subset.of(self.n, self.images[:d])

    def length(self) -> int:
        imgs = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if imgs[a] > imgs[b])

    def word(self) -> str:
        if self.n < 10:
            return "".join(str(a) for a in self.images)
        return ",".join(str(a) for a in self.images)

    def __str__(self) -> str:
        return self.word()

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


@lru_cache(maxsize=None)
def all_permutations(n: int) -> Tuple[Permutation, ...]:
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def bruhat_leq(u: Permutation, v: Permutation) -> bool:
    """Табличный критерий: sort(u([d])) <= sort(v([d])) покомпонентно для всех d."""
    if u.n != v.n:
        raise GroundError(f"Bruhat comparison of S_{u.n} and S_{v.n}")
    for d in range(1, u.n):
        a = sorted(u.images[:d])
        b = sorted(v.images[:d])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


@lru_cache(maxsize=None)
def _bruhat_upsets(n: int) -> Dict[Permutation, FrozenSet[Permutation]]:
    perms = all_permutations(n)
    return {u: frozenset(z for z in perms if bruhat_leq(u, z)) for u in perms}


def bruhat_interval(u: Permutation, v: Permutation) -> FrozenSet[Permutation]:
    if not bruhat_leq(u, v):
        raise GroundError(f"{u} is not below {v} in Bruhat order")
    if u.n <= _BRUHAT_TABLE_LIMIT:
        table = _bruhat_upsets(u.n)
        return frozenset(z for z in table[u] if v in table[z])
    return frozenset(z for z in all_permutations(u.n) if bruhat_leq(u, z) and bruhat_leq(z, v))


__all__ = [
    "GroundError",
    "Subset",
    "SubsetLike",
    "as_subset",
    "subsets_of_size",
    "ShiftedOrder",
    "shifted_cmp",
    "shifted_min",
    "shifted_max",
    "gale_key",
    "gale_leq",
    "gale_min",
    "gale_max",
    "Permutation",
    "identity_permutation",
    "longest_permutation",
    "all_permutations",
    "bruhat_leq",
    "bruhat_interval",
]
