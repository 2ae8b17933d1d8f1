"""Матроиды на [n], заданные базами: аксиомы, ранг, миноры, двойственность, частные, флаговые матроиды."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .ground import Permutation, Subset, SubsetLike, as_subset, subsets_of_size


class MatroidError(ValueError):
    """Некорректная матроидная конструкция."""


Flag = Tuple[Subset, ...]


@dataclass(frozen=True)
class Matroid:
    """Матроид по множеству баз.

    Аксиома замены здесь не проверяется (см. Matroid.checked и is_matroid_bases);
    проверяются только размеры баз и принадлежность основному множеству.
    """

    n: int
    rank: int
    bases: FrozenSet[Subset]
    ground: Optional[Subset] = field(default=None)

    def __post_init__(self) -> None:
        ground = self.ground if self.ground is not None else Subset.full(self.n)
        if ground.n != self.n:
            raise MatroidError(f"Ground set {ground} does not live on [{self.n}]")
        object.__setattr__(self, "ground", ground)
        bases = frozenset(self.bases)
        if not bases:
            raise MatroidError("A matroid needs at least one basis")
        for B in bases:
            if not isinstance(B, Subset) or B.n != self.n:
                raise MatroidError(f"Basis {B!r} does not live on [{self.n}]")
            if len(B) != self.rank:
                raise MatroidError(f"Basis {B} has size {len(B)}, expected rank {self.rank}")
            if not B.issubset(ground):
                raise MatroidError(f"Basis {B} is not contained in the ground set {ground}")
        object.__setattr__(self, "bases", bases)

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[SubsetLike], ground: Optional[SubsetLike] = None) -> "Matroid":
        items = [as_subset(n, b) for b in bases]
        if not items:
            raise MatroidError("A matroid needs at least one basis")
        sizes = {len(b) for b in items}
        if len(sizes) != 1:
            raise MatroidError(f"Bases of mixed cardinalities {sorted(sizes)}")
        g = as_subset(n, ground) if ground is not None else None
        return cls(n, sizes.pop(), frozenset(items), g)

    @classmethod
    def checked(cls, n: int, bases: Iterable[SubsetLike], ground: Optional[SubsetLike] = None) -> "Matroid":
        m = cls.from_bases(n, bases, ground)
        if not is_matroid_bases(n, m.bases):
            raise MatroidError("Basis-exchange axiom fails")
        return m

    def sorted_bases(self) -> List[Subset]:
        return sorted(self.bases)

    @cached_property
    def _basis_masks(self) -> Tuple[int, ...]:
        return tuple(B.mask for B in self.bases)

    @cached_property
    def rank_table(self) -> Tuple[int, ...]:
        """Ранги всех 2^n подмножеств, индекс -- битовая маска."""
        masks = self._basis_masks
        return tuple(max((m & s).bit_count() for m in masks) for s in range(1 << self.n))

    def rank_of(self, S: Subset) -> int:
        if self.n <= 16:
            return self.rank_table[S.mask]
        return max((m & S.mask).bit_count() for m in self._basis_masks)

    def __str__(self) -> str:
        return "{" + ", ".join(str(B) for B in self.sorted_bases()) + "}"


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise MatroidError(f"U_{{{r},{n}}} is undefined")
    return Matroid(n, r, frozenset(subsets_of_size(n, r)))


def is_matroid_bases(n: int, bases: Iterable[SubsetLike]) -> bool:
    items = [as_subset(n, b) for b in bases]
    if not items:
        raise MatroidError("Empty basis collection")
    if len({len(b) for b in items}) != 1:
        raise MatroidError("Mixed-cardinality basis collection")
    masks = {b.mask for b in items}
    for a in masks:
        for b in masks:
            diff_a = a & ~b
            diff_b = b & ~a
            x_bits = diff_a
            while x_bits:
                x = x_bits & -x_bits
                x_bits ^= x
                y_bits = diff_b
                found = False
                while y_bits:
                    y = y_bits & -y_bits
                    y_bits ^= y
                    if (a ^ x) | y in masks:
                        found = True
                        break
                if not found:
                    return False
    return True


def rank(M: Matroid, S: SubsetLike) -> int:
    return M.rank_of(as_subset(M.n, S))


def loops(M: Matroid) -> Subset:
    union = 0
    for B in M.bases:
        union |= B.mask
    return Subset(M.n, M.ground.mask & ~union)


def coloops(M: Matroid) -> Subset:
    common = M.ground.mask
    for B in M.bases:
        common &= B.mask
    return Subset(M.n, common)


def _check_inside(M: Matroid, S: Subset, what: str) -> None:
    if not S.issubset(M.ground):
        raise MatroidError(f"Cannot {what} {S}: not inside the ground set {M.ground}")


def delete(M: Matroid, S: SubsetLike) -> Matroid:
    """M \\ S; удаление кологи понижает ранг."""
    S = as_subset(M.n, S)
    _check_inside(M, S, "delete")
    ground = M.ground - S
    if not ground.mask and M.ground.mask:
        raise MatroidError("Deleting every element of the ground set")
    restricted = {B - S for B in M.bases}
    top = max(len(B) for B in restricted)
    return Matroid(M.n, top, frozenset(B for B in restricted if len(B) == top), ground)


def contract(M: Matroid, S: SubsetLike) -> Matroid:
    """M / S через максимальное независимое подмножество S."""
    S = as_subset(M.n, S)
    _check_inside(M, S, "contract")
    rs = M.rank_of(S)
    bases = frozenset(B - S for B in M.bases if len(B & S) == rs)
    return Matroid(M.n, M.rank - rs, bases, M.ground - S)


def restrict(M: Matroid, S: SubsetLike) -> Matroid:
    S = as_subset(M.n, S)
    _check_inside(M, S, "restrict to")
    if S == M.ground:
        return M
    return delete(M, M.ground - S)


def dual(M: Matroid) -> Matroid:
    size = len(M.ground)
    return Matroid(M.n, size - M.rank, frozenset(M.ground - B for B in M.bases), M.ground)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    if M.n != N.n:
        raise MatroidError("Direct sum of matroids on different [n]")
    if M.ground.mask & N.ground.mask:
        raise MatroidError(f"Ground sets {M.ground} and {N.ground} overlap")
    bases = frozenset(A | B for A in M.bases for B in N.bases)
    return Matroid(M.n, M.rank + N.rank, bases, M.ground | N.ground)


def chain_face_minor(M: Matroid, chain: Sequence[SubsetLike]) -> Matroid:
    """M|S1 ⊕ M|S2/S1 ⊕ ... ⊕ M/S_l."""
    steps = [as_subset(M.n, S) for S in chain]
    prev = Subset.empty(M.n)
    for S in steps:
        if not S.mask or S == M.ground:
            raise MatroidError(f"Chain members must be nonempty proper subsets, got {S}")
        if not S.issubset(M.ground) or not prev.issubset(S) or prev == S:
            raise MatroidError(f"Malformed chain at {S}")
        prev = S
    result: Optional[Matroid] = None
    prev = Subset.empty(M.n)
    for S in steps + [M.ground]:
        part = contract(restrict(M, S), prev)
        result = part if result is None else direct_sum(result, part)
        prev = S
    assert result is not None
    return result


def relabel(M: Matroid, mapping: Mapping[int, int], n: Optional[int] = None) -> Matroid:
    """Переименовать элементы; mapping должен быть инъективен на основном множестве."""
    target_n = n if n is not None else M.n
    if len({mapping[a] for a in M.ground}) != len(M.ground):
        raise MatroidError("Relabeling is not injective on the ground set")
    ground = Subset.of(target_n, (mapping[a] for a in M.ground))
    bases = frozenset(Subset.of(target_n, (mapping[a] for a in B)) for B in M.bases)
    return Matroid(target_n, M.rank, bases, ground)


def compress(M: Matroid) -> Matroid:
    """Перенумеровать основное множество в [m] с сохранением порядка."""
    mapping = {a: k for k, a in enumerate(M.ground.elements(), start=1)}
    return relabel(M, mapping, len(mapping))


def _submasks(mask: int) -> Iterable[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def is_quotient(low: Matroid, high: Matroid) -> bool:
    """Критерий через ранги: r_high(A) - r_high(B) >= r_low(A) - r_low(B) для B ⊆ A.

    Достаточно проверять одноэлементные расширения B ⊂ B + x.
    """
    if low.n != high.n or low.ground != high.ground:
        raise MatroidError("Quotient test needs matroids on the same ground set")
    rl = low.rank_table
    rh = high.rank_table
    ground = low.ground.mask
    for B in _submasks(ground):
        free = ground & ~B
        while free:
            x = free & -free
            free ^= x
            A = B | x
            if rh[A] - rh[B] < rl[A] - rl[B]:
                return False
    return True


def _flag_chains(constituents: Sequence[Matroid]) -> List[Flag]:
    chains: List[Flag] = [()]
    for M in constituents:
        nxt: List[Flag] = []
        for chain in chains:
            last = chain[-1] if chain else None
            for B in M.sorted_bases():
                if last is None or last.issubset(B):
                    nxt.append(chain + (B,))
        chains = nxt
    return chains


def _validate_sequence(seq: Sequence[Matroid]) -> Tuple[Matroid, ...]:
    items = tuple(seq)
    if not items:
        raise MatroidError("Empty matroid sequence")
    n = items[0].n
    for M in items:
        if M.n != n or M.ground != items[0].ground:
            raise MatroidError("Constituents live on different ground sets")
    ranks = [M.rank for M in items]
    if any(a >= b for a, b in zip(ranks, ranks[1:])):
        raise MatroidError(f"Ranks must be strictly increasing, got {ranks}")
    return items


@dataclass(frozen=True)
class FlagMatroid:
    """Последовательность матроидов возрастающих рангов (проверка -- is_flag_matroid)."""

    constituents: Tuple[Matroid, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "constituents", _validate_sequence(self.constituents))

    @property
    def n(self) -> int:
        return self.constituents[0].n

    @property
    def ranks(self) -> Tuple[int, ...]:
        return tuple(M.rank for M in self.constituents)

    def constituent(self, r: int) -> Matroid:
        for M in self.constituents:
            if M.rank == r:
                return M
        raise MatroidError(f"No constituent of rank {r}")

    def is_complete(self) -> bool:
        ranks = self.ranks
        return ranks == tuple(range(1, self.n + 1)) or ranks == tuple(range(1, self.n))

    @cached_property
    def flags(self) -> FrozenSet[Flag]:
        return flags_of(self)

    def permutations(self) -> List[Permutation]:
        """Перестановки полных флагов: z(i) = F_i \\ F_{i-1}."""
        if not self.is_complete():
            raise MatroidError(f"Flag matroid of ranks {self.ranks} is not complete")
        out = []
        for flag in sorted(self.flags, key=lambda f: tuple(B.elements() for B in f)):
            images = []
            prev = Subset.empty(self.n)
            for B in flag:
                images.extend((B - prev).elements())
                prev = B
            images.extend((Subset.full(self.n) - prev).elements())
            out.append(Permutation(tuple(images)))
        return out


def _as_sequence(seq: "FlagMatroid | Sequence[Matroid]") -> Tuple[Matroid, ...]:
    if isinstance(seq, FlagMatroid):
        return seq.constituents
    return _validate_sequence(seq)


def is_flag_matroid(seq: "FlagMatroid | Sequence[Matroid]") -> bool:
    items = _as_sequence(seq)
    for M in items:
        if not is_matroid_bases(M.n, M.bases):
            return False
    if not all(is_quotient(a, b) for a, b in zip(items, items[1:])):
        return False
    ranks = [M.rank for M in items]
    if any(b - a > 1 for a, b in zip(ranks, ranks[1:])):
        # при пропусках рангов дополнительно сверяемся с полиэдральным критерием
        from .polytope import is_flag_matroid_polytope

        return is_flag_matroid_polytope(items)
    return True


def flags_of(seq: "FlagMatroid | Sequence[Matroid]") -> FrozenSet[Flag]:
    items = _as_sequence(seq)
    if not all(is_quotient(a, b) for a, b in zip(items, items[1:])):
        raise MatroidError("Not a flag matroid: a consecutive pair is not a quotient")
    return frozenset(_flag_chains(items))


def flag_matroid_from_flags(n: int, flags: Iterable[Flag]) -> FlagMatroid:
    """Составляющие M_i с базами {F_i} по набору флагов."""
    flags = list(flags)
    if not flags:
        raise MatroidError("Empty flag collection")
    length = len(flags[0])
    if any(len(f) != length for f in flags):
        raise MatroidError("Flags of different lengths")
    constituents = []
    for k in range(length):
        bases = {f[k] for f in flags}
        sizes = {len(B) for B in bases}
        if len(sizes) != 1:
            raise MatroidError(f"Flag labels disagree on the rank of step {k + 1}")
        constituents.append(Matroid(n, sizes.pop(), frozenset(bases)))
    return FlagMatroid(tuple(constituents))


def matroid_summary(M: Matroid) -> Dict[str, object]:
    return {
        "n": M.n,
        "rank": M.rank,
        "bases": [list(B.elements()) for B in M.sorted_bases()],
    }


__all__ = [
    "MatroidError",
    "Flag",
    "Matroid",
    "FlagMatroid",
    "uniform",
    "is_matroid_bases",
    "rank",
    "loops",
    "coloops",
    "delete",
    "contract",
    "restrict",
    "dual",
    "direct_sum",
    "chain_face_minor",
    "relabel",
    "compress",
    "is_quotient",
    "is_flag_matroid",
    "flags_of",
    "flag_matroid_from_flags",
    "matroid_summary",
]
