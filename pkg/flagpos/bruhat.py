"""Многогранники интервалов Брюа, флаговые матроиды интервалов, ожерелья составляющих и оболочки."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .ground import (
    GroundError,
    Permutation,
    Subset,
    bruhat_interval,
    bruhat_leq,
    gale_leq,
    gale_max,
    gale_min,
    longest_permutation,
)
from .matroid import FlagMatroid, Matroid, MatroidError, flag_matroid_from_flags
from .necklace import GrassmannNecklace, is_flag_positroid_consecutive
from .polytope import Point, as_point


class BruhatError(ValueError):
    """Некорректный интервал Брюа или флаговый матроид."""


UNTWISTED = "untwisted"
TWISTED = "twisted"


@dataclass(frozen=True)
class BruhatInterval:
    u: Permutation
    v: Permutation

    def __post_init__(self) -> None:
        if self.u.n != self.v.n:
            raise BruhatError(f"Interval ends of sizes {self.u.n} and {self.v.n}")
        if not bruhat_leq(self.u, self.v):
            raise BruhatError(f"{self.u} is not below {self.v} in Bruhat order")

    @classmethod
    def parse(cls, u: object, v: object) -> "BruhatInterval":
        try:
            return cls(Permutation.parse(u), Permutation.parse(v))  # type: ignore[arg-type]
        except GroundError as exc:
            raise BruhatError(str(exc)) from exc

    @property
    def n(self) -> int:
        return self.u.n

    def permutations(self) -> FrozenSet[Permutation]:
        return bruhat_interval(self.u, self.v)

    def length_difference(self) -> int:
        return self.v.length() - self.u.length()

    def __str__(self) -> str:
        return f"[{self.u},{self.v}]"


def _interval(u: Permutation, v: Permutation) -> BruhatInterval:
    return BruhatInterval(u, v)


def permutation_vector(z: Permutation) -> Point:
    return as_point(z.images)


def twisted_vector(z: Permutation) -> Point:
    """(n+1-z⁻¹(1), ..., n+1-z⁻¹(n))."""
    inv = z.inverse()
    return as_point(z.n + 1 - inv(i) for i in range(1, z.n + 1))


def bip_vertices(u: Permutation, v: Permutation) -> FrozenSet[Point]:
    return frozenset(permutation_vector(z) for z in _interval(u, v).permutations())


def twisted_bip_vertices(u: Permutation, v: Permutation) -> FrozenSet[Point]:
    return frozenset(twisted_vector(z) for z in _interval(u, v).permutations())


def untwisted_partner(interval: BruhatInterval) -> BruhatInterval:
    """[u, v] -> [w₀v⁻¹, w₀u⁻¹], так что P̃_{u,v} = P_{w₀v⁻¹, w₀u⁻¹}."""
    w0 = longest_permutation(interval.n)
    return BruhatInterval(w0.compose(interval.v.inverse()), w0.compose(interval.u.inverse()))


def flag_of_permutation(z: Permutation) -> Tuple[Subset, ...]:
    return tuple(z.prefix(d) for d in range(1, z.n + 1))


def interval_flag_matroid(u: Permutation, v: Permutation) -> FlagMatroid:
    """Флаги z([1]) ⊂ ... ⊂ z([n]) для u ≤ z ≤ v."""
    interval = _interval(u, v)
    return flag_matroid_from_flags(interval.n, (flag_of_permutation(z) for z in interval.permutations()))


def _permutation_from_flag(flag: Sequence[Subset], n: int) -> Permutation:
    images: List[int] = []
    prev = Subset.empty(n)
    for S in flag:
        new = (S - prev).elements()
        if len(new) != 1 or not prev.issubset(S):
            raise BruhatError("Reassembled sets do not form a complete flag")
        images.extend(new)
        prev = S
    return Permutation(tuple(images))


def gale_minimal_permutation(u: Permutation, v: Permutation, j: int) -> Permutation:
    """z^{(j)}: для каждого d берётся ≤_j-минимальное z([d]), флаг собирается обратно."""
    interval = _interval(u, v)
    perms = interval.permutations()
    n = interval.n
    flag = [gale_min({z.prefix(d) for z in perms}, j) for d in range(1, n + 1)]
    z = _permutation_from_flag(flag, n)
    if z not in perms:
        raise BruhatError(f"The {j}-Gale-minimal flag {z} is not realized inside {interval}")
    return z


def gale_minimal_permutation_search(u: Permutation, v: Permutation, j: int) -> Permutation:
    """Прямой перебор: z, у которого все z([d]) ≤_j w([d]) для любого w из интервала."""
    interval = _interval(u, v)
    perms = sorted(interval.permutations())
    n = interval.n
    found = [
        z for z in perms
        if all(gale_leq(z.prefix(d), w.prefix(d), j) for w in perms for d in range(1, n + 1))
    ]
    if len(found) != 1:
        raise BruhatError(f"{len(found)} candidates for the {j}-Gale-minimal permutation of {interval}")
    return found[0]


def constituent_necklaces(u: Permutation, v: Permutation) -> List[GrassmannNecklace]:
    """Ожерелье ранга d: (z^{(1)}([d]), ..., z^{(n)}([d]))."""
    interval = _interval(u, v)
    n = interval.n
    minimal = [gale_minimal_permutation(u, v, j) for j in range(1, n + 1)]
    return [GrassmannNecklace(n, d, tuple(z.prefix(d) for z in minimal)) for d in range(1, n + 1)]


def _unique_extreme(perms: Sequence[Permutation], lowest: bool) -> Permutation:
    for z in perms:
        if all((bruhat_leq(z, w) if lowest else bruhat_leq(w, z)) for w in perms):
            return z
    kind = "minimum" if lowest else "maximum"
    raise BruhatError(f"No Bruhat {kind} among the flags")


def _complete(F: FlagMatroid) -> FlagMatroid:
    if not F.is_complete():
        raise BruhatError(f"Flag matroid of ranks {list(F.ranks)} is not complete")
    return F


def envelope(F: FlagMatroid) -> BruhatInterval:
    """Наименьший интервал Брюа, содержащий перестановки всех флагов F."""
    perms = sorted(_complete(F).permutations())
    return BruhatInterval(_unique_extreme(perms, True), _unique_extreme(perms, False))


def is_bruhat_interval_flag_matroid(F: FlagMatroid) -> bool:
    env = envelope(F)
    return frozenset(F.permutations()) == env.permutations()


def interval_label(F: FlagMatroid, convention: str = UNTWISTED) -> BruhatInterval:
    """Метка клетки: [u, v] оболочки (twisted) или [w₀v⁻¹, w₀u⁻¹] (untwisted)."""
    env = envelope(F)
    if convention == TWISTED:
        return env
    if convention == UNTWISTED:
        return untwisted_partner(env)
    raise BruhatError(f"Unknown label convention {convention!r}")


def uv_from_flag_positroid(seq: "FlagMatroid | Sequence[Matroid]") -> BruhatInterval:
    """u(i) = B_i^min \\ B_{i-1}^min, v(i) = B_i^max \\ B_{i-1}^max по обычному порядку Гейла."""
    try:
        F = seq if isinstance(seq, FlagMatroid) else FlagMatroid(tuple(seq))
    except MatroidError as exc:
        raise BruhatError(str(exc)) from exc
    _complete(F)
    if not is_flag_positroid_consecutive(F.constituents):
        raise BruhatError("Not a complete flag positroid")
    n = F.n
    lows = [gale_min(M.bases, 1) for M in F.constituents]
    highs = [gale_max(M.bases, 1) for M in F.constituents]
    if len(lows) == n - 1:
        lows.append(Subset.full(n))
        highs.append(Subset.full(n))
    return BruhatInterval(_permutation_from_flag(lows, n), _permutation_from_flag(highs, n))


def interval_summary(interval: BruhatInterval) -> Dict[str, List[int]]:
    return {"u": list(interval.u.images), "v": list(interval.v.images)}


__all__ = [
    "BruhatError",
    "UNTWISTED",
    "TWISTED",
    "BruhatInterval",
    "permutation_vector",
    "twisted_vector",
    "bip_vertices",
    "twisted_bip_vertices",
    "untwisted_partner",
    "flag_of_permutation",
    "interval_flag_matroid",
    "gale_minimal_permutation",
    "gale_minimal_permutation_search",
    "constituent_necklaces",
    "envelope",
    "is_bruhat_interval_flag_matroid",
    "interval_label",
    "uv_from_flag_positroid",
    "interval_summary",
]
