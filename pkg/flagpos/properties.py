"""Случайные (с фиксированным seed) и небольшие переборные наборы свойств.

Каждый набор возвращает SuiteResult: сколько примеров проверено, сколько удовлетворяют
посылке свойства и сколько нарушений найдено (дословно хранятся только первые несколько).
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .ground import Subset, subsets_of_size
from .matroid import Matroid, coloops, is_matroid_bases, loops
from .necklace import enumerate_positroids, quotient_test
from .output import RunReport
from .polytope import all_cells_flag_positroid, subdivision_from_mu, twod_faces_flag_positroid
from .tropical import (
    GP,
    INF,
    FlagTropVector,
    TropPluckerVector,
    affine_shift,
    dual,
    gen_three_term,
    in_dressian,
    in_fldr_nonneg,
    initial_part,
    pom_check,
    rank_deficiency_vector,
    relations_for,
    satisfies_positive_tropical,
    support_is_flag_matroid,
)
from .utils import log_info

_KEEP = 5


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    premise: int = 0
    violations: int = 0
    samples: List[str] = field(default_factory=list)
    extra: Dict[str, object] = field(default_factory=dict)

    def violate(self, what: str) -> None:
        self.violations += 1
        if len(self.samples) < _KEEP:
            self.samples.append(what)

    def as_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "checked": self.checked,
            "premise": self.premise,
            "violations": self.violations,
        }
        if self.samples:
            out["samples"] = list(self.samples)
        out.update(self.extra)
        return out


@lru_cache(maxsize=None)
def positroids(n: int, d: int) -> Tuple[Matroid, ...]:
    return tuple(enumerate_positroids(n, d))


def random_vector(
    rng: random.Random,
    n: int,
    r: int,
    top: int = 2,
    inf_rate: float = 0.0,
    support: Optional[Sequence[Subset]] = None,
) -> Optional[TropPluckerVector]:
    keys = list(support) if support is not None else subsets_of_size(n, r)
    coords = {}
    for S in keys:
        if inf_rate and rng.random() < inf_rate:
            continue
        coords[S] = Fraction(rng.randint(0, top))
    if not coords:
        return None
    return TropPluckerVector(n, r, coords)


def caterpillar_vector(n: int) -> TropPluckerVector:
    """-d(i, j) для дерева-гусеницы с листьями 1..n по кругу; общая точка Dr^{≥0}_{2,n}."""
    attach = [1] + list(range(1, n - 1)) + [n - 2]
    return TropPluckerVector(
        n, 2, {Subset.of(n, (i, j)): Fraction(-abs(attach[i - 1] - attach[j - 1])) for i, j in itertools.combinations(range(1, n + 1), 2)}
    )


@lru_cache(maxsize=None)
def _covers(M: Matroid) -> Tuple[Matroid, ...]:
    return tuple(N for N in positroids(M.n, M.rank + 1) if quotient_test(M, N))


def random_quotient_chain(rng: random.Random, n: int, ranks: Sequence[int], tries: int = 20) -> Optional[List[Matroid]]:
    """Случайная цепочка позитроидов соседних рангов, каждая пара проходит quotient_test."""
    for _ in range(tries):
        chain = [rng.choice(positroids(n, ranks[0]))]
        for _r in ranks[1:]:
            options = _covers(chain[-1])
            if not options:
                break
            chain.append(rng.choice(options))
        if len(chain) == len(ranks):
            return chain
    return None


def random_member(rng: random.Random, n: int, ranks: Sequence[int], tries: int = 50) -> Optional[FlagTropVector]:
    """Случайная точка FlDr^{≥0}: значения 0/1 на базах случайной положительной цепочки, отбор проверкой."""
    for _ in range(tries):
        chain = random_quotient_chain(rng, n, ranks)
        if chain is None:
            continue
        parts = tuple(random_vector(rng, n, M.rank, top=1, support=M.sorted_bases()) for M in chain)
        mu = FlagTropVector(parts)  # type: ignore[arg-type]
        if in_fldr_nonneg(mu):
            return mu
    return None


def _involves(rel, element: int) -> bool:
    return any(element in A or element in B for A, B in rel.monomials)


def exchange_lemma(rng: random.Random, count: int) -> SuiteResult:
    """Ранг 2 на [5]: отношения с 5 положительны и некоторое w_{i5} < ∞ ⇒ отношение на {1,2,3,4} тоже."""
    res = SuiteResult("exchange_lemma")
    rels = gen_three_term(5, 2, GP)
    with_five = [rel for rel in rels if _involves(rel, 5)]
    without = [rel for rel in rels if not _involves(rel, 5)]
    for _ in range(count):
        w = random_vector(rng, 5, 2, top=2, inf_rate=0.2)
        if w is None:
            continue
        res.checked += 1
        if all(w[Subset.of(5, (i, 5))] == INF for i in range(1, 5)):
            continue
        if not all(satisfies_positive_tropical(w, rel) for rel in with_five):
            continue
        res.premise += 1
        for rel in without:
            if not satisfies_positive_tropical(w, rel):
                res.violate(f"{w!r} fails {rel.describe()}")
    return res


def exchange_lemma_dual(rng: random.Random, count: int) -> SuiteResult:
    """Ранг 3 на [5]: носитель -- матроид без кольца 5, отношения с переменной без 5 положительны ⇒ оставшееся тоже."""
    res = SuiteResult("exchange_lemma_dual")
    rels = gen_three_term(5, 3, GP)
    touching = [rel for rel in rels if any(5 not in A or 5 not in B for A, B in rel.monomials)]
    rest = [rel for rel in rels if rel not in touching]
    for _ in range(count):
        w = random_vector(rng, 5, 3, top=2, inf_rate=0.2)
        if w is None:
            continue
        res.checked += 1
        keys = [S for S, _ in w.finite_items()]
        if not is_matroid_bases(5, keys):
            continue
        M = Matroid(5, 3, frozenset(keys))
        if 5 in coloops(M):
            continue
        if not all(satisfies_positive_tropical(w, rel) for rel in touching):
            continue
        res.premise += 1
        for rel in rest:
            if not satisfies_positive_tropical(w, rel):
                res.violate(f"{w!r} fails {rel.describe()}")
    return res


def almost_three_term(rng: random.Random, count: int) -> SuiteResult:
    """Соседние ранги: носитель -- флаговый матроид и все инцидентные отношения положительны ⇒ и все GP."""
    res = SuiteResult("almost_three_term")
    for _ in range(count):
        n = rng.choice((4, 5))
        r = rng.randint(1, n - 2)
        chain = random_quotient_chain(rng, n, (r, r + 1))
        if chain is None:
            continue
        mu = FlagTropVector(tuple(
            random_vector(rng, n, M.rank, top=2, support=M.sorted_bases()) for M in chain  # type: ignore[misc]
        ))
        res.checked += 1
        if not support_is_flag_matroid(mu):
            continue
        rels = relations_for(mu)
        incidence = [rel for rel in rels if rel.kind != GP]
        if not all(satisfies_positive_tropical(mu, rel) for rel in incidence):
            continue
        res.premise += 1
        for rel in rels:
            if rel.kind == GP and not satisfies_positive_tropical(mu, rel):
                res.violate(f"n={n} ranks=({r},{r + 1}) fails {rel.describe()}")
    return res


_CONFIGS: Tuple[Tuple[int, Tuple[int, ...]], ...] = ((4, (2,)), (4, (1, 2, 3)), (5, (2, 3)), (5, (1, 2)))


def closure(rng: random.Random, count: int) -> SuiteResult:
    """Начальная часть и аффинный сдвиг не выводят из FlDr^{≥0}."""
    res = SuiteResult("closure")
    for _ in range(count):
        n, ranks = rng.choice(_CONFIGS)
        mu = random_member(rng, n, ranks)
        if mu is None:
            continue
        res.checked += 1
        res.premise += 1
        phi = [rng.randint(-3, 3) for _ in range(n + 1)]
        if not in_fldr_nonneg(initial_part(mu)):
            res.violate(f"initial part leaves FlDr≥0 for n={n} ranks={ranks}")
        if not in_fldr_nonneg(affine_shift(mu, phi)):
            res.violate(f"affine shift {phi} leaves FlDr≥0 for n={n} ranks={ranks}")
    return res


def _scaled_sum(items: Sequence[Tuple[int, FlagTropVector]]) -> FlagTropVector:
    first = items[0][1]
    parts = []
    for k, v in enumerate(first.constituents):
        coords = {}
        for S in subsets_of_size(v.n, v.r):
            total = Fraction(0)
            for c, mu in items:
                total += c * mu.constituents[k][S]  # type: ignore[operator]
            coords[S] = total
        parts.append(TropPluckerVector(v.n, v.r, coords))
    return FlagTropVector(tuple(parts))


def convexity(rng: random.Random, count: int) -> SuiteResult:
    """Неотрицательная комбинация точек FlDr^{≥0} с полным носителем, лежащая в FlDr, лежит в FlDr^{≥0}."""
    res = SuiteResult("convexity")
    pool: Dict[Tuple[int, Tuple[int, ...]], List[FlagTropVector]] = {}
    for _ in range(count):
        n, ranks = rng.choice(_CONFIGS)
        members = pool.setdefault((n, ranks), [])
        candidate = FlagTropVector(tuple(random_vector(rng, n, r, top=3) for r in ranks))  # type: ignore[misc]
        if in_fldr_nonneg(candidate):
            members.append(candidate)
        if len(members) < 2:
            continue
        a, b = rng.sample(members, 2)
        combo = _scaled_sum([(rng.randint(0, 3), a), (rng.randint(0, 3), b)])
        res.checked += 1
        if not in_dressian(combo):
            continue
        res.premise += 1
        if not in_fldr_nonneg(combo):
            res.violate(f"combination at n={n} ranks={ranks} is tropical but not positive")
    return res


def duality(rng: random.Random, count: int) -> SuiteResult:
    """w ∈ Dr^{≥0}_{r,n} ⇔ w^⊥ ∈ Dr^{≥0}_{n-r,n}: все 0/∞-векторы при n ≤ 5 и случайные рациональные при n = 6."""
    res = SuiteResult("duality")
    for n in range(2, 6):
        for r in range(1, n):
            keys = subsets_of_size(n, r)
            for size in range(1, len(keys) + 1):
                for chosen in itertools.combinations(keys, size):
                    w = TropPluckerVector(n, r, {S: Fraction(0) for S in chosen})
                    res.checked += 1
                    res.premise += 1
                    if in_fldr_nonneg(w) != in_fldr_nonneg(dual(w)):
                        res.violate(f"{w!r} and its dual disagree")
    for _ in range(count):
        r = rng.randint(2, 4)
        w = random_vector(rng, 6, r, top=3, inf_rate=0.1)
        if w is None:
            continue
        res.checked += 1
        res.premise += 1
        if in_fldr_nonneg(w) != in_fldr_nonneg(dual(w)):
            res.violate(f"{w!r} and its dual disagree")
    return res


def deficiency_premise(M: Matroid) -> bool:
    """Ранг 2 без петель или коранг 2 без копетель; при рангах 1 и n-1 трёхчленных отношений нет."""
    if M.rank in (1, M.n - 1):
        return True
    if M.rank == 2 and not loops(M):
        return True
    return M.rank == M.n - 2 and not coloops(M)


def rank_deficiency(rng: random.Random, count: int) -> SuiteResult:
    """ρ_M(S) = rank(M) - rk_M(S) -- точка Dr^{≥0} для позитроидов из deficiency_premise (n ≤ 5).

    С петлями утверждение неверно: для M = {12, 14} на [4] нарушено отношение на 1234.
    """
    res = SuiteResult("rank_deficiency")
    outside = 0
    for n in range(1, 6):
        for d in range(1, n):
            for M in positroids(n, d):
                res.checked += 1
                member = in_fldr_nonneg(rank_deficiency_vector(M))
                if not deficiency_premise(M):
                    if not member:
                        outside += 1
                    continue
                res.premise += 1
                if not member:
                    res.violate(f"rank deficiency of {M} on [{n}] is not in Dr≥0")
    res.extra["outside_premise_failures"] = outside
    return res


def speyer_count(rng: random.Random, count: int) -> SuiteResult:
    """Позитроидные подразбиения Δ_{d,n} имеют не больше C(n-2, d-1) клеток; общие точки дают ровно столько."""
    res = SuiteResult("speyer_count")
    cases = [(2, 4), (2, 5), (3, 5)]
    generic = {
        (2, 4): caterpillar_vector(4),
        (2, 5): caterpillar_vector(5),
        (3, 5): dual(caterpillar_vector(5)),
    }
    maxima: Dict[str, int] = {}
    for d, n in cases:
        bound = comb(n - 2, d - 1)
        sub = subdivision_from_mu(generic[(d, n)])
        res.checked += 1
        res.premise += 1
        if len(sub.cells) != bound:
            res.violate(f"generic point of Dr≥0_{{{d},{n}}} gives {len(sub.cells)} cells, expected {bound}")
        maxima[f"{d},{n}"] = len(sub.cells)
    for _ in range(count):
        d, n = rng.choice(cases)
        w = random_vector(rng, n, d, top=2)
        if w is None:
            continue
        res.checked += 1
        if not in_fldr_nonneg(w):
            continue
        res.premise += 1
        cells = len(subdivision_from_mu(w).cells)
        bound = comb(n - 2, d - 1)
        if cells > bound:
            res.violate(f"positroidal subdivision of Δ_{{{d},{n}}} with {cells} > {bound} cells")
    res.extra["generic_cells"] = maxima
    return res


def oracle_quotient(rng: random.Random, count: int) -> SuiteResult:
    """quotient_test = pom_check: все пары позитроидов соседних рангов при n ≤ 5 и случайные при n = 6."""
    res = SuiteResult("oracle_quotient")

    def compare(M1: Matroid, M2: Matroid) -> None:
        res.checked += 1
        res.premise += 1
        if quotient_test(M1, M2) != pom_check([M1, M2]):
            res.violate(f"quotient_test and pom_check disagree on {M1} / {M2}")

    for n in range(2, 6):
        for d in range(0, n):
            for M1 in positroids(n, d):
                for M2 in positroids(n, d + 1):
                    compare(M1, M2)
    for _ in range(count):
        d = rng.randint(0, 5)
        compare(rng.choice(positroids(6, d)), rng.choice(positroids(6, d + 1)))
    return res


def oracle_subdivision(rng: random.Random, count: int) -> SuiteResult:
    """in_fldr_nonneg = все клетки -- флаговые позитроиды = все грани размерности ≤ 2 -- флаговые позитроиды."""
    res = SuiteResult("oracle_subdivision")
    configs = ((4, (2,)), (4, (1, 2, 3)), (5, (2, 3)))
    agree = {"members": 0, "non_members": 0}
    for k in range(count):
        n, ranks = configs[k % len(configs)]
        if k % 2:
            mu = random_member(rng, n, ranks)
            if mu is None:
                continue
            phi = [rng.randint(-2, 2) for _ in range(n + 1)]
            mu = affine_shift(mu, phi)  # type: ignore[assignment]
        else:
            mu = FlagTropVector(tuple(random_vector(rng, n, r, top=2) for r in ranks))  # type: ignore[misc]
        res.checked += 1
        if not support_is_flag_matroid(mu):
            continue
        res.premise += 1
        sub = subdivision_from_mu(mu)
        member = in_fldr_nonneg(mu)
        cells = all_cells_flag_positroid(sub, ranks)
        faces = twod_faces_flag_positroid(sub, ranks)
        if not member == cells == faces:
            res.violate(f"n={n} ranks={ranks}: FlDr≥0={member} cells={cells} 2-faces={faces}")
        else:
            agree["members" if member else "non_members"] += 1
    res.extra.update(agree)
    return res


Suite = Callable[[random.Random, int], SuiteResult]

SUITES: Dict[str, Tuple[Suite, int]] = {
    "exchange_lemma": (exchange_lemma, 1),
    "exchange_lemma_dual": (exchange_lemma_dual, 1),
    "almost_three_term": (almost_three_term, 10),
    "closure": (closure, 10),
    "convexity": (convexity, 10),
    "duality": (duality, 10),
    "rank_deficiency": (rank_deficiency, 1),
    "speyer_count": (speyer_count, 50),
    "oracle_quotient": (oracle_quotient, 10),
    "oracle_subdivision": (oracle_subdivision, 50),
}


def run_properties(seed: int, count: int = 10_000, suites: Optional[Sequence[str]] = None, jobs: int = 1) -> RunReport:
    """Прогнать наборы; у каждого свой Random(seed, имя), так что порядок и --jobs не влияют на результат.

    count задаёт размер самых дешёвых наборов, остальные берут count // делитель.
    """
    names = list(suites) if suites else list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown property suites: {', '.join(unknown)}")
    report = RunReport.start("properties", {"suites": names, "count": count}, seed=seed)

    def run(name: str) -> SuiteResult:
        fn, divisor = SUITES[name]
        rng = random.Random(f"{seed}:{name}")
        log_info(f"property suite {name}")
        return fn(rng, max(1, count // divisor))

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(run, names))

    report.results = {r.name: r.as_dict() for r in results}
    for r in results:
        if r.violations:
            report.diffs.append(f"{r.name}: {r.violations} violations")
    return report.finish()


__all__ = [
    "SuiteResult",
    "SUITES",
    "positroids",
    "random_vector",
    "caterpillar_vector",
    "random_quotient_chain",
    "random_member",
    "exchange_lemma",
    "exchange_lemma_dual",
    "almost_three_term",
    "closure",
    "convexity",
    "duality",
    "deficiency_premise",
    "rank_deficiency",
    "speyer_count",
    "oracle_quotient",
    "oracle_subdivision",
    "run_properties",
]
