"""Пересчёт опубликованных таблиц, панелей рисунка и разобранных примеров со сверкой с golden-файлами."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .bruhat import (
    TWISTED,
    UNTWISTED,
    BruhatError,
    BruhatInterval,
    bip_vertices,
    constituent_necklaces,
    envelope,
    interval_flag_matroid,
    interval_label,
    is_bruhat_interval_flag_matroid,
    twisted_bip_vertices,
    untwisted_partner,
    uv_from_flag_positroid,
)
from .ground import Permutation, Subset
from .matroid import Matroid, MatroidError, compress, contract, delete
from .necklace import (
    enumerate_positroids,
    is_flag_positroid_consecutive,
    necklace_of,
    quotient_report,
    quotient_test,
)
from .output import RunReport
from .polytope import (
    PolytopeError,
    Subdivision,
    all_cells_flag_positroid,
    cell_to_flag_matroid,
    fvector,
    subdivision_from_mu,
)
from .schema import (
    decode_flag_vector,
    decode_matroid,
    decode_matroid_sequence,
    decode_necklace,
    encode_point,
    read_json,
)
from .tropical import FlagTropVector, TropPluckerVector, dual, in_fldr_nonneg, pom_check
from .utils import log_info, log_warn

TARGETS = ("figure1", "table1", "table2", "examples")

_LABEL_ERRORS = (MatroidError, BruhatError, PolytopeError)


def load_golden(name: str) -> Dict[str, object]:
    path = config.golden_dir() / f"{name}.json"
    if not path.exists():
        raise FileNotFoundError(f"Golden file not found: {path}")
    return read_json(path)  # type: ignore[return-value]


def heights_vector(n: int, heights: Sequence[object]) -> FlagTropVector:
    """Высоты рангов 1..n-1 подряд в лексикографическом порядке; координата ранга n равна 0."""
    expected = sum(comb(n, k) for k in range(1, n))
    if len(heights) != expected:
        raise ValueError(f"Expected {expected} heights for n={n}, got {len(heights)}")
    parts: List[TropPluckerVector] = []
    pos = 0
    for k in range(1, n):
        size = comb(n, k)
        parts.append(TropPluckerVector.from_values(n, k, list(heights[pos:pos + size])))
        pos += size
    parts.append(TropPluckerVector.from_values(n, n, [0]))
    return FlagTropVector(tuple(parts))


def published_vector(n: int, heights: Sequence[object]) -> FlagTropVector:
    """Высота P_S из таблицы стоит на дополнении: μ(S) = P_{[n] \\ S} для рангов 1..n-1."""
    mu = heights_vector(n, heights)
    parts = [dual(mu.constituents[n - k - 1]) for k in range(1, n)]
    parts.append(mu.constituents[-1])
    return FlagTropVector(tuple(parts))


def cell_labels(sub: Subdivision, convention: str) -> List[str]:
    out = []
    for cell in sub.cells:
        iv = interval_label(cell_to_flag_matroid(cell), convention)
        out.append(f"{iv.u}/{iv.v}")
    return sorted(out)


@dataclass
class RowResult:
    row: int
    fvector: Tuple[int, ...] = ()
    cells: List[str] = field(default_factory=list)
    in_fldr_nonneg: bool = False
    positroidal: bool = False
    diffs: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diffs

    def as_dict(self) -> Dict[str, object]:
        return {
            "row": self.row,
            "ok": self.ok,
            "fvector": list(self.fvector),
            "cells": self.cells,
            "in_fldr_nonneg": self.in_fldr_nonneg,
            "positroidal": self.positroidal,
            "diffs": self.diffs,
        }


def detect_convention(row: Dict[str, object]) -> Optional[str]:
    """Какое соглашение о метках (untwisted / twisted) даёт напечатанные клетки строки."""
    sub = subdivision_from_mu(published_vector(4, row["heights"]))  # type: ignore[arg-type]
    expected = sorted(row["cells"])  # type: ignore[arg-type]
    for convention in (UNTWISTED, TWISTED):
        try:
            labels = cell_labels(sub, convention)
        except _LABEL_ERRORS:
            return None
        if labels == expected:
            return convention
    return None


def resolve_convention() -> Tuple[str, List[str]]:
    chosen = config.label_convention()
    if chosen != "auto":
        return chosen, []
    table = load_golden("table1")
    first = table["rows"][0]  # type: ignore[index]
    found = detect_convention(first)
    if found is None:
        return UNTWISTED, ["table1 row 1: printed cells match neither label convention"]
    log_info(f"label convention detected on table1 row 1: {found}")
    return found, []


def check_row(row: Dict[str, object], convention: str, finest: bool) -> Tuple[RowResult, Subdivision]:
    number = int(row["row"])  # type: ignore[arg-type]
    res = RowResult(number)
    mu = published_vector(4, row["heights"])  # type: ignore[arg-type]
    res.in_fldr_nonneg = in_fldr_nonneg(mu)
    sub = subdivision_from_mu(mu)
    res.fvector = fvector(sub)
    res.positroidal = all_cells_flag_positroid(sub, mu.ranks)
    expected_cells = sorted(row["cells"])  # type: ignore[arg-type]
    expected_f = tuple(row["fvector"])  # type: ignore[arg-type]
    if not res.in_fldr_nonneg:
        res.diffs.append(f"row {number}: heights are not in the nonnegative flag Dressian")
    if res.fvector != expected_f:
        res.diffs.append(f"row {number}: fvector {list(res.fvector)} != {list(expected_f)}")

    labels = []
    for cell in sub.cells:
        try:
            F = cell_to_flag_matroid(cell)
            label = interval_label(F, convention)
            is_interval = is_bruhat_interval_flag_matroid(F)
            env = envelope(F)
        except _LABEL_ERRORS as exc:
            res.diffs.append(f"row {number}: a cell has no Bruhat interval label ({exc})")
            continue
        labels.append(f"{label.u}/{label.v}")
        if not is_interval:
            res.diffs.append(f"row {number}: cell {label} is not a Bruhat interval polytope")
        elif finest and env.length_difference() != 3:
            res.diffs.append(f"row {number}: cell {label} is not 3-dimensional interval (not finest)")
    res.cells = sorted(labels)

    if res.cells != expected_cells:
        missing = sorted(set(expected_cells) - set(res.cells))
        extra = sorted(set(res.cells) - set(expected_cells))
        res.diffs.append(f"row {number}: cells missing {missing}, unexpected {extra}")
    if not res.positroidal:
        res.diffs.append(f"row {number}: some cell is not a flag positroid polytope")
    return res, sub


def reproduce_table(name: str, jobs: int = 1) -> RunReport:
    table = load_golden(name)
    report = RunReport.start(f"reproduce {name}", table)
    convention, diffs = resolve_convention()
    report.diffs.extend(diffs)
    expected_convention = table.get("label_convention")
    if expected_convention and expected_convention != convention:
        log_warn(f"label convention {convention} differs from the recorded {expected_convention}")
        report.diffs.append(f"label convention {convention} != recorded {expected_convention}")
    rows = list(table["rows"])  # type: ignore[arg-type]
    finest = bool(table.get("finest"))

    def run(row: Dict[str, object]) -> Tuple[RowResult, Subdivision]:
        log_info(f"{name}: row {row['row']}")
        return check_row(row, convention, finest)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(run, rows))

    seen: Dict[frozenset, int] = {}
    for res, sub in results:
        key = sub.cell_sets()
        if key in seen:
            res.diffs.append(f"row {res.row}: same subdivision as row {seen[key]}")
        else:
            seen[key] = res.row
        report.diffs.extend(res.diffs)

    passed = sum(1 for res, _ in results if res.ok)
    report.results = {
        "label_convention": convention,
        "rows": [res.as_dict() for res, _ in results],
        "passed": passed,
        "total": len(results),
    }
    return report.finish()


def _basis_keys(M: Matroid) -> List[str]:
    return [B.key() for B in M.sorted_bases()]


def reproduce_figure1() -> RunReport:
    golden = load_golden("figure1")
    report = RunReport.start("reproduce figure1", golden)
    panels = []
    for panel in golden["panels"]:  # type: ignore[union-attr]
        name = panel["name"]
        mu = decode_flag_vector(panel["input"], f"/panels/{name}/input")
        sub = subdivision_from_mu(mu)
        cells = sorted(sorted(encode_point(p) for p in c.vertices) for c in sub.cells)
        expected = sorted(sorted(c) for c in panel["cells"])
        bases = sorted([_basis_keys(M) for M in cell_to_flag_matroid(c).constituents] for c in sub.cells)
        expected_bases = sorted(panel["cell_bases"])
        fv = list(fvector(sub))
        member = in_fldr_nonneg(mu)
        positroidal = all_cells_flag_positroid(sub, mu.ranks)
        if cells != expected:
            report.diffs.append(f"{name}: cells {cells} != {expected}")
        if bases != expected_bases:
            report.diffs.append(f"{name}: cell bases {bases} != {expected_bases}")
        if fv != panel["fvector"]:
            report.diffs.append(f"{name}: fvector {fv} != {panel['fvector']}")
        if not member:
            report.diffs.append(f"{name}: weights are not in the nonnegative flag Dressian")
        if not positroidal:
            report.diffs.append(f"{name}: some cell is not a flag positroid polytope")
        panels.append({
            "name": name,
            "cells": cells,
            "cell_bases": bases,
            "fvector": fv,
            "in_fldr_nonneg": member,
            "positroidal": positroidal,
        })
    report.results = {"panels": panels}
    return report.finish()


def cantcomplete_witnesses(low: Matroid, high: Matroid, middle_rank: int) -> List[Matroid]:
    """Позитроиды M ранга middle_rank, для которых (low, M) и (M, high) -- оба положительные частные."""
    return [
        M for M in enumerate_positroids(low.n, middle_rank)
        if quotient_test(low, M) and quotient_test(M, high)
    ]


def _lift_minor(M: Matroid, m: int, deleted: int, extra: int) -> Matroid:
    D = Subset.of(M.n, range(m + 1, m + 1 + deleted))
    C = Subset.of(M.n, range(m + 1 + deleted, m + 1 + extra))
    out = M
    if D.mask:
        out = delete(out, D)
    if C.mask:
        out = contract(out, C)
    return compress(out)


def cantlift_witnesses(flag: Sequence[Matroid]) -> List[Matroid]:
    """Позитроиды M' на [m+k-1] ранга r_k с M'∖{m+1..m+j}/{m+j+1..} = M_{j+1} для всех j.

    Для трёх составляющих на [3]: M'/45 = M₁, M'∖4/5 = M₂, M'∖45 = M₃.
    """
    items = list(flag)
    m = items[0].n
    extra = len(items) - 1
    top = items[-1].rank
    found = []
    for M in enumerate_positroids(m + extra, top):
        ok = True
        for j, target in enumerate(items):
            minor = _lift_minor(M, m, j, extra)
            if minor.rank != target.rank or minor.bases != target.bases:
                ok = False
                break
        if ok:
            found.append(M)
    return found


def _words(perms) -> List[str]:
    return sorted(p.word() for p in perms)


def _check_interval(data: Dict[str, object], diffs: List[str]) -> Dict[str, object]:
    iv = BruhatInterval(Permutation(tuple(data["u"])), Permutation(tuple(data["v"])))  # type: ignore[arg-type]
    perms = _words(iv.permutations())
    necklaces = constituent_necklaces(iv.u, iv.v)
    neck_keys = [[S.key() for S in I.sets] for I in necklaces]
    F = interval_flag_matroid(iv.u, iv.v)
    bases = [_basis_keys(M) for M in F.constituents]
    twisted = sorted(encode_point(p) for p in twisted_bip_vertices(iv.u, iv.v))
    partner = untwisted_partner(iv)
    checks = {
        "permutations": (perms, sorted(data["permutations"])),  # type: ignore[arg-type]
        "necklaces": (neck_keys, data["necklaces"]),
        "bases": (bases, data["bases"]),
        "twisted_vertices": (twisted, sorted(data["twisted_vertices"])),  # type: ignore[arg-type]
        "untwisted_partner": (
            {"u": list(partner.u.images), "v": list(partner.v.images)},
            data["untwisted_partner"],
        ),
    }
    for key, (got, want) in checks.items():
        if got != want:
            diffs.append(f"interval {iv}: {key} {got} != {want}")
    if bip_vertices(partner.u, partner.v) != twisted_bip_vertices(iv.u, iv.v):
        diffs.append(f"interval {iv}: twisted vertices differ from those of {partner}")
    if [necklace_of(M) for M in F.constituents] != necklaces:
        diffs.append(f"interval {iv}: constituent necklaces disagree with the constituents")
    if envelope(F) != iv:
        diffs.append(f"interval {iv}: envelope is {envelope(F)}")
    if uv_from_flag_positroid(F) != iv:
        diffs.append(f"interval {iv}: Gale extremal bases give {uv_from_flag_positroid(F)}")
    return {
        "interval": str(iv),
        "permutations": perms,
        "necklaces": neck_keys,
        "bases": bases,
        "twisted_vertices": twisted,
        "untwisted_partner": str(partner),
    }


def reproduce_examples() -> RunReport:
    golden = load_golden("examples")
    report = RunReport.start("reproduce examples", golden)
    diffs = report.diffs
    results: Dict[str, object] = {}

    results["interval"] = _check_interval(golden["interval"], diffs)  # type: ignore[arg-type]

    pairs = []
    for k, pair in enumerate(golden["quotient_pairs"]):  # type: ignore[union-attr]
        I = decode_necklace(pair["I"], f"/quotient_pairs/{k}/I")
        J = decode_necklace(pair["J"], f"/quotient_pairs/{k}/J")
        rep = quotient_report(I, J)
        if rep.quotient != pair["quotient"] or rep.failed_condition != pair.get("failed_condition"):
            diffs.append(
                f"{pair['name']}: quotient={rep.quotient} condition={rep.failed_condition}, "
                f"expected quotient={pair['quotient']} condition={pair.get('failed_condition')}"
            )
        pairs.append({"name": pair["name"], **rep.as_dict()})
    results["quotient_pairs"] = pairs

    notreal = golden["notreal"]
    low = decode_matroid(notreal["low"], "/notreal/low")
    high = decode_matroid(notreal["high"], "/notreal/high")
    pom = pom_check([low, high])
    quotient = quotient_test(low, high)
    if pom != notreal["pom"] or quotient != notreal["quotient"]:
        diffs.append(f"notreal: pom={pom} quotient={quotient}")
    results["notreal"] = {"pom": pom, "quotient": quotient}

    cc = golden["cantcomplete"]
    low = decode_matroid(cc["low"], "/cantcomplete/low")
    high = decode_matroid(cc["high"], "/cantcomplete/high")
    found = cantcomplete_witnesses(low, high, int(cc["middle_rank"]))
    if len(found) != cc["witnesses"]:
        diffs.append(f"cantcomplete: {len(found)} witnesses, expected {cc['witnesses']}")
    results["cantcomplete"] = {"witnesses": len(found), "found": [_basis_keys(M) for M in found]}

    cl = golden["cantlift"]
    flag = decode_matroid_sequence(cl["flag"], "/cantlift/flag")
    positroid = is_flag_positroid_consecutive(flag)
    found = cantlift_witnesses(flag)
    if positroid != cl["flag_positroid"]:
        diffs.append(f"cantlift: flag positroid {positroid}, expected {cl['flag_positroid']}")
    if len(found) != cl["witnesses"]:
        diffs.append(f"cantlift: {len(found)} witnesses, expected {cl['witnesses']}")
    results["cantlift"] = {
        "flag_positroid": positroid,
        "witnesses": len(found),
        "found": [_basis_keys(M) for M in found],
    }

    report.results = results
    return report.finish()


def reproduce(target: str, jobs: int = 1) -> RunReport:
    if target == "figure1":
        return reproduce_figure1()
    if target in ("table1", "table2"):
        return reproduce_table(target, jobs)
    if target == "examples":
        return reproduce_examples()
    raise ValueError(f"Unknown reproduction target {target!r}; expected one of {', '.join(TARGETS)}")


__all__ = [
    "TARGETS",
    "load_golden",
    "heights_vector",
    "published_vector",
    "cell_labels",
    "RowResult",
    "detect_convention",
    "resolve_convention",
    "check_row",
    "reproduce_table",
    "reproduce_figure1",
    "cantcomplete_witnesses",
    "cantlift_witnesses",
    "reproduce_examples",
    "reproduce",
]
