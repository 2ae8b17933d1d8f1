"""Точные рациональные многогранники: оболочки и решётки граней, регулярные подразбиения, флаговые многогранники."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import _cdd
from .config import dimension_cap
from .ground import Subset
from .matroid import (
    Flag,
    FlagMatroid,
    Matroid,
    MatroidError,
    flag_matroid_from_flags,
    flags_of,
    is_flag_matroid,
    is_matroid_bases,
    uniform,
)
from .utils import log_info


class PolytopeError(ValueError):
    """Некорректные входные данные для полиэдральных вычислений."""


class CertifierDisagreement(RuntimeError):
    """Проверки через ожерелья и через 0/∞-вложение дали разные ответы."""


Point = Tuple[Fraction, ...]


def as_point(coords: Iterable[object]) -> Point:
    return tuple(Fraction(c) for c in coords)  # type: ignore[arg-type]


def _echelon(rows: Sequence[Sequence[Fraction]]) -> Tuple[int, List[int]]:
    """Ранг и ведущие столбцы ступенчатого вида."""
    mat = [list(r) for r in rows]
    if not mat:
        return 0, []
    width = len(mat[0])
    pivots: List[int] = []
    row = 0
    for col in range(width):
        pivot = next((k for k in range(row, len(mat)) if mat[k][col] != 0), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        lead = mat[row][col]
        for k in range(row + 1, len(mat)):
            if mat[k][col] != 0:
                factor = mat[k][col] / lead
                mat[k] = [x - factor * y for x, y in zip(mat[k], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return row, pivots


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Размерность аффинной оболочки (-1 для пустого набора)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    return _echelon([[x - y for x, y in zip(p, base)] for p in pts[1:]])[0]


def _reduction(points: Sequence[Point]) -> Tuple[int, List[int]]:
    base = points[0]
    return _echelon([[x - y for x, y in zip(p, base)] for p in points[1:]])


def _project(points: Sequence[Point], columns: Sequence[int]) -> List[Point]:
    return [tuple(p[c] for c in columns) for p in points]


def _satisfied_with_equality(ineq: _cdd.Inequality, q: Point) -> bool:
    b, a = ineq
    return b + sum((x * y for x, y in zip(a, q)), Fraction(0)) == 0


@dataclass(frozen=True, eq=False)
class Polytope:
    """Многогранник с вершинами, решёткой граней (без пустой грани) и метками флагов."""

    vertices: Tuple[Point, ...]
    dim: int
    faces: Tuple[Tuple[FrozenSet[int], int], ...]
    labels: Mapping[Point, Flag] = field(default_factory=dict)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def vertex_set(self) -> FrozenSet[Point]:
        return frozenset(self.vertices)

    def face_points(self, face: FrozenSet[int]) -> FrozenSet[Point]:
        return frozenset(self.vertices[i] for i in face)

    def faces_of_dim(self, k: int) -> List[FrozenSet[int]]:
        return [f for f, d in self.faces if d == k]

    @cached_property
    def point_faces(self) -> Dict[FrozenSet[Point], int]:
        return {self.face_points(f): d for f, d in self.faces}

    def is_face(self, points: Iterable[Point]) -> bool:
        return frozenset(points) in self.point_faces

    def edges(self) -> List[Tuple[Point, Point]]:
        out = []
        for f in self.faces_of_dim(1):
            a, b = sorted(self.face_points(f))
            out.append((a, b))
        return out

    def fvector(self) -> Tuple[int, ...]:
        return tuple(len(self.faces_of_dim(k)) for k in range(self.dim + 1))

    def label_of(self, p: Point) -> Flag:
        try:
            return self.labels[p]
        except KeyError:
            raise PolytopeError(f"Vertex {_fmt_point(p)} carries no flag label") from None


def _fmt_point(p: Point) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


def _face_lattice(facets: Sequence[FrozenSet[int]], full: FrozenSet[int], reduced: Sequence[Point], dim: int) -> Dict[FrozenSet[int], int]:
    faces: Dict[FrozenSet[int], int] = {full: dim}
    frontier = [full]
    while frontier:
        nxt = []
        for G in frontier:
            for H in facets:
                X = G & H
                if X and X != G and X not in faces:
                    faces[X] = affine_rank([reduced[i] for i in X])
                    nxt.append(X)
        frontier = nxt
    return faces


def hull_faces(points: Iterable[Sequence[object]], labels: Optional[Mapping[Point, Flag]] = None) -> Polytope:
    """Выпуклая оболочка: крайние точки, решётка граней, f-вектор."""
    pts = sorted({as_point(p) for p in points})
    if not pts:
        raise PolytopeError("Convex hull of an empty point set")
    if len({len(p) for p in pts}) != 1:
        raise PolytopeError("Points of different ambient dimensions")
    dim, columns = _reduction(pts)
    cap = dimension_cap()
    if dim > cap:
        raise PolytopeError(f"Intrinsic dimension {dim} exceeds the cap {cap}")
    keep_labels = dict(labels or {})
    if dim == 0:
        return Polytope((pts[0],), 0, ((frozenset({0}), 0),), _restrict_labels(keep_labels, pts[:1]))

    reduced = _project(pts, columns)
    facets: Dict[FrozenSet[int], None] = {}
    for ineq in _cdd.hull_inequalities(reduced):
        incident = frozenset(k for k, q in enumerate(reduced) if _satisfied_with_equality(ineq, q))
        if incident and affine_rank([reduced[k] for k in incident]) == dim - 1:
            facets[incident] = None
    facet_list = list(facets)

    extreme = []
    for k in range(len(pts)):
        common = frozenset(range(len(pts)))
        for F in facet_list:
            if k in F:
                common &= F
        if common == {k}:
            extreme.append(k)
    index = {old: new for new, old in enumerate(extreme)}
    vertices = tuple(pts[k] for k in extreme)
    vfacets = [frozenset(index[k] for k in F if k in index) for F in facet_list]
    vreduced = [reduced[k] for k in extreme]
    lattice = _face_lattice(vfacets, frozenset(range(len(vertices))), vreduced, dim)
    faces = tuple(sorted(lattice.items(), key=lambda kv: (kv[1], sorted(kv[0]))))
    return Polytope(vertices, dim, faces, _restrict_labels(keep_labels, vertices))


def _restrict_labels(labels: Mapping[Point, Flag], vertices: Iterable[Point]) -> Dict[Point, Flag]:
    return {p: labels[p] for p in vertices if p in labels}


@dataclass(frozen=True, eq=False)
class Subdivision:
    """Регулярное подразбиение: максимальные клетки и веса вершин."""

    ambient: Polytope
    cells: Tuple[Polytope, ...]
    weights: Mapping[Point, Fraction]

    @property
    def labels(self) -> Mapping[Point, Flag]:
        return self.ambient.labels

    @cached_property
    def complex_faces(self) -> Dict[FrozenSet[Point], int]:
        """Все грани всех клеток без повторов (по множествам вершин)."""
        out: Dict[FrozenSet[Point], int] = {}
        for cell in self.cells:
            out.update(cell.point_faces)
        return out

    def cell_sets(self) -> FrozenSet[FrozenSet[Point]]:
        return frozenset(cell.vertex_set for cell in self.cells)


def regular_subdivision(
    points: Sequence[Sequence[object]],
    weights: Sequence[object],
    labels: Optional[Mapping[Point, Flag]] = None,
) -> Subdivision:
    """Проекции нижних фасет поднятой конфигурации {(p, w(p))}."""
    pts = [as_point(p) for p in points]
    if len(pts) != len(weights):
        raise PolytopeError(f"{len(pts)} points but {len(weights)} weights")
    if not pts:
        raise PolytopeError("Empty point configuration")
    w: Dict[Point, Fraction] = {}
    for p, raw in zip(pts, weights):
        try:
            value = Fraction(raw)  # type: ignore[arg-type]
        except (TypeError, ValueError, OverflowError) as exc:
            raise PolytopeError(f"Weight {raw!r} is not a finite rational") from exc
        if p in w and w[p] != value:
            raise PolytopeError(f"Point {_fmt_point(p)} listed twice with different weights")
        w[p] = value
    order = sorted(w)
    ambient = hull_faces(order, labels)
    if ambient.dim == 0:
        return Subdivision(ambient, (ambient,), w)

    dim, columns = _reduction(order)
    reduced = _project(order, columns)
    lifted = [q + (w[p],) for q, p in zip(reduced, order)]
    if affine_rank(lifted) == dim:
        log_info("weights are affine on the configuration; trivial subdivision")
        return Subdivision(ambient, (ambient,), w)

    cells: Dict[FrozenSet[Point], Polytope] = {}
    for b, a in _cdd.hull_inequalities(lifted):
        if a[-1] <= 0:
            continue
        incident = [k for k, q in enumerate(lifted) if _satisfied_with_equality((b, a), q)]
        if affine_rank([reduced[k] for k in incident]) != dim:
            continue
        cell = hull_faces([order[k] for k in incident], ambient.labels)
        cells.setdefault(cell.vertex_set, cell)
    ordered = tuple(sorted(cells.values(), key=lambda c: sorted(c.vertices)))
    return Subdivision(ambient, ordered, w)


def fvector(sub: Subdivision) -> Tuple[int, ...]:
    """Число граней комплекса по размерностям 0..dim, включая внутренние."""
    counts = [0] * (sub.ambient.dim + 1)
    for d in sub.complex_faces.values():
        counts[d] += 1
    return tuple(counts)


def _cell_inequalities(cell: Polytope, columns: Sequence[int]) -> List[_cdd.Inequality]:
    reduced = _project(cell.vertices, columns)
    return _cdd.hull_inequalities(reduced)


def is_polyhedral_complex(sub: Subdivision) -> bool:
    """Клетки пересекаются по общим граням (точная проверка пересечения H-представлений)."""
    cells = sub.cells
    if len(cells) == 1:
        return True
    dim, columns = _reduction(sorted(sub.ambient.vertices))
    ineqs = [_cell_inequalities(c, columns) for c in cells]
    for (i, A), (j, B) in itertools.combinations(enumerate(cells), 2):
        common = A.vertex_set & B.vertex_set
        if common and not (A.is_face(common) and B.is_face(common)):
            return False
        meet = {q for q in _cdd.polytope_vertices(ineqs[i] + ineqs[j])}
        expected = set(_project(sorted(common), columns))
        if meet != expected:
            return False
    return True


def minkowski_sum(seq: Sequence[Matroid]) -> Polytope:
    """P(M₁) + ... + P(M_k)."""
    items = list(seq)
    if not items:
        raise PolytopeError("Empty matroid sequence")
    n = items[0].n
    sums = {tuple([0] * n)}
    for M in items:
        nxt = set()
        for s in sums:
            for B in M.bases:
                nxt.add(tuple(x + (1 if a + 1 in B else 0) for a, x in enumerate(s)))
        sums = nxt
    return hull_faces(sums)


def minkowski_vertices(seq: Sequence[Matroid]) -> FrozenSet[Point]:
    """Вершины P(M₁) + ... + P(M_k)."""
    return minkowski_sum(seq).vertex_set


def rank_weight(n: int, ranks: Sequence[int]) -> Point:
    """λ_t = #{j : r_j ≥ t}, t = 1..n."""
    return as_point(sum(1 for r in ranks if r >= t) for t in range(1, n + 1))


def is_flag_matroid_polytope(seq: Sequence[Matroid]) -> bool:
    """Каждая вершина суммы Минковского -- перестановка λ, рёбра параллельны корням."""
    items = list(seq)
    if not all(is_matroid_bases(M.n, M.bases) for M in items):
        return False
    P = minkowski_sum(items)
    target = sorted(rank_weight(items[0].n, [M.rank for M in items]))
    if any(sorted(p) != target for p in P.vertices):
        return False
    return edges_parallel_to_roots(P)


def edges_parallel_to_roots(P: Polytope) -> bool:
    """Каждое ребро параллельно некоторому e_i - e_j."""
    for a, b in P.edges():
        diff = [x - y for x, y in zip(a, b)]
        nonzero = [d for d in diff if d != 0]
        if len(nonzero) != 2 or nonzero[0] != -nonzero[1]:
            return False
    return True


def flag_vertex(flag: Flag, n: int) -> Point:
    """e_{B₁} + ... + e_{B_k}."""
    counts = [0] * n
    for B in flag:
        for a in B:
            counts[a - 1] += 1
    return as_point(counts)


def _constituents(seq: "FlagMatroid | Sequence[Matroid]") -> Tuple[Matroid, ...]:
    if isinstance(seq, FlagMatroid):
        return seq.constituents
    return tuple(seq)


def flag_polytope(seq: "FlagMatroid | Sequence[Matroid]") -> Polytope:
    """Conv{e_F : F -- флаг}, каждая вершина помечена своим флагом."""
    items = _constituents(seq)
    if not items:
        raise PolytopeError("Empty matroid sequence")
    try:
        ok = is_flag_matroid(items)
    except MatroidError as exc:
        raise PolytopeError(str(exc)) from exc
    if not ok:
        raise PolytopeError("Not a flag matroid")
    n = items[0].n
    labels: Dict[Point, Flag] = {}
    for F in flags_of(items):
        p = flag_vertex(F, n)
        if p in labels:
            raise PolytopeError(f"Vertex {_fmt_point(p)} has two flag decompositions")
        labels[p] = F
    P = hull_faces(labels, labels)
    if len(P.vertices) != len(labels):
        raise PolytopeError("Some flag vectors are not vertices of the flag polytope")
    return P


def hypersimplex(d: int, n: int) -> Polytope:
    if not 0 < d < n:
        raise PolytopeError(f"Δ_{{{d},{n}}} needs 0 < d < n")
    return flag_polytope([uniform(d, n)])


def permutohedron(n: int) -> Polytope:
    """Флаговый многогранник полного однородного флага (ранги 1..n)."""
    if n < 1:
        raise PolytopeError("Perm_n needs n >= 1")
    return flag_polytope([uniform(k, n) for k in range(1, n + 1)])


def subdivision_from_mu(mu) -> Subdivision:
    """Подразбиение флагового многогранника носителя весами μ₁(B₁) + ... + μ_k(B_k)."""
    from .tropical import as_flag, flag_support, support_is_flag_matroid

    flag = as_flag(mu)
    if not support_is_flag_matroid(flag):
        raise PolytopeError("The support of μ is not a flag matroid")
    P = flag_polytope(flag_support(flag))
    weights = []
    for p in P.vertices:
        F = P.label_of(p)
        total = Fraction(0)
        for v, B in zip(flag.constituents, F):
            total += v[B]
        weights.append(total)
    return regular_subdivision(P.vertices, weights, P.labels)


def cell_to_flag_matroid(cell: Polytope) -> FlagMatroid:
    """Составляющие M_i с базами {B_i : (B₁ ⊂ ... ⊂ B_k) -- метка вершины клетки}."""
    flags = [cell.label_of(p) for p in cell.vertices]
    try:
        return flag_matroid_from_flags(len(cell.vertices[0]), flags)
    except MatroidError as exc:
        raise PolytopeError(f"Inconsistent flag labels: {exc}") from exc


@dataclass(frozen=True)
class CellVerdict:
    flag_matroid: bool
    flag_positroid: bool
    detail: str = ""


def _check_consecutive(ranks: Sequence[int]) -> None:
    ranks = list(ranks)
    if any(b != a + 1 for a, b in zip(ranks, ranks[1:])):
        raise PolytopeError(f"Ranks must be consecutive, got {ranks}")


VERDICT_CACHE_SIZE = 4096


@lru_cache(maxsize=VERDICT_CACHE_SIZE)
def certify_flags(flags: FrozenSet[Flag], n: int) -> CellVerdict:
    """Флаговый позитроид ли это: ожерелья и 0/∞-вложение должны совпасть."""
    from .necklace import is_flag_positroid_consecutive
    from .tropical import pom_check

    F = flag_matroid_from_flags(n, flags)
    items = F.constituents
    if not is_flag_matroid(items):
        verdict = CellVerdict(False, False, "constituents do not form a flag matroid")
    elif flags_of(items) != flags:
        verdict = CellVerdict(False, False, "vertex labels are not the flags of the recovered flag matroid")
    else:
        by_necklace = is_flag_positroid_consecutive(items)
        by_embedding = pom_check(items)
        if by_necklace != by_embedding:
            raise CertifierDisagreement(
                f"necklace test says {by_necklace}, 0/∞ embedding says {by_embedding} for "
                + "; ".join(str(M) for M in items)
            )
        verdict = CellVerdict(True, by_necklace, "" if by_necklace else "not a flag positroid")
    return verdict


def _face_flags(sub: Subdivision, points: Iterable[Point]) -> FrozenSet[Flag]:
    return frozenset(sub.ambient.label_of(p) for p in points)


def failing_cells(sub: Subdivision, ranks: Sequence[int]) -> List[Polytope]:
    _check_consecutive(ranks)
    n = sub.ambient.ambient_dim
    return [c for c in sub.cells if not certify_flags(_face_flags(sub, c.vertices), n).flag_positroid]


def all_cells_flag_positroid(sub: Subdivision, ranks: Sequence[int]) -> bool:
    return not failing_cells(sub, ranks)


def failing_faces(sub: Subdivision, ranks: Sequence[int], max_dim: int = 2) -> List[FrozenSet[Point]]:
    _check_consecutive(ranks)
    n = sub.ambient.ambient_dim
    out = []
    for pts, d in sorted(sub.complex_faces.items(), key=lambda kv: (kv[1], sorted(kv[0]))):
        if d > max_dim:
            continue
        if not certify_flags(_face_flags(sub, pts), n).flag_positroid:
            out.append(pts)
    return out


def twod_faces_flag_positroid(sub: Subdivision, ranks: Sequence[int]) -> bool:
    return not failing_faces(sub, ranks, 2)


def chain_face_vertices(P: Polytope, chain: Sequence[Subset]) -> FrozenSet[Point]:
    """Вершины грани, минимизирующей -Σ_{S ∈ chain} e_S·x (т.е. максимизирующей вес цепочки)."""
    if not P.vertices:
        return frozenset()
    n = P.ambient_dim
    direction = [0] * n
    for S in chain:
        for a in S:
            direction[a - 1] += 1
    scores = {p: sum(c * x for c, x in zip(direction, p)) for p in P.vertices}
    best = max(scores.values())
    return frozenset(p for p, s in scores.items() if s == best)


__all__ = [
    "PolytopeError",
    "CertifierDisagreement",
    "Point",
    "as_point",
    "affine_rank",
    "Polytope",
    "hull_faces",
    "Subdivision",
    "regular_subdivision",
    "fvector",
    "is_polyhedral_complex",
    "minkowski_sum",
    "minkowski_vertices",
    "rank_weight",
    "is_flag_matroid_polytope",
    "edges_parallel_to_roots",
    "flag_vertex",
    "flag_polytope",
    "hypersimplex",
    "permutohedron",
    "subdivision_from_mu",
    "cell_to_flag_matroid",
    "CellVerdict",
    "VERDICT_CACHE_SIZE",
    "certify_flags",
    "failing_cells",
    "all_cells_flag_positroid",
    "failing_faces",
    "twod_faces_flag_positroid",
    "chain_face_vertices",
]
