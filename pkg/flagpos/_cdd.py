"""Тонкая обёртка над pycddlib в точном (дробном / GMP) режиме."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Inequality = Tuple[Fraction, Tuple[Fraction, ...]]


def _module():
    try:
        import cdd  # type: ignore
    except Exception as exc:
        raise RuntimeError("pycddlib is required for exact convex hulls. Install 'pycddlib'") from exc
    return cdd


def _rows_and_lin(cdd, rows: List[List[Fraction]], generator: bool, want_generators: bool):
    rep_type = cdd.RepType.GENERATOR if generator else cdd.RepType.INEQUALITY
    if hasattr(cdd, "gmp"):
        # pycddlib >= 3
        mat = cdd.gmp.matrix_from_array(rows, rep_type=rep_type)
        poly = cdd.gmp.polyhedron_from_matrix(mat)
        out = cdd.gmp.copy_generators(poly) if want_generators else cdd.gmp.copy_inequalities(poly)
        return [list(r) for r in out.array], set(out.lin_set)
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = rep_type
    poly = cdd.Polyhedron(mat)
    out = poly.get_generators() if want_generators else poly.get_inequalities()
    return [list(out[i]) for i in range(out.row_size)], set(out.lin_set)


def hull_inequalities(points: Sequence[Sequence[Fraction]]) -> List[Inequality]:
    """Неравенства b + a·x >= 0 выпуклой оболочки (строки линейности отброшены)."""
    cdd = _module()
    rows = [[Fraction(1)] + [Fraction(x) for x in p] for p in points]
    data, lin = _rows_and_lin(cdd, rows, generator=True, want_generators=False)
    out: List[Inequality] = []
    for idx, row in enumerate(data):
        if idx in lin:
            continue
        vals = [Fraction(x) for x in row]
        out.append((vals[0], tuple(vals[1:])))
    return out


def polytope_vertices(inequalities: Sequence[Inequality]) -> List[Tuple[Fraction, ...]]:
    """Вершины ограниченного многогранника {b + a·x >= 0}; пустой список если он пуст."""
    if not inequalities:
        return []
    cdd = _module()
    rows = [[Fraction(b)] + [Fraction(x) for x in a] for b, a in inequalities]
    data, _ = _rows_and_lin(cdd, rows, generator=False, want_generators=True)
    out = []
    for row in data:
        vals = [Fraction(x) for x in row]
        if vals[0] == 0:
            raise RuntimeError("Unbounded intersection of polytopes")
        out.append(tuple(v / vals[0] for v in vals[1:]))
    return out
