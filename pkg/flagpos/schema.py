#!/usr/bin/env python3
"""Кодек JSON (и YAML) для матроидов, ожерелий, тропических векторов и интервалов."""

from __future__ import annotations

import json
import pathlib
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, TextIO

from .ground import GroundError, Permutation, Subset, subsets_of_size
from .matroid import FlagMatroid, Matroid, MatroidError, matroid_summary
from .necklace import GrassmannNecklace, NecklaceError, necklace_summary
from .tropical import FlagTropVector, TropicalError, TropPluckerVector, format_value, to_trop


class SchemaError(Exception):
    """Входные данные не соответствуют схеме; path -- JSON pointer."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


def _ptr(path: str, key: object) -> str:
    token = str(key).replace("~", "~0").replace("/", "~1")
    return f"{path}/{token}"


def read_json(path: pathlib.Path) -> object:
    return json.loads(path.read_text(encoding="utf-8"))


def safe_write_json(path: pathlib.Path, data: object) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def load_document(in_file: Optional[str], stdin: Optional[TextIO] = None) -> object:
    """Прочитать вход из файла (JSON или YAML по расширению) или из stdin."""
    if in_file:
        path = pathlib.Path(in_file)
        if not path.exists():
            raise SchemaError("", f"Input file not found: {path}")
        text = path.read_text(encoding="utf-8")
        yaml_input = path.suffix.lower() in {".yml", ".yaml"}
    else:
        text = (stdin or sys.stdin).read()
        yaml_input = False
    if yaml_input:
        try:
            import yaml  # type: ignore
        except Exception as exc:
            raise RuntimeError("PyYAML is required to read YAML inputs. Install 'pyyaml'") from exc
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise SchemaError("", f"Invalid YAML: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"Invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc


def _object(value: object, path: str) -> Dict[str, object]:
    if not isinstance(value, dict):
        raise SchemaError(path, "expected an object")
    return value


def _int(value: object, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(path, f"expected an integer >= {minimum}")
    return value


def _list(value: object, path: str) -> List[object]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array")
    return value


def _field(obj: Dict[str, object], key: str, path: str) -> object:
    if key not in obj:
        raise SchemaError(_ptr(path, key), "required field is missing")
    return obj[key]


def decode_subset(n: int, value: object, path: str) -> Subset:
    items = _list(value, path)
    elements = [_int(x, _ptr(path, k)) for k, x in enumerate(items)]
    if len(set(elements)) != len(elements):
        raise SchemaError(path, "repeated element")
    for k, a in enumerate(elements):
        if not 1 <= a <= n:
            raise SchemaError(_ptr(path, k), f"element {a} out of range 1..{n}")
    return Subset.of(n, elements)


def encode_subset(S: Subset) -> List[int]:
    return list(S.elements())


def decode_matroid(value: object, path: str = "") -> Matroid:
    obj = _object(value, path)
    n = _int(_field(obj, "n", path), _ptr(path, "n"), 0)
    rank = _int(_field(obj, "rank", path), _ptr(path, "rank"), 0)
    raw = _list(_field(obj, "bases", path), _ptr(path, "bases"))
    if not raw:
        raise SchemaError(_ptr(path, "bases"), "a matroid needs at least one basis")
    bases = []
    for k, item in enumerate(raw):
        B = decode_subset(n, item, _ptr(_ptr(path, "bases"), k))
        if len(B) != rank:
            raise SchemaError(_ptr(_ptr(path, "bases"), k), f"basis has {len(B)} elements, rank is {rank}")
        bases.append(B)
    ground = None
    if "ground" in obj:
        ground = decode_subset(n, obj["ground"], _ptr(path, "ground"))
    try:
        return Matroid(n, rank, frozenset(bases), ground)
    except MatroidError as exc:
        raise SchemaError(path, str(exc)) from exc


def encode_matroid(M: Matroid) -> Dict[str, object]:
    out = matroid_summary(M)
    if M.ground != Subset.full(M.n):
        out["ground"] = encode_subset(M.ground)
    return out


def decode_matroid_sequence(value: object, path: str = "") -> List[Matroid]:
    if isinstance(value, dict) and "constituents" in value:
        path = _ptr(path, "constituents")
        value = value["constituents"]
    items = _list(value, path)
    if not items:
        raise SchemaError(path, "expected at least one matroid")
    out = [decode_matroid(item, _ptr(path, k)) for k, item in enumerate(items)]
    if len({M.n for M in out}) != 1:
        raise SchemaError(path, "matroids live on different ground sets")
    return out


def decode_flag_matroid(value: object, path: str = "") -> FlagMatroid:
    seq = decode_matroid_sequence(value, path)
    try:
        return FlagMatroid(tuple(seq))
    except MatroidError as exc:
        raise SchemaError(path, str(exc)) from exc


def decode_necklace(value: object, path: str = "") -> GrassmannNecklace:
    obj = _object(value, path)
    n = _int(_field(obj, "n", path), _ptr(path, "n"), 1)
    d = _int(_field(obj, "d", path), _ptr(path, "d"), 0)
    raw = _list(_field(obj, "sets", path), _ptr(path, "sets"))
    if len(raw) != n:
        raise SchemaError(_ptr(path, "sets"), f"expected {n} sets, got {len(raw)}")
    sets = []
    for k, item in enumerate(raw):
        S = decode_subset(n, item, _ptr(_ptr(path, "sets"), k))
        if len(S) != d:
            raise SchemaError(_ptr(_ptr(path, "sets"), k), f"set has {len(S)} elements, d is {d}")
        sets.append(S)
    try:
        return GrassmannNecklace(n, d, tuple(sets))
    except NecklaceError as exc:
        raise SchemaError(path, str(exc)) from exc


def encode_necklace(I: GrassmannNecklace) -> Dict[str, object]:
    return necklace_summary(I)


def _decode_key(n: int, key: str, path: str) -> Subset:
    try:
        return Subset.parse(n, key)
    except GroundError as exc:
        raise SchemaError(path, str(exc)) from exc


def decode_vector(value: object, path: str = "") -> TropPluckerVector:
    """{"n", "r", "coords": {"1,3": "p/q" | int | "inf"}}; отсутствующие координаты равны ∞."""
    obj = _object(value, path)
    n = _int(_field(obj, "n", path), _ptr(path, "n"), 1)
    r = _int(_field(obj, "r", path), _ptr(path, "r"), 0)
    if r > n:
        raise SchemaError(_ptr(path, "r"), f"rank {r} exceeds n = {n}")
    raw = _field(obj, "coords", path)
    coords: Dict[Subset, object] = {}
    cpath = _ptr(path, "coords")
    if isinstance(raw, list):
        keys = subsets_of_size(n, r)
        if len(raw) != len(keys):
            raise SchemaError(cpath, f"expected {len(keys)} values in lexicographic order, got {len(raw)}")
        items = list(zip((S.key() for S in keys), raw))
    else:
        items = list(_object(raw, cpath).items())
    for key, val in items:
        kpath = _ptr(cpath, key)
        S = _decode_key(n, str(key), kpath)
        if len(S) != r:
            raise SchemaError(kpath, f"coordinate is not an {r}-subset")
        if isinstance(val, float) and val != float("inf"):
            raise SchemaError(kpath, "inexact value; use an integer, a 'p/q' string or 'inf'")
        try:
            coords[S] = to_trop(val)
        except TropicalError as exc:
            raise SchemaError(kpath, str(exc)) from exc
    try:
        return TropPluckerVector(n, r, coords)
    except TropicalError as exc:
        raise SchemaError(cpath, str(exc)) from exc


def encode_vector(mu: TropPluckerVector) -> Dict[str, object]:
    return {
        "n": mu.n,
        "r": mu.r,
        "coords": {S.key(): format_value(mu[S]) for S in subsets_of_size(mu.n, mu.r)},
    }


def decode_flag_vector(value: object, path: str = "") -> FlagTropVector:
    if isinstance(value, dict) and "constituents" in value:
        path = _ptr(path, "constituents")
        value = value["constituents"]
    if isinstance(value, dict):
        return FlagTropVector((decode_vector(value, path),))
    items = _list(value, path)
    if not items:
        raise SchemaError(path, "expected at least one vector")
    vecs = tuple(decode_vector(item, _ptr(path, k)) for k, item in enumerate(items))
    try:
        return FlagTropVector(vecs)
    except TropicalError as exc:
        raise SchemaError(path, str(exc)) from exc


def encode_flag_vector(mu: FlagTropVector) -> List[Dict[str, object]]:
    return [encode_vector(v) for v in mu.constituents]


def decode_permutation(value: object, path: str) -> Permutation:
    if isinstance(value, str):
        raw: Sequence[object] = list(value.replace(",", ""))
        try:
            images = [int(x) for x in raw]  # type: ignore[arg-type]
        except ValueError as exc:
            raise SchemaError(path, f"cannot parse permutation {value!r}") from exc
    else:
        images = [_int(x, _ptr(path, k)) for k, x in enumerate(_list(value, path))]
    try:
        return Permutation(tuple(images))
    except GroundError as exc:
        raise SchemaError(path, str(exc)) from exc


def decode_interval(value: object, path: str = ""):
    from .bruhat import BruhatError, BruhatInterval

    obj = _object(value, path)
    u = decode_permutation(_field(obj, "u", path), _ptr(path, "u"))
    v = decode_permutation(_field(obj, "v", path), _ptr(path, "v"))
    try:
        return BruhatInterval(u, v)
    except BruhatError as exc:
        raise SchemaError(path, str(exc)) from exc


def encode_point(p: Sequence[Fraction]) -> List[object]:
    return [int(x) if x.denominator == 1 else str(x) for x in p]


def encode_fraction(x: Fraction) -> object:
    return int(x) if x.denominator == 1 else str(x)


__all__ = [
    "SchemaError",
    "read_json",
    "safe_write_json",
    "load_document",
    "decode_subset",
    "encode_subset",
    "decode_matroid",
    "encode_matroid",
    "decode_matroid_sequence",
    "decode_flag_matroid",
    "decode_necklace",
    "encode_necklace",
    "decode_vector",
    "encode_vector",
    "decode_flag_vector",
    "encode_flag_vector",
    "decode_permutation",
    "decode_interval",
    "encode_point",
    "encode_fraction",
]
