#!/usr/bin/env python3
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .utils import log_info


def canonical_json(data: object) -> str:
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def inputs_digest(data: object) -> str:
    """sha256 от канонического JSON входа."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    """Результат одной команды: что запускали, на чём, что получили и за сколько."""

    command: str
    inputs: str = ""
    results: Dict[str, object] = field(default_factory=dict)
    seed: Optional[int] = None
    timing: float = 0.0
    diffs: List[str] = field(default_factory=list)
    _started: float = field(default_factory=time.perf_counter, repr=False)

    @classmethod
    def start(cls, command: str, payload: object = None, seed: Optional[int] = None) -> "RunReport":
        return cls(command=command, inputs=inputs_digest(payload), seed=seed)

    @property
    def ok(self) -> bool:
        return not self.diffs

    def finish(self) -> "RunReport":
        self.timing = round(time.perf_counter() - self._started, 3)
        return self

    def as_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "timing": self.timing,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.diffs:
            out["diffs"] = list(self.diffs)
        return out


def emit_output(data: object, out_file: Optional[str], verbose: bool = False) -> None:
    """JSON в файл (--out) или в stdout."""
    payload = json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True)
    if out_file:
        with open(out_file, "w", encoding="utf-8") as f:
            f.write(payload + "\n")
        if verbose:
            log_info(f"result saved to {out_file}")
        return
    print(payload)
