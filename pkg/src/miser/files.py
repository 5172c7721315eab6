"""JSON instance and solution files, plus seeded instance generators.

Instance file::

    {"kind": "rect", "items": [{"id": 0, "x1": 0, "x2": 2, "y1": 0, "y2": 2, "weight": 5}],
     "metadata": {...}}

Segments use ``{"id", "orientation": "horizontal"|"vertical", "c", "lo", "hi", "weight"}``
where ``c`` is the fixed coordinate and ``[lo, hi]`` the span.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .geom import Rect, Seg, Solution, verify_independent

KINDS = ("rect", "seg")
RECT_FIELDS = ("x1", "x2", "y1", "y2")
SEG_FIELDS = ("c", "lo", "hi")


class InstanceError(ValueError):
    """Invalid instance or solution file; the message names the offending spot."""


@dataclass
class InstanceFile:
    kind: str
    items: list
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "items": [item_record(it) for it in self.items],
            "metadata": self.metadata,
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()

    def by_id(self) -> dict:
        return {it.id: it for it in self.items}


def item_record(it) -> dict:
    if isinstance(it, Rect):
        return {"id": it.id, "x1": it.x1, "x2": it.x2, "y1": it.y1, "y2": it.y2, "weight": it.weight}
    return {
        "id": it.id,
        "orientation": "horizontal" if it.horizontal else "vertical",
        "c": it.c,
        "lo": it.lo,
        "hi": it.hi,
        "weight": it.weight,
    }


def _int_field(rec, name, where):
    v = rec.get(name)
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceError(f"{where}: field {name!r} must be an integer, got {v!r}")
    return v


def _item(kind: str, rec, where: str):
    if not isinstance(rec, dict):
        raise InstanceError(f"{where}: expected an object")
    if "id" not in rec or not isinstance(rec["id"], (int, str)) or isinstance(rec["id"], bool):
        raise InstanceError(f"{where}: field 'id' must be an integer or string")
    w = rec.get("weight")
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise InstanceError(f"{where}: field 'weight' must be a number")
    if not w > 0:
        raise InstanceError(f"{where}: field 'weight' must be positive, got {w}")
    if kind == "rect":
        x1, x2, y1, y2 = (_int_field(rec, f, where) for f in RECT_FIELDS)
        if x1 > x2:
            raise InstanceError(f"{where}: field 'x1' exceeds 'x2'")
        if y1 > y2:
            raise InstanceError(f"{where}: field 'y1' exceeds 'y2'")
        return Rect(rec["id"], x1, x2, y1, y2, w)
    c, lo, hi = (_int_field(rec, f, where) for f in SEG_FIELDS)
    orient = rec.get("orientation")
    if orient not in ("horizontal", "vertical"):
        raise InstanceError(f"{where}: field 'orientation' must be 'horizontal' or 'vertical'")
    if lo > hi:
        raise InstanceError(f"{where}: field 'lo' exceeds 'hi'")
    return Seg(rec["id"], orient == "horizontal", c, lo, hi, w)


def instance_from_dict(data) -> InstanceFile:
    if not isinstance(data, dict):
        raise InstanceError("top level: expected an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise InstanceError(f"top level: unknown kind {kind!r}")
    recs = data.get("items")
    if not isinstance(recs, list):
        raise InstanceError("top level: field 'items' must be a list")
    items, seen = [], set()
    for i, rec in enumerate(recs):
        it = _item(kind, rec, f"items[{i}]")
        if it.id in seen:
            raise InstanceError(f"items[{i}]: duplicate id {it.id!r}")
        seen.add(it.id)
        items.append(it)
    if len({type(it.id) for it in items}) > 1:
        raise InstanceError("items: ids must be all integers or all strings")
    return InstanceFile(kind, items, dict(data.get("metadata") or {}))


def _load_json(path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from None


def parse_instance(path) -> InstanceFile:
    data = _load_json(path)
    try:
        return instance_from_dict(data)
    except InstanceError as e:
        raise InstanceError(f"{path}: {e}") from None


def write_instance(inst: InstanceFile, path) -> None:
    Path(path).write_text(inst.serialize(), encoding="utf-8")


# ---------------------------------------------------------------- generators


def parse_weight_spec(spec: str):
    """``uniform=LO..HI`` or ``classes=a,b,c``; returns a sampler ``rng -> weight``."""
    key, _, val = spec.partition("=")
    if key == "uniform":
        lo, _, hi = val.partition("..")
        lo, hi = int(lo), int(hi)
        if not 0 < lo <= hi:
            raise ValueError(f"bad weight range {spec!r}")
        return lambda rng: rng.randint(lo, hi)
    if key == "classes":
        values = [int(v) if float(v).is_integer() else float(v) for v in val.split(",")]
        if not values or min(values) <= 0:
            raise ValueError(f"bad weight classes {spec!r}")
        return lambda rng: rng.choice(values)
    raise ValueError(f"unknown weight spec {spec!r}")


def gen_items(kind: str, n: int, coord_max: int, weight_spec: str, rng: random.Random) -> list:
    weight = parse_weight_spec(weight_spec)
    items = []
    for i in range(n):
        if kind == "rect":
            x1, x2 = sorted((rng.randint(0, coord_max), rng.randint(0, coord_max)))
            y1, y2 = sorted((rng.randint(0, coord_max), rng.randint(0, coord_max)))
            items.append(Rect(i, x1, x2, y1, y2, weight(rng)))
        elif kind == "seg":
            horizontal = rng.random() < 0.5
            length = rng.randint(0, coord_max // 2)
            lo = rng.randint(0, coord_max - length)
            c = rng.randint(0, coord_max)
            items.append(Seg(i, horizontal, c, lo, lo + length, weight(rng)))
        else:
            raise ValueError(f"unknown kind {kind!r}")
    return items


def gen_instance(kind: str, n: int, coord_max: int, weight_spec: str, seed: int) -> InstanceFile:
    rng = random.Random(seed)
    items = gen_items(kind, n, coord_max, weight_spec, rng)
    meta = {"generator": "uniform", "n": n, "coord_max": coord_max, "weights": weight_spec, "seed": seed}
    return InstanceFile(kind, items, meta)


# ---------------------------------------------------------------- solutions


@dataclass
class SolutionFile:
    instance_path: str
    instance_digest: str
    algorithm: str
    k: int
    eps: float | None
    ids: list
    weight: float
    branch: str = ""
    wall_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "instance": {"path": self.instance_path, "sha256": self.instance_digest},
            "algorithm": self.algorithm,
            "k": self.k,
            "eps": self.eps,
            "ids": self.ids,
            "weight": self.weight,
            "branch": self.branch,
            "wall_ms": self.wall_ms,
        }

    @classmethod
    def from_solution(cls, sol: Solution, inst: InstanceFile, path, algorithm, k, eps, wall_ms):
        return cls(str(path), inst.digest(), algorithm, k, eps, sorted(sol.ids), sol.weight, sol.branch, wall_ms)


def write_solution(sf: SolutionFile, path) -> None:
    Path(path).write_text(json.dumps(sf.to_dict(), sort_keys=True, indent=1) + "\n", encoding="utf-8")


def parse_solution(path) -> SolutionFile:
    d = _load_json(path)
    try:
        ref = d["instance"]
        return SolutionFile(
            ref["path"], ref["sha256"], d["algorithm"], d["k"], d.get("eps"),
            list(d["ids"]), float(d["weight"]), d.get("branch", ""), float(d.get("wall_ms", 0.0)),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InstanceError(f"{path}: malformed solution file ({e})") from None


def verify_solution(inst: InstanceFile, sf: SolutionFile, rel_tol: float = 1e-9) -> list:
    """Problems found, empty when the solution checks out."""
    problems = []
    if sf.instance_digest != inst.digest():
        problems.append("instance digest does not match")
    table = inst.by_id()
    missing = [i for i in sf.ids if i not in table]
    if missing:
        problems.append(f"unknown ids {missing}")
        return problems
    if len(set(sf.ids)) != len(sf.ids):
        problems.append("repeated ids")
    items = [table[i] for i in sf.ids]
    if not verify_independent(items):
        problems.append("items intersect")
    w = Solution(tuple(items)).weight
    if abs(w - sf.weight) > rel_tol * max(1.0, abs(w)):
        problems.append(f"weight {sf.weight} does not match recomputed {w}")
    return problems
