"""Canonical constellation file format (JSON).

Schema: {"label": str, "family": str, "n": int, "power": number,
"points": [[x, y], ...]} with points in generation order. The writer emits
floats with 17 significant digits so every value round-trips exactly, and
its output is byte-stable. The reader validates the full set of structural
invariants and rejects files that violate any of them.
"""

import json
import math
from typing import Tuple

import numpy as np

from .constellations import (
    BOX_MULLER,
    DVB_VARIANT,
    Constellation,
    RingSpec,
    _expected_ring_shape,
    validate_constellation,
)
from .errors import DomainError

_KEYS = ("label", "family", "n", "power", "points")


def _f17(x: float) -> str:
    return format(float(x), ".17g")


def dumps_constellation(c: Constellation) -> str:
    """Render the canonical JSON text (deterministic bytes)."""
    rows = ",\n".join(f"    [{_f17(x)}, {_f17(y)}]" for x, y in c.points)
    return (
        "{\n"
        f'  "label": {json.dumps(c.label)},\n'
        f'  "family": {json.dumps(c.family)},\n'
        f'  "n": {c.n},\n'
        f'  "power": {_f17(c.power)},\n'
        '  "points": [\n'
        f"{rows}\n"
        "  ]\n"
        "}\n"
    )


def write_constellation(c: Constellation, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(dumps_constellation(c))


def _rebuild_rings(family: str, n: int, points: np.ndarray) -> Tuple[RingSpec, ...]:
    n_rings, ppr = _expected_ring_shape(family, n)
    rings = []
    for k in range(n_rings):
        block = points[k * ppr : (k + 1) * ppr]
        radius = float(np.mean(np.sqrt(np.sum(block**2, axis=1))))
        phase = float(math.atan2(block[0, 1], block[0, 0])) % (2.0 * math.pi)
        rings.append(RingSpec(k, radius, phase, ppr))
    return tuple(rings)


def loads_constellation(text: str) -> Constellation:
    """Parse and fully validate a constellation document."""
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise DomainError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DomainError("constellation document must be a JSON object")
    if set(doc) != set(_KEYS):
        missing = sorted(set(_KEYS) - set(doc))
        extra = sorted(set(doc) - set(_KEYS))
        raise DomainError(f"bad document keys (missing={missing}, unknown={extra})")
    label, family, n, power, raw_points = (doc[k] for k in _KEYS)
    if not isinstance(label, str):
        raise DomainError("label must be a string")
    if not isinstance(family, str):
        raise DomainError("family must be a string")
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"n must be an integer, got {n!r}")
    if not isinstance(power, (int, float)) or isinstance(power, bool):
        raise DomainError(f"power must be a number, got {power!r}")
    if not isinstance(raw_points, list) or not all(
        isinstance(p, list)
        and len(p) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
        for p in raw_points
    ):
        raise DomainError("points must be a list of [x, y] number pairs")
    points = np.asarray(raw_points, dtype=np.float64).reshape(len(raw_points), 2)
    rings = None
    if family in (BOX_MULLER, DVB_VARIANT):
        well_shaped = n >= 1 and points.shape[0] == n * n
        if family == DVB_VARIANT:
            well_shaped = well_shaped and n % 2 == 0
        if well_shaped and np.all(np.isfinite(points)):
            rings = _rebuild_rings(family, n, points)
    c = Constellation(label, family, n, float(power), points, rings)
    validate_constellation(c)
    return c


def read_constellation(path) -> Constellation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from None
    return loads_constellation(text)
