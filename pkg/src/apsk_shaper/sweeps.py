"""Rate-sweep rows and CSV rendering for the command-line front end."""

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence

from .capacity import (
    DEFAULT_ORDER,
    SnrSpec,
    gap_metrics,
    gaussian_capacity,
    mi_monte_carlo,
    mi_quadrature,
)
from .constellations import Constellation, average_power, peak_power
from .errors import DomainError

CSV_COLUMNS = (
    "family",
    "n",
    "M",
    "snr_db",
    "mi_bits",
    "capacity_bits",
    "gap_bits",
    "gap_db",
    "avg_power",
    "papr",
    "method",
)


@dataclass(frozen=True)
class SweepRow:
    """One output record: a constellation evaluated at one SNR."""

    family: str
    n: int
    m: int
    snr_db: float
    mi_bits: float
    capacity_bits: float
    gap_bits: float
    gap_db: float
    avg_power: float
    papr: float
    method: str

    def __post_init__(self):
        if self.m != self.n * self.n:
            raise DomainError(f"M must equal n^2, got M={self.m} for n={self.n}")
        if abs(self.gap_bits - (self.capacity_bits - self.mi_bits)) > 1e-9:
            raise DomainError("gap_bits must equal capacity_bits - mi_bits")


def evaluate_row(
    c: Constellation,
    snr_db: float,
    method: str = "quadrature",
    order: int = DEFAULT_ORDER,
    samples: int = 10**6,
    seed: int = 0,
) -> SweepRow:
    """Evaluate one constellation at one SNR and package the result."""
    snr = SnrSpec.from_db(snr_db)
    if method == "quadrature":
        est = mi_quadrature(c, snr, order)
    elif method == "monte_carlo":
        est = mi_monte_carlo(c, snr, samples, seed)
    else:
        raise DomainError(f"method must be 'quadrature' or 'monte_carlo', got {method!r}")
    gap_bits, gap_db = gap_metrics(est.value, snr)
    avg = average_power(c)
    ratio = peak_power(c) / avg if avg > 0 else math.nan
    return SweepRow(
        family=c.family,
        n=c.n,
        m=c.M,
        snr_db=float(snr_db),
        mi_bits=est.value,
        capacity_bits=gaussian_capacity(snr),
        gap_bits=gap_bits,
        gap_db=gap_db,
        avg_power=avg,
        papr=ratio,
        method=est.method,
    )


def sweep_rows(
    constellations: Sequence[Constellation],
    snr_dbs: Sequence[float],
    method: str = "quadrature",
    order: int = DEFAULT_ORDER,
    samples: int = 10**6,
    seed: int = 0,
) -> List[SweepRow]:
    """Evaluate a grid and return rows sorted by (family, snr_db, n)."""
    rows = [
        evaluate_row(c, snr_db, method, order, samples, seed)
        for c in constellations
        for snr_db in snr_dbs
    ]
    rows.sort(key=lambda r: (r.family, r.snr_db, r.n))
    return rows


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(value, ".9g")


def render_csv(rows: Iterable[SweepRow]) -> str:
    """CSV text with the fixed column list; numbers at 9 significant digits."""
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    r.family,
                    r.n,
                    r.m,
                    r.snr_db,
                    r.mi_bits,
                    r.capacity_bits,
                    r.gap_bits,
                    r.gap_db,
                    r.avg_power,
                    r.papr,
                    r.method,
                )
            )
        )
    return "\n".join(lines) + "\n"
