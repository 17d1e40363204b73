"""Shaped APSK constellation construction and AWGN capacity analysis."""

from .capacity import (
    DEFAULT_ORDER,
    MiEstimate,
    NoiseModel,
    SnrSpec,
    gap_metrics,
    gaussian_capacity,
    mi_monte_carlo,
    mi_quadrature,
)
from .constellations import (
    BOX_MULLER,
    DVB_VARIANT,
    FAMILIES,
    SQUARE_QAM,
    Constellation,
    RingSpec,
    average_power,
    box_muller_apsk,
    canonical_family,
    dvb_variant_apsk,
    make_constellation,
    min_distance,
    papr,
    peak_power,
    square_qam,
    validate_constellation,
)
from .convergence import (
    CfConvergenceReport,
    PowerAuditReport,
    cf_convergence_scan,
    default_t_grid,
    empirical_cf,
    gaussian_cf,
    lemma_gap,
    lemma_scan,
    point_set_cf,
    power_audit,
)
from .errors import ContractError, DomainError, EstimatorError
from .storage import (
    dumps_constellation,
    loads_constellation,
    read_constellation,
    write_constellation,
)
from .sweeps import CSV_COLUMNS, SweepRow, evaluate_row, render_csv, sweep_rows

__version__ = "0.1.0"

__all__ = [
    "BOX_MULLER",
    "DVB_VARIANT",
    "SQUARE_QAM",
    "FAMILIES",
    "DEFAULT_ORDER",
    "CSV_COLUMNS",
    "Constellation",
    "RingSpec",
    "SnrSpec",
    "NoiseModel",
    "MiEstimate",
    "SweepRow",
    "CfConvergenceReport",
    "PowerAuditReport",
    "ContractError",
    "DomainError",
    "EstimatorError",
    "average_power",
    "box_muller_apsk",
    "canonical_family",
    "cf_convergence_scan",
    "default_t_grid",
    "dumps_constellation",
    "dvb_variant_apsk",
    "empirical_cf",
    "evaluate_row",
    "gap_metrics",
    "gaussian_capacity",
    "gaussian_cf",
    "lemma_gap",
    "lemma_scan",
    "loads_constellation",
    "make_constellation",
    "mi_monte_carlo",
    "mi_quadrature",
    "min_distance",
    "papr",
    "peak_power",
    "point_set_cf",
    "power_audit",
    "read_constellation",
    "render_csv",
    "square_qam",
    "sweep_rows",
    "validate_constellation",
    "write_constellation",
]
