"""Stratified weighted random walk sampling of graphs."""

from ._swrw import (
    Graph,
    Partition,
    Sample,
    StuckError,
    PilotError,
    SwrwError,
    Visit,
    allocate,
    exact_stationary,
    gain,
    generate,
    hh_mean,
    hh_total,
    nrmse,
    run_experiment,
    sample,
    size_fractions,
    toy_a_analytic,
    volume_fractions,
    wis_two_category_variance,
)

__all__ = [
    "Graph",
    "Partition",
    "Sample",
    "StuckError",
    "PilotError",
    "SwrwError",
    "Visit",
    "allocate",
    "exact_stationary",
    "gain",
    "generate",
    "hh_mean",
    "hh_total",
    "nrmse",
    "run_experiment",
    "sample",
    "size_fractions",
    "toy_a_analytic",
    "volume_fractions",
    "wis_two_category_variance",
]
