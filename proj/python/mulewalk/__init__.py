"""Expected walking distance of a piecer along a spinning mule."""

from ._core import (
    bernoulli_distribution,
    bisim_check,
    day_estimate,
    expected_distance,
    extremes_distribution,
    figure7,
    fixed_n_distribution,
    simulate,
    table,
    table1,
    value_iteration,
)

__all__ = [
    "bernoulli_distribution",
    "bisim_check",
    "day_estimate",
    "expected_distance",
    "extremes_distribution",
    "figure7",
    "fixed_n_distribution",
    "simulate",
    "table",
    "table1",
    "value_iteration",
]
