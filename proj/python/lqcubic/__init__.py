"""Exact counting, exponential sums and local solvability for L1Q1 + L2Q2 + a7 x7^3."""

from ._core import (
    CubicForm,
    DomainError,
    ResourceError,
    chi,
    classify,
    congruence_solvable,
    count_representations,
    count_zeros,
    gammas,
    local_report,
    power_congruence_count,
    predict,
    s3,
    s_block,
    s_q_N,
    set_thread_count,
    singular_integral,
    singular_series,
    slab_volume,
    special_surface_count,
    union_space_count,
    value_histogram,
    verify,
)

__all__ = [
    "CubicForm",
    "DomainError",
    "ResourceError",
    "chi",
    "classify",
    "congruence_solvable",
    "count_representations",
    "count_zeros",
    "gammas",
    "local_report",
    "power_congruence_count",
    "predict",
    "s3",
    "s_block",
    "s_q_N",
    "set_thread_count",
    "singular_integral",
    "singular_series",
    "slab_volume",
    "special_surface_count",
    "union_space_count",
    "value_histogram",
    "verify",
]
