"""Fractional g-Laplacian: Young-function checks, operator profiles, Dirichlet solves."""

from ._core import (
    GflapError,
    YoungFunction,
    check_conjugate_sweep,
    check_inequality_suite,
    fit_holder_exponent,
    lieberman_bound,
    num_threads,
    profile_I1,
    profile_I1_numeric,
    profile_apply,
    set_num_threads,
    solve,
)

__all__ = [
    "GflapError",
    "YoungFunction",
    "check_conjugate_sweep",
    "check_inequality_suite",
    "fit_holder_exponent",
    "lieberman_bound",
    "num_threads",
    "profile_I1",
    "profile_I1_numeric",
    "profile_apply",
    "set_num_threads",
    "solve",
]
