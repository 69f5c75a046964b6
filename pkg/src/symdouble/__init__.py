"""Exact computations for the symmetric doubling maps x -> 2x - d*alpha on [-1, 1]."""

__version__ = "0.1.0"

from .blocks import cascade, cascade_limit, enumerate_primitive, is_primitive, locate, matching_interval  # noqa: E402
from .dynamics import matching_index, s_alpha_step, signed_digit_sequence  # noqa: E402
from .measure import birkhoff_frequency, coverage, density_closed_form, mu_zero, pf_apply  # noqa: E402
