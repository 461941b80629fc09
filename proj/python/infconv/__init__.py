"""Infinite convolutions of admissible pairs, their spectra and spectrality checks."""

from ._core import (
    Config,
    InfconvError,
    Report,
    load_config,
    parse_config,
    check_admissible,
    find_spectra,
    canonical_spectrum,
    mu_hat,
    atoms,
    sample,
    gram_identity,
    certify,
    hypotheses,
    zero_scan,
    find_isolating_digit,
)

__all__ = [
    "Config",
    "InfconvError",
    "Report",
    "load_config",
    "parse_config",
    "check_admissible",
    "find_spectra",
    "canonical_spectrum",
    "mu_hat",
    "atoms",
    "sample",
    "gram_identity",
    "certify",
    "hypotheses",
    "zero_scan",
    "find_isolating_digit",
]
