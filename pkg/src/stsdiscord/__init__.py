"""Gaussian discord of two-mode squeezed thermal states under local Gaussian channels."""

from .channels import (
    Amplifier,
    ClassicalNoise,
    ThermalNoise,
    apply_channel,
    make_channel,
    trajectory,
    transform_charfn,
)
from .gaussian import (
    Direction,
    TwoModeCovariance,
    entropy_h,
    entropy_report,
    gaussian_discord,
    mutual_information,
    physicality_check,
    symplectic_data,
)
from .states import StsParams, characteristic_function, is_separable, sts_covariance

__version__ = "0.1.0"

__all__ = [
    "Amplifier",
    "ClassicalNoise",
    "Direction",
    "StsParams",
    "ThermalNoise",
    "TwoModeCovariance",
    "apply_channel",
    "characteristic_function",
    "entropy_h",
    "entropy_report",
    "gaussian_discord",
    "is_separable",
    "make_channel",
    "mutual_information",
    "physicality_check",
    "sts_covariance",
    "symplectic_data",
    "trajectory",
    "transform_charfn",
]
