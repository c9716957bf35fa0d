"""Physical bounds on mechanical computation.

Four bounds, all driven by SI constants: a thermodynamic cap on stepping
frequency from available power, the uncertainty-principle floor on per-step
energy, the minimum volume and spacing needed to keep z distinct symbols
readable at atomic scale, and the resulting signal-propagation cap on
frequency as the alphabet grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    c: float = 299_792_458.0  # speed of light, m/s
    h: float = 6.62607015e-34  # Planck constant, J*s
    a: float = 5.29177210903e-11  # Bohr radius (hydrogen), m


CONSTANTS = PhysicalConstants()

# rounded figure the frequency-alphabet bound is usually quoted with, in s^-1;
# the constants above give c/a about 0.18% higher
QUOTED_RATE_CONSTANT = 5.655e18


def max_frequency_from_power(watts: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Frequency cap from power draw: f <= sqrt(2*pi*W/h) steps per second."""
    if watts <= 0:
        raise DomainError("power must be positive")
    return math.sqrt(2.0 * math.pi * watts / constants.h)


def min_step_energy(dt: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Uncertainty floor on the energy of a step lasting dt: E >= h/(2*pi*dt)."""
    if dt <= 0:
        raise DomainError("step duration must be positive")
    return constants.h / (2.0 * math.pi * dt)


def min_symbol_volume(z: int, constants: PhysicalConstants = CONSTANTS) -> float:
    """Minimum volume holding z symbols, one atomic sphere each: (4/3)*pi*a^3*z."""
    if z < 1:
        raise DomainError("symbol count must be at least 1")
    return (4.0 / 3.0) * math.pi * constants.a**3 * z


def min_symbol_distance(z: int, constants: PhysicalConstants = CONSTANTS) -> float:
    """Minimum distance between two of z packed symbols: d = 2*a*z**(1/3)."""
    if z < 1:
        raise DomainError("symbol count must be at least 1")
    return 2.0 * constants.a * z ** (1.0 / 3.0)


def max_frequency_from_alphabet(z: int, constants: PhysicalConstants = CONSTANTS) -> float:
    """Signal-propagation cap: f <= c / (2*a*z**(1/3)) steps per second."""
    return constants.c / min_symbol_distance(z, constants)


def bound_product_holds(
    f: float, z: int, rel_tol: float = 1e-12, constants: PhysicalConstants = CONSTANTS
) -> bool:
    """Check f * z**(1/3) <= (1/2) * (c/a), with slack for roundoff."""
    if z < 1:
        raise DomainError("symbol count must be at least 1")
    lhs = f * z ** (1.0 / 3.0)
    rhs = 0.5 * constants.c / constants.a
    return lhs <= rhs * (1.0 + rel_tol)


def rate_constant_consistency(constants: PhysicalConstants = CONSTANTS) -> dict:
    """Computed (1/2)*(c/a) against the quoted rounding; gap stays under 0.5%."""
    computed = 0.5 * constants.c / constants.a
    quoted = 0.5 * QUOTED_RATE_CONSTANT
    return {
        "computed_half_c_over_a": computed,
        "quoted_half_rate": quoted,
        "relative_gap": abs(computed - quoted) / computed,
    }


def limits_report(z: int, power: float | None = None, dt: float | None = None) -> dict:
    """Every bound for an alphabet of z symbols, plus the consistency check.

    The volume formula is an interpretation: the source typography reads like
    "(4/3) z pi a^3 m^3" and we take the trailing m^3 as a units annotation,
    not a factor.
    """
    report: dict = {
        "symbols": z,
        "min_symbol_volume_m3": min_symbol_volume(z),
        "min_symbol_distance_m": min_symbol_distance(z),
        "max_frequency_from_alphabet_hz": max_frequency_from_alphabet(z),
        "frequency_alphabet_product_ok": bound_product_holds(
            max_frequency_from_alphabet(z), z
        ),
        "volume_formula_note": "trailing m^3 read as units, not a factor",
    }
    if power is not None:
        report["power_w"] = power
        report["max_frequency_from_power_hz"] = max_frequency_from_power(power)
    if dt is not None:
        report["step_duration_s"] = dt
        report["min_step_energy_j"] = min_step_energy(dt)
    report.update(rate_constant_consistency())
    return report
