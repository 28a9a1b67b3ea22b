"""Physical constants, deformation parameters and operator representations.

Everything internal runs in atomic units (hbar = m_e = alpha = 1). SI and
fm/MHz values only matter at the bounds boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Mapping

import numpy as np

# CODATA 2018 recommended values.
PLANCK_H_SI = 6.62607015e-34  # J s (exact by SI definition)
HBAR_SI = PLANCK_H_SI / (2.0 * math.pi)  # J s
ELECTRON_MASS_SI = 9.1093837015e-31  # kg
BOHR_RADIUS_SI = 5.29177210903e-11  # m
BOHR_RADIUS_FM = 5.29177210903e4  # fm
HARTREE_OVER_H_MHZ = 6.579683920502e9  # MHz


@dataclass(frozen=True)
class UnitSystem:
    hbar: float
    mass_e: float
    alpha_strength: float
    planck_h: float

    @property
    def bohr_radius(self) -> float:
        return self.hbar**2 / (self.mass_e * self.alpha_strength)

    @property
    def hartree(self) -> float:
        return self.mass_e * self.alpha_strength**2 / self.hbar**2


@dataclass(frozen=True)
class PhysicalConstants:
    """hbar, m_e, the Coulomb strength e^2/(4 pi eps0) and derived scales.

    ``atomic`` has hbar = m = alpha = 1. ``si`` holds pinned CODATA values,
    with the Coulomb strength fixed by the Bohr radius so that
    a0 = hbar^2/(m alpha) holds to rounding.
    """

    atomic: UnitSystem
    si: UnitSystem
    bohr_radius_fm: float = BOHR_RADIUS_FM
    hartree_over_h_mhz: float = HARTREE_OVER_H_MHZ

    @property
    def hartree_si(self) -> float:
        """Hartree energy in joule."""
        return self.si.hartree

    def energy_au_to_si(self, energy):
        return energy * self.si.hartree

    def energy_si_to_au(self, energy):
        return energy / self.si.hartree

    def length_au_to_fm(self, length):
        return length * self.bohr_radius_fm

    def length_fm_to_au(self, length):
        return length / self.bohr_radius_fm

    def frequency_mhz_to_au(self, nu_mhz):
        """Energy h*nu in hartree for a frequency given in MHz."""
        return nu_mhz / self.hartree_over_h_mhz


CONSTANTS = PhysicalConstants(
    atomic=UnitSystem(hbar=1.0, mass_e=1.0, alpha_strength=1.0, planck_h=2.0 * math.pi),
    si=UnitSystem(
        hbar=HBAR_SI,
        mass_e=ELECTRON_MASS_SI,
        alpha_strength=HBAR_SI**2 / (ELECTRON_MASS_SI * BOHR_RADIUS_SI),
        planck_h=PLANCK_H_SI,
    ),
)


@dataclass(frozen=True)
class DeformationParams:
    """Deformation constants of the algebra
    [X_i, P_j] = i hbar [(1 + beta P^2) delta_ij + beta' P_i P_j].

    Both in atomic units of inverse momentum squared.
    """

    beta: float
    beta_prime: float

    def __post_init__(self):
        for name in ("beta", "beta_prime"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    @classmethod
    def factorizable(cls, beta: float) -> "DeformationParams":
        """The solvable case beta' = 2 beta."""
        return cls(beta=float(beta), beta_prime=2.0 * float(beta))

    @property
    def is_factorizable(self) -> bool:
        return self.beta_prime == 2.0 * self.beta


def require_factorizable(params: DeformationParams) -> float:
    """Return beta, or raise if beta' != 2 beta exactly."""
    if not params.is_factorizable:
        raise ValueError(
            f"factorized solver needs beta_prime == 2*beta, got beta={params.beta!r}, "
            f"beta_prime={params.beta_prime!r}"
        )
    return params.beta


@dataclass(frozen=True)
class MinimalLength:
    au: float
    fm: float


def minimal_length(params: DeformationParams, constants: PhysicalConstants = CONSTANTS) -> MinimalLength:
    """Smallest position uncertainty hbar*sqrt(3 beta + beta')."""
    au = constants.atomic.hbar * math.sqrt(3.0 * params.beta + params.beta_prime)
    return MinimalLength(au=au, fm=constants.length_au_to_fm(au))


class Representation(str, Enum):
    BRAU = "Brau"
    AKHOURY_YAO = "AkhouryYao"
    STETSKO_TKACHUK = "StetskoTkachuk"


# A coefficient is a linear form c0 + cb*beta + cbp*beta'.
Coefficient = tuple[float, float, float]

# Operator structures that appear in X_i, in terms of canonical x_i, p_i:
#   "x"       x_i
#   "p2_x"    p^2 x_i
#   "pp_x"    p_i p_j x_j
#   "p2x_xp2" p^2 x_i + x_i p^2
#   "p"       p_i
_POSITION_TABLE: dict[Representation, dict[str, Coefficient]] = {
    Representation.BRAU: {"x": (1.0, 0.0, 0.0)},
    Representation.AKHOURY_YAO: {
        "x": (1.0, 0.0, 0.0),
        "p2_x": (0.0, 1.0, 0.0),
        "pp_x": (0.0, 0.0, 1.0),
    },
    Representation.STETSKO_TKACHUK: {
        "x": (1.0, 0.0, 0.0),
        "p2x_xp2": (0.0, 0.5, -0.25),
    },
}

# P(p) = p * sum_k coeff_k * p^(2k)
_MOMENTUM_TABLE: dict[Representation, tuple[Coefficient, ...]] = {
    Representation.BRAU: ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
    Representation.AKHOURY_YAO: ((1.0, 0.0, 0.0),),
    Representation.STETSKO_TKACHUK: ((1.0, 0.0, 0.0), (0.0, 0.0, 0.5)),
}


@dataclass(frozen=True)
class RepresentationSpec:
    """Scalar coefficient data for one choice of X_i(x, p), P_i(x, p)."""

    name: Representation
    params: DeformationParams
    position_coefficients: Mapping[str, Coefficient]
    momentum_coefficients: tuple[Coefficient, ...]
    gamma: float = 0.0

    def position_coefficient(self, structure: str) -> float:
        """Numeric multiplier of ``structure`` in X_i (0 if absent)."""
        if structure == "p":
            return self.gamma
        c = self.position_coefficients.get(structure, (0.0, 0.0, 0.0))
        return _evaluate(c, self.params)


def representation(name: Representation | str, params: DeformationParams) -> RepresentationSpec:
    name = Representation(name)
    return RepresentationSpec(
        name=name,
        params=params,
        position_coefficients=MappingProxyType(dict(_POSITION_TABLE[name])),
        momentum_coefficients=_MOMENTUM_TABLE[name],
        gamma=0.0,
    )


def _evaluate(c: Coefficient, params: DeformationParams) -> float:
    return c[0] + c[1] * params.beta + c[2] * params.beta_prime


def momentum_rep_coefficient(spec: RepresentationSpec, p):
    """Deformed momentum P as a function of the canonical momentum magnitude p."""
    p = np.asarray(p, dtype=float) if np.ndim(p) else float(p)
    p2 = p * p
    total = 0.0
    power = 1.0
    for c in spec.momentum_coefficients:
        total = total + _evaluate(c, spec.params) * power
        power = power * p2
    return p * total
