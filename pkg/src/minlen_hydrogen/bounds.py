"""Upper bounds on the minimal length from hydrogen spectroscopy.

Two estimates, each attributing an experimental margin entirely to the
leading sqrt(beta) correction:

* 1S-2S: the relative accuracy eps of the splitting equals sqrt(3 beta)/4,
  so Delta X = hbar sqrt(3 beta) = 4 eps a0.
* Lamb shift: the 1S gap h (L_exp - L_th) equals sqrt(3 beta)/n^3 hartree,
  so Delta X = a0 n^3 h Delta L / E_h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .spectrum import DomainError
from .units import CONSTANTS, PhysicalConstants

# Reference inputs and quoted results.
EPSILON_1S2S = 1.8e-14
LAMB_TH_1S_MHZ = 8172.731
LAMB_EXP_1S_MHZ = 8172.837
QUOTED_1S2S_FM = 5e-9
QUOTED_LAMB_FM = 1e-6


class InputKind(str, Enum):
    ONE_S_TWO_S = "OneS_TwoS_Accuracy"
    LAMB_SHIFT = "LambShift"


class FormulaTag(str, Enum):
    SHIFT_1S2S = "Shift1S2S"
    LAMB = "Lamb"


@dataclass(frozen=True)
class SpectroscopyInput:
    kind: InputKind
    epsilon: float = 0.0
    lamb_exp_mhz: float = 0.0
    lamb_th_mhz: float = 0.0
    n_level: int = 1

    def __post_init__(self):
        if self.kind is InputKind.ONE_S_TWO_S and not self.epsilon > 0:
            raise DomainError(f"1S-2S accuracy must be positive, got {self.epsilon!r}")
        if self.kind is InputKind.LAMB_SHIFT:
            if not self.lamb_exp_mhz > self.lamb_th_mhz:
                raise DomainError(
                    f"Lamb gap must be positive, got exp={self.lamb_exp_mhz!r} th={self.lamb_th_mhz!r}"
                )
            if self.n_level < 1:
                raise DomainError("n_level must be >= 1")

    @property
    def lamb_gap_mhz(self) -> float:
        return self.lamb_exp_mhz - self.lamb_th_mhz

    @classmethod
    def one_s_two_s(cls, epsilon: float = EPSILON_1S2S) -> "SpectroscopyInput":
        return cls(InputKind.ONE_S_TWO_S, epsilon=epsilon)

    @classmethod
    def lamb(cls, lamb_exp_mhz: float = LAMB_EXP_1S_MHZ, lamb_th_mhz: float = LAMB_TH_1S_MHZ, n_level: int = 1) -> "SpectroscopyInput":
        return cls(InputKind.LAMB_SHIFT, lamb_exp_mhz=lamb_exp_mhz, lamb_th_mhz=lamb_th_mhz, n_level=n_level)


@dataclass(frozen=True)
class MinimalLengthBound:
    delta_x_min_fm: float
    sqrt_3beta_au: float
    source: SpectroscopyInput
    formula_tag: FormulaTag
    bohr_radius_fm: float = CONSTANTS.bohr_radius_fm

    @property
    def beta_au(self) -> float:
        return self.sqrt_3beta_au**2 / 3.0

    @property
    def delta_x_min_sqrt5_fm(self) -> float:
        """Same beta expressed as hbar sqrt(3 beta + beta') with beta' = 2 beta."""
        return math.sqrt(5.0 * self.beta_au) * self.bohr_radius_fm


def bound_from_1s2s(epsilon: float = EPSILON_1S2S, constants: PhysicalConstants = CONSTANTS) -> MinimalLengthBound:
    source = SpectroscopyInput.one_s_two_s(epsilon)
    sqrt_3beta = 4.0 * epsilon  # hbar = m = alpha = 1
    return MinimalLengthBound(
        delta_x_min_fm=constants.length_au_to_fm(sqrt_3beta),
        sqrt_3beta_au=sqrt_3beta,
        source=source,
        formula_tag=FormulaTag.SHIFT_1S2S,
        bohr_radius_fm=constants.bohr_radius_fm,
    )


def bound_from_lamb(source: SpectroscopyInput | None = None, constants: PhysicalConstants = CONSTANTS) -> MinimalLengthBound:
    source = SpectroscopyInput.lamb() if source is None else source
    if source.kind is not InputKind.LAMB_SHIFT:
        raise DomainError("bound_from_lamb needs a LambShift input")
    gap_au = constants.frequency_mhz_to_au(source.lamb_gap_mhz)
    sqrt_3beta = gap_au * source.n_level**3
    return MinimalLengthBound(
        delta_x_min_fm=constants.length_au_to_fm(sqrt_3beta),
        sqrt_3beta_au=sqrt_3beta,
        source=source,
        formula_tag=FormulaTag.LAMB,
        bohr_radius_fm=constants.bohr_radius_fm,
    )


def beta_from_minimal_length(delta_x_fm: float, convention: str = "sqrt3", constants: PhysicalConstants = CONSTANTS) -> float:
    """Invert Delta X = hbar sqrt(3 beta) (default) or hbar sqrt(5 beta) (``"sqrt5"``)."""
    if not delta_x_fm > 0:
        raise DomainError(f"minimal length must be positive, got {delta_x_fm!r}")
    factor = {"sqrt3": 3.0, "sqrt5": 5.0}[convention]
    dx_au = constants.length_fm_to_au(delta_x_fm) / constants.atomic.hbar
    return dx_au * dx_au / factor


def minimal_length_from_beta(beta: float, convention: str = "sqrt3", constants: PhysicalConstants = CONSTANTS) -> float:
    factor = {"sqrt3": 3.0, "sqrt5": 5.0}[convention]
    return constants.length_au_to_fm(constants.atomic.hbar * math.sqrt(factor * beta))
