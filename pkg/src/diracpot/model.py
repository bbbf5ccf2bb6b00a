"""Physical parameters, derived rotation quantities and validity conditions.

Units are relativistic (hbar = c = 1); the mass sets the energy scale.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidKappa, InvalidParams, InvalidStrength


class Branch(enum.Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"

    @classmethod
    def parse(cls, value) -> "Branch":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower()[:3])


@dataclass(frozen=True)
class ProblemParams:
    """Inputs of the Dirac problem with a 1/r-singular vector potential.

    Parameters
    ----------
    mass : float
        Rest mass ``m > 0``.
    lam : float
        Screening parameter ``lambda > 0`` (inverse length).
    v0 : float
        Potential strength, ``0 < |v0| <= lam``.
    kappa : int
        Spin-orbit quantum number, a nonzero integer.
    """

    mass: float
    lam: float
    v0: float
    kappa: int

    def __post_init__(self):
        validate(self)

    @property
    def mu(self) -> float:
        return self.v0 / self.lam

    def mapped(self) -> "ProblemParams":
        """Parameters of the negative-energy map (v0, kappa) -> (-v0, -kappa)."""
        return ProblemParams(self.mass, self.lam, -self.v0, -self.kappa)

    def scaled(self, s: float) -> "ProblemParams":
        return ProblemParams(s * self.mass, s * self.lam, s * self.v0, self.kappa)

    def as_dict(self) -> dict:
        return {"mass": self.mass, "lambda": self.lam, "v0": self.v0, "kappa": self.kappa}


@dataclass(frozen=True)
class DerivedParams:
    mu: float
    cos_theta: float
    sin_theta: float
    gamma: float
    theta: float
    boundary: bool = False  # |mu| == |kappa|, C = 0

    @property
    def abs_gamma(self) -> float:
        return abs(self.gamma)


def validate(params: ProblemParams) -> None:
    kappa = params.kappa
    if isinstance(kappa, bool) or int(kappa) != kappa:
        raise InvalidKappa(f"kappa must be an integer, got {kappa!r}")
    if kappa == 0:
        raise InvalidKappa("kappa must be nonzero")
    for name in ("mass", "lam", "v0"):
        value = getattr(params, name)
        if not math.isfinite(value):
            raise InvalidParams(f"{name} must be finite, got {value!r}")
    if params.mass <= 0:
        raise InvalidParams(f"mass must be positive, got {params.mass}")
    if params.lam <= 0:
        raise InvalidParams(f"lambda must be positive, got {params.lam}")
    if params.v0 == 0:
        raise InvalidStrength("v0 = 0 leaves no coupling (mu = 0)")
    if abs(params.v0) > params.lam:
        raise InvalidStrength(f"|v0| = {abs(params.v0)} exceeds lambda = {params.lam}")


def derive(params: ProblemParams) -> DerivedParams:
    """Rotation quantities for the top-sign choice ``sin(theta) = mu/kappa``."""
    validate(params)
    mu = params.v0 / params.lam
    s = mu / params.kappa
    c = math.sqrt(max(0.0, 1.0 - s * s))
    return DerivedParams(
        mu=mu,
        cos_theta=c,
        sin_theta=s,
        gamma=params.kappa * c,
        theta=math.asin(s),
        boundary=c == 0.0,
    )


def bound_condition_holds(eps: float, params: ProblemParams) -> bool:
    """Reality of the hypergeometric parameters: (eps + v0)^2 <= m^2 + lam^2 kappa^2."""
    return (eps + params.v0) ** 2 <= params.mass**2 + (params.lam * params.kappa) ** 2


def is_bound_energy(eps: float, mass: float) -> bool:
    return abs(eps) < mass


@dataclass(frozen=True)
class Level:
    """One entry of a closed-form spectrum.

    ``n`` is the formula index. ``spinor_index`` is the index of the spinor
    carrying this energy (``n`` for kappa < 0, ``n - 1`` for kappa > 0) or
    ``None`` when no spinor carries it. ``beta`` is only set for Eckart levels.
    """

    n: int
    epsilon: float
    alpha: float
    spinor_index: Optional[int]
    branch: Branch
    beta: Optional[float] = None
    physical: bool = True
    bound_check: bool = True

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "spinor_index": self.spinor_index,
            "epsilon": self.epsilon,
            "alpha_n": self.alpha,
            "beta_n": self.beta,
            "branch": self.branch.value,
            "physical": self.physical,
            "bound_check": self.bound_check,
        }


def spinor_index_for(n: int, kappa: int) -> Optional[int]:
    if kappa < 0:
        return n
    return n - 1 if n >= 1 else None


def formula_index_for(spinor_index: int, kappa: int) -> int:
    return spinor_index if kappa < 0 else spinor_index + 1


def mapped_levels(levels, branch: Branch) -> list:
    """Negate the energies of ``levels`` and tag them with ``branch``."""
    return [Level(lv.n, -lv.epsilon, lv.alpha, lv.spinor_index, branch, lv.beta,
                  lv.physical, lv.bound_check) for lv in levels]
