"""Solver settings shared by the finite-difference and shooting oracles."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from ..errors import InvalidParams


@dataclass(frozen=True)
class OracleConfig:
    """Grid and tolerance settings.

    ``r_min`` and ``r_max`` default to values chosen from the potential's
    length scale and the decay rate at the energies being scanned.
    ``stencil_order`` 2 is the plain three-point scheme; 4 adds one
    Richardson step between ``num_points`` and ``2 * num_points``.
    ``refine_tol`` bounds the relative change between those two grids.
    """

    r_min: Optional[float] = None
    r_max: Optional[float] = None
    num_points: int = 4000
    eps_tol: float = 1e-12
    scan_points: int = 400
    stencil_order: int = 4
    refine_tol: float = 1e-4
    shoot_rtol: float = 1e-12
    scan_rtol: float = 1e-9

    def __post_init__(self):
        if self.r_min is not None and self.r_min <= 0:
            raise InvalidParams(f"r_min must be positive, got {self.r_min}")
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise InvalidParams(f"need r_min < r_max, got {self.r_min}, {self.r_max}")
        if self.num_points < 100:
            raise InvalidParams(f"num_points must be at least 100, got {self.num_points}")
        if not self.eps_tol >= 1e-12:
            raise InvalidParams(f"eps_tol must be at least 1e-12, got {self.eps_tol}")
        if self.scan_points < 2:
            raise InvalidParams("scan_points must be at least 2")
        if self.stencil_order not in (2, 4):
            raise InvalidParams(f"stencil_order must be 2 or 4, got {self.stencil_order}")

    def as_dict(self) -> dict:
        return asdict(self)
