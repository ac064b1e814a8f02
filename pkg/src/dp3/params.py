"""Equation parameters (eps, b) and the coupling-sector label eps2."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConditionViolationError

__all__ = ["EquationParams"]


@dataclass(frozen=True)
class EquationParams:
    """Parameters of the nonlinear equation: sign ``eps``, real ``b != 0``,
    and the sector label ``eps2`` with ``eps*b = |eps*b| e^{i pi eps2}``
    (``eps2 = 0`` for positive coupling, ``+-1`` for negative; for negative
    coupling the caller picks the sector, default ``+1``)."""

    eps: int
    b: float
    eps2: int = 0

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ConditionViolationError("eps must be +1 or -1")
        if self.b == 0.0:
            raise ConditionViolationError("b must be nonzero")
        coupling = self.eps * self.b
        if coupling > 0 and self.eps2 != 0:
            raise ConditionViolationError("eps2 must be 0 when eps*b > 0")
        if coupling < 0 and self.eps2 not in (1, -1):
            raise ConditionViolationError("eps2 must be +-1 when eps*b < 0")

    @staticmethod
    def make(eps: int, b: float, eps2: int | None = None) -> "EquationParams":
        """Build with the sector label inferred (negative coupling defaults
        to the ``+1`` sector)."""
        if eps2 is None:
            eps2 = 0 if eps * b > 0 else 1
        return EquationParams(eps=eps, b=float(b), eps2=eps2)

    @property
    def coupling(self) -> float:
        return self.eps * self.b

    @property
    def abs_coupling(self) -> float:
        return abs(self.coupling)

    @property
    def sign2(self) -> int:
        """(-1)**eps2."""
        return 1 if self.eps2 == 0 else -1

    @property
    def coupling_cbrt(self) -> float:
        """(eps*b)^{1/3} with the real (negative for negative argument)
        cube root."""
        return math.copysign(abs(self.coupling) ** (1.0 / 3.0), self.coupling)

    @property
    def coupling_pow23(self) -> float:
        """(eps*b)^{2/3}: the square of the real cube root, always > 0."""
        return self.coupling_cbrt**2

    @property
    def b_pow23(self) -> float:
        """b^{2/3} with the same real-cube-root convention."""
        return math.copysign(abs(self.b) ** (1.0 / 3.0), self.b) ** 2
