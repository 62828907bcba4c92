"""Heterogeneity generating functions (HGFs).

An HGF maps an explanatory variable h to a nonnegative process-noise
variance. The workhorse here is the exponential inverse-square form

    f(h) = alpha * exp(-beta / h**2)

which is ~0 for |h| << sqrt(beta) and saturates at alpha for
|h| >> sqrt(beta). A small catalog of alternative shapes is provided
for experimentation; all carry the same alpha scale.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

# exp() arguments below this produce subnormals; we clamp to exactly 0
# so downstream comparisons are deterministic.
_LOG_TINY = math.log(2.2250738585072014e-308)


@dataclass(frozen=True, slots=True)
class HgfParams:
    """Parameters of the exponential HGF and of the explanatory recursion.

    alpha: variance ceiling, > 0.
    beta:  sharpness, >= 0. beta == 0 degenerates to the constant alpha.
    rho:   persistence of the explanatory variable h between steps.
    """

    alpha: float
    beta: float
    rho: float = 0.5

    def __post_init__(self):
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        if not (self.beta >= 0.0 and math.isfinite(self.beta)):
            raise ValueError(f"beta must be nonnegative and finite, got {self.beta}")
        if not (0.0 <= self.rho <= 1.0):
            raise ValueError(f"rho must be in [0, 1], got {self.rho}")


class HgfKind(enum.Enum):
    """Catalog of HGF shapes. Every kind maps finite h to a finite value in [0, 2*alpha]."""

    EXP_INVERSE_SQUARE = "exp-inverse-square"  # alpha * exp(-beta/h^2)
    LOGISTIC = "logistic"                      # alpha * e^h / (1 + e^h)
    ONE_PLUS_GAUSS = "one-plus-gauss"          # alpha * (1 + e^(-h^2))
    GAUSS = "gauss"                            # alpha * e^(-h^2)
    ABS = "abs"                                # alpha * |h|


def hgf_eval(h: float, params: HgfParams) -> float:
    """Evaluate the exponential HGF alpha*exp(-beta/h^2) at h.

    The h = 0 singularity is closed by continuity: the limit is 0 when
    beta > 0. With beta = 0 the function is the constant alpha, including
    at h = 0. The result is always in [0, alpha]; exponents below the
    normal floating-point range return exactly 0.

    Raises ValueError for non-finite h.
    """
    if not math.isfinite(h):
        raise ValueError(f"h must be finite, got {h}")
    if params.beta == 0.0:
        return params.alpha
    if h == 0.0:
        return 0.0
    h2 = h * h
    if h2 == 0.0:
        # |h| below sqrt of smallest subnormal; exponent is effectively -inf
        return 0.0
    expo = -params.beta / h2
    if expo < _LOG_TINY:
        return 0.0
    return params.alpha * math.exp(expo)


def hgf_catalog_eval(h: float, kind: HgfKind, params: HgfParams) -> float:
    """Evaluate one of the catalog HGFs at h, scaled by params.alpha."""
    if not math.isfinite(h):
        raise ValueError(f"h must be finite, got {h}")
    if kind is HgfKind.EXP_INVERSE_SQUARE:
        return hgf_eval(h, params)
    if kind is HgfKind.LOGISTIC:
        # split on sign to avoid overflow of e^h
        if h >= 0.0:
            return params.alpha / (1.0 + math.exp(-h))
        e = math.exp(h)
        return params.alpha * e / (1.0 + e)
    if kind is HgfKind.ONE_PLUS_GAUSS:
        return params.alpha * (1.0 + math.exp(-h * h))
    if kind is HgfKind.GAUSS:
        return params.alpha * math.exp(-h * h)
    if kind is HgfKind.ABS:
        return params.alpha * abs(h)
    raise ValueError(f"unknown HGF kind: {kind!r}")
