"""Parameters and single-particle structure of the staggered XX chain.

The chain couples neighbouring spins through an alternating XX exchange
and sits in an alternating transverse field,

    H = -sum_l [ (J_l / 2) (sx_l sx_{l+1} + sy_l sy_{l+1}) + B_l sz_l ],

with J_l = J + (-1)^l j and B_l = B + (-1)^l b on a ring of even length
(site index l starting at 1, so odd sites carry J - j and B - b).  After
the fermionic mapping the excitation energies organise into two bands

    lam_pm(q) = B +- theta(q),      theta(q) = sqrt(J^2 cos^2 q + b^2 + j^2 sin^2 q),

with q in [0, pi].  Everything downstream (thermodynamics, correlators,
ground-state closed forms) is an integral of simple functions of these
bands, so this module owns the band geometry: where the lower band is
negative, where it crosses zero, and which field regime a parameter set
belongs to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ChainParams",
    "Thermal",
    "PhaseRegion",
    "theta_of_q",
    "lambda_pm",
    "theta_bounds",
    "critical_fields",
    "xi",
    "region_q",
    "band_crossings",
    "classify_region",
]


@dataclass(frozen=True)
class ChainParams:
    """Couplings and fields of the chain.

    Parameters
    ----------
    J : float
        Uniform exchange, J >= 0.  The energy scale of the problem; all
        published scans fix J = 1.
    j : float
        Alternating exchange.  Bonds leaving even sites carry J + j,
        bonds leaving odd sites carry J - j.
    b : float
        Alternating transverse field (even sites B + b, odd sites B - b).
    B : float
        Uniform transverse field.
    """

    J: float = 1.0
    j: float = 0.0
    b: float = 0.0
    B: float = 0.0

    def __post_init__(self) -> None:
        for name in ("J", "j", "b", "B"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.J < 0:
            raise ValueError(f"J must be non-negative, got {self.J!r}")


@dataclass(frozen=True)
class Thermal:
    """Inverse temperature, with beta = inf marking the ground state.

    Use ``Thermal.finite(beta)`` for a thermal state and ``Thermal.zero()``
    (or ``Thermal.from_temperature(0.0)``) for zero temperature.
    """

    beta: float = math.inf

    def __post_init__(self) -> None:
        if math.isnan(self.beta) or self.beta <= 0:
            raise ValueError(f"beta must be positive (inf = ground state), got {self.beta!r}")

    @classmethod
    def finite(cls, beta: float) -> "Thermal":
        if math.isinf(beta):
            raise ValueError("finite() requires finite beta; use Thermal.zero()")
        return cls(beta)

    @classmethod
    def zero(cls) -> "Thermal":
        return cls(math.inf)

    @classmethod
    def from_temperature(cls, temperature: float) -> "Thermal":
        if math.isnan(temperature) or temperature < 0:
            raise ValueError(f"temperature must be >= 0, got {temperature!r}")
        return cls(math.inf) if temperature == 0 else cls(1.0 / temperature)

    @property
    def is_ground(self) -> bool:
        return math.isinf(self.beta)


class PhaseRegion(Enum):
    """Zero-temperature field regimes, split by the two critical fields.

    COMPENSATED: B below both critical fields, magnetization pinned at 0.
    PARTIAL:     B between the critical fields, magnetization grows from
                 0 to 1 as the lower band empties.
    SATURATED:   B at or above both critical fields, fully polarized.
    """

    COMPENSATED = "compensated"
    PARTIAL = "partial"
    SATURATED = "saturated"


def theta_of_q(p: ChainParams, q):
    """Band half-splitting theta(q) = sqrt(J^2 cos^2 q + b^2 + j^2 sin^2 q).

    Accepts scalar or array q; q must lie in [0, pi].
    """
    q = np.asarray(q, dtype=float)
    if np.any(q < 0) or np.any(q > np.pi):
        raise ValueError("q must lie in [0, pi]")
    c, s = np.cos(q), np.sin(q)
    return np.sqrt((p.J * c) ** 2 + p.b**2 + (p.j * s) ** 2)


def lambda_pm(p: ChainParams, q):
    """Both excitation bands (lam_plus, lam_minus) = (B + theta, B - theta)."""
    th = theta_of_q(p, q)
    return p.B + th, p.B - th


def theta_bounds(p: ChainParams) -> tuple[float, float]:
    """(min, max) of theta over q: sqrt(min(J,|j|)^2 + b^2), sqrt(max(J,|j|)^2 + b^2)."""
    lo = min(p.J**2, p.j**2) + p.b**2
    hi = max(p.J**2, p.j**2) + p.b**2
    return math.sqrt(lo), math.sqrt(hi)


def critical_fields(p: ChainParams) -> tuple[float, float]:
    """The two critical fields (sqrt(J^2 + b^2), sqrt(j^2 + b^2)).

    The ground state is singular where |B| equals either value (they
    coincide when |j| = J).  Order follows the couplings, not magnitude.
    """
    return math.hypot(p.J, p.b), math.hypot(p.j, p.b)


def xi(p: ChainParams) -> float:
    """Zero-crossing angle of the lower band, clamped to [0, pi/2].

    Solves theta(xi) = |B| through cos^2 xi = (B^2 - b^2 - j^2)/(J^2 - j^2).
    When the right-hand side falls outside [0, 1] the crossing is absent
    and the angle clamps to the matching endpoint (r > 1 -> 0, r < 0 ->
    pi/2), which makes the closed-form branches below valid on their full
    half-open intervals.  Undefined at J = |j| (theta is flat in q);
    callers branch on that case before calling.
    """
    den = p.J**2 - p.j**2
    if den == 0:
        raise ValueError("xi is undefined at J = |j|; theta(q) is constant there")
    r = (p.B**2 - p.b**2 - p.j**2) / den
    if r <= 0:
        return math.pi / 2
    if r >= 1:
        return 0.0
    return math.acos(math.sqrt(r))


def region_q(p: ChainParams) -> tuple[tuple[float, float], ...]:
    """Open q-intervals where the lower band is negative, lam_minus(q) < 0.

    These are the momenta occupied in the ground state.  Endpoints with
    lam_minus = 0 exactly are excluded; they carry no weight in any
    integral.  Returns () when the band is non-negative everywhere and
    ((0, pi),) when it is negative everywhere.
    """
    lo, hi = theta_bounds(p)
    if p.B < lo:
        return ((0.0, math.pi),)
    if p.B >= hi:
        return ()
    # B sits strictly inside the band sweep, so J != |j| and the crossing
    # angle is interior.
    x = xi(p)
    if p.J > abs(p.j):
        # theta decreases toward q = pi/2: negative region hugs the edges
        return ((0.0, x), (math.pi - x, math.pi))
    return ((x, math.pi - x),)


def band_crossings(p: ChainParams) -> tuple[float, ...]:
    """Interior angles where a band crosses zero, i.e. theta(q) = |B|.

    Empty when |B| lies outside the band sweep or theta is flat (J = |j|).
    These are the only non-smooth points of zero-temperature integrands
    and the sharp-layer centres at large beta, so integrals register them
    as quadrature breakpoints.
    """
    den = p.J**2 - p.j**2
    if den == 0:
        return ()
    r = (p.B**2 - p.b**2 - p.j**2) / den
    if not 0 <= r < 1:
        return ()
    x = math.acos(math.sqrt(r))
    if x == math.pi - x:
        return (x,)
    return (x, math.pi - x)


def classify_region(p: ChainParams) -> PhaseRegion:
    """Field regime of the ground state, judged by |B| (spectrum is even in B).

    Half-open convention: each boundary field belongs to the regime above
    it, so B exactly at the upper critical field classifies SATURATED.
    """
    babs = abs(p.B)
    c1, c2 = critical_fields(p)
    lo, hi = min(c1, c2), max(c1, c2)
    if babs >= hi:
        return PhaseRegion.SATURATED
    if babs < lo:
        return PhaseRegion.COMPENSATED
    return PhaseRegion.PARTIAL
