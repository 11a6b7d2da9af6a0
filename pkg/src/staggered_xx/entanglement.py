"""Pairwise concurrence and the energy-based entanglement witness.

Magnetization conservation gives every two-site reduced density matrix an
X shape, so the Wootters concurrence of a site pair reduces to

    C = 2 max{0, |z| - sqrt(a d)},

with z the transverse coherence and a, d the outer diagonal entries.  In
terms of bulk correlators this yields, for nearest neighbours at site
parity s (G below is the parity-resolved transverse correlator, zz the
full longitudinal one),

    C1 = max{0, |G_1| - (1/2) sqrt[(1 + zz_1)^2 - (2 m)^2]},

and for next-nearest neighbours the Wick-factorized coherence
|G_{l,1} G_{l+1,1} - G_{l,2} <sz_{l+1}>| replaces |G_1|.  The witness
compares the energy density against its bound over separable states:

    lhs = 4 |u + B m + b m_s| / (|J - j| + |J + j|),

with entanglement certified whenever lhs > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ChainParams, Thermal
from .quadrature import QuadSpec
from .correlations import CorrelatorPair, g1, g_even, parity_sign
from .thermo import internal_energy, magnetization, staggered_magnetization

__all__ = [
    "ConcurrencePair",
    "WitnessValue",
    "InvalidState",
    "NegativeRadicand",
    "DegenerateCoupling",
    "wootters",
    "c1",
    "c2",
    "witness",
]


class InvalidState(ValueError):
    """Density matrix violates Hermiticity/positivity/trace preconditions."""


class NegativeRadicand(ValueError):
    """Concurrence radicand below the numerical-noise tolerance."""


class DegenerateCoupling(ValueError):
    """Witness bound is empty when J = j = 0."""


@dataclass(frozen=True)
class ConcurrencePair:
    """Concurrence on the odd and even sublattices."""

    odd: float
    even: float

    def at(self, parity: str) -> float:
        return self.odd if parity == "odd" else self.even


@dataclass(frozen=True)
class WitnessValue:
    """Energy-density witness value; entanglement certified iff lhs > 1."""

    lhs: float
    detected: bool


_STATE_TOL = 1e-10
# sigma_y (x) sigma_y, the spin-flip conjugation kernel
_SY_SY = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)


def wootters(rho) -> float:
    """Concurrence of an arbitrary two-qubit density matrix.

    The lambda_i are the square roots of the eigenvalues of rho rho~ with
    rho~ = (sy x sy) rho* (sy x sy); C = max{0, l1 - l2 - l3 - l4}.
    Computed as the singular values of X = sqrt(rho) (sy x sy) conj(sqrt(rho)):
    X is complex symmetric and X conj(X) is similar to rho rho~, so this
    route carries full Hermitian precision where the plain eigvals of the
    non-Hermitian product lose half the digits.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidState(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if not np.all(np.isfinite(rho.view(float))):
        raise InvalidState("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > _STATE_TOL:
        raise InvalidState("density matrix is not Hermitian within 1e-10")
    if abs(np.trace(rho).real - 1.0) > _STATE_TOL or abs(np.trace(rho).imag) > _STATE_TOL:
        raise InvalidState("density matrix trace differs from 1 beyond 1e-10")
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2.0)
    if w.min() < -_STATE_TOL:
        raise InvalidState("density matrix has a negative eigenvalue beyond 1e-10")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    x = root @ _SY_SY @ root.conj()
    lam = np.linalg.svd(x, compute_uv=False)  # descending
    c = lam[0] - lam[1:].sum()
    return min(max(c, 0.0), 1.0)


def _radicand(value: float) -> float:
    # quadrature noise may push the radicand slightly negative
    if value < -1e-9:
        raise NegativeRadicand(
            f"concurrence radicand {value:.3e} is negative beyond noise tolerance"
        )
    return max(value, 0.0)


def c1(p: ChainParams, t: Thermal, quad: QuadSpec | None = None) -> ConcurrencePair:
    """Nearest-neighbour concurrence on each sublattice."""
    m = magnetization(p, t, quad)
    ms = staggered_magnetization(p, t, quad)
    g = g1(p, t, quad)
    out = {}
    for parity in ("odd", "even"):
        s = parity_sign(parity)
        gp = g.uniform + s * g.staggered
        zz = (m + s * ms) * (m - s * ms) - gp * gp
        rad = _radicand((1.0 + zz) ** 2 - (2.0 * m) ** 2)
        out[parity] = max(0.0, abs(gp) - 0.5 * math.sqrt(rad))
    return ConcurrencePair(odd=out["odd"], even=out["even"])


def c2(p: ChainParams, t: Thermal, quad: QuadSpec | None = None) -> ConcurrencePair:
    """Next-nearest-neighbour concurrence; sites l and l+2 share parity.

    The transverse spin correlator at distance 2 is the string-ordered
    2x2 determinant of contractions through the intermediate site l+1 of
    opposite parity: g_{l,1} g_{l+1,1} - g_{l,2} <sz_{l+1}>.  Every
    factor, including the distance-2 contraction, is parity-resolved.
    """
    m = magnetization(p, t, quad)
    ms = staggered_magnetization(p, t, quad)
    g = g1(p, t, quad)
    g2 = g_even(p, t, 2, quad)
    out = {}
    for parity in ("odd", "even"):
        s = parity_sign(parity)
        g_l = g.uniform + s * g.staggered
        g_mid = g.uniform - s * g.staggered
        g2_l = g2.uniform + s * g2.staggered
        sz_l = m + s * ms
        sz_mid = m - s * ms
        coherence = abs(g_l * g_mid - g2_l * sz_mid)
        zz = sz_l * sz_l - g2_l * g2_l
        rad = _radicand((1.0 + zz) ** 2 - (2.0 * sz_l) ** 2)
        out[parity] = max(0.0, coherence - 0.5 * math.sqrt(rad))
    return ConcurrencePair(odd=out["odd"], even=out["even"])


def witness(p: ChainParams, t: Thermal, quad: QuadSpec | None = None) -> WitnessValue:
    """Thermodynamic entanglement witness from the energy density."""
    den = abs(p.J - p.j) + abs(p.J + p.j)
    if den == 0:
        raise DegenerateCoupling("witness bound requires J or j nonzero")
    u = internal_energy(p, t, quad)
    m = magnetization(p, t, quad)
    ms = staggered_magnetization(p, t, quad)
    lhs = 4.0 * abs(u + p.B * m + p.b * ms) / den
    return WitnessValue(lhs=lhs, detected=lhs > 1.0)
