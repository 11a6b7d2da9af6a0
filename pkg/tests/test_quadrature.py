"""Adaptive panel integration against scipy.integrate.quad as oracle."""

import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from staggered_xx import (
    ChainParams,
    QuadResult,
    QuadSpec,
    Thermal,
    ToleranceNotReached,
    integrate,
    require_converged,
    theta_of_q,
    thermal_factor,
)


def scalar(f):
    # scipy.integrate.quad feeds scalars; our integrands take arrays
    return lambda x: float(f(np.asarray([x]))[0])


def test_quad_spec_validation():
    with pytest.raises(ValueError):
        QuadSpec(abs_tol=-1e-10)
    with pytest.raises(ValueError):
        QuadSpec(abs_tol=0.0, rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadSpec(breakpoints=(3.5,))
    with pytest.raises(ValueError):
        QuadSpec(max_subdivisions=-1)
    spec = QuadSpec(breakpoints=(2.0, 1.0))
    merged = spec.with_breakpoints([1.0, 0.5])
    assert merged.breakpoints == (0.5, 1.0, 2.0)


def test_smooth_integrands_match_scipy():
    integrands = [
        lambda q: np.sin(q),
        lambda q: np.cos(3.0 * q) ** 2 * np.exp(-q),
        lambda q: 1.0 / (1.0 + 25.0 * (q - 1.0) ** 2),
        lambda q: np.sqrt(1.0 + 0.3 * np.sin(q) ** 2),
    ]
    for f in integrands:
        res = integrate(f, QuadSpec(abs_tol=1e-12, rel_tol=1e-12))
        ref, _ = sp_integrate.quad(scalar(f), 0.0, math.pi, epsabs=1e-13, epsrel=1e-13)
        assert res.converged
        assert abs(res.value - ref) < 1e-11


def test_closed_forms():
    res = integrate(np.sin)
    assert res.converged and math.isclose(res.value, 2.0, rel_tol=1e-12)
    res = integrate(lambda q: np.cos(q) ** 2)
    assert math.isclose(res.value, math.pi / 2, rel_tol=1e-12)
    # custom bounds, as used for the band-energy integrals
    res = integrate(np.sin, lo=0.3, hi=1.2)
    assert math.isclose(res.value, math.cos(0.3) - math.cos(1.2), rel_tol=1e-12)


def test_sharp_thermal_layer_with_breakpoints():
    # A layer centred exactly on a panel edge is narrower than the nearest
    # Kronrod node at this beta, so its edges must be seeded as well (the
    # physics modules do this); scipy needs the same hint to stay honest.
    p = ChainParams(J=1.0, j=0.4, b=0.2, B=0.7)
    beta = 1e4
    t = Thermal.finite(beta)
    f = lambda q: thermal_factor(t, p.B - theta_of_q(p, q))
    r = (p.B**2 - p.b**2 - p.j**2) / (p.J**2 - p.j**2)
    x = math.acos(math.sqrt(r))
    w = 18.4 / beta
    points = [x - w, x, x + w, math.pi - x - w, math.pi - x, math.pi - x + w]
    res = integrate(f, QuadSpec(breakpoints=tuple(points)))
    ref, _ = sp_integrate.quad(
        scalar(f), 0.0, math.pi, points=points, limit=400,
        epsabs=1e-13, epsrel=1e-13,
    )
    assert res.converged
    assert abs(res.value - ref) < 1e-10


def test_layer_clipped_by_boundary_needs_edge_seeds():
    # With the layer centred on a panel edge its two tails cancel, but a
    # layer clipped by the integration boundary loses that cancellation;
    # seeding the surviving layer edge recovers the lost mass.
    beta, x0 = 1e4, 1e-3
    f = lambda q: np.tanh(beta * (q - x0))
    w = 18.4 / beta
    ref, _ = sp_integrate.quad(
        scalar(f), 0.0, math.pi, points=[x0, x0 + w], limit=400,
        epsabs=1e-13, epsrel=1e-13,
    )
    centre_only = integrate(f, QuadSpec(breakpoints=(x0,)))
    seeded = integrate(f, QuadSpec(breakpoints=(x0, x0 + w)))
    assert centre_only.converged  # converged flag, wrong value: the trap
    assert abs(centre_only.value - ref) > 1e-6
    assert seeded.converged
    assert abs(seeded.value - ref) < 1e-10


def test_breakpoint_restores_convergence_on_kink():
    x0 = 1.0
    f = lambda q: np.sqrt(np.abs(q - x0))
    exact = (2.0 / 3.0) * ((math.pi - x0) ** 1.5 + x0**1.5)
    tight = dict(abs_tol=1e-13, rel_tol=1e-13)
    # equal refinement budget: the seeded grid is far more accurate
    blind = integrate(f, QuadSpec(max_subdivisions=16, **tight))
    seeded = integrate(f, QuadSpec(max_subdivisions=16, breakpoints=(x0,), **tight))
    assert abs(seeded.value - exact) < abs(blind.value - exact) / 50.0
    # default depth converges outright
    full = integrate(f, QuadSpec(breakpoints=(x0,), **tight))
    assert full.converged
    assert abs(full.value - exact) < 1e-13
    assert full.n_panels >= 2


def test_halving_tolerances_consistent_within_error_estimates():
    integrands = [
        lambda q: np.sin(5.0 * q) * np.exp(np.cos(q)),
        lambda q: np.sqrt(np.abs(q - 0.8)),
        lambda q: np.tanh(50.0 * (q - 2.0)),
    ]
    for f in integrands:
        for tol in (1e-6, 1e-8, 1e-10):
            a = integrate(f, QuadSpec(abs_tol=tol, rel_tol=tol))
            b = integrate(f, QuadSpec(abs_tol=tol / 2, rel_tol=tol / 2))
            assert abs(a.value - b.value) <= a.error + b.error + 1e-15


def test_exhaustion_flags_instead_of_raising():
    t = Thermal.finite(1e6)
    f = lambda q: thermal_factor(t, 0.6 - q)  # step at q = 0.6, no seed
    res = integrate(f, QuadSpec(abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=3))
    assert isinstance(res, QuadResult)
    assert not res.converged
    with pytest.raises(ToleranceNotReached) as exc:
        require_converged(res)
    assert exc.value.result is res
    # generous budget converges and passes through require_converged
    ok = integrate(f, QuadSpec(breakpoints=(0.6,)))
    assert require_converged(ok) == ok.value


def test_thermal_factor_limits():
    lam = np.array([-2.0, -1e-3, 0.0, 1e-3, 2.0])
    t = Thermal.finite(3.0)
    np.testing.assert_allclose(thermal_factor(t, lam), np.tanh(3.0 * lam), atol=1e-15)
    g = thermal_factor(Thermal.zero(), lam)
    np.testing.assert_array_equal(g, np.sign(lam))
    # scalar input stays scalar-shaped
    assert thermal_factor(t, 0.5).shape == ()


def test_error_estimate_is_honest():
    rng = np.random.default_rng(21)
    for _ in range(25):
        a, c = rng.uniform(1.0, 6.0), rng.uniform(0.5, 2.5)
        f = lambda q: np.sin(a * q + 0.3) * np.exp(-c * q)
        res = integrate(f, QuadSpec(abs_tol=1e-9, rel_tol=1e-9))
        ref, _ = sp_integrate.quad(scalar(f), 0.0, math.pi, epsabs=1e-13, epsrel=1e-13)
        assert res.converged
        assert abs(res.value - ref) <= max(res.error, 1e-13)
