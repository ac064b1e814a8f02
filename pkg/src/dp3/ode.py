"""Numerical side of the nonlinear equation: the right-hand side, adaptive
integration along rays, Hamiltonian evaluation in all three coordinate
systems, the canonical-variable and matrix-entry conversions, and
finite-difference residual checks.

The equation itself is

    u'' = (u')^2/u - u'/tau + (-8 eps u^2 + 2 a b)/tau + b^2/u,

singular exactly at u = 0 and tau = 0.  All integration happens along a
fixed ray in the complex tau plane, parametrised by s = |tau|.
"""

from __future__ import annotations

import cmath
import io
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConditionViolationError, IntegrationFailureError, SingularityError
from .params import EquationParams

__all__ = [
    "SolutionState",
    "Trajectory",
    "HamiltonianSplit",
    "dp3_rhs",
    "integrate_ray",
    "hamiltonian_u",
    "hamiltonian_pq",
    "hamiltonian_system_rhs",
    "p_from_u",
    "sigma_and_f",
    "to_abcd",
    "hamiltonian_abcd",
    "residual_on_grid",
    "algebraic_solution",
    "trajectory_to_csv",
]

_TOL_RANGE = (1e-13, 1e-6)


@dataclass(frozen=True)
class SolutionState:
    """One sample (tau, u, u', optionally phi) of a solution."""

    tau: complex
    u: complex
    du: complex
    phi: complex | None = None


@dataclass(frozen=True)
class HamiltonianSplit:
    """Hamiltonian value and its origin/infinity parts,
    H = H0 + Hinf with H0 - Hinf = -(a - i/2)^2 / (2 tau)."""

    H: complex
    H0: complex
    Hinf: complex


@dataclass
class Trajectory:
    """Samples of a solution along a ray, with per-sample Hamiltonian."""

    params: EquationParams
    a: complex
    tau: np.ndarray  # complex, strictly increasing |tau| along the ray
    u: np.ndarray
    du: np.ndarray
    phi: np.ndarray | None
    H: np.ndarray

    @property
    def ray_phase(self) -> complex:
        return self.tau[0] / abs(self.tau[0])

    def states(self) -> list[SolutionState]:
        phis = self.phi if self.phi is not None else [None] * len(self.tau)
        return [
            SolutionState(complex(t), complex(u), complex(du), None if p is None else complex(p))
            for t, u, du, p in zip(self.tau, self.u, self.du, phis)
        ]


def _check_state(tau: complex, u: complex):
    if u == 0:
        raise SingularityError("u = 0 is a singular point of the equation")
    if tau == 0:
        raise SingularityError("tau = 0 is a singular point of the equation")


def dp3_rhs(state: SolutionState, a: complex, params: EquationParams) -> tuple[complex, complex]:
    """(u', u'') at the given state."""
    tau, u, du = state.tau, state.u, state.du
    _check_state(tau, u)
    ddu = du * du / u - du / tau + (-8.0 * params.eps * u * u + 2.0 * a * params.b) / tau \
        + params.b**2 / u
    return du, ddu


def hamiltonian_u(state: SolutionState, a: complex, params: EquationParams) -> complex:
    """Hamiltonian in terms of (tau, u, u'); the eps2 = +-1 sectors replace
    i/2 by (-1)**eps2 i/2 in the two a-dependent terms."""
    tau, u, du = state.tau, state.u, state.du
    _check_state(tau, u)
    ash = a - 0.5j * params.sign2
    return ash * params.b / u + ash * ash / (2.0 * tau) \
        + (tau / (4.0 * u * u)) * (du * du + params.b**2) + 4.0 * params.eps * u


def hamiltonian_pq(p: complex, q: complex, tau: complex, a: complex,
                   params: EquationParams, eps1_h: int = -1) -> complex:
    """Canonical-variables Hamiltonian H_{eps1_h}(p, q; tau).  The formal
    constant is ``ai + (-1)^{eps2}/2``, mirroring the sector form of
    ``hamiltonian_u`` (the whole channel is covariant in that constant)."""
    k = a * 1j + 0.5 * params.sign2
    return p * p * q * q / tau - 2.0 * eps1_h * p * q * k / tau \
        + 4.0 * params.eps * q + 1j * params.b * p + k * k / (2.0 * tau)


def hamiltonian_system_rhs(p: complex, q: complex, tau: complex, a: complex,
                           params: EquationParams, eps1_h: int = -1) -> tuple[complex, complex]:
    """Hamilton's equations: (dp/dtau, dq/dtau) = (-dH/dq, +dH/dp)."""
    if tau == 0:
        raise SingularityError("tau = 0 is a singular point of the system")
    k = a * 1j + 0.5 * params.sign2
    dp = -(2.0 * p * p * q / tau - 2.0 * eps1_h * p * k / tau + 4.0 * params.eps)
    dq = 2.0 * p * q * q / tau - 2.0 * eps1_h * q * k / tau + 1j * params.b
    return dp, dq


def p_from_u(state: SolutionState, a: complex, params: EquationParams,
             eps1_h: int = -1) -> complex:
    """Conjugate momentum for q = u (same sector constant as the
    Hamiltonian channel)."""
    tau, u, du = state.tau, state.u, state.du
    _check_state(tau, u)
    k = a * 1j + 0.5 * params.sign2
    return tau * (du - 1j * params.b) / (2.0 * u * u) + k * eps1_h / u


def sigma_and_f(state: SolutionState, a: complex, params: EquationParams) -> tuple[complex, complex]:
    """(sigma, f) built on the eps1_h = -1 channel:
    f = p q / 2 and sigma = (p q - eps1 (a i + 1/2 - eps1/2))^2
    + tau (4 eps q + i b p).

    This channel is sector-free (its defining equations never reference
    the coupling's argument), so the plain constant ``ai + 1/2`` is used
    regardless of eps2."""
    eps1_h = -1
    tau, u, du = state.tau, state.u, state.du
    _check_state(tau, u)
    p = tau * (du - 1j * params.b) / (2.0 * u * u) + (a * 1j + 0.5) * eps1_h / u
    q = u
    f = p * q / 2.0
    sigma = (p * q - eps1_h * (a * 1j + 0.5 - eps1_h / 2.0)) ** 2 \
        + tau * (4.0 * params.eps * q + 1j * params.b * p)
    return sigma, f


def to_abcd(state: SolutionState, a: complex, params: EquationParams
            ) -> tuple[complex, complex, complex, complex]:
    """Matrix-entry functions (A, B, C, D) built from (u, u', phi);
    A' and B' are expanded through u' and phi' = 2a/tau + b/u."""
    if state.phi is None:
        raise ConditionViolationError("to_abcd requires a state with phi")
    tau, u, du, phi = state.tau, state.u, state.du, state.phi
    _check_state(tau, u)
    eiphi = cmath.exp(1j * phi)
    dphi = 2.0 * a / tau + params.b / u
    A = (u / tau) * eiphi
    B = -(u / tau) / eiphi
    dA = eiphi * (du / tau - u / tau**2 + 1j * (u / tau) * dphi)
    dB = -(du / tau - u / tau**2 - 1j * (u / tau) * dphi) / eiphi
    C = (params.eps * tau / (4.0 * u)) * dA
    D = -(params.eps * tau / (4.0 * u)) * dB
    return A, B, C, D


def hamiltonian_abcd(A: complex, B: complex, C: complex, D: complex, tau: complex,
                     a: complex, params: EquationParams,
                     sqrt_ab: complex | None = None) -> HamiltonianSplit:
    """Hamiltonian from the matrix entries, split into origin/infinity
    parts.  ``sqrt_ab`` fixes the branch of sqrt(-A B); it must equal
    u/(eps tau) when the entries come from a solution (pass it explicitly;
    the principal root is only a fallback)."""
    if A * B == 0:
        raise SingularityError("A B = 0 is outside the parametrised stratum")
    if sqrt_ab is None:
        sqrt_ab = cmath.sqrt(-A * B)
    k = a * 1j + 0.5
    H = (k + 2.0 * tau * A * D / sqrt_ab) ** 2 / (2.0 * tau) + 4.0 * tau * sqrt_ab \
        - 1j * params.eps * params.b * D / B + 2.0 * tau * C * D + A * D / sqrt_ab
    if params.sign2 != 1:
        # the matrix-entry line is written in the plain convention; the
        # sector form differs by the a-linear terms only
        u = params.eps * tau * sqrt_ab
        ash_s = a - 0.5j * params.sign2
        ash_1 = a - 0.5j
        H += (ash_s - ash_1) * params.b / u + (ash_s**2 - ash_1**2) / (2.0 * tau)
    ash = a - 0.5j * params.sign2
    H0 = 0.5 * (H - ash * ash / (2.0 * tau))
    return HamiltonianSplit(H=H, H0=H0, Hinf=H - H0)


def algebraic_solution(tau: complex, params: EquationParams,
                       with_phi: bool = False, phi0: complex = 0.0) -> SolutionState:
    """The exact cube-root solution at ``a = 0``: ``u = b^{2/3} tau^{1/3} /
    (2 eps)`` with the real-cube-root convention, plus its derivative (and
    phi on the positive ray when requested)."""
    c = params.b_pow23 / (2.0 * params.eps)
    t13 = _ray_cbrt(tau)
    u = c * t13
    du = c * t13 / (3.0 * tau)
    phi = None
    if with_phi:
        # phi' = b/u for a = 0 integrates to (3 b / (2 c)) tau^{2/3}
        phi = phi0 + 1.5 * (params.b / c) * t13 * t13
    return SolutionState(tau=tau, u=u, du=du, phi=phi)


def _ray_cbrt(tau: complex) -> complex:
    """Cube root along a ray: real cube root on the real axis (negative
    for negative tau), principal branch elsewhere."""
    if tau.imag == 0.0:
        return complex(np.cbrt(tau.real))
    return tau ** (1.0 / 3.0)


def integrate_ray(initial: SolutionState, a: complex, params: EquationParams,
                  tau_end: float, tol: float = 1e-10,
                  dense_at: np.ndarray | None = None,
                  u_floor: float = 1e-8, u_ceil: float = 1e8) -> Trajectory:
    """Integrate from ``initial`` along its ray until ``|tau| = tau_end``
    with the Dormand-Prince 5(4) embedded pair (scipy's RK45), stopping
    with a located failure if ``|u|`` leaves ``[u_floor, u_ceil]``.

    ``dense_at`` selects output magnitudes |tau| (default: accepted steps).
    ``phi`` is advanced by the same stepper when present on the seed.
    """
    if not (_TOL_RANGE[0] <= tol <= _TOL_RANGE[1]):
        raise ConditionViolationError(f"tol must lie in [{_TOL_RANGE[0]}, {_TOL_RANGE[1]}]")
    s0 = abs(initial.tau)
    if s0 == 0:
        raise SingularityError("cannot start integration at tau = 0")
    phase = initial.tau / s0
    s1 = float(tau_end)
    if s1 <= 0 or s1 == s0:
        raise ConditionViolationError("tau_end must be a positive magnitude distinct from |tau0|")
    with_phi = initial.phi is not None

    def rhs(s, y):
        tau = phase * s
        u, du = y[0], y[1]
        if u == 0:
            raise SingularityError(f"u vanished at |tau| = {s}")
        _, ddu = dp3_rhs(SolutionState(tau, u, du), a, params)
        out = [phase * du, phase * ddu]
        if with_phi:
            out.append(phase * (2.0 * a / tau + params.b / u))
        return np.asarray(out, dtype=complex)

    def too_small(s, y):
        return np.log(abs(y[0]) / u_floor) if y[0] != 0 else -1.0

    def too_big(s, y):
        return np.log(abs(y[0]) / u_ceil)

    too_small.terminal = True
    too_big.terminal = True

    y0 = [initial.u, initial.du] + ([initial.phi] if with_phi else [])
    sol = solve_ivp(rhs, (s0, s1), np.asarray(y0, dtype=complex), method="RK45",
                    rtol=tol, atol=tol * 1e-3, dense_output=dense_at is not None,
                    events=(too_small, too_big))
    if sol.status == 1:  # terminated by an event: approached a zero or pole
        where = min((t[-1] for t in sol.t_events if len(t)), default=sol.t[-1])
        raise IntegrationFailureError(
            f"|u| left [{u_floor}, {u_ceil}] near |tau| = {where:.6g}; "
            "the ray hits a zero or pole of the solution", tau_abs=float(where))
    if not sol.success:
        raise IntegrationFailureError(
            f"integrator stalled near |tau| = {sol.t[-1]:.6g}", tau_abs=float(sol.t[-1]))

    if dense_at is not None:
        s_out = np.asarray(dense_at, dtype=float)
        y_out = sol.sol(s_out)
    else:
        s_out, y_out = sol.t, sol.y
    tau_arr = phase * s_out
    u_arr, du_arr = y_out[0], y_out[1]
    phi_arr = y_out[2] if with_phi else None
    H = np.array([
        hamiltonian_u(SolutionState(t, u, du), a, params)
        for t, u, du in zip(tau_arr, u_arr, du_arr)
    ])
    return Trajectory(params=params, a=a, tau=tau_arr, u=u_arr, du=du_arr,
                      phi=phi_arr, H=H)


def residual_on_grid(tau: np.ndarray, u: np.ndarray, a: complex,
                     params: EquationParams) -> float:
    """Max interior residual of the equation by second-order central
    differences over >= 5 equally spaced samples of the ray parameter."""
    tau = np.asarray(tau, dtype=complex)
    u = np.asarray(u, dtype=complex)
    if len(tau) < 5:
        raise ConditionViolationError("need at least 5 samples")
    s = np.abs(tau)
    h = np.diff(s)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise ConditionViolationError("samples must be equally spaced in |tau|")
    phase = tau[0] / s[0]
    if not np.allclose(tau / s, phase, rtol=1e-12, atol=1e-300):
        raise ConditionViolationError("samples must lie on one ray")
    h0 = h[0]
    du = (u[2:] - u[:-2]) / (2.0 * h0 * phase)
    ddu = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h0 * phase) ** 2
    ti, ui = tau[1:-1], u[1:-1]
    rhs = du * du / ui - du / ti + (-8.0 * params.eps * ui * ui + 2.0 * a * params.b) / ti \
        + params.b**2 / ui
    return float(np.max(np.abs(ddu - rhs)))


def trajectory_to_csv(traj: Trajectory) -> str:
    """CSV dump: one row per sample, phi columns NaN when untracked."""
    buf = io.StringIO()
    buf.write("tau_re,tau_im,u_re,u_im,du_re,du_im,phi_re,phi_im,H_re,H_im\n")
    phi = traj.phi if traj.phi is not None else np.full(len(traj.tau), complex(np.nan, np.nan))
    for t, u, du, p, h in zip(traj.tau, traj.u, traj.du, phi, traj.H):
        buf.write(f"{t.real:.17g},{t.imag:.17g},{u.real:.17g},{u.imag:.17g},"
                  f"{du.real:.17g},{du.imag:.17g},{p.real:.17g},{p.imag:.17g},"
                  f"{h.real:.17g},{h.imag:.17g}\n")
    return buf.getvalue()
