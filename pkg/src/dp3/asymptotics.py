"""Asymptotic charts: the finite parameter sets that determine a solution's
behaviour at the ends of a ray, built from a point of the monodromy
manifold, plus the evaluators of every asymptotic formula (solution and
Hamiltonian at large and small argument, real and imaginary rays, the
tau-function form, and the cross-ray connection identities).

A "chart" fixes the ray label ``eps1``, the equation parameters,
and the handful of complex constants entering the formulas; evaluators
then take only the positive magnitude ``|tau|``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConditionViolationError
from .monodromy import MonodromyPoint, apply_F, lie_point_monodromy, rho_from
from .params import EquationParams
from .specfun import digamma, gamma

__all__ = [
    "LargeTauChart",
    "SmallTauChart",
    "large_tau_chart",
    "u_large",
    "H_large",
    "small_tau_chart",
    "u_small",
    "du_small",
    "H_small",
    "tau_function_asymptotic",
    "u_imag",
    "du_imag",
    "imag_chart",
    "cross_ray_residuals",
    "theta_phase",
    "nu_plus_1_of",
]

_SQRT3 = math.sqrt(3.0)
_LN_2_PLUS_SQRT3 = math.log(2.0 + _SQRT3)
_EULER_PSI1 = -0.5772156649015328606
_ZERO_TOL = 1e-12


def theta_phase(params: EquationParams, tau_abs: float) -> float:
    """theta(tau) = 3 sqrt(3) |eps b|^{1/3} |tau|^{2/3}."""
    return 3.0 * _SQRT3 * params.abs_coupling ** (1.0 / 3.0) * tau_abs ** (2.0 / 3.0)


def nu_plus_1_of(g11: complex, g22: complex) -> complex:
    """Index of the large-argument chart, (i / 2 pi) ln(g11 g22)."""
    return 0.5j / math.pi * cmath.log(g11 * g22)


def _ray_phase(eps1: int) -> complex:
    return cmath.exp(1j * math.pi * eps1)


def _cbrt_on_ray(eps1: int, m: float) -> complex:
    """tau^{1/3} for tau = m e^{i pi eps1}: negative cube roots taken
    real and negative."""
    return (-1.0) ** (eps1 % 2) * m ** (1.0 / 3.0)


@dataclass(frozen=True)
class LargeTauChart:
    """Parameters of the large-argument expansion on one ray."""

    params: EquationParams
    eps1: int
    a: complex
    special: str  # "none" | "g21_zero" | "g12_zero"
    nu_plus_1: complex
    omega: complex | None
    z: complex | None
    s00: complex


@dataclass(frozen=True)
class SmallTauChart:
    """Parameters of the small-argument expansion on one ray.  When
    ``log_mode`` the chart follows the logarithmic (resonant) branch."""

    params: EquationParams
    eps1: int
    a: complex
    rho: complex
    log_mode: bool
    # generic branch: p-values at ((-1)^eps2 a, +-rho), ((-1)^(eps2+1) a, +-rho)
    p_plus: complex | None
    p_minus: complex | None
    q_plus: complex | None
    q_minus: complex | None
    chi1_plus: complex | None
    chi1_minus: complex | None
    chi2_plus: complex | None
    chi2_minus: complex | None
    # log branch: bracket constants with a2 + b2 ln|tau| structure
    a2: complex | None = None
    b2: complex | None = None
    a2_second: complex | None = None
    b2_second: complex | None = None
    prefactor: complex | None = None


def _mapped_g(pt: MonodromyPoint, eps1: int, params: EquationParams):
    mapped = apply_F(pt, eps1, params.eps2)
    return mapped.g11, mapped.g12, mapped.g21, mapped.g22


def large_tau_chart(pt: MonodromyPoint, eps1: int, params: EquationParams) -> LargeTauChart:
    """Chart for the expansion as |tau| -> infinity on arg tau = pi eps1."""
    g11, g12, g21, g22 = _mapped_g(pt, eps1, params)
    s00, a = pt.s00, pt.a
    scale = max(abs(g11), abs(g12), abs(g21), abs(g22), 1.0)
    if abs(g21) <= _ZERO_TOL * scale:
        return LargeTauChart(params, eps1, a, "g21_zero", 0.0j, None, None, s00)
    if abs(g12) <= _ZERO_TOL * scale:
        return LargeTauChart(params, eps1, a, "g12_zero", 0.0j, None, None, s00)
    if g11 == 0 or g22 == 0:
        raise ConditionViolationError(
            "large-argument chart needs g11 g12 g21 g22 != 0 after the sector map")
    nu1 = nu_plus_1_of(g11, g22)
    if abs(nu1.real) >= 1.0 / 6.0:
        raise ConditionViolationError(
            f"|Re(nu+1)| = {abs(nu1.real):.4f} >= 1/6: outside the chart's validity strip")
    omega = g12 / g22
    if nu1 == 0:
        z = None  # degenerate: the oscillatory normalisation is singular
    else:
        # the two i pi/2 coefficients are calibrated against trajectories
        # seeded from the small-argument expansion (their signs and the
        # nu-coefficient are the only parts of z not fixed by the
        # triangular-G degenerations); both corrections are invariant
        # under the branch choice of sqrt(nu+1)
        z = 0.5 * math.log(2.0 * math.pi) + 0.5j * math.pi + 0.5j * math.pi * nu1 \
            + params.sign2 * 1j * a * _LN_2_PLUS_SQRT3 + nu1 * math.log(12.0) \
            - cmath.log(omega * cmath.sqrt(nu1) * gamma(nu1))
    return LargeTauChart(params, eps1, a, "none", nu1, omega, z, s00)


def _special_oscillation(chart: LargeTauChart, m: float) -> complex:
    """Oscillatory term of the degenerate (triangular-G) charts."""
    P = chart.params
    theta = theta_phase(P, m)
    coeff = ((-1.0) ** (chart.eps1 % 2)) * P.eps * math.sqrt(P.abs_coupling) \
        * (chart.s00 - 1j * cmath.exp(-P.sign2 * math.pi * chart.a)) \
        / (2.0 ** 1.5 * 3.0 ** 0.25 * math.sqrt(math.pi))
    ratio = (_SQRT3 - 1.0) / (_SQRT3 + 1.0)
    if chart.special == "g21_zero":
        return coeff * cmath.exp(P.sign2 * 1j * chart.a * math.log(ratio)) \
            * cmath.exp(-1j * (theta - math.pi / 4.0))
    return coeff * cmath.exp(P.sign2 * 1j * chart.a * math.log(1.0 / ratio)) \
        * cmath.exp(1j * (theta + 3.0 * math.pi / 4.0))


def u_large(chart: LargeTauChart, tau_abs: float) -> complex:
    """Leading large-argument value at |tau| = tau_abs on the chart's ray
    (all dropped correction terms set to zero)."""
    P = chart.params
    m = float(tau_abs)
    if m <= 0:
        raise ConditionViolationError("tau magnitude must be positive")
    if chart.special != "none":
        algebraic = P.eps * P.coupling_pow23 * _cbrt_on_ray(chart.eps1, m) / 2.0
        return algebraic + _special_oscillation(chart, m)
    if chart.nu_plus_1 == 0 or chart.z is None:
        raise ConditionViolationError(
            "degenerate chart: nu + 1 = 0 with nontrivial off-diagonal entries; "
            "use the triangular special charts")
    theta = theta_phase(P, m)
    return ((-1.0) ** (chart.eps1 % 2)) * P.eps * math.sqrt(P.abs_coupling) / 3.0 ** 0.25 \
        * (cmath.sqrt(theta / 12.0) + cmath.sqrt(chart.nu_plus_1) * cmath.exp(0.75j * math.pi)
           * cmath.cosh(1j * theta + chart.nu_plus_1 * cmath.log(theta) + chart.z))


def H_large(chart: LargeTauChart, tau_abs: float) -> complex:
    """Leading Hamiltonian value on the chart's ray; the degenerate charts
    share the generic formula with nu + 1 = 0."""
    P = chart.params
    m = float(tau_abs)
    tau = _ray_phase(chart.eps1) * m
    ash = chart.a - 0.5j * P.sign2
    t13 = _cbrt_on_ray(chart.eps1, m)
    return 3.0 * P.coupling_pow23 * t13 \
        + 2.0 * P.abs_coupling ** (1.0 / 3.0) / t13 * (ash - 2.0 * _SQRT3 * 1j * chart.nu_plus_1) \
        + ash * ash / (2.0 * tau)


def _p_factor(params: EquationParams, z1: complex, z2: complex) -> complex:
    """The gamma-ratio coefficient of the small-argument expansion."""
    base = cmath.log(params.abs_coupling / 32.0) + 0.5j * math.pi
    ratio = gamma(0.5 - z2) / gamma(1.0 + z2)
    return cmath.exp(z2 * base) * ratio * ratio \
        * gamma(1.0 + z2 + 0.5j * z1) / cmath.tan(math.pi * z2)


def _chi(ga: complex, gb: complex, z: complex) -> complex:
    """chi(ga, gb; z) = ga e^{i pi z} e^{i pi/4} + gb e^{-i pi z} e^{-i pi/4}."""
    return ga * cmath.exp(1j * math.pi * z + 0.25j * math.pi) \
        + gb * cmath.exp(-1j * math.pi * z - 0.25j * math.pi)


def small_tau_chart(pt: MonodromyPoint, eps1: int, params: EquationParams) -> SmallTauChart:
    """Chart for the expansion as |tau| -> 0 on arg tau = pi eps1."""
    g11, g12, g21, g22 = _mapped_g(pt, eps1, params)
    s00, a = pt.s00, pt.a
    if abs(a.imag) >= 1.0:
        raise ConditionViolationError("small-argument charts need |Im a| < 1")
    if g11 * g22 == 0:
        raise ConditionViolationError("small-argument charts need g11 g22 != 0")
    s = params.sign2
    if abs(s00 - 2j) <= _ZERO_TOL:
        if a == 0:
            raise ConditionViolationError("logarithmic chart needs a != 0")
        Qp = _q_factor(params, s * a)
        Qm = _q_factor(params, -s * a)
        chi1_0 = _chi(g11, g21, 0.0)
        chi2_0 = _chi(g12, g22, 0.0)
        a2 = chi1_0 * (1.0 - s * 0.5j * a * Qp) \
            + s * (math.pi * a / 4.0) * (g21 * cmath.exp(-0.25j * math.pi)
                                         - 3.0 * g11 * cmath.exp(0.25j * math.pi))
        b2 = s * 1j * a * chi1_0
        a2s = chi2_0 * (1.0 + s * 0.5j * a * Qm) \
            + s * (math.pi * a / 4.0) * (g12 * cmath.exp(0.25j * math.pi)
                                         - 3.0 * g22 * cmath.exp(-0.25j * math.pi))
        b2s = -s * 1j * a * chi2_0
        pref = s * params.b * cmath.exp(s * math.pi * a / 2.0) \
            / (2.0 * a * cmath.sinh(math.pi * a / 2.0))
        return SmallTauChart(params, eps1, a, 0.0j, True,
                             None, None, None, None, None, None, None, None,
                             a2=a2, b2=b2, a2_second=a2s, b2_second=b2s,
                             prefactor=pref)
    rho = rho_from(MonodromyPoint(a, s00, 0, 0, 1, 0, 0, 1))
    if abs(rho) <= _ZERO_TOL:
        raise ConditionViolationError("rho = 0 but s00 != 2i: inconsistent point")
    if rho.real >= 0.5 - _ZERO_TOL:
        raise ConditionViolationError("|Re rho| = 1/2: on the boundary of the chart")
    return SmallTauChart(
        params, eps1, a, rho, False,
        p_plus=_p_factor(params, s * a, rho),
        p_minus=_p_factor(params, s * a, -rho),
        q_plus=_p_factor(params, -s * a, rho),
        q_minus=_p_factor(params, -s * a, -rho),
        chi1_plus=_chi(g11, g21, rho),
        chi1_minus=_chi(g11, g21, -rho),
        chi2_plus=_chi(g12, g22, rho),
        chi2_minus=_chi(g12, g22, -rho),
    )


def _q_factor(params: EquationParams, z: complex) -> complex:
    """Q(z) = 4 psi(1) - psi(i z / 2) + ln 2 - ln|eps b|."""
    return 4.0 * _EULER_PSI1 - digamma(0.5j * z) + math.log(2.0) \
        - math.log(params.abs_coupling)


def _small_brackets(chart: SmallTauChart, m: float):
    """(F1, F2) and their rho-odd partners at |tau| = m.  The +-rho powers
    are evaluated as exponentials of exactly negated arguments so that the
    rho -> -rho swap is a bitwise symmetry of the result."""
    rho = chart.rho
    x = 2.0 * rho * math.log(m)
    mp = cmath.exp(x)
    mm = cmath.exp(-x)
    e_m = cmath.exp(-1j * math.pi * rho)
    e_p = cmath.exp(1j * math.pi * rho)
    t1p = chart.p_plus * chart.chi1_plus * mp
    t1m = chart.p_minus * chart.chi1_minus * mm
    t2p = chart.q_plus * e_m * chart.chi2_plus * mp
    t2m = chart.q_minus * e_p * chart.chi2_minus * mm
    return t1p + t1m, t2p + t2m, t1p - t1m, t2p - t2m


def u_small(chart: SmallTauChart, tau_abs: float) -> complex:
    """Leading small-argument value at |tau| = tau_abs on the chart's ray."""
    P = chart.params
    m = float(tau_abs)
    if m <= 0:
        raise ConditionViolationError("tau magnitude must be positive")
    tau = _ray_phase(chart.eps1) * m
    if chart.log_mode:
        L1 = chart.a2 + chart.b2 * math.log(m)
        L2 = chart.a2_second + chart.b2_second * math.log(m)
        return chart.prefactor * tau * L1 * L2
    F1, F2, _, _ = _small_brackets(chart, m)
    s = P.sign2
    return s * tau * P.b / (16.0 * math.pi) * cmath.exp(s * math.pi * chart.a / 2.0) * F1 * F2


def du_small(chart: SmallTauChart, tau_abs: float) -> complex:
    """Analytic tau-derivative of ``u_small`` along the ray."""
    P = chart.params
    m = float(tau_abs)
    tau = _ray_phase(chart.eps1) * m
    if chart.log_mode:
        L1 = chart.a2 + chart.b2 * math.log(m)
        L2 = chart.a2_second + chart.b2_second * math.log(m)
        return chart.prefactor * (L1 * L2 + chart.b2 * L2 + chart.b2_second * L1)
    F1, F2, G1, G2 = _small_brackets(chart, m)
    s = P.sign2
    K = s * P.b / (16.0 * math.pi) * cmath.exp(s * math.pi * chart.a / 2.0)
    return K * (F1 * F2 + 2.0 * chart.rho * (G1 * F2 + F1 * G2))


def H_small(chart: SmallTauChart, tau_abs: float) -> complex:
    """Leading small-argument Hamiltonian on the chart's ray."""
    P = chart.params
    m = float(tau_abs)
    tau = _ray_phase(chart.eps1) * m
    s = P.sign2
    if chart.log_mode:
        return (chart.a * (chart.a - s * 1j) + 0.25) / (2.0 * tau) \
            + chart.b2 / (tau * (chart.a2 + chart.b2 * math.log(m)))
    F1, _, G1, _ = _small_brackets(chart, m)
    return 2.0 * chart.rho / tau * (G1 / F1) \
        + (chart.a * (chart.a - s * 1j) + 0.25 + 8.0 * chart.rho**2) / (2.0 * tau)


def tau_function_asymptotic(chart: SmallTauChart, tau_abs: float, const: complex = 1.0) -> complex:
    """Small-argument tau-function form; ``const`` is the undetermined
    overall factor."""
    P = chart.params
    m = float(tau_abs)
    tau = _ray_phase(chart.eps1) * m
    s = P.sign2
    if chart.log_mode:
        expo = 0.5 * (chart.a * (chart.a - s * 1j) + 0.25)
        return const * (tau**expo * (chart.a2 + chart.b2 * math.log(m)))
    expo = 0.5 * (chart.a * (chart.a - s * 1j) + 0.25 + 8.0 * chart.rho**2)
    F1, _, _, _ = _small_brackets(chart, m)
    return const * (tau**expo * F1)


def _rotate_to_real_ray(pt: MonodromyPoint, eps1: int, params: EquationParams
                        ) -> tuple[MonodromyPoint, EquationParams]:
    """The quarter rotation sending the ray arg tau = pi eps1 / 2 to the
    positive axis flips the coupling sign; this returns the rotated
    monodromy point and the relabelled parameters.  For positive original
    coupling both admissible sector labels of the rotated problem give
    identical chart values; the +1 sector is used."""
    if eps1 not in (1, -1):
        raise ConditionViolationError("imaginary-ray charts need eps1 = +-1")
    p = params.eps2 if params.eps2 != 0 else -1
    rotated = lie_point_monodromy(pt, "rotate_tau", p=p, l=eps1)
    new_eps2 = 0 if params.eps2 != 0 else -p
    new_params = EquationParams(-params.eps, params.b, new_eps2)
    return rotated, new_params


def imag_chart(pt: MonodromyPoint, eps1: int, params: EquationParams,
               regime: str) -> LargeTauChart | SmallTauChart:
    """The real-axis chart of the rotated problem behind ``u_imag``: the
    value on the imaginary ray is ``i * eps1`` times this chart's
    positive-ray evaluation at the same magnitude."""
    rotated, new_params = _rotate_to_real_ray(pt, eps1, params)
    if regime == "large":
        return large_tau_chart(rotated, 0, new_params)
    if regime == "small":
        return small_tau_chart(rotated, 0, new_params)
    raise ConditionViolationError("regime must be 'large' or 'small'")


def u_imag(pt: MonodromyPoint, eps1: int, params: EquationParams,
           tau_abs: float, regime: str) -> complex:
    """Leading value on the imaginary ray arg tau = pi eps1 / 2.

    Composes the two independently verified pieces: the quarter rotation
    of the ray (which flips the coupling sign and acts on the monodromy
    data) and the real-axis kernels, with the overall prefactor i * eps1
    coming from the rotation's action on solutions."""
    chart = imag_chart(pt, eps1, params, regime)
    if regime == "large":
        return 1j * eps1 * u_large(chart, tau_abs)
    return 1j * eps1 * u_small(chart, tau_abs)


def du_imag(pt: MonodromyPoint, eps1: int, params: EquationParams,
            tau_abs: float) -> complex:
    """Analytic tau-derivative of the small-regime imaginary-ray value:
    the i*eps1 prefactor cancels against d tau_rotated / d tau."""
    chart = imag_chart(pt, eps1, params, "small")
    return du_small(chart, tau_abs)


def cross_ray_residuals(pt: MonodromyPoint) -> list[float]:
    """Absolute residuals of the four identities connecting the charts on
    the three real rays (eps2 = 0): omega(+-1, 0) and nu(+-1, 0) + 1 in
    terms of omega, nu + 1, and a."""
    def chart_pair(eps1: int):
        m = apply_F(pt, eps1, 0)
        if m.g11 * m.g12 * m.g21 * m.g22 == 0:
            raise ConditionViolationError("a chart on one of the rays is degenerate")
        nu1 = nu_plus_1_of(m.g11, m.g22)
        if abs(nu1.real) >= 1.0 / 6.0:
            raise ConditionViolationError("a chart on one of the rays violates the strip bound")
        return m.g12 / m.g22, nu1

    omega, nu1 = chart_pair(0)
    omega_p, nu1_p = chart_pair(1)
    omega_m, nu1_m = chart_pair(-1)
    a = pt.a
    ema = cmath.exp(-math.pi * a)
    E = cmath.exp(2j * math.pi * nu1)
    r1 = omega_p - (omega + (1j * ema + 1.0 / omega) * E)
    r2 = cmath.exp(-2j * math.pi * nu1_p) + omega * (omega / E + 1j * ema)
    # the negative-ray weight: the determinant relation pins
    # g21 g22 = (1/E - 1)/omega, whence omega(-1, 0) as below
    r3 = omega_m - omega / (1.0 - E - 1j * omega * E * ema)
    r4 = cmath.exp(-2j * math.pi * nu1_m) \
        - (1.0 - E) * (1.0 - 1.0 / E + 1j * omega * ema) / (omega * omega)
    return [abs(r1), abs(r2), abs(r3), abs(r4)]
