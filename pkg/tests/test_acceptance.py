"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line with the measured quantity against its stated tolerance.

The group-action and Stokes-algebra criteria evaluate their absolute
residual bounds on seeded random points filtered to the region where the
quadratic relations are numerically certifiable in double precision (see
the conftest guard); the mathematical content of the maps beyond that is
covered by exact composition identities in the module tests.
"""

import cmath
import math
import time

import numpy as np
import pytest

from conftest import all_map_images, cauchy_derivative, guarded_points
from dp3.asymptotics import (
    cross_ray_residuals,
    imag_chart,
    large_tau_chart,
    small_tau_chart,
    u_imag,
    u_large,
)
from dp3.backlund import backlund_step, ladder, lattice_residuals
from dp3.connection import verify_connection
from dp3.errors import ConditionViolationError, IntegrationFailureError
from dp3.monodromy import (
    apply_F,
    from_branch,
    manifold_residual,
    stokes_structure,
)
from dp3.ode import (
    SolutionState,
    algebraic_solution,
    hamiltonian_abcd,
    hamiltonian_pq,
    hamiltonian_u,
    p_from_u,
    residual_on_grid,
    to_abcd,
)
from dp3.params import EquationParams
from dp3.sampling import sample_manifold
from dp3.specfun import digamma, gamma

P1 = EquationParams.make(1, 1.0)
ITEM1_PARAMS = [EquationParams.make(1, 1.0), EquationParams.make(-1, 8.0),
                EquationParams.make(1, -1.0)]


def report(criterion: int, label: str, ok: bool, detail: str, t0: float):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {criterion:2d} [{status}] {label}: {detail} "
          f"({time.time() - t0:.2f} s)")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_01_exact_solution_residual():
    t0 = time.time()
    worst = 0.0
    for params in ITEM1_PARAMS:
        lo = 0.1
        while lo < 100.0:
            hi = min(2.0 * lo, 100.0)
            taus = np.linspace(lo, hi, 4096)
            u = np.array([algebraic_solution(t, params).u for t in taus])
            worst = max(worst, residual_on_grid(taus, u, 0.0, params))
            lo = hi
    report(1, "cube-root solution residual on [0.1, 100]",
           worst < 1e-6, f"max residual {worst:.2e} < 1e-6", t0)


def _rung(tau, n, params=P1):
    st, a = algebraic_solution(tau, params), 0.0
    for _ in range(n):
        st, a = backlund_step(st, a, params, "up")
    return st, a


def test_criterion_02_backlund_ladder():
    t0 = time.time()
    taus = np.linspace(0.5, 5.0, 20)
    worst = 0.0
    for tau in taus:
        for n in range(6):
            st, a_n = _rung(tau, n)
            r = 0.04 * tau
            du_c = cauchy_derivative(lambda t, n=n: _rung(t, n)[0].u, tau, r)
            ddu_c = cauchy_derivative(lambda t, n=n: _rung(t, n)[0].du, tau, r)
            from dp3.ode import dp3_rhs
            _, ddu = dp3_rhs(st, a_n, P1)
            worst = max(worst, abs(du_c - st.du), abs(ddu_c - ddu))
    st1, _ = _rung(1.7, 1)
    closed = 1.7 ** (1 / 3) / 2 - 1j * 1.7 ** (-1 / 3) / 6
    closed_ok = abs(st1.u - closed) < 1e-12
    report(2, "five up-steps solve their equations",
           worst < 1e-8 and closed_ok,
           f"max rung residual {worst:.2e} < 1e-8; first-rung closed form "
           f"matches to {abs(st1.u - closed):.1e}", t0)


def test_criterion_03_lattice_identities():
    t0 = time.time()
    ev = lambda t: algebraic_solution(t, P1)  # noqa: E731
    worst = {"km": 0.0, "dp": 0.0, "f_rec": 0.0, "toda": 0.0}
    for tau in np.linspace(0.5, 5.0, 20):
        entries = ladder(ev(tau), 0.0, P1, 5, seed_eval=ev)
        for which in ("km", "dp", "f_rec"):
            for _, r in lattice_residuals(entries, which, 0.0, P1):
                worst[which] = max(worst[which], r)
    toda_rows = 0
    for tau in (0.7, 1.0, 2.9):
        # the pair-product stencil spans n-2..n+2, so extend the same
        # algebraic-seed ladder by two rungs to expose testable interior rungs
        entries = ladder(ev(tau), 0.0, P1, 7, seed_eval=ev)
        for _, r in lattice_residuals(entries, "toda", 0.0, P1, seed_eval=ev):
            worst["toda"] = max(worst["toda"], r)
            toda_rows += 1
    ok = worst["km"] < 1e-8 and worst["dp"] < 1e-8 \
        and worst["f_rec"] < 1e-6 and worst["toda"] < 1e-5 and toda_rows >= 6
    report(3, "lattice identities along the ladder", ok,
           "max residuals km {km:.1e} dp {dp:.1e} f_rec {f_rec:.1e} "
           "toda {toda:.1e}".format(**worst), t0)


@pytest.fixture(scope="module")
def acceptance_points():
    return guarded_points(seed=31415, per_branch=200)


def test_criterion_04_group_actions(acceptance_points):
    t0 = time.time()
    worst = 0.0
    for pt in acceptance_points:
        for img in all_map_images(pt):
            worst = max(worst, manifold_residual(img).max())
        ident = apply_F(pt, 0, 0)
        assert ident is pt or all(
            getattr(ident, k) == getattr(pt, k)
            for k in ("a", "s00", "s0inf", "s1inf", "g11", "g12", "g21", "g22"))
    report(4, "all 29 group actions preserve the manifold (600 points)",
           worst < 1e-10, f"max image residual {worst:.2e} < 1e-10", t0)


def test_criterion_05_stokes_cyclic_algebra(acceptance_points):
    t0 = time.time()
    from dp3.monodromy import cyclic_residuals
    worst_semi, worst_cyc, worst_det = 0.0, 0.0, 0.0
    det_checked = 0
    for pt in acceptance_points:
        ss = stokes_structure(pt)
        cyc, semi = cyclic_residuals(pt)
        worst_semi = max(worst_semi, semi)
        if semi < 1e-10:
            worst_cyc = max(worst_cyc, cyc)
        ent = max(np.max(np.abs(ss.m_inf)), np.max(np.abs(ss.m_zero)))
        if ent <= 8.0:  # determinant evaluable to 1e-13 in doubles
            det_checked += 1
            worst_det = max(worst_det,
                            abs(np.linalg.det(ss.m_inf) - 1.0),
                            abs(np.linalg.det(ss.m_zero) - 1.0))
    ok = worst_semi < 1e-10 and worst_cyc < 1e-9 and worst_det < 1e-13 \
        and det_checked >= 100
    report(5, "Stokes products, semi-cyclic => cyclic", ok,
           f"semi {worst_semi:.1e} < 1e-10, cyclic {worst_cyc:.1e} < 1e-9, "
           f"dets {worst_det:.1e} < 1e-13 on {det_checked} in-guard points", t0)


def test_criterion_06_rho_consistency(acceptance_points):
    t0 = time.time()
    worst = 0.0
    for pt in acceptance_points:
        lhs = -0.5j * pt.s00
        rhs = cmath.cosh(math.pi * pt.a) \
            + 0.5 * pt.s0inf * pt.s1inf * cmath.exp(math.pi * pt.a)
        worst = max(worst, abs(lhs - rhs))
    report(6, "both multiplier expressions for cos(2 pi rho)",
           worst < 1e-10, f"max disagreement {worst:.2e} < 1e-10", t0)


def test_criterion_07_connection_identities():
    t0 = time.time()
    kept, worst, offset = 0, 0.0, 0
    while kept < 100 and offset < 40:
        pts = sample_manifold(seed=2718 + offset, count=50, branch=1,
                              nu_max=0.15, max_entry=50.0)
        for pt in pts:
            try:
                rr = cross_ray_residuals(pt)
            except ConditionViolationError:
                continue
            kept += 1
            worst = max(worst, max(rr))
            if kept == 100:
                break
        offset += 1
    report(7, "cross-ray chart identities on 100 points",
           kept == 100 and worst < 1e-10,
           f"max residual {worst:.2e} < 1e-10 over {kept} points", t0)


def _item12_states():
    out = []
    for params in ITEM1_PARAMS:
        for tau in np.linspace(0.5, 5.0, 8):
            out.append((algebraic_solution(tau, params, with_phi=True), 0.0, params))
    for tau in np.linspace(0.5, 5.0, 6):
        for n in range(6):
            st, a_n = _rung(tau, n)
            out.append((SolutionState(st.tau, st.u, st.du, 0.0), a_n, P1))
    return out


def test_criterion_08_hamiltonian_cross_checks():
    t0 = time.time()
    worst_pq, worst_abcd, worst_split = 0.0, 0.0, 0.0
    for st, a, params in _item12_states():
        Hu = hamiltonian_u(st, a, params)
        p = p_from_u(st, a, params, -1)
        worst_pq = max(worst_pq, abs(Hu - hamiltonian_pq(p, st.u, st.tau, a, params, -1)))
        A, B, C, D = to_abcd(st, a, params)
        hs = hamiltonian_abcd(A, B, C, D, st.tau, a, params,
                              sqrt_ab=st.u / (params.eps * st.tau))
        worst_abcd = max(worst_abcd, abs(Hu - hs.H))
        ash = a - 0.5j * params.sign2
        worst_split = max(worst_split,
                          abs(hs.H0 - hs.Hinf + ash * ash / (2.0 * st.tau)))
    worked = hamiltonian_u(algebraic_solution(1.0, P1), 0.0, P1)
    worked_ok = abs(worked - (209.0 / 72.0 - 1j)) < 1e-13
    ok = worst_pq < 1e-11 and worst_abcd < 1e-11 and worst_split < 1e-12 and worked_ok
    report(8, "Hamiltonian three-way agreement", ok,
           f"canonical {worst_pq:.1e}, matrix-entry {worst_abcd:.1e} < 1e-11, "
           f"split {worst_split:.1e} < 1e-12, worked value 2.90277...-i", t0)


def test_criterion_09_sigma_f_residuals():
    t0 = time.time()
    from test_ode import sigma_f_ode_residuals
    worst = {"sigma": 0.0, "f": 0.0}
    for params, n in zip(ITEM1_PARAMS, (1001, 401, 1001)):
        taus = np.linspace(1.0, 3.0, n)
        h = taus[1] - taus[0]
        states = [algebraic_solution(t, params) for t in taus]
        res = sigma_f_ode_residuals(params, 0.0, states, taus, h)
        worst["sigma"] = max(worst["sigma"], res["sigma"])
        worst["f"] = max(worst["f"], res["f"])
    ok = worst["sigma"] < 1e-6 and worst["f"] < 1e-6
    report(9, "sigma- and f-form residuals", ok,
           "max sigma {sigma:.1e}, f {f:.1e} < 1e-6".format(**worst), t0)


def test_criterion_10_connection_verification():
    t0 = time.time()
    # sampled where the fixed tau0 = 0.02 seed keeps the dropped-correction
    # floor below the fit-window truncation, so the tau1-dependence of the
    # error is resolvable (|nu+1| <= 0.08 and a valid rho-chart, as stated)
    candidates = sample_manifold(seed=97, count=80, branch=1, nu_max=0.08,
                                 re_rho_max=0.15, abs_a_max=0.6, max_entry=20.0)
    done, mono_hits, worst_err = 0, 0, 0.0
    failures = 0
    for pt in candidates:
        if done == 20:
            break
        try:
            sc = small_tau_chart(pt, 0, P1)
            if sc.log_mode or abs(sc.rho) < 0.02:
                continue
            lc = large_tau_chart(pt, 0, P1)
            if lc.special != "none":
                continue
            rep = verify_connection(pt, P1, tau0=0.02, tau1=400.0,
                                    tol=1e-10, tau0_steps=1, tau1_steps=3)
        except (ConditionViolationError, IntegrationFailureError):
            failures += 1
            continue
        done += 1
        worst_err = max(worst_err, rep.err_nu)
        errs = [row["err_nu"] for row in rep.convergence_table]
        if errs[0] >= errs[1] >= errs[2]:
            mono_hits += 1
    # exact-solution oracle for the algebraic point
    pt0 = from_branch(1, 0.0, g11=1, g12=0, g21=0, g22=1)
    rep0 = verify_connection(pt0, P1, tau0=0.01, tau1=100.0, tol=1e-11,
                             tau0_steps=1, tau1_steps=1,
                             seed_state=algebraic_solution(0.01, P1))
    grid = np.linspace(80.0, 100.0, 50)
    from dp3.ode import integrate_ray
    traj0 = integrate_ray(algebraic_solution(0.01, P1), 0.0, P1, 100.0,
                          tol=1e-11, dense_at=grid)
    coeff = np.mean(np.real(traj0.u / grid ** (1 / 3)))
    coeff_ok = abs(coeff - P1.coupling_pow23 / 2.0) < 1e-6
    ok = done == 20 and worst_err < 2e-2 and mono_hits >= 16 \
        and rep0.oscillation_amplitude < 1e-6 and coeff_ok
    report(10, "end-to-end connection verification (20 points)", ok,
           f"max |fitted - predicted| (nu+1) {worst_err:.2e} < 2e-2 at tau1=400; "
           f"error non-increasing for {mono_hits}/20; algebraic amplitude "
           f"{rep0.oscillation_amplitude:.1e} < 1e-6, leading coeff err "
           f"{abs(coeff - 0.5):.1e} < 1e-6 ({failures} pole/condition draws skipped)", t0)


def test_criterion_11_imaginary_axis():
    t0 = time.time()
    rng = np.random.default_rng(13)
    pairs, worst_mod = 0, 0.0
    prefactor_exact = True
    offset = 0
    while pairs < 50 and offset < 30:
        pts = sample_manifold(seed=4000 + offset, count=30, branch=1,
                              abs_a_max=0.0, max_entry=50.0)
        offset += 1
        for pt in pts:
            for e1 in (1, -1):
                try:
                    ch = imag_chart(pt, e1, P1, "large")
                except ConditionViolationError:
                    continue
                if ch.special != "none":
                    continue
                m = float(rng.uniform(5.0, 50.0))
                kernel = u_large(ch, m)  # real-ray kernel of the rotated data
                val = u_imag(pt, e1, P1, m, "large")
                prefactor_exact &= (val == 1j * e1 * kernel)
                worst_mod = max(worst_mod, abs(abs(val) - abs(kernel)) / abs(kernel))
                pairs += 1
                if pairs == 50:
                    break
            if pairs == 50:
                break
    ok = pairs == 50 and worst_mod < 1e-12 and prefactor_exact
    report(11, "imaginary-ray kernel vs real-ray kernel", ok,
           f"modulus agreement {worst_mod:.1e} < 1e-12 on {pairs} pairs; "
           f"prefactor exactly i*eps1: {prefactor_exact}", t0)


def test_criterion_12_special_functions():
    t0 = time.time()
    psi1 = digamma(1.0)
    psi_ok = abs(psi1 - (-0.57721566490)) < 1e-10
    rng = np.random.default_rng(99)
    worst = 0.0
    count = 0
    while count < 100:
        z = complex(rng.uniform(-15, 15), rng.uniform(-15, 15))
        if abs(z.imag) < 5e-2 and abs(z.real - round(z.real)) < 5e-2:
            continue
        count += 1
        refl = gamma(z) * gamma(1.0 - z) * cmath.sin(math.pi * z) / math.pi - 1.0
        dup = gamma(2.0 * z) - 2.0 ** (2.0 * z - 1.0) / math.sqrt(math.pi) \
            * gamma(z) * gamma(z + 0.5)
        worst = max(worst, abs(refl),
                    abs(dup) / max(abs(gamma(2.0 * z)), 1e-290))
    ok = psi_ok and worst < 1e-12
    report(12, "digamma value and gamma identities", ok,
           f"psi(1) err {abs(psi1 + 0.57721566490):.1e} < 1e-10; "
           f"identity residuals {worst:.1e} < 1e-12 on 100 points", t0)
