"""Backlund ladder and its integrable lattices.

Starting from the exact cube-root solution, iterate the Backlund
transformation to climb a ladder of solutions with parameters a = -i n
and verify the differential-difference and difference equations the rungs
satisfy: the Kac-Moerbeke-type flow, a discrete Painleve relation, the
f-recurrence, and a Toda-chain form on pair products.

Run:  python demos/03_backlund_ladder_and_lattices.py
"""

from dp3 import (
    EquationParams,
    algebraic_solution,
    backlund_step,
    ladder,
    lattice_residuals,
    lie_point_solution,
)

params = EquationParams.make(1, 1.0)
seed_eval = lambda t: algebraic_solution(t, params)  # noqa: E731

# ----------------------------------------------------------------------
# One Backlund step in closed form: the first rung above the cube-root
# solution is tau^(1/3)/2 - i tau^(-1/3)/6, at parameter a = -i.
# ----------------------------------------------------------------------
tau = 1.7
st1, a1 = backlund_step(seed_eval(tau), 0.0, params, "up")
closed = tau ** (1 / 3) / 2 - 1j * tau ** (-1 / 3) / 6
print(f"first rung at tau = {tau}: u1 = {st1.u:.12f}")
print(f"closed form:              {closed:.12f}   (a1 = {a1})")

# ----------------------------------------------------------------------
# The ladder: rungs n = 0..7 at one evaluation point, with the scaled
# variables v_n = u_n / tau and the pair quantities g_n, f_n.
# ----------------------------------------------------------------------
entries = ladder(seed_eval(1.0), 0.0, params, 7, seed_eval=seed_eval)
print("\n  n   a_n      u_n                          v_n")
for e in entries:
    print(f"  {e.n}  {e.a_n.imag:+.0f}i   {e.state.u:.6f}   {e.v:.6f}")

# ----------------------------------------------------------------------
# Lattice identities along the ladder.  The km flow is exact algebra at
# a point; the Toda form needs second derivatives, taken by finite
# differences over re-evaluated ladders, hence the larger budget.
# ----------------------------------------------------------------------
print("\nlattice residuals at tau = 1:")
for which in ("km", "dp", "f_rec", "toda"):
    rows = lattice_residuals(entries, which, 0.0, params,
                             seed_eval=seed_eval if which == "toda" else None)
    txt = "  ".join(f"n={n}: {r:.1e}" for n, r in rows)
    print(f"  {which:6s} {txt}")

# ----------------------------------------------------------------------
# Lie-point symmetries act on solutions directly: reflections of the ray,
# negation of the formal-monodromy parameter (with a relabeling of
# (eps, b)), and quarter rotations of the ray.
# ----------------------------------------------------------------------
st = seed_eval(2.0)
for kind, kw in (("negate_tau", {"p": 1}),
                 ("negate_a", {"relabel": "flip_b"}),
                 ("rotate_tau", {"p": 1, "l": 1, "relabel": "flip_eps"})):
    stn, an, pn = lie_point_solution(st, 0.0, params, kind, **kw)
    print(f"\n{kind} {kw}: tau {st.tau:.3f} -> {stn.tau:.3f}, "
          f"u {st.u:.4f} -> {stn.u:.4f}, (eps, b) -> ({pn.eps}, {pn.b})")
