"""Shared fixtures and independent numerical oracles for the test suite."""

from __future__ import annotations

import cmath
import itertools
import math

import pytest

from dp3.errors import ConditionViolationError
from dp3.monodromy import (
    apply_F,
    apply_Fhat,
    backlund_monodromy,
    from_branch,
    lie_point_monodromy,
)
from dp3.params import EquationParams
from dp3.sampling import sample_manifold

# largest coordinate magnitude (point and images) for which the quadratic
# manifold relations are evaluable to ~1e-12 in doubles
ENTRY_GUARD = 300.0


def all_map_images(pt):
    """Images of a point under every implemented group action."""
    out = []
    for e1, e2 in itertools.product((0, 1, -1), (0, 1, -1)):
        out.append(apply_F(pt, e1, e2))
    for e1, e2 in itertools.product((1, -1), (0, 1, -1)):
        out.append(apply_Fhat(pt, e1, e2))
    out.append(backlund_monodromy(pt, "up"))
    out.append(backlund_monodromy(pt, "down"))
    for kind in ("negate_tau", "negate_a", "rotate_tau"):
        for p, l in itertools.product((1, -1), (1, -1)):
            out.append(lie_point_monodromy(pt, kind, p, l))
    return out


def _max_entry(pt) -> float:
    return max(abs(getattr(pt, k)) for k in
               ("s00", "s0inf", "s1inf", "g11", "g12", "g21", "g22"))


def guarded_points(seed: int, per_branch: int, **kw):
    """Seeded manifold points on all three branches whose images under
    every group action stay within the conditioning guard."""
    pts = []
    for branch in (1, 2, 3):
        kept, offset = [], 0
        while len(kept) < per_branch:
            batch = sample_manifold(seed + 1000 * branch + offset,
                                    per_branch, branch,
                                    max_entry=ENTRY_GUARD, **kw)
            for pt in batch:
                if max(_max_entry(q) for q in all_map_images(pt)) <= ENTRY_GUARD:
                    kept.append(pt)
                    if len(kept) == per_branch:
                        break
            offset += 1
        pts.extend(kept)
    return pts


def cauchy_derivative(f, z0: complex, r: float, order: int = 1, nodes: int = 16) -> complex:
    """Derivative of an analytic function by trapezoidal contour quadrature
    (spectrally accurate; independent of any finite-difference stencil)."""
    acc = 0.0j
    fact = math.factorial(order)
    for k in range(nodes):
        w = cmath.exp(2j * math.pi * k / nodes)
        acc += f(z0 + r * w) / w**order
    return acc * fact / (nodes * r**order)


def branch1_point(a, g11, g12, g21):
    g22 = (1.0 + g12 * g21) / g11
    return from_branch(1, a, g11=g11, g12=g12, g21=g21, g22=g22)


@pytest.fixture(scope="session")
def unit_params():
    return EquationParams.make(1, 1.0)


@pytest.fixture(scope="session")
def generic_point():
    """A branch-1 point with a valid generic large chart (small nu + 1)
    and a valid rho chart, used across modules."""
    g11, g12, g21 = 1.05, 0.21 + 0.1j, -0.15 + 0.05j
    return branch1_point(0.0, g11, g12, g21)


@pytest.fixture(scope="session")
def manifold_sample():
    return guarded_points(seed=20240, per_branch=40)


def sample_generic_charts(seed, count, params, eps1_values=(0,), nu_max=0.1,
                          require_rho=False, abs_a_max=1.0):
    """Branch-1 points whose large chart is generic and valid on all the
    requested rays (and optionally with a valid rho chart)."""
    from dp3.asymptotics import large_tau_chart, small_tau_chart

    out, offset = [], 0
    while len(out) < count:
        batch = sample_manifold(seed + offset, count, 1, abs_a_max=abs_a_max,
                                nu_max=nu_max, max_entry=ENTRY_GUARD)
        for pt in batch:
            try:
                charts = [large_tau_chart(pt, e1, params) for e1 in eps1_values]
                if any(ch.special != "none" for ch in charts):
                    continue
                if require_rho:
                    sc = small_tau_chart(pt, eps1_values[0], params)
                    if sc.log_mode or abs(sc.rho) < 0.02 or abs(sc.rho.real) > 0.45:
                        continue
            except ConditionViolationError:
                continue
            out.append(pt)
            if len(out) == count:
                break
        offset += 1
    return out
