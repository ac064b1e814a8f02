"""Numerical toolkit for the degenerate third Painleve equation: monodromy
data, asymptotic charts at both ends of real and imaginary rays, Backlund
ladders with their lattice identities, and end-to-end connection
verification by high-accuracy integration."""

from .asymptotics import (
    H_large,
    H_small,
    LargeTauChart,
    SmallTauChart,
    du_small,
    large_tau_chart,
    cross_ray_residuals,
    small_tau_chart,
    tau_function_asymptotic,
    u_imag,
    u_large,
    u_small,
)
from .backlund import LadderEntry, backlund_step, ladder, lattice_residuals, lie_point_solution
from .connection import ConnectionReport, LargeTauFit, fit_large_tau, verify_connection
from .errors import (
    ConditionViolationError,
    DP3Error,
    IntegrationFailureError,
    LadderBreakdownError,
    PoleError,
    SamplingExhaustedError,
    SingularityError,
)
from .monodromy import (
    MonodromyPoint,
    StokesSet,
    apply_F,
    apply_Fhat,
    backlund_monodromy,
    cyclic_residuals,
    from_branch,
    lie_point_monodromy,
    manifold_residual,
    point_from_json,
    point_to_json,
    rho_from,
    stokes_structure,
)
from .ode import (
    HamiltonianSplit,
    SolutionState,
    Trajectory,
    algebraic_solution,
    dp3_rhs,
    hamiltonian_abcd,
    hamiltonian_pq,
    hamiltonian_system_rhs,
    hamiltonian_u,
    integrate_ray,
    p_from_u,
    residual_on_grid,
    sigma_and_f,
    to_abcd,
    trajectory_to_csv,
)
from .params import EquationParams
from .sampling import sample_manifold
from .specfun import digamma, gamma, ln_gamma

__version__ = "0.1.0"
