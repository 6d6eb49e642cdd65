"""Wind-farm layout optimisation as a QUBO, solved with a simulated CVaR-VQE
and classical baselines."""

from .hamiltonian import DiagonalHamiltonian, PauliTerm, basis_energy, qubo_to_hamiltonian
from .qubo import QuboProblem, build_q, evaluate_qubo, is_feasible, objective_f, penalty_g
from .vqe import (
    AnsatzSpec,
    ShotResult,
    Statevector,
    apply_ansatz,
    cvar_estimate,
    dea_check,
    dea_jacobian,
    expectation,
    sample_shots,
    select_solution,
)
from .wake import (
    GridGeometry,
    WakeParams,
    WindArrangement,
    WindFarmSetup,
    WindRegime,
    alpha_T,
    in_wake,
    mosetti_regime_2,
    power_ls,
    reduced_speed,
    site_coords,
)

__version__ = "0.1.0"
