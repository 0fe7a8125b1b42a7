"""Leakage-aware process fidelity for gates confined to a subspace.

The package scores a target gate against the computational block of a
full unitary evolution in two ways — projecting the evolution onto the
subspace, or embedding the target into the full space and maximizing
over the completion — and ships the linear-algebra kernels, Haar Monte
Carlo cross-checks and a qubit-resonator controlled-Z sweep that
exercise both.
"""

from .fidelity import (
    FidelityReport,
    PartitionedEvolution,
    TargetGate,
    average_fidelity,
    block_population_bound,
    complement_fidelity,
    complement_overlap,
    embed_target,
    embedding_fidelity,
    embedding_fidelity_from_smax,
    fidelity_report,
    hill_to_pedersen,
    max_complement_fidelity,
    nuclear_norm,
    optimal_embedding,
    optimal_embedding_fidelity,
    projected_fidelity,
)
from .haar import (
    McEstimate,
    SampleConfig,
    average_fidelity_mc,
    embedding_fidelity_search,
    fidelity_on_state,
    generator,
    haar_state,
    haar_states,
    haar_unitary,
)
from .linalg import (
    EigenDecomposition,
    PolarFactors,
    dagger,
    direct_sum,
    eigh,
    hermiticity_defect,
    polar,
    propagator,
    sqrtm_psd,
    unitarity_defect,
)
from .matrixio import load_matrix, matrix_from_jsonable, matrix_to_jsonable, save_matrix
from .qubit_resonator import (
    SweepResult,
    SystemParams,
    build_hamiltonian,
    compensated_cz_target,
    computational_indices,
    cz_target,
    sweep,
    sweep_csv,
)
from .tolerances import DEFAULT_TOLS, Tolerances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLS",
    "EigenDecomposition",
    "FidelityReport",
    "McEstimate",
    "PartitionedEvolution",
    "PolarFactors",
    "SampleConfig",
    "SweepResult",
    "SystemParams",
    "TargetGate",
    "Tolerances",
    "average_fidelity",
    "average_fidelity_mc",
    "block_population_bound",
    "build_hamiltonian",
    "compensated_cz_target",
    "complement_fidelity",
    "complement_overlap",
    "computational_indices",
    "cz_target",
    "dagger",
    "direct_sum",
    "eigh",
    "embed_target",
    "embedding_fidelity",
    "embedding_fidelity_from_smax",
    "embedding_fidelity_search",
    "fidelity_on_state",
    "fidelity_report",
    "generator",
    "haar_state",
    "haar_states",
    "haar_unitary",
    "hermiticity_defect",
    "hill_to_pedersen",
    "load_matrix",
    "matrix_from_jsonable",
    "matrix_to_jsonable",
    "max_complement_fidelity",
    "nuclear_norm",
    "optimal_embedding",
    "optimal_embedding_fidelity",
    "polar",
    "projected_fidelity",
    "propagator",
    "save_matrix",
    "sqrtm_psd",
    "sweep",
    "sweep_csv",
    "unitarity_defect",
]
