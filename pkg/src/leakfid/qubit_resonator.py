"""Coupled three-level qubit / three-level resonator model and its
controlled-Z fidelity sweep.

Basis ordering is qubit-major: index = 3*q + r for qubit level q and
resonator level r.  The computational subspace is the four two-level
product states |00>, |01>, |10>, |11>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fidelity import (
    PartitionedEvolution,
    TargetGate,
    optimal_embedding_fidelity,
    projected_fidelity,
)
from .linalg import dagger, eigh
from .tolerances import DEFAULT_TOLS, Tolerances

# i(a† - a) truncated to three levels: nearest-neighbour coupling with the
# usual sqrt(2) weight on the upper rung.
QUADRATURE = np.array(
    [
        [0.0, -1j, 0.0],
        [1j, 0.0, -1j * math.sqrt(2.0)],
        [0.0, 1j * math.sqrt(2.0), 0.0],
    ]
)

UNIT_CONVENTIONS = ("angular_2pi", "raw")


@dataclass(frozen=True)
class SystemParams:
    """Device parameters: frequencies in GHz, times in ns throughout.

    With the default convention every frequency enters the Hamiltonian
    as 2*pi*f, i.e. as an angular rate in rad/ns; ``raw`` uses the
    numbers unscaled.
    """

    omega_q: float = 6.2
    omega_r: float = 6.0
    delta: float = 0.2
    g: float = 0.030
    unit_convention: str = "angular_2pi"

    def __post_init__(self):
        if self.omega_q <= 0 or self.omega_r <= 0 or self.delta <= 0:
            raise ValueError("omega_q, omega_r and delta must all be positive")
        if self.delta >= self.omega_q:
            raise ValueError(
                f"anharmonicity {self.delta} must stay below the qubit frequency {self.omega_q}"
            )
        if self.g < 0:
            raise ValueError(f"coupling must be non-negative, got {self.g}")
        if self.unit_convention not in UNIT_CONVENTIONS:
            raise ValueError(
                f"unit_convention must be one of {UNIT_CONVENTIONS}, got {self.unit_convention!r}"
            )

    @property
    def scale(self) -> float:
        return 2.0 * math.pi if self.unit_convention == "angular_2pi" else 1.0


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Per-time fidelity and subspace-population series on a uniform grid."""

    times: np.ndarray
    f1_series: np.ndarray
    f2_series: np.ndarray
    leakage_series: np.ndarray


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """9x9 Hamiltonian: bare qubit and resonator ladders plus the
    quadrature-quadrature coupling, in qubit-major ordering."""
    s = params.scale
    hq = np.diag([0.0, params.omega_q, 2.0 * params.omega_q - params.delta]) * s
    hr = np.diag([0.0, params.omega_r, 2.0 * params.omega_r]) * s
    eye = np.eye(3)
    return np.kron(hq, eye) + np.kron(eye, hr) + params.g * s * np.kron(QUADRATURE, QUADRATURE)


def computational_indices() -> list[int]:
    """Indices of |00>, |01>, |10>, |11> in the qubit-major basis."""
    return [0, 1, 3, 4]


def cz_target() -> TargetGate:
    """The controlled-Z gate on the computational subspace."""
    return TargetGate(np.diag([1.0, 1.0, 1.0, -1.0]).astype(np.complex128))


def compensated_cz_target(u_s: np.ndarray) -> TargetGate:
    """Controlled-Z dressed with the single-qubit phases the evolution has
    accrued, read off the diagonal of the subspace block ``u_s``."""
    d = np.diagonal(u_s)
    alpha = float(np.angle(d[1]) - np.angle(d[0]))
    beta = float(np.angle(d[2]) - np.angle(d[0]))
    return TargetGate(
        np.diag([1.0, np.exp(1j * alpha), np.exp(1j * beta), -np.exp(1j * (alpha + beta))])
    )


def sweep(params: SystemParams, t_start: float = 0.0, t_end: float = 50.0,
          n_points: int = 501, local_phase_compensation: bool = False,
          tols: Tolerances = DEFAULT_TOLS) -> SweepResult:
    """Propagate the model over a uniform time grid and score every point
    against the controlled-Z target.

    With ``local_phase_compensation`` the target's single-qubit phases
    track the evolution at each grid point instead of staying fixed.
    """
    if not t_start < t_end:
        raise ValueError(f"need t_start < t_end, got [{t_start}, {t_end}]")
    if n_points < 2:
        raise ValueError(f"need at least 2 grid points, got {n_points}")
    h = build_hamiltonian(params)
    w, v = eigh(h, tols)
    vh = dagger(v)
    indices = tuple(computational_indices())
    plain = cz_target()
    times = np.linspace(float(t_start), float(t_end), int(n_points))
    f1s = np.empty_like(times)
    f2s = np.empty_like(times)
    leaks = np.empty_like(times)
    for k, t in enumerate(times):
        u_f = (v * np.exp(-1j * w * t)) @ vh
        part = PartitionedEvolution(u_f, indices, tols)
        target = compensated_cz_target(part.u_s) if local_phase_compensation else plain
        f1s[k] = projected_fidelity(target, part)
        f2s[k] = optimal_embedding_fidelity(target, part, tols)
        leaks[k] = np.vdot(part.u_s, part.u_s).real
    return SweepResult(times=times, f1_series=f1s, f2_series=f2s, leakage_series=leaks)


def sweep_csv(result: SweepResult, params: SystemParams,
              local_phase_compensation: bool = False) -> str:
    """Render a sweep as CSV: ``#`` comment lines echoing the parameters,
    a ``t_ns,f1,f2,leakage`` header, then one full-precision row per
    grid point.  Identical inputs give byte-identical output."""
    lines = [
        f"# omega_q = {params.omega_q:.17g}",
        f"# omega_r = {params.omega_r:.17g}",
        f"# delta = {params.delta:.17g}",
        f"# g = {params.g:.17g}",
        f"# unit_convention = {params.unit_convention}",
        f"# local_phase_compensation = {str(local_phase_compensation).lower()}",
        "t_ns,f1,f2,leakage",
    ]
    for t, f1, f2, leak in zip(result.times, result.f1_series,
                               result.f2_series, result.leakage_series):
        lines.append(f"{t:.17g},{f1:.17g},{f2:.17g},{leak:.17g}")
    return "\n".join(lines) + "\n"
