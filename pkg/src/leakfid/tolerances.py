"""Numerical tolerances for the whole package, kept in one record."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Validation and clamping thresholds (Frobenius norms throughout).

    ``unitary`` is an absolute bound on ``||a†a - 1||``; ``hermitian`` is
    relative to the matrix norm.  ``psd_clamp`` is relative to the top of
    the spectrum when deciding which negative eigenvalues count as
    roundoff.  ``block_trace`` bounds the partition's row-unitarity
    defect, ``state_norm`` the norm defect of sampled states.
    ``radicand`` and ``closed_form`` guard the closed-form fidelity's
    internal square root and its cross-check; ``bound_slack`` is the
    slack allowed on analytic bounds.
    """

    unitary: float = 1e-10
    hermitian: float = 1e-10
    psd_clamp: float = 1e-10
    block_trace: float = 1e-9
    state_norm: float = 1e-9
    radicand: float = 1e-12
    closed_form: float = 1e-12
    bound_slack: float = 1e-10


DEFAULT_TOLS = Tolerances()
