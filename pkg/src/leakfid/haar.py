"""Haar-uniform sampling and Monte Carlo checks of the averaged fidelities.

All randomness flows from a counter-based Philox bit generator keyed by
the caller's seed.  Batch samplers draw every variate in one
sample-major block, so sample ``k`` always owns the same counter window;
results are reproducible per seed and do not depend on how the samples
are later consumed (serially or in parallel).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fidelity import PartitionedEvolution, TargetGate, embed_target, embedding_fidelity
from .linalg import as_square, dagger, require_unitary
from .tolerances import DEFAULT_TOLS, Tolerances


@dataclass(frozen=True)
class SampleConfig:
    """Seed and sample count for one Monte Carlo estimate."""

    seed: int
    n_samples: int

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.n_samples < 100:
            raise ValueError(
                f"need at least 100 samples for a meaningful standard error, got {self.n_samples}"
            )


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_samples: int

    def as_dict(self) -> dict:
        return {"mean": self.mean, "std_error": self.std_error, "n_samples": self.n_samples}


def generator(seed: int) -> np.random.Generator:
    """Philox generator keyed directly (not scrambled) by ``seed``."""
    return np.random.Generator(np.random.Philox(key=seed))


def haar_states(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` Haar-uniform unit vectors in dimension ``n``, one per row.

    Normalized complex standard Gaussians; the 2n real variates of
    sample k sit in one contiguous block of the stream.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    z = rng.standard_normal((count, n, 2))
    v = z[..., 0] + 1j * z[..., 1]
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def haar_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """One Haar-uniform unit vector in dimension ``n``."""
    return haar_states(n, 1, rng)[0]


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n-by-n unitary.

    QR of a complex Gaussian matrix with the R diagonal's phases folded
    back into Q, which makes the distribution exactly invariant.
    """
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    z = rng.standard_normal((n, n, 2))
    q, r = np.linalg.qr((z[..., 0] + 1j * z[..., 1]) / math.sqrt(2.0))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def fidelity_on_state(u_target, u_actual, chi, tols: Tolerances = DEFAULT_TOLS) -> float:
    """``|<chi| u_target† u_actual |chi>|²`` for one unit vector ``chi``."""
    ut = as_square(u_target, "u_target")
    u = as_square(u_actual, "u_actual")
    if u.shape != ut.shape:
        raise ValueError(f"dimension mismatch: u_target {ut.shape} vs u_actual {u.shape}")
    chi = np.asarray(chi, dtype=np.complex128)
    if chi.ndim != 1 or chi.shape[0] != ut.shape[0]:
        raise ValueError(f"chi must be a vector of length {ut.shape[0]}, got shape {chi.shape}")
    norm = float(np.linalg.norm(chi))
    if abs(norm - 1.0) > tols.state_norm:
        raise ValueError(f"chi must be normalized: ||chi|| = {norm!r}")
    amp = np.vdot(ut @ chi, u @ chi)
    return float(abs(amp) ** 2)


def average_fidelity_mc(u_target, u_actual, cfg: SampleConfig,
                        tols: Tolerances = DEFAULT_TOLS) -> McEstimate:
    """Monte Carlo estimate of the state-averaged fidelity integral.

    Deterministic per (inputs, seed).  The standard error is the sample
    standard deviation over sqrt(n_samples); it is zero when the two
    operators agree exactly.
    """
    ut = require_unitary(u_target, tols.unitary, "u_target")
    u = as_square(u_actual, "u_actual")
    if u.shape != ut.shape:
        raise ValueError(f"dimension mismatch: u_target {ut.shape} vs u_actual {u.shape}")
    n = ut.shape[0]
    chis = haar_states(n, cfg.n_samples, generator(cfg.seed))
    m = dagger(ut) @ u
    amps = np.einsum("si,ij,sj->s", chis.conj(), m, chis, optimize=True)
    f = np.abs(amps) ** 2
    return McEstimate(
        mean=float(f.mean()),
        std_error=float(f.std(ddof=1) / math.sqrt(cfg.n_samples)),
        n_samples=cfg.n_samples,
    )


def embedding_fidelity_search(target: TargetGate, partition: PartitionedEvolution,
                              trials: int, seed: int,
                              tols: Tolerances = DEFAULT_TOLS) -> float:
    """Best embedded fidelity found by random complement blocks.

    Draws ``trials`` Haar unitaries for the complement, each with an
    extra uniform global phase, scores the resulting embedding and keeps
    the running maximum.  This is the brute-force floor for the closed
    form: it can approach but never exceed it.
    """
    if target.non_unitary:
        raise ValueError("the embedding search requires a unitary target")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rng = generator(seed)
    k = partition.n - partition.m
    best = -math.inf
    for _ in range(trials):
        phase = np.exp(2j * np.pi * rng.random())
        block = phase * haar_unitary(k, rng)
        best = max(best, embedding_fidelity(embed_target(target, block, partition),
                                            partition, tols))
    return best
