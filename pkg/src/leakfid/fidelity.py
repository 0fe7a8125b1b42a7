"""Fidelity measures between a target gate and the block of a larger
unitary evolution restricted to a computational subspace.

Two state-averaged measures are provided.  ``projected_fidelity`` scores
the (generally non-unitary) subspace block directly against the target.
The embedded measure instead completes the target to a full-space
unitary and scores it against the whole evolution;
``optimal_embedding_fidelity`` gives the maximum over all completions in
closed form, with the maximizer itself available from
``optimal_embedding``.  Helpers quantify how the two relate: the
complement block's nuclear norm, the complement fidelity it can reach,
the population bound for any sub-block of a unitary, and the evaluation
path for targets that are themselves non-unitary.

All functions are pure and all container types are immutable after
construction.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_square, dagger, polar, require_unitary, sqrtm_psd
from .tolerances import DEFAULT_TOLS, Tolerances


class TargetGate:
    """An m-dimensional target gate.

    Unitary by default; pass ``non_unitary=True`` to hold an arbitrary
    square matrix (the evaluation-style relations still apply, the
    closed-form maximization does not).
    """

    def __init__(self, u_tgt, non_unitary: bool = False, tols: Tolerances = DEFAULT_TOLS):
        if non_unitary:
            m = as_square(u_tgt, "u_tgt")
        else:
            m = require_unitary(u_tgt, tols.unitary, "u_tgt")
        self.u_tgt = m.copy()
        self.u_tgt.setflags(write=False)
        self.non_unitary = bool(non_unitary)

    @property
    def m(self) -> int:
        return self.u_tgt.shape[0]


class PartitionedEvolution:
    """A full-space unitary split over a computational subspace.

    ``subspace_indices`` selects the rows/columns of ``u_f`` that carry
    the logical gate; any sorted proper subset is accepted, not only a
    leading range.  ``u_s`` is the subspace block, ``c`` the complement
    block, ``a``/``b`` the leak-out/leak-in couplings.
    """

    def __init__(self, u_f, subspace_indices, tols: Tolerances = DEFAULT_TOLS):
        u_f = require_unitary(u_f, tols.unitary, "u_f").copy()
        n = u_f.shape[0]
        idx = tuple(int(i) for i in subspace_indices)
        if not idx or any(i < 0 or i >= n for i in idx):
            raise ValueError(f"subspace indices must lie in [0, {n}), got {idx}")
        if any(j <= i for i, j in zip(idx, idx[1:])):
            raise ValueError(f"subspace indices must be sorted and distinct, got {idx}")
        if len(idx) >= n:
            raise ValueError(
                f"subspace must be proper: got {len(idx)} indices for dimension {n}"
            )
        comp = tuple(i for i in range(n) if i not in set(idx))
        self.u_f = u_f
        self.subspace_indices = idx
        self.complement_indices = comp
        self.u_s = u_f[np.ix_(idx, idx)]
        self.a = u_f[np.ix_(idx, comp)]
        self.b = u_f[np.ix_(comp, idx)]
        self.c = u_f[np.ix_(comp, comp)]
        retained = float(np.vdot(self.u_s, self.u_s).real + np.vdot(self.a, self.a).real)
        if abs(retained - self.m) > tols.block_trace:
            raise ValueError(
                f"subspace rows of u_f are not unitary: "
                f"Tr(U_sU_s†) + Tr(AA†) = {retained!r}, expected {self.m}"
            )
        for arr in (self.u_f, self.u_s, self.a, self.b, self.c):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return self.u_f.shape[0]

    @property
    def m(self) -> int:
        return len(self.subspace_indices)


@dataclass(frozen=True)
class FidelityReport:
    """One partition's worth of fidelity numbers.

    ``r`` and ``theta`` are the magnitude and phase of the trace overlap
    between the target and the subspace block; ``leakage_trace`` is the
    population the subspace retains, ``Tr(U_s U_s†)``.
    """

    f1: float
    f2: float
    s_max: float
    r: float
    theta: float
    leakage_trace: float
    f_out_max: float

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _match_subspace(target: TargetGate, partition: PartitionedEvolution) -> None:
    if target.m != partition.m:
        raise ValueError(
            f"target dimension {target.m} does not match the "
            f"{partition.m}-dimensional subspace"
        )


def average_fidelity(u_target, u_actual, tols: Tolerances = DEFAULT_TOLS) -> float:
    """State-averaged process fidelity via the trace formula.

    ``(||M||_F² + |Tr M|²) / (n(n+1))`` with ``M = u_target† u_actual``.
    This equals the Haar average of ``|<chi|M|chi>|²`` over unit vectors
    for any square ``u_actual``; ``u_target`` must be unitary.
    """
    ut = require_unitary(u_target, tols.unitary, "u_target")
    u = as_square(u_actual, "u_actual")
    if u.shape != ut.shape:
        raise ValueError(f"dimension mismatch: u_target {ut.shape} vs u_actual {u.shape}")
    n = ut.shape[0]
    m = dagger(ut) @ u
    return float((np.vdot(m, m).real + abs(np.trace(m)) ** 2) / (n * (n + 1)))


def projected_fidelity(target: TargetGate, partition: PartitionedEvolution) -> float:
    """Fidelity of the subspace block against the target.

    ``(Tr(U_s U_s†) + |Tr(U_tgt† U_s)|²) / (m(m+1))``.  For a unitary
    target this is exactly ``average_fidelity`` of the pair at dimension
    m; the same arithmetic is applied verbatim in non-unitary target
    mode.
    """
    _match_subspace(target, partition)
    us = partition.u_s
    m = target.m
    retained = float(np.vdot(us, us).real)
    overlap = abs(np.trace(dagger(target.u_tgt) @ us)) ** 2
    return float((retained + overlap) / (m * (m + 1)))


def nuclear_norm(c, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Sum of the singular values of a square matrix, as ``|Tr sqrt(c†c)|``.

    This is the largest ``|Tr(l† c)|`` any unitary ``l`` can reach.
    """
    m = as_square(c, "c")
    return float(abs(np.trace(sqrtm_psd(dagger(m) @ m, tols))))


def embed_target(target: TargetGate, complement_block, partition: PartitionedEvolution) -> np.ndarray:
    """Full-space matrix acting as the target on the subspace and as
    ``complement_block`` on the complement, with zero cross blocks."""
    _match_subspace(target, partition)
    block = as_square(complement_block, "complement_block")
    k = partition.n - partition.m
    if block.shape[0] != k:
        raise ValueError(f"complement block must be {k}x{k}, got {block.shape}")
    v = np.zeros((partition.n, partition.n), dtype=np.complex128)
    v[np.ix_(partition.subspace_indices, partition.subspace_indices)] = target.u_tgt
    v[np.ix_(partition.complement_indices, partition.complement_indices)] = block
    return v


def optimal_embedding(target: TargetGate, partition: PartitionedEvolution,
                      tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """The full-space unitary embedding of the target that maximizes the
    embedded fidelity.

    The complement block is the unitary polar factor of the evolution's
    complement block, phase-twisted so that its trace overlap lines up
    with the target's overlap phase.  A zero complement block gets the
    identity by convention.
    """
    if target.non_unitary:
        raise ValueError("optimal embedding requires a unitary target")
    _match_subspace(target, partition)
    c = partition.c
    if not c.any():
        return embed_target(target, np.eye(c.shape[0]), partition)
    theta = float(np.angle(np.trace(dagger(target.u_tgt) @ partition.u_s)))
    cu = polar(c, tols).unitary_factor
    phi0 = float(np.angle(np.trace(dagger(cu) @ c)))
    return embed_target(target, np.exp(1j * (phi0 - theta)) * cu, partition)


def embedding_fidelity(v_target, partition: PartitionedEvolution,
                       tols: Tolerances = DEFAULT_TOLS) -> float:
    """Fidelity of the full evolution against one full-space unitary target.

    ``(n + |Tr(V† U_f)|²) / (n(n+1))``.  The simplification to this form
    needs ``v_target`` unitary, so non-unitary input is rejected; use
    ``average_fidelity`` for the general trace formula.
    """
    v = require_unitary(v_target, tols.unitary, "v_target")
    n = partition.n
    if v.shape[0] != n:
        raise ValueError(f"v_target must be {n}x{n}, got {v.shape}")
    tr = np.trace(dagger(v) @ partition.u_f)
    return float((n + abs(tr) ** 2) / (n * (n + 1)))


def optimal_embedding_fidelity(target: TargetGate, partition: PartitionedEvolution,
                               tols: Tolerances = DEFAULT_TOLS) -> float:
    """Closed-form maximum of the embedded fidelity over complement blocks.

    Evaluated from the projected fidelity, the retained population and
    the nuclear norm of the complement block.  The equivalent
    ``(n + (r + s)²)/(n(n+1))`` form is computed alongside and the two
    must agree to the ``closed_form`` tolerance; the radicand
    ``m(m+1)F1 - Tr(U_sU_s†)`` equals ``r²``, so values inside the
    ``radicand`` tolerance below zero are clamped and anything lower is
    reported as inconsistent input.
    """
    if target.non_unitary:
        raise ValueError("closed-form maximization requires a unitary target")
    _match_subspace(target, partition)
    m, n = target.m, partition.n
    us = partition.u_s
    retained = float(np.vdot(us, us).real)
    r = float(abs(np.trace(dagger(target.u_tgt) @ us)))
    smax = nuclear_norm(partition.c, tols)
    f1 = (retained + r * r) / (m * (m + 1))
    radicand = m * (m + 1) * f1 - retained
    if radicand < -tols.radicand:
        raise ArithmeticError(
            f"m(m+1)F1 - Tr(U_sU_s†) = {radicand!r} should equal r² >= 0; "
            "inputs are inconsistent"
        )
    denom = n * (n + 1)
    value = (n + smax * smax + radicand + 2.0 * smax * math.sqrt(max(radicand, 0.0))) / denom
    check = (n + (r + smax) ** 2) / denom
    if abs(value - check) > tols.closed_form:
        raise ArithmeticError(f"closed-form routes disagree: {value!r} vs {check!r}")
    return value


def complement_fidelity(l, c, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Fidelity between a unitary complement target ``l`` and the
    complement block ``c``: the trace formula at dimension n-m."""
    return average_fidelity(l, c, tols)


def max_complement_fidelity(c, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Largest complement fidelity any unitary target can reach against ``c``.

    ``(Tr(c†c) + s²)/(k(k+1))`` with ``s`` the nuclear norm of ``c``;
    unity requires ``c`` itself unitary.
    """
    m = as_square(c, "c")
    k = m.shape[0]
    s = nuclear_norm(m, tols)
    return float((np.vdot(m, m).real + s * s) / (k * (k + 1)))


def block_population_bound(w, p: int, q: int,
                           tols: Tolerances = DEFAULT_TOLS) -> tuple[float, float]:
    """Population ``Tr(X X†)`` of the top-left p-by-q block of a unitary,
    paired with its cap ``min(p, q)``.

    Row sums bound the population by p and column sums by q, so the
    value can never exceed the returned bound; it is saturated when the
    block captures a full permutation's worth of weight.
    """
    m = require_unitary(w, tols.unitary, "w")
    n = m.shape[0]
    if not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"block shape {p}x{q} is out of range for an {n}x{n} matrix")
    x = m[:p, :q]
    return float(np.vdot(x, x).real), float(min(p, q))


def complement_overlap(v_target, partition: PartitionedEvolution,
                       tols: Tolerances = DEFAULT_TOLS) -> tuple[float, float]:
    """Magnitude and phase of the complement part of the trace overlap.

    For a full-space unitary target ``V`` partitioned like the
    evolution, returns ``(s, phi)`` with ``s e^{i phi} =
    Tr(J†A + K†B + L†C)`` — the piece of ``Tr(V† U_f)`` not accounted
    for by the subspace blocks.  ``s`` stays below m+n however ``V`` is
    chosen; for a block-diagonal ``V`` it reduces to ``|Tr(L†C)|``.
    """
    v = require_unitary(v_target, tols.unitary, "v_target")
    n = partition.n
    if v.shape[0] != n:
        raise ValueError(f"v_target must be {n}x{n}, got {v.shape}")
    sub, comp = partition.subspace_indices, partition.complement_indices
    j = v[np.ix_(sub, comp)]
    k = v[np.ix_(comp, sub)]
    l = v[np.ix_(comp, comp)]
    z = (np.trace(dagger(j) @ partition.a)
         + np.trace(dagger(k) @ partition.b)
         + np.trace(dagger(l) @ partition.c))
    return float(abs(z)), float(np.angle(z))


def embedding_fidelity_from_smax(f1: float, leakage_trace: float, r: float,
                                 s_max: float, n: int, m: int) -> float:
    """Maximized embedding fidelity assembled from already-known pieces.

    ``(n + m(m+1)f1 - leakage_trace + s_max² + 2 r s_max) / (n(n+1))``.
    Covers targets whose maximal complement overlap was obtained by
    other means, e.g. non-unitary targets.
    """
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")
    parts = (f1, leakage_trace, r, s_max)
    if not all(math.isfinite(x) for x in parts):
        raise ValueError(f"inputs must be finite, got {parts}")
    return (n + m * (m + 1) * f1 - leakage_trace + s_max ** 2 + 2.0 * r * s_max) / (n * (n + 1))


def hill_to_pedersen(f_h: float, n: int) -> float:
    """State-averaged fidelity equivalent to a normalized trace-overlap
    fidelity ``f_h`` in dimension ``n``: ``(1 + n f_h²)/(1 + n)``."""
    if not 0.0 <= f_h <= 1.0:
        raise ValueError(f"f_h must lie in [0, 1], got {f_h!r}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return (1.0 + n * f_h * f_h) / (1.0 + n)


def fidelity_report(target: TargetGate, partition: PartitionedEvolution,
                    tols: Tolerances = DEFAULT_TOLS) -> FidelityReport:
    """All fidelity numbers for one (target, partitioned evolution) pair."""
    _match_subspace(target, partition)
    us = partition.u_s
    overlap = complex(np.trace(dagger(target.u_tgt) @ us))
    return FidelityReport(
        f1=projected_fidelity(target, partition),
        f2=optimal_embedding_fidelity(target, partition, tols),
        s_max=nuclear_norm(partition.c, tols),
        r=float(abs(overlap)),
        theta=float(np.angle(overlap)),
        leakage_trace=float(np.vdot(us, us).real),
        f_out_max=max_complement_fidelity(partition.c, tols),
    )
