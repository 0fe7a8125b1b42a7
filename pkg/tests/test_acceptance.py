"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
All randomness is seeded, so every run checks the same instances.
"""

import time

import numpy as np
import pytest

from leakfid.fidelity import (
    PartitionedEvolution,
    TargetGate,
    average_fidelity,
    block_population_bound,
    complement_overlap,
    embed_target,
    embedding_fidelity,
    fidelity_report,
    hill_to_pedersen,
    nuclear_norm,
    optimal_embedding,
    optimal_embedding_fidelity,
    projected_fidelity,
)
from leakfid.haar import (
    SampleConfig,
    average_fidelity_mc,
    embedding_fidelity_search,
    generator,
    haar_unitary,
)
from leakfid.linalg import dagger, polar, unitarity_defect
from leakfid.qubit_resonator import SystemParams, sweep, sweep_csv


def _report(num: int, started: float, detail: str) -> None:
    print(f"criterion {num}: PASS ({detail}) [{time.perf_counter() - started:.1f}s]")


def _random_partition(n, m, rng):
    idx = tuple(sorted(rng.choice(n, size=m, replace=False).tolist()))
    return PartitionedEvolution(haar_unitary(n, rng), idx)


def _block_diagonal(n, m, rng):
    idx = tuple(sorted(rng.choice(n, size=m, replace=False).tolist()))
    comp = tuple(i for i in range(n) if i not in idx)
    u_s, w = haar_unitary(m, rng), haar_unitary(n - m, rng)
    u_f = np.zeros((n, n), dtype=complex)
    u_f[np.ix_(idx, idx)] = u_s
    u_f[np.ix_(comp, comp)] = w
    return PartitionedEvolution(u_f, idx), u_s


def test_criterion_1_trace_formula_vs_monte_carlo():
    started = time.perf_counter()
    rng = generator(1001)
    hits = 0
    for k in range(20):
        n = 2 + k % 5
        u_t, u = haar_unitary(n, rng), haar_unitary(n, rng)
        exact = average_fidelity(u_t, u)
        est = average_fidelity_mc(u_t, u, SampleConfig(seed=2000 + k, n_samples=200_000))
        if abs(est.mean - exact) <= 4.0 * est.std_error:
            hits += 1
    assert hits >= 19
    _report(1, started, f"{hits}/20 pairs within 4 standard errors")


def test_criterion_2_closed_form_maximization():
    started = time.perf_counter()
    rng = generator(1002)
    worst_gap = 0.0
    for k in range(50):
        n = 4 + k % 5  # 4..8
        m = 1 + k % (n - 1)
        part = _random_partition(n, m, rng)
        target = TargetGate(haar_unitary(m, rng))
        closed = optimal_embedding_fidelity(target, part)
        found = embedding_fidelity_search(target, part, trials=1000, seed=3000 + k)
        assert found <= closed + 1e-10
        attained = embedding_fidelity(optimal_embedding(target, part), part)
        assert abs(attained - closed) <= 1e-10
        worst_gap = max(worst_gap, closed - found)
    _report(2, started, f"50 cases, search never above the closed form; "
                        f"largest search shortfall {worst_gap:.2e}")


def test_criterion_3_unity_limit():
    started = time.perf_counter()
    rng = generator(1003)
    for k in range(20):
        n = 3 + k % 6
        m = 1 + k % (n - 1)
        part, u_s = _block_diagonal(n, m, rng)
        target = TargetGate(u_s)
        assert abs(projected_fidelity(target, part) - 1.0) <= 1e-12
        assert abs(optimal_embedding_fidelity(target, part) - 1.0) <= 1e-12
    _report(3, started, "20 block-diagonal evolutions give both fidelities = 1")


def test_criterion_4_unitary_subspace_inequality():
    started = time.perf_counter()
    rng = generator(1004)
    for k in range(1000):
        n = 3 + k % 6
        m = 1 + k % (n - 1)
        part, _ = _block_diagonal(n, m, rng)
        target = TargetGate(haar_unitary(m, rng))
        f1 = projected_fidelity(target, part)
        f2 = optimal_embedding_fidelity(target, part)
        assert f2 >= f1 - 1e-12
    _report(4, started, "1000 unitary-subspace cases satisfy F2 >= F1")


def test_criterion_5_block_population_bound():
    started = time.perf_counter()
    rng = generator(1005)
    for _ in range(1000):
        n = int(rng.integers(2, 10))
        w = haar_unitary(n, rng)
        p = int(rng.integers(1, n + 1))
        q = int(rng.integers(1, n + 1))
        value, bound = block_population_bound(w, p, q)
        assert value <= bound + 1e-10
    # permutation steering the whole q-column block into the first p rows
    n, p, q = 9, 4, 3
    w = np.zeros((n, n))
    for j in range(q):
        w[p - 1 - j, j] = 1.0
    remaining_rows = [i for i in range(n) if not (p - q <= i <= p - 1)]
    for col, row in zip(range(q, n), remaining_rows):
        w[row, col] = 1.0
    value, bound = block_population_bound(w, p, q)
    assert value == bound == float(min(p, q))
    _report(5, started, "1000 random blocks below min(p, q); permutation saturates it")


def test_criterion_6_polar_and_nuclear_norm_kernel():
    started = time.perf_counter()
    rng = generator(1006)
    for k in range(1000):
        n = 2 + k % 7  # dims 2..8
        c = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        c *= 10.0 ** ((k % 5) - 2)
        if k % 3 == 0:
            c[:, : 1 + n // 2] = 0.0  # rank-deficient construction
        if k % 7 == 0:
            c = np.outer(c[:, -1], c[-1, :])  # rank one
        cu, ch = polar(c)
        scale = max(1.0, np.linalg.norm(c))
        assert np.linalg.norm(cu @ ch - c) <= 1e-10 * scale
        assert unitarity_defect(cu) <= 1e-10
        singular_sum = float(np.linalg.svd(c, compute_uv=False).sum())
        assert abs(nuclear_norm(c) - singular_sum) <= 1e-10 * max(1.0, singular_sum)
    _report(6, started, "1000 polar decompositions reconstruct; "
                        "nuclear norm matches the SVD spectrum")


def test_criterion_7_controlled_z_sweep():
    started = time.perf_counter()
    params = SystemParams()
    result = sweep(params, 0.0, 50.0, 501)
    assert abs(result.times[0]) <= 1e-15
    assert abs(result.f1_series[0] - 0.4) <= 1e-12
    assert abs(result.f2_series[0] - 29.0 / 45.0) <= 1e-12
    assert abs(result.leakage_series[0] - 4.0) <= 1e-12
    assert np.all(result.f2_series >= result.f1_series - 1e-12)
    for series in (result.f1_series, result.f2_series):
        assert np.all(series >= 0.0) and np.all(series <= 1.0)
    assert np.all(result.leakage_series >= 0.0)
    assert np.all(result.leakage_series <= 4.0 + 1e-12)
    again = sweep(params, 0.0, 50.0, 501)
    assert sweep_csv(result, params).encode() == sweep_csv(again, params).encode()
    _report(7, started, "t=0 row exact, F2 >= F1 on all 501 points, "
                        "byte-identical CSV across runs")


def test_criterion_8_non_unitary_target_bound():
    started = time.perf_counter()
    rng = generator(1008)
    n, m = 6, 2
    for _ in range(1000):
        part = _random_partition(n, m, rng)
        v = haar_unitary(n, rng)
        s, _ = complement_overlap(v, part)
        assert s <= m + n + 1e-9
    for _ in range(50):
        part = _random_partition(n, m, rng)
        target = TargetGate(haar_unitary(m, rng))
        block = haar_unitary(n - m, rng)
        s, _ = complement_overlap(embed_target(target, block, part), part)
        assert abs(s - abs(np.trace(dagger(block) @ part.c))) <= 1e-12
    _report(8, started, "1000 general embeddings respect s <= m+n; "
                        "block-diagonal ones reduce to |Tr(L†C)|")


def test_criterion_9_fidelity_convention_converter():
    started = time.perf_counter()
    assert hill_to_pedersen(1.0, 4) == 1.0
    assert hill_to_pedersen(0.0, 4) == pytest.approx(0.2, abs=0.0)
    values = [hill_to_pedersen(f, 4) for f in np.linspace(0.0, 1.0, 100)]
    assert all(b > a for a, b in zip(values, values[1:]))
    _report(9, started, "endpoint values exact, monotone on a 100-point grid")
