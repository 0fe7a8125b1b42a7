"""Dense complex linear algebra kernels.

Plain ``numpy.ndarray`` in, new arrays out; nothing here mutates its
arguments or keeps internal state, so everything is safe to call
concurrently.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .tolerances import DEFAULT_TOLS, Tolerances


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class PolarFactors(NamedTuple):
    unitary_factor: np.ndarray
    hermitian_factor: np.ndarray


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError(f"{name} contains non-finite entries")
    return m


def as_square(a, name: str = "matrix") -> np.ndarray:
    m = as_complex_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a).conj().T


def direct_sum(a, b) -> np.ndarray:
    """Block matrix with ``a`` top-left, ``b`` bottom-right, zeros elsewhere."""
    a = as_complex_matrix(a, "a")
    b = as_complex_matrix(b, "b")
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.complex128)
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


def unitarity_defect(a) -> float:
    """``||a†a - 1||_F``."""
    m = as_square(a)
    return float(np.linalg.norm(dagger(m) @ m - np.eye(m.shape[0])))


def hermiticity_defect(a) -> float:
    """``||a - a†||_F``."""
    m = as_square(a)
    return float(np.linalg.norm(m - dagger(m)))


def require_unitary(a, tol: float, name: str = "matrix") -> np.ndarray:
    m = as_square(a, name)
    defect = unitarity_defect(m)
    if defect > tol:
        raise ValueError(f"{name} is not unitary: ||a†a - 1|| = {defect:.3e} > {tol:.1e}")
    return m


def require_hermitian(a, tol: float, name: str = "matrix") -> np.ndarray:
    m = as_square(a, name)
    defect = hermiticity_defect(m)
    if defect > tol * max(1.0, float(np.linalg.norm(m))):
        raise ValueError(f"{name} is not Hermitian: ||a - a†|| = {defect:.3e}")
    return m


def eigh(a, tols: Tolerances = DEFAULT_TOLS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input may carry a Hermiticity defect up to the tolerance; it is
    symmetrized before factorization, so the eigenvector columns are
    orthonormal to roundoff regardless.
    """
    m = require_hermitian(a, tols.hermitian)
    w, v = np.linalg.eigh((m + dagger(m)) / 2.0)
    return EigenDecomposition(w, v)


def propagator(h, t: float, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h``, via the eigendecomposition."""
    w, v = eigh(h, tols)
    return (v * np.exp(-1j * w * t)) @ dagger(v)


def sqrtm_psd(a, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues down to ``-psd_clamp`` times the top of the spectrum are
    treated as roundoff and clamped to zero; anything lower is rejected.
    Positive eigenvalues below the spectral noise floor (a small multiple
    of machine epsilon times the top) are zeroed as well — without this,
    exactly singular inputs grow sqrt(eps)-sized phantom roots.
    """
    w, v = eigh(a, tols)
    top = max(float(w[-1]), 0.0)
    if float(w[0]) < -tols.psd_clamp * top:
        raise ValueError(
            f"matrix is not PSD: smallest eigenvalue {float(w[0]):.3e} is below "
            f"the clamp threshold {-tols.psd_clamp * top:.3e}"
        )
    floor = 16.0 * w.shape[0] * np.finfo(np.float64).eps * top
    s = (v * np.sqrt(np.where(w < floor, 0.0, w))) @ dagger(v)
    return (s + dagger(s)) / 2.0


def polar(c, tols: Tolerances = DEFAULT_TOLS) -> PolarFactors:
    """Polar factors ``(u, h)`` with ``c = u h``, u unitary, h Hermitian PSD.

    ``u`` is the unitary matrix closest to ``c`` in Frobenius norm and
    ``h`` equals the principal square root of ``c†c``.  The SVD route
    keeps ``u`` unitary, and the factorization deterministic, even when
    ``c`` is singular.
    """
    m = as_square(c, "polar input")
    w, s, vh = np.linalg.svd(m)
    h = (dagger(vh) * s) @ vh
    return PolarFactors(w @ vh, (h + dagger(h)) / 2.0)
