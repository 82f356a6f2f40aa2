"""Small dense complex linear algebra.

Matrices here are at most 18x18, so everything is built on a cyclic
complex Jacobi eigensolver rather than LAPACK.  All routines accept a
single matrix of shape ``(n, n)`` or a stack of shape ``(..., n, n)``.
The rotation loop is compiled with numba; each matrix in a stack is
processed independently, so a result never depends on its neighbours.
"""

from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import ConvergenceError, DimensionError, DomainError, NumericalError

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-10
EIG_RESIDUAL_TOL = 1e-10

JACOBI_MAX_SWEEPS = 100
# off-diagonal Frobenius norm, relative to the Frobenius norm of the input
JACOBI_OFFDIAG_TOL = 1e-13


class HermitianEigensystem(NamedTuple):
    """Eigenvalues (nondecreasing) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m, square=False):
    """Return ``m`` as a finite complex128 array with at least two axes."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim < 2:
        raise DimensionError(f"expected a matrix, got array with shape {a.shape}")
    if a.shape[-1] == 0 or a.shape[-2] == 0:
        raise DimensionError(f"empty matrix with shape {a.shape}")
    if square and a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape[-2:]}")
    if not np.all(np.isfinite(a)):
        raise NumericalError("matrix contains NaN or Inf entries")
    return a


def dagger(m):
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(m, -1, -2))


def hermiticity_error(m):
    """Largest entrywise deviation ``max |A - A^dagger|`` (per matrix for stacks)."""
    m = np.asarray(m)
    return np.max(np.abs(m - dagger(m)), axis=(-2, -1))


def is_hermitian(m, tol=HERMITICITY_TOL):
    return bool(np.all(hermiticity_error(m) <= tol))


@njit(cache=True)
def _jacobi_kernel(a, tol, max_sweeps):
    """Cyclic complex Jacobi, one matrix at a time, in place on ``a`` (B, n, n).

    Returns eigenvalues (unsorted), eigenvectors and the sweep count per
    matrix (-1 where the sweep cap was hit).
    """
    nb, n, _ = a.shape
    w = np.zeros((nb, n))
    v = np.zeros((nb, n, n), dtype=np.complex128)
    sweeps = np.zeros(nb, dtype=np.int64)
    for b in range(nb):
        A = a[b]
        V = v[b]
        for i in range(n):
            V[i, i] = 1.0
        total = 0.0
        for i in range(n):
            for j in range(n):
                total += A[i, j].real ** 2 + A[i, j].imag ** 2
        thresh = tol * np.sqrt(total)
        done = False
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for i in range(n):
                for j in range(n):
                    if i != j:
                        off += A[i, j].real ** 2 + A[i, j].imag ** 2
            if np.sqrt(off) <= thresh:
                sweeps[b] = sweep
                done = True
                break
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    mag = abs(apq)
                    if mag == 0.0:
                        continue
                    phase = apq / mag
                    theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    # W = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                    w_pp = c + 0j
                    w_pq = s + 0j
                    w_qp = -s * np.conj(phase)
                    w_qq = c * np.conj(phase)
                    for k in range(n):  # A <- A W
                        x = A[k, p]
                        y = A[k, q]
                        A[k, p] = x * w_pp + y * w_qp
                        A[k, q] = x * w_pq + y * w_qq
                    for k in range(n):  # A <- W^dagger A
                        x = A[p, k]
                        y = A[q, k]
                        A[p, k] = np.conj(w_pp) * x + np.conj(w_qp) * y
                        A[q, k] = np.conj(w_pq) * x + np.conj(w_qq) * y
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for k in range(n):  # V <- V W
                        x = V[k, p]
                        y = V[k, q]
                        V[k, p] = x * w_pp + y * w_qp
                        V[k, q] = x * w_pq + y * w_qq
        if not done:
            sweeps[b] = -1
        for i in range(n):
            w[b, i] = A[i, i].real
    return w, v, sweeps


def _jacobi(a):
    w, v, sweeps = _jacobi_kernel(a.copy(), JACOBI_OFFDIAG_TOL, JACOBI_MAX_SWEEPS)
    if np.any(sweeps < 0):
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return w, v


def herm_eig(a, check=True):
    """Eigen-decompose a Hermitian matrix (or a stack of them).

    Returns a :class:`HermitianEigensystem` with eigenvalues sorted in
    nondecreasing order and eigenvectors as columns.  ``check=False`` skips
    the Hermiticity test; only the Hermitian part is used either way.

    >>> herm_eig(np.diag([3.0, 1.0, 2.0])).eigenvalues
    array([1., 2., 3.])
    """
    a = as_matrix(a, square=True)
    if check:
        err = np.max(hermiticity_error(a))
        if err > HERMITICITY_TOL:
            raise DomainError(f"matrix is not Hermitian (max |A - A^dagger| = {err:.3e})")
    a = 0.5 * (a + dagger(a))
    batch = a.shape[:-2]
    n = a.shape[-1]
    w, v = _jacobi(a.reshape(-1, n, n))
    return HermitianEigensystem(w.reshape(batch + (n,)), v.reshape(batch + (n, n)))


def eigvalsh(a, check=True):
    return herm_eig(a, check=check).eigenvalues


def singular_values(m):
    """Singular values in nonincreasing order.

    Computed as the nonnegative eigenvalues of the Hermitian dilation
    ``[[0, M], [M^dagger, 0]]``, whose spectrum is ``{+-sigma_k}`` padded with
    zeros.  This gives the same numbers as ``sqrt(eig(M^dagger M))`` without
    squaring the condition number, so near-zero singular values stay
    accurate to rounding level.
    """
    m = as_matrix(m)
    r, c = m.shape[-2:]
    k = min(r, c)
    batch = m.shape[:-2]
    aug = np.zeros(batch + (r + c, r + c), dtype=np.complex128)
    aug[..., :r, r:] = m
    aug[..., r:, :r] = dagger(m)
    w = herm_eig(aug, check=False).eigenvalues
    sv = w[..., ::-1][..., :k]
    return np.maximum(sv, 0.0)


def trace_norm(m, hermitian=False):
    """Sum of singular values.

    With ``hermitian=True`` the sum of absolute eigenvalues is used
    instead, which is cheaper and agrees for Hermitian input.
    """
    m = as_matrix(m, square=True)
    if hermitian:
        return np.sum(np.abs(herm_eig(m).eigenvalues), axis=-1)
    return np.sum(singular_values(m), axis=-1)


def unitary_from_eigensystem(eig, t):
    """``V diag(exp(-i lambda t)) V^dagger`` for scalar ``t`` or an array of times.

    An array ``t`` of shape ``(k,)`` yields a stack of shape ``(k, n, n)``.
    """
    w, v = eig
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise NumericalError("evolution time must be finite")
    phases = np.exp(-1j * np.multiply.outer(t, w))
    return (v * phases[..., None, :]) @ dagger(v)


def expm_hermitian_generator(h, t):
    """Unitary ``exp(-i H t)`` for Hermitian ``H`` via its eigendecomposition."""
    return unitary_from_eigensystem(herm_eig(h), t)


def kron(a, b):
    """Kronecker product; block ``(i, k)`` of the result is ``a[i, k] * b``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2:
        raise DimensionError("kron expects two matrices")
    (ra, ca), (rb, cb) = a.shape, b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def kron_all(*mats):
    out = np.ones((1, 1), dtype=np.complex128)
    for m in mats:
        out = kron(out, m)
    return out
