"""Subsystem bookkeeping: partial trace, partial transpose and realignment.

Basis ordering is |a> (x) |b> (x) |c> with the leftmost factor most
significant, i.e. flat index ``a * (dB * dC) + b * dC + c``.

The ``*_array`` functions work on raw arrays with optional leading batch
axes; the unsuffixed versions take and return :class:`DensityMatrix`.
"""

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import DimensionError, DomainError, ShapeError
from .linalg import HERMITICITY_TOL, as_matrix, eigvalsh, hermiticity_error, kron_all

TRACE_TOL = 1e-10
POSITIVITY_SLACK = -1e-9


def check_dims(dims, n=None):
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 2 for d in dims):
        raise DimensionError(f"every local dimension must be >= 2, got {dims}")
    if n is not None and prod(dims) != n:
        raise DimensionError(f"dims {dims} do not factor a {n}x{n} matrix")
    return dims


@dataclass(frozen=True)
class DensityMatrix:
    """A validated state on a tensor product of spaces with local dimensions ``dims``.

    Construction checks unit trace, Hermiticity and positivity (down to a
    -1e-9 slack).  Pass ``check=False`` to skip the checks, e.g. for
    out-of-domain exploratory states.
    """

    mat: np.ndarray
    dims: tuple
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        mat = as_matrix(self.mat, square=True)
        if mat.ndim != 2:
            raise DimensionError("DensityMatrix holds a single matrix")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "dims", check_dims(self.dims, mat.shape[0]))
        if self.check:
            validate_state(mat)

    @property
    def n(self):
        return self.mat.shape[0]

    def min_eigenvalue(self):
        return float(eigvalsh(self.mat)[0])


def validate_state(mat):
    tr = np.trace(mat)
    if abs(tr - 1.0) > TRACE_TOL:
        raise DomainError(f"trace is {tr.real:.12g}, expected 1")
    herr = float(hermiticity_error(mat))
    if herr > HERMITICITY_TOL:
        raise DomainError(f"matrix is not Hermitian (max |A - A^dagger| = {herr:.3e})")
    lo = float(eigvalsh(mat, check=False)[0])
    if lo < POSITIVITY_SLACK:
        raise DomainError(f"matrix is not positive (minimum eigenvalue {lo:.3e})")


def _split(mat, dims):
    batch = mat.shape[:-2]
    return mat.reshape(batch + dims + dims), batch


def ptrace_array(mat, dims, subsystem):
    """Trace out factor ``subsystem`` of ``mat`` (shape ``(..., N, N)``)."""
    dims = check_dims(dims, mat.shape[-1])
    k = len(dims)
    if not -k <= subsystem < k:
        raise DimensionError(f"subsystem {subsystem} out of range for dims {dims}")
    subsystem %= k
    t, batch = _split(mat, dims)
    nb = len(batch)
    out = np.trace(t, axis1=nb + subsystem, axis2=nb + k + subsystem)
    m = prod(dims) // dims[subsystem]
    return out.reshape(batch + (m, m))


def partial_transpose_array(mat, dims):
    """Transpose the second factor: entry ((i,j),(k,l)) -> ((i,l),(k,j))."""
    dims = check_dims(dims, mat.shape[-1])
    if len(dims) != 2:
        raise ShapeError(f"partial transpose needs a bipartite state, got dims {dims}")
    t, batch = _split(mat, dims)
    nb = len(batch)
    axes = list(range(nb)) + [nb, nb + 3, nb + 2, nb + 1]
    return t.transpose(axes).reshape(mat.shape)


def realign_array(mat, dims):
    """Realigned matrix: row (i,k), column (j,l) holds rho[(i,j),(k,l)]."""
    dims = check_dims(dims, mat.shape[-1])
    if len(dims) != 2:
        raise ShapeError(f"realignment needs a bipartite state, got dims {dims}")
    d1, d2 = dims
    t, batch = _split(mat, dims)
    nb = len(batch)
    axes = list(range(nb)) + [nb, nb + 2, nb + 1, nb + 3]
    return t.transpose(axes).reshape(batch + (d1 * d1, d2 * d2))


def partial_trace(rho, subsystem):
    """Reduced state with factor ``subsystem`` traced out."""
    out = ptrace_array(rho.mat, rho.dims, subsystem)
    dims = tuple(d for i, d in enumerate(rho.dims) if i != subsystem % len(rho.dims))
    if not dims:
        raise DimensionError("cannot trace out the only factor")
    return DensityMatrix(out, dims, check=rho.check)


def partial_transpose(rho):
    return partial_transpose_array(rho.mat, rho.dims)


def realign(rho):
    return realign_array(rho.mat, rho.dims)


def tensor(*states):
    """Product state of several :class:`DensityMatrix` objects."""
    mat = kron_all(*(s.mat for s in states))
    dims = sum((s.dims for s in states), ())
    return DensityMatrix(mat, dims, check=all(s.check for s in states))
