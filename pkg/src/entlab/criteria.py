"""Negativity, realignment (CCNR) measure and the reduction criterion."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .linalg import eigvalsh, kron, singular_values
from .tensor import partial_transpose_array, ptrace_array, realign_array

N_TOL = 1e-9
R_TOL = 1e-9
REDUCTION_TOL = 1e-10


class ClassificationLabel(enum.Enum):
    UNDETECTED = "Undetected"
    BOUND_ENTANGLED_PPT = "BoundEntangledPPT"
    FREE_ENTANGLED = "FreeEntangled"
    REALIGNMENT_NEGATIVE = "RealignmentNegative"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ReductionReport:
    min_eig_side_a: float
    min_eig_side_b: float

    @property
    def distillable(self):
        return min(self.min_eig_side_a, self.min_eig_side_b) < -REDUCTION_TOL


@dataclass(frozen=True)
class CriteriaResult:
    negativity: float
    realignment: float
    reduction: ReductionReport

    @property
    def label(self):
        return classify(self.negativity, self.realignment)


def _bipartite(rho):
    mat, dims = (rho.mat, rho.dims) if hasattr(rho, "dims") else (np.asarray(rho), (3, 3))
    if len(dims) != 2:
        raise ShapeError(f"expected a bipartite state, got dims {dims}")
    return mat, dims


def negativity_array(mat, dims=(3, 3)):
    """(||rho^T_B||_1 - 1) / 2 for a matrix or stack of matrices."""
    w = eigvalsh(partial_transpose_array(mat, dims), check=False)
    return (np.sum(np.abs(w), axis=-1) - 1.0) / 2.0


def realignment_array(mat, dims=(3, 3)):
    """(||R(rho)||_1 - 1) / 2 for a matrix or stack of matrices."""
    sv = singular_values(realign_array(mat, dims))
    return (np.sum(sv, axis=-1) - 1.0) / 2.0


def reduction_array(mat, dims=(3, 3)):
    """Minimum eigenvalues of rho_A (x) I - rho and I (x) rho_B - rho."""
    da, db = dims
    rho_a = ptrace_array(mat, dims, 1)
    rho_b = ptrace_array(mat, dims, 0)
    side_a = np.einsum("...ij,kl->...ikjl", rho_a, np.eye(db)).reshape(mat.shape) - mat
    side_b = np.einsum("ij,...kl->...ikjl", np.eye(da), rho_b).reshape(mat.shape) - mat
    return eigvalsh(side_a, check=False)[..., 0], eigvalsh(side_b, check=False)[..., 0]


def negativity(rho):
    mat, dims = _bipartite(rho)
    return float(negativity_array(mat, dims))


def realignment_measure(rho):
    mat, dims = _bipartite(rho)
    return float(realignment_array(mat, dims))


def reduction_report(rho):
    """Evaluate both one-sided reduction conditions.

    A negative eigenvalue on either side means the state violates the
    reduction criterion and is therefore distillable.
    """
    mat, dims = _bipartite(rho)
    a, b = reduction_array(mat, dims)
    return ReductionReport(float(a), float(b))


def classify(n, r):
    if n > N_TOL:
        return ClassificationLabel.FREE_ENTANGLED
    if r > R_TOL:
        return ClassificationLabel.BOUND_ENTANGLED_PPT
    if r < -R_TOL:
        return ClassificationLabel.REALIGNMENT_NEGATIVE
    return ClassificationLabel.UNDETECTED


def evaluate(rho):
    """All three criteria for one bipartite state."""
    return CriteriaResult(negativity(rho), realignment_measure(rho), reduction_report(rho))


def reduction_side_matrices(rho):
    """The two operators whose positivity the reduction criterion tests."""
    mat, dims = _bipartite(rho)
    rho_a = ptrace_array(mat, dims, 1)
    rho_b = ptrace_array(mat, dims, 0)
    return kron(rho_a, np.eye(dims[1])) - mat, kron(np.eye(dims[0]), rho_b) - mat
