"""The two Horodecki qutrit-qutrit families, the auxiliary qubit and their composite."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .linalg import kron
from .tensor import DensityMatrix

NORMALIZATION_TOL = 1e-12


class Family(enum.Enum):
    STATE1 = 1
    STATE2 = 2

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower().removeprefix("state")
        try:
            return cls(int(text))
        except ValueError:
            raise ParameterError(f"unknown state family {value!r}; use 1 or 2") from None


def in_domain(family, alpha):
    """Whether ``alpha`` lies in the range where the family is a known state."""
    family = Family.parse(family)
    if family is Family.STATE1:
        return 2.0 <= alpha <= 5.0
    return 0.0 < alpha < 1.0


@dataclass(frozen=True)
class HorodeckiParams:
    family: Family
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if not in_domain(self.family, self.alpha):
            raise ParameterError(_domain_message(self.family, self.alpha))

    def state(self):
        return horodecki_state(self.family, self.alpha)


def _domain_message(family, alpha):
    allowed = "2 <= alpha <= 5" if family is Family.STATE1 else "0 < alpha < 1"
    return f"alpha = {alpha!r} outside the domain of {family.name.lower()} ({allowed})"


def horodecki_state1_matrix(alpha):
    """(2/7) P + (alpha/21) Q + ((5 - alpha)/21) R as a real 9x9 array."""
    psi = np.zeros(9)
    psi[[0, 4, 8]] = 1.0 / np.sqrt(3.0)
    mat = (2.0 / 7.0) * np.outer(psi, psi)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        mat[3 * a + b, 3 * a + b] += alpha / 21.0
    for a, b in ((1, 0), (2, 1), (0, 2)):
        mat[3 * a + b, 3 * a + b] += (5.0 - alpha) / 21.0
    return mat


def horodecki_state2_matrix(alpha):
    """The 3x3 Horodecki PPT entangled state, normalised by 1/(8 alpha + 1)."""
    mat = alpha * np.eye(9)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            mat[i, j] = alpha
    mat[6, 6] = mat[8, 8] = (1.0 + alpha) / 2.0
    mat[6, 8] = mat[8, 6] = np.sqrt(1.0 - alpha * alpha) / 2.0
    return mat / (8.0 * alpha + 1.0)


def horodecki_state1(alpha, allow_out_of_domain=False):
    """Qutrit-qutrit state, separable on [2, 3], PPT entangled on (3, 4], NPT on (4, 5]."""
    if not in_domain(Family.STATE1, alpha) and not allow_out_of_domain:
        raise ParameterError(_domain_message(Family.STATE1, alpha))
    ok = in_domain(Family.STATE1, alpha)
    return DensityMatrix(horodecki_state1_matrix(alpha), (3, 3), check=ok)


def horodecki_state2(alpha, allow_out_of_domain=False):
    if not in_domain(Family.STATE2, alpha) and not allow_out_of_domain:
        raise ParameterError(_domain_message(Family.STATE2, alpha))
    ok = in_domain(Family.STATE2, alpha)
    with np.errstate(invalid="ignore"):
        mat = horodecki_state2_matrix(alpha)
    return DensityMatrix(mat, (3, 3), check=ok)


def horodecki_state(family, alpha, allow_out_of_domain=False):
    if Family.parse(family) is Family.STATE1:
        return horodecki_state1(alpha, allow_out_of_domain)
    return horodecki_state2(alpha, allow_out_of_domain)


@dataclass(frozen=True)
class PureQubitState:
    """Amplitudes of c0|0> + c1|1>."""

    c0: complex
    c1: complex

    def __post_init__(self):
        norm = abs(self.c0) ** 2 + abs(self.c1) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ParameterError(f"|c0|^2 + |c1|^2 = {norm!r}, expected 1")

    @property
    def vector(self):
        return np.array([self.c0, self.c1], dtype=np.complex128)

    def density_matrix(self):
        v = self.vector
        return DensityMatrix(np.outer(v, v.conj()), (2,))


def aux_qubit(c0):
    """Qubit with amplitude ``c0`` on |0> and real nonnegative ``c1``."""
    c0 = complex(c0)
    p0 = abs(c0) ** 2
    if p0 > 1.0:
        raise ParameterError(f"|c0| = {abs(c0)!r} exceeds 1")
    qubit = PureQubitState(c0.real if c0.imag == 0 else c0, np.sqrt(1.0 - p0))
    return qubit, qubit.density_matrix()


def compose(rho_ab, qubit):
    """Tripartite product state rho_AB (x) |phi><phi| with dims (3, 3, 2)."""
    rho_c = qubit.density_matrix()
    return DensityMatrix(kron(rho_ab.mat, rho_c.mat), rho_ab.dims + rho_c.dims, check=rho_ab.check)


def maximally_entangled(d=3):
    psi = np.zeros(d * d)
    psi[:: d + 1] = 1.0 / np.sqrt(d)
    return DensityMatrix(np.outer(psi, psi), (d, d))
