"""Sudarshan A-matrices, intermediate maps, Choi matrices and divisibility witnesses.

An :class:`AMap` acts on row-major vectorized density matrices,
``vec(rho') = A @ vec(rho)``. The involution ``B[j'j; k'k] = A[j'k'; jk]``
turns it into the Choi matrix ``sum_jk E(|j><k|) (x) |j><k|`` (trace 2).
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import channels, qmat
from .channels import AMPLITUDE_DAMPING, DEPHASING, ENM
from .errors import DomainError, SingularityError

SINGULAR_FLOOR = 1e-9
PSD_TOL = 1e-9

PAULIS = (channels.I2, channels.SX, channels.SY, channels.SZ)


@dataclass(frozen=True, eq=False)
class AMap:
    """Superoperator ``A(t_to, t_from)`` built from a map that started at ``t0``."""

    matrix: np.ndarray
    t_to: float
    t_from: float
    t0: float

    def apply(self, rho):
        return qmat.unvectorize(self.matrix @ qmat.vectorize(rho))


@dataclass(frozen=True, eq=False)
class ChoiMat:
    matrix: np.ndarray
    kind: str  # "full-map", "intermediate" or "generator"

    def eigenvalues(self):
        return qmat.hermitian_eig(self.matrix).eigenvalues


@dataclass(frozen=True)
class WitnessReport:
    min_eigenvalue: float
    interval: tuple
    t0: float
    verdict: str


def pauli_a_matrix(l1, l2, l3):
    """A-matrix of the Pauli channel scaling Bloch components by ``(l1, l2, l3)``."""
    q = (
        (1 + l1 + l2 + l3) / 4,
        (1 + l1 - l2 - l3) / 4,
        (1 - l1 + l2 - l3) / 4,
        (1 - l1 - l2 + l3) / 4,
    )
    return sum(qi * np.kron(s, s.conj()) for qi, s in zip(q, PAULIS))


def kraus_a_matrix(ops):
    return sum(np.kron(k, k.conj()) for k in ops)


def _check_order(*times):
    for t in times:
        if not math.isfinite(t):
            raise DomainError("times must be finite")
    for later, earlier in zip(times, times[1:]):
        if later < earlier:
            raise DomainError(f"times must be ordered, got {times}")
    if times[-1] < 0:
        raise DomainError("initial time must be >= 0")


def a_matrix(fam, t, t0=0.0):
    """Full map ``A(t, t0)``; it depends on the elapsed time ``t - t0`` only."""
    t, t0 = float(t), float(t0)
    _check_order(t, t0)
    elapsed = t - t0
    if isinstance(fam, DEPHASING):
        p = channels.mixing_p(fam, elapsed)
        m = np.diag([1.0, p, p, 1.0]).astype(complex)
    elif isinstance(fam, ENM):
        m = pauli_a_matrix(*channels.pauli_eigenvalues(fam, elapsed))
    elif isinstance(fam, AMPLITUDE_DAMPING):
        m = kraus_a_matrix(channels.kraus(fam, elapsed))
    else:
        raise TypeError(f"unknown family {fam!r}")
    return AMap(m, t_to=t, t_from=t0, t0=t0)


def intermediate_a(fam, t2, t1, t0=0.0):
    """Propagator ``A(t2, t1) = A(t2, t0) A(t1, t0)^-1``.

    Raises:
        SingularityError: if ``A(t1, t0)`` is (numerically) not invertible.
    """
    t2, t1, t0 = float(t2), float(t1), float(t0)
    _check_order(t2, t1, t0)
    a2 = a_matrix(fam, t2, t0).matrix
    a1 = a_matrix(fam, t1, t0).matrix
    try:
        inv = qmat.inverse(a1, min_singular=SINGULAR_FLOOR)
    except SingularityError as exc:
        raise SingularityError(
            f"{fam.name}: map A(t1={t1:.9g}, t0={t0:.9g}) is not invertible",
            exc.smallest_singular_value,
        ) from None
    return AMap(a2 @ inv, t_to=t2, t_from=t1, t0=t0)


def involution(a):
    """Choi (B) matrix of an :class:`AMap`."""
    kind = "full-map" if a.t_from == a.t0 else "intermediate"
    return ChoiMat(qmat.reshuffle(a.matrix), kind)


def choi(fam, t, t0=0.0):
    return involution(a_matrix(fam, t, t0))


def intermediate_choi(fam, t2, t1, t0=0.0):
    return involution(intermediate_a(fam, t2, t1, t0))


def cp_witness(fam, t1, t2, t0=0.0, tol=PSD_TOL):
    """Smallest eigenvalue of the intermediate Choi matrix on ``[t1, t2]``.

    A value below ``-tol`` certifies that ``E(t2, t1)`` is not completely
    positive.
    """
    if not t2 > t1:
        raise DomainError(f"need t2 > t1, got t1={t1}, t2={t2}")
    lam = float(intermediate_choi(fam, t2, t1, t0).eigenvalues()[-1])
    verdict = "cp-violated" if lam < -tol else "cp-ok"
    return WitnessReport(lam, (float(t1), float(t2)), float(t0), verdict)


def tss_witness(fam, t1, t2, t0_grid=None):
    """Largest trace-norm spread of the intermediate Choi matrix over initial times.

    ``t1`` and ``t2`` are held fixed while ``t0`` runs over ``t0_grid``
    (default ``{0, 0.25, 0.5, 1} * t1``). Zero for a semigroup; a positive
    value shows the propagator remembers ``t0``.
    """
    if t0_grid is None:
        t0_grid = [f * t1 for f in (0.0, 0.25, 0.5, 1.0)]
    t0_grid = [float(t0) for t0 in t0_grid]
    if any(t0 > t1 for t0 in t0_grid):
        raise DomainError("every t0 must satisfy t0 <= t1")
    chois = [intermediate_choi(fam, t2, t1, t0).matrix for t0 in t0_grid]
    spread = 0.0
    for x, y in itertools.combinations(chois, 2):
        spread = max(spread, float(qmat.trace_norm(x - y)))
    return spread


def bloch_affine(a):
    """Affine Bloch-vector form ``r -> T r + c`` of a qubit superoperator."""
    m = a.matrix if isinstance(a, AMap) else np.asarray(a)
    out = [qmat.unvectorize(m @ qmat.vectorize(s)) for s in PAULIS]
    mat = np.array([[0.5 * np.trace(si @ out[j]).real for j in range(1, 4)] for si in PAULIS[1:]])
    shift = np.array([0.5 * np.trace(si @ out[0]).real for si in PAULIS[1:]])
    return mat, shift


def _sphere(n):
    # Fibonacci lattice plus the coordinate axes
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    phi = math.pi * (1.0 + math.sqrt(5.0)) * i
    rho = np.sqrt(1.0 - z * z)
    pts = np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)
    axes = np.vstack([np.eye(3), -np.eye(3)])
    return np.vstack([axes, pts])


def p_witness(fam, t1, t2, t0=0.0, tol=PSD_TOL, samples=4000):
    """One-sided positivity witness for the intermediate map on ``[t1, t2]``.

    Returns the smallest output eigenvalue ``(1 - |T r + c|) / 2`` over
    sampled pure input states. The coordinate axes are always sampled, which
    makes the check exact for the axis-aligned maps of every family here.
    """
    if not t2 > t1:
        raise DomainError(f"need t2 > t1, got t1={t1}, t2={t2}")
    mat, shift = bloch_affine(intermediate_a(fam, t2, t1, t0))
    radius = np.linalg.norm(_sphere(samples) @ mat.T + shift, axis=1)
    lam = float(0.5 * (1.0 - radius.max()))
    verdict = "p-violated" if lam < -tol else "p-ok"
    return WitnessReport(lam, (float(t1), float(t2)), float(t0), verdict)
