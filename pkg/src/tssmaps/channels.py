"""Qubit noise families: mixing functions, decay rates, Kraus operators and
generator Choi matrices.

Every family is a frozen dataclass. Dynamical maps depend on the elapsed
time only, ``E(t, t0) = E(t - t0)``, so all functions here take an elapsed
time ``t >= 0``. Closed forms accept scalars or numpy arrays.

Dephasing families (``OUN``, ``PLN``, ``ModOUN``, ``RTN``) act as
``rho -> (1+p)/2 rho + (1-p)/2 Z rho Z`` with canonical master equation
``drho/dt = gamma(t) (Z rho Z - rho)`` and ``gamma = -p'/(2p)``.
``ENM`` is a three-rate Pauli channel, ``ADQDS`` and ``NMAD`` are amplitude
damping channels with ``drho/dt = gamma(t) (s rho s^+ - {s^+ s, rho}/2)``,
``s = |0><1|``.
"""

import math
from dataclasses import dataclass, fields
from typing import ClassVar, Union

import numpy as np

from . import qmat
from .errors import DomainError, FamilyMismatchError, GeneratorSingularityError, UnsupportedRepresentationError

SINGULARITY_FLOOR = 1e-9
CONVENTIONS = ("d-factor", "unit")

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|, decays |1> -> |0>


# ---------------------------------------------------------------------------
# generator rates


@dataclass(frozen=True)
class PauliRates:
    """Rates of ``sum_j gamma_j (sigma_j rho sigma_j - rho)``."""

    gamma1: float
    gamma2: float
    gamma3: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.gamma1, self.gamma2, self.gamma3)):
            raise DomainError("Pauli rates must be finite")


@dataclass(frozen=True)
class ADRate:
    """Rate of the amplitude damping generator."""

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError("amplitude damping rate must be finite")


GeneratorRates = Union[PauliRates, ADRate]


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class Channel:
    name: ClassVar[str] = ""
    kind: ClassVar[str] = ""  # "dephasing", "pauli" or "ad"

    def _positive(self, *names, allow_inf=()):
        for n in names:
            v = getattr(self, n)
            if not isinstance(v, (int, float)) or math.isnan(v) or v <= 0:
                raise DomainError(f"{self.name}: parameter {n} must be > 0, got {v!r}")
            if math.isinf(v) and n not in allow_inf:
                raise DomainError(f"{self.name}: parameter {n} must be finite")

    def params(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class OUN(Channel):
    """Ornstein-Uhlenbeck dephasing. ``g = inf`` gives the semigroup limit."""

    G: float
    g: float
    name: ClassVar[str] = "oun"
    kind: ClassVar[str] = "dephasing"

    def __post_init__(self):
        self._positive("G", "g", allow_inf=("g",))

    def _p(self, t):
        if math.isinf(self.g):
            return np.exp(-0.5 * self.G * t)
        return np.exp(-0.5 * self.G * (np.expm1(-self.g * t) / self.g + t))

    def _rate(self, t):
        if math.isinf(self.g):
            return np.full_like(t, 0.25 * self.G)
        return -0.25 * self.G * np.expm1(-self.g * t)


@dataclass(frozen=True)
class PLN(Channel):
    """Power-law dephasing. ``g = 0`` gives the semigroup limit."""

    G: float
    g: float
    name: ClassVar[str] = "pln"
    kind: ClassVar[str] = "dephasing"

    def __post_init__(self):
        self._positive("G")
        if not isinstance(self.g, (int, float)) or not (0 <= self.g < math.inf):
            raise DomainError(f"pln: parameter g must be finite and >= 0, got {self.g!r}")

    def _p(self, t):
        u = self.g * t
        return np.exp(-self.G * t * (u + 2.0) / (2.0 * (u + 1.0) ** 2))

    def _rate(self, t):
        return self.G / (2.0 * (self.g * t + 1.0) ** 3)


@dataclass(frozen=True)
class ModOUN(Channel):
    """Ornstein-Uhlenbeck dephasing with a periodic modulation of strength ``k``."""

    a: float
    r: float
    k: float
    name: ClassVar[str] = "modoun"
    kind: ClassVar[str] = "dephasing"

    def __post_init__(self):
        self._positive("a", "r")
        if not isinstance(self.k, (int, float)) or not math.isfinite(self.k) or self.k == 0:
            raise DomainError(f"modoun: parameter k must be a finite nonzero real, got {self.k!r}")

    def _envelope(self, t):
        f = np.expm1(-self.r * t) / self.r + t
        df = -np.expm1(-self.r * t)
        s, c = np.sin(t / self.r), np.cos(t / self.r)
        h = s * s / self.k + c * c
        dh = (1.0 / self.k - 1.0) * np.sin(2.0 * t / self.r) / self.r
        return f, df, h, dh

    def _p(self, t):
        f, _, h, _ = self._envelope(t)
        return np.exp(-0.5 * self.a * f * h)

    def _rate(self, t):
        f, df, h, dh = self._envelope(t)
        return 0.25 * self.a * (df * h + f * dh)


@dataclass(frozen=True)
class RTN(Channel):
    """Random telegraph dephasing; ``g = inf`` is the (trivial) semigroup limit."""

    gamma0: float
    g: float
    name: ClassVar[str] = "rtn"
    kind: ClassVar[str] = "dephasing"

    def __post_init__(self):
        self._positive("gamma0", "g", allow_inf=("g",))

    @property
    def omega_squared(self):
        return (2.0 * self.gamma0 / self.g) ** 2 - 1.0

    def _scaled_parts(self, t):
        """``(C, S, scale)`` with ``p = scale * (C + S)``.

        Trigonometric branch when ``g < 2 gamma0``, hyperbolic otherwise;
        the hyperbolic pair is rescaled by ``exp(-g|w|t)`` to avoid overflow.
        """
        g, w2 = self.g, self.omega_squared
        if w2 > 0:
            w = math.sqrt(w2)
            u = g * w * t
            return np.cos(u), np.sin(u) / w, np.exp(-g * t)
        if w2 < 0:
            w = math.sqrt(-w2)
            x2 = (2.0 * self.gamma0 / g) ** 2
            e = np.exp(-2.0 * g * w * t)
            one_minus_w = x2 / (1.0 + w)
            return 0.5 * (1.0 + e), 0.5 * (1.0 - e) / w, np.exp(-g * one_minus_w * t)
        return np.ones_like(t), g * t, np.exp(-g * t)

    def _p(self, t):
        if math.isinf(self.g):
            return np.ones_like(t)
        c, s, scale = self._scaled_parts(t)
        return scale * (c + s)

    def _rate(self, t):
        if math.isinf(self.g):
            return np.zeros_like(t)
        c, s, _ = self._scaled_parts(t)
        return 2.0 * self.gamma0 ** 2 / self.g * s / (c + s)

    def first_zero(self):
        """First time at which ``p`` vanishes (``inf`` if it never does)."""
        if math.isinf(self.g) or self.omega_squared <= 0:
            return math.inf
        w = math.sqrt(self.omega_squared)
        return (math.pi - math.atan(w)) / (self.g * w)


@dataclass(frozen=True)
class ADQDS(Channel):
    """Semigroup amplitude damping, ``lambda(t) = 1 - exp(-gamma0 t)``."""

    gamma0: float
    name: ClassVar[str] = "ad"
    kind: ClassVar[str] = "ad"

    def __post_init__(self):
        self._positive("gamma0")

    def _survival(self, t):
        return np.exp(-self.gamma0 * t)

    def _rate(self, t):
        return np.full_like(t, self.gamma0)


@dataclass(frozen=True)
class NMAD(Channel):
    """Amplitude damping from a resonant Lorentzian bath of width ``g``."""

    gamma0: float
    g: float
    name: ClassVar[str] = "nmad"
    kind: ClassVar[str] = "ad"

    def __post_init__(self):
        self._positive("gamma0", "g")

    @property
    def l_squared(self):
        return self.g * (self.g - 2.0 * self.gamma0)

    def _scaled_parts(self, t):
        """``(C, S, scale)`` with ``G = scale * (C + g S)``."""
        g, l2 = self.g, self.l_squared
        if l2 < 0:
            lm = math.sqrt(-l2)
            return np.cos(0.5 * lm * t), np.sin(0.5 * lm * t) / lm, np.exp(-0.5 * g * t)
        if l2 > 0:
            lm = math.sqrt(l2)
            e = np.exp(-lm * t)
            g_minus_l = 2.0 * self.gamma0 * g / (g + lm)
            return 0.5 * (1.0 + e), 0.5 * (1.0 - e) / lm, np.exp(-0.5 * g_minus_l * t)
        return np.ones_like(t), 0.5 * t, np.exp(-0.5 * g * t)

    def _G(self, t):
        c, s, scale = self._scaled_parts(t)
        return scale * (c + self.g * s)

    def _survival(self, t):
        return self._G(t) ** 2

    def _rate(self, t):
        c, s, _ = self._scaled_parts(t)
        return 2.0 * self.gamma0 * self.g * s / (self.g * s + c)

    def first_zero(self):
        """First zero of ``G(t)`` (``inf`` outside the oscillatory regime)."""
        if self.l_squared >= 0:
            return math.inf
        lm = math.sqrt(-self.l_squared)
        return 2.0 * (math.pi - math.atan(lm / self.g)) / lm


@dataclass(frozen=True)
class ENM(Channel):
    """Pauli channel with ``gamma1 = gamma2 = 1`` and ``gamma3(t) = -tanh t``."""

    name: ClassVar[str] = "enm"
    kind: ClassVar[str] = "pauli"

    def _rate(self, t):
        return -np.tanh(t)

    def pauli_eigenvalues(self, t):
        # lambda_i = exp(-2 int_0^t (Gamma - gamma_i)), Gamma = 2 - tanh s
        x = np.exp(-2.0 * t)
        lam12 = (0.5 * (1.0 + x)) ** 2
        return lam12, lam12, x * x


FAMILIES = {cls.name: cls for cls in (OUN, PLN, ModOUN, RTN, ADQDS, NMAD, ENM)}
DEPHASING = (OUN, PLN, ModOUN, RTN)
AMPLITUDE_DAMPING = (ADQDS, NMAD)


# ---------------------------------------------------------------------------
# operations


def _times(t):
    arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(arr)):
        raise DomainError("times must be finite")
    if np.any(arr < 0):
        raise DomainError("elapsed times must be >= 0")
    return arr


def _out(arr, t):
    return float(arr) if np.ndim(t) == 0 else arr


def _require(fam, kinds, op):
    if not isinstance(fam, kinds):
        allowed = ", ".join(k.name for k in kinds)
        raise FamilyMismatchError(f"{op} is defined for {allowed}; got {fam.name}")


def mixing_p(fam, t):
    """Mixing function ``p(t)`` of a single-rate dephasing family.

    ``ENM`` is rejected: it is a three-rate Pauli channel, see
    :func:`pauli_eigenvalues`.
    """
    _require(fam, DEPHASING, "mixing_p")
    tt = _times(t)
    return _out(fam._p(tt), t)


def pauli_eigenvalues(fam, t):
    """Eigenvalues ``(l1, l2, l3)`` of a unital family on ``(X, Y, Z)``."""
    _require(fam, DEPHASING + (ENM,), "pauli_eigenvalues")
    tt = _times(t)
    if isinstance(fam, ENM):
        return tuple(_out(v, t) for v in fam.pauli_eigenvalues(tt))
    p = _out(fam._p(tt), t)
    return p, p, _out(np.ones_like(tt), t)


def decoherence_G(fam, t):
    """Decoherence function ``G(t)`` of the non-Markovian amplitude damping family.

    Real in both regimes: hyperbolic for ``g > 2 gamma0``, trigonometric for
    ``g < 2 gamma0`` and ``exp(-gt/2) (1 + gt/2)`` at ``g = 2 gamma0``.
    """
    _require(fam, (NMAD,), "decoherence_G")
    tt = _times(t)
    return _out(fam._G(tt), t)


def damping_factor(fam, t):
    """Damping factor ``lambda(t)``: ``1 - exp(-gamma0 t)`` or ``1 - |G(t)|^2``."""
    _require(fam, AMPLITUDE_DAMPING, "damping_factor")
    tt = _times(t)
    return _out(1.0 - fam._survival(tt), t)


def scalar_rate(fam, t):
    """The single time-dependent rate of a family, vectorized over ``t``.

    ``gamma(t)`` for dephasing and amplitude damping families, ``gamma3(t)``
    for ``ENM``. No singularity checks; see :func:`first_singularity`.
    """
    tt = _times(t)
    return _out(fam._rate(tt), t)


def first_singularity(fam):
    """First elapsed time where the generator diverges, ``inf`` if none."""
    if isinstance(fam, (RTN, NMAD)):
        return fam.first_zero()
    return math.inf


def _check_invertible(fam, t):
    if isinstance(fam, NMAD):
        val = abs(fam._G(np.asarray(t, dtype=float)))
    elif isinstance(fam, RTN):
        val = abs(fam._p(np.asarray(t, dtype=float)))
    else:
        return
    if val < SINGULARITY_FLOOR:
        raise GeneratorSingularityError(f"{fam.name}: generator is singular at t={t:.9g}", t)


def rates_from_scalar(fam, value):
    """Wrap a value of :func:`scalar_rate` into the family's generator structure."""
    if isinstance(fam, ENM):
        return PauliRates(1.0, 1.0, float(value))
    if isinstance(fam, AMPLITUDE_DAMPING):
        return ADRate(float(value))
    return PauliRates(0.0, 0.0, float(value))


def decay_rate(fam, t):
    """Generator rates of ``fam`` at elapsed time ``t``.

    Raises:
        GeneratorSingularityError: ``RTN``/``NMAD`` at a zero of ``p``/``G``.
    """
    t = float(t)
    _times(t)
    _check_invertible(fam, t)
    return rates_from_scalar(fam, fam._rate(np.asarray(t)))


def qds_limit_rate(fam):
    """Rates of the family's semigroup (Markov) limit.

    ``ADQDS`` is already a semigroup and returns its own rate.
    """
    if isinstance(fam, OUN):
        c = fam.G / 4.0
    elif isinstance(fam, PLN):
        c = fam.G / 2.0
    elif isinstance(fam, ModOUN):
        c = fam.a / 4.0
    elif isinstance(fam, RTN):
        c = 0.0
    elif isinstance(fam, ENM):
        c = 0.0
    elif isinstance(fam, NMAD):
        c = fam.gamma0
    elif isinstance(fam, ADQDS):
        c = fam.gamma0
    else:
        raise FamilyMismatchError(f"unknown family {fam!r}")
    return rates_from_scalar(fam, c)


def markov_limit(fam):
    """Semigroup member reached in the family's Markov limit."""
    if isinstance(fam, OUN):
        return OUN(fam.G, math.inf)
    if isinstance(fam, PLN):
        return PLN(fam.G, 0.0)
    if isinstance(fam, ModOUN):
        return OUN(fam.a, math.inf)
    if isinstance(fam, RTN):
        return RTN(fam.gamma0, math.inf)
    if isinstance(fam, NMAD):
        return ADQDS(fam.gamma0)
    if isinstance(fam, ADQDS):
        return fam
    raise FamilyMismatchError(f"{fam.name} has no semigroup limit within its family")


def kraus(fam, t):
    """Kraus operators at elapsed time ``t``.

    Raises:
        UnsupportedRepresentationError: for ``ENM``.
        DomainError: if ``|p| > 1`` (possible for ``ModOUN`` with ``k < 0``).
    """
    if isinstance(fam, ENM):
        raise UnsupportedRepresentationError("ENM has no closed-form Kraus pair; use maps.a_matrix")
    t = float(t)
    if isinstance(fam, AMPLITUDE_DAMPING):
        lam = min(max(damping_factor(fam, t), 0.0), 1.0)
        a1 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - lam)]], dtype=complex)
        a2 = np.array([[0.0, math.sqrt(lam)], [0.0, 0.0]], dtype=complex)
        return [a1, a2]
    p = mixing_p(fam, t)
    if abs(p) > 1.0 + 1e-12:
        raise DomainError(f"{fam.name}: |p(t)| = {abs(p):.6g} > 1, not a valid channel")
    p = min(max(p, -1.0), 1.0)
    return [math.sqrt((1.0 + p) / 2.0) * I2, math.sqrt((1.0 - p) / 2.0) * SZ]


def lindblad_superop(jumps, rates):
    """Row-major superoperator of ``sum_k r_k (L rho L^+ - {L^+ L, rho}/2)``."""
    out = np.zeros((4, 4), dtype=complex)
    for op, rate in zip(jumps, rates):
        n = op.conj().T @ op
        out += rate * (np.kron(op, op.conj()) - 0.5 * (np.kron(n, I2) + np.kron(I2, n.T)))
    return out


def generator_superop(rates):
    if isinstance(rates, PauliRates):
        return lindblad_superop((SX, SY, SZ), (rates.gamma1, rates.gamma2, rates.gamma3))
    if isinstance(rates, ADRate):
        return lindblad_superop((SIGMA_MINUS,), (rates.gamma,))
    raise TypeError(f"expected PauliRates or ADRate, got {type(rates).__name__}")


def generator_choi(rates, convention="d-factor"):
    """Choi matrix of the generator, ``c (L x I)|Phi+><Phi+|``.

    ``c = 2`` under the ``"d-factor"`` convention and ``c = 1`` under
    ``"unit"``. The result is Hermitian and traceless.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    choi = qmat.reshuffle(generator_superop(rates))
    return choi if convention == "d-factor" else 0.5 * choi


# ---------------------------------------------------------------------------
# channel specification records


def from_spec(spec):
    """Build a family from a flat mapping such as ``{"family": "oun", "G": 1, "g": 0.3}``."""
    spec = dict(spec)
    name = spec.pop("family", None) or spec.pop("channel", None)
    if name is None:
        raise DomainError("channel spec needs a 'family' entry")
    try:
        cls = FAMILIES[str(name).lower()]
    except KeyError:
        raise DomainError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None
    wanted = [f.name for f in fields(cls)]
    missing = [n for n in wanted if n not in spec]
    if missing:
        raise DomainError(f"{cls.name}: missing parameter(s) {', '.join(missing)}")
    extra = sorted(set(spec) - set(wanted))
    if extra:
        raise DomainError(f"{cls.name}: unexpected parameter(s) {', '.join(extra)}")
    try:
        values = {n: float(spec[n]) for n in wanted}
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{cls.name}: parameters must be numbers ({exc})") from None
    return cls(**values)


def to_spec(fam):
    return {"family": fam.name, **fam.params()}
