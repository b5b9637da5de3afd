import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tssmaps import channels, qmat
from tssmaps.channels import ADQDS, ENM, NMAD, OUN, PLN, RTN, ADRate, ModOUN, PauliRates
from tssmaps.errors import (
    DomainError, FamilyMismatchError, GeneratorSingularityError, UnsupportedRepresentationError,
)

from conftest import PHI_MINUS, PHI_PLUS, proj

DEPHASING = [OUN(0.6, 2.0), OUN(1.0, 0.3), PLN(0.6, 1.0), ModOUN(1.0, 0.3, 1.5), ModOUN(0.6, 2.0, 1.5),
             RTN(0.6, 0.3), RTN(0.6, 2.0)]
ALL = DEPHASING + [ADQDS(0.5), NMAD(0.3, 1.0), NMAD(0.3, 0.3), ENM()]


@pytest.mark.parametrize("fam", DEPHASING, ids=repr)
def test_p_starts_at_one(fam):
    assert channels.mixing_p(fam, 0.0) == 1.0


def test_p_examples():
    assert channels.mixing_p(OUN(1.0, math.inf), 2.0) == pytest.approx(math.exp(-1), rel=1e-15)
    assert channels.mixing_p(PLN(0.6, 1.0), 1.0) == pytest.approx(math.exp(-0.225), rel=1e-15)
    assert channels.mixing_p(PLN(0.6, 1.0), 1.0) == pytest.approx(0.79852, abs=5e-6)


def test_p_matches_closed_forms_vectorized():
    t = np.linspace(0, 4, 9)
    G, g = 1.0, 0.3
    expected = np.exp(-G / 2 * ((np.exp(-g * t) - 1) / g + t))
    assert np.allclose(channels.mixing_p(OUN(G, g), t), expected, rtol=1e-13)
    a, r, k = 1.0, 0.3, 1.5
    expected = np.exp(-a / 2 * ((np.exp(-r * t) - 1) / r + t) * (np.sin(t / r) ** 2 / k + np.cos(t / r) ** 2))
    assert np.allclose(channels.mixing_p(ModOUN(a, r, k), t), expected, rtol=1e-13)


@pytest.mark.parametrize("g", [0.3, 0.9, 2.0, 5.0])
def test_rtn_p_matches_complex_formula(g):
    g0 = 0.6
    w = cmath.sqrt((2 * g0 / g) ** 2 - 1)
    for t in np.linspace(0.05, 6, 25):
        ref = cmath.exp(-g * t) * (cmath.cos(g * w * t) + cmath.sin(g * w * t) / w)
        assert abs(ref.imag) < 1e-12
        assert channels.mixing_p(RTN(g0, g), t) == pytest.approx(ref.real, abs=1e-12)


def test_rtn_large_bandwidth_is_stable():
    p = channels.mixing_p(RTN(0.6, 1e4), np.array([0.5, 1.0, 10.0]))
    assert np.all(np.isfinite(p)) and np.all(p <= 1) and np.all(p > 0.99)


def test_family_mismatch():
    with pytest.raises(FamilyMismatchError):
        channels.mixing_p(ENM(), 1.0)
    with pytest.raises(FamilyMismatchError):
        channels.mixing_p(ADQDS(1.0), 1.0)
    with pytest.raises(FamilyMismatchError):
        channels.damping_factor(OUN(1, 1), 1.0)
    with pytest.raises(FamilyMismatchError):
        channels.decoherence_G(ADQDS(1.0), 1.0)


@pytest.mark.parametrize("ctor", [
    lambda: OUN(0, 1), lambda: OUN(1, -1), lambda: PLN(1, -0.1), lambda: ModOUN(1, 1, 0),
    lambda: ModOUN(1, 0, 1.5), lambda: RTN(0, 1), lambda: ADQDS(-1), lambda: NMAD(1, 0),
    lambda: OUN(float("nan"), 1), lambda: NMAD(1, math.inf),
])
def test_parameter_validation(ctor):
    with pytest.raises(DomainError):
        ctor()


def test_negative_time_rejected():
    with pytest.raises(DomainError):
        channels.mixing_p(OUN(1, 1), -0.1)


# --- decay rates -----------------------------------------------------------

def test_oun_rate_long_time_limit():
    fam = OUN(0.6, 2.0)
    assert channels.decay_rate(fam, 50 / fam.g).gamma3 == pytest.approx(fam.G / 4, rel=1e-15)


def test_enm_rates():
    rates = channels.decay_rate(ENM(), 1.0)
    assert rates == PauliRates(1.0, 1.0, -math.tanh(1.0))
    assert rates.gamma3 == pytest.approx(-0.76159, abs=5e-6)


@pytest.mark.parametrize("fam", DEPHASING, ids=repr)
def test_rate_matches_finite_difference(fam):
    h = 1e-5
    for t in np.linspace(0.1, 5.0, 60):
        if isinstance(fam, RTN) and abs(t - fam.first_zero()) < 0.05:
            continue
        p = channels.mixing_p(fam, t)
        fd = -(channels.mixing_p(fam, t + h) - channels.mixing_p(fam, t - h)) / (2 * h) / (2 * p)
        rate = channels.decay_rate(fam, t).gamma3
        assert rate == pytest.approx(fd, rel=1e-6, abs=1e-12)


@pytest.mark.parametrize("fam", [ADQDS(0.5), NMAD(0.3, 1.0), NMAD(0.3, 0.3), NMAD(0.3, 0.6)], ids=repr)
def test_ad_rate_matches_finite_difference(fam):
    # gamma = -d ln(1 - lambda) / dt
    h = 1e-5
    for t in np.linspace(0.1, 5.0, 40):
        s = lambda x: 1 - channels.damping_factor(fam, x)
        fd = -(math.log(s(t + h)) - math.log(s(t - h))) / (2 * h)
        assert channels.decay_rate(fam, t).gamma == pytest.approx(fd, rel=1e-6)


def test_nmad_rate_matches_printed_coth_form():
    g0 = 0.3
    for g in (0.2, 1.0, 3.0):
        fam = NMAD(g0, g)
        for t in (0.3, 1.0, 2.5):
            z = cmath.sqrt(1 - 2 * g0 / g)
            ref = 2 * (g0 / (z / cmath.tanh(0.5 * g * t * z) + 1)).real
            assert channels.decay_rate(fam, t).gamma == pytest.approx(ref, rel=1e-12)


def test_rtn_rate_matches_printed_cot_form():
    g0, g = 0.6, 0.3
    w = math.sqrt(4 * g0 ** 2 / g ** 2 - 1)
    for t in (0.2, 0.7, 1.3):
        ref = 2 * g0 ** 2 / (g * (1 + w / math.tan(g * t * w)))
        assert channels.decay_rate(RTN(g0, g), t).gamma3 == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("fam", [OUN(0.6, 0.1), OUN(1, 30), PLN(0.6, 0.01), PLN(0.6, 10)], ids=repr)
def test_oun_pln_rates_nonnegative(fam):
    t = np.linspace(1e-6, 50, 20001)
    assert np.all(channels.scalar_rate(fam, t) >= 0)


def test_modoun_rate_goes_negative():
    t = np.linspace(0, 10, 2001)
    assert channels.scalar_rate(ModOUN(1.0, 0.3, 1.5), t).min() < 0


def test_qds_limit_rates():
    assert channels.qds_limit_rate(OUN(0.6, 1)).gamma3 == pytest.approx(0.15)
    assert channels.qds_limit_rate(PLN(0.6, 1)).gamma3 == pytest.approx(0.3)
    assert channels.qds_limit_rate(RTN(0.6, 0.3)).gamma3 == 0.0
    assert channels.qds_limit_rate(NMAD(0.3, 1)).gamma == 0.3
    assert channels.qds_limit_rate(ModOUN(0.6, 1, 1.5)).gamma3 == pytest.approx(0.15)
    assert channels.qds_limit_rate(ENM()) == PauliRates(1.0, 1.0, 0.0)
    assert channels.qds_limit_rate(ADQDS(0.7)) == ADRate(0.7)


def test_markov_limits_reach_qds_rates():
    t = np.linspace(0.01, 3, 50)
    for fam, big in [(OUN(0.6, 1), OUN(0.6, 1e5)), (PLN(0.6, 1), PLN(0.6, 1e-7)),
                     (NMAD(0.3, 1), NMAD(0.3, 1e6)), (RTN(0.6, 1), RTN(0.6, 1e6)),
                     (ModOUN(0.6, 1, 1.5), ModOUN(0.6, 1e5, 1.5))]:
        target = channels.qds_limit_rate(fam)
        c = target.gamma if isinstance(target, ADRate) else target.gamma3
        late = t[t > 1e-3]
        assert np.allclose(channels.scalar_rate(big, late), c, atol=2e-4), fam
        limit = channels.markov_limit(fam)
        assert np.allclose(channels.scalar_rate(limit, t), c, atol=1e-15)


def test_nmad_singular_rate_raises():
    fam = NMAD(1.0, 0.1)
    tz = fam.first_zero()
    assert abs(channels.decoherence_G(fam, tz)) < 1e-12
    with pytest.raises(GeneratorSingularityError) as info:
        channels.decay_rate(fam, tz)
    assert info.value.t == tz
    assert channels.first_singularity(fam) == tz
    assert channels.first_singularity(NMAD(0.3, 1.0)) == math.inf


def test_rtn_singular_rate_raises():
    fam = RTN(0.6, 0.3)
    tz = fam.first_zero()
    assert abs(channels.mixing_p(fam, tz)) < 1e-12
    with pytest.raises(GeneratorSingularityError):
        channels.decay_rate(fam, tz)


# --- decoherence function and damping -----------------------------------------

def test_G_examples():
    assert channels.decoherence_G(NMAD(0.3, 1.0), 0.0) == 1.0
    t = np.linspace(0, 20, 11)
    assert np.allclose(channels.decoherence_G(NMAD(1e-14, 1.0), t), 1.0, atol=1e-12)


@pytest.mark.parametrize("g0,g", [(0.3, 0.3), (0.3, 0.1), (0.3, 1.0), (0.3, 4.0)])
def test_G_matches_complex_arithmetic(g0, g):
    lc = cmath.sqrt(g * g - 2 * g0 * g)
    for t in np.linspace(0.0, 12, 31):
        ref = cmath.exp(-g * t / 2) * ((g / lc) * cmath.sinh(lc * t / 2) + cmath.cosh(lc * t / 2)) if t else 1
        assert abs(complex(ref).imag) < 1e-12
        assert channels.decoherence_G(NMAD(g0, g), t) == pytest.approx(complex(ref).real, abs=1e-12)


def test_G_critical_point_is_limit_form():
    g0 = 0.3
    t = np.linspace(0, 10, 21)
    expected = np.exp(-0.6 * t / 2) * (1 + 0.6 * t / 2)
    assert np.allclose(channels.decoherence_G(NMAD(g0, 2 * g0), t), expected, rtol=1e-14)


def test_branch_continuity():
    t = np.linspace(0, 10, 1001)
    g0 = 0.6
    lo, mid, hi = (channels.mixing_p(RTN(g0, 2 * g0 + d), t) for d in (-1e-6, 0.0, 1e-6))
    assert np.max(np.abs(lo - hi)) < 1e-4 and np.max(np.abs(lo - mid)) < 1e-4
    g0 = 0.3
    lo, mid, hi = (channels.decoherence_G(NMAD(g0, 2 * g0 + d), t) for d in (-1e-6, 0.0, 1e-6))
    assert np.max(np.abs(lo - hi)) < 1e-4 and np.max(np.abs(lo - mid)) < 1e-4


def test_damping_factor():
    assert channels.damping_factor(ADQDS(0.5), 0.0) == 0.0
    assert channels.damping_factor(ADQDS(0.5), 200.0) == pytest.approx(1.0, abs=1e-15)
    fam = NMAD(0.3, 0.2)
    for t in (0.5, 3.0, 9.0):
        assert channels.damping_factor(fam, t) == pytest.approx(1 - channels.decoherence_G(fam, t) ** 2, abs=1e-15)


# --- Kraus ------------------------------------------------------------------

def test_kraus_examples():
    k_i, k_z = channels.kraus(OUN(1, 1), 0.0)
    assert np.allclose(k_i, np.eye(2)) and np.allclose(k_z, 0)
    a1, a2 = channels.kraus(ADQDS(1.0), 800.0)
    assert np.allclose(a1, np.diag([1, 0])) and np.allclose(a2, [[0, 1], [0, 0]])
    fam = OUN(1.0, math.inf)
    t = -2 * math.log(0.5)  # p = 0.5
    k_i, k_z = channels.kraus(fam, t)
    assert k_i[0, 0].real ** 2 == pytest.approx(0.75) and k_z[0, 0].real ** 2 == pytest.approx(0.25)


@pytest.mark.parametrize("fam", [f for f in ALL if not isinstance(f, ENM)], ids=repr)
def test_kraus_completeness(fam):
    for t in np.linspace(0, 8, 33):
        ops = channels.kraus(fam, t)
        total = sum(k.conj().T @ k for k in ops)
        assert np.max(np.abs(total - np.eye(2))) <= 1e-12


def test_kraus_errors():
    with pytest.raises(UnsupportedRepresentationError):
        channels.kraus(ENM(), 1.0)
    with pytest.raises(DomainError):
        channels.kraus(ModOUN(1.0, 0.3, -1.0), 0.3)


# --- generator Choi -----------------------------------------------------------

def test_generator_choi_dephasing_unit():
    gamma = 0.37
    out = channels.generator_choi(PauliRates(0, 0, gamma), "unit")
    assert np.allclose(out, gamma * (proj(PHI_MINUS) - proj(PHI_PLUS)), atol=1e-15)
    assert np.array_equal(channels.generator_choi(PauliRates(0, 0, 0)), np.zeros((4, 4)))


def test_generator_choi_ad_hand_matrix():
    # sum_jk L(|j><k|) (x) |j><k| for L = s.s^+ - {s^+ s, .}/2, s = |0><1|
    expected = np.zeros((4, 4))
    expected[1, 1], expected[3, 3] = 1.0, -1.0
    expected[0, 3] = expected[3, 0] = -0.5
    assert np.allclose(channels.generator_choi(ADRate(1.0)), expected, atol=1e-15)
    assert qmat.trace_norm(expected) == pytest.approx(1 + math.sqrt(2), abs=1e-12)


def test_generator_choi_convention_error():
    with pytest.raises(ValueError):
        channels.generator_choi(ADRate(1.0), "nope")


rate = st.floats(-5, 5, allow_nan=False)


@given(rate, rate, rate, rate)
def test_generator_choi_hermitian_traceless(g1, g2, g3, gad):
    for r in (PauliRates(g1, g2, g3), ADRate(gad)):
        for conv in ("d-factor", "unit"):
            m = channels.generator_choi(r, conv)
            assert np.allclose(m, m.conj().T, atol=1e-14)
            assert abs(np.trace(m)) < 1e-12


@pytest.mark.parametrize("fam", ALL, ids=repr)
def test_generator_matches_map_derivative(fam):
    # dA/dt A^-1 equals the generator superoperator at the same elapsed time
    from tssmaps import maps
    h = 1e-5
    for t in (0.2, 0.9, 1.4):
        if channels.first_singularity(fam) < t + 0.1:
            continue
        dA = (maps.a_matrix(fam, t + h).matrix - maps.a_matrix(fam, t - h).matrix) / (2 * h)
        L = dA @ np.linalg.inv(maps.a_matrix(fam, t).matrix)
        expected = channels.generator_superop(channels.decay_rate(fam, t))
        assert np.allclose(L, expected, atol=1e-7), (fam, t)


# --- spec records ---------------------------------------------------------------

@pytest.mark.parametrize("fam", ALL, ids=repr)
def test_spec_roundtrip(fam):
    assert channels.from_spec(channels.to_spec(fam)) == fam


def test_spec_errors():
    with pytest.raises(DomainError):
        channels.from_spec({"family": "xyz"})
    with pytest.raises(DomainError):
        channels.from_spec({"family": "oun", "G": 1})
    with pytest.raises(DomainError):
        channels.from_spec({"family": "oun", "G": 1, "g": 1, "k": 2})
    with pytest.raises(DomainError):
        channels.from_spec({"G": 1})
