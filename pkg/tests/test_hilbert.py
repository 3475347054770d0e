import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contextprob import (
    QuantumState,
    SuperpositionCoefficients,
    born_probability,
    build_quantum_state,
    build_spectral_family,
    interference_closed_form,
    interference_direct,
    mixture_vs_superposition,
    superpose,
    verify_representation,
)
from contextprob.hilbert import wrap_phase

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def random_distribution(rng, n):
    return rng.dirichlet(np.ones(n))


def random_family(rng, n):
    return build_spectral_family(n, rng.integers(1, n + 1, size=n))


def random_coeff(rng):
    a = math.sqrt(rng.uniform())
    return SuperpositionCoefficients(
        a, math.sqrt(1.0 - a * a), rng.uniform(-math.pi, math.pi), rng.uniform(-math.pi, math.pi)
    )


# ---------------------------------------------------------------- spectral families


def test_two_singleton_blocks():
    family = build_spectral_family(2, [1, 1])
    m1, m2 = family.projector_matrices()
    np.testing.assert_array_equal(m1, np.diag([1.0, 0.0]))
    np.testing.assert_array_equal(m2, np.diag([0.0, 1.0]))


def test_three_singleton_blocks():
    family = build_spectral_family(3, [1, 1, 1])
    mats = family.projector_matrices()
    for k, mat in enumerate(mats):
        expected = np.zeros((3, 3))
        expected[k, k] = 1.0
        np.testing.assert_array_equal(mat, expected)


def test_wide_block_family():
    family = build_spectral_family(2, [2, 1])
    assert family.m == 3
    m1, m2 = family.projector_matrices()
    np.testing.assert_array_equal(m1, np.diag([1.0, 1.0, 0.0]))
    np.testing.assert_array_equal(m2, np.diag([0.0, 0.0, 1.0]))


def test_family_accepts_m_equal_n_squared():
    assert build_spectral_family(2, [2, 2]).m == 4


def test_family_bound_violations_are_specific():
    with pytest.raises(ValueError, match="3 block sizes for 2 outcomes"):
        build_spectral_family(2, [1, 1, 1])
    with pytest.raises(ValueError, match=r"outside \[1, n\]"):
        build_spectral_family(2, [3, 1])
    with pytest.raises(ValueError, match=r"outside \[1, n\]"):
        build_spectral_family(2, [0, 1])


def test_projector_algebra_for_random_families():
    rng = np.random.default_rng(11)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        family = random_family(rng, n)
        mats = family.projector_matrices()
        total = np.zeros((family.m, family.m))
        for k, mk in enumerate(mats):
            total += mk
            for l, ml in enumerate(mats):
                if k != l:
                    assert not (mk @ ml).any()
        np.testing.assert_array_equal(total, np.eye(family.m))


# ---------------------------------------------------------------- quantum states


def test_vessel_state_amplitudes():
    family = build_spectral_family(2, [1, 1])
    w = build_quantum_state([0.5, 0.5], [0.3, 1.1], family)
    root_half = math.sqrt(0.5)
    assert w.moduli == (root_half, root_half)
    assert w.phases == (0.3, 1.1)


def test_degenerate_state():
    family = build_spectral_family(2, [1, 1])
    w = build_quantum_state([1.0, 0.0], [0.0, 0.0], family)
    assert w.moduli == (1.0, 0.0)


def test_block_state_amplitudes_and_born():
    family = build_spectral_family(2, [2, 1])
    w = build_quantum_state([0.5, 0.5], [0.0, 0.0, 0.0], family)
    assert w.moduli == (0.5, 0.5, math.sqrt(0.5))
    assert born_probability(w, family, 1) == pytest.approx(0.5, abs=1e-12)


def test_state_dimension_checks():
    family = build_spectral_family(2, [1, 1])
    with pytest.raises(ValueError):
        build_quantum_state([0.2, 0.3, 0.5], [0.0, 0.0], family)
    with pytest.raises(ValueError):
        build_quantum_state([0.5, 0.5], [0.0, 0.0, 0.0], family)


def test_born_probability_examples():
    family = build_spectral_family(2, [1, 1])
    w = build_quantum_state([0.5, 0.5], [0.4, 2.2], family)
    assert born_probability(w, family, 1) == pytest.approx(0.5, abs=1e-12)
    w = QuantumState([1.0, 0.0, 0.0], [0.0, 0.0, 0.0])
    assert born_probability(w, build_spectral_family(3, [1, 1, 1]), 1) == 1.0
    with pytest.raises(ValueError):
        born_probability(w, build_spectral_family(3, [1, 1, 1]), 4)


def test_born_is_phase_independent():
    family = build_spectral_family(3, [2, 1, 3])
    mu = [0.2, 0.3, 0.5]
    rng = np.random.default_rng(5)
    base = build_quantum_state(mu, np.zeros(family.m), family)
    for _ in range(20):
        w = build_quantum_state(mu, rng.uniform(-math.pi, math.pi, family.m), family)
        for k in range(1, 4):
            assert born_probability(w, family, k) == pytest.approx(
                born_probability(base, family, k), abs=1e-12
            )


def test_verify_representation_three_outcomes():
    family = build_spectral_family(3, [1, 1, 1])
    report = verify_representation([0.2, 0.3, 0.5], [0.1, 0.7, 1.9], family)
    assert report.max_deviation <= 1e-12


def test_verify_representation_random_blocks():
    rng = np.random.default_rng(17)
    for _ in range(300):
        n = int(rng.integers(2, 5))
        family = random_family(rng, n)
        mu = random_distribution(rng, n)
        phases = rng.uniform(-math.pi, math.pi, family.m)
        assert verify_representation(mu, phases, family).max_deviation <= 1e-12


# ---------------------------------------------------------------- superposition


def vessel_states(phases_q=(0.0, math.pi)):
    family = build_spectral_family(2, [1, 1])
    w_p = build_quantum_state([0.5, 0.5], [0.0, 0.0], family)
    w_q = build_quantum_state([0.5, 0.5], phases_q, family)
    return family, w_p, w_q


def test_superpose_single_term():
    _, w_p, w_q = vessel_states()
    sup = superpose(w_p, w_q, SuperpositionCoefficients(1.0, 0.0, 0.0, 0.0))
    assert sup.state.moduli == pytest.approx(w_p.moduli, abs=1e-15)
    assert sup.norm_sq == pytest.approx(1.0, abs=1e-12)
    assert sup.normalized and not sup.degenerate


def test_superpose_complete_cancellation():
    _, w_p, _ = vessel_states()
    sup = superpose(w_p, w_p, SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.0, math.pi))
    assert sup.degenerate
    assert sup.norm_sq <= 1e-24
    with pytest.raises(ValueError):
        superpose(w_p, w_p, SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.0, math.pi), renormalize=True)


def test_superpose_opposite_phases_concentrates():
    _, w_p, w_q = vessel_states()
    sup = superpose(w_p, w_q, SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.0, 0.0))
    assert sup.state.moduli[0] == pytest.approx(1.0, abs=1e-12)
    assert sup.state.moduli[1] == pytest.approx(0.0, abs=1e-12)
    assert sup.norm_sq == pytest.approx(1.0, abs=1e-12)


def test_superpose_dimension_mismatch():
    family3 = build_spectral_family(3, [1, 1, 1])
    _, w_p, _ = vessel_states()
    w3 = build_quantum_state([0.2, 0.3, 0.5], [0.0, 0.0, 0.0], family3)
    with pytest.raises(ValueError):
        superpose(w_p, w3, SuperpositionCoefficients(1.0, 0.0, 0.0, 0.0))


def test_superpose_renormalize_opt_in():
    _, w_p, w_q = vessel_states(phases_q=(0.0, 1.0))
    coeff = SuperpositionCoefficients(0.6, 0.8, 0.2, 1.3)
    raw = superpose(w_p, w_q, coeff)
    scaled = superpose(w_p, w_q, coeff, renormalize=True)
    assert raw.norm_sq != pytest.approx(1.0, abs=1e-9)
    assert scaled.state.norm_sq == pytest.approx(1.0, abs=1e-12)
    assert scaled.norm_sq == raw.norm_sq  # flag still reports the raw norm


def test_coefficients_must_be_normalized():
    with pytest.raises(ValueError):
        SuperpositionCoefficients(1.0, 1.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        SuperpositionCoefficients(-0.5, math.sqrt(0.75), 0.0, 0.0)


def test_wrap_phase_reporting_interval():
    assert wrap_phase(math.tau + 0.5) == pytest.approx(0.5, abs=1e-15)
    assert wrap_phase(-math.pi) == pytest.approx(math.pi, abs=0.0)
    assert -math.pi < wrap_phase(37.0) <= math.pi


# ---------------------------------------------------------------- interference


def test_interference_single_term_is_exact():
    coeff = SuperpositionCoefficients(1.0, 0.0, 0.0, 0.0)
    report = interference_closed_form([0.3, 0.7], [0.6, 0.4], [0.0, 0.5], [0.1, 0.2], coeff)
    assert report.p_r == (0.3, 0.7)
    assert report.interference_term == (0.0, 0.0)
    assert report.total_pr == 1.0 and report.normalized


def test_interference_disjoint_support_is_exact():
    coeff = SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.9, -0.4)
    report = interference_closed_form([1.0, 0.0], [0.0, 1.0], [0.3, 0.1], [2.0, 0.2], coeff)
    a2, b2 = coeff.a**2, coeff.b**2
    assert report.p_r == (a2, b2)
    assert report.interference_term == (0.0, 0.0)


def test_interference_opposite_phase_example():
    coeff = SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.0, 0.0)
    report = interference_closed_form([0.5, 0.5], [0.5, 0.5], [0.0, 0.0], [0.0, math.pi], coeff)
    assert report.p_r[0] == pytest.approx(1.0, abs=1e-12)
    assert report.p_r[1] == pytest.approx(0.0, abs=1e-12)
    assert report.interference_term[0] == pytest.approx(0.5, abs=1e-12)
    assert report.interference_term[1] == pytest.approx(-0.5, abs=1e-12)


def test_closed_form_rejects_wide_blocks():
    family = build_spectral_family(2, [2, 1])
    coeff = SuperpositionCoefficients(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError, match="singleton"):
        interference_closed_form([0.5, 0.5], [0.5, 0.5], [0.0, 0.0], [0.0, 0.0], coeff, family)


def test_closed_form_matches_direct_born_computation():
    rng = np.random.default_rng(23)
    for _ in range(1000):
        n = int(rng.integers(2, 6))
        family = build_spectral_family(n, [1] * n)
        p = random_distribution(rng, n)
        q = random_distribution(rng, n)
        phases_p = rng.uniform(-math.pi, math.pi, n)
        phases_q = rng.uniform(-math.pi, math.pi, n)
        coeff = random_coeff(rng)
        report = interference_closed_form(p, q, phases_p, phases_q, coeff)
        direct, sup = interference_direct(p, q, phases_p, phases_q, coeff, family)
        for cf, d in zip(report.p_r, direct.p_r):
            assert abs(cf - d) <= 1e-12
        assert abs(report.total_pr - sup.norm_sq) <= 1e-12
        for r, m, t in zip(report.p_r, report.mixture, report.interference_term):
            assert abs(r - (m + t)) <= 1e-12


def test_direct_route_handles_wide_blocks():
    rng = np.random.default_rng(29)
    family = build_spectral_family(3, [2, 1, 3])
    p = random_distribution(rng, 3)
    q = random_distribution(rng, 3)
    phases_p = rng.uniform(-math.pi, math.pi, family.m)
    phases_q = rng.uniform(-math.pi, math.pi, family.m)
    coeff = random_coeff(rng)
    report, sup = interference_direct(p, q, phases_p, phases_q, coeff, family)
    assert abs(report.total_pr - sup.norm_sq) <= 1e-12
    for r, m, t in zip(report.p_r, report.mixture, report.interference_term):
        assert r == pytest.approx(m + t, abs=1e-15)


def test_global_phase_shift_changes_nothing():
    # shifting the phase origin of both profiles leaves borns and p_r alone
    rng = np.random.default_rng(31)
    n = 3
    family = build_spectral_family(n, [1] * n)
    p = random_distribution(rng, n)
    q = random_distribution(rng, n)
    phases_p = rng.uniform(-math.pi, math.pi, n)
    phases_q = rng.uniform(-math.pi, math.pi, n)
    coeff = random_coeff(rng)
    base = interference_closed_form(p, q, phases_p, phases_q, coeff)
    for shift in (0.7, -2.3, math.pi):
        w = build_quantum_state(p, phases_p + shift, family)
        for k in range(1, n + 1):
            assert born_probability(w, family, k) == pytest.approx(p[k - 1], abs=1e-12)
        shifted = interference_closed_form(p, q, phases_p + shift, phases_q + shift, coeff)
        for a, b in zip(shifted.p_r, base.p_r):
            assert abs(a - b) <= 1e-12
        for a, b in zip(shifted.interference_term, base.interference_term):
            assert abs(a - b) <= 1e-12


# ---------------------------------------------------------------- mixture comparison


def test_mixture_comparison_disjoint_support_on_segment():
    coeff = SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.4, 1.0)
    comp = mixture_vs_superposition([1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0], coeff)
    assert comp.on_segment
    assert comp.gaps == (0.0, 0.0)


def test_mixture_comparison_interference_case():
    coeff = SuperpositionCoefficients(INV_SQRT2, INV_SQRT2, 0.0, 0.0)
    comp = mixture_vs_superposition([0.5, 0.5], [0.5, 0.5], [0.0, 0.0], [0.0, math.pi], coeff)
    assert not comp.on_segment
    assert comp.gaps[0] == pytest.approx(0.5, abs=1e-12)
    assert comp.gaps[1] == pytest.approx(-0.5, abs=1e-12)


def test_mixture_comparison_single_term_equals_mixture():
    coeff = SuperpositionCoefficients(1.0, 0.0, 0.0, 0.0)
    comp = mixture_vs_superposition([0.4, 0.6], [0.4, 0.6], [0.2, 0.2], [0.2, 0.2], coeff)
    assert comp.on_segment
    assert comp.superposition == comp.mixture


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_identical_profiles_share_phase_make_amplified_mixture(seed):
    # equal states and equal phases: p_r = (a + b)^2 P before any normalization
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    p = random_distribution(rng, n)
    phases = rng.uniform(-math.pi, math.pi, n)
    coeff = random_coeff(rng)
    alpha = coeff.alpha
    same = SuperpositionCoefficients(coeff.a, coeff.b, alpha, alpha)
    report = interference_closed_form(p, p, phases, phases, same)
    scale = (same.a + same.b) ** 2
    for r, target in zip(report.p_r, p):
        assert r == pytest.approx(scale * target, abs=1e-12)
