import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from core.exceptions import (
    DegenerateMixing,
    DictionarySingular,
    InvalidScale,
    LandauPole,
    NoBoundState,
    NoInverse,
    NonPerturbative,
    UnsupportedMoment,
    UnsupportedScheme,
    ValidationFailure,
    ZeroDenominator,
    ZeroScatteringLength,
)
from core.testing import extension_params, momenta, phases
from eft.amplitudes import (
    anomaly_flow,
    full_observables,
    pole_wavefunction,
    renormalize_even,
    renormalize_odd,
    renormalized_t_odd,
    run_c2p,
    t_matrix_even,
    t_matrix_full,
    t_matrix_odd,
)
from eft.couplings import (
    ContactCouplings,
    RenormConditions,
    Scheme,
    couplings_from_dict,
    couplings_to_dict,
)
from eft.dictionary import couplings_to_sae, dictionary_denominator, sae_to_couplings
from eft.integrals import delta_at_origin, regulated_moment
from extension.params import validate_extension
from scattering.amplitudes import t_matrix
from scattering.bound_states import bound_state_wavefunction, smatrix_poles
from scattering.observables import eigen_observables, mixing_line, observables_from_t, relative_phase

K_GRID = np.logspace(-2, 2, 20)

SCHEMES = [Scheme.ndr(), Scheme.pds(0.5), Scheme.pds(1.0), Scheme.pds(10.0), Scheme.cutoff(10 * math.pi)]

WORKED_CONDS = RenormConditions(kappa0=1.0, phi_rel=0.0, a_theta=0.6)

couplings_values = st.floats(min_value=-5.0, max_value=5.0)


@st.composite
def renorm_conditions(draw, max_strength=0.95):
    kappa0 = draw(st.floats(min_value=0.05, max_value=3.0)) * draw(st.sampled_from([1.0, -1.0]))
    strength = draw(st.floats(min_value=-max_strength, max_value=max_strength))
    return RenormConditions(kappa0=kappa0, phi_rel=draw(phases), a_theta=strength / kappa0)


@pytest.mark.unit
class TestRegulatedMoments:

    def test_convergent(self):
        assert regulated_moment(0, 2.0, Scheme.ndr()) == 0.25j

    @pytest.mark.parametrize('scheme', [Scheme.cutoff(math.pi), Scheme.pds(1.0)])
    def test_linear_divergence(self, scheme):
        np.testing.assert_allclose(regulated_moment(1, 1.0, scheme), 1 + 0.5j)

    def test_ndr_recursion(self):
        assert regulated_moment(1, 2.0, Scheme.ndr()) == 1j
        np.testing.assert_allclose(regulated_moment(2, 2.0, Scheme.ndr()), 4j)

    def test_higher_moments_only_in_ndr(self):
        with pytest.raises(UnsupportedMoment):
            regulated_moment(2, 1.0, Scheme.pds(1.0))

    def test_threshold(self):
        with pytest.raises(ZeroDenominator):
            regulated_moment(0, 0.0, Scheme.ndr())

    def test_delta_at_origin(self):
        assert [delta_at_origin(s) for s in (Scheme.ndr(), Scheme.pds(2.0), Scheme.cutoff(math.pi))] == [0.0, 2.0, 1.0]

    @pytest.mark.parametrize('factory, scale', [(Scheme.cutoff, 0.0), (Scheme.cutoff, -1.0), (Scheme.pds, -0.5)])
    def test_bad_scales(self, factory, scale):
        with pytest.raises(InvalidScale):
            factory(scale)


@pytest.mark.unit
class TestEvenSector:

    def test_s_wave(self, delta_params):
        t = t_matrix_even(1.0, 0.0, Scheme.ndr(), 1.0)
        np.testing.assert_allclose(t.entries, np.diag([(1 + 1j) / 2, 0]), atol=1e-14)
        np.testing.assert_allclose(t.entries, t_matrix(delta_params, 1.0).entries, atol=1e-14)

    def test_p_wave(self, parity_even_params):
        t = t_matrix_even(0.0, -1.0, Scheme.ndr(), 1.0)
        assert t[1, 1] == pytest.approx((-1 + 1j) / 2)
        np.testing.assert_allclose(t_matrix_even(-1.0, -1.0, Scheme.ndr(), 1.0).entries,
                                   t_matrix(parity_even_params, 1.0).entries, atol=1e-14)

    def test_running_cancels_cutoff(self):
        reference = t_matrix_even(0.0, -1.0, Scheme.ndr(), 1.0)[1, 1]
        for cutoff in (10.0, 1e3, 1e6):
            running = t_matrix_even(0.0, run_c2p(cutoff, 1.0), Scheme.cutoff(cutoff), 1.0)[1, 1]
            assert abs(running - reference) < 1e-12

    def test_run_c2p(self):
        assert run_c2p(math.pi, 1.0) == pytest.approx(1.0)
        assert 0 < run_c2p(1e12, 1.0) < 1e-11
        with pytest.raises(LandauPole):
            run_c2p(math.pi / 2, 1.0)

    def test_renormalize_even(self):
        ndr = renormalize_even(-1.0, 1.0, Scheme.ndr())
        assert (ndr.c0, ndr.c2p) == (-1.0, -1.0)
        pds = renormalize_even(-1.0, 1.0, Scheme.pds(3.0))
        assert pds.c2p == pytest.approx(0.2)
        assert renormalize_even(math.inf, 0.0, Scheme.ndr()).c0 == 0.0
        with pytest.raises(ZeroScatteringLength):
            renormalize_even(0.0, 1.0, Scheme.ndr())

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(a0=st.floats(min_value=0.1, max_value=5.0), a1=st.floats(min_value=0.1, max_value=5.0), k=momenta)
    def test_renormalized_even_is_scheme_independent(self, a0, a1, k):
        assume(all(abs(2 * delta_at_origin(s) - 1 / a1) > 1e-3 for s in SCHEMES))
        reference = None
        for scheme in SCHEMES:
            couplings = renormalize_even(a0, a1, scheme)
            t = t_matrix_even(couplings.c0, couplings.c2p, scheme, k).entries
            if reference is None:
                reference = t
            np.testing.assert_allclose(t, reference, atol=1e-10)


@pytest.mark.unit
class TestOddSector:

    def test_without_mixing(self):
        t = t_matrix_odd(1.0, 0.0, 0.0, Scheme.pds(3.0), 1.0)
        assert t[0, 1] == 0 and t[1, 0] == 0
        assert t[0, 0] == pytest.approx((1 + 1j) / 2)

    def test_matches_extension(self, odd_mixing_params):
        t = t_matrix_odd(10 / 9, 1 / 3, 0.0, Scheme.ndr(), 1.0)
        np.testing.assert_allclose(t.entries, t_matrix(odd_mixing_params, 1.0).entries, atol=1e-14)
        np.testing.assert_allclose([t[0, 0], t[1, 0]], [0.45 + 0.55j, -0.15 + 0.15j])

    def test_phase_from_couplings(self):
        t = t_matrix_odd(0.4, 0.3, -0.2, Scheme.ndr(), 1.3)
        assert observables_from_t(t).phi_rel == pytest.approx(-math.atan2(-0.2, 0.3))

    def test_renormalize_worked(self):
        ndr = renormalize_odd(WORKED_CONDS, Scheme.ndr())
        np.testing.assert_allclose([ndr.c0, ndr.c1, ndr.c1_tilde], [10 / 9, 1 / 3, 0], atol=1e-14)
        pds = renormalize_odd(WORKED_CONDS, Scheme.pds(1.0))
        np.testing.assert_allclose([pds.c0, pds.c1], [8 / 9, 1 / 3], atol=1e-14)

    def test_parity_even_limit(self):
        couplings = renormalize_odd(RenormConditions(1.0, 0.0, 0.0), Scheme.ndr())
        assert (couplings.c0, couplings.c1, couplings.c1_tilde) == (1.0, 0.0, 0.0)
        t = renormalized_t_odd(RenormConditions(1.0, 0.0, 0.0), 2.0)
        np.testing.assert_allclose(t.entries, np.diag([1 / (2 - 1j), 0]), atol=1e-14)

    def test_worked_renormalized_t(self):
        t = renormalized_t_odd(WORKED_CONDS, 1.0)
        assert t[0, 0] == pytest.approx(0.45 + 0.55j)
        np.testing.assert_allclose(t.entries, t_matrix_odd(10 / 9, 1 / 3, 0, Scheme.ndr(), 1.0).entries, atol=1e-14)

    def test_non_perturbative(self):
        conds = RenormConditions(1.0, 0.0, 1.2)
        with pytest.raises(NonPerturbative):
            renormalize_odd(conds, Scheme.ndr())
        with pytest.raises(NonPerturbative):
            renormalized_t_odd(conds, 1.0)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(conds=renorm_conditions())
    def test_scheme_independence(self, conds):
        c1_values = set()
        for k in K_GRID[::4]:
            expected = renormalized_t_odd(conds, k).entries
            for scheme in SCHEMES:
                couplings = renormalize_odd(conds, scheme)
                c1_values.add(round(couplings.c1, 12))
                t = t_matrix_odd(couplings.c0, couplings.c1, couplings.c1_tilde, scheme, k)
                np.testing.assert_allclose(t.entries, expected, atol=1e-10)
        assert len(c1_values) == 1


@pytest.mark.unit
class TestPoleWavefunction:

    def test_worked_ratio(self):
        psi = pole_wavefunction(WORKED_CONDS, [-1e-300, 1e-300])
        np.testing.assert_allclose(psi[1] / psi[0], 0.5)

    def test_requires_bound_pole(self):
        with pytest.raises(NoBoundState):
            pole_wavefunction(RenormConditions(-1.0, 0.0, 0.1), [0.0])
        with pytest.raises(NonPerturbative):
            pole_wavefunction(RenormConditions(1.0, 0.0, 2.0), [0.0])

    @pytest.mark.property
    @settings(max_examples=100, deadline=None)
    @given(conds=renorm_conditions())
    def test_proportional_to_joining_bound_state(self, conds):
        assume(conds.kappa0 > 0)
        params = couplings_to_sae(renormalize_odd(conds, Scheme.ndr()))
        x = np.array([-2.0, -0.5, -1e-6, 1e-6, 0.7, 1.9])
        ratio = pole_wavefunction(conds, x) / bound_state_wavefunction(params, x, kappa=conds.kappa0)
        np.testing.assert_allclose(ratio, ratio[0], rtol=1e-9)


@pytest.mark.unit
class TestAnomaly:

    @pytest.mark.parametrize('mu, c1_mod, inverse_length', [(1.0, 1.0, 1.0), (2.5, 0.5, 1.25)])
    def test_running(self, mu, c1_mod, inverse_length):
        flow = anomaly_flow(1.0, mu, 1.0)
        np.testing.assert_allclose([flow.c1_mod, flow.inverse_mixing_length], [c1_mod, inverse_length])
        assert flow.k_cot_theta == flow.inverse_mixing_length
        assert abs(flow.pole - 1.0) < 1e-12

    def test_mixing_angle_runs(self):
        low, high = anomaly_flow(1.0, 1.0, 1.0), anomaly_flow(1.0, 2.5, 1.0)
        assert abs(high.k_cot_theta - low.k_cot_theta) / abs(low.k_cot_theta) > 0.1

    def test_t_matrix_keeps_pole(self):
        flow = anomaly_flow(1.0, 2.5, 0.8)
        expected = t_matrix_odd(0.0, flow.c1_mod, 0.0, Scheme.pds(2.5), 0.8)
        np.testing.assert_allclose(flow.t_matrix.entries, expected.entries)
        # k - i X vanishes at k = i kappa0
        x = 2 * flow.c1_mod ** 2 * (0.5j * 1j + 2.5)
        assert abs(1j - 1j * x) < 1e-12

    def test_parity_restored(self):
        flow = anomaly_flow(1.0, 1e6, 1.0)
        assert max(abs(flow.t_matrix[0, 1]), abs(flow.t_matrix[1, 0])) < 2e-3
        np.testing.assert_allclose(math.atan2(1.0, flow.inverse_mixing_length), math.sqrt(2 / 1e6), rtol=1e-3)
        np.testing.assert_allclose(flow.t_matrix.entries, flow.t_limit.entries, atol=2e-3)
        np.testing.assert_allclose(flow.t_limit[0, 0], 1 / (1 - 1j))

    @pytest.mark.parametrize('kappa0, mu', [(1.0, 0.5), (1.0, 0.2), (0.0, 1.0), (-1.0, 1.0)])
    def test_invalid_scale(self, kappa0, mu):
        with pytest.raises(InvalidScale):
            anomaly_flow(kappa0, mu, 1.0)


@pytest.mark.unit
class TestFullTMatrix:

    def test_free(self):
        assert not t_matrix_full(ContactCouplings(c0=0.0), 1.0).entries.any()

    def test_worked(self):
        t = t_matrix_full(ContactCouplings(c0=1.0, c1=1.0), 1.0)
        np.testing.assert_allclose(t.entries, np.array([[1 + 3j, 1 - 2j], [-1 + 2j, -1 + 2j]]) / 5, atol=1e-14)
        assert t.unitarity_defect() < 1e-14

    def test_reduces_to_odd_sector(self):
        t = t_matrix_full(ContactCouplings(c0=10 / 9, c1=1 / 3), 1.0)
        np.testing.assert_allclose(t.entries, renormalized_t_odd(WORKED_CONDS, 1.0).entries, atol=1e-14)

    def test_other_schemes_route_to_sectors(self):
        odd = ContactCouplings(c0=0.5, c1=0.2, scheme=Scheme.pds(1.0))
        np.testing.assert_allclose(t_matrix_full(odd, 1.0).entries,
                                   t_matrix_odd(0.5, 0.2, 0.0, Scheme.pds(1.0), 1.0).entries)
        even = ContactCouplings(c0=0.5, c2p=0.3, scheme=Scheme.cutoff(2.0))
        np.testing.assert_allclose(t_matrix_full(even, 1.0).entries,
                                   t_matrix_even(0.5, 0.3, Scheme.cutoff(2.0), 1.0).entries)
        with pytest.raises(UnsupportedScheme):
            t_matrix_full(ContactCouplings(c0=0.5, c1=0.2, c2p=0.3, scheme=Scheme.pds(1.0)), 1.0)

    def test_momentum_checked(self):
        with pytest.raises(ValidationFailure):
            t_matrix_full(ContactCouplings(c0=1.0), 0.0)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(c0=couplings_values, c1=couplings_values, c1_tilde=couplings_values, c2p=couplings_values,
           scheme=st.sampled_from(SCHEMES), k=momenta)
    def test_unitarity(self, c0, c1, c1_tilde, c2p, scheme, k):
        assert t_matrix_full(ContactCouplings(c0, c1, c1_tilde, c2p), k).unitarity_defect() < 1e-12
        assert t_matrix_odd(c0, c1, c1_tilde, scheme, k).unitarity_defect() < 1e-12
        assert t_matrix_even(c0, c2p, scheme, k).unitarity_defect() < 1e-12


@pytest.mark.unit
class TestFullObservables:

    def test_worked(self):
        result = full_observables(ContactCouplings(c0=10 / 9, c1=1 / 3))
        np.testing.assert_allclose(result.kappas, [1.0])
        assert result.intercept == pytest.approx(5 / 3)
        assert result.phi_rel == 0.0

    def test_scale_invariant_has_no_poles(self):
        params = validate_extension(1, 0, 1, 0, 1.0)
        result = full_observables(sae_to_couplings(params))
        assert result.kappas == [] and smatrix_poles(params) == []

    def test_negative_dictionary_denominator(self):
        params = validate_extension(-3, 1, -0.5, 0.5, 0.3)
        assert dictionary_denominator(params) < 0
        result = full_observables(sae_to_couplings(params))
        np.testing.assert_allclose([result.intercept, result.slope], mixing_line(params), rtol=1e-12)
        np.testing.assert_allclose(result.phi_rel, relative_phase(params), rtol=1e-12)
        for k in (0.3, 1.0, 4.0):
            theta = eigen_observables(params, k).theta
            np.testing.assert_allclose(result.k_cot_theta(k), k / math.tan(theta), rtol=1e-10)

    def test_single_pole(self):
        assert full_observables(ContactCouplings(c0=1.0, c1=1.0)).kappas == [0.5]

    def test_imaginary_mixing(self):
        assert full_observables(ContactCouplings(c0=1.0, c1_tilde=1.0)).phi_rel == pytest.approx(-math.pi / 2)

    def test_degenerate(self):
        with pytest.raises(DegenerateMixing):
            full_observables(ContactCouplings(c0=1.0, c2p=0.5))

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_angle_consistency(self, params):
        assume(abs(dictionary_denominator(params)) > 0.1)
        couplings = sae_to_couplings(params)
        assume(abs(couplings.c1_complex) > 1e-6)
        result = full_observables(couplings)
        intercept, slope = mixing_line(params)
        scale = 1 + abs(intercept) + abs(slope)
        np.testing.assert_allclose([result.intercept, result.slope], [intercept, slope], atol=1e-10 * scale)
        assert abs(cmath.exp(1j * result.phi_rel) - cmath.exp(1j * relative_phase(params))) < 1e-10

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_pole_consistency(self, params):
        assume(abs(dictionary_denominator(params)) > 0.1)
        assume(params.delta == 0 or abs(params.delta) > 0.1)
        couplings = sae_to_couplings(params)
        assume(abs(couplings.c1_complex) > 1e-6)
        kappas = sorted(complex(z).real for z in full_observables(couplings).kappas)
        poles = sorted(p.kappa for p in smatrix_poles(couplings_to_sae(couplings)))
        np.testing.assert_allclose(kappas, poles, rtol=1e-10, atol=1e-10)


@pytest.mark.unit
class TestDictionary:

    def test_worked(self, odd_mixing_params):
        couplings = sae_to_couplings(odd_mixing_params)
        np.testing.assert_allclose([couplings.c0, couplings.c1, couplings.c1_tilde, couplings.c2p],
                                   [10 / 9, 1 / 3, 0, 0], atol=1e-14)
        assert couplings.scheme == Scheme.ndr()

    def test_parity_even(self, parity_even_params):
        couplings = sae_to_couplings(parity_even_params)
        assert (couplings.c0, couplings.c2p) == (-1.0, -1.0)

    def test_free(self, identity_params):
        couplings = sae_to_couplings(identity_params)
        assert (couplings.c0, couplings.c1, couplings.c1_tilde, couplings.c2p) == (0, 0, 0, 0)
        assert couplings_to_sae(couplings).as_tuple() == (1.0, 0.0, 1.0, 0.0, 0.0)

    def test_singular(self):
        with pytest.raises(DictionarySingular):
            sae_to_couplings(validate_extension(-1, 0, -1, 0, 0))

    def test_inverse_worked(self):
        params = couplings_to_sae(ContactCouplings(c0=10 / 9, c1=1 / 3))
        np.testing.assert_allclose(params.as_tuple(), (2, -2.5, 0.5, 0, 0), atol=1e-14)

    def test_no_inverse(self):
        with pytest.raises(NoInverse):
            couplings_to_sae(ContactCouplings(c0=1.0, c1=1.0))

    @pytest.mark.property
    @settings(max_examples=500, deadline=None)
    @given(params=extension_params())
    def test_t_matrices_agree(self, params):
        assume(abs(dictionary_denominator(params)) > 0.1)
        couplings = sae_to_couplings(params)
        for k in K_GRID:
            np.testing.assert_allclose(t_matrix_full(couplings, k).entries, t_matrix(params, k).entries,
                                       atol=1e-10)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(params=extension_params())
    def test_round_trip(self, params):
        assume(abs(dictionary_denominator(params)) > 0.1)
        back = couplings_to_sae(sae_to_couplings(params))
        scale = 1 + max(abs(v) for v in params.as_tuple())
        np.testing.assert_allclose(back.as_tuple(), params.as_tuple(), atol=1e-9 * scale ** 2)


@pytest.mark.unit
class TestSerialization:

    def test_dict_round_trip(self):
        couplings = ContactCouplings(0.5, 0.1, -0.2, 0.3, Scheme.cutoff(4.0))
        data = couplings_to_dict(couplings)
        assert data['scheme'] == {'kind': 'Cutoff', 'scale': 4.0}
        assert couplings_from_dict(data) == couplings

    def test_defaults_to_ndr(self):
        assert couplings_from_dict({'c0': 1}).scheme == Scheme.ndr()

    def test_bad_values(self):
        with pytest.raises(ValidationFailure):
            couplings_from_dict({'c0': 'x'})
        with pytest.raises(UnsupportedScheme):
            couplings_from_dict({'c0': 1, 'scheme': {'kind': 'MSbar'}})
