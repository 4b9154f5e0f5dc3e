"""Diagonal entropies: momentum space, blocks in both bases, global
entanglement; cross-checked against the exact-diagonalization oracle."""
import numpy as np
import pytest
from scipy.special import xlogy

from kitaev_de import (GaplessSpecError, ModelSpec, NormalizationFailureError,
                       block_diagonal_distribution, block_diagonal_entropy,
                       correlator_kernel, de_density, global_entanglement,
                       open_chain_correlations, pure_state_diagonal_entropy,
                       sigma_x_correlator, sigma_z_correlator)
from kitaev_de.entropy import _binary_entropy_bits, _wht
from kitaev_de.oracle import ed_diagonal_marginal, ed_ground_state

from conftest import random_gapped_spec


class TestPureStateDE:
    def test_per_mode_formula_is_binary_entropy(self, rng):
        # the closed form equals direct -sum p log2 p on {cos^2, sin^2}
        for _ in range(200):
            theta = rng.uniform(-np.pi / 2, np.pi / 2)
            p = np.sin(theta) ** 2
            direct = -(xlogy(p, p) + xlogy(1 - p, 1 - p)) / np.log(2)
            assert _binary_entropy_bits(np.array([p]))[0] == pytest.approx(
                direct, abs=1e-14)

    def test_uniform_mode_is_one_bit(self):
        assert _binary_entropy_bits(np.array([0.5]))[0] == pytest.approx(1.0)
        assert _binary_entropy_bits(np.array([0.0]))[0] == 0.0

    def test_polarized_limits_vanish(self):
        for mu in (1e6, -1e6):
            spec = ModelSpec.pairing(j=1.0, delta=1.0, mu=mu)
            rep = pure_state_diagonal_entropy(spec, 256)
            assert rep.value < 1e-8

    def test_value_bounds(self, rng):
        for _ in range(20):
            spec = random_gapped_spec(rng)
            rep = pure_state_diagonal_entropy(spec, 128)
            assert 0.0 <= rep.value <= 128.0

    def test_density_consistency(self):
        spec = ModelSpec.pairing(j=1.0, delta=-1.0, mu=-1.5)
        rep = pure_state_diagonal_entropy(spec, 2000)
        assert de_density(spec, 2000) == pytest.approx(rep.value / 2000, abs=1e-15)

    def test_density_volume_scaling(self):
        # gapped specs: density differs by < 1e-6 between N=1000 and N=2000
        for spec in (ModelSpec.pairing(1.0, -1.0, -1.5),
                     ModelSpec.pairing(1.0, 1.0, 0.5, alpha=0.0),
                     ModelSpec.pairing_hopping(j=0.8, delta=1.0, mu=0.6)):
            assert de_density(spec, 1000) == pytest.approx(
                de_density(spec, 2000), abs=1e-6)

    def test_gapless_raises(self):
        from conftest import grid_gapless_spec
        with pytest.raises(GaplessSpecError):
            pure_state_diagonal_entropy(grid_gapless_spec(512), 512)


class TestWalshHadamard:
    def test_matches_naive_transform(self, rng):
        for l in (1, 2, 5):
            v = rng.standard_normal(1 << l)
            got = _wht(v)
            naive = np.zeros_like(v)
            for t in range(1 << l):
                for s in range(1 << l):
                    naive[t] += v[s] * (-1.0) ** bin(s & t).count("1")
            assert np.allclose(got, naive, atol=1e-12)


class TestBlockDistribution:
    def test_single_site_z(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=2048, l_max=4)
        dist = block_diagonal_distribution(ker, 1, "z")
        sz = sigma_z_correlator(ker, [0])
        assert dist.p[0] == pytest.approx((1 + sz) / 2, abs=1e-12)
        assert dist.p[1] == pytest.approx((1 - sz) / 2, abs=1e-12)

    def test_single_site_x_is_uniform(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=2048, l_max=4)
        dist = block_diagonal_distribution(ker, 1, "x")
        assert np.allclose(dist.p, 0.5, atol=1e-12)

    def test_polarized_limit_concentrates(self):
        spec = ModelSpec.pairing(j=1.0, delta=1.0, mu=1e8)
        ker = correlator_kernel(spec, n=2048, l_max=8)
        dist = block_diagonal_distribution(ker, 6, "z")
        assert dist.p.max() > 1 - 1e-6
        assert block_diagonal_entropy(ker, 6, "z").value < 1e-5

    @pytest.mark.parametrize("basis", ["z", "x"])
    def test_matches_oracle_marginal_n10_l4(self, rng, basis):
        for _ in range(3):
            spec = random_gapped_spec(rng, trivial=True)
            state = ed_ground_state(spec, 10, "open")
            src = open_chain_correlations(spec, 10)
            dist = block_diagonal_distribution(src, 4, basis)
            want = ed_diagonal_marginal(state, range(4), basis)
            assert np.abs(dist.p - want).max() < 1e-8

    def test_interior_block_matches_oracle(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        state = ed_ground_state(spec, 10, "open")
        src = open_chain_correlations(spec, 10)
        dist = block_diagonal_distribution(src, 3, "z", start=4)
        want = ed_diagonal_marginal(state, range(4, 7), "z")
        assert np.abs(dist.p - want).max() < 1e-10

    def test_normalised_both_bases(self, rng):
        # >= 200 randomized distributions normalise to 1 within 1e-9
        checked = 0
        while checked < 200:
            spec = random_gapped_spec(rng)
            try:
                ker = correlator_kernel(spec, n=1024, l_max=6)
            except GaplessSpecError:
                continue
            for basis in ("z", "x"):
                dist = block_diagonal_distribution(ker, 5, basis)
                assert abs(dist.p.sum() - 1.0) < 1e-9
                assert dist.p.min() >= 0.0
            checked += 1

    def test_x_distribution_has_flip_symmetry(self, rng):
        # only even subsets contribute, so p(x) = p(bitwise complement)
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=2048, l_max=6)
        dist = block_diagonal_distribution(ker, 5, "x")
        assert np.allclose(dist.p, dist.p[::-1], atol=1e-12)

    def test_block_length_bounds(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=2048, l_max=4)
        with pytest.raises(ValueError):
            block_diagonal_distribution(ker, 17, "z")
        with pytest.raises(ValueError):
            block_diagonal_distribution(ker, 6, "z")  # beyond kernel range

    def test_clamp_rejects_large_negative(self):
        # corrupt kernel triggers the normalization guard
        spec = ModelSpec.pairing(j=1.0, delta=0.7, mu=1.4, alpha=1.7)
        ker = correlator_kernel(spec, n=1024, l_max=4)
        bad = type(ker)(g=np.clip(ker.g * 3.0, -1, 1), l_max=ker.l_max, n=ker.n)
        with pytest.raises(NormalizationFailureError):
            block_diagonal_distribution(bad, 4, "z")


class TestBlockEntropy:
    def test_one_bit_at_zero_magnetization(self):
        # mu=0 pairing-only chain has <sigma_z> = 0 exactly on even grids
        spec = ModelSpec.pairing(j=1.0, delta=0.8, mu=0.0)
        ker = correlator_kernel(spec, n=2048, l_max=2)
        assert block_diagonal_entropy(ker, 1, "z").value == pytest.approx(1.0,
                                                                          abs=1e-12)

    def test_monotone_in_block_length(self):
        # nested diagonal marginals cannot lose entropy (checked empirically
        # on the reference chains)
        for spec in (ModelSpec.pairing(1.0, -1.0, 0.8, alpha=0.0),
                     ModelSpec.pairing_hopping(j=-0.8, delta=1.0, mu=-0.7)):
            ker = correlator_kernel(spec, n=4096, l_max=10)
            values = [block_diagonal_entropy(ker, l, "z").value
                      for l in range(1, 11)]
            assert np.all(np.diff(values) > -1e-12)

    def test_entropy_bounds(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=2048, l_max=8)
        for basis in ("z", "x"):
            rep = block_diagonal_entropy(ker, 6, basis)
            assert 0.0 <= rep.value <= 6.0


class TestGlobalEntanglement:
    def test_equals_one_minus_sz_squared(self, rng):
        # algebraic identity of the purity form on random magnetizations
        for _ in range(200):
            m = rng.uniform(-1, 1)
            rho = np.diag([(1 + m) / 2, (1 - m) / 2])
            e = 2 * (1 - np.trace(rho @ rho))
            assert e == pytest.approx(1 - m ** 2, abs=1e-12)

    def test_product_state_limit(self):
        spec = ModelSpec.pairing(j=1.0, delta=1.0, mu=1e8)
        assert global_entanglement(spec, 2048) == pytest.approx(0.0, abs=1e-10)

    def test_one_at_zero_mu(self):
        for delta in (-1.5, -0.5, 0.5, 1.5):
            spec = ModelSpec.pairing(j=1.0, delta=delta, mu=0.0)
            assert global_entanglement(spec) == pytest.approx(1.0, abs=1e-10)

    def test_matches_kernel_sigma_z(self, rng):
        spec = random_gapped_spec(rng, trivial=True)
        ker = correlator_kernel(spec, n=8192, l_max=1)
        sz = sigma_z_correlator(ker, [0])
        assert global_entanglement(spec, 8192) == pytest.approx(1 - sz ** 2,
                                                                abs=1e-12)
