import math
from dataclasses import replace

import numpy as np
import pytest

from sdma_capacity import (
    CapacityCapError,
    SystemConfig,
    UnboundedCapacityError,
    ber_cdma,
    ber_multicell,
    ber_sdma,
    capacity,
    sweep_curve,
)

from oracles import q_quadrature

D_5P1_DB = 10**0.51

# All pinned beforehand with the quadrature oracle.
Q_AT_1 = 0.15865525393145707                 # ber_cdma(7, 22)
BER_7_5 = 0.010973385501623432               # Q(sqrt(21/4))
BER_MULTI_N4 = 0.1589380003498543            # denom 21 + 22*4.6^-4
BER_MULTI_N2 = 0.1645004843763382            # denom 21 + 22*4.6^-2
SWEEP_7 = [2.2964168558769883e-06, 0.0005968727224360026, 0.004075485796751349]


def cfg(**kwargs) -> SystemConfig:
    base = dict(spreading_factor=7)
    base.update(kwargs)
    return SystemConfig(**base)


class TestBerCdma:
    def test_single_user_is_error_free(self):
        assert ber_cdma(7, 1) == 0.0

    def test_frozen_values(self):
        assert ber_cdma(7, 22) == pytest.approx(0.158655, abs=1e-6)
        assert ber_cdma(7, 22) == pytest.approx(Q_AT_1, abs=1e-12)
        assert ber_cdma(7, 5) == pytest.approx(0.010973, abs=1e-6)
        assert ber_cdma(7, 5) == pytest.approx(BER_7_5, abs=1e-12)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            ber_cdma(0, 5)
        with pytest.raises(ValueError):
            ber_cdma(7, 0)


class TestBerSdma:
    def test_identity_at_unit_directivity(self):
        assert ber_sdma(7, 22, 1.0) == pytest.approx(0.158655, abs=1e-6)

    def test_bitwise_reduction_to_cdma(self):
        assert all(ber_sdma(7, k, 1.0) == ber_cdma(7, k) for k in range(1, 301))

    def test_frozen_value(self):
        assert ber_sdma(7, 22, 3.23594) == pytest.approx(0.03596, abs=1e-4)

    def test_single_user(self):
        assert ber_sdma(7, 1, 3.23594) == 0.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            ber_sdma(7, 5, 0.5)


class TestBerMulticell:
    def test_reduces_to_cdma_without_cochannel_cells(self):
        for n in (2.0, 4.0, 6.0):
            value = ber_multicell(cfg(users=22, path_loss_exponent=n))
            assert value == ber_cdma(7, 22)  # bitwise, shared code path

    def test_frozen_values(self):
        one_cell = cfg(users=22, cochannel_cells=1, reuse_distance_ratio=4.6)
        assert ber_multicell(replace(one_cell, path_loss_exponent=4.0)) == pytest.approx(
            0.15892, abs=1e-4
        )
        assert ber_multicell(replace(one_cell, path_loss_exponent=4.0)) == pytest.approx(
            BER_MULTI_N4, abs=1e-12
        )
        assert ber_multicell(replace(one_cell, path_loss_exponent=2.0)) == pytest.approx(
            BER_MULTI_N2, abs=1e-12
        )

    def test_single_user_single_cell(self):
        assert ber_multicell(cfg(users=1)) == 0.0

    def test_approaches_sdma_as_path_loss_grows(self):
        base = cfg(users=22, cochannel_cells=1, directivity=2.0)
        gap_tough = ber_multicell(replace(base, path_loss_exponent=2.0)) - ber_sdma(7, 22, 2.0)
        gap_mild = ber_multicell(replace(base, path_loss_exponent=6.0)) - ber_sdma(7, 22, 2.0)
        assert gap_tough > gap_mild > 0.0
        assert gap_mild < 1e-3


class TestMonotonicity:
    def test_non_decreasing_in_users(self):
        for config in (cfg(), cfg(directivity=D_5P1_DB), cfg(cochannel_cells=1)):
            values = [ber_multicell(replace(config, users=k)) for k in range(1, 301)]
            assert all(b >= a for a, b in zip(values, values[1:]))

    def test_non_increasing_in_directivity(self):
        for k in (2, 5, 22, 300):
            values = [ber_sdma(7, k, d) for d in (1.0, 2.0, 3.23594, 10.0)]
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_strictly_decreasing_in_path_loss_exponent(self):
        for k in (2, 22, 300):
            values = [
                ber_multicell(cfg(users=k, cochannel_cells=1, path_loss_exponent=n))
                for n in (2.0, 3.0, 4.0, 5.0)
            ]
            assert all(b < a for a, b in zip(values, values[1:]))


class TestCapacity:
    def test_frozen_capacities(self):
        assert capacity(0.1, SystemConfig(spreading_factor=31)) == 57
        assert capacity(0.1, SystemConfig(spreading_factor=31, directivity=3.23594)) == 184

    def test_matches_quadrature_backed_scan(self):
        # independent route: scan with the quadrature Q instead of erfc
        target, n, d = 0.05, 15, 2.0
        k = 1
        while q_quadrature(math.sqrt(3.0 * d * n / k)) <= target:
            k += 1
        assert capacity(target, SystemConfig(spreading_factor=n, directivity=d)) == k

    def test_boundary_target_is_finite(self):
        k_max = capacity(0.49, SystemConfig(spreading_factor=1))
        assert 1 <= k_max < 10**6
        assert ber_cdma(1, k_max) <= 0.49 < ber_cdma(1, k_max + 1)

    def test_cap_signal(self):
        with pytest.raises(CapacityCapError):
            capacity(0.49, SystemConfig(spreading_factor=1), k_cap=100)

    def test_unbounded_and_domain_errors(self):
        with pytest.raises(UnboundedCapacityError):
            capacity(0.5, SystemConfig(spreading_factor=7))
        with pytest.raises(UnboundedCapacityError):
            capacity(0.6, SystemConfig(spreading_factor=7))
        with pytest.raises(ValueError):
            capacity(0.0, SystemConfig(spreading_factor=7))
        with pytest.raises(ValueError):
            capacity(-0.1, SystemConfig(spreading_factor=7))

    def test_consistency_on_random_configs(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            config = SystemConfig(
                spreading_factor=int(rng.integers(1, 65)),
                directivity=float(rng.uniform(1.0, 10.0)),
                path_loss_exponent=float(rng.uniform(2.0, 6.0)),
                cochannel_cells=int(rng.integers(0, 3)),
                reuse_distance_ratio=float(rng.uniform(1.5, 8.0)),
                cochannel_load=int(rng.integers(0, 51)) if rng.random() < 0.5 else None,
            )
            target = float(rng.uniform(1e-3, 0.4))
            k_max = capacity(target, config)
            assert ber_multicell(replace(config, users=k_max)) <= target
            assert ber_multicell(replace(config, users=k_max + 1)) > target

    def test_directivity_ratio_law(self):
        for target in (0.05, 0.1, 0.2, 0.4):
            for n in (15, 31, 63):
                for d in (2.0, D_5P1_DB, 5.0):
                    base = capacity(target, SystemConfig(spreading_factor=n))
                    gained = capacity(target, SystemConfig(spreading_factor=n, directivity=d))
                    if base > 20 and gained > 20:
                        assert 0.95 * d <= gained / base <= 1.05 * d


class TestSweepCurve:
    def test_frozen_points(self):
        curve = sweep_curve(cfg(), 2, 4)
        assert curve.user_counts() == [2, 3, 4]
        for (_, got), want in zip(curve.points, SWEEP_7):
            assert got == pytest.approx(want, abs=1e-12)

    def test_single_point_range(self):
        curve = sweep_curve(cfg(), 5, 5)
        assert curve.points == [(5, ber_cdma(7, 5))]

    def test_pointwise_consistency_with_multicell(self):
        config = cfg(directivity=2.0, cochannel_cells=1)
        curve = sweep_curve(config, 2, 50)
        for k, value in curve.points:
            assert value == ber_multicell(replace(config, users=k))

    def test_flat_top_dominates_omni(self):
        omni = sweep_curve(cfg(), 2, 300)
        flat = sweep_curve(cfg(directivity=D_5P1_DB), 2, 300)
        assert all(f < o for (_, f), (_, o) in zip(flat.points, omni.points))

    def test_range_validation(self):
        with pytest.raises(ValueError):
            sweep_curve(cfg(), 1, 10)
        with pytest.raises(ValueError):
            sweep_curve(cfg(), 10, 9)


class TestSystemConfig:
    def test_cochannel_load_tracks_users(self):
        assert cfg(users=22).effective_cochannel_load == 22
        assert cfg(users=22, cochannel_load=5).effective_cochannel_load == 5

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(spreading_factor=0),
            dict(spreading_factor=7, users=0),
            dict(spreading_factor=7, directivity=0.9),
            dict(spreading_factor=7, path_loss_exponent=1.5),
            dict(spreading_factor=7, path_loss_exponent=6.5),
            dict(spreading_factor=7, cochannel_cells=-1),
            dict(spreading_factor=7, cochannel_cells=1, reuse_distance_ratio=1.0),
            dict(spreading_factor=7, cochannel_load=-2),
        ],
    )
    def test_invariant_violations(self, kwargs):
        with pytest.raises(ValueError):
            SystemConfig(**kwargs)

    def test_curve_rejects_unsorted_points(self):
        from sdma_capacity import BerCurve

        with pytest.raises(ValueError):
            BerCurve(label="x", points=[(3, 0.1), (2, 0.2)])
